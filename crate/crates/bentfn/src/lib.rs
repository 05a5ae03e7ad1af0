//! Construction and verification of bent functions over F_{p^n} with exact
//! cyclotomic-integer arithmetic.

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod cyclo;
pub mod dualshift;
pub mod func;
pub mod gf;
pub mod walsh;
