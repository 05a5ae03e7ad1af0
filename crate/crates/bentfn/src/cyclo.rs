//! Exact arithmetic in Z[w], w a primitive p-th root of unity.
//!
//! Elements are dense length-p integer vectors c_0..c_{p-1} for
//! `sum c_j w^j`, kept canonical with c_{p-1} = 0 via the relation
//! 1 + w + ... + w^{p-1} = 0. Walsh coefficients arise as character-value
//! counts, so the dense representation is the natural one; coefficients are
//! arbitrary-precision so products never overflow.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Element of Z[w] for a fixed prime p. Always canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    c: Vec<BigInt>,
}

/// Result of `norm_sq`: a rational integer when z * conj(z) is real, the
/// symbolic product otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormSq {
    Int(BigInt),
    NonRational(CycInt),
}

impl NormSq {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            NormSq::Int(v) => Some(v),
            NormSq::NonRational(_) => None,
        }
    }
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt { p, c: vec![BigInt::zero(); p as usize] }
    }

    pub fn from_int<T: Into<BigInt>>(p: u32, v: T) -> CycInt {
        let mut z = CycInt::zero(p);
        z.c[0] = v.into();
        z
    }

    /// w^j (j taken mod p).
    pub fn omega(p: u32, j: u32) -> CycInt {
        let mut z = CycInt::zero(p);
        z.c[(j % p) as usize] = BigInt::one();
        z.canonicalize();
        z
    }

    /// Builds sum over j of counts[j] * w^j; the natural form of a character
    /// sum where counts[j] = #{x : exponent(x) = j}.
    pub fn from_counts(p: u32, counts: &[i64]) -> CycInt {
        assert_eq!(counts.len(), p as usize);
        let mut z = CycInt { p, c: counts.iter().map(|&v| BigInt::from(v)).collect() };
        z.canonicalize();
        z
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> CycInt {
        assert_eq!(coeffs.len(), p as usize);
        let mut z = CycInt { p, c: coeffs };
        z.canonicalize();
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    fn canonicalize(&mut self) {
        let last = self.c[self.p as usize - 1].clone();
        if !last.is_zero() {
            for coef in self.c.iter_mut() {
                *coef -= &last;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    /// The rational integer this equals, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.c[1..].iter().all(|v| v.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic orders");
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect();
        CycInt { p: self.p, c } // sum of canonical forms stays canonical
    }

    pub fn sub(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic orders");
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect();
        CycInt { p: self.p, c }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { p: self.p, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> CycInt {
        let k: BigInt = k.into();
        CycInt { p: self.p, c: self.c.iter().map(|a| a * &k).collect() }
    }

    pub fn mul(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic orders");
        let p = self.p as usize;
        let mut c = vec![BigInt::zero(); p];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[(i + j) % p] += a * b;
            }
        }
        let mut z = CycInt { p: self.p, c };
        z.canonicalize();
        z
    }

    /// Multiply by w^j: a coefficient rotation.
    pub fn mul_omega_pow(&self, j: u32) -> CycInt {
        let p = self.p as usize;
        let j = (j % self.p) as usize;
        let mut c = vec![BigInt::zero(); p];
        for (i, a) in self.c.iter().enumerate() {
            c[(i + j) % p] = a.clone();
        }
        let mut z = CycInt { p: self.p, c };
        z.canonicalize();
        z
    }

    pub fn pow(&self, e: u32) -> CycInt {
        let mut acc = CycInt::from_int(self.p, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugation w -> w^{p-1}.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut c = vec![BigInt::zero(); p];
        for (j, a) in self.c.iter().enumerate() {
            c[(p - j) % p] = a.clone();
        }
        let mut z = CycInt { p: self.p, c };
        z.canonicalize();
        z
    }

    /// z * conj(z); integer branch when the product is rational.
    pub fn norm_sq(&self) -> NormSq {
        let prod = self.mul(&self.conj());
        match prod.to_integer() {
            Some(v) => NormSq::Int(v),
            None => NormSq::NonRational(prod),
        }
    }

    /// Exact division by a positive integer; None when any coefficient is
    /// not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<CycInt> {
        assert!(!d.is_zero());
        let mut c = Vec::with_capacity(self.p as usize);
        for a in &self.c {
            let (q, r) = num_integer_div_rem(a, d);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(CycInt { p: self.p, c })
    }
}

fn num_integer_div_rem(a: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    (a / d, a % d)
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match j {
                0 => parts.push(a.to_string()),
                1 => parts.push(format!("{a}·w")),
                _ => parts.push(format!("{a}·w^{j}")),
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} (p={})", parts.join(" + "), self.p)
    }
}

/// Quadratic multiplicative character of F_p: +1 on nonzero squares, -1 on
/// nonsquares, 0 at zero.
pub fn eta(p: u32, x: u32) -> i32 {
    assert!(p % 2 == 1, "quadratic character needs odd p");
    let x = x % p;
    if x == 0 {
        return 0;
    }
    // Euler criterion by repeated squaring
    let mut result = 1u64;
    let mut base = x as u64;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// The principal Gauss sum G = sum over x in F_p of w^{x^2}; satisfies
/// G^2 = eta(-1) * p and realizes sqrt(p*) exactly inside Z[w].
pub fn gauss_sum(p: u32) -> CycInt {
    assert!(p % 2 == 1, "Gauss sum needs odd p");
    let mut counts = vec![0i64; p as usize];
    for x in 0..p as u64 {
        counts[(x * x % p as u64) as usize] += 1;
    }
    CycInt::from_counts(p, &counts)
}
