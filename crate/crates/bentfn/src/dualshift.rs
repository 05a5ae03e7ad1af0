//! Fitting and verifying the dual-shift expansion: for points u_1..u_t,
//!
//!   g̃(x - sum t_i u_i) = g̃(x) + sum_{i<=j} A_ij t_i t_j + sum g_i(x) t_i
//!
//! for all x in F_{p^n} and all t in F_p^t. Diagonal terms A_ii are part of
//! the expansion; over F_2 they are not identifiable from the shifts (t² = t)
//! and are fixed to zero by convention, with an explicit override available.

use crate::func::PFunc;
use crate::gf::{FieldCtx, FieldElem};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DualShiftError {
    #[error("shift differences do not have expansion form (witness x = {x}, t = {t:?})")]
    NotExpansionForm { x: u32, t: Vec<u8> },
}

/// A fitted expansion: symmetric coefficient table A, the linear coefficient
/// functions g_i, and the index set of variables touched by nonzero
/// off-diagonal coefficients.
#[derive(Clone)]
pub struct DualExpansion {
    points: Vec<FieldElem>,
    /// Full symmetric tau x tau table; a[i][j] = a[j][i] = A_{ij}.
    a: Vec<Vec<u8>>,
    g_funcs: Vec<PFunc>,
}

impl DualExpansion {
    pub fn tau(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[FieldElem] {
        &self.points
    }

    /// A_{ij} (zero-based symmetric access).
    pub fn coeff(&self, i: usize, j: usize) -> u8 {
        self.a[i][j]
    }

    pub fn g_func(&self, i: usize) -> &PFunc {
        &self.g_funcs[i]
    }

    /// Indices participating in a nonzero off-diagonal coefficient
    /// (zero-based).
    pub fn gamma(&self) -> Vec<usize> {
        let tau = self.tau();
        (0..tau)
            .filter(|&i| (0..tau).any(|j| j != i && self.a[i][j] != 0))
            .collect()
    }

    /// h_i(b) = g_i(b) + A_{ii}.
    pub fn h_func(&self, i: usize) -> PFunc {
        self.g_funcs[i].add_const(self.a[i][i] as u32)
    }

    /// Quadratic part sum_{i<=j} A_ij t_i t_j at a t-tuple.
    pub fn quad_at(&self, t: &[u8], p: u32) -> u32 {
        let mut s = 0u32;
        for i in 0..self.tau() {
            for j in i..self.tau() {
                s = (s + self.a[i][j] as u32 * t[i] as u32 % p * t[j] as u32) % p;
            }
        }
        s
    }

    /// Replaces the diagonal, folding the change into g_i so the verified
    /// identity is preserved (only meaningful for p = 2, where the split of
    /// h_i into A_ii + g_i is conventional).
    pub fn with_diagonal(&self, diag: &[u8], p: u32) -> DualExpansion {
        assert_eq!(diag.len(), self.tau());
        assert_eq!(p, 2, "the diagonal is identifiable for odd p");
        let mut a = self.a.clone();
        let mut g_funcs = Vec::with_capacity(self.tau());
        for i in 0..self.tau() {
            let delta = (a[i][i] as u32 + 2 - diag[i] as u32) % 2;
            a[i][i] = diag[i] % 2;
            g_funcs.push(self.g_funcs[i].add_const(delta));
        }
        DualExpansion { points: self.points.clone(), a, g_funcs }
    }
}

impl std::fmt::Debug for DualExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DualExpansion(tau={}, A={:?})", self.tau(), self.a)
    }
}

fn mod_inv(x: u32, p: u32) -> u32 {
    (1..p).find(|&y| x * y % p == 1).expect("nonzero residue mod a prime")
}

/// Shift difference table x -> g̃(x - s) - g̃(x).
fn shift_diff(ctx: &Arc<FieldCtx>, gdual: &PFunc, s: FieldElem) -> Vec<u8> {
    let p = ctx.p();
    ctx.elems()
        .map(|x| {
            ((gdual.eval(ctx.sub(x, s)) as u32 + p - gdual.eval(x) as u32) % p) as u8
        })
        .collect()
}

/// Recovers A_{ij} and g_i from probe shifts, then verifies the identity
/// exhaustively over all (x, t).
pub fn fit_expansion(
    gdual: &PFunc,
    points: &[FieldElem],
) -> Result<DualExpansion, DualShiftError> {
    let ctx = gdual.ctx().clone();
    let p = ctx.p();
    let tau = points.len();
    assert!(points.iter().all(|u| !u.is_zero()), "all u_i must be nonzero");

    let mut a = vec![vec![0u8; tau]; tau];
    let mut g_funcs = Vec::with_capacity(tau);
    let d1: Vec<Vec<u8>> = points.iter().map(|&u| shift_diff(&ctx, gdual, u)).collect();

    if p == 2 {
        // t_i² = t_i merges A_ii into g_i; adopt A_ii = 0
        for d in &d1 {
            g_funcs.push(PFunc::from_values(&ctx, d.clone()).expect("table sized to field"));
        }
    } else {
        let inv2 = mod_inv(2, p);
        for (i, &u) in points.iter().enumerate() {
            // probe t = 2 e_i: D² = 4 A_ii + 2 g_i, so A_ii = (D² - 2D¹)/2
            let two_u = ctx.mul(ctx.scalar(2), u);
            let d2 = shift_diff(&ctx, gdual, two_u);
            let aii = (d2[0] as u32 + 2 * (p - d1[i][0] as u32)) % p * inv2 % p;
            for (xi, (&v2, &v1)) in d2.iter().zip(&d1[i]).enumerate() {
                let cand = (v2 as u32 + 2 * (p - v1 as u32)) % p * inv2 % p;
                if cand != aii {
                    let mut t = vec![0u8; tau];
                    t[i] = 2;
                    return Err(DualShiftError::NotExpansionForm { x: xi as u32, t });
                }
            }
            a[i][i] = aii as u8;
            let g_vals: Vec<u8> =
                d1[i].iter().map(|&v| ((v as u32 + p - aii) % p) as u8).collect();
            g_funcs.push(PFunc::from_values(&ctx, g_vals).expect("table sized to field"));
        }
    }

    for i in 0..tau {
        for j in i + 1..tau {
            // probe t = e_i + e_j: D = A_ii + A_jj + A_ij + g_i + g_j
            let s = ctx.add(points[i], points[j]);
            let dij = shift_diff(&ctx, gdual, s);
            let base = (a[i][i] as u32 + a[j][j] as u32) % p;
            let mut aij = None;
            for (xi, &v) in dij.iter().enumerate() {
                let rest = (base + d1[i][xi] as u32 + p - a[i][i] as u32 + d1[j][xi] as u32
                    + p
                    - a[j][j] as u32)
                    % p;
                let cand = (v as u32 + p - rest % p) % p;
                match aij {
                    None => aij = Some(cand),
                    Some(prev) if prev == cand => {}
                    Some(_) => {
                        let mut t = vec![0u8; tau];
                        t[i] = 1;
                        t[j] = 1;
                        return Err(DualShiftError::NotExpansionForm { x: xi as u32, t });
                    }
                }
            }
            let aij = aij.unwrap_or(0) as u8;
            a[i][j] = aij;
            a[j][i] = aij;
        }
    }

    let exp = DualExpansion { points: points.to_vec(), a, g_funcs };
    match verify_expansion(gdual, &exp) {
        None => Ok(exp),
        Some((x, t)) => Err(DualShiftError::NotExpansionForm { x: x.index(), t }),
    }
}

/// Exhaustive check of the expansion identity; returns the first failing
/// (x, t) pair, or None when it holds everywhere.
pub fn verify_expansion(gdual: &PFunc, exp: &DualExpansion) -> Option<(FieldElem, Vec<u8>)> {
    let ctx = gdual.ctx();
    let p = ctx.p();
    let tau = exp.tau();
    let total = (p as usize).pow(tau as u32);
    for ti in 0..total {
        let mut t = vec![0u8; tau];
        let mut r = ti;
        for d in t.iter_mut() {
            *d = (r % p as usize) as u8;
            r /= p as usize;
        }
        let mut shift = ctx.zero();
        for (i, &u) in exp.points.iter().enumerate() {
            shift = ctx.add(shift, ctx.mul(ctx.scalar(t[i] as u32), u));
        }
        let quad = exp.quad_at(&t, p);
        for x in ctx.elems() {
            let lhs = gdual.eval(ctx.sub(x, shift)) as u32;
            let mut rhs = gdual.eval(x) as u32 + quad;
            for (i, gf) in exp.g_funcs.iter().enumerate() {
                rhs += gf.eval(x) as u32 * t[i] as u32;
            }
            if lhs % p != rhs % p {
                return Some((x, t));
            }
        }
    }
    None
}
