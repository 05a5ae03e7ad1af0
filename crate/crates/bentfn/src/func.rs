//! Functions F_{p^n} -> F_p as value tables, reduced multivariate polynomials
//! over F_p, and their composition f(x) = g(x) + F(Tr(u_1 x), ..., Tr(u_t x)).

use crate::gf::{FieldCtx, FieldElem, GfError};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FuncError {
    #[error("polynomial arity {expected} but {got} arguments supplied")]
    ArityMismatch { expected: usize, got: usize },
    #[error("bad polynomial syntax: {0}")]
    BadPoly(String),
    #[error("points are linearly dependent over the prime field")]
    DependentPoints,
    #[error("value table has {got} entries, field has {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("value {0} out of range for F_{1}")]
    ValueRange(u32, u32),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A function F_{p^n} -> F_p stored as its full value table, indexed by
/// field-element index.
#[derive(Clone)]
pub struct PFunc {
    ctx: Arc<FieldCtx>,
    values: Vec<u8>,
}

impl PartialEq for PFunc {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.ctx_id() == other.ctx.ctx_id() && self.values == other.values
    }
}
impl Eq for PFunc {}

impl fmt::Debug for PFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PFunc(F_{}^{}, {} values)", self.ctx.p(), self.ctx.n(), self.values.len())
    }
}

impl PFunc {
    pub fn from_fn(ctx: &Arc<FieldCtx>, mut f: impl FnMut(FieldElem) -> u32) -> PFunc {
        let values = ctx.elems().map(|x| (f(x) % ctx.p()) as u8).collect();
        PFunc { ctx: Arc::clone(ctx), values }
    }

    pub fn from_values(ctx: &Arc<FieldCtx>, values: Vec<u8>) -> Result<PFunc, FuncError> {
        if values.len() != ctx.size() as usize {
            return Err(FuncError::TableLength { expected: ctx.size() as usize, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v as u32 >= ctx.p()) {
            return Err(FuncError::ValueRange(v as u32, ctx.p()));
        }
        Ok(PFunc { ctx: Arc::clone(ctx), values })
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> PFunc {
        PFunc { ctx: Arc::clone(ctx), values: vec![0; ctx.size() as usize] }
    }

    /// x -> Tr(c x).
    pub fn linear(ctx: &Arc<FieldCtx>, c: FieldElem) -> PFunc {
        PFunc::from_fn(ctx, |x| ctx.trace(ctx.mul(c, x)))
    }

    /// Gold monomial x -> Tr(a x^{p^k + 1}).
    pub fn gold(ctx: &Arc<FieldCtx>, a: FieldElem, k: u32) -> PFunc {
        let e = (ctx.p() as u64).pow(k % ctx.n()) + 1;
        PFunc::from_fn(ctx, |x| ctx.trace(ctx.mul(a, ctx.pow(x, e))))
    }

    /// Quadratic monomial x -> Tr(a x^2).
    pub fn quad(ctx: &Arc<FieldCtx>, a: FieldElem) -> PFunc {
        PFunc::from_fn(ctx, |x| ctx.trace(ctx.mul(a, ctx.pow(x, 2))))
    }

    /// x -> Tr_1^k(a x^e), where a x^e must land in the subfield F_{p^k}
    /// for every x (e.g. Tr_1^3(x^9) on F_{2^6}).
    pub fn subfield_trace_monomial(
        ctx: &Arc<FieldCtx>,
        a: FieldElem,
        e: u64,
        k: u32,
    ) -> Result<PFunc, FuncError> {
        let mut values = Vec::with_capacity(ctx.size() as usize);
        for x in ctx.elems() {
            let y = ctx.mul(a, ctx.pow(x, e));
            values.push(ctx.subfield_trace(y, k)? as u8);
        }
        Ok(PFunc { ctx: Arc::clone(ctx), values })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn eval(&self, x: FieldElem) -> u8 {
        self.values[x.index() as usize]
    }

    pub fn eval_idx(&self, idx: u32) -> u8 {
        self.values[idx as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Pointwise f + g.
    pub fn add(&self, other: &PFunc) -> PFunc {
        assert_eq!(self.ctx.ctx_id(), other.ctx.ctx_id());
        let p = self.ctx.p() as u16;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        PFunc { ctx: Arc::clone(&self.ctx), values }
    }

    /// Pointwise f - g.
    pub fn sub(&self, other: &PFunc) -> PFunc {
        assert_eq!(self.ctx.ctx_id(), other.ctx.ctx_id());
        let p = self.ctx.p() as u16;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u16 + p - b as u16) % p) as u8)
            .collect();
        PFunc { ctx: Arc::clone(&self.ctx), values }
    }

    pub fn add_const(&self, c: u32) -> PFunc {
        let p = self.ctx.p();
        let values = self.values.iter().map(|&a| ((a as u32 + c) % p) as u8).collect();
        PFunc { ctx: Arc::clone(&self.ctx), values }
    }

    /// Coefficients c_0..c_{q-1} of the unique univariate polynomial over
    /// F_{p^n} of degree < q agreeing with the prime-subfield lift of this
    /// function: c_0 = f(0), c_{q-1} = -sum_a f(a), and for 0 < k < q-1
    /// c_k = -sum_{a != 0} f(a) a^{-k}.
    pub fn interpolate(&self) -> Vec<FieldElem> {
        let ctx = &self.ctx;
        let q = ctx.size() as u64;
        let mut coeffs = Vec::with_capacity(q as usize);
        coeffs.push(ctx.scalar(self.values[0] as u32));
        for k in 1..q - 1 {
            let mut acc = ctx.zero();
            for a in ctx.elems().skip(1) {
                let v = self.values[a.index() as usize] as u32;
                if v != 0 {
                    // a^{-k} = a^{q-1-k}
                    acc = ctx.add(acc, ctx.mul(ctx.scalar(v), ctx.pow(a, q - 1 - k)));
                }
            }
            coeffs.push(ctx.neg(acc));
        }
        let mut total = ctx.zero();
        for a in ctx.elems() {
            total = ctx.add(total, ctx.scalar(self.values[a.index() as usize] as u32));
        }
        coeffs.push(ctx.neg(total));
        coeffs
    }

    /// Algebraic degree: max p-ary digit sum over exponents with nonzero
    /// interpolation coefficient. Constants have degree 0.
    pub fn univariate_degree(&self) -> u32 {
        let p = self.ctx.p();
        let mut deg = 0;
        for (k, c) in self.interpolate().into_iter().enumerate() {
            if !c.is_zero() {
                let mut s = 0;
                let mut t = k as u64;
                while t > 0 {
                    s += (t % p as u64) as u32;
                    t /= p as u64;
                }
                deg = deg.max(s);
            }
        }
        deg
    }
}

/// Evaluate a coefficient vector (ascending) at a point, by Horner.
pub fn poly_eval(ctx: &FieldCtx, coeffs: &[FieldElem], x: FieldElem) -> FieldElem {
    let mut acc = ctx.zero();
    for &c in coeffs.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    acc
}

/// Multivariate polynomial over F_p in which every exponent is < p; the
/// canonical form for functions F_p^t -> F_p. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ReducedPoly {
    p: u32,
    tau: usize,
    terms: BTreeMap<Vec<u8>, u8>,
}

impl ReducedPoly {
    pub fn zero(p: u32, tau: usize) -> ReducedPoly {
        ReducedPoly { p, tau, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, tau: usize, c: u32) -> ReducedPoly {
        let mut poly = ReducedPoly::zero(p, tau);
        poly.add_term(&vec![0; tau], c);
        poly
    }

    /// x_1 x_2 ... x_tau.
    pub fn product(p: u32, tau: usize) -> ReducedPoly {
        let mut poly = ReducedPoly::zero(p, tau);
        poly.add_term(&vec![1; tau], 1);
        poly
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.tau
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, u8> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds c * prod x_i^{e_i} into the polynomial (coefficients combine
    /// mod p; vanishing terms are dropped).
    pub fn add_term(&mut self, exps: &[u8], c: u32) {
        assert_eq!(exps.len(), self.tau);
        assert!(exps.iter().all(|&e| (e as u32) < self.p), "exponent not reduced");
        let c = (c % self.p) as u8;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert(0);
        *entry = ((*entry as u32 + c as u32) % self.p) as u8;
        if *entry == 0 {
            self.terms.remove(exps);
        }
    }

    pub fn add_assign(&mut self, other: &ReducedPoly) {
        assert_eq!(self.p, other.p);
        assert_eq!(self.tau, other.tau);
        for (e, &c) in &other.terms {
            self.add_term(e, c as u32);
        }
    }

    pub fn scale(&self, c: u32) -> ReducedPoly {
        let mut out = ReducedPoly::zero(self.p, self.tau);
        for (e, &a) in &self.terms {
            out.add_term(e, a as u32 * c);
        }
        out
    }

    pub fn eval(&self, args: &[u8]) -> Result<u8, FuncError> {
        if args.len() != self.tau {
            return Err(FuncError::ArityMismatch { expected: self.tau, got: args.len() });
        }
        let p = self.p;
        let mut sum = 0u32;
        for (exps, &c) in &self.terms {
            let mut m = c as u32;
            for (&x, &e) in args.iter().zip(exps) {
                for _ in 0..e {
                    m = m * x as u32 % p;
                }
            }
            sum = (sum + m) % p;
        }
        Ok(sum as u8)
    }

    /// max over monomials of the exponent sum; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Parses "+"-joined monomials like "x1*x2 + 2*x3^2 + 1". Variables are
    /// x1..x{tau}; an optional leading integer is the coefficient.
    pub fn parse(p: u32, tau: usize, s: &str) -> Result<ReducedPoly, FuncError> {
        let mut poly = ReducedPoly::zero(p, tau);
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(poly);
        }
        for term in s.split('+') {
            let mut coeff = 1u32;
            let mut exps = vec![0u8; tau];
            for factor in term.split('*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(FuncError::BadPoly(format!("empty factor in '{term}'")));
                }
                if let Some(rest) = f.strip_prefix('x') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| {
                            FuncError::BadPoly(format!("bad exponent in '{f}'"))
                        })?),
                        None => (rest, 1),
                    };
                    let i: usize = var
                        .trim()
                        .parse()
                        .map_err(|_| FuncError::BadPoly(format!("bad variable '{f}'")))?;
                    if i == 0 || i > tau {
                        return Err(FuncError::BadPoly(format!(
                            "variable x{i} out of range 1..{tau}"
                        )));
                    }
                    if exp >= p {
                        return Err(FuncError::BadPoly(format!(
                            "exponent {exp} not reduced (p = {p})"
                        )));
                    }
                    exps[i - 1] = (exps[i - 1] as u32 + exp).min(255) as u8;
                    if exps[i - 1] as u32 >= p {
                        return Err(FuncError::BadPoly(format!(
                            "combined exponent on x{i} not reduced (p = {p})"
                        )));
                    }
                } else {
                    let c: u32 = f
                        .parse()
                        .map_err(|_| FuncError::BadPoly(format!("bad coefficient '{f}'")))?;
                    coeff = coeff * (c % p) % p;
                }
            }
            poly.add_term(&exps, coeff);
        }
        Ok(poly)
    }

    /// Random reduced polynomial with up to `max_terms` monomials.
    pub fn random(p: u32, tau: usize, max_terms: usize, rng: &mut impl rand::Rng) -> ReducedPoly {
        let mut poly = ReducedPoly::zero(p, tau);
        let k = rng.gen_range(1..=max_terms);
        for _ in 0..k {
            let exps: Vec<u8> = (0..tau).map(|_| rng.gen_range(0..p) as u8).collect();
            let c = rng.gen_range(1..p);
            poly.add_term(&exps, c);
        }
        poly
    }
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, &c)| {
                let mut factors = Vec::new();
                if c != 1 || exps.iter().all(|&e| e == 0) {
                    factors.push(c.to_string());
                }
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{}", i + 1)),
                        _ => factors.push(format!("x{}^{}", i + 1, e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (p={}, tau={})", self.p, self.tau)
    }
}

/// The data of f(x) = g(x) + F(Tr(u_1 x), ..., Tr(u_t x)).
#[derive(Clone)]
pub struct Form1Spec {
    pub g: PFunc,
    pub poly: ReducedPoly,
    pub points: Vec<FieldElem>,
}

impl Form1Spec {
    pub fn new(g: PFunc, poly: ReducedPoly, points: Vec<FieldElem>) -> Form1Spec {
        assert_eq!(poly.arity(), points.len(), "arity must match the point count");
        assert!(points.iter().all(|u| !u.is_zero()), "all u_i must be nonzero");
        assert_eq!(poly.p(), g.ctx().p());
        Form1Spec { g, poly, points }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.g.ctx()
    }
}

/// Value table of f(x) = g(x) + F(Tr(u_1 x), ..., Tr(u_t x)).
pub fn compose_form1(spec: &Form1Spec) -> PFunc {
    let ctx = spec.g.ctx();
    PFunc::from_fn(ctx, |x| {
        let args: Vec<u8> = spec
            .points
            .iter()
            .map(|&u| ctx.trace(ctx.mul(u, x)) as u8)
            .collect();
        let fval = spec.poly.eval(&args).expect("arity checked at construction") as u32;
        spec.g.eval(x) as u32 + fval
    })
}

/// Rank over F_p of the coordinate matrix of the given points.
pub fn point_rank(ctx: &FieldCtx, points: &[FieldElem]) -> usize {
    let p = ctx.p();
    let n = ctx.n() as usize;
    let mut rows: Vec<Vec<u32>> = points.iter().map(|&u| ctx.digits(u.index())).collect();
    let mut rank = 0;
    for col in 0..n {
        if let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) {
            rows.swap(rank, r);
            let inv = (1..p).find(|&y| (rows[rank][col] * y) % p == 1).unwrap();
            for c in 0..n {
                rows[rank][c] = rows[rank][c] * inv % p;
            }
            for r2 in 0..rows.len() {
                if r2 != rank && rows[r2][col] % p != 0 {
                    let f = rows[r2][col] % p;
                    for c in 0..n {
                        rows[r2][c] = (rows[r2][c] + p * p - f * rows[rank][c] % p) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
    }
    rank
}

/// Degree of g(x)=0 composed with F at independent points: equals deg(F).
/// Errors when the points are dependent over F_p (the equality can fail).
pub fn degree_of_composed(
    ctx: &FieldCtx,
    poly: &ReducedPoly,
    points: &[FieldElem],
) -> Result<u32, FuncError> {
    if point_rank(ctx, points) != points.len() {
        return Err(FuncError::DependentPoints);
    }
    Ok(poly.degree())
}
