//! Exact Walsh transforms and bentness / regularity classification.
//!
//! The univariate transform is f̂(b) = sum_x w^{f(x) - Tr(bx)}, computed two
//! ways: a fast multi-dimensional butterfly and a direct double loop kept as
//! an oracle. A function is bent when every coefficient has squared magnitude
//! p^n, which for odd p with n odd is realized exactly through the Gauss sum.

use crate::cyclo::{gauss_sum, CycInt, NormSq};
use crate::func::{Form1Spec, PFunc, ReducedPoly};
use crate::gf::{FieldCtx, FieldElem};
use num_bigint::BigInt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WalshError {
    #[error("function is not weakly regular bent")]
    NotWeaklyRegular,
    #[error(
        "bent Walsh value at b = {b} is not ±P·w^j — exact-arithmetic invariant violated"
    )]
    InternalInconsistency { b: u32 },
}

/// Full Walsh spectrum of a function on F_{p^n}, indexed by b.
#[derive(Clone)]
pub struct WalshSpectrum {
    ctx: Arc<FieldCtx>,
    values: Vec<CycInt>,
}

impl PartialEq for WalshSpectrum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.ctx_id() == other.ctx.ctx_id() && self.values == other.values
    }
}
impl Eq for WalshSpectrum {}

impl WalshSpectrum {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn value(&self, b: FieldElem) -> &CycInt {
        &self.values[b.index() as usize]
    }

    /// Exact Parseval check: sum of squared magnitudes equals p^{2n}.
    /// Individual |f̂(b)|² may be irrational; only the total must collapse
    /// to a rational integer.
    pub fn parseval_holds(&self) -> bool {
        let mut total = CycInt::zero(self.ctx.p());
        for v in &self.values {
            total = total.add(&v.mul(&v.conj()));
        }
        total == CycInt::from_int(self.ctx.p(), BigInt::from(self.ctx.p()).pow(2 * self.ctx.n()))
    }
}

impl std::fmt::Debug for WalshSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WalshSpectrum(F_{}^{})", self.ctx.p(), self.ctx.n())
    }
}

/// Coordinates y(b) with Tr(bx) = sum_i x_i y_i(b) over the polynomial basis.
fn trace_coords(ctx: &FieldCtx, b: FieldElem) -> Vec<u32> {
    (0..ctx.n())
        .map(|i| ctx.trace(ctx.mul(b, ctx.elem(ctx.p().pow(i)))))
        .collect()
}

/// Fast exact Walsh transform: an n-dimensional radix-p butterfly over the
/// coordinate cube, then a basis change from coordinates to field points.
pub fn walsh_full(f: &PFunc) -> WalshSpectrum {
    let ctx = f.ctx();
    let p = ctx.p();
    let n = ctx.n() as usize;
    let size = ctx.size() as usize;

    if p == 2 {
        // ±1 sequence and the classical in-place butterfly; for p = 2 the
        // packed index is the coordinate vector, so T[y] = sum_x v[x](-1)^{x·y}
        let mut v: Vec<i64> = f.values().iter().map(|&t| if t == 0 { 1 } else { -1 }).collect();
        let mut len = 1;
        while len < size {
            for block in (0..size).step_by(2 * len) {
                for i in block..block + len {
                    let (a, b) = (v[i], v[i + len]);
                    v[i] = a + b;
                    v[i + len] = a - b;
                }
            }
            len *= 2;
        }
        let values = ctx
            .elems()
            .map(|b| {
                let y = trace_coords(ctx, b);
                let mut idx = 0usize;
                for (i, &bit) in y.iter().enumerate() {
                    idx |= (bit as usize) << i;
                }
                CycInt::from_int(2, v[idx])
            })
            .collect();
        return WalshSpectrum { ctx: Arc::clone(ctx), values };
    }

    // odd p: v[x] = w^{f(x)}, transform each coordinate axis with the
    // kernel w^{-j t}
    let mut v: Vec<CycInt> = f.values().iter().map(|&t| CycInt::omega(p, t as u32)).collect();
    let pu = p as usize;
    for dim in 0..n {
        let stride = pu.pow(dim as u32);
        let block = stride * pu;
        let mut slot = vec![CycInt::zero(p); pu];
        for base in (0..size).step_by(block) {
            for off in 0..stride {
                for (j, s) in slot.iter_mut().enumerate() {
                    let mut acc = CycInt::zero(p);
                    for t in 0..pu {
                        let rot = (p - (j * t % pu) as u32) % p; // w^{-jt}
                        acc = acc.add(&v[base + off + t * stride].mul_omega_pow(rot));
                    }
                    *s = acc;
                }
                for (j, s) in slot.iter().enumerate() {
                    v[base + off + j * stride] = s.clone();
                }
            }
        }
    }
    let values = ctx
        .elems()
        .map(|b| {
            let y = trace_coords(ctx, b);
            let mut idx = 0usize;
            for (i, &d) in y.iter().enumerate() {
                idx += d as usize * pu.pow(i as u32);
            }
            v[idx].clone()
        })
        .collect();
    WalshSpectrum { ctx: Arc::clone(ctx), values }
}

/// Direct double-loop transform; the definitional oracle.
pub fn walsh_direct(f: &PFunc) -> WalshSpectrum {
    let ctx = f.ctx();
    let p = ctx.p();
    let values = ctx
        .elems()
        .map(|b| {
            let mut counts = vec![0i64; p as usize];
            for x in ctx.elems() {
                let e = (f.eval(x) as u32 + p - ctx.trace(ctx.mul(b, x))) % p;
                counts[e as usize] += 1;
            }
            CycInt::from_counts(p, &counts)
        })
        .collect();
    WalshSpectrum { ctx: Arc::clone(ctx), values }
}

/// Walsh transform of a multivariate function over F_p^t, indexed by the
/// mixed-radix packing b_1 + b_2 p + ... .
pub fn walsh_multivariate(poly: &ReducedPoly) -> Vec<CycInt> {
    let p = poly.p();
    let tau = poly.arity();
    let total = (p as usize).pow(tau as u32);
    let unpack = |mut idx: usize| -> Vec<u8> {
        (0..tau)
            .map(|_| {
                let d = (idx % p as usize) as u8;
                idx /= p as usize;
                d
            })
            .collect()
    };
    let fvals: Vec<u8> = (0..total)
        .map(|i| poly.eval(&unpack(i)).expect("arity matches"))
        .collect();
    (0..total)
        .map(|bi| {
            let b = unpack(bi);
            let mut counts = vec![0i64; p as usize];
            for (xi, &fv) in fvals.iter().enumerate() {
                let x = unpack(xi);
                let dot: u32 = b.iter().zip(&x).map(|(&a, &c)| a as u32 * c as u32).sum();
                let e = (fv as u32 + p * p - dot % p) % p;
                counts[e as usize] += 1;
            }
            CycInt::from_counts(p, &counts)
        })
        .collect()
}

/// Verifies the inverse identity: p^t · w^{F(x)} = sum_b w^{sum b_i x_i} F̂(b)
/// for every x.
pub fn inverse_identity_holds(poly: &ReducedPoly) -> bool {
    let p = poly.p();
    let tau = poly.arity();
    let total = (p as usize).pow(tau as u32);
    let hat = walsh_multivariate(poly);
    let unpack = |mut idx: usize| -> Vec<u8> {
        (0..tau)
            .map(|_| {
                let d = (idx % p as usize) as u8;
                idx /= p as usize;
                d
            })
            .collect()
    };
    let scale = BigInt::from(total as i64);
    for xi in 0..total {
        let x = unpack(xi);
        let mut acc = CycInt::zero(p);
        for (bi, h) in hat.iter().enumerate() {
            let b = unpack(bi);
            let dot: u32 = b.iter().zip(&x).map(|(&a, &c)| a as u32 * c as u32).sum();
            acc = acc.add(&h.mul_omega_pow(dot % p));
        }
        let fv = poly.eval(&x).expect("arity matches");
        if acc != CycInt::omega(p, fv as u32).scale(scale.clone()) {
            return false;
        }
    }
    true
}

/// f̂ from ĝ and F̂ through the convolution decomposition
/// f̂(b) = p^{-t} sum_t F̂(t) ĝ(b - sum t_i u_i).
pub fn walsh_via_decomposition(spec: &Form1Spec) -> WalshSpectrum {
    let ctx = spec.ctx();
    let p = ctx.p();
    let tau = spec.points.len();
    let ghat = walsh_full(&spec.g);
    let fhat = walsh_multivariate(&spec.poly);
    let total = (p as usize).pow(tau as u32);
    // shift per t-tuple: sum t_i u_i
    let shifts: Vec<FieldElem> = (0..total)
        .map(|mut ti| {
            let mut s = ctx.zero();
            for &u in &spec.points {
                let t = (ti % p as usize) as u32;
                ti /= p as usize;
                s = ctx.add(s, ctx.mul(ctx.scalar(t), u));
            }
            s
        })
        .collect();
    let denom = BigInt::from(total as i64);
    let values = ctx
        .elems()
        .map(|b| {
            let mut acc = CycInt::zero(p);
            for (ti, sh) in shifts.iter().enumerate() {
                let arg = ctx.sub(b, *sh);
                acc = acc.add(&fhat[ti].mul(ghat.value(arg)));
            }
            acc.div_exact(&denom)
                .expect("the decomposition sum is divisible by p^t")
        })
        .collect();
    WalshSpectrum { ctx: Arc::clone(ctx), values }
}

/// The specialized path for F = x_1 x_2 ... x_t:
/// f̂(b) = p^{-(t-1)} sum_{t,x in F_p^{t-1}} w^{-sum x_i t_i}
///         ĝ(b - sum t_i u_i - (prod x_i) u_t).
pub fn walsh_via_product_form(g: &PFunc, points: &[FieldElem]) -> WalshSpectrum {
    let ctx = g.ctx();
    let p = ctx.p();
    let tau = points.len();
    assert!(tau >= 1);
    let ghat = walsh_full(g);
    let m = tau - 1;
    let total = (p as usize).pow(m as u32);
    let unpack = |mut idx: usize| -> Vec<u32> {
        (0..m)
            .map(|_| {
                let d = (idx % p as usize) as u32;
                idx /= p as usize;
                d
            })
            .collect()
    };
    let denom = BigInt::from(p).pow(m as u32);
    let values = ctx
        .elems()
        .map(|b| {
            let mut acc = CycInt::zero(p);
            for ti in 0..total {
                let ts = unpack(ti);
                let mut shift = ctx.zero();
                for (i, &t) in ts.iter().enumerate() {
                    shift = ctx.add(shift, ctx.mul(ctx.scalar(t), points[i]));
                }
                for xi in 0..total {
                    let xs = unpack(xi);
                    let dot: u32 = xs.iter().zip(&ts).map(|(&a, &c)| a * c % p).sum();
                    let prod = xs.iter().fold(1u32, |acc, &x| acc * x % p);
                    let arg = ctx.sub(
                        ctx.sub(b, shift),
                        ctx.mul(ctx.scalar(prod), points[tau - 1]),
                    );
                    acc = acc.add(&ghat.value(arg).mul_omega_pow((p - dot % p) % p));
                }
            }
            acc.div_exact(&denom).expect("product-form sum divisible by p^{t-1}")
        })
        .collect();
    WalshSpectrum { ctx: Arc::clone(ctx), values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BentKind {
    NotBent,
    BentNotWeaklyRegular,
    WeaklyRegular,
    Regular,
}

/// Outcome of bentness / regularity analysis.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub is_bent: bool,
    pub kind: BentKind,
    /// Exact constant prefactor U with f̂(b) = U·w^{g̃(b)}; equals
    /// μ^{-1}·p^{n/2} and is stored instead of μ itself because μ need not
    /// lie in Z[w] (p ≡ 3 mod 4 with n odd).
    pub unit: Option<CycInt>,
    /// Sign ε in the √(p*)-normalized form f̂(b) = ε·(√p*)^n·w^{g̃(b)}
    /// (odd p only).
    pub epsilon_sign: Option<i32>,
    pub dual: Option<PFunc>,
}

/// The exact realization of the magnitude p^{n/2}: an integer when n is
/// even, p^{(n-1)/2}·G otherwise (odd p), with G the Gauss sum.
pub fn bent_magnitude(p: u32, n: u32) -> CycInt {
    if n % 2 == 0 {
        CycInt::from_int(p, BigInt::from(p).pow(n / 2))
    } else {
        assert!(p % 2 == 1, "odd-dimension bent functions need odd p");
        gauss_sum(p).scale(BigInt::from(p).pow((n - 1) / 2))
    }
}

pub fn classify(f: &PFunc) -> Result<RegularityReport, WalshError> {
    classify_spectrum(f.ctx(), &walsh_full(f))
}

pub fn classify_spectrum(
    ctx: &Arc<FieldCtx>,
    spec: &WalshSpectrum,
) -> Result<RegularityReport, WalshError> {
    let p = ctx.p();
    let n = ctx.n();
    let pn = BigInt::from(p).pow(n);
    let not_bent = RegularityReport {
        is_bent: false,
        kind: BentKind::NotBent,
        unit: None,
        epsilon_sign: None,
        dual: None,
    };
    for v in spec.values() {
        match v.norm_sq() {
            NormSq::Int(s) if s == pn => {}
            _ => return Ok(not_bent),
        }
    }

    if p == 2 {
        // binary bent: f̂(b) = ±2^{n/2}, always regular with dual read off
        // the sign
        let half = BigInt::from(2).pow(n / 2);
        let mut dual = vec![0u8; ctx.size() as usize];
        for (bi, v) in spec.values().iter().enumerate() {
            let w = v.to_integer().expect("p = 2 spectra are integers");
            dual[bi] = if w == half { 0 } else { 1 };
        }
        return Ok(RegularityReport {
            is_bent: true,
            kind: BentKind::Regular,
            unit: Some(CycInt::from_int(2, half)),
            epsilon_sign: None,
            dual: Some(PFunc::from_values(ctx, dual).expect("table sized to the field")),
        });
    }

    // odd p: decompose each value as s·P·w^j, s = ±1
    let big_p = bent_magnitude(p, n);
    let neg_p = big_p.neg();
    let mut sign = Vec::with_capacity(ctx.size() as usize);
    let mut dual = vec![0u8; ctx.size() as usize];
    for (bi, v) in spec.values().iter().enumerate() {
        let mut found = None;
        for j in 0..p {
            let z = v.mul_omega_pow((p - j) % p); // v·w^{-j}
            if z == big_p {
                found = Some((1i32, j));
                break;
            }
            if z == neg_p {
                found = Some((-1i32, j));
                break;
            }
        }
        match found {
            Some((s, j)) => {
                sign.push(s);
                dual[bi] = j as u8;
            }
            None => return Err(WalshError::InternalInconsistency { b: bi as u32 }),
        }
    }
    if sign.iter().any(|&s| s != sign[0]) {
        return Ok(RegularityReport {
            is_bent: true,
            kind: BentKind::BentNotWeaklyRegular,
            unit: None,
            epsilon_sign: None,
            dual: None,
        });
    }
    let s = sign[0];
    let eta_m1 = crate::cyclo::eta(p, p - 1);
    let epsilon = s * eta_m1.pow(n / 2); // (√p*)^n = η(-1)^{⌊n/2⌋}·P
    let regular = s == 1 && (n % 2 == 0 || p % 4 == 1);
    Ok(RegularityReport {
        is_bent: true,
        kind: if regular { BentKind::Regular } else { BentKind::WeaklyRegular },
        unit: Some(if s == 1 { big_p } else { neg_p }),
        epsilon_sign: Some(epsilon),
        dual: Some(PFunc::from_values(ctx, dual).expect("table sized to the field")),
    })
}

/// The dual g̃ of a weakly regular bent function.
pub fn dual_of(f: &PFunc) -> Result<PFunc, WalshError> {
    classify(f)?.dual.ok_or(WalshError::NotWeaklyRegular)
}
