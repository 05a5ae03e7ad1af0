//! Exact arithmetic in F_{p^n} for small p and n (p^n <= 2^20).
//!
//! Elements are identified by their polynomial-coefficient index: the element
//! `sum c_i x^i` (0 <= c_i < p) has index `sum c_i p^i`. Index 0 is the zero
//! element, indices 1..p are the prime subfield. Multiplication and inversion
//! go through log/antilog tables built at construction time.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Hard cap on field size so all tables stay in memory.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field size {p}^{n} exceeds the 2^20 bound")]
    TooLarge { p: u32, n: u32 },
    #[error("modulus is not a monic irreducible of degree {n} over F_{p}")]
    BadModulus { p: u32, n: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("subfield degree {k} does not divide {n}")]
    BadSubfield { k: u32, n: u32 },
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("element with index {0} does not generate the multiplicative group")]
    NotGenerator(u32),
    #[error("invalid field or element spec: {0}")]
    BadSpec(String),
}

/// How the defining modulus of a context was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusSource {
    ConwayTable,
    SmallestIrreducible,
    Explicit,
}

/// An element of a specific `FieldCtx`, tagged with the owning context so
/// cross-context arithmetic is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    idx: u32,
    ctx: u64,
}

impl FieldElem {
    pub fn index(&self) -> u32 {
        self.idx
    }
    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }
}

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// Arithmetic context for F_{p^n}: modulus, primitive element, log/antilog
/// tables. Immutable after construction and safe to share across threads.
pub struct FieldCtx {
    p: u32,
    n: u32,
    size: u32,
    /// Monic modulus, coefficients c_0..c_n (ascending degree).
    modulus: Vec<u32>,
    primitive: u32,
    /// log[idx] for idx != 0; antilog of k is exp[k].
    log: Vec<u32>,
    exp: Vec<u32>,
    source: ModulusSource,
    id: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(F_{}^{}, mod {:?})", self.p, self.n, self.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Bundled table of Conway polynomials (ascending coefficients c_0..c_n).
/// Each entry is re-verified for irreducibility and primitivity of x at
/// context build time.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
];

/// Polynomial remainder of `a` by monic `m` over F_p (both ascending).
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let pp = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| (c % p) as u64).collect();
    while r.len() > dm {
        let deg = r.len() - 1;
        let lead = r[deg];
        if lead != 0 {
            let shift = deg - dm;
            for i in 0..=dm {
                let sub = (lead * (m[i] % p) as u64) % pp;
                r[shift + i] = (r[shift + i] + pp - sub) % pp;
            }
        }
        r.pop();
    }
    r.resize(dm.max(1), 0);
    r.iter().map(|&c| c as u32).collect()
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=n/2.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let n = modulus.len() - 1;
    if n == 0 || modulus[n] % p != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        // enumerate monic divisor candidates of degree d
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut tt = t;
            for _ in 0..d {
                cand.push((tt % p as u64) as u32);
                tt /= p as u64;
            }
            cand.push(1);
            let rem = poly_rem(p, modulus, &cand);
            if rem.iter().all(|&c| c % p == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Build F_{p^n} with the bundled Conway modulus when available,
    /// otherwise the lexicographically smallest monic irreducible.
    pub fn build(p: u32, n: u32) -> Result<FieldCtx, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if n == 0 || (p as u64).checked_pow(n).map_or(true, |s| s > MAX_FIELD_SIZE) {
            return Err(GfError::TooLarge { p, n });
        }
        if let Some((_, _, m)) = CONWAY.iter().find(|&&(cp, cn, _)| cp == p && cn == n) {
            return Self::from_modulus(p, n, m, ModulusSource::ConwayTable, None);
        }
        // smallest monic irreducible by ascending coefficient index
        let count = (p as u64).pow(n);
        for t in 0..count {
            let mut m = Vec::with_capacity(n as usize + 1);
            let mut tt = t;
            for _ in 0..n {
                m.push((tt % p as u64) as u32);
                tt /= p as u64;
            }
            m.push(1);
            if is_irreducible(p, &m) {
                return Self::from_modulus(p, n, &m, ModulusSource::SmallestIrreducible, None);
            }
        }
        unreachable!("an irreducible of every degree exists over F_p");
    }

    /// Build with an explicit monic modulus (ascending coefficients, length
    /// n+1) and an optional explicit generator index.
    pub fn build_with_modulus(
        p: u32,
        n: u32,
        modulus: &[u32],
        generator: Option<u32>,
    ) -> Result<FieldCtx, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if n == 0 || (p as u64).checked_pow(n).map_or(true, |s| s > MAX_FIELD_SIZE) {
            return Err(GfError::TooLarge { p, n });
        }
        Self::from_modulus(p, n, modulus, ModulusSource::Explicit, generator)
    }

    fn from_modulus(
        p: u32,
        n: u32,
        modulus: &[u32],
        source: ModulusSource,
        generator: Option<u32>,
    ) -> Result<FieldCtx, GfError> {
        let modulus: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if modulus.len() != n as usize + 1 || !is_irreducible(p, &modulus) {
            return Err(GfError::BadModulus { p, n });
        }
        let size = (p as u64).pow(n) as u32;
        let mut ctx = FieldCtx {
            p,
            n,
            size,
            modulus,
            primitive: 0,
            log: vec![0; size as usize],
            exp: Vec::with_capacity(size as usize - 1),
            source,
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
        };
        // residue of x (for n = 1 this is -c_0)
        let x_idx = if n == 1 { (p - ctx.modulus[0] % p) % p } else { p };
        let gen = match generator {
            Some(g) => {
                if g == 0 || g >= size || ctx.order_slow(g) != size - 1 {
                    return Err(GfError::NotGenerator(g));
                }
                g
            }
            None => {
                if ctx.order_slow(x_idx) == size - 1 {
                    x_idx
                } else {
                    (1..size)
                        .find(|&g| ctx.order_slow(g) == size - 1)
                        .expect("a finite field has a generator")
                }
            }
        };
        ctx.primitive = gen;
        let mut cur = 1u32;
        for k in 0..size - 1 {
            ctx.exp.push(cur);
            ctx.log[cur as usize] = k;
            cur = ctx.mul_slow(cur, gen);
        }
        debug_assert_eq!(cur, 1);
        Ok(ctx)
    }

    /// Multiplicative order of the element with index `idx` (0 for zero).
    fn order_slow(&self, idx: u32) -> u32 {
        if idx == 0 {
            return 0;
        }
        let mut cur = idx;
        let mut ord = 1;
        while cur != 1 {
            cur = self.mul_slow(cur, idx);
            ord += 1;
            if ord > self.size {
                return 0; // zero divisor: modulus not irreducible
            }
        }
        ord
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut conv = vec![0u64; 2 * n - 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + ca as u64 * cb as u64) % p;
            }
        }
        // fold x^m for m >= n using x^n = -(c_0 + ... + c_{n-1} x^{n-1})
        for m in (n..2 * n - 1).rev() {
            let c = conv[m];
            if c != 0 {
                conv[m] = 0;
                for i in 0..n {
                    let sub = (c * self.modulus[i] as u64) % p;
                    conv[m - n + i] = (conv[m - n + i] + p - sub) % p;
                }
            }
        }
        let mut idx = 0u32;
        for i in (0..n).rev() {
            idx = idx * self.p + conv[i] as u32;
        }
        idx
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn modulus_source(&self) -> ModulusSource {
        self.source
    }

    /// Spec string "p^n/c_n,...,c_0" (most-significant coefficient first).
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.n, coeffs.join(","))
    }

    /// Accepts "p^n" or "p^n/c_n,...,c_0".
    pub fn from_spec(spec: &str) -> Result<FieldCtx, GfError> {
        let (pn, modpart) = match spec.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (spec, None),
        };
        let (p, n) = match pn.split_once('^') {
            Some((ps, ns)) => (
                ps.trim().parse::<u32>().map_err(|_| GfError::BadSpec(spec.into()))?,
                ns.trim().parse::<u32>().map_err(|_| GfError::BadSpec(spec.into()))?,
            ),
            None => (
                pn.trim().parse::<u32>().map_err(|_| GfError::BadSpec(spec.into()))?,
                1,
            ),
        };
        match modpart {
            None => FieldCtx::build(p, n),
            Some(ms) => {
                let mut coeffs: Vec<u32> = Vec::new();
                for c in ms.split(',') {
                    coeffs.push(c.trim().parse::<u32>().map_err(|_| GfError::BadSpec(spec.into()))?);
                }
                coeffs.reverse(); // spec lists most-significant first
                FieldCtx::build_with_modulus(p, n, &coeffs, None)
            }
        }
    }

    pub fn ctx_id(&self) -> u64 {
        self.id
    }

    fn check(&self, a: FieldElem) -> u32 {
        assert_eq!(a.ctx, self.id, "field element used with a foreign context");
        a.idx
    }

    fn wrap(&self, idx: u32) -> FieldElem {
        FieldElem { idx, ctx: self.id }
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }
    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }
    pub fn primitive(&self) -> FieldElem {
        self.wrap(self.primitive)
    }

    pub fn elem(&self, idx: u32) -> FieldElem {
        assert!(idx < self.size, "element index out of range");
        self.wrap(idx)
    }

    /// Embed a prime-field value as a constant.
    pub fn scalar(&self, v: u32) -> FieldElem {
        self.wrap(v % self.p)
    }

    pub fn digits(&self, idx: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.n as usize);
        let mut t = idx;
        for _ in 0..self.n {
            d.push(t % self.p);
            t /= self.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u32]) -> FieldElem {
        assert!(d.len() <= self.n as usize);
        let mut idx = 0u32;
        for &c in d.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        self.wrap(idx)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (a, b) = (self.check(a), self.check(b));
        if self.p == 2 {
            return self.wrap(a ^ b);
        }
        let mut idx = 0u32;
        let (mut ta, mut tb) = (a, b);
        let mut mult = 1u32;
        for _ in 0..self.n {
            idx += ((ta + tb) % self.p) * mult;
            ta /= self.p;
            tb /= self.p;
            mult *= self.p;
        }
        self.wrap(idx)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let a = self.check(a);
        if self.p == 2 {
            return self.wrap(a);
        }
        let mut idx = 0u32;
        let mut ta = a;
        let mut mult = 1u32;
        for _ in 0..self.n {
            idx += ((self.p - ta % self.p) % self.p) * mult;
            ta /= self.p;
            mult *= self.p;
        }
        self.wrap(idx)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (a, b) = (self.check(a), self.check(b));
        if a == 0 || b == 0 {
            return self.wrap(0);
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.size as u64 - 1);
        self.wrap(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        let a = self.check(a);
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let k = (self.size as u64 - 1 - self.log[a as usize] as u64) % (self.size as u64 - 1);
        Ok(self.wrap(self.exp[k as usize]))
    }

    /// a^e for nonnegative e; 0^0 = 1.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        let a = self.check(a);
        if e == 0 {
            return self.wrap(1);
        }
        if a == 0 {
            return self.wrap(0);
        }
        let k = (self.log[a as usize] as u64 * (e % (self.size as u64 - 1))) % (self.size as u64 - 1);
        self.wrap(self.exp[k as usize])
    }

    /// Frobenius power a^{p^j}.
    pub fn frob(&self, a: FieldElem, j: u32) -> FieldElem {
        self.pow(a, (self.p as u64).pow(j % self.n))
    }

    /// Tr_k^n(x) = sum of x^{p^{ik}}, an element of the subfield F_{p^k}.
    pub fn trace_k(&self, a: FieldElem, k: u32) -> Result<FieldElem, GfError> {
        if k == 0 || self.n % k != 0 {
            return Err(GfError::BadSubfield { k, n: self.n });
        }
        self.check(a);
        let mut acc = self.zero();
        for i in 0..self.n / k {
            acc = self.add(acc, self.pow(a, (self.p as u64).pow((i * k) % self.n)));
        }
        Ok(acc)
    }

    /// Absolute trace into F_p as a residue value.
    pub fn trace(&self, a: FieldElem) -> u32 {
        let t = self.trace_k(a, 1).expect("k=1 always divides n");
        self.as_prime(t).expect("absolute trace lies in the prime field")
    }

    /// Prime-subfield value of a constant element, if it is one.
    pub fn as_prime(&self, a: FieldElem) -> Option<u32> {
        let a = self.check(a);
        if a < self.p {
            Some(a)
        } else {
            None
        }
    }

    /// Whether a lies in the subfield F_{p^k}.
    pub fn in_subfield(&self, a: FieldElem, k: u32) -> bool {
        self.frob(a, k % self.n) == a
    }

    /// Trace from the subfield F_{p^k} down to F_p, for an element already in
    /// that subfield: sum of a^{p^i}, i < k.
    pub fn subfield_trace(&self, a: FieldElem, k: u32) -> Result<u32, GfError> {
        if k == 0 || self.n % k != 0 {
            return Err(GfError::BadSubfield { k, n: self.n });
        }
        assert!(self.in_subfield(a, k), "element not in the requested subfield");
        let mut acc = self.zero();
        for i in 0..k {
            acc = self.add(acc, self.frob(a, i));
        }
        Ok(self.as_prime(acc).expect("subfield trace lies in the prime field"))
    }

    /// All x with a^{p^k} x^{p^{2k}} + a x = rhs, by solving the F_p-linear
    /// system in the n coordinates of x. Empty when unsolvable.
    pub fn solve_linearized(
        &self,
        a: FieldElem,
        k: u32,
        rhs: FieldElem,
    ) -> Result<Vec<FieldElem>, GfError> {
        if self.check(a) == 0 {
            return Err(GfError::ZeroCoefficient);
        }
        self.check(rhs);
        let n = self.n as usize;
        let p = self.p;
        let afrob = self.frob(a, k % self.n);
        let apply = |x: FieldElem| {
            let t = self.mul(afrob, self.frob(x, (2 * k) % self.n));
            self.add(t, self.mul(a, x))
        };
        // build augmented matrix, columns = images of basis elements
        let mut mat = vec![vec![0u32; n + 1]; n];
        for j in 0..n {
            let basis = self.wrap(self.p.pow(j as u32));
            let img = self.digits(apply(basis).idx);
            for i in 0..n {
                mat[i][j] = img[i];
            }
        }
        let rd = self.digits(rhs.idx);
        for i in 0..n {
            mat[i][n] = rd[i];
        }
        // Gaussian elimination mod p
        let inv_mod = |x: u32| -> u32 {
            (1..p).find(|&y| (x * y) % p == 1).expect("p prime, x nonzero")
        };
        let mut pivot_col = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if let Some(r) = (row..n).find(|&r| mat[r][col] % p != 0) {
                mat.swap(row, r);
                let inv = inv_mod(mat[row][col] % p);
                for c in col..=n {
                    mat[row][c] = (mat[row][c] * inv) % p;
                }
                for r2 in 0..n {
                    if r2 != row && mat[r2][col] % p != 0 {
                        let f = mat[r2][col] % p;
                        for c in col..=n {
                            mat[r2][c] = (mat[r2][c] + p * p - f * mat[row][c] % p) % p;
                        }
                    }
                }
                pivot_col.push(col);
                row += 1;
            }
        }
        // consistency
        for r in row..n {
            if mat[r][n] % p != 0 {
                return Ok(Vec::new());
            }
        }
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_col.contains(c)).collect();
        let mut solutions = Vec::new();
        let combos = (p as u64).pow(free_cols.len() as u32);
        for t in 0..combos {
            let mut x = vec![0u32; n];
            let mut tt = t;
            for &c in &free_cols {
                x[c] = (tt % p as u64) as u32;
                tt /= p as u64;
            }
            for (r, &c) in pivot_col.iter().enumerate() {
                let mut v = mat[r][n];
                for &fc in &free_cols {
                    v = (v + p * p - mat[r][fc] * x[fc] % p) % p;
                }
                x[c] = v % p;
            }
            let e = self.from_digits(&x);
            debug_assert_eq!(apply(e), rhs, "linearized solution fails substitution");
            solutions.push(e);
        }
        solutions.sort();
        Ok(solutions)
    }

    /// Nonzero kernel elements of x -> a^{p^k} x^{p^{2k}} + a x.
    pub fn linearized_kernel_nonzero(
        &self,
        a: FieldElem,
        k: u32,
    ) -> Result<Vec<FieldElem>, GfError> {
        let mut v = self.solve_linearized(a, k, self.zero())?;
        v.retain(|e| !e.is_zero());
        Ok(v)
    }

    /// Quadratic character of the full field (odd p): +1 on nonzero squares,
    /// -1 on nonsquares, 0 at zero.
    pub fn eta(&self, a: FieldElem) -> i32 {
        assert!(self.p % 2 == 1, "quadratic character needs odd characteristic");
        let a = self.check(a);
        if a == 0 {
            return 0;
        }
        if self.log[a as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Parse an element: "0", a decimal index, or "g^e" / "g" for powers of
    /// the context's primitive element.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, GfError> {
        let s = s.trim();
        if s == "g" {
            return Ok(self.primitive());
        }
        if let Some(e) = s.strip_prefix("g^") {
            let e: u64 = e.parse().map_err(|_| GfError::BadSpec(s.into()))?;
            return Ok(self.pow(self.primitive(), e));
        }
        let idx: u32 = s.parse().map_err(|_| GfError::BadSpec(s.into()))?;
        if idx >= self.size {
            return Err(GfError::BadSpec(format!("index {idx} out of range")));
        }
        Ok(self.wrap(idx))
    }

    /// Iterator over all elements, zero first.
    pub fn elems(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size).map(move |i| self.wrap(i))
    }
}
