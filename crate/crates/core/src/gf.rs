// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(q^m), q = p^e.
//!
//! Elements are stored as integer indices of their coordinate vectors.
//! An element of GF(q) with coordinates `d_0..d_{e-1}` over GF(p) has index
//! `sum d_l p^l`; an element of GF(q^m) with coordinates `c_0..c_{m-1}` over
//! GF(q) in the polynomial basis `1, x, .., x^{m-1}` has index `sum c_k q^k`.
//! GF(q) therefore sits inside GF(q^m) as the indices `0..q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{smallest_irreducible, Poly};

/// Largest supported base field order.
pub const MAX_BASE_ORDER: u64 = 1 << 10;
/// Largest supported extension field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 30;
/// Log/exp tables are built up to this field order; above it
/// multiplication falls back to polynomial arithmetic.
pub const TABLE_LIMIT: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut t = q;
    let mut e = 0;
    while t.is_multiple_of(p) {
        t /= p;
        e += 1;
    }
    if t != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The field GF(q), q = p^e, with full operation tables.
#[derive(Clone, Debug)]
pub struct BaseField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Poly,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    neg_t: Vec<u32>,
    inv_t: Vec<u32>,
    eta_t: Vec<i8>,
}

impl BaseField {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_modulus(p, e, None)
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::new(p, e)
    }

    /// Builds GF(p^e) over an explicit monic modulus of degree `e` (ignored
    /// for `e = 1`).
    pub fn with_modulus(p: u32, e: u32, modulus: Option<Poly>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be positive".into(),
            ));
        }
        let q64 = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_BASE_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: u64::MAX,
                limit: MAX_BASE_ORDER,
            })?;
        let q = q64 as u32;
        let qs = q as usize;

        if e == 1 {
            let mut add_t = vec![0; qs * qs];
            let mut mul_t = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add_t[(a * q + b) as usize] = (a + b) % p;
                    mul_t[(a * q + b) as usize] = ((a as u64 * b as u64) % p as u64) as u32;
                }
            }
            let modulus = Poly::new(vec![0, 1]);
            return Ok(Self::finish(p, 1, q, modulus, add_t, mul_t));
        }

        let prime = BaseField::new(p, 1)?;
        let modulus = match modulus {
            Some(m) => {
                if m.degree() != Some(e as usize) || !m.is_monic() {
                    return Err(Error::InvalidModulus(format!(
                        "base modulus must be monic of degree {e}"
                    )));
                }
                if m.coeffs().iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient outside GF(p)".into()));
                }
                if !m.is_irreducible(&prime) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => smallest_irreducible(e as usize, &prime),
        };
        let to_poly = |a: u32| {
            let mut v = Vec::with_capacity(e as usize);
            let mut t = a;
            for _ in 0..e {
                v.push(t % p);
                t /= p;
            }
            Poly::new(v)
        };
        let from_poly = |f: &Poly| {
            let mut acc = 0u32;
            for k in (0..e as usize).rev() {
                acc = acc * p + f.coeff(k);
            }
            acc
        };
        let polys: Vec<Poly> = (0..q).map(to_poly).collect();
        let mut add_t = vec![0; qs * qs];
        let mut mul_t = vec![0; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add_t[a * qs + b] = from_poly(&polys[a].add(&polys[b], &prime));
                mul_t[a * qs + b] = from_poly(&polys[a].mul_mod(&polys[b], &modulus, &prime));
            }
        }
        Ok(Self::finish(p, e, q, modulus, add_t, mul_t))
    }

    fn finish(p: u32, e: u32, q: u32, modulus: Poly, add_t: Vec<u32>, mul_t: Vec<u32>) -> Self {
        let qs = q as usize;
        let mut neg_t = vec![0; qs];
        let mut inv_t = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add_t[a * qs + b] == 0 {
                    neg_t[a] = b as u32;
                }
                if mul_t[a * qs + b] == 1 {
                    inv_t[a] = b as u32;
                }
            }
        }
        let mut eta_t = vec![-1i8; qs];
        eta_t[0] = 0;
        for a in 1..qs {
            eta_t[mul_t[a * qs + a] as usize] = 1;
        }
        BaseField {
            p,
            e,
            q,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            eta_t,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Modulus of GF(q) over GF(p); `x` for a prime field.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add_t[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg_t[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_t[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_t[(a * self.q + b) as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv_t[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The element `n · 1`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.eta_t[a as usize] >= 0
    }

    /// Quadratic character η, with η(0) = 0.
    pub fn quadratic_character(&self, a: u32) -> Result<i8> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.eta_t[a as usize])
    }

    /// η without the characteristic check; meaningful only for odd q.
    #[inline]
    pub fn eta(&self, a: u32) -> i8 {
        self.eta_t[a as usize]
    }

    /// υ(a) = q - 1 for a = 0 and -1 otherwise.
    pub fn upsilon(&self, a: u32) -> i64 {
        if a == 0 {
            self.q as i64 - 1
        } else {
            -1
        }
    }

    /// Absolute trace GF(q) → GF(p).
    pub fn prime_trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }
}

/// An element of GF(q^m), identified by its coordinate index.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct GfElem(pub u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Target of a trace map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subfield {
    /// GF(q).
    Base,
    /// GF(q^{m/2}), m even.
    Half,
}

/// Serialized description of a field tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Tables {
    /// `exp[k] = α^k` for `k < 2n`, so sums of two logs need no reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// The tower GF(p) ⊂ GF(q) ⊂ GF(q^m) with a fixed primitive element.
///
/// Immutable after construction and `Sync`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    base: BaseField,
    m: u32,
    order: u32,
    ext_modulus: Poly,
    alpha: GfElem,
    qpow: Vec<u32>,
    basis_trace: Vec<u32>,
    tables: Option<Tables>,
}

impl FieldContext {
    /// GF(q^m) over GF(q) = GF(p^e), with default moduli.
    pub fn build(p: u32, e: u32, m: u32, ext_modulus: Option<Poly>) -> Result<Self> {
        Self::with_moduli(p, e, m, None, ext_modulus)
    }

    pub fn for_q(q: u64, m: u32) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::build(p, e, m, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::with_moduli(
            spec.p,
            spec.e,
            spec.m,
            Some(Poly::new(spec.base_modulus.clone())),
            Some(Poly::new(spec.ext_modulus.clone())),
        )
    }

    pub fn with_moduli(
        p: u32,
        e: u32,
        m: u32,
        base_modulus: Option<Poly>,
        ext_modulus: Option<Poly>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be positive".into(),
            ));
        }
        let base_modulus = base_modulus.filter(|_| e > 1);
        let base = BaseField::with_modulus(p, e, base_modulus)?;
        let q = base.q() as u64;
        let order64 =
            q.checked_pow(m)
                .filter(|&o| o <= MAX_FIELD_ORDER)
                .ok_or(Error::FieldTooLarge {
                    order: u64::MAX,
                    limit: MAX_FIELD_ORDER,
                })?;
        let ext_modulus = match ext_modulus {
            Some(f) => {
                if f.degree() != Some(m as usize) || !f.is_monic() {
                    return Err(Error::InvalidModulus(format!(
                        "extension modulus must be monic of degree {m}"
                    )));
                }
                if f.coeffs().iter().any(|&c| c >= base.q()) {
                    return Err(Error::InvalidModulus("coefficient outside GF(q)".into()));
                }
                if !f.is_irreducible(&base) {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None => smallest_irreducible(m as usize, &base),
        };
        let mut ctx = FieldContext {
            base,
            m,
            order: order64 as u32,
            ext_modulus,
            alpha: GfElem::ZERO,
            qpow: (0..m).map(|k| q.pow(k) as u32).collect(),
            basis_trace: Vec::new(),
            tables: None,
        };
        ctx.alpha = ctx.find_primitive()?;
        if order64 <= TABLE_LIMIT {
            ctx.build_tables();
        }
        ctx.basis_trace = (0..m)
            .map(|k| ctx.trace_by_definition(ctx.basis(k)).0)
            .collect();
        if ctx.tables.is_some() {
            let trace: Vec<u32> = (0..ctx.order)
                .map(|x| ctx.trace_linear(GfElem(x)))
                .collect();
            if let Some(t) = ctx.tables.as_mut() {
                t.trace = trace;
            }
        }
        Ok(ctx)
    }

    fn find_primitive(&self) -> Result<GfElem> {
        let n = self.order as u64 - 1;
        if n == 1 {
            return Ok(GfElem::ONE);
        }
        let factors = prime_factors(n);
        for x in 2..self.order {
            let x = GfElem(x);
            if factors
                .iter()
                .all(|&r| self.pow_slow(x, n / r) != GfElem::ONE)
            {
                return Ok(x);
            }
        }
        Err(Error::NoPrimitiveElement)
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = GfElem::ONE;
        for k in 0..n {
            exp[k] = cur.0;
            exp[k + n] = cur.0;
            log[cur.0 as usize] = k as u32;
            cur = self.mul_slow(cur, self.alpha);
        }
        self.tables = Some(Tables {
            exp,
            log,
            trace: Vec::new(),
        });
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn e(&self) -> u32 {
        self.base.e()
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// q^m.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// q^m - 1.
    pub fn n(&self) -> u32 {
        self.order - 1
    }

    pub fn alpha(&self) -> GfElem {
        self.alpha
    }

    pub fn ext_modulus(&self) -> &Poly {
        &self.ext_modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            e: self.e(),
            m: self.m,
            base_modulus: self.base.modulus().coeffs().to_vec(),
            ext_modulus: self.ext_modulus.coeffs().to_vec(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> {
        (0..self.order).map(GfElem)
    }

    /// Coordinates over GF(q) in the polynomial basis.
    pub fn coords(&self, x: GfElem) -> Vec<u32> {
        let q = self.q();
        let mut t = x.0;
        (0..self.m)
            .map(|_| {
                let c = t % q;
                t /= q;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> GfElem {
        let q = self.q();
        GfElem(c.iter().rev().fold(0, |acc, &d| acc * q + d))
    }

    /// Embeds an element of GF(q).
    pub fn embed(&self, a: u32) -> GfElem {
        GfElem(a)
    }

    pub fn in_base(&self, x: GfElem) -> bool {
        x.0 < self.q()
    }

    #[inline]
    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        if self.p() == 2 {
            return GfElem(a.0 ^ b.0);
        }
        let q = self.q();
        let (mut x, mut y) = (a.0, b.0);
        let mut acc = 0u32;
        let mut w = 1u32;
        for k in 0..self.m {
            let d = self.base.add(x % q, y % q);
            acc += d * w;
            x /= q;
            y /= q;
            if k + 1 < self.m {
                w *= q;
            }
        }
        GfElem(acc)
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        if self.p() == 2 {
            return a;
        }
        let c: Vec<u32> = self
            .coords(a)
            .into_iter()
            .map(|d| self.base.neg(d))
            .collect();
        self.from_coords(&c)
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    /// Scalar multiple by an element of GF(q).
    pub fn scale(&self, c: u32, x: GfElem) -> GfElem {
        self.mul(GfElem(c), x)
    }

    #[inline]
    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == 0 || b.0 == 0 {
            return GfElem::ZERO;
        }
        match &self.tables {
            Some(t) => GfElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn to_poly(&self, x: GfElem) -> Poly {
        Poly::new(self.coords(x))
    }

    fn elem_of_poly(&self, f: &Poly) -> GfElem {
        let c: Vec<u32> = (0..self.m as usize).map(|k| f.coeff(k)).collect();
        self.from_coords(&c)
    }

    fn mul_slow(&self, a: GfElem, b: GfElem) -> GfElem {
        let f = self
            .to_poly(a)
            .mul_mod(&self.to_poly(b), &self.ext_modulus, &self.base);
        self.elem_of_poly(&f)
    }

    fn pow_slow(&self, a: GfElem, k: u64) -> GfElem {
        let f = self
            .to_poly(a)
            .pow_mod(k as u128, &self.ext_modulus, &self.base);
        self.elem_of_poly(&f)
    }

    pub fn pow(&self, a: GfElem, k: u64) -> GfElem {
        if k == 0 {
            return GfElem::ONE;
        }
        if a.is_zero() {
            return GfElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = self.n() as u64;
                let l = (t.log[a.0 as usize] as u64 * (k % n)) % n;
                GfElem(t.exp[l as usize])
            }
            None => self.pow_slow(a, k),
        }
    }

    pub fn inv(&self, a: GfElem) -> GfElem {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.n() as u64 - 1)
    }

    /// α^k.
    pub fn exp(&self, k: u64) -> GfElem {
        match &self.tables {
            Some(t) => GfElem(t.exp[(k % self.n() as u64) as usize]),
            None => self.pow(self.alpha, k),
        }
    }

    /// Discrete logarithm to base α; `None` for zero or without tables.
    pub fn log(&self, x: GfElem) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[x.0 as usize])
    }

    /// x^{q^k}.
    pub fn frobenius(&self, x: GfElem, k: u32) -> GfElem {
        let e = (self.q() as u64).pow(k % self.m);
        self.pow(x, e)
    }

    fn trace_by_definition(&self, x: GfElem) -> GfElem {
        let mut acc = GfElem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.q() as u64);
        }
        acc
    }

    fn trace_linear(&self, x: GfElem) -> u32 {
        let q = self.q();
        let mut t = x.0;
        let mut acc = 0;
        for &bt in &self.basis_trace {
            acc = self.base.add(acc, self.base.mul(t % q, bt));
            t /= q;
        }
        acc
    }

    /// Tr from GF(q^m) to GF(q), as an element of GF(q).
    #[inline]
    pub fn trace(&self, x: GfElem) -> u32 {
        match &self.tables {
            Some(t) => t.trace[x.0 as usize],
            None => self.trace_linear(x),
        }
    }

    /// Trace to the requested subfield, computed from its definition
    /// `sum_j x^{s^j}` with `s` the subfield order.
    pub fn trace_to(&self, x: GfElem, target: Subfield) -> Result<GfElem> {
        match target {
            Subfield::Base => Ok(self.trace_by_definition(x)),
            Subfield::Half => {
                if self.m % 2 == 1 {
                    return Err(Error::InvalidSubfield { m: self.m });
                }
                Ok(self.add(x, self.frobenius(x, self.m / 2)))
            }
        }
    }

    pub fn in_half_subfield(&self, z: GfElem) -> bool {
        self.m.is_multiple_of(2) && self.frobenius(z, self.m / 2) == z
    }

    /// Tr from GF(q^{m/2}) to GF(q) of a subfield element.
    pub fn half_trace_to_base(&self, z: GfElem) -> Result<u32> {
        if self.m % 2 == 1 {
            return Err(Error::InvalidSubfield { m: self.m });
        }
        if !self.in_half_subfield(z) {
            return Err(Error::NotInSubfield);
        }
        let mut acc = GfElem::ZERO;
        let mut y = z;
        for _ in 0..self.m / 2 {
            acc = self.add(acc, y);
            y = self.pow(y, self.q() as u64);
        }
        debug_assert!(self.in_base(acc));
        Ok(acc.0)
    }

    /// Elements of GF(q^{m/2}) in increasing index order.
    pub fn half_subfield_elements(&self) -> Result<Vec<GfElem>> {
        if self.m % 2 == 1 {
            return Err(Error::InvalidSubfield { m: self.m });
        }
        let h = (self.q() as u64).pow(self.m / 2);
        let step = h + 1;
        let mut v: Vec<GfElem> = std::iter::once(GfElem::ZERO)
            .chain((0..h - 1).map(|k| self.exp(k * step)))
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Trace table indexed by element, when tables are present.
    pub fn trace_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.trace.as_slice())
    }

    /// `exp[k] = α^k` for `0 <= k < 2(q^m - 1)`.
    pub fn exp_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.exp.as_slice())
    }

    pub fn log_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.log.as_slice())
    }

    /// Solves `Tr(μ β_k) = b_k` for all basis vectors `β_k = x^k`.
    pub fn dual_coordinates(&self, b: &[u32]) -> Option<GfElem> {
        // Brute force over the field; used only for witness reconstruction.
        self.elements().find(|&mu| {
            (0..self.m as usize).all(|k| self.trace(self.mul(mu, GfElem(self.qpow[k]))) == b[k])
        })
    }

    /// Basis element `x^k` of the polynomial basis.
    pub fn basis(&self, k: u32) -> GfElem {
        GfElem(self.qpow[k as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_gf2() {
        let f = FieldContext::build(2, 1, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.alpha(), GfElem::ONE);
    }

    #[test]
    fn gf27_primitive() {
        let f = FieldContext::build(3, 1, 3, None).unwrap();
        assert_eq!(f.order(), 27);
        let a = f.alpha();
        let mut x = a;
        let mut ord = 1;
        while x != GfElem::ONE {
            x = f.mul(x, a);
            ord += 1;
        }
        assert_eq!(ord, 26);
    }

    #[test]
    fn gf16_over_gf4() {
        let f = FieldContext::build(2, 2, 2, None).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.order(), 16);
        let mut seen = std::collections::HashSet::new();
        let mut x = GfElem::ONE;
        for _ in 0..15 {
            assert!(seen.insert(x));
            x = f.mul(x, f.alpha());
        }
        assert_eq!(x, GfElem::ONE);
    }

    #[test]
    fn trace_gf8_matches_sum_of_conjugates() {
        let f = FieldContext::build(2, 1, 3, None).unwrap();
        assert_eq!(f.ext_modulus().coeffs(), &[1, 1, 0, 1]);
        let a = f.alpha();
        let s = f.add(f.add(a, f.mul(a, a)), f.pow(a, 4));
        assert_eq!(f.trace_to(a, Subfield::Base).unwrap(), s);
        assert_eq!(f.trace(a), s.0);
    }

    #[test]
    fn trace_of_base_element_is_m_times() {
        let f = FieldContext::build(5, 1, 3, None).unwrap();
        for a in 0..5 {
            assert_eq!(f.trace(GfElem(a)), f.base().mul(a, 3));
        }
        assert_eq!(f.trace(GfElem::ZERO), 0);
    }

    #[test]
    fn half_subfield_and_traces() {
        let f = FieldContext::build(3, 1, 4, None).unwrap();
        assert!(matches!(
            FieldContext::build(3, 1, 3, None)
                .unwrap()
                .trace_to(GfElem::ONE, Subfield::Half),
            Err(Error::InvalidSubfield { .. })
        ));
        let sub = f.half_subfield_elements().unwrap();
        assert_eq!(sub.len(), 9);
        for &z in &sub {
            assert!(f.in_half_subfield(z));
        }
        for x in f.elements() {
            let t = f.trace_to(x, Subfield::Half).unwrap();
            assert!(f.in_half_subfield(t));
            assert_eq!(f.half_trace_to_base(t).unwrap(), f.trace(x));
        }
    }

    #[test]
    fn quadratic_character_and_upsilon() {
        let f3 = BaseField::new(3, 1).unwrap();
        assert_eq!(f3.quadratic_character(0).unwrap(), 0);
        assert_eq!(f3.quadratic_character(1).unwrap(), 1);
        assert_eq!(f3.quadratic_character(2).unwrap(), -1);
        let f2 = BaseField::new(2, 1).unwrap();
        assert_eq!(f2.quadratic_character(1), Err(Error::EvenCharacteristic));
        assert_eq!(f2.upsilon(1), -1);
        let f5 = BaseField::new(5, 1).unwrap();
        assert_eq!(f5.upsilon(0), 4);
        assert_eq!(f5.upsilon(3), -1);
    }

    #[test]
    fn spec_round_trip() {
        let f = FieldContext::build(2, 2, 3, None).unwrap();
        let s = f.spec();
        let g = FieldContext::from_spec(&s).unwrap();
        assert_eq!(g.alpha(), f.alpha());
        let json = serde_json::to_string(&s).unwrap();
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            FieldContext::build(4, 1, 2, None).unwrap_err(),
            Error::NotPrime(4)
        );
        let red = Poly::new(vec![1, 0, 1]);
        assert_eq!(
            FieldContext::build(2, 1, 2, Some(red)).unwrap_err(),
            Error::ReducibleModulus
        );
    }

    #[test]
    fn schoolbook_agrees_with_tables() {
        let f = FieldContext::build(3, 1, 5, None).unwrap();
        for a in (1..f.order()).step_by(7) {
            for b in (1..f.order()).step_by(11) {
                assert_eq!(
                    f.mul(GfElem(a), GfElem(b)),
                    f.mul_slow(GfElem(a), GfElem(b))
                );
            }
        }
    }
}
