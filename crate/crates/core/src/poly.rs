// SPDX-License-Identifier: Apache-2.0

//! Dense univariate polynomials over a small finite field.
//!
//! Coefficients are stored lowest degree first as field indices of a
//! [`BaseField`]. The zero polynomial has an empty coefficient vector.

use serde::{Deserialize, Serialize};

use crate::gf::BaseField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn monomial(c: u32, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, other: &Poly, f: &BaseField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| f.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &BaseField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| f.sub(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: u32, f: &BaseField) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly, f: &BaseField) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, inv_lead);
            quot[k - dd] = t;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(r[idx], f.mul(t, b));
            }
        }
        r.truncate(dd);
        (Poly::new(quot), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &BaseField) -> Poly {
        self.div_rem(d, f).1
    }

    pub fn make_monic(&self, f: &BaseField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &BaseField) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly, f: &BaseField) -> Poly {
        self.mul(other, f).rem(modulus, f)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly, f: &BaseField) -> Poly {
        let mut base = self.rem(modulus, f);
        let mut acc = Poly::one().rem(modulus, f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, f);
            }
            base = base.mul_mod(&base, modulus, f);
            exp >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test over `f`.
    pub fn is_irreducible(&self, f: &BaseField) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = Poly::x();
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = xp.pow_mod(f.q() as u128, self, f);
            let g = xp.sub(&x, f).gcd(self, f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Evaluates at a field element of `f`.
    pub fn eval(&self, at: u32, f: &BaseField) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(Poly::new)
    }
}

/// Smallest monic irreducible polynomial of degree `deg` over `f`, where
/// candidates are ordered by the integer `sum c_k q^k` of their lower
/// coefficients.
pub fn smallest_irreducible(deg: usize, f: &BaseField) -> Poly {
    let q = f.q() as u64;
    let mut k: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut t = k;
        for _ in 0..deg {
            coeffs.push((t % q) as u32);
            t /= q;
        }
        coeffs.push(1);
        let p = Poly::new(coeffs);
        if p.is_irreducible(f) {
            return p;
        }
        k += 1;
    }
}
