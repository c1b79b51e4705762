// SPDX-License-Identifier: Apache-2.0

//! Closed-form weight enumerators: the PRM template `T(Z)`, the coset
//! enumerators `U_{r,τ}` (odd q) and `W_{r,τ}` (even q), the full code
//! enumerator for odd q, the even-q minimum-distance certificate, and the
//! zero-count frequency tables behind them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

use crate::bchcode::{generator_polynomial, trace_codeword, TraceCodewordSpec};
use crate::cyclotomic::CodeParams;
use crate::error::{Error, Result};
use crate::forms::{classify_quadratic, FormFamily, RankType, TraceQuadraticForm};
use crate::gf::{prime_power, BaseField, FieldContext, GfElem};
use crate::oracle::{affine_value_counts, EnumerationBudget};
use crate::schemes::family_distribution_closed;

/// Sparse weight distribution of a code or coset of length `length`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightEnumerator {
    pub length: u64,
    pub counts: BTreeMap<u64, BigInt>,
}

impl WeightEnumerator {
    pub fn new(length: u64) -> Self {
        WeightEnumerator {
            length,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, weight: u64, count: impl Into<BigInt>) {
        let count = count.into();
        if count.is_zero() {
            return;
        }
        let e = self.counts.entry(weight).or_default();
        *e += count;
        if e.is_zero() {
            self.counts.remove(&weight);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &WeightEnumerator, factor: &BigInt) {
        for (&w, c) in &other.counts {
            self.add(w, c * factor);
        }
    }

    pub fn get(&self, weight: u64) -> BigInt {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<u64> {
        self.counts
            .iter()
            .find(|(w, c)| **w > 0 && !c.is_zero())
            .map(|(w, _)| *w)
    }

    /// `1+390Z^14+...` style rendering.
    pub fn to_polynomial_string(&self) -> String {
        let terms: Vec<String> = self
            .counts
            .iter()
            .map(|(w, c)| match w {
                0 => c.to_string(),
                1 => format!("{c}Z"),
                _ => format!("{c}Z^{w}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn check_nonnegative(&self) -> Result<()> {
        match self.counts.iter().find(|(_, c)| c.is_negative()) {
            Some((w, c)) => Err(Error::NegativeEntry(format!("weight {w} has count {c}"))),
            None => Ok(()),
        }
    }
}

impl From<BTreeMap<u64, u64>> for WeightEnumerator {
    fn from(m: BTreeMap<u64, u64>) -> Self {
        let mut out = WeightEnumerator::default();
        for (w, c) in m {
            out.add(w, c);
        }
        out
    }
}

impl Serialize for WeightEnumerator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a BTreeMap<u64, BigInt>);
        impl Serialize for Counts<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (w, c) in self.0 {
                    map.serialize_entry(&w.to_string(), &c.to_string())?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("length", &self.length)?;
        map.serialize_entry("counts", &Counts(&self.counts))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightEnumerator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            length: u64,
            counts: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = WeightEnumerator::new(raw.length);
        for (w, c) in raw.counts {
            let w: u64 = w.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            out.add(w, c);
        }
        Ok(out)
    }
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

/// `q^e` as i128, failing beyond 2^100 or so.
fn ipow(q: u64, e: u32) -> Result<i128> {
    (q as i128)
        .checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{q}^{e}")))
}

fn odd_prime_power(q: u64) -> Result<()> {
    prime_power(q)?;
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    Ok(())
}

fn even_prime_power(q: u64) -> Result<()> {
    prime_power(q)?;
    if q % 2 == 1 {
        return Err(Error::OddCharacteristic);
    }
    Ok(())
}

/// η(-1) over GF(q), q odd.
fn eta_minus_one(q: u64) -> i128 {
    if q % 4 == 1 {
        1
    } else {
        -1
    }
}

fn check_rank(rt: RankType, m: u32) -> Result<()> {
    if rt.rank == 0 {
        return Err(Error::RankZero);
    }
    if rt.rank > m {
        return Err(Error::OutOfRange {
            value: rt.rank as u64,
            limit: m as u64,
        });
    }
    Ok(())
}

/// Length `q^m - 1` with a guard keeping every weight inside u64.
fn length(q: u64, m: u32) -> Result<u64> {
    let qm = ipow(q, m)?;
    if qm > i64::MAX as i128 {
        return Err(Error::Overflow(format!(
            "{q}^{m} - 1 does not fit a weight"
        )));
    }
    Ok(qm as u64 - 1)
}

struct Builder {
    out: WeightEnumerator,
}

impl Builder {
    fn new(len: u64) -> Self {
        Builder {
            out: WeightEnumerator::new(len),
        }
    }

    fn put(&mut self, weight: i128, count: BigInt) -> Result<()> {
        if weight < 0 || weight > self.out.length as i128 {
            if count.is_zero() {
                return Ok(());
            }
            return Err(Error::InvalidArgument(format!(
                "weight {weight} outside 0..={}",
                self.out.length
            )));
        }
        self.out.add(weight as u64, count);
        Ok(())
    }

    fn finish(self) -> Result<WeightEnumerator> {
        self.out.check_nonnegative()?;
        Ok(self.out)
    }
}

/// Weight enumerator of PRM_q(1, m).
pub fn prm_enumerator(q: u64, m: u32) -> Result<WeightEnumerator> {
    prime_power(q)?;
    let n = length(q, m)?;
    let qm = n as i128 + 1;
    let base = qm - ipow(q, m - 1)?;
    let q = q as i128;
    let mut b = Builder::new(n);
    b.put(0, big(1))?;
    b.put(base - 1, big((q - 1) * (qm - 1)))?;
    b.put(base, big(qm - 1))?;
    b.put(qm - 1, big(q - 1))?;
    b.finish()
}

/// `U_{r,τ}(Z)`: the coset `Q + PRM_q(1,m)` for odd q.
pub fn coset_enumerator_odd(q: u64, m: u32, rt: RankType) -> Result<WeightEnumerator> {
    odd_prime_power(q)?;
    check_rank(rt, m)?;
    if rt.ty != 1 && rt.ty != -1 {
        return Err(Error::InvalidArgument(format!("type {} for odd q", rt.ty)));
    }
    let n = length(q, m)?;
    let qm = n as i128 + 1;
    let base = qm - ipow(q, m - 1)?;
    let r = rt.rank;
    let qr1 = ipow(q, r - 1)?;
    let qr = ipow(q, r)?;
    let qi = q as i128;
    let tau = rt.ty as i128;
    let eta = eta_minus_one(q);
    let mut b = Builder::new(n);
    if r % 2 == 1 {
        let s = tau
            * if ((r - 1) / 2).is_multiple_of(2) {
                1
            } else {
                eta
            };
        let a = ipow(q, m - r.div_ceil(2))?;
        let bb = ipow(q, (r - 1) / 2)?;
        let half = |v: i128| big((qi - 1) * v) / 2;
        for sigma in [1i128, -1] {
            b.put(
                base + sigma * s * a - 1,
                half((qi - 1) * qr1 + sigma * s * bb),
            )?;
            b.put(base + sigma * s * a, half(qr1 - sigma * s * bb))?;
        }
        b.put(base - 1, big((qi - 1) * (qm - qr + qr1)))?;
        b.put(base, big(qm - qr + qr1))?;
    } else {
        let s = tau * if (r / 2).is_multiple_of(2) { 1 } else { eta };
        let a = ipow(q, m - (r + 2) / 2)?;
        let bb = ipow(q, (r - 2) / 2)?;
        b.put(base - s * a * (qi - 1) - 1, big((qi - 1) * (qr1 - s * bb)))?;
        b.put(base - s * a * (qi - 1), big(qr1 + s * bb * (qi - 1)))?;
        b.put(base - 1, big((qi - 1) * (qm - qr)))?;
        b.put(base, big(qm - qr))?;
        b.put(base + s * a - 1, big((qi - 1) * ((qi - 1) * qr1 + s * bb)))?;
        b.put(base + s * a, big((qi - 1) * (qr1 - s * bb)))?;
    }
    b.finish()
}

/// `W_{2r,0}`, `W_{2r+1,1}` or `W_{2r,2}`: the coset `Q + PRM_q(1,m)` for
/// even q.
pub fn coset_enumerator_even(q: u64, m: u32, rt: RankType) -> Result<WeightEnumerator> {
    even_prime_power(q)?;
    check_rank(rt, m)?;
    let n = length(q, m)?;
    let qm = n as i128 + 1;
    let base = qm - ipow(q, m - 1)?;
    let qi = q as i128;
    let mut b = Builder::new(n);
    match (rt.ty, rt.rank % 2) {
        (1, 1) => {
            let r = (rt.rank - 1) / 2;
            let a = ipow(q, m - r - 1)?;
            let (q2r1, q2r, qr) = (ipow(q, 2 * r + 1)?, ipow(q, 2 * r)?, ipow(q, r)?);
            for sigma in [1i128, -1] {
                b.put(
                    base + sigma * a - 1,
                    big((qi - 1) * (q2r1 - q2r + sigma * qr)) / 2,
                )?;
                b.put(base + sigma * a, big((qi - 1) * (q2r - sigma * qr)) / 2)?;
            }
            b.put(base - 1, big((qi - 1) * (qm - q2r1 + q2r)))?;
            b.put(base, big(qm - q2r1 + q2r))?;
        }
        (t @ (0 | 2), 0) => {
            let r = rt.rank / 2;
            let a = ipow(q, m - r - 1)?;
            let (q2r, q2r1, qr1) = (ipow(q, 2 * r)?, ipow(q, 2 * r - 1)?, ipow(q, r - 1)?);
            b.put(base - 1, big((qi - 1) * (qm - q2r)))?;
            b.put(base, big(qm - q2r))?;
            if t == 0 {
                b.put(base - a * (qi - 1) - 1, big((qi - 1) * (q2r1 - qr1)))?;
                b.put(base - a * (qi - 1), big(q2r1 + qr1 * (qi - 1)))?;
                b.put(base + a - 1, big((qi - 1) * ((qi - 1) * q2r1 + qr1)))?;
                b.put(base + a, big((qi - 1) * (q2r1 - qr1)))?;
            } else {
                b.put(base - a - 1, big((qi - 1) * ((qi - 1) * q2r1 - qr1)))?;
                b.put(base - a, big((qi - 1) * (q2r1 + qr1)))?;
                b.put(base + a * (qi - 1) - 1, big((qi - 1) * (q2r1 + qr1)))?;
                b.put(base + a * (qi - 1), big(q2r1 - qr1 * (qi - 1)))?;
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no even-q form of rank {} type {}",
                rt.rank, rt.ty
            )))
        }
    }
    b.finish()
}

/// Dispatches on the parity of q; rank 0 gives the PRM enumerator.
pub fn coset_enumerator(q: u64, m: u32, rt: RankType) -> Result<WeightEnumerator> {
    if rt.rank == 0 {
        return prm_enumerator(q, m);
    }
    if q.is_multiple_of(2) {
        coset_enumerator_even(q, m, rt)
    } else {
        coset_enumerator_odd(q, m, rt)
    }
}

/// `T(Z) + sum a_{r,τ} U_{r,τ}(Z)` for odd q.
pub fn code_enumerator_odd(params: &CodeParams) -> Result<WeightEnumerator> {
    odd_prime_power(params.q)?;
    let dist = family_distribution_closed(params.q, params.m, params.i)?;
    let mut out = prm_enumerator(params.q, params.m)?;
    for (rt, a) in &dist.entries {
        if rt.rank == 0 || a.is_zero() {
            continue;
        }
        out.add_scaled(&coset_enumerator_odd(params.q, params.m, *rt)?, a);
    }
    let size = BigInt::from(params.q).pow(params.dimension as u32);
    if out.total() != size {
        return Err(Error::InvalidArgument(format!(
            "enumerator total {} differs from q^k = {size}",
            out.total()
        )));
    }
    Ok(out)
}

/// Certificate that an even-q code reaches its Bose distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenWitness {
    pub distance: u64,
    /// Position of the form in the λ-lexicographic family order.
    pub form_index: u64,
    pub lambdas: Vec<GfElem>,
    pub rank_type: RankType,
    pub mu: GfElem,
    pub eps: u32,
    /// Hamming weight of the explicit witness codeword.
    pub word_weight: u64,
    /// The witness codeword, coordinates in `α^0, α^1, …` order.
    pub word: Vec<u32>,
    /// Generator-polynomial membership of the witness; `None` when the
    /// length exceeds the check limit.
    pub in_generator_code: Option<bool>,
    /// Whether the whole family avoids rank `2m-2i-2` type 0; `None` when
    /// the family exceeds the budget.
    pub type0_absent: Option<bool>,
}

/// Longest code for which the witness is reduced modulo the generator.
pub const MEMBERSHIP_CHECK_LENGTH: u64 = 1 << 13;

/// Minimum distance of an even-q code, with an explicit weight-δ_i word.
pub fn min_distance_even(
    ctx: &FieldContext,
    params: &CodeParams,
    budget: &EnumerationBudget,
) -> Result<EvenWitness> {
    even_prime_power(params.q)?;
    if ctx.q() as u64 != params.q || ctx.m() != params.m {
        return Err(Error::InvalidArgument(
            "field does not match code parameters".into(),
        ));
    }
    let (m, i) = (params.m, params.i);
    let fam = FormFamily::new(ctx, i)?;
    let good = [
        RankType::new(2 * m - 2 * i - 1, 1),
        RankType::new(2 * m - 2 * i - 2, 2),
    ];
    let bad = RankType::new(2 * m - 2 * i - 2, 0);
    let full_scan = fam.len() <= budget.max_codewords;
    let mut witness: Option<(u64, TraceQuadraticForm, RankType)> = None;
    let mut type0_absent = true;
    for k in 0..fam.len() {
        if witness.is_some() && !full_scan {
            break;
        }
        let form = fam.member(k);
        let rt = classify_quadratic(ctx, &form)?;
        if rt == bad {
            type0_absent = false;
        }
        if witness.is_none() && good.contains(&rt) {
            witness = Some((k, form, rt));
        }
    }
    let (form_index, form, rank_type) = witness.ok_or_else(|| {
        Error::WitnessNotFound(format!(
            "no form of rank type {:?} or {:?}",
            good[0], good[1]
        ))
    })?;
    let target = params.delta_i;
    let (mu, eps) = locate_weight(ctx, &form, target)?.ok_or_else(|| {
        Error::WitnessNotFound(format!("coset {form_index} has no word of weight {target}"))
    })?;
    let spec = TraceCodewordSpec {
        lambdas: form.lambdas.clone(),
        mu,
        eps,
    };
    let word = trace_codeword(ctx, params, &spec)?;
    let word_weight = word.iter().filter(|&&c| c != 0).count() as u64;
    if word_weight != target {
        return Err(Error::WitnessNotFound(format!(
            "word weight {word_weight}, expected {target}"
        )));
    }
    let in_generator_code = if params.length <= MEMBERSHIP_CHECK_LENGTH {
        Some(generator_polynomial(ctx, params.delta_i)?.contains(ctx, &word))
    } else {
        None
    };
    Ok(EvenWitness {
        distance: target,
        form_index,
        lambdas: form.lambdas,
        rank_type,
        mu,
        eps,
        word_weight,
        word,
        in_generator_code,
        type0_absent: full_scan.then_some(type0_absent),
    })
}

/// First `(μ, ε)` in index order whose coset word has the given weight.
fn locate_weight(
    ctx: &FieldContext,
    form: &TraceQuadraticForm,
    target: u64,
) -> Result<Option<(GfElem, u32)>> {
    let f = ctx.base();
    let q = ctx.q() as usize;
    let qm = ctx.order() as u64;
    let counts = affine_value_counts(f, ctx.m(), &form.tabulate(ctx));
    // weight = q^m - 1 - N + [c = 0], N = #{x : Q(x) + b.x = -c}
    let mut best: Option<(GfElem, u32)> = None;
    for b in 0..ctx.order() as usize {
        for c in 0..q as u32 {
            let zeros = counts[b * q + f.neg(c) as usize] as u64;
            if qm + (c == 0) as u64 - 1 - zeros == target {
                let bv: Vec<u32> = ctx.coords(GfElem(b as u32));
                let mu = ctx
                    .dual_coordinates(&bv)
                    .ok_or_else(|| Error::WitnessNotFound("singular trace form".into()))?;
                if best.is_none_or(|(m0, e0)| (mu.0, c) < (m0.0, e0)) {
                    best = Some((mu, c));
                }
            }
        }
    }
    Ok(best)
}

/// Which constants `c` an appendix table ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantClass {
    /// `c = 0`: the homogeneous table.
    Zero,
    /// A fixed nonzero square (odd q).
    Square,
    /// A fixed nonsquare (odd q).
    NonSquare,
    /// A fixed nonzero constant, where the table does not depend on its
    /// square class (odd q with even rank, or even q).
    Nonzero,
    /// `c` running over all of GF(q)*: the affine table.
    AllNonzero,
}

impl ConstantClass {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "zero" | "0" => ConstantClass::Zero,
            "square" => ConstantClass::Square,
            "nonsquare" | "non-square" => ConstantClass::NonSquare,
            "nonzero" => ConstantClass::Nonzero,
            "all-nonzero" | "affine" => ConstantClass::AllNonzero,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown constant class {s}"
                )))
            }
        })
    }

    /// Whether a concrete constant belongs to this class.
    pub fn contains(self, f: &BaseField, c: u32) -> bool {
        match self {
            ConstantClass::Zero => c == 0,
            ConstantClass::Square => c != 0 && f.eta(c) == 1,
            ConstantClass::NonSquare => c != 0 && f.eta(c) == -1,
            ConstantClass::Nonzero | ConstantClass::AllNonzero => c != 0,
        }
    }
}

/// Frequencies of `N(Q + L + c)` as `L` runs over the homogeneous linear
/// functions, for a form of the given rank and type; `AllNonzero` also
/// runs `c` over GF(q)*.
pub fn appendix_frequency_table(
    q: u64,
    m: u32,
    rt: RankType,
    class: ConstantClass,
) -> Result<BTreeMap<u64, BigInt>> {
    prime_power(q)?;
    check_rank(rt, m)?;
    let qm = ipow(q, m)?;
    let mm = ipow(q, m - 1)?;
    let qi = q as i128;
    let mut rows: Vec<(i128, BigInt)> = Vec::new();
    let mut row = |n: i128, f: BigInt| rows.push((n, f));
    let scale_all = |v: BigInt| {
        if class == ConstantClass::AllNonzero {
            v * (qi - 1)
        } else {
            v
        }
    };
    if q % 2 == 1 {
        if !matches!(rt.ty, 1 | -1) {
            return Err(Error::InvalidArgument(format!("type {} for odd q", rt.ty)));
        }
        let r = rt.rank;
        let (qr, qr1) = (ipow(q, r)?, ipow(q, r - 1)?);
        let tau = rt.ty as i128;
        let eta = eta_minus_one(q);
        let h = (qi - 1) / 2;
        if r % 2 == 1 {
            let s = tau
                * if ((r - 1) / 2).is_multiple_of(2) {
                    1
                } else {
                    eta
                };
            let a = ipow(q, m - r.div_ceil(2))?;
            let b = ipow(q, (r - 1) / 2)?;
            match class {
                ConstantClass::Zero => {
                    row(mm, big(qm - qr + qr1));
                    for sg in [1i128, -1] {
                        row(mm + sg * s * a, big(h * (qr1 + sg * s * b)));
                    }
                }
                ConstantClass::Square => {
                    row(mm, big(qm - qr + qr1 + s * b));
                    row(mm + s * a, big(h * qr1 - s * b));
                    row(mm - s * a, big(h * qr1));
                }
                ConstantClass::NonSquare => {
                    row(mm, big(qm - qr + qr1 - s * b));
                    row(mm + s * a, big(h * qr1));
                    row(mm - s * a, big(h * qr1 + s * b));
                }
                ConstantClass::AllNonzero => {
                    row(mm, big((qi - 1) * (qm - qr + qr1)));
                    for sg in [1i128, -1] {
                        row(mm + sg * s * a, big(h * ((qi - 1) * qr1 - sg * s * b)));
                    }
                }
                ConstantClass::Nonzero => {
                    return Err(Error::InvalidArgument(
                        "odd rank needs the square class of c".into(),
                    ))
                }
            }
        } else {
            let s = tau * if (r / 2).is_multiple_of(2) { 1 } else { eta };
            let a = ipow(q, m - (r + 2) / 2)?;
            let b = ipow(q, (r - 2) / 2)?;
            match class {
                ConstantClass::Zero => {
                    row(mm, big(qm - qr));
                    row(mm + s * a * (qi - 1), big(qr1 + s * b * (qi - 1)));
                    row(mm - s * a, big((qi - 1) * (qr1 - s * b)));
                }
                _ => {
                    row(mm, scale_all(big(qm - qr)));
                    row(mm + s * a * (qi - 1), scale_all(big(qr1 - s * b)));
                    row(mm - s * a, scale_all(big((qi - 1) * qr1 + s * b)));
                }
            }
        }
    } else {
        if matches!(class, ConstantClass::Square | ConstantClass::NonSquare) {
            return Err(Error::InvalidArgument("square classes need odd q".into()));
        }
        let zero = class == ConstantClass::Zero;
        match (rt.ty, rt.rank % 2) {
            (1, 1) => {
                let r = (rt.rank - 1) / 2;
                let a = ipow(q, m - r - 1)?;
                let (q2r1, q2r, qr) = (ipow(q, 2 * r + 1)?, ipow(q, 2 * r)?, ipow(q, r)?);
                row(mm, scale_all(big(qm - q2r1 + q2r)));
                for sg in [1i128, -1] {
                    let v = if zero {
                        (qi - 1) * (q2r + sg * qr)
                    } else {
                        q2r1 - q2r - sg * qr
                    };
                    row(mm + sg * a, scale_all(big(v) / 2));
                }
            }
            (t @ (0 | 2), 0) => {
                let r = rt.rank / 2;
                let a = ipow(q, m - r - 1)?;
                let (q2r, q2r1, qr1) = (ipow(q, 2 * r)?, ipow(q, 2 * r - 1)?, ipow(q, r - 1)?);
                row(mm, scale_all(big(qm - q2r)));
                match (t, zero) {
                    (0, true) => {
                        row(mm + a * (qi - 1), big(q2r1 + qr1 * (qi - 1)));
                        row(mm - a, big((qi - 1) * (q2r1 - qr1)));
                    }
                    (0, false) => {
                        row(mm + a * (qi - 1), scale_all(big(q2r1 - qr1)));
                        row(mm - a, scale_all(big((qi - 1) * q2r1 + qr1)));
                    }
                    (_, true) => {
                        row(mm - a * (qi - 1), big(q2r1 - qr1 * (qi - 1)));
                        row(mm + a, big((qi - 1) * (q2r1 + qr1)));
                    }
                    (_, false) => {
                        row(mm - a * (qi - 1), scale_all(big(q2r1 + qr1)));
                        row(mm + a, scale_all(big((qi - 1) * q2r1 - qr1)));
                    }
                }
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no even-q form of rank {} type {}",
                    rt.rank, rt.ty
                )))
            }
        }
    }
    let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (n, f) in rows {
        if f.is_negative() {
            return Err(Error::NegativeEntry(format!("N = {n} has frequency {f}")));
        }
        if f.is_zero() {
            continue;
        }
        if n < 0 || n > qm {
            return Err(Error::InvalidArgument(format!(
                "zero count {n} outside 0..={qm}"
            )));
        }
        *out.entry(n as u64).or_default() += f;
    }
    Ok(out)
}

/// `(u_1, .., u_9)` for `W(b) = {(h+b, h)}` against the nine square-class
/// cells of GF(q) x GF(q), read from the table.
pub fn intersection_table(f: &BaseField, b: u32) -> Result<[u64; 9]> {
    if f.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    let q = f.q() as i64;
    if b == 0 {
        let h = ((q - 1) / 2) as u64;
        return Ok([1, 0, 0, 0, h, 0, 0, 0, h]);
    }
    let bs = f.eta(b) == 1;
    let ms = f.eta(f.neg(b)) == 1;
    let v: [i64; 9] = match (bs, ms) {
        (true, true) => [
            0,
            1,
            0,
            1,
            (q - 5) / 4,
            (q - 1) / 4,
            0,
            (q - 1) / 4,
            (q - 1) / 4,
        ],
        (true, false) => [
            0,
            0,
            1,
            1,
            (q - 3) / 4,
            (q - 3) / 4,
            0,
            (q + 1) / 4,
            (q - 3) / 4,
        ],
        (false, true) => [
            0,
            1,
            0,
            0,
            (q - 3) / 4,
            (q + 1) / 4,
            1,
            (q - 3) / 4,
            (q - 3) / 4,
        ],
        (false, false) => [
            0,
            0,
            1,
            0,
            (q - 1) / 4,
            (q - 1) / 4,
            1,
            (q - 1) / 4,
            (q - 5) / 4,
        ],
    };
    let mut out = [0u64; 9];
    for (o, x) in out.iter_mut().zip(v) {
        *o = u64::try_from(x).map_err(|_| Error::NegativeEntry(format!("table entry {x}")))?;
    }
    Ok(out)
}

/// The same tuple by counting `h` directly.
pub fn intersection_counts(f: &BaseField, b: u32) -> Result<[u64; 9]> {
    if f.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    let cell = |a: u32| match (a, f.eta(a)) {
        (0, _) => 0,
        (_, 1) => 1,
        _ => 2,
    };
    let mut out = [0u64; 9];
    for h in f.elements() {
        out[3 * cell(f.add(h, b)) + cell(h)] += 1;
    }
    Ok(out)
}
