// SPDX-License-Identifier: Apache-2.0

//! Exhaustive ground truth: codeword enumeration by two routes, zero
//! counting, and an independent rank/type census.
//!
//! Nothing here uses a closed formula. The workhorse is
//! [`affine_value_counts`], which tabulates `#{x : Q(x) + b.x = v}` for
//! every linear functional `b` and value `v` with one pass per coordinate,
//! so a whole PRM coset is enumerated in `O(m q^{m+2})` instead of
//! `O(q^{2m+1})`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bchcode::{generator_polynomial, CyclicCode};
use crate::cyclotomic::CodeParams;
use crate::error::{Error, Result};
use crate::forms::{
    bilinear_rank, classify_symmetric, FormFamily, QuadForm, RankType, TraceQuadraticForm,
};
use crate::gf::{BaseField, FieldContext, GfElem};
use crate::schemes::{FamilySpec, InnerDistribution, SchemeKind};
use crate::weights::WeightEnumerator;

/// Work ceilings; operations refuse anything larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_codewords: u64,
    pub max_field_size: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_codewords: 1 << 24,
            max_field_size: 1 << 16,
        }
    }
}

pub const BUDGET_ENV: &str = "BCHFORMS_BUDGET";

impl EnumerationBudget {
    pub fn small() -> Self {
        EnumerationBudget {
            max_codewords: 1 << 16,
            max_field_size: 1 << 10,
        }
    }

    pub fn large() -> Self {
        EnumerationBudget {
            max_codewords: 1 << 28,
            max_field_size: 1 << 20,
        }
    }

    /// Accepts `small`, `default`, `large`, a codeword ceiling, or
    /// `codewords,field`; numbers may be written `2^k`.
    pub fn parse(s: &str) -> Result<Self> {
        let num = |t: &str| -> Result<u64> {
            let t = t.trim();
            let bad = || Error::InvalidArgument(format!("bad budget value {t:?}"));
            match t.split_once('^') {
                Some((b, e)) => {
                    let b: u64 = b.trim().parse().map_err(|_| bad())?;
                    let e: u32 = e.trim().parse().map_err(|_| bad())?;
                    b.checked_pow(e).ok_or_else(bad)
                }
                None => t.parse().map_err(|_| bad()),
            }
        };
        match s.trim() {
            "small" => Ok(Self::small()),
            "default" => Ok(Self::default()),
            "large" => Ok(Self::large()),
            other => match other.split_once(',') {
                Some((a, b)) => Ok(EnumerationBudget {
                    max_codewords: num(a)?,
                    max_field_size: num(b)?,
                }),
                None => Ok(EnumerationBudget {
                    max_codewords: num(other)?,
                    ..Self::default()
                }),
            },
        }
    }

    /// The default, overridden by `BCHFORMS_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) if !v.trim().is_empty() => Self::parse(&v),
            _ => Ok(Self::default()),
        }
    }

    fn check(&self, what: &str, needed: u128, limit: u64) -> Result<()> {
        if needed > limit as u128 {
            return Err(Error::BudgetExceeded {
                what: what.into(),
                needed,
                limit: limit as u128,
            });
        }
        Ok(())
    }

    pub fn check_field(&self, ctx: &FieldContext) -> Result<()> {
        self.check("field size", ctx.order() as u128, self.max_field_size)
    }

    pub fn check_codewords(&self, q: u64, k: u64) -> Result<()> {
        let needed = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        self.check("codewords", needed, self.max_codewords)
    }
}

/// `out[b * q + v] = #{x : values[x] + b.x = v}`, with `x` and `b` given by
/// their coordinate indices `sum x_k q^k` and `b.x = sum b_k x_k`.
pub fn affine_value_counts(f: &BaseField, m: u32, values: &[u32]) -> Vec<u32> {
    let q = f.q() as usize;
    let size = q.pow(m);
    assert_eq!(values.len(), size, "one value per point");
    let mut a = vec![0u32; size * q];
    for (x, &v) in values.iter().enumerate() {
        a[x * q + v as usize] += 1;
    }
    let mul: Vec<u32> = (0..q * q)
        .map(|t| f.mul((t / q) as u32, (t % q) as u32))
        .collect();
    let sub: Vec<usize> = (0..q * q)
        .map(|t| f.sub((t / q) as u32, (t % q) as u32) as usize)
        .collect();
    let mut gathered = vec![0u32; q * q];
    let mut out = vec![0u32; q * q];
    let mut stride = 1usize;
    for _ in 0..m {
        for block in (0..size).step_by(stride * q) {
            for off in 0..stride {
                for xk in 0..q {
                    let idx = (block + off + xk * stride) * q;
                    gathered[xk * q..(xk + 1) * q].copy_from_slice(&a[idx..idx + q]);
                }
                out.iter_mut().for_each(|o| *o = 0);
                for bk in 0..q {
                    for xk in 0..q {
                        let t = mul[bk * q + xk] as usize;
                        let src = &gathered[xk * q..(xk + 1) * q];
                        for v in 0..q {
                            out[bk * q + v] += src[sub[v * q + t]];
                        }
                    }
                }
                for bk in 0..q {
                    let idx = (block + off + bk * stride) * q;
                    a[idx..idx + q].copy_from_slice(&out[bk * q..(bk + 1) * q]);
                }
            }
        }
        stride *= q;
    }
    a
}

/// Direct `O(q^{2m})` version of [`affine_value_counts`].
pub fn affine_value_counts_naive(f: &BaseField, m: u32, values: &[u32]) -> Vec<u32> {
    let q = f.q() as usize;
    let size = q.pow(m);
    let digits = |mut x: usize| -> Vec<u32> {
        (0..m)
            .map(|_| {
                let d = (x % q) as u32;
                x /= q;
                d
            })
            .collect()
    };
    let pts: Vec<Vec<u32>> = (0..size).map(digits).collect();
    let mut out = vec![0u32; size * q];
    for (b, bv) in pts.iter().enumerate() {
        for (x, xv) in pts.iter().enumerate() {
            let dot = bv
                .iter()
                .zip(xv)
                .fold(0, |acc, (&u, &w)| f.add(acc, f.mul(u, w)));
            out[b * q + f.add(values[x], dot) as usize] += 1;
        }
    }
    out
}

/// Weight tally of `{Q + L + c}` from affine value counts, where `Q` is
/// given by its values on every point.
fn tally_coset(f: &BaseField, m: u32, values: &[u32], tally: &mut BTreeMap<u64, u64>) {
    let q = f.q() as usize;
    let size = q.pow(m) as u64;
    let counts = affine_value_counts(f, m, values);
    for b in 0..size as usize {
        for c in 0..q as u32 {
            let zeros = counts[b * q + f.neg(c) as usize] as u64;
            *tally.entry(size + (c == 0) as u64 - 1 - zeros).or_insert(0) += 1;
        }
    }
}

/// Weight distribution of the coset `Q + PRM_q(1,m)` on GF(q^m)*.
pub fn coset_weights(
    ctx: &FieldContext,
    form: &TraceQuadraticForm,
    budget: &EnumerationBudget,
) -> Result<WeightEnumerator> {
    budget.check_field(ctx)?;
    let mut tally = BTreeMap::new();
    tally_coset(ctx.base(), ctx.m(), &form.tabulate(ctx), &mut tally);
    Ok(with_length(tally, ctx.n() as u64))
}

/// Same distribution by listing every word of the coset explicitly.
pub fn coset_weights_explicit(
    ctx: &FieldContext,
    form: &TraceQuadraticForm,
    budget: &EnumerationBudget,
) -> Result<WeightEnumerator> {
    budget.check_field(ctx)?;
    budget.check(
        "coset words",
        ctx.order() as u128 * ctx.q() as u128,
        budget.max_codewords,
    )?;
    let coset = crate::bchcode::PrmCoset {
        form: form.clone(),
        representative: form.tabulate_by_log(ctx),
    };
    let mut tally = BTreeMap::new();
    for w in coset.words(ctx) {
        *tally
            .entry(w.iter().filter(|&&c| c != 0).count() as u64)
            .or_insert(0u64) += 1;
    }
    Ok(with_length(tally, ctx.n() as u64))
}

fn with_length(tally: BTreeMap<u64, u64>, length: u64) -> WeightEnumerator {
    let mut e = WeightEnumerator::from(tally);
    e.length = length;
    e
}

/// How the codewords are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Every information word times the generator matrix.
    Generator,
    /// Every `(λ, μ, ε)` of the trace representation, one PRM coset at a
    /// time.
    Trace,
}

/// Exact weight distribution of `C_(q,m,δ_i)`.
pub fn enumerate_code_weights(
    ctx: &FieldContext,
    params: &CodeParams,
    route: Route,
    budget: &EnumerationBudget,
) -> Result<WeightEnumerator> {
    if ctx.q() as u64 != params.q || ctx.m() != params.m {
        return Err(Error::InvalidArgument(
            "field does not match code parameters".into(),
        ));
    }
    budget.check_codewords(params.q, params.dimension)?;
    match route {
        Route::Generator => {
            let code = generator_polynomial(ctx, params.delta_i)?;
            enumerate_cyclic_code(ctx.base(), &code, budget)
        }
        Route::Trace => {
            budget.check_field(ctx)?;
            let fam = FormFamily::new(ctx, params.i)?;
            let f = ctx.base();
            let tally = (0..fam.len())
                .into_par_iter()
                .fold(BTreeMap::new, |mut acc, k| {
                    tally_coset(f, ctx.m(), &fam.member(k).tabulate(ctx), &mut acc);
                    acc
                })
                .reduce(BTreeMap::new, merge_tallies);
            Ok(with_length(tally, params.length))
        }
    }
}

fn merge_tallies(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Weight distribution of a cyclic code from its generator rows.
///
/// Information words are split on their top digits across the rayon pool;
/// within a chunk the low digits advance like an odometer and only the
/// rows whose digit changed are added, so each step costs about one row.
pub fn enumerate_cyclic_code(
    f: &BaseField,
    code: &CyclicCode,
    budget: &EnumerationBudget,
) -> Result<WeightEnumerator> {
    budget.check_codewords(code.q, code.dimension)?;
    let n = code.length as usize;
    let k = code.dimension as usize;
    let q = f.q() as usize;
    let rows = code.generator_rows();
    let top = (0..=k).find(|&t| q.pow(t as u32) >= 256).unwrap_or(k);
    let low = k - top;
    let mul: Vec<u32> = (0..q * q)
        .map(|t| f.mul((t / q) as u32, (t % q) as u32))
        .collect();
    let add_row = |word: &mut [u32], weight: &mut usize, row: &[u32], c: u32| {
        for (w, &r) in word.iter_mut().zip(row) {
            if r == 0 {
                continue;
            }
            let before = *w != 0;
            *w = f.add(*w, mul[c as usize * q + r as usize]);
            let after = *w != 0;
            if before != after {
                if after {
                    *weight += 1;
                } else {
                    *weight -= 1;
                }
            }
        }
    };
    let counts = (0..q.pow(top as u32))
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, mut hi| {
                let mut word = vec![0u32; n];
                let mut weight = 0usize;
                for row in rows.iter().skip(low) {
                    let d = (hi % q) as u32;
                    hi /= q;
                    if d != 0 {
                        add_row(&mut word, &mut weight, row, d);
                    }
                }
                let mut digits = vec![0u32; low];
                loop {
                    acc[weight] += 1;
                    let mut j = 0;
                    loop {
                        if j == low {
                            return acc;
                        }
                        let old = digits[j];
                        let new = if old as usize + 1 == q { 0 } else { old + 1 };
                        digits[j] = new;
                        add_row(&mut word, &mut weight, &rows[j], f.sub(new, old));
                        if new != 0 {
                            break;
                        }
                        j += 1;
                    }
                }
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut out = WeightEnumerator::new(code.length);
    for (w, c) in counts.into_iter().enumerate() {
        out.add(w as u64, c);
    }
    Ok(out)
}

/// `N(f) = #{x in GF(q^m) : f(x) = 0}`.
pub fn count_zeros(
    ctx: &FieldContext,
    budget: &EnumerationBudget,
    f: impl Fn(GfElem) -> u32 + Sync,
) -> Result<u64> {
    budget.check_field(ctx)?;
    Ok((0..ctx.order())
        .into_par_iter()
        .filter(|&x| f(GfElem(x)) == 0)
        .count() as u64)
}

/// `wt(f) = q^m - 1 - N(f) + [f(0) = 0]`: the Hamming weight of
/// `(f(x))_{x != 0}`.
pub fn function_weight(
    ctx: &FieldContext,
    budget: &EnumerationBudget,
    f: impl Fn(GfElem) -> u32 + Sync,
) -> Result<u64> {
    let f0 = f(GfElem::ZERO);
    let zeros = count_zeros(ctx, budget, f)?;
    Ok(ctx.order() as u64 + (f0 == 0) as u64 - 1 - zeros)
}

/// Census of a family that classifies each member from its coordinate
/// form, without the trace-side bilinear construction.
pub fn rank_type_census(
    ctx: &FieldContext,
    spec: &FamilySpec,
    budget: &EnumerationBudget,
) -> Result<InnerDistribution> {
    spec.validate()?;
    if ctx.q() as u64 != spec.q || ctx.m() != spec.m {
        return Err(Error::InvalidArgument(
            "field does not match family parameters".into(),
        ));
    }
    budget.check_field(ctx)?;
    let fam = FormFamily::new(ctx, spec.i)?;
    budget.check("family members", fam.len() as u128, budget.max_codewords)?;
    let f = ctx.base();
    let scheme = spec.kind.scheme();
    let tally = (0..fam.len())
        .into_par_iter()
        .map(|k| {
            let qf = fam.member(k).to_quad_form(ctx);
            match scheme {
                SchemeKind::Qua => qf.classify(f),
                SchemeKind::Sym => classify_symmetric(f, &qf.polarize(f)),
                SchemeKind::Alt => Ok(RankType::new(bilinear_rank(f, &qf.polarize(f)), 0)),
            }
        })
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<RankType, u64>, rt| {
            *acc.entry(rt?).or_insert(0) += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |a, b| {
            let mut a = a;
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    let mut dist = InnerDistribution::new(scheme, spec.m);
    dist.entries = tally
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v)))
        .collect();
    Ok(dist)
}

fn quad_form_values(f: &BaseField, qf: &QuadForm, budget: &EnumerationBudget) -> Result<Vec<u32>> {
    let m = qf.dim() as u32;
    let q = f.q() as usize;
    budget.check("field size", (q as u128).pow(m), budget.max_field_size)?;
    let size = q.pow(m);
    let mut x = vec![0u32; m as usize];
    let mut values = Vec::with_capacity(size);
    for idx in 0..size {
        let mut t = idx;
        for d in x.iter_mut() {
            *d = (t % q) as u32;
            t /= q;
        }
        values.push(qf.eval(f, &x));
    }
    Ok(values)
}

/// Weight distribution of `{Q + L + c}` for a coordinate form `Q` on
/// GF(q)^m, each function read as a word on the nonzero points.
pub fn quad_form_coset_weights(
    f: &BaseField,
    qf: &QuadForm,
    budget: &EnumerationBudget,
) -> Result<WeightEnumerator> {
    let m = qf.dim() as u32;
    let values = quad_form_values(f, qf, budget)?;
    let mut tally = BTreeMap::new();
    tally_coset(f, m, &values, &mut tally);
    Ok(with_length(tally, values.len() as u64 - 1))
}

/// For each constant `c`, the frequencies of `N(Q + L + c)` over all
/// linear `L`, with `Q` a coordinate form on GF(q)^m.
pub fn appendix_counts(
    f: &BaseField,
    qf: &QuadForm,
    budget: &EnumerationBudget,
) -> Result<Vec<BTreeMap<u64, u64>>> {
    let m = qf.dim() as u32;
    let q = f.q() as usize;
    let values = quad_form_values(f, qf, budget)?;
    let size = values.len();
    let counts = affine_value_counts(f, m, &values);
    Ok((0..q as u32)
        .map(|c| {
            let mut t = BTreeMap::new();
            for b in 0..size {
                *t.entry(counts[b * q + f.neg(c) as usize] as u64)
                    .or_insert(0) += 1;
            }
            t
        })
        .collect())
}
