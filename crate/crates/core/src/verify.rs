// SPDX-License-Identifier: Apache-2.0

//! Named property suites comparing each closed form with its exhaustive
//! counterpart, reported check by check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::{
    code_params, coset_leaders, coset_leaders_geq, delta_i, supported, theorem_range, CodeParams,
};
use crate::error::{Error, Result};
use crate::forms::{all_rank_types, canonical_form, count_solutions_closed, RankType};
use crate::gf::{BaseField, FieldContext};
use crate::oracle::{
    appendix_counts, enumerate_code_weights, quad_form_coset_weights, rank_type_census,
    EnumerationBudget, Route,
};
use crate::schemes::{
    census_inner_distribution, dg_bound, enumerate_family, family_distribution_closed,
    is_proper_d_code, t_design_check, FamilyKind, FamilyMember, FamilySpec, InnerDistribution,
};
use crate::weights::{
    appendix_frequency_table, code_enumerator_odd, coset_enumerator, intersection_counts,
    intersection_table, min_distance_even, ConstantClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Params,
    Cosets,
    Forms,
    Schemes,
    Appendix,
    Distance,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "params" => Suite::Params,
            "cosets" => Suite::Cosets,
            "forms" => Suite::Forms,
            "schemes" => Suite::Schemes,
            "appendix" => Suite::Appendix,
            "distance" => Suite::Distance,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Params => "params",
            Suite::Cosets => "cosets",
            Suite::Forms => "forms",
            Suite::Schemes => "schemes",
            Suite::Appendix => "appendix",
            Suite::Distance => "distance",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Restricts a suite to given parameters; unset fields use the suite's
/// own desk-scale grid.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyOptions {
    pub q: Option<u64>,
    pub m: Option<u32>,
    pub i: Option<u32>,
    pub max_m: Option<u32>,
    pub budget: EnumerationBudget,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report {
            suite: suite.to_string(),
            passed: true,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: String, outcome: Result<std::result::Result<(), String>>) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        self.passed &= passed;
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    fn absorb(&mut self, other: Report) {
        self.passed &= other.passed;
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{}/{}", other.suite, c.name);
            c
        }));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn expect(cond: bool, what: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Report {
    match suite {
        Suite::Params => params_suite(opts),
        Suite::Cosets => cosets_suite(opts),
        Suite::Forms => forms_suite(opts),
        Suite::Schemes => schemes_suite(opts),
        Suite::Appendix => appendix_suite(opts),
        Suite::Distance => distance_suite(opts),
        Suite::All => {
            let mut all = Report::new(Suite::All);
            for s in [
                Suite::Params,
                Suite::Cosets,
                Suite::Forms,
                Suite::Schemes,
                Suite::Appendix,
                Suite::Distance,
            ] {
                all.absorb(run(s, opts));
            }
            all
        }
    }
}

fn qs(opts: &VerifyOptions, default: &[u64]) -> Vec<u64> {
    opts.q.map_or_else(|| default.to_vec(), |q| vec![q])
}

/// `(q, m)` pairs with `q^m` inside the field budget and `m <= max_m`.
fn fields(opts: &VerifyOptions, default_q: &[u64], default_max_m: u32) -> Vec<(u64, u32)> {
    let max_m = opts.max_m.unwrap_or(default_max_m);
    let ms: Vec<u32> = opts.m.map_or_else(|| (1..=max_m).collect(), |m| vec![m]);
    let mut out = Vec::new();
    for q in qs(opts, default_q) {
        for &m in &ms {
            if supported(q, m)
                && q.checked_pow(m)
                    .is_some_and(|s| s <= opts.budget.max_field_size)
            {
                out.push((q, m));
            }
        }
    }
    out
}

/// In-range `(q, m, i)` triples, skipping degenerate designed distances.
fn triples(opts: &VerifyOptions, default_q: &[u64], default_max_m: u32) -> Vec<CodeParams> {
    let mut out = Vec::new();
    for (q, m) in fields(opts, default_q, default_max_m) {
        let (lo, hi) = theorem_range(m);
        let is: Vec<u32> = opts.i.map_or_else(|| (lo..=hi).collect(), |i| vec![i]);
        for i in is {
            if let Ok(p) = code_params(q, m, i) {
                out.push(p);
            }
        }
    }
    out
}

fn params_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Params);
    for p in triples(opts, &[2, 3, 4, 5, 7], 14) {
        let (q, m, i) = (p.q, p.m, p.i);
        if q.pow(m) > 1 << 16 {
            continue;
        }
        r.push(
            format!("leaders q={q} m={m} i={i}"),
            (|| {
                let lo = theorem_range(m).0;
                let mut want: Vec<u64> = (lo..=i)
                    .map(|j| delta_i(q, m, j).map(|d| d as u64))
                    .collect::<Result<_>>()?;
                want.push(p.delta);
                want.sort_unstable();
                let got = coset_leaders_geq(p.delta_i, q, m)?;
                if got != want {
                    return Ok(Err(format!("leaders {got:?}, expected {want:?}")));
                }
                let dim: u64 = coset_leaders(q, m)?
                    .into_iter()
                    .filter(|&(s, _)| s >= p.delta_i)
                    .map(|(_, c)| c as u64)
                    .sum::<u64>()
                    + 1;
                Ok(expect_eq(dim, p.dimension))
            })(),
        );
    }
    r
}

fn cosets_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Cosets);
    for (q, m) in fields(opts, &[2, 3, 4, 5, 7, 8, 9], 5) {
        let f = match BaseField::from_order(q) {
            Ok(f) => f,
            Err(e) => {
                r.push(format!("field q={q}"), Err(e));
                continue;
            }
        };
        for rt in all_rank_types(q % 2 == 0, m) {
            r.push(
                format!("coset q={q} m={m} rank={} type={}", rt.rank, rt.ty),
                (|| {
                    let qf = canonical_form(&f, rt, m as usize)?;
                    Ok(expect_eq(
                        coset_enumerator(q, m, rt)?,
                        quad_form_coset_weights(&f, &qf, &opts.budget)?,
                    ))
                })(),
            );
        }
    }
    let codes: Vec<CodeParams> = if opts.q.is_some() || opts.m.is_some() {
        triples(opts, &[3], 4)
            .into_iter()
            .filter(|p| p.q % 2 == 1)
            .collect()
    } else {
        [(3, 3, 1), (3, 4, 2)]
            .into_iter()
            .filter_map(|(q, m, i)| code_params(q, m, i).ok())
            .collect()
    };
    for p in codes {
        if opts.budget.check_codewords(p.q, p.dimension).is_err() {
            continue;
        }
        r.push(
            format!("code q={} m={} i={}", p.q, p.m, p.i),
            (|| {
                let ctx = FieldContext::for_q(p.q, p.m)?;
                Ok(expect_eq(
                    code_enumerator_odd(&p)?,
                    enumerate_code_weights(&ctx, &p, Route::Trace, &opts.budget)?,
                ))
            })(),
        );
    }
    r
}

fn forms_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Forms);
    for (q, m) in fields(opts, &[2, 3, 4, 5, 7, 9], 4) {
        let Ok(f) = BaseField::from_order(q) else {
            continue;
        };
        for rt in all_rank_types(q % 2 == 0, m) {
            r.push(
                format!("canonical q={q} m={m} rank={} type={}", rt.rank, rt.ty),
                (|| {
                    let qf = canonical_form(&f, rt, m as usize)?;
                    if qf.classify(&f)? != rt {
                        return Ok(Err(format!("classified as {:?}", qf.classify(&f)?)));
                    }
                    for h in f.elements() {
                        let closed = count_solutions_closed(&f, rt, h, m)?;
                        let brute = BigInt::from(qf.count_solutions(&f, h));
                        if closed != brute {
                            return Ok(Err(format!("h={h}: closed {closed}, counted {brute}")));
                        }
                    }
                    Ok(Ok(()))
                })(),
            );
        }
    }
    for p in triples(opts, &[2, 3, 4, 5], 4) {
        let kind = FamilyKind::for_scheme(crate::schemes::SchemeKind::Qua, p.m);
        r.push(
            format!("census q={} m={} i={}", p.q, p.m, p.i),
            (|| {
                let ctx = FieldContext::for_q(p.q, p.m)?;
                let spec = FamilySpec::new(kind, p.q, p.m, p.i)?;
                let a = census_inner_distribution(&ctx, &spec, opts.budget.max_codewords)?;
                let b = rank_type_census(&ctx, &spec, &opts.budget)?;
                Ok(expect_eq(a.entries, b.entries))
            })(),
        );
    }
    r
}

fn census(
    ctx: &FieldContext,
    kind: FamilyKind,
    p: &CodeParams,
    budget: &EnumerationBudget,
) -> Result<InnerDistribution> {
    rank_type_census(ctx, &FamilySpec::new(kind, p.q, p.m, p.i)?, budget)
}

fn schemes_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Schemes);
    for p in triples(opts, &[2, 3, 4, 5], 4) {
        let odd_m = p.m % 2 == 1;
        let tag = format!("q={} m={} i={}", p.q, p.m, p.i);
        let ctx = match FieldContext::for_q(p.q, p.m) {
            Ok(c) => c,
            Err(e) => {
                r.push(format!("field {tag}"), Err(e));
                continue;
            }
        };
        let (qk, sk, ak) = if odd_m {
            (FamilyKind::Q1, FamilyKind::S1, FamilyKind::A1)
        } else {
            (FamilyKind::Q2, FamilyKind::S2, FamilyKind::A2)
        };
        if p.q % 2 == 1 {
            r.push(
                format!("closed-vs-census {tag}"),
                (|| {
                    let closed = family_distribution_closed(p.q, p.m, p.i)?.normalized();
                    let counted = census(&ctx, sk, &p, &opts.budget)?;
                    Ok(expect_eq(closed.entries, counted.entries))
                })(),
            );
            r.push(
                format!("quadratic-equals-symmetric {tag}"),
                (|| {
                    Ok(expect_eq(
                        census(&ctx, qk, &p, &opts.budget)?.entries,
                        census(&ctx, sk, &p, &opts.budget)?.entries,
                    ))
                })(),
            );
        } else {
            r.push(
                format!("quadratic-refines-alternating {tag}"),
                (|| {
                    let d = census(&ctx, qk, &p, &opts.budget)?;
                    let b = census(&ctx, ak, &p, &opts.budget)?;
                    for s in 0..=p.m / 2 {
                        let lhs = d.get(RankType::new(2 * s, 0))
                            + d.get(RankType::new(2 * s + 1, 1))
                            + d.get(RankType::new(2 * s, 2));
                        if lhs != b.get(RankType::new(2 * s, 0)) {
                            return Ok(Err(format!(
                                "half-rank {s}: {lhs} vs {}",
                                b.get(RankType::new(2 * s, 0))
                            )));
                        }
                    }
                    Ok(Ok(()))
                })(),
            );
        }
    }
    let q_ok = |q: u64| opts.q.is_none_or(|x| x == q);
    if q_ok(2) && opts.m.is_none_or(|m| m == 5) {
        r.push(
            "alternating-bound q=2 m=5 i=2".into(),
            (|| {
                let ctx = FieldContext::for_q(2, 5)?;
                let b = rank_type_census(
                    &ctx,
                    &FamilySpec::new(FamilyKind::A1, 2, 5, 2)?,
                    &opts.budget,
                )?;
                if !is_proper_d_code(&b, 4) {
                    return Ok(Err("not a proper 4-code".into()));
                }
                Ok(expect_eq(b.total(), dg_bound(5, 2, 2)?))
            })(),
        );
    }
    if q_ok(3) && opts.m.is_none_or(|m| m == 3) {
        r.push(
            "design q=3 m=3 i=1 t=2".into(),
            design_probe(3, 3, 1, 2, false, &opts.budget).map(|ok| expect(ok, "not a 2-design")),
        );
        r.push(
            "design-negative-control q=3 m=3 i=1 t=2".into(),
            design_probe(3, 3, 1, 2, true, &opts.budget)
                .map(|ok| expect(!ok, "corrupted family still passed")),
        );
    }
    r
}

/// Design check on the symmetric family; `corrupt` overwrites one member
/// with a copy of another.
pub fn design_probe(
    q: u64,
    m: u32,
    i: u32,
    t: usize,
    corrupt: bool,
    budget: &EnumerationBudget,
) -> Result<bool> {
    let kind = if m % 2 == 1 {
        FamilyKind::S1
    } else {
        FamilyKind::S2
    };
    let ctx = FieldContext::for_q(q, m)?;
    budget.check_field(&ctx)?;
    let spec = FamilySpec::new(kind, q, m, i)?;
    let mut members: Vec<_> = enumerate_family(&ctx, &spec)?
        .filter_map(|x| match x {
            FamilyMember::Bilinear(g) => Some(g),
            FamilyMember::Quadratic(_) => None,
        })
        .collect();
    if corrupt && members.len() > 2 {
        members[2] = members[1].clone();
    }
    t_design_check(ctx.base(), m as usize, &members, t, budget.max_codewords)
}

fn appendix_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Appendix);
    for (q, m) in fields(opts, &[2, 3, 4, 5], 4) {
        let Ok(f) = BaseField::from_order(q) else {
            continue;
        };
        for rt in all_rank_types(q % 2 == 0, m)
            .into_iter()
            .filter(|rt| rt.rank > 0)
        {
            r.push(
                format!("tables q={q} m={m} rank={} type={}", rt.rank, rt.ty),
                appendix_check(&f, m, rt, &opts.budget),
            );
        }
    }
    for q in qs(opts, &[3, 5, 7, 9]).into_iter().filter(|q| q % 2 == 1) {
        let Ok(f) = BaseField::from_order(q) else {
            continue;
        };
        for b in f.elements() {
            r.push(
                format!("intersections q={q} b={b}"),
                (|| {
                    Ok(expect_eq(
                        intersection_table(&f, b)?,
                        intersection_counts(&f, b)?,
                    ))
                })(),
            );
        }
    }
    r
}

fn classes_for(q: u64, rt: RankType) -> &'static [ConstantClass] {
    use ConstantClass::*;
    if q.is_multiple_of(2) {
        &[Zero, Nonzero, AllNonzero]
    } else if rt.rank % 2 == 1 {
        &[Zero, Square, NonSquare, AllNonzero]
    } else {
        &[Zero, Square, NonSquare, Nonzero, AllNonzero]
    }
}

/// Every constant class of one canonical form against exhaustive counts.
pub fn appendix_check(
    f: &BaseField,
    m: u32,
    rt: RankType,
    budget: &EnumerationBudget,
) -> Result<std::result::Result<(), String>> {
    let q = f.q() as u64;
    let qf = canonical_form(f, rt, m as usize)?;
    let per_c = appendix_counts(f, &qf, budget)?;
    let big = |t: &BTreeMap<u64, u64>| -> BTreeMap<u64, BigInt> {
        t.iter().map(|(&k, &v)| (k, BigInt::from(v))).collect()
    };
    for &class in classes_for(q, rt) {
        let closed = appendix_frequency_table(q, m, rt, class)?;
        if class == ConstantClass::AllNonzero {
            let mut sum = BTreeMap::new();
            for t in &per_c[1..] {
                for (&k, &v) in t {
                    *sum.entry(k).or_insert(0u64) += v;
                }
            }
            if closed != big(&sum) {
                return Ok(Err(format!(
                    "{class:?}: closed {closed:?}, counted {sum:?}"
                )));
            }
        } else {
            for (c, t) in per_c.iter().enumerate() {
                if class.contains(f, c as u32) && closed != big(t) {
                    return Ok(Err(format!(
                        "{class:?} c={c}: closed {closed:?}, counted {t:?}"
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Largest `q^k * n` for which the generator route also runs.
const GENERATOR_ROUTE_WORK: u128 = 1 << 30;

fn distance_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new(Suite::Distance);
    for p in triples(opts, &[2, 3, 4, 5], 16) {
        if opts.budget.check_codewords(p.q, p.dimension).is_err() {
            continue;
        }
        r.push(
            format!("min-distance q={} m={} i={}", p.q, p.m, p.i),
            distance_check(&p, &opts.budget),
        );
    }
    r
}

/// Oracle minimum distance against `δ_i`, with the even-q witness and,
/// when cheap enough, the generator route as a second opinion.
pub fn distance_check(
    p: &CodeParams,
    budget: &EnumerationBudget,
) -> Result<std::result::Result<(), String>> {
    let ctx = FieldContext::for_q(p.q, p.m)?;
    let trace = enumerate_code_weights(&ctx, p, Route::Trace, budget)?;
    if trace.min_distance() != Some(p.delta_i) {
        return Ok(Err(format!(
            "trace route minimum {:?}, expected {}",
            trace.min_distance(),
            p.delta_i
        )));
    }
    let work = (p.q as u128).pow(p.dimension as u32) * p.length as u128;
    if work <= GENERATOR_ROUTE_WORK {
        let gen = enumerate_code_weights(&ctx, p, Route::Generator, budget)?;
        if gen != trace {
            return Ok(Err("generator and trace routes disagree".into()));
        }
    }
    if p.q.is_multiple_of(2) {
        let w = min_distance_even(&ctx, p, budget)?;
        if w.distance != p.delta_i
            || w.word_weight != p.delta_i
            || w.in_generator_code == Some(false)
        {
            return Ok(Err(format!(
                "witness weight {} membership {:?}",
                w.word_weight, w.in_generator_code
            )));
        }
    }
    Ok(Ok(()))
}
