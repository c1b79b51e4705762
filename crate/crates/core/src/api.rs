// SPDX-License-Identifier: Apache-2.0

//! JSON payloads for every front-end command. The CLI and the C interface
//! both print exactly what these functions return.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bchcode::generator_polynomial;
use crate::cyclotomic::{bch_dimension, code_params, coset_leaders as leaders};
use crate::error::{Error, Result};
use crate::forms::{
    bilinear_rank, classify_quadratic, classify_symmetric, RankType, TraceQuadraticForm,
};
use crate::gf::{FieldContext, GfElem};
use crate::oracle::{
    appendix_counts, coset_weights, enumerate_code_weights, rank_type_census, EnumerationBudget,
    Route,
};
use crate::schemes::{
    census_inner_distribution, dg_bound as dg, family_distribution_closed, FamilyKind, FamilySpec,
    SchemeKind,
};
use crate::verify::{self, design_probe, Suite, VerifyOptions};
use crate::weights::{
    appendix_frequency_table, code_enumerator_odd, coset_enumerator, min_distance_even,
    ConstantClass, WeightEnumerator,
};

/// A payload plus whether every comparison it contains agreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { payload, ok: true }
    }
}

/// Closed form, exhaustive oracle, or both side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Closed,
    Oracle,
    Both,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Mode::Closed),
            "oracle" | "census" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s}"))),
        }
    }

    fn closed(self) -> bool {
        self != Mode::Oracle
    }

    fn oracle(self) -> bool {
        self != Mode::Closed
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn enumerator_json(e: &WeightEnumerator) -> Value {
    let mut v = to_value(e);
    v["polynomial"] = Value::String(e.to_polynomial_string());
    v["min_distance"] = to_value(&e.min_distance());
    v
}

pub fn params(q: u64, m: u32, i: u32) -> Result<Outcome> {
    Ok(Outcome::ok(to_value(&code_params(q, m, i)?)))
}

pub fn coset_leaders(q: u64, m: u32) -> Result<Outcome> {
    let list: Vec<Value> = leaders(q, m)?
        .into_iter()
        .map(|(s, size)| json!({"leader": s, "size": size}))
        .collect();
    Ok(Outcome::ok(
        json!({"q": q, "m": m, "count": list.len(), "leaders": list}),
    ))
}

/// Generator polynomial of the narrow-sense BCH code with designed
/// distance `delta`, coefficients lowest degree first.
pub fn genpoly(q: u64, m: u32, delta: u64) -> Result<Outcome> {
    let ctx = FieldContext::for_q(q, m)?;
    let code = generator_polynomial(&ctx, delta)?;
    let expected = bch_dimension(q, m, delta)?;
    Ok(Outcome {
        ok: expected == code.dimension,
        payload: json!({
            "q": q,
            "m": m,
            "delta": delta,
            "length": code.length,
            "dimension": code.dimension,
            "degree": code.generator.degree().unwrap_or(0),
            "generator": code.generator,
        }),
    })
}

pub fn enumerator(
    q: u64,
    m: u32,
    i: u32,
    mode: Mode,
    budget: &EnumerationBudget,
) -> Result<Outcome> {
    let p = code_params(q, m, i)?;
    let ctx = FieldContext::for_q(q, m)?;
    let mut out = json!({"params": to_value(&p), "mode": mode});
    let mut ok = true;
    let oracle = if mode.oracle() {
        let e = enumerate_code_weights(&ctx, &p, Route::Trace, budget)?;
        out["oracle"] = enumerator_json(&e);
        Some(e)
    } else {
        None
    };
    if q % 2 == 1 {
        if mode.closed() {
            let e = code_enumerator_odd(&p)?;
            out["closed"] = enumerator_json(&e);
            if let Some(o) = &oracle {
                ok = *o == e;
                out["match"] = json!(ok);
            }
        }
    } else if mode.closed() {
        let w = min_distance_even(&ctx, &p, budget)?;
        ok = w.word_weight == p.delta_i && w.in_generator_code != Some(false);
        if let Some(o) = &oracle {
            let agree = o.min_distance() == Some(w.distance);
            out["match"] = json!(agree);
            ok &= agree;
        }
        out["min_distance"] = json!(w.distance);
        out["witness"] = to_value(&w);
    } else if let Some(o) = &oracle {
        out["min_distance"] = to_value(&o.min_distance());
    }
    Ok(Outcome { payload: out, ok })
}

/// Rank and type of one member of the quadratic family, its polarization,
/// and the weight distribution of its PRM coset.
pub fn classify_form(
    q: u64,
    m: u32,
    i: u32,
    lambdas: &[u32],
    budget: &EnumerationBudget,
) -> Result<Outcome> {
    let ctx = FieldContext::for_q(q, m)?;
    budget.check_field(&ctx)?;
    if let Some(&bad) = lambdas.iter().find(|&&l| l >= ctx.order()) {
        return Err(Error::OutOfRange {
            value: bad as u64,
            limit: ctx.order() as u64 - 1,
        });
    }
    let form = TraceQuadraticForm::new(&ctx, i, lambdas.iter().map(|&l| GfElem(l)).collect())?;
    let rt = classify_quadratic(&ctx, &form)?;
    let gram = crate::forms::polarize(&ctx, &form);
    let f = ctx.base();
    let bilinear = if f.is_even() {
        RankType::new(bilinear_rank(f, &gram), 0)
    } else {
        classify_symmetric(f, &gram)?
    };
    let closed = coset_enumerator(q, m, rt)?;
    let counted = coset_weights(&ctx, &form, budget)?;
    let ok = closed == counted;
    Ok(Outcome {
        ok,
        payload: json!({
            "q": q,
            "m": m,
            "i": i,
            "lambdas": lambdas,
            "rank_type": rt,
            "polarization": bilinear,
            "coset_enumerator": enumerator_json(&closed),
            "match": ok,
        }),
    })
}

pub fn inner_dist(
    kind: FamilyKind,
    q: u64,
    m: u32,
    i: u32,
    mode: Mode,
    budget: &EnumerationBudget,
) -> Result<Outcome> {
    let spec = FamilySpec::new(kind, q, m, i)?;
    let mut out = json!({"family": format!("{kind:?}"), "q": q, "m": m, "i": i, "size": spec.size().to_string()});
    let closed = if mode.closed() {
        if kind.scheme() == SchemeKind::Alt {
            return Err(Error::InvalidArgument(
                "no closed form for alternating families; use --mode census".into(),
            ));
        }
        if q.is_multiple_of(2) {
            return Err(Error::InvalidArgument(
                "no closed form for quadratic families over even q; use --mode census".into(),
            ));
        }
        let d = family_distribution_closed(q, m, i)?.normalized();
        out["closed"] = d.to_json();
        Some(d)
    } else {
        None
    };
    let mut ok = true;
    if mode.oracle() {
        let ctx = FieldContext::for_q(q, m)?;
        budget.check_field(&ctx)?;
        let census = census_inner_distribution(&ctx, &spec, budget.max_codewords)?;
        let independent = rank_type_census(&ctx, &spec, budget)?;
        ok = census.entries == independent.entries;
        out["census"] = census.to_json();
        if let Some(c) = &closed {
            ok &= c.entries == census.entries;
        }
        out["match"] = json!(ok);
    }
    Ok(Outcome { payload: out, ok })
}

pub fn dg_bound(n: u32, d: u32, q: u64) -> Result<Outcome> {
    Ok(Outcome::ok(
        json!({"n": n, "d": d, "q": q, "bound": dg(n, d, q)?.to_string()}),
    ))
}

pub fn design_check(
    q: u64,
    m: u32,
    i: u32,
    t: usize,
    corrupt: bool,
    budget: &EnumerationBudget,
) -> Result<Outcome> {
    let design = design_probe(q, m, i, t, corrupt, budget)?;
    Ok(Outcome {
        ok: design,
        payload: json!({"q": q, "m": m, "i": i, "t": t, "corrupted": corrupt, "design": design}),
    })
}

pub fn appendix_table(
    q: u64,
    m: u32,
    rt: RankType,
    class: ConstantClass,
    mode: Mode,
    budget: &EnumerationBudget,
) -> Result<Outcome> {
    let mut out = json!({"q": q, "m": m, "rank_type": rt, "class": class});
    let stringify = |t: &std::collections::BTreeMap<u64, num_bigint::BigInt>| -> Value {
        t.iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect::<serde_json::Map<_, _>>()
            .into()
    };
    let closed = if mode.closed() {
        let t = appendix_frequency_table(q, m, rt, class)?;
        out["closed"] = stringify(&t);
        Some(t)
    } else {
        None
    };
    let mut ok = true;
    if mode.oracle() {
        let f = crate::gf::BaseField::from_order(q)?;
        let qf = crate::forms::canonical_form(&f, rt, m as usize)?;
        let per_c = appendix_counts(&f, &qf, budget)?;
        let mut counted = std::collections::BTreeMap::new();
        let first = (0..q as u32).find(|&c| class.contains(&f, c));
        for (c, t) in per_c.iter().enumerate() {
            let take = match class {
                ConstantClass::AllNonzero => c != 0,
                _ => Some(c as u32) == first,
            };
            if take {
                for (&k, &v) in t {
                    *counted.entry(k).or_insert(num_bigint::BigInt::from(0)) += v;
                }
            }
        }
        out["oracle"] = stringify(&counted);
        let full = verify::appendix_check(&f, m, rt, budget)?;
        ok = full.is_ok() && closed.as_ref().is_none_or(|c| *c == counted);
        out["match"] = json!(ok);
    }
    Ok(Outcome { payload: out, ok })
}

pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> Outcome {
    let report = verify::run(suite, opts);
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let mut payload = to_value(&report);
    payload["summary"] = json!({"checks": report.checks.len(), "passed": passed, "failed": report.checks.len() - passed});
    Outcome {
        ok: report.passed,
        payload,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_payload() {
        let o = params(3, 3, 1).unwrap();
        assert_eq!(o.payload["delta_i"], 14);
        assert_eq!(o.payload["dimension"], 7);
        assert_eq!(o.payload["bose"], 14);
        assert!(matches!(
            params(2, 6, 4),
            Err(Error::IndexOutOfTheoremRange { .. })
        ));
    }

    #[test]
    fn enumerator_payloads() {
        let b = EnumerationBudget::default();
        let o = enumerator(3, 3, 1, Mode::Both, &b).unwrap();
        assert!(o.ok);
        assert_eq!(
            o.payload["closed"]["polynomial"],
            "1+390Z^14+312Z^15+520Z^17+260Z^18+546Z^20+156Z^21+2Z^26"
        );
        assert_eq!(o.payload["closed"]["counts"]["14"], "390");
        let o = enumerator(2, 6, 2, Mode::Oracle, &b).unwrap();
        assert_eq!(o.payload["min_distance"], 27);
        let o = enumerator(2, 6, 3, Mode::Both, &b).unwrap();
        assert!(o.ok);
        assert_eq!(o.payload["witness"]["word_weight"], 23);
    }

    #[test]
    fn inner_dist_payload() {
        let o = inner_dist(
            FamilyKind::S1,
            3,
            3,
            1,
            Mode::Both,
            &EnumerationBudget::default(),
        )
        .unwrap();
        assert!(o.ok);
        assert_eq!(o.payload["closed"]["entries"]["3,-1"], "13");
    }

    #[test]
    fn appendix_payload() {
        let o = appendix_table(
            2,
            3,
            RankType::new(3, 1),
            ConstantClass::Zero,
            Mode::Both,
            &EnumerationBudget::default(),
        )
        .unwrap();
        assert!(o.ok);
        let total: u64 = o.payload["oracle"]
            .as_object()
            .unwrap()
            .values()
            .map(|v| v.as_str().unwrap().parse::<u64>().unwrap())
            .sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn classify_payload() {
        let o = classify_form(3, 3, 1, &[1], &EnumerationBudget::default()).unwrap();
        assert!(o.ok);
        assert_eq!(o.payload["rank_type"]["rank"], 3);
        assert!(classify_form(3, 3, 1, &[1, 0], &EnumerationBudget::default()).is_err());
    }
}
