//! Every closed-form table checked against exhaustive counts.

use std::collections::BTreeMap;

use bchforms::cyclotomic::{code_params, theorem_range};
use bchforms::forms::{all_rank_types, canonical_form};
use bchforms::oracle::{
    appendix_counts, enumerate_code_weights, quad_form_coset_weights, EnumerationBudget, Route,
};
use bchforms::weights::{
    appendix_frequency_table, code_enumerator_odd, coset_enumerator, min_distance_even,
    ConstantClass,
};
use bchforms::{BaseField, Error, FieldContext};
use num_bigint::BigInt;

const SMALL_FIELDS: [(u64, u32); 17] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (4, 3),
    (5, 2),
    (5, 3),
    (7, 2),
    (8, 2),
    (9, 2),
];

#[test]
fn coset_tables_match_enumeration() {
    let budget = EnumerationBudget::default();
    let mut checked = 0;
    for (q, m) in SMALL_FIELDS {
        let f = BaseField::from_order(q).unwrap();
        for rt in all_rank_types(q % 2 == 0, m) {
            let qf = canonical_form(&f, rt, m as usize).unwrap();
            let brute = quad_form_coset_weights(&f, &qf, &budget).unwrap();
            let closed = coset_enumerator(q, m, rt).unwrap();
            assert_eq!(closed, brute, "q={q} m={m} {rt:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 78);
}

fn to_big(t: &BTreeMap<u64, u64>) -> BTreeMap<u64, BigInt> {
    t.iter().map(|(&k, &v)| (k, BigInt::from(v))).collect()
}

#[test]
fn frequency_tables_match_enumeration() {
    let budget = EnumerationBudget::default();
    for (q, m) in SMALL_FIELDS {
        let f = BaseField::from_order(q).unwrap();
        for rt in all_rank_types(q % 2 == 0, m)
            .into_iter()
            .filter(|rt| rt.rank > 0)
        {
            let qf = canonical_form(&f, rt, m as usize).unwrap();
            let per_c = appendix_counts(&f, &qf, &budget).unwrap();
            let classes: &[ConstantClass] = if q % 2 == 1 && rt.rank % 2 == 1 {
                &[
                    ConstantClass::Zero,
                    ConstantClass::Square,
                    ConstantClass::NonSquare,
                    ConstantClass::AllNonzero,
                ]
            } else if q % 2 == 1 {
                &[
                    ConstantClass::Zero,
                    ConstantClass::Square,
                    ConstantClass::NonSquare,
                    ConstantClass::Nonzero,
                    ConstantClass::AllNonzero,
                ]
            } else {
                &[
                    ConstantClass::Zero,
                    ConstantClass::Nonzero,
                    ConstantClass::AllNonzero,
                ]
            };
            for &class in classes {
                let closed = appendix_frequency_table(q, m, rt, class).unwrap();
                if class == ConstantClass::AllNonzero {
                    let mut sum = BTreeMap::new();
                    for t in &per_c[1..] {
                        for (&k, &v) in t {
                            *sum.entry(k).or_insert(0u64) += v;
                        }
                    }
                    assert_eq!(closed, to_big(&sum), "q={q} m={m} {rt:?} {class:?}");
                } else {
                    for (c, t) in per_c.iter().enumerate() {
                        if class.contains(&f, c as u32) {
                            assert_eq!(closed, to_big(t), "q={q} m={m} {rt:?} {class:?} c={c}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn class_requirements_are_enforced() {
    let odd = bchforms::forms::RankType::new(3, 1);
    assert!(matches!(
        appendix_frequency_table(3, 3, odd, ConstantClass::Nonzero),
        Err(Error::InvalidArgument(_))
    ));
    let even = bchforms::forms::RankType::new(2, 0);
    assert!(appendix_frequency_table(2, 3, even, ConstantClass::Square).is_err());
}

#[test]
fn odd_code_enumerators_match_both_routes() {
    let budget = EnumerationBudget::default();
    for (q, m) in [
        (3u64, 2u32),
        (3, 3),
        (3, 4),
        (3, 5),
        (5, 2),
        (5, 3),
        (7, 2),
        (9, 2),
        (11, 2),
    ] {
        let ctx = FieldContext::for_q(q, m).unwrap();
        let (lo, hi) = theorem_range(m);
        for i in lo..=hi {
            let Ok(p) = code_params(q, m, i) else {
                continue;
            };
            if budget.check_codewords(q, p.dimension).is_err() {
                continue;
            }
            let closed = code_enumerator_odd(&p).unwrap();
            let trace = enumerate_code_weights(&ctx, &p, Route::Trace, &budget).unwrap();
            assert_eq!(closed, trace, "trace route q={q} m={m} i={i}");
            if p.dimension <= 14 {
                let gen = enumerate_code_weights(&ctx, &p, Route::Generator, &budget).unwrap();
                assert_eq!(closed, gen, "generator route q={q} m={m} i={i}");
            }
            assert_eq!(closed.min_distance(), Some(p.delta_i), "q={q} m={m} i={i}");
        }
    }
}

#[test]
fn even_witnesses_reach_the_designed_distance() {
    let budget = EnumerationBudget::default();
    for (m, i, d, k) in [(5u32, 2u32, 11u64, 11u64), (6, 2, 27, 10), (6, 3, 23, 16)] {
        let ctx = FieldContext::for_q(2, m).unwrap();
        let p = code_params(2, m, i).unwrap();
        assert_eq!((p.delta_i, p.dimension), (d, k));
        let w = min_distance_even(&ctx, &p, &budget).unwrap();
        assert_eq!(w.distance, d);
        assert_eq!(w.word_weight, d);
        assert_eq!(w.in_generator_code, Some(true));
        let all = enumerate_code_weights(&ctx, &p, Route::Generator, &budget).unwrap();
        assert_eq!(all.min_distance(), Some(d), "m={m} i={i}");
    }
    let ctx = FieldContext::for_q(4, 3).unwrap();
    let p = code_params(4, 3, 1).unwrap();
    let w = min_distance_even(&ctx, &p, &budget).unwrap();
    let all = enumerate_code_weights(&ctx, &p, Route::Trace, &budget).unwrap();
    assert_eq!(all.min_distance(), Some(w.distance));
}
