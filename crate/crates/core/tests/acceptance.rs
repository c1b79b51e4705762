//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bchforms::api::{self, Mode};
use bchforms::cyclotomic::{code_params, supported, theorem_range};
use bchforms::forms::{all_rank_types, RankType};
use bchforms::oracle::{enumerate_code_weights, rank_type_census, EnumerationBudget, Route};
use bchforms::schemes::{family_distribution_closed, FamilyKind, FamilySpec};
use bchforms::verify::{appendix_check, distance_check, run, Suite, VerifyOptions};
use bchforms::weights::{code_enumerator_odd, min_distance_even};
use bchforms::{BaseField, Error, FieldContext};
use num_bigint::BigInt;
use num_traits::Signed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const EXAMPLE_331: &str = "1+390Z^14+312Z^15+520Z^17+260Z^18+546Z^20+156Z^21+2Z^26";
const EXAMPLE_342: &str =
    "1+3800Z^44+3040Z^45+14400Z^47+9900Z^48+17136Z^50+10080Z^51+33280Z^53+16640Z^54\
+34200Z^56+14400Z^57+10080Z^59+3528Z^60+5040Z^62+1440Z^63+160Z^71+20Z^72+2Z^80";

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        start.elapsed() <= limit,
        format!("took {:.1?}, limit {limit:?}", start.elapsed()),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let lib = api::enumerator(3, 3, 1, Mode::Both, &budget).map_err(fail)?;
    ensure(lib.ok, "closed form and oracle disagree")?;
    for side in ["closed", "oracle"] {
        ensure(
            lib.payload[side]["polynomial"] == EXAMPLE_331,
            format!("{side} enumerator is {}", lib.payload[side]["polynomial"]),
        )?;
    }
    ensure(
        lib.payload["oracle"]["counts"].as_object().is_some(),
        "oracle payload missing",
    )?;
    let out = Command::new(env!("CARGO_BIN_EXE_bchforms"))
        .args([
            "--compact",
            "enumerator",
            "-q",
            "3",
            "-m",
            "3",
            "-i",
            "1",
            "--mode",
            "both",
        ])
        .output()
        .map_err(fail)?;
    ensure(
        out.status.success(),
        format!("CLI exit status {}", out.status),
    )?;
    let cli: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(fail)?;
    ensure(
        serde_json::to_string(&cli["payload"]).map_err(fail)?
            == serde_json::to_string(&lib.payload).map_err(fail)?,
        "CLI payload differs from the library payload",
    )?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "3^7 words, CLI and library agree, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let p = code_params(3, 4, 2).map_err(fail)?;
    let ctx = FieldContext::for_q(3, 4).map_err(fail)?;
    let closed = code_enumerator_odd(&p).map_err(fail)?;
    ensure(
        closed.to_polynomial_string() == EXAMPLE_342,
        format!("closed form is {}", closed.to_polynomial_string()),
    )?;
    ensure(
        closed.counts.len() == 18,
        "expected 17 nonzero weights plus the zero word",
    )?;
    let gen = enumerate_code_weights(&ctx, &p, Route::Generator, &budget).map_err(fail)?;
    ensure(gen == closed, "generator-route oracle differs")?;
    let trace = enumerate_code_weights(&ctx, &p, Route::Trace, &budget).map_err(fail)?;
    ensure(trace == closed, "trace-route oracle differs")?;
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "3^11 words by both routes, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let ctx = FieldContext::for_q(2, 6).map_err(fail)?;
    let mut found = Vec::new();
    for (i, d, k) in [(2u32, 27u64, 10u64), (3, 23, 16)] {
        let p = code_params(2, 6, i).map_err(fail)?;
        ensure(
            p.dimension == k,
            format!("i={i}: dimension {}", p.dimension),
        )?;
        let all = enumerate_code_weights(&ctx, &p, Route::Generator, &budget).map_err(fail)?;
        ensure(
            all.min_distance() == Some(d),
            format!("i={i}: oracle minimum {:?}", all.min_distance()),
        )?;
        let w = min_distance_even(&ctx, &p, &budget).map_err(fail)?;
        ensure(
            w.distance == d,
            format!("i={i}: witness distance {}", w.distance),
        )?;
        let weight = w.word.iter().filter(|&&c| c != 0).count() as u64;
        ensure(
            weight == d && w.word_weight == d,
            format!("i={i}: witness word has weight {weight}"),
        )?;
        ensure(
            w.in_generator_code == Some(true),
            format!("i={i}: witness not divisible by the generator"),
        )?;
        found.push(format!("d={d} k={k}"));
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{}, witnesses verified, {:.2?}",
        found.join(", "),
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget {
        max_codewords: 1 << 24,
        max_field_size: 1 << 20,
    };
    let (mut checked, mut degenerate, mut beyond, mut unsupported) = (0, 0, 0, 0);
    let mut largest = (0u64, 0u32, 0u32);
    for q in [2u64, 3, 4, 5] {
        // Beyond m = 24 every in-range dimension exceeds the ceiling for q >= 2.
        for m in 1u32..=24 {
            if !supported(q, m) {
                unsupported += 1;
                continue;
            }
            let (lo, hi) = theorem_range(m);
            for i in lo..=hi {
                let p = match code_params(q, m, i) {
                    Ok(p) => p,
                    Err(Error::DegenerateCode { .. }) => {
                        degenerate += 1;
                        continue;
                    }
                    Err(e) => return Err(format!("q={q} m={m} i={i}: {e}")),
                };
                if budget.check_codewords(q, p.dimension).is_err() {
                    beyond += 1;
                    continue;
                }
                match distance_check(&p, &budget) {
                    Ok(Ok(())) => {}
                    Ok(Err(d)) => return Err(format!("q={q} m={m} i={i}: {d}")),
                    Err(e) => return Err(format!("q={q} m={m} i={i}: {e}")),
                }
                checked += 1;
                if p.dimension as f64 * (q as f64).ln() > largest_size(largest) {
                    largest = (q, m, i);
                }
            }
        }
    }
    ensure(checked >= 30, format!("only {checked} triples in range"))?;
    Ok(format!(
        "{checked} triples match, largest (q,m,i)={largest:?}, {degenerate} degenerate and {unsupported} unsupported (q,m) skipped, {beyond} beyond 2^24, {:.1?}",
        start.elapsed()
    ))
}

fn largest_size((q, m, i): (u64, u32, u32)) -> f64 {
    if q == 0 {
        return -1.0;
    }
    code_params(q, m, i)
        .map(|p| p.dimension as f64 * (q as f64).ln())
        .unwrap_or(-1.0)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let mut sizes = Vec::new();
    for (kind, q, m, i) in [
        (FamilyKind::S1, 3u64, 3u32, 1u32),
        (FamilyKind::S2, 3, 4, 2),
    ] {
        let ctx = FieldContext::for_q(q, m).map_err(fail)?;
        let spec = FamilySpec::new(kind, q, m, i).map_err(fail)?;
        let census = rank_type_census(&ctx, &spec, &budget).map_err(fail)?;
        let closed = family_distribution_closed(q, m, i)
            .map_err(fail)?
            .normalized();
        ensure(
            closed.entries == census.entries,
            format!(
                "{kind:?}({q},{m},{i}): closed {:?} vs census {:?}",
                closed.entries, census.entries
            ),
        )?;
        sizes.push(format!("{kind:?}({q},{m},{i}) {} forms", census.total()));
        if kind == FamilyKind::S1 {
            let want = [((0, 1), 1), ((3, 1), 13), ((3, -1), 13)];
            for ((r, t), n) in want {
                ensure(
                    census.get(RankType::new(r, t)) == BigInt::from(n),
                    "S1(3,3,1) census is not {1, 13, 13}",
                )?;
            }
        }
    }
    ensure(
        sizes[1].ends_with("729 forms"),
        format!("S2(3,4,2) size: {}", sizes[1]),
    )?;
    Ok(format!(
        "{}, closed forms as printed, {:.2?}",
        sizes.join(", "),
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let mut forms = 0;
    for q in [2u64, 3, 4, 5] {
        let f = BaseField::from_order(q).map_err(fail)?;
        for m in 1..=4u32 {
            for rt in all_rank_types(q % 2 == 0, m)
                .into_iter()
                .filter(|rt| rt.rank >= 1)
            {
                match appendix_check(&f, m, rt, &budget) {
                    Ok(Ok(())) => forms += 1,
                    Ok(Err(d)) => return Err(format!("q={q} m={m} {rt:?}: {d}")),
                    Err(e) => return Err(format!("q={q} m={m} {rt:?}: {e}")),
                }
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{forms} canonical forms, every constant class, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let mut total = 0;
    let mut run_suite = |suite: Suite,
                         opts: VerifyOptions,
                         label: &str,
                         filter: &dyn Fn(&str) -> bool|
     -> Result<(), String> {
        let rep = run(suite, &opts);
        let relevant: Vec<_> = rep.checks.iter().filter(|c| filter(&c.name)).collect();
        ensure(!relevant.is_empty(), format!("{label}: no checks ran"))?;
        if let Some(c) = relevant.iter().find(|c| !c.passed) {
            return Err(format!("{label}: {} {}", c.name, c.detail));
        }
        total += relevant.len();
        Ok(())
    };
    let base = VerifyOptions {
        budget,
        ..Default::default()
    };
    run_suite(Suite::Params, base.clone(), "leader sets", &|_| true)?;
    let both_parities = |n: &str| n.starts_with("quadratic-");
    run_suite(
        Suite::Schemes,
        VerifyOptions {
            max_m: Some(4),
            ..base.clone()
        },
        "correspondences",
        &both_parities,
    )?;
    run_suite(Suite::Schemes, base.clone(), "alternating bound", &|n| {
        n.starts_with("alternating-bound")
    })?;
    run_suite(Suite::Schemes, base.clone(), "design", &|n| {
        n.starts_with("design")
    })?;
    for q in [3u64, 5, 7, 9] {
        run_suite(
            Suite::Appendix,
            VerifyOptions {
                q: Some(q),
                max_m: Some(0),
                ..base.clone()
            },
            "intersections",
            &|n| n.starts_with("intersections"),
        )?;
    }
    let rep = run(Suite::Schemes, &base);
    let parity_checks: Vec<_> = rep
        .checks
        .iter()
        .filter(|c| c.name.starts_with("quadratic-"))
        .map(|c| c.name.as_str())
        .collect();
    ensure(
        parity_checks.iter().any(|n| n.contains("equals")),
        "no odd-q correspondence checked",
    )?;
    ensure(
        parity_checks.iter().any(|n| n.contains("refines")),
        "no even-q correspondence checked",
    )?;
    ensure(
        rep.checks
            .iter()
            .any(|c| c.name.starts_with("design-negative-control") && c.passed),
        "negative control did not fail the design check",
    )?;
    Ok(format!(
        "{total} checks including the negative control, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut done = Vec::new();
    for (q, m) in [
        (5u64, 9u32),
        (5, 12),
        (3, 11),
        (3, 16),
        (7, 7),
        (11, 6),
        (9, 8),
    ] {
        let (lo, hi) = theorem_range(m);
        for i in lo..=hi {
            let p = code_params(q, m, i).map_err(|e| format!("q={q} m={m} i={i}: {e}"))?;
            let e = code_enumerator_odd(&p).map_err(|e| format!("q={q} m={m} i={i}: {e}"))?;
            ensure(
                e.total() == BigInt::from(q).pow(p.dimension as u32),
                format!("q={q} m={m} i={i}: total"),
            )?;
            ensure(
                e.counts.values().all(|c| c.is_positive()),
                format!("q={q} m={m} i={i}: nonpositive count"),
            )?;
            ensure(
                e.get(0) == BigInt::from(1),
                format!("q={q} m={m} i={i}: zero word"),
            )?;
            ensure(
                e.min_distance() == Some(p.delta_i),
                format!("q={q} m={m} i={i}: minimum key {:?}", e.min_distance()),
            )?;
            ensure(
                e.counts.keys().all(|&w| w <= p.length),
                format!("q={q} m={m} i={i}: weight beyond length"),
            )?;
            done.push((q, m, i));
        }
    }
    let big = code_params(5, 12, theorem_range(12).1).map_err(fail)?;
    Ok(format!(
        "{} closed-form enumerators beyond enumeration (up to 5^{} words) are integral, sum to q^k, start at the designed distance, {:.2?}",
        done.len(),
        big.dimension,
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("example q=3 m=3 i=1 enumerator", criterion_1),
        ("example q=3 m=4 i=2 enumerator", criterion_2),
        ("example q=2 m=6 minimum distances", criterion_3),
        (
            "minimum-distance sweep q in {2,3,4,5}, q^k <= 2^24",
            criterion_4,
        ),
        (
            "symmetric-family inner distributions vs census",
            criterion_5,
        ),
        (
            "zero-count frequency tables vs exhaustive counts",
            criterion_6,
        ),
        ("property suites", criterion_7),
        ("full-scale closed-form consistency", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
