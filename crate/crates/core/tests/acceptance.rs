//! One line per acceptance criterion, each at its stated tolerance and time
//! budget. The test fails on any failure not listed in `KNOWN_FAILURES`.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turanlab::closedform::{crosscheck_suite, lambda_index_law_gap, standard_forms};
use turanlab::conditions::{
    default_u_grid, foxwright_conditions, random_admissible, v_logconvex_numeric, FoxWrightParams, NEC1,
    PU_POSITIVE,
};
use turanlab::exact::{int, rat, Rational};
use turanlab::families::{FamilySpec, SequenceSpec};
use turanlab::harness::{
    pointwise_turanian, reproduce_printed_points, scan, sign_change_audit, theorem_suite, ScanReport, Theorem,
};
use turanlab::identities::{lemma_t_sample, run_all, verify_remark_r3, LEMMA_T_GRID};
use turanlab::series::{turanian, Verdict};

/// Criteria that fail for reasons outside this code. They still print FAIL.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    11,
    "the weighted (bck37) sufficient condition does not imply P(0+) >= 0; with a=1, A=2, b=(1/2,1/2), \
     B=(1,1), theta=4 it holds while V(n) ~ n!/Gamma(n+1/2) is log-concave",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: usize, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(b) = budget {
        if took > b {
            o.pass = false;
            o.detail = format!("{}; over the {:?} budget", o.detail, b);
        }
    }
    println!(
        "criterion {id:>2} {:<4} {name}: {} ({:.2?})",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        took
    );
    o.pass
}

fn suite_outcome(reports: &[ScanReport], expect_specs: usize) -> Outcome {
    let runs: usize = reports.iter().map(|r| r.runs).sum();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let skipped: usize = reports.iter().map(|r| r.skipped.len()).sum();
    let indeterminate: usize = reports.iter().map(|r| r.indeterminate).sum();
    outcome(
        reports.len() == expect_specs && violations == 0 && skipped == 0 && indeterminate == 0 && runs > 0,
        format!("{} sequences, {runs} points, {violations} violations, {skipped} skipped", reports.len()),
    )
}

fn run_suite(theorem: Theorem) -> Vec<ScanReport> {
    theorem_suite(theorem, 30)
        .iter()
        .map(|spec| scan(spec).expect("suite spec is valid"))
        .collect()
}

fn c1() -> Outcome {
    let pts = reproduce_printed_points().expect("printed points");
    let ok = pts.len() == 2 && pts.iter().all(|p| p.within_tolerance);
    let vals: Vec<String> = pts.iter().map(|p| format!("{:.7} vs {}", p.computed, p.printed)).collect();
    outcome(ok, vals.join(", "))
}

fn c2() -> Outcome {
    let cases = verify_remark_r3();
    let symbolic = ["r3-delta1", "r3-delta2"]
        .iter()
        .all(|id| cases.iter().any(|c| c.id == *id && c.status.is_verified()));
    // Independent route: exact rational Turánian against the formula.
    let one = SequenceSpec::Constant { c: int(1) };
    let points = [(rat(7, 3), rat(1, 2), rat(5, 4)), (int(1), int(1), int(1)), (rat(1, 5), int(3), rat(2, 7))];
    let numeric = points.iter().all(|(mu, a, b)| {
        let rep = turanian::<Rational>(&FamilySpec::G { r: 3 }, &one, mu, a, b, 2).unwrap();
        let expected = -(a * b) * (a + b + mu * int(2) + int(2)) / int(2);
        rep.delta.coeff(1) == &expected
    });
    outcome(symbolic && numeric, format!("symbolic {symbolic}, rational points {numeric}"))
}

fn c3() -> Outcome {
    let grid = [rat(1, 3), int(1), rat(5, 2), int(4)];
    let cases: Vec<(FamilySpec, SequenceSpec)> = vec![
        (FamilySpec::KS, SequenceSpec::Constant { c: int(1) }),
        (FamilySpec::KS, SequenceSpec::Constant { c: rat(3, 2) }),
        (FamilySpec::H, SequenceSpec::Constant { c: int(1) }),
    ];
    let mut runs = 0;
    let mut nonzero = 0;
    for (f, s) in &cases {
        for mu in &grid {
            for a in &grid {
                for b in &grid {
                    let rep = turanian::<Rational>(f, s, mu, a, b, 40).unwrap();
                    runs += 1;
                    if rep.verdict != Verdict::AllZero {
                        nonzero += 1;
                    }
                }
            }
        }
    }
    outcome(nonzero == 0, format!("{runs} runs to order 40, {nonzero} with a nonzero coefficient"))
}

fn c6() -> Outcome {
    let reports = run_suite(Theorem::DiscreteLogConcave);
    let exact = suite_outcome(&reports, 3 * Theorem::DiscreteLogConcave.sequences().len());
    let xs: Vec<f64> = (1..=20).map(|i| 0.2 * i as f64 / 20.0).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for seq in Theorem::DiscreteLogConcave.sequences() {
        for a in 1..=4 {
            for b in 1..=4 {
                let vals = pointwise_turanian(&FamilySpec::H, &seq, &int(1), &int(a), &int(b), &xs, 200)
                    .expect("points inside convergence");
                for v in vals {
                    checked += 1;
                    if !v.nonnegative() {
                        failures.push(format!("{seq:?} a={a} b={b} x={}", v.x));
                    }
                }
            }
        }
    }
    outcome(
        exact.pass && failures.is_empty(),
        format!("{}; {checked} pointwise values, {} negative", exact.detail, failures.len()),
    )
}

fn c7() -> Outcome {
    let reports = run_suite(Theorem::NegativeCoefficients);
    let base = suite_outcome(&reports, Theorem::NegativeCoefficients.sequences().len());
    let leading_zero = reports
        .iter()
        .flat_map(|r| &r.points)
        .all(|p| p.signs.starts_with("00") && !p.signs[2..].contains(['0', '+', '?']));
    outcome(base.pass && leading_zero, format!("{}; delta_0 = delta_1 = 0 everywhere: {leading_zero}", base.detail))
}

fn c8() -> Outcome {
    let ledger = run_all();
    let failed = ledger.failed();
    let total = ledger.to_json()["cases"].as_array().map_or(0, |c| c.len());
    outcome(
        ledger.all_verified() && total > 0,
        format!("{total} cases, {} failed {:?}", failed.len(), failed.iter().map(|c| &c.id).collect::<Vec<_>>()),
    )
}

fn c9() -> Outcome {
    let (mu, alpha, beta) = (rat(3, 2), rat(1, 2), int(2));
    let forms = standard_forms(&mu, &alpha, &beta).len();
    let results = crosscheck_suite(&mu, &alpha, &beta, 25, 120).expect("suite runs");
    let failed = results.iter().filter(|r| !r.passed()).count();
    let grid = [rat(1, 2), int(1), rat(3, 2), int(2), int(3)];
    let xs = [0.02, 0.05, 0.1, 0.15, 0.2];
    let gap = lambda_index_law_gap(&grid, &grid, &xs).expect("lambda inside convergence");
    outcome(
        failed == 0 && results.len() >= 25 * forms && gap <= 1e-12,
        format!("{forms} forms, {} points, {failed} failed; index-law gap {gap:.2e} on 125 points", results.len()),
    )
}

fn c10() -> Outcome {
    let one = SequenceSpec::Constant { c: int(1) };
    let points = [
        (int(1), int(1), int(1)),
        (rat(1, 2), rat(1, 2), rat(1, 2)),
        (int(2), int(1), int(3)),
        (rat(3, 2), rat(5, 2), int(1)),
        (rat(1, 3), int(2), rat(1, 4)),
        (int(5), rat(1, 2), int(2)),
        (rat(7, 4), rat(3, 2), rat(3, 2)),
        (int(3), int(4), rat(2, 3)),
        (rat(1, 10), rat(1, 5), int(5)),
    ];
    let bad: Vec<String> = points
        .iter()
        .filter(|(mu, a, b)| {
            let rep = sign_change_audit(&FamilySpec::G { r: 2 }, &one, a, b, mu, 20).unwrap();
            !rep.single_change_from(2)
        })
        .map(|(mu, a, b)| format!("({mu}, {a}, {b})"))
        .collect();
    outcome(bad.is_empty(), format!("{} points, m in 2..=20, failing {bad:?}", points.len()))
}

fn c11() -> Outcome {
    let worked = FoxWrightParams {
        a: vec![int(1)],
        big_a: vec![int(1)],
        b: vec![int(2)],
        big_b: vec![int(1)],
        theta: int(1),
    };
    let rep = foxwright_conditions(&worked, &default_u_grid(), 60).unwrap();
    let worked_ok = rep.check(NEC1).holds() && rep.check(PU_POSITIVE).holds();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sufficient = 0;
    let mut broken = Vec::new();
    for i in 0..20 {
        let p = random_admissible(&mut rng, i);
        let r = foxwright_conditions(&p, &default_u_grid(), 60).unwrap();
        if r.sufficient_condition_holds() && !v_logconvex_numeric(&p, 60).unwrap().holds() {
            let which: Vec<&str> = r.checks.iter().filter(|(_, c)| c.holds()).map(|(k, _)| k.as_str()).collect();
            broken.push(format!("#{i} via {which:?}"));
        }
        sufficient += usize::from(r.sufficient_condition_holds());
    }
    outcome(
        worked_ok && broken.is_empty(),
        format!(
            "worked example nec1 and P(u) > 0: {worked_ok}; 20 instances, {sufficient} sufficient, inconsistent {broken:?}"
        ),
    )
}

fn c12() -> Outcome {
    let grid: Vec<Rational> = LEMMA_T_GRID.iter().map(|&(p, q)| rat(p, q)).collect();
    let s = lemma_t_sample(&grid, 16);
    outcome(
        s.violations.is_empty() && s.points == 512,
        format!("{} points, {} checks, {} premises, {} violations", s.points, s.checks, s.premises, s.violations.len()),
    )
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "printed x^2 values", Some(secs(1)), c1),
        run(2, "delta_1 and delta_2 of psi_3", None, c2),
        run(3, "log-neutral families vanish", Some(secs(10)), c3),
        run(4, "log-convex sequences give delta <= 0", None, || {
            suite_outcome(&run_suite(Theorem::SecondHypLogConvex), 5)
        }),
        run(5, "log-concave sequences give delta >= 0", None, || {
            suite_outcome(&run_suite(Theorem::SecondHypLogConcave), 5)
        }),
        run(6, "H family with log-concave sequences", None, c6),
        run(7, "Y family strictly negative from m = 2", None, c7),
        run(8, "identity ledger", Some(secs(30)), c8),
        run(9, "closed-form cross-checks", None, c9),
        run(10, "G2 Gauss rows change sign once", None, c10),
        run(11, "Fox-Wright conditions", None, c11),
        run(12, "sampled one-sign-change implication", None, c12),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, p)| !**p).map(|(i, _)| i + 1).collect();
    for (id, why) in KNOWN_FAILURES {
        if failed.contains(id) {
            println!("criterion {id:>2} known failure: {why}");
        }
    }
    let unexplained: Vec<usize> = failed.into_iter().filter(|id| KNOWN_FAILURES.iter().all(|(k, _)| k != id)).collect();
    assert!(unexplained.is_empty(), "failed criteria: {unexplained:?}");
}
