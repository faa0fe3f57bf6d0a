//! Grid scans over (μ, α, β), theorem evidence suites, conjecture fuzzing,
//! counterexample reproduction and sign-change audits.
//!
//! Every report orders its entries by grid index or trial index, so a run is
//! reproducible byte for byte even though points are evaluated in parallel.

mod audit;
mod fuzz;
mod suites;

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational::{fmt_short, serde_pq};
use crate::exact::{Rational, Ring};
use crate::families::{FamilyError, FamilySpec, SequenceSpec};
use crate::series::{turanian, SeriesError, Verdict};

pub use audit::{
    pointwise_turanian, reproduce_counterexamples, reproduce_printed_points, sign_change_audit,
    AuditReport, AuditRow, CounterexampleReport, Outcome, PointwiseValue, PrintedPoint,
    SearchResult, SignWitness,
};
pub use fuzz::{
    conjecture_check, fuzz_conjecture, random_sequence, ConjectureId, FuzzReport, Shape, Trial,
};
pub use suites::{theorem_suite, Theorem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("invalid scan: {0}")]
    Invalid(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Sign every δ_m is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    NonNegative,
    NonPositive,
    Zero,
    /// Record what is observed without judging it.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub family: FamilySpec,
    pub seq: SequenceSpec,
    #[serde(with = "serde_pq::vec")]
    pub mu_grid: Vec<Rational>,
    #[serde(with = "serde_pq::vec")]
    pub alpha_grid: Vec<Rational>,
    #[serde(with = "serde_pq::vec")]
    pub beta_grid: Vec<Rational>,
    pub order: usize,
    pub expected: Expected,
    /// From this m on the expected sign is strict (δ_m = 0 counts as a
    /// violation). `None` keeps every order non-strict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_from: Option<usize>,
}

impl ScanSpec {
    pub fn new(
        family: FamilySpec,
        seq: SequenceSpec,
        grid: &[Rational],
        order: usize,
        expected: Expected,
    ) -> Self {
        ScanSpec {
            family,
            seq,
            mu_grid: grid.to_vec(),
            alpha_grid: grid.to_vec(),
            beta_grid: grid.to_vec(),
            order,
            expected,
            strict_from: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        for (name, g) in [
            ("mu_grid", &self.mu_grid),
            ("alpha_grid", &self.alpha_grid),
            ("beta_grid", &self.beta_grid),
        ] {
            if g.is_empty() {
                return Err(HarnessError::Invalid(format!("{name} is empty")));
            }
        }
        if self.order < 2 {
            return Err(HarnessError::Invalid(format!(
                "order must be at least 2, got {}",
                self.order
            )));
        }
        self.family
            .validate()
            .and_then(|_| self.seq.validate())
            .map_err(|e| HarnessError::Series(e.into()))
    }

    /// Grid points in their deterministic order: μ outermost, β innermost.
    pub fn points(&self) -> Vec<(Rational, Rational, Rational)> {
        let mut out = Vec::new();
        for mu in &self.mu_grid {
            for a in &self.alpha_grid {
                for b in &self.beta_grid {
                    out.push((mu.clone(), a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Whether δ_m with sign `s` breaks the expectation; undecidable signs
    /// never count.
    fn violates(&self, m: usize, s: Option<Ordering>) -> bool {
        let Some(s) = s else { return false };
        let strict = self.strict_from.is_some_and(|from| m >= from);
        match self.expected {
            Expected::NonNegative => s == Ordering::Less || (strict && s == Ordering::Equal),
            Expected::NonPositive => s == Ordering::Greater || (strict && s == Ordering::Equal),
            Expected::Zero => s != Ordering::Equal,
            Expected::Unknown => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// δ_0..δ_N at one point, exact when the family allows it.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub mode: Mode,
    pub delta: Vec<String>,
    #[serde(skip)]
    pub signs: Vec<Option<Ordering>>,
    pub verdict: Verdict,
}

impl Evaluation {
    /// Signs as a compact string: `-`, `0`, `+`, or `?` when undecidable.
    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|s| match s {
                Some(Ordering::Less) => '-',
                Some(Ordering::Equal) => '0',
                Some(Ordering::Greater) => '+',
                None => '?',
            })
            .collect()
    }
}

/// Exact rational evaluation, falling back to floating mode only when the
/// family or sequence has no exact coefficients at this point.
pub fn evaluate(
    family: &FamilySpec,
    seq: &SequenceSpec,
    mu: &Rational,
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<Evaluation, SeriesError> {
    match turanian::<Rational>(family, seq, mu, alpha, beta, order) {
        Ok(rep) => Ok(Evaluation {
            mode: Mode::Exact,
            delta: rep.delta.coeffs().iter().map(fmt_short).collect(),
            signs: rep.signs,
            verdict: rep.verdict,
        }),
        Err(SeriesError::Family(FamilyError::Unsupported(_))) => {
            let f = |r: &Rational| <f64 as Ring>::from_rational(r);
            let rep = turanian::<f64>(family, seq, &f(mu), &f(alpha), &f(beta), order)?;
            Ok(Evaluation {
                mode: Mode::Float,
                delta: rep
                    .delta
                    .coeffs()
                    .iter()
                    .map(|x| format!("{x:e}"))
                    .collect(),
                signs: rep.signs,
                verdict: rep.verdict,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub mu: String,
    pub alpha: String,
    pub beta: String,
    pub m: usize,
    pub delta: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointResult {
    pub index: usize,
    pub mu: String,
    pub alpha: String,
    pub beta: String,
    pub mode: Mode,
    pub signs: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedPoint {
    pub index: usize,
    pub mu: String,
    pub alpha: String,
    pub beta: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub sequence: String,
    pub expected: Expected,
    pub strict_from: Option<usize>,
    pub order: usize,
    /// Grid points evaluated (skipped points excluded).
    pub runs: usize,
    pub violations: Vec<Violation>,
    /// Fraction of evaluated points without a violation.
    pub conformance: f64,
    pub first_counterexample: Option<Violation>,
    /// Points with at least one undecidable floating δ_m.
    pub indeterminate: usize,
    pub skipped: Vec<SkippedPoint>,
    pub points: Vec<PointResult>,
}

impl ScanReport {
    pub fn conformant(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scan reports serialize")
    }

    /// One line per grid point plus a totals line.
    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} / {}  N = {}  expected {:?}",
            self.family, self.sequence, self.order, self.expected
        );
        let _ = writeln!(s, "| # | mu | alpha | beta | mode | verdict | signs |");
        let _ = writeln!(s, "|---|----|-------|------|------|---------|-------|");
        for p in &self.points {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {:?} | {:?} | {} |",
                p.index, p.mu, p.alpha, p.beta, p.mode, p.verdict, p.signs
            );
        }
        let _ = writeln!(
            s,
            "runs {}  violations {}  skipped {}  indeterminate {}  conformance {:.4}",
            self.runs,
            self.violations.len(),
            self.skipped.len(),
            self.indeterminate,
            self.conformance
        );
        s
    }
}

pub fn scan(spec: &ScanSpec) -> Result<ScanReport, HarnessError> {
    spec.validate()?;
    let points = spec.points();
    let evaluated: Vec<_> = points
        .par_iter()
        .map(|(mu, a, b)| evaluate(&spec.family, &spec.seq, mu, a, b, spec.order))
        .collect();

    let mut report = ScanReport {
        family: spec.family.to_string(),
        sequence: spec.seq.label(),
        expected: spec.expected,
        strict_from: spec.strict_from,
        order: spec.order,
        runs: 0,
        violations: Vec::new(),
        conformance: 1.0,
        first_counterexample: None,
        indeterminate: 0,
        skipped: Vec::new(),
        points: Vec::new(),
    };
    let mut bad_points = 0usize;
    for (index, ((mu, a, b), ev)) in points.iter().zip(evaluated).enumerate() {
        let (mu_s, a_s, b_s) = (fmt_short(mu), fmt_short(a), fmt_short(b));
        let ev = match ev {
            Ok(ev) => ev,
            Err(e) => {
                log::warn!("skipping mu={mu_s} alpha={a_s} beta={b_s}: {e}");
                report.skipped.push(SkippedPoint {
                    index,
                    mu: mu_s,
                    alpha: a_s,
                    beta: b_s,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        report.runs += 1;
        if ev.signs.iter().any(Option::is_none) {
            report.indeterminate += 1;
        }
        let before = report.violations.len();
        for (m, s) in ev.signs.iter().enumerate() {
            if spec.violates(m, *s) {
                report.violations.push(Violation {
                    mu: mu_s.clone(),
                    alpha: a_s.clone(),
                    beta: b_s.clone(),
                    m,
                    delta: ev.delta[m].clone(),
                });
            }
        }
        if report.violations.len() > before {
            bad_points += 1;
        }
        report.points.push(PointResult {
            index,
            mu: mu_s,
            alpha: a_s,
            beta: b_s,
            mode: ev.mode,
            signs: ev.sign_string(),
            verdict: ev.verdict,
        });
    }
    if report.runs > 0 {
        report.conformance = (report.runs - bad_points) as f64 / report.runs as f64;
    }
    report.first_counterexample = report.violations.first().cloned();
    Ok(report)
}

/// Re-evaluate a reported violation on its own; true when δ_m still has the
/// offending sign.
pub fn reverify(spec: &ScanSpec, v: &Violation) -> Result<bool, HarnessError> {
    let parse =
        |s: &str| crate::exact::parse_rational(s).map_err(|e| HarnessError::Invalid(e.to_string()));
    let (mu, a, b) = (parse(&v.mu)?, parse(&v.alpha)?, parse(&v.beta)?);
    let order = spec.order.max(v.m).max(2);
    let ev = evaluate(&spec.family, &spec.seq, &mu, &a, &b, order)?;
    Ok(spec.violates(v.m, ev.signs[v.m]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn grid() -> Vec<Rational> {
        vec![rat(1, 2), int(1), int(2), rat(7, 2)]
    }

    #[test]
    fn y_family_has_negative_coefficients() {
        let mut spec = ScanSpec::new(
            FamilySpec::Y,
            SequenceSpec::constant_one(),
            &grid(),
            25,
            Expected::NonPositive,
        );
        spec.strict_from = Some(2);
        let rep = scan(&spec).unwrap();
        assert_eq!(rep.runs, 64);
        assert!(rep.conformant(), "{:?}", rep.first_counterexample);
        assert_eq!(rep.conformance, 1.0);
        assert!(rep.points.iter().all(|p| p.signs.starts_with("00")));
    }

    #[test]
    fn ks_is_log_neutral() {
        let spec = ScanSpec::new(
            FamilySpec::KS,
            SequenceSpec::constant_one(),
            &grid(),
            12,
            Expected::Zero,
        );
        let rep = scan(&spec).unwrap();
        assert!(rep.conformant());
        assert!(rep.points.iter().all(|p| p.verdict == Verdict::AllZero));
    }

    #[test]
    fn unknown_records_without_judgment() {
        let spec = ScanSpec::new(
            FamilySpec::G { r: 2 },
            SequenceSpec::FactorialReciprocal,
            &[rat(1, 2), int(2)],
            10,
            Expected::Unknown,
        );
        let rep = scan(&spec).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.points.len(), 8);
        assert!(rep.points.iter().all(|p| p.signs.len() == 11));
    }

    #[test]
    fn violations_reverify() {
        // Claim the opposite polarity so every nonzero δ_m is reported.
        let spec = ScanSpec::new(
            FamilySpec::G { r: 2 },
            SequenceSpec::constant_one(),
            &[int(1), int(2)],
            8,
            Expected::NonNegative,
        );
        let rep = scan(&spec).unwrap();
        assert!(!rep.violations.is_empty());
        assert!(rep.conformance < 1.0);
        for v in &rep.violations {
            assert!(reverify(&spec, v).unwrap());
        }
    }

    #[test]
    fn poles_are_skipped() {
        let spec = ScanSpec {
            mu_grid: vec![int(-1), int(1)],
            ..ScanSpec::new(
                FamilySpec::PochReciprocal { r: 1 },
                SequenceSpec::constant_one(),
                &[int(1)],
                4,
                Expected::Unknown,
            )
        };
        let rep = scan(&spec).unwrap();
        assert_eq!(rep.skipped.len(), 1);
        assert_eq!(rep.runs, 1);
    }

    #[test]
    fn irrational_gamma_ratio_uses_float_mode() {
        let spec = ScanSpec::new(
            FamilySpec::YGamma,
            SequenceSpec::constant_one(),
            &[rat(1, 2), int(1)],
            8,
            Expected::Unknown,
        );
        let rep = scan(&spec).unwrap();
        assert!(rep.points.iter().any(|p| p.mode == Mode::Float));
        assert!(rep.points.iter().any(|p| p.mode == Mode::Exact));
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = ScanSpec::new(
            FamilySpec::H,
            SequenceSpec::FactorialReciprocal,
            &[rat(1, 3), int(1), rat(5, 2)],
            10,
            Expected::NonNegative,
        );
        let a = serde_json::to_string(&scan(&spec).unwrap()).unwrap();
        let b = serde_json::to_string(&scan(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_grid_rejected() {
        let mut spec = ScanSpec::new(
            FamilySpec::KS,
            SequenceSpec::constant_one(),
            &[int(1)],
            4,
            Expected::Zero,
        );
        spec.beta_grid.clear();
        assert!(matches!(scan(&spec), Err(HarnessError::Invalid(_))));
        spec.beta_grid = vec![int(1)];
        spec.order = 1;
        assert!(matches!(scan(&spec), Err(HarnessError::Invalid(_))));
    }
}
