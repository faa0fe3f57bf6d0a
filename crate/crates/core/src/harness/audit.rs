//! Gauss-paired row audits, counterexample reproduction, and pointwise
//! Turánian values at numeric x.

use std::cmp::Ordering;

use serde::Serialize;

use super::HarnessError;
use crate::closedform::tail_bound;
use crate::exact::rational::fmt_short;
use crate::exact::{int, parse_rational, rat, to_f64, Rational};
use crate::families::{FamilySpec, SequenceSpec};
use crate::identities::printed::C_R3_POINTS;
use crate::series::{classify_sign_pattern, turanian};

#[derive(Clone, Debug, Serialize)]
pub struct AuditRow {
    pub m: usize,
    /// A_0..A_{⌊m/2⌋}.
    pub entries: Vec<String>,
    pub sign_changes: usize,
    pub matches_minus_zero_plus: bool,
    pub row_sum: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub family: String,
    pub sequence: String,
    pub mu: String,
    pub alpha: String,
    pub beta: String,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    /// Every row from `from` on has exactly one sign change.
    pub fn single_change_from(&self, from: usize) -> bool {
        self.rows
            .iter()
            .filter(|r| r.m >= from)
            .all(|r| r.sign_changes == 1)
    }

    pub fn all_rows_sum_to_zero(&self) -> bool {
        self.rows.iter().all(|r| r.row_sum == "0")
    }
}

pub fn sign_change_audit(
    family: &FamilySpec,
    seq: &SequenceSpec,
    alpha: &Rational,
    beta: &Rational,
    mu: &Rational,
    m_max: usize,
) -> Result<AuditReport, HarnessError> {
    let rep = turanian::<Rational>(family, seq, mu, alpha, beta, m_max.max(2))?;
    let rows = rep.rows[..=m_max]
        .iter()
        .enumerate()
        .map(|(m, row)| {
            let pattern = classify_sign_pattern(row)?;
            let sum: Rational = row.iter().sum();
            Ok(AuditRow {
                m,
                entries: row.iter().map(fmt_short).collect(),
                sign_changes: pattern.sign_changes,
                matches_minus_zero_plus: pattern.matches_minus_zero_plus,
                row_sum: fmt_short(&sum),
            })
        })
        .collect::<Result<Vec<_>, crate::series::SeriesError>>()?;
    Ok(AuditReport {
        family: family.to_string(),
        sequence: seq.label(),
        mu: fmt_short(mu),
        alpha: fmt_short(alpha),
        beta: fmt_short(beta),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedPoint {
    pub mu: String,
    pub computed: f64,
    pub printed: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    pub same_sign: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    BothSignsFound,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignWitness {
    pub mu: String,
    pub m: usize,
    pub delta: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub family: String,
    /// μ = j/10 for j in this inclusive range.
    pub mu_tenths: (i64, i64),
    pub points_searched: usize,
    pub max_order: usize,
    pub positive: Option<SignWitness>,
    pub negative: Option<SignWitness>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    /// δ₂ of the r = 3 series at the two printed μ with α = β = 1.
    pub printed_points: Vec<PrintedPoint>,
    pub opposite_signs: bool,
    /// Both signs of δ_m for F_4 with f ≡ 1 on μ ∈ {1/10, …, 10}.
    pub search: SearchResult,
    /// The same search continued over μ ∈ {101/10, …, 30}, run only when the
    /// first grid is inconclusive.
    pub extended_search: Option<SearchResult>,
}

impl CounterexampleReport {
    pub fn reproduced(&self) -> bool {
        self.opposite_signs
            && self.printed_points.iter().all(|p| p.within_tolerance)
            && [Some(&self.search), self.extended_search.as_ref()]
                .into_iter()
                .flatten()
                .any(|s| s.outcome == Outcome::BothSignsFound)
    }
}

fn delta2_r3(mu: &Rational) -> Result<Rational, HarnessError> {
    let one = int(1);
    let rep = turanian::<Rational>(
        &FamilySpec::G { r: 3 },
        &SequenceSpec::constant_one(),
        mu,
        &one,
        &one,
        2,
    )?;
    Ok(rep.delta.coeff(2).clone())
}

/// Signed δ_m search for F_4, f ≡ 1, α = β = 1, over μ = j/10 for j in
/// `tenths`.
fn search_f4(tenths: (i64, i64), max_order: usize) -> Result<SearchResult, HarnessError> {
    let one = int(1);
    let family = FamilySpec::F { r: 4 };
    let mut positive = None;
    let mut negative = None;
    let mut searched = 0;
    for j in tenths.0..=tenths.1 {
        let mu = rat(j, 10);
        let rep = turanian::<Rational>(
            &family,
            &SequenceSpec::constant_one(),
            &mu,
            &one,
            &one,
            max_order,
        )?;
        searched += 1;
        for (m, d) in rep.delta.coeffs().iter().enumerate() {
            let slot = match d.cmp(&Rational::from_integer(0.into())) {
                Ordering::Greater => &mut positive,
                Ordering::Less => &mut negative,
                Ordering::Equal => continue,
            };
            if slot.is_none() {
                *slot = Some(SignWitness {
                    mu: fmt_short(&mu),
                    m,
                    delta: fmt_short(d),
                });
            }
        }
        if positive.is_some() && negative.is_some() {
            break;
        }
    }
    let outcome = if positive.is_some() && negative.is_some() {
        Outcome::BothSignsFound
    } else {
        Outcome::Inconclusive
    };
    Ok(SearchResult {
        family: family.to_string(),
        mu_tenths: tenths,
        points_searched: searched,
        max_order,
        positive,
        negative,
        outcome,
    })
}

/// δ₂ of the r = 3 series at the printed μ with α = β = 1.
pub fn reproduce_printed_points() -> Result<Vec<PrintedPoint>, HarnessError> {
    let mut printed_points = Vec::new();
    for (mu_text, printed, tol) in C_R3_POINTS {
        let mu = parse_rational(mu_text).map_err(|e| HarnessError::Invalid(e.to_string()))?;
        let computed = to_f64(&delta2_r3(&mu)?);
        printed_points.push(PrintedPoint {
            mu: mu_text.to_string(),
            computed,
            printed,
            tolerance: tol,
            within_tolerance: (computed - printed).abs() <= tol,
            same_sign: computed.signum() == printed.signum(),
        });
    }
    Ok(printed_points)
}

pub fn reproduce_counterexamples() -> Result<CounterexampleReport, HarnessError> {
    let printed_points = reproduce_printed_points()?;
    let opposite_signs = printed_points.len() == 2
        && printed_points[0].computed.signum() == -printed_points[1].computed.signum()
        && printed_points.iter().all(|p| p.same_sign);
    let search = search_f4((1, 100), 10)?;
    let extended_search = match search.outcome {
        Outcome::BothSignsFound => None,
        Outcome::Inconclusive => Some(search_f4((101, 300), 10)?),
    };
    Ok(CounterexampleReport {
        printed_points,
        opposite_signs,
        search,
        extended_search,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointwiseValue {
    pub x: f64,
    /// f(μ+α;x)f(μ+β;x) − f(μ;x)f(μ+α+β;x), divided by any gamma prefactor
    /// P(μ)P(μ+α+β).
    pub value: f64,
    /// Bound on truncation plus rounding error in `value`.
    pub error_bound: f64,
}

impl PointwiseValue {
    pub fn nonnegative(&self) -> bool {
        self.value >= -self.error_bound
    }

    pub fn nonpositive(&self) -> bool {
        self.value <= self.error_bound
    }
}

/// The Turánian as a function value at each x, from order-N partial sums
/// with exact coefficients and a ratio-test tail bound.
pub fn pointwise_turanian(
    family: &FamilySpec,
    seq: &SequenceSpec,
    mu: &Rational,
    alpha: &Rational,
    beta: &Rational,
    xs: &[f64],
    order: usize,
) -> Result<Vec<PointwiseValue>, HarnessError> {
    family
        .validate()
        .map_err(|e| HarnessError::Series(e.into()))?;
    let terms = seq
        .terms(order)
        .map_err(|e| HarnessError::Series(e.into()))?;
    let coeffs = |m: &Rational| -> Result<Vec<f64>, HarnessError> {
        family
            .check_mu_domain(m)
            .map_err(|e| HarnessError::Series(e.into()))?;
        let c = family
            .coefficients::<Rational>(&terms, m, order)
            .map_err(|e| HarnessError::Series(e.into()))?;
        Ok(c.iter().map(to_f64).collect())
    };
    let ratio = family
        .prefactor_ratio::<Rational>(mu, alpha, beta)
        .map(|r| to_f64(&r))
        .or_else(|_| {
            let f = |r: &Rational| to_f64(r);
            family.prefactor_ratio::<f64>(&f(mu), &f(alpha), &f(beta))
        })
        .map_err(|e| HarnessError::Series(e.into()))?;
    let series = [
        coeffs(&(mu + alpha))?,
        coeffs(&(mu + beta))?,
        coeffs(mu)?,
        coeffs(&(mu + alpha + beta))?,
    ];
    xs.iter()
        .map(|&x| {
            let mut vals = [0.0; 4];
            let mut errs = [0.0; 4];
            for (i, c) in series.iter().enumerate() {
                let (mut s, mut abs, mut p) = (0.0, 0.0, 1.0);
                for cn in c {
                    s += cn * p;
                    abs += (cn * p).abs();
                    p *= x;
                }
                let tail = tail_bound(c, x).ok_or_else(|| {
                    HarnessError::Invalid(format!(
                        "x = {x}: partial sums of {family} do not settle by order {order}"
                    ))
                })?;
                vals[i] = s;
                errs[i] = tail + abs * f64::EPSILON * (order as f64 + 1.0);
            }
            let plus = ratio * vals[0] * vals[1];
            let minus = vals[2] * vals[3];
            let prod_err = |a: usize, b: usize| {
                vals[a].abs() * errs[b] + vals[b].abs() * errs[a] + errs[a] * errs[b]
            };
            let error_bound = ratio.abs() * prod_err(0, 1)
                + prod_err(2, 3)
                + 4.0 * f64::EPSILON * (plus.abs() + minus.abs());
            Ok(PointwiseValue {
                x,
                value: plus - minus,
                error_bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_rows_have_one_sign_change() {
        let one = int(1);
        let rep = sign_change_audit(
            &FamilySpec::G { r: 2 },
            &SequenceSpec::constant_one(),
            &one,
            &one,
            &one,
            20,
        )
        .unwrap();
        assert_eq!(rep.rows.len(), 21);
        assert!(rep.single_change_from(2));
        assert_eq!(rep.rows[1].entries.len(), 1);
        assert_eq!(rep.rows[1].sign_changes, 0);
    }

    #[test]
    fn h_rows_sum_to_zero() {
        let rep = sign_change_audit(
            &FamilySpec::H,
            &SequenceSpec::constant_one(),
            &rat(1, 2),
            &int(2),
            &rat(3, 2),
            14,
        )
        .unwrap();
        assert!(rep.all_rows_sum_to_zero());
    }

    #[test]
    fn counterexamples_reproduce() {
        let rep = reproduce_counterexamples().unwrap();
        assert!(rep.printed_points[0].computed < 0.0);
        assert!(rep.printed_points[1].computed > 0.0);
        assert!(rep.reproduced(), "{rep:#?}");
        // With α = β = 1 the first negative coefficient is δ₃ at μ = 161/10,
        // past the end of the first grid.
        assert_eq!(rep.search.outcome, Outcome::Inconclusive);
        let ext = rep.extended_search.as_ref().unwrap();
        let neg = ext.negative.as_ref().unwrap();
        assert_eq!((neg.mu.as_str(), neg.m), ("161/10", 3));
    }

    #[test]
    fn pointwise_matches_a_closed_form() {
        // KS with f ≡ 1 is (1−x)^{−μ}: the Turánian vanishes identically.
        let vals = pointwise_turanian(
            &FamilySpec::KS,
            &SequenceSpec::constant_one(),
            &int(1),
            &rat(1, 2),
            &int(2),
            &[0.1, 0.3],
            200,
        )
        .unwrap();
        for v in vals {
            assert!(v.value.abs() <= v.error_bound.max(1e-12), "{v:?}");
        }
    }

    #[test]
    fn pointwise_outside_convergence_is_an_error() {
        let r = pointwise_turanian(
            &FamilySpec::KS,
            &SequenceSpec::constant_one(),
            &int(1),
            &int(1),
            &int(1),
            &[1.5],
            50,
        );
        assert!(r.is_err());
    }
}
