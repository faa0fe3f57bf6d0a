//! Floating-point closed forms of the named series and their cross-check
//! against exact partial sums.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational::serde_pq;
use crate::exact::{int, to_f64, Rational};
use crate::families::{FamilyError, FamilySpec, SequenceSpec};
use crate::series::{series_mul, turanian, SeriesError, TruncatedSeries};

/// Allowed imaginary part of a roots-of-unity sum, relative to max(1, |Re|).
const IMAG_RESIDUE: f64 = 1e-12;
/// Slack added to the tail bound when judging a cross-check.
pub const CROSSCHECK_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("{id} is not defined at x = {x}")]
    Domain { id: String, x: f64 },
    #[error("{id}: imaginary residue {residue:e} at x = {x}")]
    ImaginaryResidue { id: String, x: f64, residue: f64 },
    #[error("{0} has no series counterpart")]
    NoSeries(String),
    #[error("cross-check needs order >= 10, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", deny_unknown_fields)]
pub enum ClosedForm {
    /// ψ(μ;x) = ½[(1+√x)^{−μ} + (1−√x)^{−μ}]
    PsiEven {
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// ξ_μ(α,β;x) = −¼(1−x)^{−μ}[(1−√x)^{−α}−(1+√x)^{−α}][(1−√x)^{−β}−(1+√x)^{−β}]
    XiProduct {
        #[serde(with = "serde_pq")]
        mu: Rational,
        #[serde(with = "serde_pq")]
        alpha: Rational,
        #[serde(with = "serde_pq")]
        beta: Rational,
    },
    /// ψ_r(μ;x) = (1/r) Σ_k (1−ω_k x^{1/r})^{−μ}
    PsiR {
        r: usize,
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// λ(μ;x) = ((1−√(1−4x))/(2x))^μ
    Lambda {
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// η(μ;x) = (1−√x)^{−μ−1} − (1+√x)^{−μ−1}
    Eta {
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// ψ̃(μ;x) = μ√x η(μ;x)/2
    PsiTilde {
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// ψ̃_r(μ;x) = (μ/r) x^{1/r} Σ_k ω_k (1−ω_k x^{1/r})^{−μ−1}
    PsiTildeR {
        r: usize,
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
    /// Turánian of ψ̃ through η:
    /// (μ+α)(μ+β)x/4 η(μ+α)η(μ+β) − μ(μ+α+β)x/4 η(μ)η(μ+α+β)
    Coeff3Rhs {
        #[serde(with = "serde_pq")]
        mu: Rational,
        #[serde(with = "serde_pq")]
        alpha: Rational,
        #[serde(with = "serde_pq")]
        beta: Rational,
    },
    /// Turánian of η: (1−x)^{−1−μ}[(1+√x)^{−α}−(1−√x)^{−α}][(1+√x)^{−β}−(1−√x)^{−β}]
    Coeff4Rhs {
        #[serde(with = "serde_pq")]
        mu: Rational,
        #[serde(with = "serde_pq")]
        alpha: Rational,
        #[serde(with = "serde_pq")]
        beta: Rational,
    },
    /// ∂²/∂μ² log ψ(μ;x)
    LogDeriv2Psi {
        #[serde(with = "serde_pq")]
        mu: Rational,
    },
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::PsiEven { .. } => write!(f, "PsiEven"),
            ClosedForm::XiProduct { .. } => write!(f, "XiProduct"),
            ClosedForm::PsiR { r, .. } => write!(f, "PsiR{r}"),
            ClosedForm::Lambda { .. } => write!(f, "Lambda"),
            ClosedForm::Eta { .. } => write!(f, "Eta"),
            ClosedForm::PsiTilde { .. } => write!(f, "PsiTilde"),
            ClosedForm::PsiTildeR { r, .. } => write!(f, "PsiTildeR{r}"),
            ClosedForm::Coeff3Rhs { .. } => write!(f, "Coeff3Rhs"),
            ClosedForm::Coeff4Rhs { .. } => write!(f, "Coeff4Rhs"),
            ClosedForm::LogDeriv2Psi { .. } => write!(f, "LogDeriv2Psi"),
        }
    }
}

fn roots_of_unity(r: usize) -> impl Iterator<Item = Complex64> {
    (0..r).map(move |k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / r as f64))
}

/// (1−√x)^{−a} − (1+√x)^{−a}
fn odd_part(a: f64, s: f64) -> f64 {
    (1.0 - s).powf(-a) - (1.0 + s).powf(-a)
}

fn eta(mu: f64, x: f64) -> f64 {
    odd_part(mu + 1.0, x.sqrt())
}

fn psi_even(mu: f64, x: f64) -> f64 {
    let s = x.sqrt();
    0.5 * ((1.0 + s).powf(-mu) + (1.0 - s).powf(-mu))
}

impl ClosedForm {
    pub fn mu(&self) -> &Rational {
        match self {
            ClosedForm::PsiEven { mu }
            | ClosedForm::XiProduct { mu, .. }
            | ClosedForm::PsiR { mu, .. }
            | ClosedForm::Lambda { mu }
            | ClosedForm::Eta { mu }
            | ClosedForm::PsiTilde { mu }
            | ClosedForm::PsiTildeR { mu, .. }
            | ClosedForm::Coeff3Rhs { mu, .. }
            | ClosedForm::Coeff4Rhs { mu, .. }
            | ClosedForm::LogDeriv2Psi { mu } => mu,
        }
    }

    fn in_domain(&self, x: f64) -> bool {
        match self {
            ClosedForm::Lambda { .. } => x.abs() < 0.25,
            ClosedForm::LogDeriv2Psi { .. } => x > 0.0 && x < 1.0,
            _ => (0.0..1.0).contains(&x),
        }
    }

    fn domain_error(&self, x: f64) -> ClosedFormError {
        ClosedFormError::Domain {
            id: self.to_string(),
            x,
        }
    }

    fn real_part(&self, z: Complex64, x: f64) -> Result<f64, ClosedFormError> {
        if z.im.abs() > IMAG_RESIDUE * z.re.abs().max(1.0) {
            return Err(ClosedFormError::ImaginaryResidue {
                id: self.to_string(),
                x,
                residue: z.im,
            });
        }
        Ok(z.re)
    }

    /// The printed closed form at x, in double precision.
    pub fn eval(&self, x: f64) -> Result<f64, ClosedFormError> {
        if !self.in_domain(x) {
            return Err(self.domain_error(x));
        }
        let mu = to_f64(self.mu());
        let s = x.sqrt();
        match self {
            ClosedForm::PsiEven { .. } => Ok(psi_even(mu, x)),
            ClosedForm::XiProduct { alpha, beta, .. } => {
                let (a, b) = (to_f64(alpha), to_f64(beta));
                Ok(-0.25 * (1.0 - x).powf(-mu) * odd_part(a, s) * odd_part(b, s))
            }
            ClosedForm::PsiR { r, .. } => {
                if *r == 0 {
                    return Err(self.domain_error(x));
                }
                let root = x.powf(1.0 / *r as f64);
                let z: Complex64 = roots_of_unity(*r)
                    .map(|w| (Complex64::new(1.0, 0.0) - w * root).powf(-mu))
                    .sum::<Complex64>()
                    / *r as f64;
                self.real_part(z, x)
            }
            ClosedForm::Lambda { .. } => {
                if x == 0.0 {
                    return Ok(1.0);
                }
                Ok(((1.0 - (1.0 - 4.0 * x).sqrt()) / (2.0 * x)).powf(mu))
            }
            ClosedForm::Eta { .. } => Ok(eta(mu, x)),
            ClosedForm::PsiTilde { .. } => Ok(mu * s * eta(mu, x) / 2.0),
            ClosedForm::PsiTildeR { r, .. } => {
                if *r == 0 {
                    return Err(self.domain_error(x));
                }
                let root = x.powf(1.0 / *r as f64);
                let z: Complex64 = roots_of_unity(*r)
                    .map(|w| w * (Complex64::new(1.0, 0.0) - w * root).powf(-mu - 1.0))
                    .sum::<Complex64>()
                    * (mu / *r as f64 * root);
                self.real_part(z, x)
            }
            ClosedForm::Coeff3Rhs { alpha, beta, .. } => {
                let (a, b) = (to_f64(alpha), to_f64(beta));
                Ok(
                    (mu + a) * (mu + b) * x / 4.0 * eta(mu + a, x) * eta(mu + b, x)
                        - mu * (mu + a + b) * x / 4.0 * eta(mu, x) * eta(mu + a + b, x),
                )
            }
            ClosedForm::Coeff4Rhs { alpha, beta, .. } => {
                let (a, b) = (to_f64(alpha), to_f64(beta));
                Ok((1.0 - x).powf(-1.0 - mu) * odd_part(a, s) * odd_part(b, s))
            }
            ClosedForm::LogDeriv2Psi { .. } => eval_log_deriv2_psi(mu, x),
        }
    }

    /// Exact coefficients c_0..c_N and a prefactor p(x) with
    /// closed form = p(x) Σ c_n xⁿ.
    fn series(&self, order: usize) -> Result<(Vec<Rational>, SeriesPrefactor), ClosedFormError> {
        let one = SequenceSpec::constant_one();
        let coeffs = |fam: FamilySpec| -> Result<Vec<Rational>, ClosedFormError> {
            let terms = one.terms(order)?;
            Ok(fam.coefficients(&terms, self.mu(), order)?)
        };
        let delta = |fam: FamilySpec, alpha: &Rational, beta: &Rational| {
            turanian(&fam, &one, self.mu(), alpha, beta, order).map(|r| r.delta.into_coeffs())
        };
        Ok(match self {
            ClosedForm::PsiEven { .. } => (coeffs(FamilySpec::G { r: 2 })?, SeriesPrefactor::One),
            ClosedForm::PsiR { r, .. } => (coeffs(FamilySpec::G { r: *r })?, SeriesPrefactor::One),
            ClosedForm::Lambda { .. } => (coeffs(FamilySpec::H)?, SeriesPrefactor::One),
            ClosedForm::PsiTilde { .. } => (coeffs(FamilySpec::F { r: 2 })?, SeriesPrefactor::One),
            ClosedForm::PsiTildeR { r, .. } => {
                (coeffs(FamilySpec::F { r: *r })?, SeriesPrefactor::One)
            }
            ClosedForm::Eta { mu } => (eta_over_sqrt(mu, order), SeriesPrefactor::TwoSqrtX),
            ClosedForm::XiProduct { alpha, beta, .. } => (
                delta(FamilySpec::G { r: 2 }, alpha, beta)?,
                SeriesPrefactor::One,
            ),
            ClosedForm::Coeff3Rhs { alpha, beta, .. } => (
                delta(FamilySpec::F { r: 2 }, alpha, beta)?,
                SeriesPrefactor::One,
            ),
            ClosedForm::Coeff4Rhs { mu, alpha, beta } => {
                // η(ν) = 2√x S(ν), so the η Turánian is 4x times that of S
                let s = |nu: Rational| TruncatedSeries::new(eta_over_sqrt(&nu, order)).unwrap();
                let d = series_mul(&s(mu + alpha), &s(mu + beta))
                    .sub(&series_mul(&s(mu.clone()), &s(mu + alpha + beta)));
                let mut c = vec![Rational::from_integer(0.into())];
                c.extend(
                    d.coeffs()[..order]
                        .iter()
                        .map(|v| v * Rational::from_integer(4.into())),
                );
                (c, SeriesPrefactor::One)
            }
            ClosedForm::LogDeriv2Psi { .. } => {
                return Err(ClosedFormError::NoSeries(self.to_string()))
            }
        })
    }
}

/// Coefficients of η(ν;x)/(2√x) = Σ (ν+1)_{2n+1}/(2n+1)! xⁿ.
fn eta_over_sqrt(nu: &Rational, order: usize) -> Vec<Rational> {
    // c_n = c_{n−1} (ν+2n)(ν+2n+1) / ((2n)(2n+1))
    let mut out = vec![nu + Rational::from_integer(1.into())];
    for n in 1..=order as i64 {
        let step = (nu + int(2 * n)) * (nu + int(2 * n + 1)) / int(2 * n * (2 * n + 1));
        let next = &out[n as usize - 1] * step;
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug)]
enum SeriesPrefactor {
    One,
    TwoSqrtX,
}

impl SeriesPrefactor {
    fn at(self, x: f64) -> f64 {
        match self {
            SeriesPrefactor::One => 1.0,
            SeriesPrefactor::TwoSqrtX => 2.0 * x.sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheckStatus {
    Pass,
    Fail,
    /// The coefficient ratio over the last orders is not below 1.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckResult {
    pub id: String,
    pub mu: f64,
    pub x: f64,
    #[serde(rename = "N")]
    pub order: usize,
    pub series_value: f64,
    pub closed_value: f64,
    pub gap: f64,
    /// `None` when the tail bound is not computable.
    pub bound: Option<f64>,
    pub status: CrossCheckStatus,
}

impl CrossCheckResult {
    pub fn passed(&self) -> bool {
        self.status == CrossCheckStatus::Pass
    }
}

/// |Σ_{n>N} c_n xⁿ| ≤ |c_N x^N| ρ/(1−ρ), ρ the largest |c_{n+1}x/c_n| over
/// the last five orders; `None` unless ρ < 1.
///
/// When those ratios are still increasing, ρ is raised to the limit
/// estimated from r_n ≈ L(1 − c/n) through the last two ratios, since the
/// observed maximum alone undershoots the ratios beyond N.
pub fn tail_bound(coeffs: &[f64], x: f64) -> Option<f64> {
    let n = coeffs.len() - 1;
    let last = coeffs[n] * x.powi(n as i32);
    let mut ratios = Vec::new();
    for k in n.saturating_sub(5)..n {
        let (a, b) = (coeffs[k], coeffs[k + 1]);
        if a == 0.0 {
            if b != 0.0 {
                return None;
            }
            continue;
        }
        ratios.push((k + 1, (b * x / a).abs()));
    }
    let mut rho = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    if ratios.len() >= 2 && ratios.windows(2).all(|w| w[1].1 > w[0].1) {
        let (i, ri) = ratios[ratios.len() - 2];
        let (j, rj) = ratios[ratios.len() - 1];
        let limit = (j as f64 * rj - i as f64 * ri) / (j - i) as f64;
        rho = rho.max(limit);
    }
    if rho >= 1.0 {
        return None;
    }
    Some(last.abs() * rho / (1.0 - rho))
}

/// Partial sum to order N against the closed form at x.
pub fn crosscheck(
    id: &ClosedForm,
    x: f64,
    order: usize,
) -> Result<CrossCheckResult, ClosedFormError> {
    crosscheck_many(id, &[x], order).map(|mut v| v.remove(0))
}

/// [`crosscheck`] at several x, building the exact series once.
pub fn crosscheck_many(
    id: &ClosedForm,
    xs: &[f64],
    order: usize,
) -> Result<Vec<CrossCheckResult>, ClosedFormError> {
    if order < 10 {
        return Err(ClosedFormError::OrderTooSmall(order));
    }
    let closed: Vec<f64> = xs.iter().map(|&x| id.eval(x)).collect::<Result<_, _>>()?;
    let (exact, pre) = id.series(order)?;
    let coeffs: Vec<f64> = exact.iter().map(to_f64).collect();
    Ok(xs
        .iter()
        .zip(closed)
        .map(|(&x, closed_value)| {
            let p = pre.at(x);
            // Horner from the top keeps rounding proportional to the sum
            let sum = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let series_value = p * sum;
            let gap = (series_value - closed_value).abs();
            let bound = tail_bound(&coeffs, x).map(|b| b * p.abs());
            let status = match bound {
                None => CrossCheckStatus::Inconclusive,
                Some(b) if gap <= b + CROSSCHECK_SLACK => CrossCheckStatus::Pass,
                Some(_) => CrossCheckStatus::Fail,
            };
            CrossCheckResult {
                id: id.to_string(),
                mu: to_f64(id.mu()),
                x,
                order,
                series_value,
                closed_value,
                gap,
                bound,
                status,
            }
        })
        .collect())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    mu: f64,
    x: f64,
    #[serde(rename = "N")]
    order: usize,
    series_value: f64,
    closed_value: f64,
    gap: f64,
    bound: String,
    pass: bool,
}

/// Rows as CSV with header id, mu, x, N, series_value, closed_value, gap, bound, pass.
pub fn crosscheck_csv(results: &[CrossCheckResult]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in results {
        w.serialize(CsvRow {
            id: &r.id,
            mu: r.mu,
            x: r.x,
            order: r.order,
            series_value: r.series_value,
            closed_value: r.closed_value,
            gap: r.gap,
            bound: r.bound.map(|b| b.to_string()).unwrap_or_default(),
            pass: r.passed(),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Every closed form with a series counterpart, at one (μ, α, β).
pub fn standard_forms(mu: &Rational, alpha: &Rational, beta: &Rational) -> Vec<ClosedForm> {
    let mu = mu.clone();
    let (alpha, beta) = (alpha.clone(), beta.clone());
    let mut out = vec![
        ClosedForm::PsiEven { mu: mu.clone() },
        ClosedForm::PsiR {
            r: 3,
            mu: mu.clone(),
        },
        ClosedForm::Lambda { mu: mu.clone() },
        ClosedForm::Eta { mu: mu.clone() },
        ClosedForm::PsiTilde { mu: mu.clone() },
    ];
    out.extend((1..=4).map(|r| ClosedForm::PsiTildeR { r, mu: mu.clone() }));
    out.push(ClosedForm::XiProduct {
        mu: mu.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    });
    out.push(ClosedForm::Coeff3Rhs {
        mu: mu.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    });
    out.push(ClosedForm::Coeff4Rhs { mu, alpha, beta });
    out
}

/// `count` evenly spaced x in (0, x_max], with x_max = 1/5 for λ and 1/2
/// otherwise.
pub fn sample_points(form: &ClosedForm, count: usize) -> Vec<f64> {
    let x_max = match form {
        ClosedForm::Lambda { .. } => 0.2,
        _ => 0.5,
    };
    (1..=count)
        .map(|i| x_max * i as f64 / count as f64)
        .collect()
}

/// Cross-check every standard form at `count` sample points.
pub fn crosscheck_suite(
    mu: &Rational,
    alpha: &Rational,
    beta: &Rational,
    count: usize,
    order: usize,
) -> Result<Vec<CrossCheckResult>, ClosedFormError> {
    let mut out = Vec::new();
    for form in standard_forms(mu, alpha, beta) {
        out.extend(crosscheck_many(&form, &sample_points(&form, count), order)?);
    }
    Ok(out)
}

/// 4(1−x)^μ artanh(√x)² / ((1−√x)^μ + (1+√x)^μ)².
pub fn eval_log_deriv2_psi(mu: f64, x: f64) -> Result<f64, ClosedFormError> {
    if !(x > 0.0 && x < 1.0 && mu > 0.0) {
        return Err(ClosedFormError::Domain {
            id: "LogDeriv2Psi".into(),
            x,
        });
    }
    let s = x.sqrt();
    let den = (1.0 - s).powf(mu) + (1.0 + s).powf(mu);
    Ok(4.0 * (1.0 - x).powf(mu) * s.atanh().powi(2) / (den * den))
}

/// Largest |λ(α;x)λ(β;x) − λ(α+β;x)| over the grid.
pub fn lambda_index_law_gap(
    alphas: &[Rational],
    betas: &[Rational],
    xs: &[f64],
) -> Result<f64, ClosedFormError> {
    let lam = |mu: &Rational, x: f64| ClosedForm::Lambda { mu: mu.clone() }.eval(x);
    let mut worst: f64 = 0.0;
    for a in alphas {
        for b in betas {
            for &x in xs {
                let gap = (lam(a, x)? * lam(b, x)? - lam(&(a + b), x)?).abs();
                worst = worst.max(gap);
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn closed_form_values() {
        let v = ClosedForm::PsiEven { mu: int(2) }.eval(0.25).unwrap();
        assert!((v - 20.0 / 9.0).abs() < 1e-14);
        let l = ClosedForm::Lambda { mu: int(1) }.eval(0.25);
        assert!(l.is_err());
        let l = ClosedForm::Lambda { mu: int(1) }.eval(0.2).unwrap();
        assert!((l - (1.0 - 0.2f64.sqrt()) / 0.4).abs() < 1e-14);
        let r2 = ClosedForm::PsiR { r: 2, mu: int(3) }.eval(0.1).unwrap();
        let even = ClosedForm::PsiEven { mu: int(3) }.eval(0.1).unwrap();
        assert!((r2 - even).abs() < 1e-12);
        let g = ClosedForm::PsiR { r: 3, mu: int(1) }.eval(0.5).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        assert!(ClosedForm::Eta { mu: int(1) }.eval(1.0).is_err());
    }

    #[test]
    fn lambda_limit_at_quarter() {
        // (1−0)/(2·¼) = 2 at the boundary of the disk
        let x: f64 = 0.25;
        let v = ((1.0 - (1.0 - 4.0 * x).sqrt()) / (2.0 * x)).powf(1.0);
        assert_eq!(v, 2.0);
    }

    #[test]
    fn crosscheck_examples() {
        let r = crosscheck(&ClosedForm::PsiEven { mu: int(2) }, 0.25, 40).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = crosscheck(&ClosedForm::Lambda { mu: int(1) }, 0.2, 40).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = crosscheck(&ClosedForm::PsiR { r: 3, mu: int(1) }, 0.5, 60).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!((r.series_value - 2.0).abs() < 1e-10);
        assert!(crosscheck(&ClosedForm::PsiEven { mu: int(2) }, 0.25, 5).is_err());
    }

    #[test]
    fn turanian_closed_forms() {
        let (mu, alpha, beta) = (rat(3, 2), int(1), rat(1, 2));
        for id in [
            ClosedForm::XiProduct {
                mu: mu.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            ClosedForm::Coeff3Rhs {
                mu: mu.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            ClosedForm::Coeff4Rhs {
                mu: mu.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            ClosedForm::Eta { mu: mu.clone() },
            ClosedForm::PsiTilde { mu: mu.clone() },
            ClosedForm::PsiTildeR {
                r: 4,
                mu: mu.clone(),
            },
        ] {
            let r = crosscheck(&id, 0.3, 60).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn xi_equals_psi_products() {
        for &x in &[0.05, 0.2, 0.5] {
            for (m, a, b) in [(1.0, 1.0, 1.0), (0.5, 2.0, 0.25), (3.0, 0.5, 1.5)] {
                let xi = ClosedForm::XiProduct {
                    mu: Rational::from_float(m).unwrap(),
                    alpha: Rational::from_float(a).unwrap(),
                    beta: Rational::from_float(b).unwrap(),
                }
                .eval(x)
                .unwrap();
                let direct = psi_even(m + a, x) * psi_even(m + b, x)
                    - psi_even(m, x) * psi_even(m + a + b, x);
                assert!((xi - direct).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn standard_suite_passes() {
        let res = crosscheck_suite(&rat(3, 2), &rat(1, 2), &int(2), 25, 120).unwrap();
        assert_eq!(res.len(), 12 * 25);
        for r in &res {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn log_second_derivative() {
        let (mu, x, h) = (1.0, 0.25, 1e-4);
        let lp = |m: f64| psi_even(m, x).ln();
        let fd = (lp(mu + h) - 2.0 * lp(mu) + lp(mu - h)) / (h * h);
        let v = eval_log_deriv2_psi(mu, x).unwrap();
        assert!((v - fd).abs() < 1e-6, "{v} vs {fd}");
        assert!(eval_log_deriv2_psi(2.5, 0.9).unwrap() > 0.0);
        assert!(eval_log_deriv2_psi(1.0, 1e-12).unwrap() < 1e-10);
        assert!(eval_log_deriv2_psi(1.0, 0.0).is_err());
    }

    #[test]
    fn index_law_and_csv() {
        let g: Vec<Rational> = (1..=5).map(|k| rat(k, 2)).collect();
        let xs = [-0.2, -0.1, 0.05, 0.15, 0.24];
        assert!(lambda_index_law_gap(&g, &g, &xs).unwrap() < 1e-12);
        let r = crosscheck(&ClosedForm::PsiEven { mu: int(2) }, 0.25, 20).unwrap();
        let text = crosscheck_csv(&[r]).unwrap();
        assert!(text.starts_with("id,mu,x,N,series_value,closed_value,gap,bound,pass\n"));
    }

    #[test]
    fn tail_bound_needs_contraction() {
        assert!(tail_bound(&[1.0; 12], 1.0).is_none());
        assert_eq!(tail_bound(&[0.0; 12], 0.5), Some(0.0));
        let b = tail_bound(&[1.0; 12], 0.5).unwrap();
        // Σ_{n>11} 2^{−n} = 2^{−11}
        assert!((b - 0.5f64.powi(11)).abs() < 1e-15);
        // c_n = n+1 at x = 1/2: ratios (n+2)/(2(n+1)) decrease, observed max used
        let c: Vec<f64> = (0..12).map(|n| (n + 1) as f64).collect();
        let exact_tail: f64 = (12..400).map(|n| (n + 1) as f64 * 0.5f64.powi(n)).sum();
        assert!(tail_bound(&c, 0.5).unwrap() >= exact_tail);
        // Catalan numbers at x = 0.2: ratios climb toward 0.8
        let mut cat = vec![1.0f64];
        for n in 0..40 {
            let next = cat[n] * 2.0 * (2 * n + 1) as f64 / (n + 2) as f64;
            cat.push(next);
        }
        let mut tail = 0.0;
        let mut t = cat[40] * 0.2f64.powi(40);
        for n in 40..2000 {
            t *= 2.0 * (2 * n + 1) as f64 / (n + 2) as f64 * 0.2;
            tail += t;
        }
        assert!(tail_bound(&cat, 0.2).unwrap() >= tail);
    }
}
