//! Generic coefficient sequences {f_n} and their log-concavity classification.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::conditions::ln_gamma;
use crate::exact::rational::{as_usize, factorial, pow, serde_pq};
use crate::exact::{poch, to_f64, Rational, Ring};

#[derive(Clone, Debug, PartialEq)]
pub enum SeqTerm {
    Exact(Rational),
    Numeric(f64),
}

impl SeqTerm {
    pub fn to_f64(&self) -> f64 {
        match self {
            SeqTerm::Exact(r) => to_f64(r),
            SeqTerm::Numeric(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SeqTerm::Exact(r) => r.is_zero(),
            SeqTerm::Numeric(x) => *x == 0.0,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            SeqTerm::Exact(r) => Some(r),
            SeqTerm::Numeric(_) => None,
        }
    }

    pub fn to_ring<R: Ring>(&self) -> Result<R, FamilyError> {
        match self {
            SeqTerm::Exact(r) => Ok(R::from_rational(r)),
            SeqTerm::Numeric(x) => R::from_f64(*x).ok_or_else(|| {
                FamilyError::Unsupported(
                    "sequence has floating-point terms; use the floating ring".into(),
                )
            }),
        }
    }
}

/// A non-negative sequence f_0, f_1, ...
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SequenceSpec {
    /// Listed values; zero past the end.
    List {
        #[serde(with = "serde_pq::vec")]
        values: Vec<Rational>,
    },
    Constant {
        #[serde(with = "serde_pq")]
        c: Rational,
    },
    /// 1/n!
    FactorialReciprocal,
    /// n!
    Factorial,
    /// ratio^n
    Geometric {
        #[serde(with = "serde_pq")]
        ratio: Rational,
    },
    /// Π (a_i)_n / Π (b_j)_n
    HypTermRatio {
        #[serde(with = "serde_pq::vec")]
        a: Vec<Rational>,
        #[serde(with = "serde_pq::vec")]
        b: Vec<Rational>,
    },
    /// (ψ(c+n) − ψ(c)) (a)_n/(b)_n, exact through ψ(c+n) − ψ(c) = Σ_{j<n} 1/(c+j).
    ParamDerivative {
        #[serde(with = "serde_pq")]
        a: Rational,
        #[serde(with = "serde_pq")]
        b: Rational,
        #[serde(with = "serde_pq")]
        c: Rational,
    },
    /// Fox-Wright terms Π Γ(A_i n + a_i) / (θ^n Π Γ(B_j n + b_j)), divided by
    /// their value at n = 0. Exact when every A_i, B_j is a non-negative integer.
    FoxWrightV {
        #[serde(with = "serde_pq::vec")]
        a: Vec<Rational>,
        #[serde(rename = "A", with = "serde_pq::vec")]
        big_a: Vec<Rational>,
        #[serde(with = "serde_pq::vec")]
        b: Vec<Rational>,
        #[serde(rename = "B", with = "serde_pq::vec")]
        big_b: Vec<Rational>,
        #[serde(with = "serde_pq")]
        theta: Rational,
    },
    /// 1/f_n on the support of `of`, zero elsewhere.
    Reciprocal { of: Box<SequenceSpec> },
    /// f_{n−by}, zero for n < by.
    Shifted { by: usize, of: Box<SequenceSpec> },
}

impl SequenceSpec {
    pub fn constant_one() -> Self {
        SequenceSpec::Constant { c: Rational::one() }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let positive = |name: &str, xs: &[Rational]| -> Result<(), FamilyError> {
            match xs.iter().position(|x| !x.is_positive()) {
                Some(i) => Err(FamilyError::InvalidParameter(format!(
                    "{name}[{i}] = {} must be positive",
                    xs[i]
                ))),
                None => Ok(()),
            }
        };
        match self {
            SequenceSpec::List { values } => {
                if values.iter().any(|v| v.is_negative()) {
                    return Err(FamilyError::InvalidParameter(
                        "list values must be non-negative".into(),
                    ));
                }
                if values.iter().all(|v| v.is_zero()) {
                    return Err(FamilyError::TrivialSequence);
                }
            }
            SequenceSpec::Constant { c } => positive("c", std::slice::from_ref(c))?,
            SequenceSpec::Geometric { ratio } => positive("ratio", std::slice::from_ref(ratio))?,
            SequenceSpec::HypTermRatio { a, b } => {
                positive("a", a)?;
                positive("b", b)?;
            }
            SequenceSpec::ParamDerivative { a, b, c } => {
                positive("a,b,c", &[a.clone(), b.clone(), c.clone()])?
            }
            SequenceSpec::FoxWrightV {
                a,
                big_a,
                b,
                big_b,
                theta,
            } => {
                if a.len() != big_a.len() || b.len() != big_b.len() {
                    return Err(FamilyError::DimensionMismatch(
                        "a/A and b/B must have equal lengths".into(),
                    ));
                }
                positive("a", a)?;
                positive("A", big_a)?;
                positive("b", b)?;
                positive("B", big_b)?;
                positive("theta", std::slice::from_ref(theta))?;
            }
            SequenceSpec::Reciprocal { of } | SequenceSpec::Shifted { of, .. } => of.validate()?,
            SequenceSpec::FactorialReciprocal | SequenceSpec::Factorial => {}
        }
        Ok(())
    }

    /// First index with a nonzero term.
    pub fn offset(&self) -> usize {
        match self {
            SequenceSpec::List { values } => values.iter().position(|v| !v.is_zero()).unwrap_or(0),
            SequenceSpec::ParamDerivative { .. } => 1,
            SequenceSpec::Reciprocal { of } => of.offset(),
            SequenceSpec::Shifted { by, of } => by + of.offset(),
            _ => 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            SequenceSpec::FoxWrightV { big_a, big_b, .. } => {
                big_a.iter().chain(big_b).all(|x| as_usize(x).is_some())
            }
            SequenceSpec::Reciprocal { of } | SequenceSpec::Shifted { of, .. } => of.is_exact(),
            _ => true,
        }
    }

    pub fn term(&self, n: usize) -> Result<SeqTerm, FamilyError> {
        let exact = |r: Rational| Ok(SeqTerm::Exact(r));
        match self {
            SequenceSpec::List { values } => {
                exact(values.get(n).cloned().unwrap_or_else(Rational::zero))
            }
            SequenceSpec::Constant { c } => exact(c.clone()),
            SequenceSpec::FactorialReciprocal => exact(factorial(n).recip()),
            SequenceSpec::Factorial => exact(factorial(n)),
            SequenceSpec::Geometric { ratio } => exact(pow(ratio, n as i64)),
            SequenceSpec::HypTermRatio { a, b } => {
                let num: Rational = a.iter().map(|x| poch(x, n)).product();
                let den: Rational = b.iter().map(|x| poch(x, n)).product();
                exact(num / den)
            }
            SequenceSpec::ParamDerivative { a, b, c } => {
                let harmonic: Rational = (0..n)
                    .map(|j| (c + Rational::from_integer(j.into())).recip())
                    .sum();
                exact(harmonic * poch(a, n) / poch(b, n))
            }
            SequenceSpec::FoxWrightV {
                a,
                big_a,
                b,
                big_b,
                theta,
            } => {
                if self.is_exact() {
                    let mut v = pow(theta, -(n as i64));
                    for (x, k) in a.iter().zip(big_a) {
                        v *= poch(x, as_usize(k).unwrap() * n);
                    }
                    for (x, k) in b.iter().zip(big_b) {
                        v /= poch(x, as_usize(k).unwrap() * n);
                    }
                    exact(v)
                } else {
                    let nf = n as f64;
                    let mut l = -nf * to_f64(theta).ln();
                    for (x, k) in a.iter().zip(big_a) {
                        let (x, k) = (to_f64(x), to_f64(k));
                        l += lgamma(k * nf + x)? - lgamma(x)?;
                    }
                    for (x, k) in b.iter().zip(big_b) {
                        let (x, k) = (to_f64(x), to_f64(k));
                        l -= lgamma(k * nf + x)? - lgamma(x)?;
                    }
                    Ok(SeqTerm::Numeric(l.exp()))
                }
            }
            SequenceSpec::Reciprocal { of } => {
                let t = of.term(n)?;
                Ok(match t {
                    SeqTerm::Exact(r) if r.is_zero() => SeqTerm::Exact(r),
                    SeqTerm::Exact(r) => SeqTerm::Exact(r.recip()),
                    SeqTerm::Numeric(x) if x == 0.0 => SeqTerm::Numeric(0.0),
                    SeqTerm::Numeric(x) => SeqTerm::Numeric(1.0 / x),
                })
            }
            SequenceSpec::Shifted { by, of } => {
                if n < *by {
                    if of.is_exact() {
                        exact(Rational::zero())
                    } else {
                        Ok(SeqTerm::Numeric(0.0))
                    }
                } else {
                    of.term(n - by)
                }
            }
        }
    }

    pub fn terms(&self, n_max: usize) -> Result<Vec<SeqTerm>, FamilyError> {
        (0..=n_max).map(|n| self.term(n)).collect()
    }

    /// Compact label for reports, e.g. `constant:1`.
    pub fn label(&self) -> String {
        match self {
            SequenceSpec::List { values } => format!(
                "list:{}",
                values
                    .iter()
                    .map(crate::exact::rational::fmt_short)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            SequenceSpec::Constant { c } => {
                format!("constant:{}", crate::exact::rational::fmt_short(c))
            }
            SequenceSpec::FactorialReciprocal => "factorial-reciprocal".into(),
            SequenceSpec::Factorial => "factorial".into(),
            SequenceSpec::Geometric { ratio } => {
                format!("geometric:{}", crate::exact::rational::fmt_short(ratio))
            }
            SequenceSpec::Reciprocal { of } => format!("reciprocal({})", of.label()),
            SequenceSpec::Shifted { by, of } => format!("shifted{by}({})", of.label()),
            other => serde_json::to_string(other).unwrap_or_else(|_| "?".into()),
        }
    }
}

fn lgamma(x: f64) -> Result<f64, FamilyError> {
    ln_gamma(x).map_err(|e| FamilyError::InvalidParameter(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    LogConcave,
    LogConvex,
    /// Equality f_k² = f_{k−1} f_{k+1} throughout a positive run: constant
    /// and geometric sequences.
    Both,
    Neither,
    /// Some floating comparison fell inside the 1e−12 relative band.
    Indeterminate,
}

impl Classification {
    pub fn is_log_concave(self) -> bool {
        matches!(self, Classification::LogConcave | Classification::Both)
    }

    pub fn is_log_convex(self) -> bool {
        matches!(self, Classification::LogConvex | Classification::Both)
    }
}

const BAND: f64 = 1e-12;

/// Compare f_k² with f_{k−1} f_{k+1}; `None` inside the numeric band.
fn compare_square(prev: &SeqTerm, mid: &SeqTerm, next: &SeqTerm) -> Option<Ordering> {
    match (prev, mid, next) {
        (SeqTerm::Exact(p), SeqTerm::Exact(m), SeqTerm::Exact(n)) => Some((m * m).cmp(&(p * n))),
        _ => {
            let sq = mid.to_f64() * mid.to_f64();
            let pr = prev.to_f64() * next.to_f64();
            let scale = sq.abs().max(pr.abs());
            if (sq - pr).abs() <= BAND * scale {
                None
            } else {
                sq.partial_cmp(&pr)
            }
        }
    }
}

/// Classify `terms[offset..]`; entries before `offset` are structurally
/// absent (e.g. a series that starts at n = 1).
pub fn classify_terms(terms: &[SeqTerm], offset: usize) -> Result<Classification, FamilyError> {
    let run = terms.get(offset..).unwrap_or(&[]);
    if run.len() < 3 {
        return Err(FamilyError::InvalidParameter(
            "need at least three terms to classify".into(),
        ));
    }
    for (i, t) in run.iter().enumerate() {
        if t.to_f64() < 0.0 || t.as_exact().is_some_and(|r| r.is_negative()) {
            return Err(FamilyError::NegativeTerm { index: offset + i });
        }
    }
    if run.iter().all(SeqTerm::is_zero) {
        return Err(FamilyError::TrivialSequence);
    }
    // support interval: nonzero entries must be contiguous
    let first = run.iter().position(|t| !t.is_zero()).unwrap();
    let last = run.iter().rposition(|t| !t.is_zero()).unwrap();
    let interval = run[first..=last].iter().all(|t| !t.is_zero());
    let positive = first == 0 && last == run.len() - 1 && interval;

    let mut concave = interval;
    let mut convex = positive;
    let mut in_band = false;
    for w in run.windows(3) {
        match compare_square(&w[0], &w[1], &w[2]) {
            Some(Ordering::Less) => concave = false,
            Some(Ordering::Greater) => convex = false,
            Some(Ordering::Equal) => {}
            None => in_band = true,
        }
    }
    if in_band && (concave || convex) {
        return Ok(Classification::Indeterminate);
    }
    Ok(match (concave, convex) {
        (true, true) => Classification::Both,
        (true, false) => Classification::LogConcave,
        (false, true) => Classification::LogConvex,
        (false, false) => Classification::Neither,
    })
}

/// Classify f_{offset}..f_{n_max} with the support-interval rule for
/// log-concavity and strict positivity for log-convexity.
pub fn classify_sequence(seq: &SequenceSpec, n_max: usize) -> Result<Classification, FamilyError> {
    if n_max < 2 {
        return Err(FamilyError::InvalidParameter(
            "n_max must be at least 2".into(),
        ));
    }
    seq.validate()?;
    let terms = seq.terms(n_max)?;
    classify_terms(&terms, seq.offset().min(n_max.saturating_sub(2)))
}
