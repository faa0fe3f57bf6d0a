//! Truncated power series over a [`Ring`], generalized Turánians
//! Δ = f(μ+α)f(μ+β) − f(μ)f(μ+α+β), Gauss pairing and sign patterns.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{Rational, Ring};
use crate::families::{classify_sequence, FamilyError, FamilySpec, SeqTerm, SequenceSpec};

pub const DEFAULT_SYMBOLIC_ORDER_CAP: usize = 12;

/// Floating δ_m with |δ_m| ≤ band · (|P_m| + |Q_m|) have no trusted sign,
/// where Δ = P − Q.
pub const FLOAT_VERDICT_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("symbolic order {order} exceeds the cap {cap}")]
    SymbolicOrderCap { order: usize, cap: usize },
    #[error("entry {index} has no exact sign")]
    NotEvaluable { index: usize },
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// c_0 + c_1 x + ... + c_N x^N.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn new(coeffs: Vec<R>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![R::zero_elem(); order + 1];
        coeffs[0] = R::one_elem();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, R::plus)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, R::minus)
    }

    pub fn scale_by(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|i| op(&self.coeffs[i], &rhs.coeffs[i]))
                .collect(),
        }
    }

    /// Coefficient-wise [`Ring::ring_eq`] at equal orders.
    pub fn ring_eq(&self, rhs: &Self) -> bool {
        self.coeffs.len() == rhs.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .all(|(a, b)| a.ring_eq(b))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Ring::to_json).collect())
    }
}

/// Cauchy product truncated at the smaller order.
pub fn series_mul<R: Ring>(a: &TruncatedSeries<R>, b: &TruncatedSeries<R>) -> TruncatedSeries<R> {
    let n = a.order().min(b.order());
    let coeffs = (0..=n)
        .map(|m| {
            (0..=m).fold(R::zero_elem(), |acc, k| {
                acc.plus(&a.coeffs[k].times(&b.coeffs[m - k]))
            })
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// Fold M_0..M_m into A_k = M_k + M_{m−k} (k < m/2), A_{m/2} = M_{m/2}.
pub fn gauss_pair<R: Ring>(m: &[R]) -> Vec<R> {
    let len = m.len();
    (0..len.div_ceil(2))
        .map(|k| {
            let j = len - 1 - k;
            if j == k {
                m[k].clone()
            } else {
                m[k].plus(&m[j])
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    /// Strict sign alternations, zeros skipped.
    pub sign_changes: usize,
    /// Signs are non-decreasing: (−…−0…0+…+), any block possibly empty.
    pub matches_minus_zero_plus: bool,
}

pub fn sign_pattern_of(signs: &[Ordering]) -> SignPattern {
    let nonzero: Vec<Ordering> = signs.iter().copied().filter(|s| s.is_ne()).collect();
    SignPattern {
        sign_changes: nonzero.windows(2).filter(|w| w[0] != w[1]).count(),
        matches_minus_zero_plus: signs.windows(2).all(|w| w[0] <= w[1]),
    }
}

pub fn classify_sign_pattern<R: Ring>(seq: &[R]) -> Result<SignPattern, SeriesError> {
    let signs = seq
        .iter()
        .enumerate()
        .map(|(i, x)| x.exact_sign().ok_or(SeriesError::NotEvaluable { index: i }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sign_pattern_of(&signs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    AllNonNegative,
    AllNonPositive,
    AllZero,
    Mixed {
        first_m: usize,
    },
    /// Some δ_m has no decidable sign: symbolic, or floating inside the band.
    Indeterminate,
}

/// Sign of δ_m, `None` when undecidable.
fn coefficient_sign<R: Ring>(d: &R, p: &R, q: &R) -> Option<Ordering> {
    if let Some(s) = d.exact_sign() {
        return Some(s);
    }
    let (d, p, q) = (d.to_f64()?, p.to_f64()?, q.to_f64()?);
    if !d.is_finite() || d.abs() <= FLOAT_VERDICT_BAND * (p.abs() + q.abs()) {
        None
    } else {
        d.partial_cmp(&0.0)
    }
}

fn verdict_of(signs: &[Option<Ordering>]) -> Verdict {
    let first = signs.iter().flatten().copied().find(|s| s.is_ne());
    if let Some(s0) = first {
        if let Some(m) = signs.iter().position(|s| *s == Some(s0.reverse())) {
            return Verdict::Mixed { first_m: m };
        }
    }
    if signs.iter().any(Option::is_none) {
        return Verdict::Indeterminate;
    }
    match first {
        None => Verdict::AllZero,
        Some(Ordering::Greater) => Verdict::AllNonNegative,
        Some(_) => Verdict::AllNonPositive,
    }
}

#[derive(Clone, Debug)]
pub struct TuranianOptions {
    /// Largest order allowed when μ, α or β is symbolic.
    pub symbolic_order_cap: usize,
}

impl Default for TuranianOptions {
    fn default() -> Self {
        TuranianOptions {
            symbolic_order_cap: DEFAULT_SYMBOLIC_ORDER_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TuranianReport<R> {
    pub family: String,
    pub sequence: String,
    pub mu: R,
    pub alpha: R,
    pub beta: R,
    pub order: usize,
    /// P(μ+α)P(μ+β)/(P(μ)P(μ+α+β)) for the family's gamma prefactor P; 1 if none.
    /// `delta` is the Turánian divided by P(μ)P(μ+α+β).
    pub prefactor_ratio: R,
    pub delta: TruncatedSeries<R>,
    /// Gauss-paired A_0..A_{⌊m/2⌋} for each m; row m sums to δ_m.
    pub rows: Vec<Vec<R>>,
    /// Sign pattern of each row, `None` when some entry has no exact sign.
    pub patterns: Vec<Option<SignPattern>>,
    /// Sign of each δ_m, `None` when undecidable (see [`Verdict::Indeterminate`]).
    pub signs: Vec<Option<Ordering>>,
    pub verdict: Verdict,
}

impl<R: Ring> TuranianReport<R> {
    pub fn rows_sum_to_delta(&self) -> bool {
        self.rows.iter().zip(self.delta.coeffs()).all(|(row, d)| {
            let s = row.iter().fold(R::zero_elem(), |acc, a| acc.plus(a));
            match (s.to_f64(), d.to_f64(), d.as_rational()) {
                (Some(x), Some(y), None) => (x - y).abs() <= 1e-9 * (1.0 + y.abs()),
                _ => s.ring_eq(d),
            }
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "sequence": self.sequence,
            "mu": self.mu.to_json(),
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "order": self.order,
            "prefactor_ratio": self.prefactor_ratio.to_json(),
            "delta": self.delta.to_json(),
            "rows": self.rows.iter().map(|r| r.iter().map(Ring::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "patterns": self.patterns,
            "verdict": self.verdict,
        })
    }
}

fn is_symbolic<R: Ring>(x: &R) -> bool {
    x.as_rational().is_none() && x.to_f64().is_none()
}

/// Series coefficients f_n φ_n at the four Turánian arguments plus the
/// prefactor ratio.
struct Parts<R> {
    ratio: R,
    at_a: Vec<R>,
    at_b: Vec<R>,
    at_0: Vec<R>,
    at_ab: Vec<R>,
}

fn parts<R: Ring>(
    family: &FamilySpec,
    terms: &[SeqTerm],
    mu: &R,
    alpha: &R,
    beta: &R,
    order: usize,
) -> Result<Parts<R>, SeriesError> {
    let mu_a = mu.plus(alpha);
    let mu_b = mu.plus(beta);
    let mu_ab = mu_a.plus(beta);
    for point in [mu, &mu_a, &mu_b, &mu_ab] {
        family.check_mu_domain(point)?;
    }
    Ok(Parts {
        ratio: family.prefactor_ratio(mu, alpha, beta)?,
        at_a: family.coefficients(terms, &mu_a, order)?,
        at_b: family.coefficients(terms, &mu_b, order)?,
        at_0: family.coefficients(terms, mu, order)?,
        at_ab: family.coefficients(terms, &mu_ab, order)?,
    })
}

pub fn turanian<R: Ring>(
    family: &FamilySpec,
    seq: &SequenceSpec,
    mu: &R,
    alpha: &R,
    beta: &R,
    order: usize,
) -> Result<TuranianReport<R>, SeriesError> {
    turanian_with(
        family,
        seq,
        mu,
        alpha,
        beta,
        order,
        &TuranianOptions::default(),
    )
}

pub fn turanian_with<R: Ring>(
    family: &FamilySpec,
    seq: &SequenceSpec,
    mu: &R,
    alpha: &R,
    beta: &R,
    order: usize,
    opts: &TuranianOptions,
) -> Result<TuranianReport<R>, SeriesError> {
    if order < 2 {
        return Err(SeriesError::OrderTooSmall { min: 2, got: order });
    }
    if [mu, alpha, beta].into_iter().any(is_symbolic) && order > opts.symbolic_order_cap {
        return Err(SeriesError::SymbolicOrderCap {
            order,
            cap: opts.symbolic_order_cap,
        });
    }
    family.validate()?;
    seq.validate()?;
    let terms = seq.terms(order).map_err(SeriesError::Family)?;
    let p = parts(family, &terms, mu, alpha, beta, order)?;

    // Per order m: the products P_k = r·a_k b_{m−k} and Q_k = c_k d_{m−k},
    // shared between the Gauss-paired row and the coefficient sums.
    let scaled = !p.ratio.as_rational().is_some_and(|r| r.is_one());
    let per_order: Vec<(Vec<R>, R, R)> = (0..=order)
        .into_par_iter()
        .map(|m| {
            let mut plus = R::zero_elem();
            let mut minus = R::zero_elem();
            let paired: Vec<R> = (0..=m)
                .map(|k| {
                    let mut pk = p.at_a[k].times(&p.at_b[m - k]);
                    if scaled {
                        pk = p.ratio.times(&pk);
                    }
                    let qk = p.at_0[k].times(&p.at_ab[m - k]);
                    plus = plus.plus(&pk);
                    minus = minus.plus(&qk);
                    pk.minus(&qk)
                })
                .collect();
            (gauss_pair(&paired), plus, minus)
        })
        .collect();
    let mut rows = Vec::with_capacity(order + 1);
    let mut plus = Vec::with_capacity(order + 1);
    let mut minus = Vec::with_capacity(order + 1);
    for (row, pm, qm) in per_order {
        rows.push(row);
        plus.push(pm);
        minus.push(qm);
    }
    let delta = TruncatedSeries {
        coeffs: plus.iter().zip(&minus).map(|(a, b)| a.minus(b)).collect(),
    };
    let patterns = rows
        .iter()
        .map(|row| classify_sign_pattern(row).ok())
        .collect();
    let signs: Vec<Option<Ordering>> = (0..=order)
        .map(|m| coefficient_sign(delta.coeff(m), &plus[m], &minus[m]))
        .collect();

    Ok(TuranianReport {
        family: family.to_string(),
        sequence: seq.label(),
        mu: mu.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        order,
        prefactor_ratio: p.ratio,
        delta,
        rows,
        patterns,
        verdict: verdict_of(&signs),
        signs,
    })
}

/// Δ_μ(α+δ, β) = Δ_μ(α, β+δ) + Δ_{μ+α}(δ, β−α), coefficient-wise and exact.
///
/// With a gamma prefactor each side is stored divided by a different
/// P(μ')P(μ'+α'+β'), so the last term is rescaled by the prefactor ratio at
/// (μ; α, β+δ).
pub fn check_turanian_shift_identity(
    family: &FamilySpec,
    seq: &SequenceSpec,
    mu: &Rational,
    alpha: &Rational,
    beta: &Rational,
    shift: &Rational,
    order: usize,
) -> Result<bool, SeriesError> {
    if alpha.is_negative() || beta < alpha || shift.is_negative() {
        return Err(SeriesError::Precondition(format!(
            "need beta >= alpha >= 0 and shift >= 0, got alpha = {alpha}, beta = {beta}, shift = {shift}"
        )));
    }
    let lhs = turanian(family, seq, mu, &(alpha + shift), beta, order)?.delta;
    let first = turanian(family, seq, mu, alpha, &(beta + shift), order)?.delta;
    let second = turanian(family, seq, &(mu + alpha), shift, &(beta - alpha), order)?.delta;
    let scale = family.prefactor_ratio(mu, alpha, &(beta + shift))?;
    Ok(lhs.ring_eq(&first.add(&second.scale_by(&scale))))
}

/// Sampled witness of the key lemma: for {f_k} log-concave (log-convex) and
/// weights A_0..A_{⌊n/2⌋} on the (−0+) template with Σ A_k ≥ 0 (≤ 0),
/// Σ_k f_k f_{n−k} A_k ≥ 0 (≤ 0). Returns whether the conclusion holds.
pub fn check_keylemma_property(
    seq: &SequenceSpec,
    weights: &[Rational],
    n: usize,
) -> Result<bool, SeriesError> {
    if weights.len() != n / 2 + 1 {
        return Err(SeriesError::Precondition(format!(
            "need {} weights for n = {n}, got {}",
            n / 2 + 1,
            weights.len()
        )));
    }
    if weights.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if !classify_sign_pattern(weights)?.matches_minus_zero_plus {
        return Err(SeriesError::Precondition(
            "weights do not follow the (-0+) sign template".into(),
        ));
    }
    let class = classify_sequence(seq, n.max(2))?;
    let total: Rational = weights.iter().sum();
    let concave = if class.is_log_concave() && !total.is_negative() {
        true
    } else if class.is_log_convex() && !total.is_positive() {
        false
    } else {
        return Err(SeriesError::Precondition(format!(
            "sequence is {class:?} and the weights sum to {total}"
        )));
    };
    let f = seq
        .terms(n)?
        .into_iter()
        .map(|t| {
            t.as_exact()
                .cloned()
                .ok_or_else(|| SeriesError::Precondition("sequence terms must be exact".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sum: Rational = weights
        .iter()
        .enumerate()
        .map(|(k, a)| &f[k] * &f[n - k] * a)
        .sum();
    Ok(if concave {
        !sum.is_negative()
    } else {
        !sum.is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, MultiPoly, Vars};

    fn one() -> SequenceSpec {
        SequenceSpec::constant_one()
    }

    #[test]
    fn cauchy_product() {
        let a = TruncatedSeries::new(vec![int(1), int(1), int(0)]).unwrap();
        let sq = series_mul(&a, &a);
        assert_eq!(sq.coeffs(), &[int(1), int(2), int(1)]);
        assert_eq!(series_mul(&a, &TruncatedSeries::one(5)), a);
        assert_eq!(series_mul(&a, &TruncatedSeries::one(1)).order(), 1);
    }

    #[test]
    fn pairing_and_patterns() {
        let p = gauss_pair(&[int(1), int(2), int(3), int(4)]);
        assert_eq!(p, vec![int(5), int(5)]);
        assert_eq!(gauss_pair(&[int(1), int(2), int(3)]), vec![int(4), int(2)]);
        assert_eq!(gauss_pair(&[int(7)]), vec![int(7)]);

        let s = classify_sign_pattern(&[int(-1), int(-1), int(0), int(2), int(3)]).unwrap();
        assert_eq!(s.sign_changes, 1);
        assert!(s.matches_minus_zero_plus);
        let s = classify_sign_pattern(&[int(1), int(-1), int(1)]).unwrap();
        assert_eq!((s.sign_changes, s.matches_minus_zero_plus), (2, false));
        let s = classify_sign_pattern(&[int(0), int(0), int(0)]).unwrap();
        assert_eq!((s.sign_changes, s.matches_minus_zero_plus), (0, true));
        let s = classify_sign_pattern(&[int(-1), int(0), int(-1), int(1)]).unwrap();
        assert_eq!((s.sign_changes, s.matches_minus_zero_plus), (1, false));
        let v = Vars::new(["mu"]);
        assert!(classify_sign_pattern(&[v.var("mu")]).is_err());
    }

    #[test]
    fn ks_family_is_log_neutral() {
        let r = turanian(&FamilySpec::KS, &one(), &rat(3, 2), &rat(1, 3), &int(2), 20).unwrap();
        assert_eq!(r.verdict, Verdict::AllZero);
        assert!(r.delta.coeffs().iter().all(Zero::is_zero));
        assert!(r.rows_sum_to_delta());
    }

    #[test]
    fn psi3_first_coefficient() {
        let r = turanian(
            &FamilySpec::G { r: 3 },
            &one(),
            &int(0),
            &int(1),
            &int(1),
            4,
        )
        .unwrap();
        assert_eq!(r.delta.coeff(1), &int(-2));
        assert!(r.rows_sum_to_delta());
    }

    #[test]
    fn symbolic_turanian_and_cap() {
        let v = Vars::new(["mu", "alpha", "beta"]);
        let (mu, a, b) = (v.var("mu"), v.var("alpha"), v.var("beta"));
        let r = turanian(&FamilySpec::G { r: 3 }, &one(), &mu, &a, &b, 2).unwrap();
        let expected = v
            .parse("-1/2*alpha*beta*(alpha + beta + 2*mu + 2)")
            .unwrap();
        assert_eq!(r.delta.coeff(1), &expected);
        assert_eq!(r.verdict, Verdict::Indeterminate);
        let err = turanian(&FamilySpec::KS, &one(), &mu, &a, &b, 13).unwrap_err();
        assert_eq!(err, SeriesError::SymbolicOrderCap { order: 13, cap: 12 });
        let sym: Result<TuranianReport<MultiPoly>, _> = turanian_with(
            &FamilySpec::KS,
            &one(),
            &mu,
            &a,
            &b,
            13,
            &TuranianOptions {
                symbolic_order_cap: 13,
            },
        );
        assert_eq!(sym.unwrap().verdict, Verdict::AllZero);
    }

    #[test]
    fn gamma_prefactor_matches_plain_series() {
        // Γ(μ+n) = Γ(μ)(μ)_n: GammaSeries with f_n = 1/n! is Γ(μ)(1−x)^{−μ}.
        let seq = SequenceSpec::FactorialReciprocal;
        let r = turanian(
            &FamilySpec::GammaSeries { r: 1 },
            &seq,
            &int(1),
            &int(1),
            &int(2),
            8,
        )
        .unwrap();
        // Γ(2)Γ(3)/(Γ(1)Γ(4)) = 1/3, so δ = (1/3 − 1)(1−x)^{−5}
        assert_eq!(r.prefactor_ratio, rat(1, 3));
        let ks = turanian(&FamilySpec::KS, &one(), &int(1), &int(1), &int(2), 8).unwrap();
        assert!(ks.verdict == Verdict::AllZero);
        let expected =
            crate::families::family_coefficient(&FamilySpec::KS, &one(), 3, &int(5)).unwrap();
        assert_eq!(r.delta.coeff(3), &(rat(-2, 3) * expected));
        assert_eq!(r.verdict, Verdict::AllNonPositive);
    }

    #[test]
    fn float_band_and_mixed() {
        assert_eq!(
            verdict_of(&[Some(Ordering::Equal), None]),
            Verdict::Indeterminate
        );
        assert_eq!(
            verdict_of(&[Some(Ordering::Less), None, Some(Ordering::Greater)]),
            Verdict::Mixed { first_m: 2 }
        );
        let r: TuranianReport<f64> =
            turanian(&FamilySpec::KS, &one(), &1.5, &0.25, &0.5, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        let y: TuranianReport<f64> =
            turanian(&FamilySpec::YGamma, &one(), &0.7, &0.5, &0.5, 10).unwrap();
        assert!(y.rows_sum_to_delta());
    }

    #[test]
    fn shift_identity_examples() {
        let g2 = FamilySpec::G { r: 2 };
        assert!(
            check_turanian_shift_identity(&g2, &one(), &int(1), &int(1), &int(2), &int(1), 15)
                .unwrap()
        );
        assert!(check_turanian_shift_identity(
            &FamilySpec::Y,
            &one(),
            &rat(1, 2),
            &int(1),
            &int(1),
            &int(2),
            12
        )
        .unwrap());
        assert!(
            check_turanian_shift_identity(&g2, &one(), &int(1), &int(1), &int(2), &int(0), 6)
                .unwrap()
        );
        assert!(check_turanian_shift_identity(
            &FamilySpec::YGamma,
            &one(),
            &rat(1, 3),
            &int(1),
            &int(2),
            &int(1),
            8
        )
        .unwrap());
        assert!(
            check_turanian_shift_identity(&g2, &one(), &int(1), &int(2), &int(1), &int(1), 6)
                .is_err()
        );
    }

    #[test]
    fn keylemma_examples() {
        assert!(check_keylemma_property(&one(), &[int(-1), int(2)], 2).unwrap());
        assert!(check_keylemma_property(&one(), &[int(0), int(0)], 3).unwrap());
        let inv = SequenceSpec::FactorialReciprocal;
        assert!(check_keylemma_property(&inv, &[int(-3), int(2), int(2)], 4).unwrap());
        assert!(check_keylemma_property(&inv, &[int(2), int(-3), int(2)], 4).is_err());
        assert!(check_keylemma_property(&inv, &[int(-3), int(1)], 4).is_err());
    }

    #[test]
    fn report_json_uses_pq_strings() {
        let r = turanian(
            &FamilySpec::G { r: 3 },
            &one(),
            &int(0),
            &int(1),
            &int(1),
            3,
        )
        .unwrap();
        let j = r.to_json();
        assert_eq!(j["delta"][1], "-2/1");
        assert_eq!(j["mu"], "0/1");
        assert!(j["verdict"].is_object() || j["verdict"].is_string());
    }
}
