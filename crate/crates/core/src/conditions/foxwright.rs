//! Sufficient conditions for log-convexity of the Fox-Wright term sequence
//! V(n) = Π Γ(A_i n + a_i) / (θ^n Π Γ(B_j n + b_j)).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::special::ln_gamma;
use super::ConditionError;
use crate::exact::rational::serde_pq;
use crate::exact::{int, rat, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoxWrightParams {
    #[serde(with = "serde_pq::vec")]
    pub a: Vec<Rational>,
    #[serde(rename = "A", with = "serde_pq::vec")]
    pub big_a: Vec<Rational>,
    #[serde(with = "serde_pq::vec")]
    pub b: Vec<Rational>,
    #[serde(rename = "B", with = "serde_pq::vec")]
    pub big_b: Vec<Rational>,
    #[serde(with = "serde_pq")]
    pub theta: Rational,
}

impl FoxWrightParams {
    pub fn validate(&self) -> Result<(), ConditionError> {
        if self.a.len() != self.big_a.len() || self.b.len() != self.big_b.len() {
            return Err(ConditionError::Dimension(format!(
                "a/A have lengths {}/{}, b/B have lengths {}/{}",
                self.a.len(),
                self.big_a.len(),
                self.b.len(),
                self.big_b.len()
            )));
        }
        if self.a.is_empty() && self.b.is_empty() {
            return Err(ConditionError::Parameter("p and q are both zero".into()));
        }
        let all = [
            ("a", &self.a),
            ("A", &self.big_a),
            ("b", &self.b),
            ("B", &self.big_b),
        ];
        for (name, xs) in all {
            if let Some(i) = xs.iter().position(|x| !x.is_positive()) {
                return Err(ConditionError::Parameter(format!(
                    "{name}[{i}] = {} is not positive",
                    xs[i]
                )));
            }
        }
        if !self.theta.is_positive() {
            return Err(ConditionError::Parameter("theta must be positive".into()));
        }
        Ok(())
    }

    /// Σ B_j − Σ A_i.
    pub fn delta_conv(&self) -> Rational {
        self.big_b.iter().sum::<Rational>() - self.big_a.iter().sum::<Rational>()
    }

    /// ρ = Π A_i^{A_i} Π B_j^{−B_j}, through logarithms.
    pub fn rho(&self) -> f64 {
        let l: f64 = self
            .big_a
            .iter()
            .map(|x| {
                let x = to_f64(x);
                x * x.ln()
            })
            .sum::<f64>()
            - self
                .big_b
                .iter()
                .map(|x| {
                    let x = to_f64(x);
                    x * x.ln()
                })
                .sum::<f64>();
        l.exp()
    }

    /// ρ as a direct product of powers.
    pub fn rho_direct(&self) -> f64 {
        let num: f64 = self
            .big_a
            .iter()
            .map(|x| to_f64(x).powf(to_f64(x)))
            .product();
        let den: f64 = self
            .big_b
            .iter()
            .map(|x| to_f64(x).powf(to_f64(x)))
            .product();
        num / den
    }

    pub fn ln_v(&self, n: f64) -> Result<f64, ConditionError> {
        let mut acc = -n * to_f64(&self.theta).ln();
        for (a, big_a) in self.a.iter().zip(&self.big_a) {
            acc += ln_gamma(to_f64(big_a) * n + to_f64(a))?;
        }
        for (b, big_b) in self.b.iter().zip(&self.big_b) {
            acc -= ln_gamma(to_f64(big_b) * n + to_f64(b))?;
        }
        Ok(acc)
    }

    /// P(u) of the complete-monotonicity criterion.
    pub fn p_of_u(&self, u: f64) -> f64 {
        let part = |xs: &[Rational], scales: &[Rational]| -> f64 {
            xs.iter()
                .zip(scales)
                .map(|(x, s)| {
                    let (x, s) = (to_f64(x), to_f64(s));
                    (-x * u / s).exp() / -(-u / s).exp_m1()
                })
                .sum()
        };
        part(&self.a, &self.big_a) - part(&self.b, &self.big_b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub detail: String,
    pub at: BTreeMap<String, f64>,
}

impl Witness {
    fn new(detail: impl Into<String>, at: &[(&str, f64)]) -> Self {
        Witness {
            detail: detail.into(),
            at: at.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Holds {
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    /// Evidence on a finite grid, never a proof.
    HoldsOnGrid {
        points: usize,
        min_value: f64,
    },
    Fails {
        witness: Witness,
    },
    Inconclusive {
        reason: String,
    },
}

impl CheckStatus {
    pub fn holds(&self) -> bool {
        matches!(
            self,
            CheckStatus::Holds { .. } | CheckStatus::HoldsOnGrid { .. }
        )
    }

    fn plain() -> Self {
        CheckStatus::Holds { note: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub params: FoxWrightParams,
    pub delta_conv: f64,
    pub rho: f64,
    pub checks: BTreeMap<String, CheckStatus>,
    pub v_logconvex_numeric: CheckStatus,
    pub n_max: usize,
}

impl ConditionReport {
    pub fn check(&self, name: &str) -> &CheckStatus {
        &self.checks[name]
    }

    /// Any of the combinations nec1+P(u), nec1+BCK39, nec1+BCK37, or BCK310.
    pub fn sufficient_condition_holds(&self) -> bool {
        let nec1 = self.check(NEC1).holds();
        nec1 && (self.check(PU_POSITIVE).holds()
            || self.check(BCK39).holds()
            || self.check(BCK37).holds())
            || self.check(BCK310).holds()
    }
}

pub const NEC1: &str = "nec1";
pub const PU_POSITIVE: &str = "pu_positive";
pub const BCK39: &str = "bck39";
pub const BCK37: &str = "bck37";
pub const BCK310: &str = "bck310";

/// About 240 points on (0, 40], dense near 0.
pub fn default_u_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..80)
        .map(|i| 10f64.powf(-6.0 + 5.0 * i as f64 / 79.0))
        .collect();
    grid.extend((1..=160).map(|i| 0.1 + (40.0 - 0.1) * i as f64 / 160.0));
    grid
}

pub fn foxwright_conditions(
    p: &FoxWrightParams,
    u_grid: &[f64],
    n_max: usize,
) -> Result<ConditionReport, ConditionError> {
    p.validate()?;
    if u_grid.is_empty() || u_grid.iter().any(|&u| u <= 0.0 || !u.is_finite()) {
        return Err(ConditionError::Parameter(
            "u grid must be nonempty and inside (0, inf)".into(),
        ));
    }
    let mut checks = BTreeMap::new();
    checks.insert(NEC1.to_string(), nec1(p));
    checks.insert(PU_POSITIVE.to_string(), pu_positive(p, u_grid));
    checks.insert(BCK39.to_string(), bck39(p));
    checks.insert(BCK37.to_string(), bck37(p));
    checks.insert(BCK310.to_string(), bck310(p));
    Ok(ConditionReport {
        params: p.clone(),
        delta_conv: to_f64(&p.delta_conv()),
        rho: p.rho(),
        checks,
        v_logconvex_numeric: v_logconvex_numeric(p, n_max)?,
        n_max,
    })
}

fn nec1(p: &FoxWrightParams) -> CheckStatus {
    let sum_a: f64 = p.big_a.iter().map(to_f64).sum();
    let sum_b: f64 = p.big_b.iter().map(to_f64).sum();
    if (sum_a - sum_b).abs() > 1e-12 {
        return CheckStatus::Fails {
            witness: Witness::new(
                "sum of A differs from sum of B",
                &[("sum_A", sum_a), ("sum_B", sum_b)],
            ),
        };
    }
    let rho = p.rho();
    let theta = to_f64(&p.theta);
    if rho > theta * (1.0 + 1e-12) {
        return CheckStatus::Fails {
            witness: Witness::new("rho exceeds theta", &[("rho", rho), ("theta", theta)]),
        };
    }
    CheckStatus::plain()
}

fn pu_positive(p: &FoxWrightParams, grid: &[f64]) -> CheckStatus {
    let values: Vec<f64> = grid.iter().map(|&u| p.p_of_u(u)).collect();
    let mut worst = (values[0], grid[0]);
    for (i, (&v, &u)) in values.iter().zip(grid).enumerate() {
        if v < worst.0 {
            worst = (v, u);
        }
        if v <= 0.0 {
            return CheckStatus::Fails {
                witness: Witness::new("P(u) <= 0 on the grid", &[("u", u), ("P", v)]),
            };
        }
        // refine local dips between grid neighbours
        if i > 0 && i + 1 < grid.len() && v <= values[i - 1] && v <= values[i + 1] {
            let (u_min, v_min) = golden_min(|t| p.p_of_u(t), grid[i - 1], grid[i + 1]);
            if v_min <= 0.0 {
                return CheckStatus::Fails {
                    witness: Witness::new(
                        "P(u) <= 0 after refinement",
                        &[("u", u_min), ("P", v_min)],
                    ),
                };
            }
            if v_min < worst.0 {
                worst = (v_min, u_min);
            }
        }
    }
    CheckStatus::HoldsOnGrid {
        points: grid.len(),
        min_value: worst.0,
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Σ_k B_k ≥ B_j Σ_k a_k / (b_j − 1) for every j; needs every b_j > 1.
fn bck39(p: &FoxWrightParams) -> CheckStatus {
    if let Some(j) = p.b.iter().position(|b| *b <= Rational::one()) {
        return CheckStatus::Inconclusive {
            reason: format!("b[{j}] = {} is not greater than 1", p.b[j]),
        };
    }
    let sum_big_b: Rational = p.big_b.iter().sum();
    let sum_a: Rational = p.a.iter().sum();
    for (j, (b, big_b)) in p.b.iter().zip(&p.big_b).enumerate() {
        let rhs = big_b * &sum_a / (b - Rational::one());
        if sum_big_b < rhs {
            return CheckStatus::Fails {
                witness: Witness::new(
                    format!("inequality fails for j = {j}"),
                    &[("sum_B", to_f64(&sum_big_b)), ("rhs", to_f64(&rhs))],
                ),
            };
        }
    }
    CheckStatus::plain()
}

/// Weights ω with A_i ≥ ω_i Σ B and b_j/B_j ≥ Σ ω_i a_i/A_i.
///
/// The best weights minimize Σ ω_i a_i/A_i under 0 ≤ ω_i ≤ A_i/ΣB and
/// Σ ω_i = 1, a fractional knapsack solved exactly by filling the cheapest
/// ratios first.
fn bck37(p: &FoxWrightParams) -> CheckStatus {
    if p.a.is_empty() {
        return CheckStatus::Inconclusive {
            reason: "no numerator parameters, weights cannot sum to 1".into(),
        };
    }
    let sum_big_b: Rational = p.big_b.iter().sum();
    if sum_big_b.is_zero() {
        return CheckStatus::Inconclusive {
            reason: "no denominator parameters".into(),
        };
    }
    let mut order: Vec<usize> = (0..p.a.len()).collect();
    let cost = |i: usize| &p.a[i] / &p.big_a[i];
    order.sort_by(|&i, &j| cost(i).cmp(&cost(j)).then(i.cmp(&j)));
    let mut weights = vec![Rational::zero(); p.a.len()];
    let mut left = Rational::one();
    for &i in &order {
        if left.is_zero() {
            break;
        }
        let cap = &p.big_a[i] / &sum_big_b;
        let w = if cap < left { cap } else { left.clone() };
        left -= &w;
        weights[i] = w;
    }
    if left.is_positive() {
        return CheckStatus::Fails {
            witness: Witness::new(
                "weight caps A_i / sum(B) cannot reach 1",
                &[("shortfall", to_f64(&left))],
            ),
        };
    }
    let total: Rational = weights.iter().zip(0..).map(|(w, i)| w * cost(i)).sum();
    for (j, (b, big_b)) in p.b.iter().zip(&p.big_b).enumerate() {
        let lhs = b / big_b;
        if lhs < total {
            return CheckStatus::Fails {
                witness: Witness::new(
                    format!("b_{j}/B_{j} below the optimal weighted sum"),
                    &[("lhs", to_f64(&lhs)), ("weighted", to_f64(&total))],
                ),
            };
        }
    }
    let shown: Vec<String> = weights.iter().map(crate::exact::fmt_pq).collect();
    CheckStatus::Holds {
        note: Some(format!("weights [{}]", shown.join(", "))),
    }
}

/// Block multiplicities: entries equal to 1/α must appear in multiples of α.
fn blocks(xs: &[Rational]) -> Option<Vec<u64>> {
    let mut counts: BTreeMap<Rational, u64> = BTreeMap::new();
    for x in xs {
        *counts.entry(x.clone()).or_default() += 1;
    }
    let mut out = Vec::new();
    for (v, c) in counts {
        let inv = v.recip();
        if !inv.is_integer() {
            return None;
        }
        let alpha = crate::exact::rational::as_usize(&inv)? as u64;
        if alpha == 0 || c % alpha != 0 {
            return None;
        }
        out.extend(std::iter::repeat_n(alpha, (c / alpha) as usize));
    }
    out.sort();
    Some(out)
}

/// Block-structured parameters: A made of α_j copies of 1/α_j, B of β_j
/// copies of 1/β_j, a common a ≥ 1 and θ = Π β_j/α_j.
fn bck310(p: &FoxWrightParams) -> CheckStatus {
    let inconclusive = |reason: &str| CheckStatus::Inconclusive {
        reason: reason.to_string(),
    };
    let Some(first) = p.a.first().or(p.b.first()) else {
        return inconclusive("no parameters");
    };
    if p.a.iter().chain(&p.b).any(|x| x != first) {
        return inconclusive("a and b entries are not all equal");
    }
    let (Some(alphas), Some(betas)) = (blocks(&p.big_a), blocks(&p.big_b)) else {
        return inconclusive("A or B is not made of blocks of 1/n repeated n times");
    };
    if alphas.len() != betas.len() {
        return inconclusive("A and B have different numbers of blocks");
    }
    if *first < Rational::one() {
        return CheckStatus::Fails {
            witness: Witness::new("common parameter below 1", &[("a", to_f64(first))]),
        };
    }
    let theta: Rational = alphas
        .iter()
        .zip(&betas)
        .map(|(&al, &be)| rat(be as i64, al as i64))
        .product();
    if theta != p.theta {
        return CheckStatus::Fails {
            witness: Witness::new(
                "theta differs from prod beta_j/alpha_j",
                &[("theta", to_f64(&p.theta)), ("expected", to_f64(&theta))],
            ),
        };
    }
    let (mut sa, mut sb) = (0u64, 0u64);
    for (k, (al, be)) in alphas.iter().zip(&betas).enumerate() {
        sa += al;
        sb += be;
        if sa > sb {
            return CheckStatus::Fails {
                witness: Witness::new(
                    format!("prefix sum of alpha exceeds beta at k = {}", k + 1),
                    &[("alpha_sum", sa as f64), ("beta_sum", sb as f64)],
                ),
            };
        }
    }
    CheckStatus::Holds {
        note: Some(format!("alpha = {alphas:?}, beta = {betas:?}")),
    }
}

/// ln V(n+1) + ln V(n−1) − 2 ln V(n) ≥ −1e−9 for 1 ≤ n < n_max.
pub fn v_logconvex_numeric(
    p: &FoxWrightParams,
    n_max: usize,
) -> Result<CheckStatus, ConditionError> {
    let logs: Vec<f64> = (0..=n_max)
        .map(|n| p.ln_v(n as f64))
        .collect::<Result<_, _>>()?;
    for n in 1..n_max {
        let d2 = logs[n + 1] + logs[n - 1] - 2.0 * logs[n];
        if d2 < -1e-9 {
            return Ok(CheckStatus::Fails {
                witness: Witness::new(
                    "second difference of ln V is negative",
                    &[("n", n as f64), ("d2", d2)],
                ),
            });
        }
    }
    Ok(CheckStatus::plain())
}

fn small_rational<R: Rng>(rng: &mut R, max_num: i64, den: i64) -> Rational {
    rat(rng.gen_range(1..=max_num), den)
}

/// A random parameter set with Σ A = Σ B and a rational θ ≥ ρ.
///
/// Every fourth instance is block-structured instead.
pub fn random_admissible<R: Rng>(rng: &mut R, index: usize) -> FoxWrightParams {
    if index % 4 == 3 {
        let p = rng.gen_range(1..=2);
        let mut alphas: Vec<i64> = (0..p).map(|_| rng.gen_range(1..=2)).collect();
        alphas.sort();
        let mut betas: Vec<i64> = alphas.iter().map(|a| a + rng.gen_range(0..=1)).collect();
        betas.sort();
        let a = int(rng.gen_range(1..=3));
        let expand = |xs: &[i64]| -> Vec<Rational> {
            xs.iter()
                .flat_map(|&n| std::iter::repeat_n(rat(1, n), n as usize))
                .collect()
        };
        let big_a = expand(&alphas);
        let big_b = expand(&betas);
        let theta = alphas
            .iter()
            .zip(&betas)
            .map(|(&al, &be)| rat(be, al))
            .product();
        return FoxWrightParams {
            a: vec![a.clone(); big_a.len()],
            big_a,
            b: vec![a; big_b.len()],
            big_b,
            theta,
        };
    }
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(1..=3);
    let big_a: Vec<Rational> = (0..p).map(|_| small_rational(rng, 8, 4)).collect();
    let raw_b: Vec<Rational> = (0..q).map(|_| small_rational(rng, 8, 4)).collect();
    let scale = big_a.iter().sum::<Rational>() / raw_b.iter().sum::<Rational>();
    let big_b: Vec<Rational> = raw_b.iter().map(|x| x * &scale).collect();
    let a = (0..p).map(|_| small_rational(rng, 12, 4)).collect();
    let b = (0..q).map(|_| small_rational(rng, 16, 4)).collect();
    let mut params = FoxWrightParams {
        a,
        big_a,
        b,
        big_b,
        theta: int(1),
    };
    let rho = params.rho();
    let slack = 1.0 + rng.gen_range(0.0..0.5);
    params.theta = rat(((rho * slack * 1000.0).ceil() as i64).max(1), 1000);
    params
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> FoxWrightParams {
        FoxWrightParams {
            a: vec![int(1)],
            big_a: vec![int(1)],
            b: vec![int(2)],
            big_b: vec![int(1)],
            theta: int(1),
        }
    }

    // The weighted condition alone does not force P(0+) >= 0: here
    // V(n) is proportional to Γ(n+1)/(Γ(n+1/2) (θ/4)^n), which is log-concave.
    #[test]
    fn weighted_condition_admits_non_log_convex_v() {
        let p = FoxWrightParams {
            a: vec![int(1)],
            big_a: vec![int(2)],
            b: vec![rat(1, 2), rat(1, 2)],
            big_b: vec![int(1), int(1)],
            theta: int(4),
        };
        let rep = foxwright_conditions(&p, &default_u_grid(), 40).unwrap();
        assert!(rep.check(NEC1).holds());
        assert!(rep.check(BCK37).holds());
        assert!(!rep.check(PU_POSITIVE).holds());
        assert!(!v_logconvex_numeric(&p, 40).unwrap().holds());
    }

    #[test]
    fn worked_example_reports() {
        let p = worked_example();
        assert_eq!(p.rho(), 1.0);
        let r = foxwright_conditions(&p, &default_u_grid(), 40).unwrap();
        assert!(r.check(NEC1).holds());
        assert!(matches!(
            r.check(PU_POSITIVE),
            CheckStatus::HoldsOnGrid { .. }
        ));
        // P(u) = e^{-u} by algebra
        for u in [0.01, 0.5, 3.0] {
            assert!((p.p_of_u(u) - (-u).exp()).abs() < 1e-12);
        }
        assert!(r.v_logconvex_numeric.holds());
        assert!(r.sufficient_condition_holds());
    }

    #[test]
    fn bck39_needs_b_above_one() {
        let mut p = worked_example();
        p.b = vec![int(1)];
        assert!(matches!(bck39(&p), CheckStatus::Inconclusive { .. }));
    }

    #[test]
    fn block_form_example() {
        let p = FoxWrightParams {
            a: vec![int(1)],
            big_a: vec![int(1)],
            b: vec![int(1), int(1)],
            big_b: vec![rat(1, 2), rat(1, 2)],
            theta: int(2),
        };
        assert!(bck310(&p).holds());
        assert!(v_logconvex_numeric(&p, 40).unwrap().holds());
    }

    #[test]
    fn grid_shape() {
        let g = default_u_grid();
        assert!(g.len() >= 200);
        assert!(g[0] > 0.0 && g[0] < 1e-5);
        assert!((g.last().unwrap() - 40.0).abs() < 1e-12);
    }
}
