//! Standard evidence scans for the four coefficient-sign theorems.

use serde::{Deserialize, Serialize};

use super::{Expected, ScanSpec};
use crate::exact::{int, rat, Rational};
use crate::families::{FamilySpec, SequenceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// G_2 with log-convex g: every δ_m ≤ 0.
    SecondHypLogConvex,
    /// F_2 with log-concave f: every δ_m ≥ 0.
    SecondHypLogConcave,
    /// H with log-concave h and integer shifts, α+β ≤ 4: every δ_m ≥ 0.
    DiscreteLogConcave,
    /// Y with positive y: δ_0 = δ_1 = 0 and δ_m < 0 for m ≥ 2.
    NegativeCoefficients,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::SecondHypLogConvex,
        Theorem::SecondHypLogConcave,
        Theorem::DiscreteLogConcave,
        Theorem::NegativeCoefficients,
    ];

    /// The sequences scanned, five per theorem.
    pub fn sequences(self) -> Vec<SequenceSpec> {
        let hyp = |a: &[Rational], b: &[Rational]| SequenceSpec::HypTermRatio {
            a: a.to_vec(),
            b: b.to_vec(),
        };
        let geo = |r: Rational| SequenceSpec::Geometric { ratio: r };
        match self {
            Theorem::SecondHypLogConvex => vec![
                SequenceSpec::constant_one(),
                SequenceSpec::Factorial,
                hyp(&[int(1)], &[int(2)]),
                hyp(&[rat(1, 2)], &[int(1)]),
                hyp(&[int(1), int(1)], &[rat(3, 2)]),
            ],
            Theorem::SecondHypLogConcave | Theorem::DiscreteLogConcave => vec![
                SequenceSpec::constant_one(),
                SequenceSpec::FactorialReciprocal,
                hyp(&[int(2)], &[int(1)]),
                geo(rat(1, 3)),
                hyp(&[int(1)], &[rat(5, 2), int(1)]),
            ],
            Theorem::NegativeCoefficients => vec![
                SequenceSpec::constant_one(),
                SequenceSpec::FactorialReciprocal,
                SequenceSpec::Factorial,
                geo(int(3)),
                hyp(&[rat(1, 2)], &[int(1)]),
            ],
        }
    }
}

fn half_steps() -> Vec<Rational> {
    (1..=5).map(|i| rat(i, 2)).collect()
}

/// Scan specs covering one theorem at order `order`.
pub fn theorem_suite(theorem: Theorem, order: usize) -> Vec<ScanSpec> {
    let seqs = theorem.sequences();
    match theorem {
        Theorem::SecondHypLogConvex | Theorem::SecondHypLogConcave => {
            let (family, expected) = if theorem == Theorem::SecondHypLogConvex {
                (FamilySpec::G { r: 2 }, Expected::NonPositive)
            } else {
                (FamilySpec::F { r: 2 }, Expected::NonNegative)
            };
            seqs.into_iter()
                .map(|s| ScanSpec::new(family.clone(), s, &half_steps(), order, expected))
                .collect()
        }
        Theorem::DiscreteLogConcave => seqs
            .into_iter()
            .flat_map(|s| {
                // Integer pairs with α + β ≤ 4, one spec per α.
                (1..=3).map(move |a| ScanSpec {
                    alpha_grid: vec![int(a)],
                    beta_grid: (1..=4 - a).map(int).collect(),
                    ..ScanSpec::new(
                        FamilySpec::H,
                        s.clone(),
                        &half_steps(),
                        order,
                        Expected::NonNegative,
                    )
                })
            })
            .collect(),
        Theorem::NegativeCoefficients => {
            let grid = [rat(1, 2), int(1), int(2), rat(7, 2)];
            seqs.into_iter()
                .map(|s| ScanSpec {
                    strict_from: Some(2),
                    ..ScanSpec::new(FamilySpec::Y, s, &grid, order, Expected::NonPositive)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::classify_sequence;

    #[test]
    fn suite_sequences_have_the_required_shape() {
        for s in Theorem::SecondHypLogConvex.sequences() {
            assert!(
                classify_sequence(&s, 30).unwrap().is_log_convex(),
                "{}",
                s.label()
            );
        }
        for s in Theorem::SecondHypLogConcave.sequences() {
            assert!(
                classify_sequence(&s, 30).unwrap().is_log_concave(),
                "{}",
                s.label()
            );
        }
        let labels: std::collections::BTreeSet<_> = Theorem::SecondHypLogConvex
            .sequences()
            .iter()
            .map(|s| s.label())
            .collect();
        assert_eq!(labels.len(), 5);
    }

    #[test]
    fn discrete_suite_shifts_stay_small() {
        for spec in theorem_suite(Theorem::DiscreteLogConcave, 4) {
            for a in &spec.alpha_grid {
                for b in &spec.beta_grid {
                    assert!(a + b <= int(4));
                }
            }
        }
    }
}
