//! Products of gamma values in a normal form: a rational-function
//! coefficient times Γ(b)^e over a set of named bases b.
//!
//! Γ(b + j) with j a non-negative integer is reduced to Γ(b)·(b)_j, so two
//! products are equal when their base exponents agree and their
//! coefficients agree exactly. √π enters as Γ(1/2).

use std::collections::BTreeMap;

use super::{eq_rf, Witness};
use crate::exact::{poch, Rational, RationalFunction, Ring};

#[derive(Clone, Debug)]
pub(super) struct GammaForm {
    coef: RationalFunction,
    gammas: BTreeMap<String, i64>,
}

impl GammaForm {
    pub fn scalar(coef: RationalFunction) -> Self {
        GammaForm {
            coef,
            gammas: BTreeMap::new(),
        }
    }

    pub fn rational(r: &Rational) -> Self {
        Self::scalar(RationalFunction::from_rational(r))
    }

    /// Γ(base + shift)^power.
    pub fn gamma(label: &str, base: &RationalFunction, shift: usize, power: i64) -> Self {
        let p = poch(base, shift);
        let coef = if power >= 0 {
            (0..power).fold(RationalFunction::one_elem(), |acc, _| acc.times(&p))
        } else {
            let pos = (0..-power).fold(RationalFunction::one_elem(), |acc, _| acc.times(&p));
            pos.recip().expect("Pochhammer of a nonzero base")
        };
        GammaForm {
            coef,
            gammas: BTreeMap::from([(label.to_string(), power)]),
        }
    }

    pub fn times(&self, rhs: &GammaForm) -> GammaForm {
        let mut gammas = self.gammas.clone();
        for (k, e) in &rhs.gammas {
            *gammas.entry(k.clone()).or_insert(0) += e;
        }
        gammas.retain(|_, e| *e != 0);
        GammaForm {
            coef: self.coef.times(&rhs.coef),
            gammas,
        }
    }

    pub fn recip(&self) -> GammaForm {
        GammaForm {
            coef: self.coef.recip().expect("nonzero coefficient"),
            gammas: self.gammas.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GammaForm {
        GammaForm {
            coef: self.coef.scale(c),
            gammas: self.gammas.clone(),
        }
    }

    pub fn check_eq(&self, rhs: &GammaForm) -> Result<(), Witness> {
        if self.gammas != rhs.gammas {
            return Err(Witness::from([
                ("gamma_lhs".into(), format!("{:?}", self.gammas)),
                ("gamma_rhs".into(), format!("{:?}", rhs.gammas)),
            ]));
        }
        eq_rf(&self.coef, &rhs.coef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn duplication_at_integer_points() {
        // Γ(2n+2) = 2^{2n+1} n! Γ(n+3/2)/√π, with 2n+2 = 1 + (2n+1).
        let one = RationalFunction::from_rational(&int(1));
        let half = RationalFunction::from_rational(&rat(1, 2));
        for n in 0..6usize {
            let lhs = GammaForm::gamma("1", &one, 2 * n + 1, 1);
            let rhs = GammaForm::gamma("1", &one, n, 1)
                .times(&GammaForm::gamma("1/2", &half, n + 1, 1))
                .times(&GammaForm::gamma("1/2", &half, 0, -1))
                .scale(&crate::exact::rational::pow(&int(2), 2 * n as i64 + 1));
            assert!(lhs.check_eq(&rhs).is_ok(), "n = {n}");
        }
    }
}
