//! Quotients of polynomials, kept unreduced.
//!
//! No multivariate gcd is attempted: equality is decided by
//! cross-multiplication, which is exact regardless of common factors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;
use super::{ExactError, Ring};

#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let mut f = RationalFunction { num, den };
        f.normalize_constant_den();
        Ok(f)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::constant(Rational::one()),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    fn normalize_constant_den(&mut self) {
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                self.num = self.num.scale(&c.recip());
                self.den = MultiPoly::constant(Rational::one());
            }
        }
        if self.num.is_zero() {
            self.den = MultiPoly::constant(Rational::one());
        }
    }

    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ExactError> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self.num.eval(assignment)? / d)
    }

    /// Returns the quotient, or `None` when `rhs` is identically zero.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.num.is_zero() {
            return None;
        }
        let mut f = RationalFunction {
            num: self.num.mul(&rhs.den),
            den: self.den.mul(&rhs.num),
        };
        f.normalize_constant_den();
        Some(f)
    }

    pub fn recip(&self) -> Option<Self> {
        Self::from_poly(MultiPoly::constant(Rational::one())).div(self)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Ring for RationalFunction {
    fn zero_elem() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn one_elem() -> Self {
        Self::from_poly(MultiPoly::constant(Rational::one()))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(MultiPoly::constant(r.clone()))
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RationalFunction {
                num: self.num.add(&rhs.num),
                den: self.den.clone(),
            };
        }
        let mut f = RationalFunction {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        };
        f.normalize_constant_den();
        f
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut f = RationalFunction {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        };
        f.normalize_constant_den();
        f
    }
    fn negate(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }
    fn ring_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Vars};

    #[test]
    fn zero_denominator_rejected() {
        let v = Vars::new(["x"]);
        assert_eq!(
            RationalFunction::new(v.var("x"), MultiPoly::zero()).unwrap_err(),
            ExactError::ZeroDenominator
        );
    }

    #[test]
    fn unreduced_equality() {
        let v = Vars::new(["x"]);
        let x = v.var("x");
        let one = v.constant(int(1));
        // (x^2 - 1)/(x - 1) == x + 1
        let a = RationalFunction::new(x.mul(&x).sub(&one), x.sub(&one)).unwrap();
        let b = RationalFunction::from_poly(x.add(&one));
        assert_eq!(a, b);
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), int(1));
        assert_eq!(a.eval(&m), Err(ExactError::ZeroDenominator));
        m.insert("x".to_string(), int(3));
        assert_eq!(a.eval(&m).unwrap(), int(4));
    }

    #[test]
    fn field_operations() {
        let v = Vars::new(["x", "y"]);
        let f = RationalFunction::new(v.var("x"), v.var("y")).unwrap();
        let g = f.recip().unwrap();
        assert!(f.times(&g).ring_eq(&RationalFunction::one_elem()));
        assert!(f.minus(&f).is_zero_elem());
        assert!(RationalFunction::zero_elem().recip().is_none());
    }
}
