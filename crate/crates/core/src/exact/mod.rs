//! Exact arithmetic: rationals, sparse multivariate polynomials and rational
//! functions, plus the [`Ring`] abstraction the series engine is generic over.

mod parse;
mod poly;
mod ratfun;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use poly::{poch_poly, MultiPoly, Vars};
pub use ratfun::RationalFunction;
pub use rational::{fmt_pq, int, parse_rational, rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse polynomial `{text}` at byte {pos}: {reason}")]
    Parse {
        text: String,
        pos: usize,
        reason: String,
    },
}

/// Coefficient ring of a truncated series.
///
/// Implemented by [`Rational`] (exact numeric mode), [`MultiPoly`] and
/// [`RationalFunction`] (symbolic modes) and `f64` (floating mode, used for
/// families whose coefficients involve irrational gamma ratios).
pub trait Ring: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Only the floating ring accepts floats.
    fn from_f64(_x: f64) -> Option<Self> {
        None
    }
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `None` when `rhs` is zero or the quotient is not representable.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    /// The exact value, when the element is a rational constant.
    fn as_rational(&self) -> Option<Rational>;
    fn to_f64(&self) -> Option<f64> {
        self.as_rational().map(|r| to_f64(&r))
    }
    fn ring_eq(&self, other: &Self) -> bool;

    /// Exact sign; `None` for symbolic or floating elements.
    fn exact_sign(&self) -> Option<Ordering> {
        self.as_rational().map(|r| r.cmp(&Rational::zero()))
    }

    fn scale(&self, c: &Rational) -> Self {
        self.times(&Self::from_rational(c))
    }

    fn plus_rational(&self, c: &Rational) -> Self {
        self.plus(&Self::from_rational(c))
    }

    /// Report encoding: rationals as `"p/q"`, polynomials as their canonical
    /// text, floats as numbers.
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl Ring for Rational {
    fn zero_elem() -> Self {
        <Rational as Zero>::zero()
    }
    fn one_elem() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(fmt_pq(self))
    }
    fn ring_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn exact_sign(&self) -> Option<Ordering> {
        Some(if self.is_negative() {
            Ordering::Less
        } else if Zero::is_zero(self) {
            Ordering::Equal
        } else {
            Ordering::Greater
        })
    }
}

impl Ring for f64 {
    fn zero_elem() -> Self {
        0.0
    }
    fn one_elem() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(x)
    }
    fn is_zero_elem(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn to_f64(&self) -> Option<f64> {
        Some(*self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
    fn ring_eq(&self, other: &Self) -> bool {
        self == other
    }
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)` in any ring.
pub fn poch<R: Ring>(x: &R, n: usize) -> R {
    let mut acc = R::one_elem();
    for j in 0..n {
        acc = acc.times(&x.plus_rational(&int(j as i64)));
    }
    acc
}

/// k-Pochhammer `(x)_{n,k} = x (x+k) ... (x+(n-1)k)`.
pub fn poch_k<R: Ring>(x: &R, n: usize, k: &Rational) -> R {
    let mut acc = R::one_elem();
    for j in 0..n {
        acc = acc.times(&x.plus_rational(&(k * int(j as i64))));
    }
    acc
}
