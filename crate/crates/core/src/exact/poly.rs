//! Sparse multivariate polynomials over [`Rational`].
//!
//! A polynomial carries its variable list; exponent vectors have exactly one
//! slot per variable. Operands declared over different variable lists are
//! lifted to the union of both lists before combining, so equality and
//! arithmetic never depend on how a value was constructed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_short, int, Rational};
use super::{ExactError, Ring};

/// An ordered, shared list of variable names.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "variable `{n}` declared twice");
        }
        Vars(names.into())
    }

    fn empty() -> Self {
        Vars(Arc::from(Vec::<String>::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// The polynomial consisting of the single declared variable `name`.
    ///
    /// Panics if `name` was not declared.
    pub fn var(&self, name: &str) -> MultiPoly {
        let idx = self
            .index_of(name)
            .unwrap_or_else(|| panic!("variable `{name}` not declared in {:?}", self.0));
        let mut exps = vec![0; self.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Rational::one());
        MultiPoly {
            vars: self.clone(),
            terms,
        }
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.len()], c);
        }
        MultiPoly {
            vars: self.clone(),
            terms,
        }
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly, ExactError> {
        super::parse::parse_poly(text, self)
    }

    fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    fn contains_all(&self, other: &Vars) -> bool {
        other.0.iter().all(|n| self.0.contains(n))
    }

    fn union(&self, other: &Vars) -> Vars {
        if self.contains_all(other) {
            return self.clone();
        }
        if other.contains_all(self) {
            return other.clone();
        }
        let mut names: Vec<String> = self.0.to_vec();
        names.extend(other.0.iter().filter(|n| !self.0.contains(n)).cloned());
        Vars(names.into())
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vars::empty(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Vars::empty().constant(c)
    }

    /// A one-variable polynomial `name`.
    pub fn var(name: &str) -> Self {
        Vars::new([name]).var(name)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The constant value if no variable occurs with a nonzero exponent.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.index_of(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut exps = vec![0; self.vars.len()];
        for (name, e) in monomial {
            match self.vars.index_of(name) {
                Some(i) => exps[i] = *e,
                None if *e == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms
            .get(&exps)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Names of variables that actually occur.
    pub fn support(&self) -> Vec<String> {
        self.vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, n)| n.clone())
            .collect()
    }

    fn remap(&self, target: &Vars) -> MultiPoly {
        if self.vars.same(target) {
            return self.clone();
        }
        let slots: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .expect("target must contain source variables")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; target.len()];
                for (src, &dst) in slots.iter().enumerate() {
                    ne[dst] = e[src];
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: target.clone(),
            terms,
        }
    }

    fn aligned<T>(&self, rhs: &MultiPoly, f: impl FnOnce(&MultiPoly, &MultiPoly) -> T) -> T {
        if self.vars.same(&rhs.vars) {
            f(self, rhs)
        } else {
            let u = self.vars.union(&rhs.vars);
            f(&self.remap(&u), &rhs.remap(&u))
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        self.aligned(rhs, |a, b| {
            let mut terms = a.terms.clone();
            for (e, c) in &b.terms {
                accumulate(&mut terms, e.clone(), c.clone());
            }
            MultiPoly {
                vars: a.vars.clone(),
                terms,
            }
        })
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly {
                vars: self.vars.union(&rhs.vars),
                terms: BTreeMap::new(),
            };
        }
        self.aligned(rhs, |a, b| {
            let mut terms = BTreeMap::new();
            for (ea, ca) in &a.terms {
                for (eb, cb) in &b.terms {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    accumulate(&mut terms, e, ca * cb);
                }
            }
            MultiPoly {
                vars: a.vars.clone(),
                terms,
            }
        })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> MultiPoly {
        self.add(&self.vars.constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = self.vars.constant(Rational::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = MultiPoly::mul(&base, &base);
            }
        }
        acc
    }

    /// Exact evaluation. Only variables that occur need a value.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ExactError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match assignment.get(name) {
                Some(v) => values.push(v.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(ExactError::MissingVariable(name.clone())),
            }
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replace variable `name` by `replacement`; `name` leaves the variable list.
    pub fn substitute(&self, name: &str, replacement: &MultiPoly) -> MultiPoly {
        let Some(idx) = self.vars.index_of(name) else {
            return self.clone();
        };
        let rest = Vars::new(
            self.vars
                .names()
                .iter()
                .filter(|n| n.as_str() != name)
                .cloned(),
        );
        let mut powers: Vec<MultiPoly> = vec![rest.constant(Rational::one())];
        let mut acc = rest.constant(Rational::zero());
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(replacement);
                powers.push(next);
            }
            let mut reduced = e.clone();
            reduced.remove(idx);
            let mut mono = BTreeMap::new();
            mono.insert(reduced, c.clone());
            let mono = MultiPoly {
                vars: rest.clone(),
                terms: mono,
            };
            acc = acc.add(&mono.mul(&powers[k]));
        }
        acc
    }

    pub fn derivative(&self, name: &str) -> MultiPoly {
        let Some(idx) = self.vars.index_of(name) else {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                accumulate(&mut terms, ne, c * int(e[idx] as i64));
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Terms in graded-lex order, highest first.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| graded_lex(b, a));
        ts
    }
}

fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn accumulate(terms: &mut BTreeMap<Vec<u32>, Rational>, e: Vec<u32>, c: Rational) {
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.aligned(other, |a, b| a.terms == b.terms)
    }
}

impl Eq for MultiPoly {}

/// Canonical rendering: graded-lex descending, `*` products, `^` powers.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = self
                .vars
                .names()
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(n, &k)| {
                    if k == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_short(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_short(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                MultiPoly::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(&self)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

impl Ring for MultiPoly {
    fn zero_elem() -> Self {
        MultiPoly::zero()
    }
    fn one_elem() -> Self {
        MultiPoly::constant(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn is_zero_elem(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        MultiPoly::neg(self)
    }
    /// Division only by nonzero constants.
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let c = rhs.as_constant()?;
        if c.is_zero() {
            None
        } else {
            Some(self.scale(&c.recip()))
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn ring_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
    fn plus_rational(&self, c: &Rational) -> Self {
        self.add_constant(c)
    }
}

/// `(base)(base+1)...(base+n-1)` expanded; `n = 0` gives 1.
pub fn poch_poly(base: &MultiPoly, n: usize) -> MultiPoly {
    let mut acc = base.vars.constant(Rational::one());
    for j in 0..n {
        acc = acc.mul(&base.add_constant(&int(j as i64)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn assignment(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn poch_small_cases() {
        let v = Vars::new(["mu", "alpha"]);
        let mu = v.var("mu");
        let alpha = v.var("alpha");
        assert_eq!(poch_poly(&mu, 0), v.constant(int(1)));
        assert_eq!(poch_poly(&mu, 2), &mu * &mu + mu.clone());
        // (mu+alpha)(mu+alpha+1) by hand
        let expected = v.parse("mu^2 + 2*mu*alpha + alpha^2 + mu + alpha").unwrap();
        assert_eq!(poch_poly(&(&mu + &alpha), 2), expected);
    }

    #[test]
    fn mixed_variable_lists_unify() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let s = &x + &y;
        let t = &y + &x;
        assert_eq!(s, t);
        assert_eq!(&s - &y, x);
        assert_eq!((&x - &x), MultiPoly::zero());
        assert_eq!(
            MultiPoly::constant(int(3)),
            Vars::new(["z"]).constant(int(3))
        );
    }

    #[test]
    fn evaluation() {
        let x = MultiPoly::var("x");
        let p = &(&x * &x) + &MultiPoly::constant(int(1));
        assert_eq!(p.eval(&assignment(&[("x", int(2))])).unwrap(), int(5));
        assert_eq!(
            p.eval(&BTreeMap::new()),
            Err(ExactError::MissingVariable("x".into()))
        );
        // unused variables need no value
        let c = Vars::new(["x", "y"]).constant(rat(1, 2));
        assert_eq!(c.eval(&BTreeMap::new()).unwrap(), rat(1, 2));
    }

    #[test]
    fn rendering_is_graded_lex() {
        let v = Vars::new(["mu", "t"]);
        let p = v.parse("512 + 344*mu*t - t^2*mu^4 + 3/2*mu").unwrap();
        assert_eq!(p.to_string(), "-mu^4*t^2 + 344*mu*t + 3/2*mu + 512");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(v.constant(rat(-1, 3)).to_string(), "-1/3");
    }

    #[test]
    fn substitution_and_derivative() {
        let v = Vars::new(["k", "m", "q", "t"]);
        let p = v.parse("m - 2*k").unwrap();
        let q2 = v.parse("q + 2").unwrap();
        let sub = p.substitute("k", &q2);
        let sub = sub.substitute("m", &v.parse("t + 2*q + 4").unwrap());
        assert_eq!(sub, v.var("t"));
        let d = v.parse("k^3*m + 5*k").unwrap().derivative("k");
        assert_eq!(d, v.parse("3*k^2*m + 5").unwrap());
    }

    #[test]
    fn coefficient_lookup() {
        let v = Vars::new(["a", "b"]);
        let p = v.parse("3*a^2*b - 7").unwrap();
        assert_eq!(p.coefficient(&[("a", 2), ("b", 1)]), int(3));
        assert_eq!(p.coefficient(&[]), int(-7));
        assert_eq!(p.coefficient(&[("zz", 1)]), int(0));
        assert_eq!(p.degree_in("a"), 2);
        assert_eq!(p.total_degree(), 3);
    }
}
