//! Recursive-descent reader for polynomial expressions.
//!
//! Grammar: sums and differences of products; factors are rational or decimal
//! literals, declared identifiers and parenthesised expressions, optionally
//! raised to a non-negative integer power. Division is allowed only by an
//! expression that evaluates to a nonzero constant.

use num_traits::Zero;

use super::poly::{MultiPoly, Vars};
use super::rational::{parse_rational, Rational};
use super::ExactError;

pub(crate) fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly, ExactError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        vars,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> ExactError {
        ExactError::Parse {
            text: self.text.to_string(),
            pos: self.pos,
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let c = d.as_constant().ok_or_else(|| ExactError::Parse {
                        text: self.text.to_string(),
                        pos: at,
                        reason: "division by a non-constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(ExactError::ZeroDenominator);
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let exp: u32 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.error("exponent must be a non-negative integer"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let lit: Rational =
                    parse_rational(&self.text[start..self.pos]).map_err(|e| ExactError::Parse {
                        text: self.text.to_string(),
                        pos: start,
                        reason: e.to_string(),
                    })?;
                Ok(self.vars.constant(lit))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                if self.vars.index_of(name).is_none() {
                    self.pos = start;
                    return Err(self.error(&format!("undeclared variable `{name}`")));
                }
                Ok(self.vars.var(name))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn precedence_and_literals() {
        let v = Vars::new(["x"]);
        let p = v.parse("2*x^2 - (x - 1)/2 + 0.5").unwrap();
        assert_eq!(p, v.parse("2*x^2 - 1/2*x + 1").unwrap());
        assert_eq!(v.parse("-x^2").unwrap().coefficient(&[("x", 2)]), int(-1));
        assert_eq!(v.parse("3/4").unwrap().as_constant(), Some(rat(3, 4)));
    }

    #[test]
    fn rejects_bad_input() {
        let v = Vars::new(["x"]);
        assert!(matches!(v.parse("x +"), Err(ExactError::Parse { .. })));
        assert!(matches!(v.parse("y"), Err(ExactError::Parse { .. })));
        assert!(matches!(v.parse("1/x"), Err(ExactError::Parse { .. })));
        assert_eq!(v.parse("x/0"), Err(ExactError::ZeroDenominator));
        assert!(matches!(v.parse("(x"), Err(ExactError::Parse { .. })));
    }
}
