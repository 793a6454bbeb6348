//! Recursive-descent parser for scalar expressions in `Q(t^{1/d})`.
//!
//! ```text
//! expr   := term { ("+"|"-") term }
//! term   := factor { ("*"|"/") factor }
//! factor := ["-"] base [ "^" exp ]
//! base   := int | "t" | "(" expr ")"
//! exp    := rat | "(" rat ")"
//! rat    := ["-"] int [ "/" int ]
//! ```
//!
//! Fractional exponents are only allowed on pure powers of `t`, and the
//! resulting exponent must lie in `(1/d)·Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::LaurentPoly;
use super::{Puiseux, ValFieldError};
use crate::ValuedScalar;

/// Parses `text` as an element of `Q(t^{1/d})`.
pub fn parse_scalar(text: &str, d: u32) -> Result<ValuedScalar, ValFieldError> {
    if d == 0 {
        return Err(ValFieldError::ZeroDenominator);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        d,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    d: u32,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ValFieldError {
        ValFieldError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ValFieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ValuedScalar, ValFieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ValuedScalar, ValFieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|e| match e {
                    ValFieldError::DivisionByZero => ValFieldError::DivisionByZeroAt { pos: at },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ValuedScalar, ValFieldError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = if self.eat(b'(') {
            let e = self.rat()?;
            self.expect(b')')?;
            e
        } else {
            self.rat()?
        };
        self.power(base, &e, at)
    }

    fn power(
        &self,
        base: ValuedScalar,
        e: &BigRational,
        at: usize,
    ) -> Result<ValuedScalar, ValFieldError> {
        if e.is_integer() {
            let k = e.numer().to_i64().ok_or(ValFieldError::ExponentTooLarge)?;
            return base.powi(k).map_err(|err| match err {
                ValFieldError::DivisionByZero => ValFieldError::DivisionByZeroAt { pos: at },
                other => other,
            });
        }
        let pure_power = base.is_laurent()
            && base
                .numerator()
                .as_monomial()
                .is_some_and(|(_, c)| c.is_one());
        if !pure_power {
            return Err(ValFieldError::Syntax {
                pos: at,
                message: "fractional exponent on something other than a power of t".into(),
            });
        }
        let (k, _) = base.numerator().as_monomial().expect("checked above");
        let exp = BigRational::new(BigInt::from(k), BigInt::from(base.denominator_index())) * e;
        monomial_in(&exp, self.d, at)
    }

    fn base(&mut self) -> Result<ValuedScalar, ValFieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Puiseux::monomial(BigRational::one(), i64::from(self.d), self.d))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(Puiseux::from_parts(
                    self.d,
                    LaurentPoly::monomial(BigRational::from_integer(n), 0),
                    LaurentPoly::one(),
                )?)
            }
            Some(_) => Err(self.error("expected a number, 't' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<BigInt, ValFieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn rat(&mut self) -> Result<BigRational, ValFieldError> {
        let neg = self.eat(b'-');
        let n = self.int()?;
        let d = if self.eat(b'/') {
            let d = self.int()?;
            if d.is_zero() {
                return Err(self.error("zero denominator in exponent"));
            }
            d
        } else {
            BigInt::one()
        };
        let q = BigRational::new(n, d);
        Ok(if neg { -q } else { q })
    }
}

/// `t^exp` in `Q(t^{1/d})`, or an error if `exp ∉ (1/d)·Z`.
fn monomial_in(exp: &BigRational, d: u32, at: usize) -> Result<ValuedScalar, ValFieldError> {
    let scaled = exp * BigRational::from_integer(BigInt::from(d));
    if !scaled.is_integer() {
        return Err(ValFieldError::ExponentDenominator {
            pos: at,
            exponent: crate::scalar::fmt_rational(exp),
            d,
        });
    }
    let k = scaled.numer().to_i64().ok_or(ValFieldError::ExponentTooLarge)?;
    Ok(Puiseux::monomial(BigRational::one(), k, d))
}

/// Smallest `d` such that `text` parses in `Q(t^{1/d})`.
///
/// Convenience for inputs that do not state `d`: parsing is retried with the
/// denominator of each offending exponent folded in.
pub fn infer_denominator(text: &str) -> u32 {
    let mut d: u32 = 1;
    loop {
        match parse_scalar(text, d) {
            Err(ValFieldError::ExponentDenominator { exponent, .. }) => {
                let den = exponent
                    .split_once('/')
                    .and_then(|(_, q)| q.parse::<u32>().ok())
                    .unwrap_or(1);
                let next = d.lcm(&den);
                if next == d {
                    return d;
                }
                d = next;
            }
            _ => return d,
        }
    }
}
