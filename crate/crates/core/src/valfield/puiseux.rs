use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::LaurentPoly;
use super::{ExtRat, ValFieldError};
use crate::scalar::{fmt_rational, Field, OrderedField};

/// A field with a valuation into `Q ∪ {+∞}` and monomials `t^q` for every
/// rational `q`. This is all that Cartan elimination needs.
pub trait ValuedField: Field {
    fn valuation(&self) -> ExtRat;
    /// The monomial `t^q`.
    fn t_power(q: &BigRational) -> Self;
    /// Embeds a rational constant (valuation 0 unless zero).
    fn constant(c: &BigRational) -> Self;
}

/// An element of `Q(t^{1/d})`, stored as a reduced fraction of Laurent
/// polynomials in `s = t^{1/d}`.
///
/// Canonical form: the denominator has lowest exponent 0 with constant
/// coefficient 1, and numerator and denominator are coprime. Under this
/// normalization the valuation is the lowest numerator exponent divided by
/// `d`. Elements with different `d` compare and combine after rebasing to the
/// least common multiple.
#[derive(Clone, Debug)]
pub struct Puiseux<F> {
    d: u32,
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

impl<F: Field> Puiseux<F> {
    /// Builds and normalizes `num / den` in `s = t^{1/d}`.
    pub fn from_parts(
        d: u32,
        num: LaurentPoly<F>,
        den: LaurentPoly<F>,
    ) -> Result<Self, ValFieldError> {
        if d == 0 {
            return Err(ValFieldError::ZeroDenominator);
        }
        if den.is_zero() {
            return Err(ValFieldError::DivisionByZero);
        }
        Ok(Self::normalized(d, num, den))
    }

    fn normalized(d: u32, num: LaurentPoly<F>, den: LaurentPoly<F>) -> Self {
        if num.is_zero() {
            return Puiseux {
                d,
                num,
                den: LaurentPoly::one(),
            };
        }
        let dlow = den.low_exp().expect("nonzero denominator");
        let nlow = num.low_exp().expect("nonzero numerator");
        let mut num = num.shift(-nlow);
        let mut den = den.shift(-dlow);
        if den.as_monomial().is_none() && num.as_monomial().is_none() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let c = den.coeff(0);
        let inv = F::one() / c;
        Puiseux {
            d,
            num: num.scale(&inv).shift(nlow - dlow),
            den: den.scale(&inv),
        }
    }

    pub fn zero_in(d: u32) -> Self {
        Puiseux {
            d,
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_const(c: F) -> Self {
        Puiseux {
            d: 1,
            num: LaurentPoly::monomial(c, 0),
            den: LaurentPoly::one(),
        }
    }

    /// `c · t^{k/d}`.
    pub fn monomial(c: F, k: i64, d: u32) -> Self {
        assert!(d > 0, "denominator must be positive");
        Puiseux {
            d,
            num: LaurentPoly::monomial(c, k),
            den: LaurentPoly::one(),
        }
    }

    /// A Laurent polynomial in `t^{1/d}` given as `(k, c)` pairs for `c t^{k/d}`.
    pub fn from_terms(d: u32, terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        Self::normalized(d, LaurentPoly::from_terms(terms), LaurentPoly::one())
    }

    pub fn denominator_index(&self) -> u32 {
        self.d
    }

    pub fn numerator(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denominator_poly(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the denominator is `1`, i.e. the element is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Exponent of the lowest numerator term, in units of `1/d`.
    pub fn low_exponent(&self) -> Option<i64> {
        self.num.low_exp()
    }

    pub fn valuation(&self) -> ExtRat {
        match self.num.low_exp() {
            Some(k) => ExtRat::Finite(BigRational::new(BigInt::from(k), BigInt::from(self.d))),
            None => ExtRat::Infinity,
        }
    }

    /// Views the same element in `Q(t^{1/d'})`. Requires `d | d'`.
    pub fn rebase(&self, d_new: u32) -> Result<Self, ValFieldError> {
        if d_new == 0 || !d_new.is_multiple_of(self.d) {
            return Err(ValFieldError::RebaseIndivisible {
                from: self.d,
                to: d_new,
            });
        }
        let m = i64::from(d_new / self.d);
        Ok(Puiseux {
            d: d_new,
            num: self.num.inflate(m),
            den: self.den.inflate(m),
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.d == other.d {
            return (self.clone(), other.clone());
        }
        let l = self.d.lcm(&other.d);
        (
            self.rebase(l).expect("lcm is a multiple"),
            other.rebase(l).expect("lcm is a multiple"),
        )
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        if a.den.is_one() && b.den.is_one() {
            return Puiseux {
                d: a.d,
                num: a.num.add(&b.num),
                den: LaurentPoly::one(),
            };
        }
        if a.den == b.den {
            return Self::normalized(a.d, a.num.add(&b.num), a.den);
        }
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        Self::normalized(a.d, num, a.den.mul(&b.den))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        if a.den.is_one() && b.den.is_one() {
            return Puiseux {
                d: a.d,
                num: a.num.mul(&b.num),
                den: LaurentPoly::one(),
            };
        }
        Self::normalized(a.d, a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ValFieldError> {
        if other.is_zero() {
            return Err(ValFieldError::DivisionByZero);
        }
        let (a, b) = self.common(other);
        if let Some((k, c)) = b.num.as_monomial() {
            if b.den.is_one() {
                let inv = F::one() / c.clone();
                return Ok(Puiseux {
                    d: a.d,
                    num: a.num.scale(&inv).shift(-k),
                    den: a.den,
                });
            }
        }
        Ok(Self::normalized(a.d, a.num.mul(&b.den), a.den.mul(&b.num)))
    }

    pub fn inverse(&self) -> Result<Self, ValFieldError> {
        Self::from_const(F::one()).checked_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self, ValFieldError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| ValFieldError::ExponentTooLarge)?;
        Ok(Puiseux {
            d: base.d,
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }
}

impl<F: Field> PartialEq for Puiseux<F> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.num == b.num && a.den == b.den
    }
}

impl<F: Field> Add for Puiseux<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<F: Field> Sub for Puiseux<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<F: Field> Mul for Puiseux<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<F: Field> Div for Puiseux<F> {
    type Output = Self;
    /// Panics on division by zero; use [`Puiseux::checked_div`] otherwise.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by the zero scalar")
    }
}

impl<F: Field> Neg for Puiseux<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Puiseux {
            d: self.d,
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<F: Field> Zero for Puiseux<F> {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for Puiseux<F> {
    fn one() -> Self {
        Self::from_const(F::one())
    }
}

impl<F: OrderedField> Puiseux<F> {
    /// `t^q` with the smallest admissible `d`.
    pub fn t_pow(q: &BigRational) -> Self {
        let d = q.denom().to_u32().expect("exponent denominator fits in u32");
        let k = q.numer().to_i64().expect("exponent numerator fits in i64");
        Self::monomial(F::one(), k, d)
    }
}

impl<F: OrderedField> ValuedField for Puiseux<F> {
    fn valuation(&self) -> ExtRat {
        Puiseux::valuation(self)
    }

    fn t_power(q: &BigRational) -> Self {
        Self::t_pow(q)
    }

    fn constant(c: &BigRational) -> Self {
        let (n, d) = (c.numer().to_i64(), c.denom().to_i64());
        let (n, d) = (n.expect("constant fits"), d.expect("constant fits"));
        Self::from_const(F::from_int(n) / F::from_int(d))
    }
}

fn fmt_term<F: OrderedField>(out: &mut String, first: bool, k: i64, c: &F, d: u32) {
    let (n, den) = c.to_ratio();
    let neg = n.is_negative();
    let mag = BigRational::new(n.abs(), den);
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let exp = BigRational::new(BigInt::from(k), BigInt::from(d));
    if exp.is_zero() {
        out.push_str(&fmt_rational(&mag));
        return;
    }
    if !mag.is_one() {
        out.push_str(&fmt_rational(&mag));
        out.push('*');
    }
    out.push('t');
    if exp.is_one() {
        return;
    }
    if exp.is_integer() && exp.is_positive() {
        out.push('^');
        out.push_str(&fmt_rational(&exp));
    } else {
        out.push_str("^(");
        out.push_str(&fmt_rational(&exp));
        out.push(')');
    }
}

fn fmt_poly<F: OrderedField>(p: &LaurentPoly<F>, d: u32) -> String {
    let mut out = String::new();
    if p.is_zero() {
        out.push('0');
    }
    for (i, (k, c)) in p.terms().enumerate() {
        fmt_term(&mut out, i == 0, k, c, d);
    }
    out
}

/// Prints in the scalar grammar: terms in ascending exponent, and a
/// parenthesized quotient when the denominator is not 1.
impl<F: OrderedField> fmt::Display for Puiseux<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_poly(&self.num, self.d);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        write!(f, "({})/({})", num, fmt_poly(&self.den, self.d))
    }
}
