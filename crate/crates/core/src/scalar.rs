//! Scalar abstractions shared by every module.
//!
//! Linear algebra in this crate is written against [`Field`] (any exact
//! field with the usual operators) and [`OrderedField`] (additionally totally
//! ordered, needed for cone computations). Concrete aliases live at the
//! crate root.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field. Blanket-implemented for anything with the right operators.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// A totally ordered field that can be built from small integers.
pub trait OrderedField: Field + Ord + Signed {
    fn from_int(n: i64) -> Self;
    /// Numerator and denominator, when the value is a rational number.
    fn to_ratio(&self) -> (BigInt, BigInt);
}

impl OrderedField for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

impl OrderedField for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl OrderedField for Ratio<i128> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Converts between ordered fields through their exact rational value.
pub fn convert<A: OrderedField, B: OrderedField>(x: &A) -> B {
    let (n, d) = x.to_ratio();
    let n = B::from_int(n.to_i64().expect("numerator fits in i64"));
    let d = B::from_int(d.to_i64().expect("denominator fits in i64"));
    n / d
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// Returns the zero vector unchanged.
pub fn primitive_integer<F: OrderedField>(v: &[F]) -> Vec<BigInt> {
    let parts: Vec<(BigInt, BigInt)> = v.iter().map(|x| x.to_ratio()).collect();
    let lcm = parts
        .iter()
        .fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = parts.iter().map(|(n, d)| n * (&lcm / d)).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Like [`primitive_integer`] but narrowed to `i64`.
pub fn primitive_i64<F: OrderedField>(v: &[F]) -> Vec<i64> {
    primitive_integer(v)
        .iter()
        .map(|x| x.to_i64().expect("lattice coordinate fits in i64"))
        .collect()
}

pub fn to_field<F: OrderedField>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_int(x)).collect()
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int_rat(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(fmt_rational(&int_rat(7)), "7");
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![rat(2, 3), rat(-4, 3), int_rat(0)];
        assert_eq!(primitive_i64(&v), vec![1, -2, 0]);
        let z = vec![int_rat(0), int_rat(0)];
        assert_eq!(primitive_i64(&z), vec![0, 0]);
    }

    #[test]
    fn conversion_between_fields() {
        let q = rat(-5, 7);
        let r: Ratio<i64> = convert(&q);
        assert_eq!(r, Ratio::new(-5, 7));
        let back: BigRational = convert(&r);
        assert_eq!(back, q);
    }
}
