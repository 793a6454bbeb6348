//! Sparse Laurent polynomials in one variable over an exact field.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// Sparse Laurent polynomial `Σ c_k s^k`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<F> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    pub fn monomial(c: F, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// A single term `c s^k`, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &F)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &F)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> F {
        self.terms.get(&k).cloned().unwrap_or_else(F::zero)
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (*k, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `s -> s^m`.
    pub fn inflate(&self, m: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn leading(&self) -> (i64, F) {
        let (k, c) = self.terms.iter().next_back().expect("nonzero polynomial");
        (*k, c.clone())
    }

    /// Euclidean division of ordinary polynomials (all exponents ≥ 0).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let (dk, dc) = divisor.leading();
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(rk) = rem.high_exp() {
            if rk < dk {
                break;
            }
            let (_, rc) = rem.leading();
            let c = rc / dc.clone();
            let step = Self::monomial(c, rk - dk);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        (quot, rem)
    }

    /// Monic greatest common divisor of two ordinary polynomials.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let (_, lc) = a.leading();
        a.scale(&(F::one() / lc))
    }
}
