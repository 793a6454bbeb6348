//! Cartan decomposition `x = g · diag(t^λ) · h` over a valued field, the
//! minor-valuation formula for the invariant factors, and the diagram checks
//! relating the building to spherical tropicalization.

use thiserror::Error;

use crate::building::{check_integral_unit, pi, trop_build, BuildingError};
use crate::matrix::{subsets, Matrix};
use crate::scalar::Field;
use crate::valfield::ExtRat;
use crate::{RatMatrix, Rational, ValuedField, ValuedMatrix, ValuedScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot embed GL({from}) into GL({to})")]
    Embedding { from: usize, to: usize },
    #[error(transparent)]
    Building(#[from] BuildingError),
}

/// `g · diag(t^{λ_1}, …, t^{λ_n}) · h` with `g, h ∈ GL_n(O)` and `λ`
/// descending.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanForm<V = ValuedScalar> {
    pub g: Matrix<V>,
    pub lambda: Vec<Rational>,
    pub h: Matrix<V>,
}

impl<V: ValuedField> CartanForm<V> {
    pub fn middle(&self) -> Matrix<V> {
        diag_t(&self.lambda)
    }

    pub fn reconstruct(&self) -> Matrix<V> {
        self.g.mul(&self.middle()).mul(&self.h)
    }
}

/// `diag(t^{λ_1}, …, t^{λ_n})`.
pub fn diag_t<V: ValuedField>(lambda: &[Rational]) -> Matrix<V> {
    let n = lambda.len();
    Matrix::from_fn(n, n, |r, c| if r == c { V::t_power(&lambda[r]) } else { V::zero() })
}

fn check_square<T>(x: &Matrix<T>) -> Result<(), CartanError> {
    if x.is_square() {
        Ok(())
    } else {
        Err(CartanError::NotSquare {
            rows: x.nrows(),
            cols: x.ncols(),
        })
    }
}

/// Smith-style elimination over the valuation ring. Pivots on an entry of
/// minimal valuation (ties broken by lowest row, then column), so every
/// multiplier is integral; the accumulated row and column operations stay in
/// `GL_n(O)`.
pub fn cartan_decompose<V: ValuedField>(x: &Matrix<V>) -> Result<CartanForm<V>, CartanError> {
    check_square(x)?;
    let n = x.nrows();
    let mut a = x.clone();
    // x = left · a · right throughout
    let mut left: Matrix<V> = Matrix::identity(n);
    let mut right: Matrix<V> = Matrix::identity(n);
    for k in 0..n {
        let mut best: Option<(ExtRat, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let v = a[(i, j)].valuation();
                if v.is_finite() && best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return Err(CartanError::Singular);
        };
        a.swap_rows(k, pi);
        left.swap_cols(k, pi);
        a.swap_cols(k, pj);
        right.swap_rows(k, pj);
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let c = a[(i, k)].clone() / pivot.clone();
            for j in k..n {
                let v = a[(k, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - c.clone() * v;
            }
            for r in 0..n {
                let v = left[(r, i)].clone();
                left[(r, k)] = left[(r, k)].clone() + c.clone() * v;
            }
        }
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let c = a[(k, j)].clone() / pivot.clone();
            a[(k, j)] = V::zero();
            for col in 0..n {
                let v = right[(j, col)].clone();
                right[(k, col)] = right[(k, col)].clone() + c.clone() * v;
            }
        }
    }

    let vals: Vec<Rational> = (0..n)
        .map(|k| a[(k, k)].valuation().finite().cloned().ok_or(CartanError::Singular))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| vals[q].cmp(&vals[p]).then(p.cmp(&q)));
    let lambda: Vec<Rational> = order.iter().map(|&k| vals[k].clone()).collect();
    // a = Pᵀ diag(t^λ) P diag(u) with P[i][order[i]] = 1
    let g = Matrix::from_fn(n, n, |r, i| left[(r, order[i])].clone());
    let h = Matrix::from_fn(n, n, |i, c| {
        let k = order[i];
        let unit = a[(k, k)].clone() / V::t_power(&vals[k]);
        unit * right[(k, c)].clone()
    });
    Ok(CartanForm { g, lambda, h })
}

/// Determinant by permutation expansion; independent of the elimination code.
pub fn leibniz_determinant<T: Field>(m: &Matrix<T>) -> T {
    fn rec<T: Field>(m: &Matrix<T>, row: usize, used: &mut Vec<bool>, sign: bool) -> T {
        let n = m.nrows();
        if row == n {
            return if sign { -T::one() } else { T::one() };
        }
        let mut acc = T::zero();
        let mut flips = false;
        for c in 0..n {
            if used[c] {
                continue;
            }
            if !m[(row, c)].is_zero() {
                used[c] = true;
                let rest = rec(m, row + 1, used, sign ^ flips);
                used[c] = false;
                acc = acc + m[(row, c)].clone() * rest;
            }
            // each unused column passed over is one more inversion
            flips = !flips;
        }
        acc
    }
    rec(m, 0, &mut vec![false; m.nrows()], false)
}

/// Minimal valuation of the `i × i` minors, `i = 0..=n` (`m_0 = 0`).
pub fn minor_valuations<V: ValuedField>(x: &Matrix<V>) -> Vec<ExtRat> {
    let n = x.nrows();
    let mut out = vec![ExtRat::zero()];
    for i in 1..=n {
        let mut best = ExtRat::Infinity;
        for rows in subsets(n, i) {
            for cols in subsets(n, i) {
                let v = leibniz_determinant(&x.submatrix(&rows, &cols)).valuation();
                best = best.min(v);
            }
        }
        out.push(best);
    }
    out
}

/// Descending valuations of the invariant factors, via
/// `μ_i = m_i − m_{i−1}` on minimal minor valuations.
pub fn trop_spherical<V: ValuedField>(x: &Matrix<V>) -> Result<Vec<Rational>, CartanError> {
    check_square(x)?;
    let m = minor_valuations(x);
    let finite: Vec<Rational> = m
        .iter()
        .map(|v| v.finite().cloned().ok_or(CartanError::Singular))
        .collect::<Result<_, _>>()?;
    let mut lambda: Vec<Rational> = finite.windows(2).map(|w| &w[1] - &w[0]).collect();
    lambda.reverse();
    Ok(lambda)
}

/// Both sides of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub holds: bool,
}

impl IdentityReport {
    fn new(lhs: Vec<Rational>, rhs: Vec<Rational>) -> Self {
        let holds = lhs == rhs;
        IdentityReport { lhs, rhs, holds }
    }
}

/// `x = g · diag(t^λ) · h` with `g` constant.
pub fn assemble(g: &RatMatrix, lambda: &[Rational], h: &ValuedMatrix) -> ValuedMatrix {
    let gv: ValuedMatrix = g.map(|c| ValuedScalar::from_const(c.clone()));
    gv.mul(&diag_t(lambda)).mul(h)
}

/// Compares `π(trop_build(g, λ, h))` with `trop_spherical(g · t^λ · h)`.
pub fn theorem_d_check(
    g: &RatMatrix,
    lambda: &[Rational],
    h: &ValuedMatrix,
) -> Result<IdentityReport, CartanError> {
    let p = trop_build(g, lambda, h)?;
    let lhs = pi(&p);
    let rhs = trop_spherical(&assemble(g, lambda, h))?;
    Ok(IdentityReport::new(lhs, rhs))
}

/// Homomorphisms between general linear groups used for functoriality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    /// `det : GL(n) → GL(1)`.
    Determinant,
    /// `x ↦ diag(x, 1, …, 1) : GL(m) → GL(n)`.
    BlockEmbedding { n: usize },
}

/// Checks `trop(ξ) ∘ π = π ∘ ξ` on `x`.
pub fn functoriality_check(x: &ValuedMatrix, xi: Functor) -> Result<IdentityReport, CartanError> {
    let lambda = trop_spherical(x)?;
    match xi {
        Functor::Determinant => {
            let sum = lambda.iter().fold(Rational::from_integer(0.into()), |a, b| a + b);
            let rhs = leibniz_determinant(x)
                .valuation()
                .finite()
                .cloned()
                .ok_or(CartanError::Singular)?;
            Ok(IdentityReport::new(vec![sum], vec![rhs]))
        }
        Functor::BlockEmbedding { n } => {
            let m = x.nrows();
            if m > n {
                return Err(CartanError::Embedding { from: m, to: n });
            }
            let big = Matrix::from_fn(n, n, |r, c| {
                if r < m && c < m {
                    x[(r, c)].clone()
                } else if r == c {
                    ValuedScalar::from_const(Rational::from_integer(1.into()))
                } else {
                    ValuedScalar::zero_in(1)
                }
            });
            let mut lhs = lambda;
            lhs.resize(n, Rational::from_integer(0.into()));
            lhs.sort_by(|a, b| b.cmp(a));
            Ok(IdentityReport::new(lhs, trop_spherical(&big)?))
        }
    }
}

/// Validates a decomposition: reconstruction, integral-unit factors and a
/// descending `λ`.
pub fn verify_form(x: &ValuedMatrix, f: &CartanForm) -> Result<(), String> {
    if f.reconstruct() != *x {
        return Err("g · t^λ · h does not reconstruct the input".into());
    }
    check_integral_unit(&f.g).map_err(|e| format!("g: {e}"))?;
    check_integral_unit(&f.h).map_err(|e| format!("h: {e}"))?;
    if f.lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err("λ is not descending".into());
    }
    Ok(())
}
