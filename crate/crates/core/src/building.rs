//! The type-A extended building as the space of Goldman–Iwahori norms.
//!
//! A building point `(g, λ)` is turned into the norm whose frame is the
//! columns of `g`: a vector `u` has coordinates `a = g⁻¹ u` and additive norm
//! `min { λ_i : a_i ≠ 0 }` (constants carry the trivial valuation).

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::{Field, OrderedField};
use crate::valfield::ExtRat;
use crate::{RatMatrix, Rational, ValuedField, ValuedMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildingError {
    #[error("singular frame")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("entry ({row}, {col}) has negative valuation {valuation}")]
    NotIntegral {
        row: usize,
        col: usize,
        valuation: String,
    },
    #[error("determinant has valuation {valuation}, expected 0")]
    NotUnit { valuation: String },
}

/// A diagonalizable non-Archimedean norm on `k^n`, in min-plus form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GINorm<F = Rational> {
    frame: Matrix<F>,
    frame_inv: Matrix<F>,
    weights: Vec<F>,
}

impl<F: OrderedField> GINorm<F> {
    pub fn new(frame: Matrix<F>, weights: Vec<F>) -> Result<Self, BuildingError> {
        let n = frame.nrows();
        if !frame.is_square() {
            return Err(BuildingError::Dimension {
                expected: n,
                found: frame.ncols(),
            });
        }
        if weights.len() != n {
            return Err(BuildingError::Dimension {
                expected: n,
                found: weights.len(),
            });
        }
        let frame_inv = frame.inverse().ok_or(BuildingError::Singular)?;
        Ok(GINorm {
            frame,
            frame_inv,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn frame(&self) -> &Matrix<F> {
        &self.frame
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    /// Additive norm of `u`; `None` stands for `+∞` and occurs only at `0`.
    pub fn evaluate(&self, u: &[F]) -> Option<F> {
        let a = self.frame_inv.mul_vec(u);
        a.iter()
            .zip(&self.weights)
            .filter(|(x, _)| !x.is_zero())
            .map(|(_, w)| w.clone())
            .min()
    }
}

/// `evaluate` with the result in `Q ∪ {+∞}`.
pub fn evaluate_norm(norm: &GINorm, u: &[Rational]) -> ExtRat {
    norm.evaluate(u).map_or(ExtRat::Infinity, ExtRat::Finite)
}

/// Decides equality of two norms by evaluating each frame of one under the
/// other. If every frame vector `f_j` of the second norm has first-norm value
/// `μ_j`, the ultrametric inequality gives `‖u‖₁ ≥ ‖u‖₂` for all `u`; the
/// symmetric check gives the reverse inequality.
pub fn norms_equal<F: OrderedField>(a: &GINorm<F>, b: &GINorm<F>) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let one_way = |x: &GINorm<F>, y: &GINorm<F>| {
        (0..y.dim()).all(|j| x.evaluate(&y.frame.col(j)).as_ref() == Some(&y.weights[j]))
    };
    one_way(a, b) && one_way(b, a)
}

/// A representative `(g, λ)` of a point of the extended building of `GL(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingPoint<F = Rational> {
    pub g: Matrix<F>,
    pub lambda: Vec<F>,
}

impl<F: OrderedField> BuildingPoint<F> {
    pub fn new(g: Matrix<F>, lambda: Vec<F>) -> Result<Self, BuildingError> {
        if !g.is_square() || g.nrows() != lambda.len() {
            return Err(BuildingError::Dimension {
                expected: lambda.len(),
                found: g.nrows(),
            });
        }
        Ok(BuildingPoint { g, lambda })
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }
}

pub fn alpha<F: OrderedField>(p: &BuildingPoint<F>) -> Result<GINorm<F>, BuildingError> {
    GINorm::new(p.g.clone(), p.lambda.clone())
}

/// Projection to the dominant chamber `λ_1 ≥ … ≥ λ_n`.
pub fn pi<F: OrderedField>(p: &BuildingPoint<F>) -> Vec<F> {
    let mut v = p.lambda.clone();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// The representative with `Σ λ_i = 0`.
pub fn normalize_projective<F: OrderedField>(p: &BuildingPoint<F>) -> BuildingPoint<F> {
    let n = p.dim();
    if n == 0 {
        return p.clone();
    }
    let sum = p.lambda.iter().fold(F::zero(), |acc, x| acc + x.clone());
    let mean = sum / F::from_int(n as i64);
    BuildingPoint {
        g: p.g.clone(),
        lambda: p.lambda.iter().map(|x| x.clone() - mean.clone()).collect(),
    }
}

/// Checks membership in `GL_n(O)`: entries of valuation `≥ 0` and a
/// determinant of valuation `0`.
pub fn check_integral_unit<V: ValuedField>(h: &Matrix<V>) -> Result<(), BuildingError> {
    if !h.is_square() {
        return Err(BuildingError::Dimension {
            expected: h.nrows(),
            found: h.ncols(),
        });
    }
    let zero = ExtRat::zero();
    for r in 0..h.nrows() {
        for c in 0..h.ncols() {
            let v = h[(r, c)].valuation();
            if v < zero {
                return Err(BuildingError::NotIntegral {
                    row: r,
                    col: c,
                    valuation: v.to_string(),
                });
            }
        }
    }
    let v = h.determinant().valuation();
    if v != zero {
        return Err(BuildingError::NotUnit {
            valuation: v.to_string(),
        });
    }
    Ok(())
}

/// `trop_build(g · t^λ · h) = (g, λ)` after validating `h`.
pub fn trop_build(
    g: &RatMatrix,
    lambda: &[Rational],
    h: &ValuedMatrix,
) -> Result<BuildingPoint, BuildingError> {
    let n = lambda.len();
    for (m, what) in [(g.nrows(), n), (g.ncols(), n), (h.nrows(), n), (h.ncols(), n)] {
        if m != what {
            return Err(BuildingError::Dimension {
                expected: n,
                found: m,
            });
        }
    }
    if g.inverse().is_none() {
        return Err(BuildingError::Singular);
    }
    check_integral_unit(h)?;
    BuildingPoint::new(g.clone(), lambda.to_vec())
}

/// Permutation matrix sending `e_j` to `e_{perm[j]}`.
pub fn permutation_matrix<F: Field>(perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    Matrix::from_fn(n, n, |r, c| if perm[c] == r { F::one() } else { F::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{dominant_representative, GroupKind, RootDatum};
    use crate::scalar::{int_rat, rat};
    use crate::valfield::parse_scalar;
    use num_rational::Ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int_rat(x)).collect()
    }

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| ints(r)).collect(), rows[0].len())
    }

    fn vm(rows: &[&[&str]], d: u32) -> ValuedMatrix {
        let rows: Vec<Vec<_>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s, d).unwrap()).collect())
            .collect();
        let n = rows[0].len();
        Matrix::from_rows(rows, n)
    }

    fn norm(g: RatMatrix, l: &[i64]) -> GINorm {
        GINorm::new(g, ints(l)).unwrap()
    }

    #[test]
    fn evaluation() {
        let n = norm(Matrix::identity(2), &[1, 0]);
        assert_eq!(evaluate_norm(&n, &ints(&[1, 1])), ExtRat::Finite(int_rat(0)));
        assert_eq!(evaluate_norm(&n, &ints(&[1, 0])), ExtRat::Finite(int_rat(1)));
        assert_eq!(evaluate_norm(&n, &ints(&[0, 0])), ExtRat::Infinity);
    }

    #[test]
    fn equality_examples() {
        let p12 = rm(&[&[0, 1], &[1, 0]]);
        let a = norm(Matrix::identity(2), &[1, 0]);
        assert!(norms_equal(&a, &norm(p12.clone(), &[0, 1])));
        assert!(!norms_equal(&a, &norm(Matrix::identity(2), &[0, 1])));
        let g = rm(&[&[1, 2], &[3, 5]]);
        let d = Matrix::diagonal(&[rat(-2, 3), int_rat(7)]);
        assert!(norms_equal(&norm(g.mul(&d), &[4, -1]), &norm(g, &[4, -1])));
        // adding a multiple of a heavier frame vector to a lighter one
        let up = rm(&[&[1, 5], &[0, 1]]);
        assert!(norms_equal(&norm(Matrix::identity(2), &[1, 0]), &norm(up.clone(), &[1, 0])));
        assert!(!norms_equal(&norm(Matrix::identity(2), &[0, 1]), &norm(up, &[0, 1])));
        assert!(!norms_equal(&a, &norm(Matrix::identity(3), &[1, 0, 0])));
    }

    #[test]
    fn alpha_examples() {
        let p = BuildingPoint::new(Matrix::identity(2), ints(&[3, -1])).unwrap();
        let n = alpha(&p).unwrap();
        assert_eq!(n.weights(), &ints(&[3, -1])[..]);
        let g = rm(&[&[2, 1], &[7, 4]]);
        let trivial = alpha(&BuildingPoint::new(g, ints(&[0, 0])).unwrap()).unwrap();
        assert!(norms_equal(&trivial, &norm(Matrix::identity(2), &[0, 0])));
        assert_eq!(
            alpha(&BuildingPoint::new(rm(&[&[1, 1], &[1, 1]]), ints(&[0, 0])).unwrap()),
            Err(BuildingError::Singular)
        );
    }

    #[test]
    fn pi_and_normalization() {
        let g = Matrix::identity(3);
        let p = BuildingPoint::new(g, ints(&[0, 3, 1])).unwrap();
        assert_eq!(pi(&p), ints(&[3, 1, 0]));
        let r = RootDatum::builtin(GroupKind::Gl(3));
        let (dom, _) = dominant_representative(&p.lambda, &r, r.positive_roots().unwrap());
        assert_eq!(pi(&p), dom);
        let q = BuildingPoint::new(Matrix::identity(2), ints(&[2, 0])).unwrap();
        assert_eq!(normalize_projective(&q).lambda, ints(&[1, -1]));
        let q = BuildingPoint::new(Matrix::identity(2), ints(&[1, 1])).unwrap();
        assert_eq!(normalize_projective(&q).lambda, ints(&[0, 0]));
        let q = BuildingPoint::new(Matrix::identity(3), vec![rat(1, 2), rat(-1, 3), rat(-1, 6)]).unwrap();
        assert_eq!(normalize_projective(&q), q);
    }

    #[test]
    fn trop_build_examples() {
        let id = Matrix::identity(2);
        let p = trop_build(&id, &ints(&[2, 0]), &vm(&[&["1", "0"], &["t", "1"]], 1)).unwrap();
        assert_eq!(p.lambda, ints(&[2, 0]));
        assert!(matches!(
            trop_build(&id, &ints(&[2, 0]), &vm(&[&["1/t", "0"], &["0", "1"]], 1)),
            Err(BuildingError::NotIntegral { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            trop_build(&id, &ints(&[2, 0]), &vm(&[&["t", "0"], &["0", "1"]], 1)),
            Err(BuildingError::NotUnit { .. })
        ));
        assert_eq!(
            trop_build(&rm(&[&[1, 2], &[2, 4]]), &ints(&[0, 0]), &vm(&[&["1", "0"], &["0", "1"]], 1)),
            Err(BuildingError::Singular)
        );
    }

    #[test]
    fn small_rationals_work_too() {
        let g: Matrix<Ratio<i64>> = permutation_matrix(&[1, 0]);
        let a = GINorm::new(g, vec![Ratio::from_integer(0), Ratio::from_integer(1)]).unwrap();
        let b = GINorm::new(Matrix::identity(2), vec![Ratio::from_integer(1), Ratio::from_integer(0)]).unwrap();
        assert!(norms_equal(&a, &b));
    }
}
