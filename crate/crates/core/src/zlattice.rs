//! Integer linear algebra: Smith normal form, cokernels, unimodularity,
//! saturations and Hermite bases of sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("map is not square ({rows}x{cols}); the cokernel would be infinite")]
    NotSquare { rows: usize, cols: usize },
    #[error("map is singular; the cokernel is infinite")]
    Singular,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("vector {0:?} does not lie in the lattice")]
    NotInLattice(Vec<i64>),
    #[error("basis matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`.
/// `u_inv` is `U⁻¹`, kept so that saturations need no extra inversion.
#[derive(Debug, Clone, PartialEq)]
pub struct Snf<I> {
    pub u: Matrix<I>,
    pub u_inv: Matrix<I>,
    pub d: Matrix<I>,
    pub v: Matrix<I>,
}

impl<I: Integer + Signed + Clone> Snf<I> {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<I> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn int_identity<I: Integer + Clone>(n: usize) -> Matrix<I> {
    Matrix::from_fn(n, n, |r, c| if r == c { I::one() } else { I::zero() })
}

pub fn int_matmul<I: Integer + Clone>(a: &Matrix<I>, b: &Matrix<I>) -> Matrix<I> {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch in product");
    Matrix::from_fn(a.nrows(), b.ncols(), |r, c| {
        (0..a.ncols()).fold(I::zero(), |acc, k| acc + a[(r, k)].clone() * b[(k, c)].clone())
    })
}

// row_dst += q * row_src
fn add_row<I: Integer + Clone>(m: &mut Matrix<I>, dst: usize, src: usize, q: &I) {
    for c in 0..m.ncols() {
        let v = m[(src, c)].clone() * q.clone();
        m[(dst, c)] = m[(dst, c)].clone() + v;
    }
}

fn add_col<I: Integer + Clone>(m: &mut Matrix<I>, dst: usize, src: usize, q: &I) {
    for r in 0..m.nrows() {
        let v = m[(r, src)].clone() * q.clone();
        m[(r, dst)] = m[(r, dst)].clone() + v;
    }
}

/// Smith normal form with deterministic pivoting: at every stage the pivot
/// is the entry of smallest absolute value in the remaining block, ties
/// broken by lexicographic (row, column) position.
pub fn smith_normal_form<I: Integer + Signed + Clone>(a: &Matrix<I>) -> Snf<I> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = int_identity::<I>(m);
    let mut u_inv = int_identity::<I>(m);
    let mut v = int_identity::<I>(n);

    'stages: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    let x = &d[(r, c)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| x.abs() < d[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                break 'stages;
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            u_inv.swap_cols(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..m {
                let q = d[(r, t)].clone() / d[(t, t)].clone();
                if !q.is_zero() {
                    let nq = -q.clone();
                    add_row(&mut d, r, t, &nq);
                    add_row(&mut u, r, t, &nq);
                    add_col(&mut u_inv, t, r, &q);
                }
                if !d[(r, t)].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                let q = d[(t, c)].clone() / d[(t, t)].clone();
                if !q.is_zero() {
                    let nq = -q;
                    add_col(&mut d, c, t, &nq);
                    add_col(&mut v, c, t, &nq);
                }
                if !d[(t, c)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..m)
                .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !d[(r, c)].is_multiple_of(&pivot));
            if let Some((r, _)) = bad {
                let one = I::one();
                add_row(&mut d, t, r, &one);
                add_row(&mut u, t, r, &one);
                add_col(&mut u_inv, r, t, &(-one));
                continue;
            }
            break;
        }
        if d[(t, t)].is_negative() {
            for c in 0..n {
                d[(t, c)] = -d[(t, c)].clone();
            }
            for c in 0..m {
                u[(t, c)] = -u[(t, c)].clone();
            }
            for r in 0..m {
                u_inv[(r, t)] = -u_inv[(r, t)].clone();
            }
        }
    }
    Snf { u, u_inv, d, v }
}

/// A finite abelian group `Z/d_1 × … × Z/d_s` with `d_1 | … | d_s`, `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Builds the group from arbitrary diagonal entries, dropping units.
    pub fn from_diagonal(diag: impl IntoIterator<Item = BigInt>) -> Self {
        let mut f: Vec<BigInt> = diag
            .into_iter()
            .map(|x| x.abs())
            .filter(|x| !x.is_one())
            .collect();
        assert!(f.iter().all(|x| !x.is_zero()), "infinite cyclic factor");
        f.sort();
        let g = FiniteAbelianGroup {
            invariant_factors: f,
        };
        debug_assert!(g.is_valid_chain());
        g
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    fn is_valid_chain(&self) -> bool {
        self.invariant_factors
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        f.write_str(&parts.join(" x "))
    }
}

fn to_big(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.map(|&x| BigInt::from(x))
}

/// Invariant factors of `Z^n / f(Z^n)` for a square nonsingular `f`.
pub fn cokernel(f: &Matrix<i64>) -> Result<FiniteAbelianGroup, LatticeError> {
    if !f.is_square() {
        return Err(LatticeError::NotSquare {
            rows: f.nrows(),
            cols: f.ncols(),
        });
    }
    let snf = smith_normal_form(&to_big(f));
    if snf.rank() < f.nrows() {
        return Err(LatticeError::Singular);
    }
    Ok(FiniteAbelianGroup::from_diagonal(snf.invariant_factors()))
}

/// A free abelian group of rank `r`, optionally presented inside an ambient
/// `Z^m` by a basis (the columns of an `m × r` integer matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    basis: Option<Matrix<i64>>,
}

impl Lattice {
    pub fn standard(rank: usize) -> Self {
        Lattice { rank, basis: None }
    }

    pub fn with_basis(basis: Matrix<i64>) -> Result<Self, LatticeError> {
        let r = basis.ncols();
        let found = Matrix::<Rational>::from_i64(&basis).rank();
        if found != r {
            return Err(LatticeError::RankDeficient { expected: r, found });
        }
        Ok(Lattice {
            rank: r,
            basis: Some(basis),
        })
    }

    /// `{x ∈ Z^n : Σ x_i = 0}` with basis `e_i − e_{i+1}`.
    pub fn sum_zero(n: usize) -> Self {
        let basis = Matrix::from_fn(n, n.saturating_sub(1), |r, c| {
            if r == c {
                1
            } else if r == c + 1 {
                -1
            } else {
                0
            }
        });
        Lattice {
            rank: n.saturating_sub(1),
            basis: Some(basis),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.as_ref().map_or(self.rank, |b| b.nrows())
    }

    pub fn basis(&self) -> Option<&Matrix<i64>> {
        self.basis.as_ref()
    }

    /// Coordinates of an ambient vector in the lattice basis.
    pub fn coordinates(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        if v.len() != self.ambient_rank() {
            return Err(LatticeError::Dimension {
                expected: self.ambient_rank(),
                found: v.len(),
            });
        }
        let Some(b) = &self.basis else {
            return Ok(v.to_vec());
        };
        let bq = Matrix::<Rational>::from_i64(b);
        let rhs: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let sol = bq
            .solve(&rhs)
            .ok_or_else(|| LatticeError::NotInLattice(v.to_vec()))?;
        sol.iter()
            .map(|q| {
                if q.is_integer() {
                    q.numer().to_i64().ok_or_else(|| LatticeError::NotInLattice(v.to_vec()))
                } else {
                    Err(LatticeError::NotInLattice(v.to_vec()))
                }
            })
            .collect()
    }

    pub fn to_ambient(&self, coords: &[i64]) -> Vec<i64> {
        match &self.basis {
            Some(b) => b.int_mul_vec(coords),
            None => coords.to_vec(),
        }
    }
}

/// True iff the given lattice vectors (ambient coordinates) extend to a
/// basis of `lattice`: the gcd of maximal minors in lattice coordinates is 1.
pub fn is_unimodular_subset(vectors: &[Vec<i64>], lattice: &Lattice) -> Result<bool, LatticeError> {
    let coords: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| lattice.coordinates(v))
        .collect::<Result<_, _>>()?;
    is_primitive_system(&coords, lattice.rank())
}

/// Same as [`is_unimodular_subset`] for vectors already in `Z^rank`.
pub fn is_primitive_system(vectors: &[Vec<i64>], rank: usize) -> Result<bool, LatticeError> {
    if vectors.is_empty() {
        return Ok(true);
    }
    for v in vectors {
        if v.len() != rank {
            return Err(LatticeError::Dimension {
                expected: rank,
                found: v.len(),
            });
        }
    }
    let m = Matrix::from_cols(vectors, rank);
    let snf = smith_normal_form(&to_big(&m));
    if snf.rank() < vectors.len() {
        return Err(LatticeError::Dependent);
    }
    Ok(snf.invariant_factors().iter().all(|x| x.is_one()))
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("lattice entry fits in i64")
}

/// A basis of `span(vectors) ∩ Z^n`.
pub fn saturation(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_cols(vectors, n);
    let snf = smith_normal_form(&to_big(&m));
    (0..snf.rank())
        .map(|c| snf.u_inv.col(c).iter().map(big_to_i64).collect())
        .collect()
}

/// A basis of `{x ∈ Z^n : A x = 0}`, `n = A.ncols()`.
pub fn integer_kernel(a: &Matrix<i64>) -> Vec<Vec<i64>> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let snf = smith_normal_form(&to_big(a));
    (snf.rank()..n)
        .map(|c| snf.v.col(c).iter().map(big_to_i64).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`. Zero
/// rows are dropped, so the result is the canonical basis of the lattice.
pub fn hermite_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut out_row = 0;
    for col in 0..n {
        if out_row == m.len() {
            break;
        }
        loop {
            let piv = (out_row..m.len())
                .filter(|&r| m[r][col] != 0)
                .min_by_key(|&r| (m[r][col].abs(), r));
            let Some(p) = piv else { break };
            m.swap(out_row, p);
            let mut done = true;
            for r in out_row + 1..m.len() {
                let q = m[r][col].div_euclid(m[out_row][col]);
                if q != 0 {
                    let pivot = m[out_row].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if out_row < m.len() && m[out_row][col] != 0 {
            if m[out_row][col] < 0 {
                for x in m[out_row].iter_mut() {
                    *x = -*x;
                }
            }
            let p = m[out_row][col];
            for r in 0..out_row {
                let q = m[r][col].div_euclid(p);
                if q != 0 {
                    let pivot = m[out_row].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
            out_row += 1;
        }
    }
    m.truncate(out_row);
    m.retain(|r| r.iter().any(|&x| x != 0));
    m
}

/// Basis of the dual lattice of the full-rank lattice with basis columns `b`.
pub fn dual_basis(b: &RatMatrix) -> Option<RatMatrix> {
    Some(b.inverse()?.transpose())
}

/// True if two rational bases (columns) span the same lattice.
pub fn same_lattice(a: &[Vec<Rational>], b: &[Vec<Rational>], n: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    contains_lattice(a, b, n) && contains_lattice(b, a, n)
}

/// True if every vector of `inner` is an integral combination of `outer`.
pub fn contains_lattice(outer: &[Vec<Rational>], inner: &[Vec<Rational>], n: usize) -> bool {
    if inner.is_empty() {
        return true;
    }
    if outer.is_empty() {
        return inner.iter().all(|v| v.iter().all(|x| x.is_zero()));
    }
    let m = Matrix::from_cols(outer, n);
    inner.iter().all(|v| match m.solve(v) {
        Some(x) => x.iter().all(BigRational::is_integer) && m.mul_vec(&x) == *v,
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        let c = rows[0].len();
        Matrix::from_rows(rows, c)
    }

    fn check(a: &Matrix<i64>) -> Snf<i64> {
        let s = smith_normal_form(a);
        assert_eq!(int_matmul(&int_matmul(&s.u, a), &s.v), s.d);
        assert_eq!(int_matmul(&s.u, &s.u_inv), int_identity(a.nrows()));
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&im(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariant_factors(), vec![2, 4]);
        let s = check(&Matrix::int_identity(3));
        assert_eq!(s.d, Matrix::int_identity(3));
        let s = check(&im(vec![vec![1, 0], vec![1, 2]]));
        assert_eq!(s.invariant_factors(), vec![1, 2]);
        let s = check(&im(vec![vec![0, 0], vec![0, 0]]));
        assert!(s.invariant_factors().is_empty());
        let s = check(&im(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn cokernels() {
        let g = cokernel(&im(vec![vec![1, 0], vec![0, 2]])).unwrap();
        assert_eq!(g.to_string(), "Z/2");
        assert!(cokernel(&Matrix::int_identity(2)).unwrap().is_trivial());
        let g = cokernel(&im(vec![vec![2, 1], vec![1, 2]])).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(3)]);
        assert_eq!(
            cokernel(&im(vec![vec![1, 2]])),
            Err(LatticeError::NotSquare { rows: 1, cols: 2 })
        );
        assert_eq!(cokernel(&im(vec![vec![1, 2], vec![2, 4]])), Err(LatticeError::Singular));
    }

    #[test]
    fn unimodular_subsets() {
        let z2 = Lattice::standard(2);
        assert!(is_unimodular_subset(&[vec![1, 0]], &z2).unwrap());
        assert!(!is_unimodular_subset(&[vec![1, 0], vec![1, 2]], &z2).unwrap());
        assert_eq!(
            is_unimodular_subset(&[vec![1, 1], vec![2, 2]], &z2),
            Err(LatticeError::Dependent)
        );
        // chamber rays of SL(3) in the sum-zero lattice
        let n_sl3 = Lattice::sum_zero(3);
        assert_eq!(n_sl3.coordinates(&[2, -1, -1]).unwrap(), vec![2, 1]);
        assert!(!is_unimodular_subset(&[vec![2, -1, -1], vec![1, 1, -2]], &n_sl3).unwrap());
        assert!(matches!(
            n_sl3.coordinates(&[1, 0, 0]),
            Err(LatticeError::NotInLattice(_))
        ));
    }

    #[test]
    fn kernels_saturations_and_hermite() {
        let k = integer_kernel(&im(vec![vec![1, 1, 1]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        let s = saturation(&[vec![2, 4]], 2);
        assert_eq!(hermite_basis(&s, 2), vec![vec![1, 2]]);
        assert_eq!(
            hermite_basis(&[vec![0, 2], vec![1, 1], vec![1, 3]], 2),
            vec![vec![1, 1], vec![0, 2]]
        );
        assert_eq!(hermite_basis(&[vec![-1, 1]], 2), vec![vec![1, -1]]);
    }
}
