use std::collections::BTreeSet;
use std::fmt;

use super::dd::{generators_of_inequalities, PolyCone};
use super::PolyError;
use crate::matrix::Matrix;
use crate::scalar::{dot, dot_i64, to_field, OrderedField};
use crate::zlattice::{hermite_basis, integer_kernel};
use crate::Rational;

/// A strictly convex rational polyhedral cone in `N_R = R^dim`.
///
/// Stored in canonical double description: primitive extreme rays (sorted),
/// primitive facet normals `m` with `⟨m, x⟩ ≥ 0` on the cone (sorted, taken
/// inside `span(σ)`), and a Hermite basis of `span(σ)^⊥ ∩ M`. Two cones are
/// equal iff their canonical forms are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    equations: Vec<Vec<i64>>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

impl Cone {
    /// The cone generated by `gens` (any nonnegative spanning set).
    pub fn from_generators(dim: usize, gens: &[Vec<i64>]) -> Result<Self, PolyError> {
        for g in gens {
            if g.len() != dim {
                return Err(PolyError::Dimension {
                    expected: dim,
                    found: g.len(),
                });
            }
        }
        let gens: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let dual = generators_of_inequalities::<Rational>(dim, &gens);
        let facets = dual.rays.clone();
        let equations = dual.lineality.clone();
        let mut hrep = facets.clone();
        for e in &equations {
            hrep.push(e.clone());
            hrep.push(e.iter().map(|x| -x).collect());
        }
        let primal = generators_of_inequalities::<Rational>(dim, &hrep);
        if !primal.lineality.is_empty() {
            return Err(PolyError::NotStrictlyConvex);
        }
        Ok(Cone {
            dim,
            rays: primal.rays,
            facets,
            equations,
        })
    }

    /// `{x : ⟨a, x⟩ ≥ 0 ∀ a ∈ ineqs, ⟨e, x⟩ = 0 ∀ e ∈ eqs}`.
    pub fn from_inequalities(
        dim: usize,
        ineqs: &[Vec<i64>],
        eqs: &[Vec<i64>],
    ) -> Result<Self, PolyError> {
        let mut hrep: Vec<Vec<i64>> = ineqs.to_vec();
        for e in eqs {
            hrep.push(e.clone());
            hrep.push(e.iter().map(|x| -x).collect());
        }
        let p = generators_of_inequalities::<Rational>(dim, &hrep);
        if !p.lineality.is_empty() {
            return Err(PolyError::NotStrictlyConvex);
        }
        Cone::from_generators(dim, &p.rays)
    }

    pub fn zero(dim: usize) -> Self {
        Cone::from_generators(dim, &[]).expect("origin is strictly convex")
    }

    /// Ambient lattice rank.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    /// Basis of `span(σ)^⊥ ∩ M`.
    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dimension()
    }

    pub fn contains<F: OrderedField>(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.dim, "point has wrong dimension");
        self.facets
            .iter()
            .all(|m| dot(&to_field::<F>(m), x) >= F::zero())
            && self
                .equations
                .iter()
                .all(|e| dot(&to_field::<F>(e), x).is_zero())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|m| dot_i64(m, x) >= 0)
            && self.equations.iter().all(|e| dot_i64(e, x) == 0)
    }

    /// Points of the relative interior pair positively with every facet.
    pub fn relative_interior_contains<F: OrderedField>(&self, x: &[F]) -> bool {
        self.contains(x)
            && self
                .facets
                .iter()
                .all(|m| dot(&to_field::<F>(m), x).is_positive())
    }

    /// Sum of the rays: a lattice point in the relative interior.
    pub fn interior_point(&self) -> Vec<i64> {
        let mut p = vec![0; self.dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// The dual cone `σ∨ ⊂ M_R`, which has lineality `σ^⊥` when `σ` is not
    /// full-dimensional.
    pub fn dual(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
        }
    }

    pub fn as_poly(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            rays: self.rays.clone(),
            lineality: Vec::new(),
        }
    }

    /// All inequalities (facets and both signs of equations) describing the cone.
    pub fn halfspaces(&self) -> Vec<Vec<i64>> {
        let mut h = self.facets.clone();
        for e in &self.equations {
            h.push(e.clone());
            h.push(e.iter().map(|x| -x).collect());
        }
        h
    }

    /// All faces, including `{0}` and the cone itself, ordered by dimension
    /// and then canonically.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(face) = queue.pop() {
            for m in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| dot_i64(m, &self.rays[i]) == 0)
                    .collect();
                if seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                let gens: Vec<Vec<i64>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.dim, &gens).expect("faces are strictly convex")
            })
            .collect();
        faces.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
        faces
    }

    /// True if `self` is a face of `other`: a subset cut out by a supporting
    /// hyperplane. Decided by checking that `self`'s rays are exactly the rays
    /// of `other` lying on the minimal face containing them.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.dim != other.dim || !self.rays.iter().all(|r| other.rays.contains(r)) {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        // Minimal face of `other` containing self's interior point.
        let p = self.interior_point();
        let tight: Vec<&Vec<i64>> = other.facets.iter().filter(|m| dot_i64(m, &p) == 0).collect();
        let face_rays: Vec<Vec<i64>> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|m| dot_i64(m, r) == 0))
            .cloned()
            .collect();
        face_rays == self.rays
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.dim, other.dim, "cones live in different lattices");
        let mut h = self.halfspaces();
        h.extend(other.halfspaces());
        Cone::from_inequalities(self.dim, &h, &[]).expect("intersection of strictly convex cones")
    }

    /// Image of the cone under an integer linear map (rows of `m`).
    pub fn image(&self, m: &Matrix<i64>) -> Result<Cone, PolyError> {
        let gens: Vec<Vec<i64>> = self.rays.iter().map(|r| m.int_mul_vec(r)).collect();
        Cone::from_generators(m.nrows(), &gens)
    }
}

/// The quotient `N → N(τ) = N / (span(τ) ∩ N)`, realized as pairing with the
/// Hermite basis of `τ^⊥ ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    matrix: Matrix<i64>,
}

impl QuotientMap {
    pub fn for_cone(tau: &Cone) -> Self {
        let dim = tau.ambient_dim();
        let rows = if tau.is_zero() {
            (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect()
        } else {
            let r = Matrix::from_rows(tau.rays().to_vec(), dim);
            hermite_basis(&integer_kernel(&r), dim)
        };
        QuotientMap {
            matrix: Matrix::from_rows(rows, dim),
        }
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.matrix
    }

    pub fn apply<F: OrderedField>(&self, x: &[F]) -> Vec<F> {
        (0..self.matrix.nrows())
            .map(|r| dot(&to_field::<F>(self.matrix.row(r)), x))
            .collect()
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.int_mul_vec(x)
    }
}
