//! Rational polyhedral cones and fans, dual cones, Gordan monoids, stars,
//! canonical compactifications and tropicalization of toric points.

mod cone;
mod dd;
mod fan;
mod monoid;
mod toric;

pub use cone::{Cone, QuotientMap};
pub use dd::{generators_of_inequalities, PolyCone};
pub use fan::{Fan, FanViolation, OrbitConeTable, OrbitEntry};
pub use monoid::{gordan_monoid, hilbert_basis, Budget, ToricMonoid};
pub use toric::{
    canonical_compactification_strata, trop_torus_point, trop_toric_point, ExtendedPoint, Stratum,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("zero vector given as a ray")]
    ZeroRay,
    #[error("ray index {0} out of range")]
    RayIndex(usize),
    #[error("cone is not in the fan")]
    NotInFan,
    #[error("cone is not a face")]
    NotAFace,
    #[error("lattice rank {rank} exceeds the cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("enumeration budget of {limit} lattice points exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("coordinate {0} is zero; the point is not in the torus")]
    NotInTorus(usize),
    #[error("values are not additive on the monoid relations")]
    NotAdditive,
    #[error("finite-valuation locus is not a face of the dual cone")]
    NotAFaceLocus,
    #[error("expected {expected} values, got {found}")]
    ValueCount { expected: usize, found: usize },
}

/// `σ∨ = {m : ⟨λ, m⟩ ≥ 0 ∀ λ ∈ σ}`, with lineality `σ^⊥`.
pub fn dual_cone(sigma: &Cone) -> PolyCone {
    sigma.dual()
}
