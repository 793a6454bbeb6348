//! Exact tropicalization machinery for reductive groups at desk scale.
//!
//! The crate covers valued scalars in `Q(t^{1/d})`, integer lattices and
//! Smith normal forms, rational polyhedral cones and fans with their
//! canonical compactifications, root data and Weyl chambers, stacky fans,
//! the type-A extended building via Goldman–Iwahori norms, Cartan
//! decompositions of matrices over valued fields, and decorated metric
//! chains. Every computation is exact.
//!
//! The linear algebra is generic over [`scalar::Field`] /
//! [`scalar::OrderedField`]; the aliases below fix the concrete types used
//! throughout the public API.

pub mod building;
pub mod cartan;
pub mod chains;
pub mod io;
pub mod matrix;
pub mod polyhedra;
pub mod rootdata;
pub mod scalar;
pub mod stacky;
pub mod valfield;
pub mod zlattice;

pub use matrix::Matrix;
pub use valfield::{ExtRat, Puiseux, ValuedField};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Element of `Q(t^{1/d})` with rational coefficients.
pub type ValuedScalar = Puiseux<Rational>;
pub type RatMatrix = Matrix<Rational>;
pub type IntMatrix = Matrix<i64>;
pub type ValuedMatrix = Matrix<ValuedScalar>;
