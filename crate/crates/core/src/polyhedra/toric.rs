//! Tropicalization of torus points and of points of affine toric varieties,
//! and the strata of canonical compactifications.

use num_traits::Zero;

use super::cone::{Cone, QuotientMap};
use super::monoid::ToricMonoid;
use super::PolyError;
use crate::matrix::Matrix;
use crate::scalar::{dot_i64, to_field};
use crate::valfield::ExtRat;
use crate::{Rational, ValuedScalar};

/// Coordinate-wise valuations of a point of the torus `T(L) = (L^*)^n`.
pub fn trop_torus_point(coords: &[ValuedScalar]) -> Result<Vec<Rational>, PolyError> {
    coords
        .iter()
        .enumerate()
        .map(|(i, x)| match x.valuation() {
            ExtRat::Finite(q) => Ok(q),
            ExtRat::Infinity => Err(PolyError::NotInTorus(i)),
        })
        .collect()
}

/// A point of the canonical compactification of `host`: the stratum indexed
/// by the face `face`, with coordinates `finite` in `N(face)_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPoint {
    pub host: Cone,
    pub face: Cone,
    pub finite: Vec<Rational>,
}

/// Tropicalizes a point of `U_σ(L)` given by the valuations of the monoid
/// generators `χ^h`, `h` running over `monoid.hilbert_basis` in order.
///
/// The face is the one whose `τ^⊥ ∩ σ∨` is exactly the finite locus; the
/// finite part is the induced element of `N(τ)`.
pub fn trop_toric_point(
    sigma: &Cone,
    monoid: &ToricMonoid,
    values: &[ExtRat],
) -> Result<ExtendedPoint, PolyError> {
    let hb = &monoid.hilbert_basis;
    if values.len() != hb.len() {
        return Err(PolyError::ValueCount {
            expected: hb.len(),
            found: values.len(),
        });
    }
    let dim = sigma.ambient_dim();
    let finite: Vec<usize> = (0..hb.len()).filter(|&i| values[i].is_finite()).collect();

    let face_rays: Vec<Vec<i64>> = sigma
        .rays()
        .iter()
        .filter(|r| finite.iter().all(|&i| dot_i64(&hb[i], r) == 0))
        .cloned()
        .collect();
    let tau = Cone::from_generators(dim, &face_rays)?;
    for (i, h) in hb.iter().enumerate() {
        let orthogonal = tau.rays().iter().all(|r| dot_i64(h, r) == 0);
        if orthogonal != values[i].is_finite() {
            return Err(if monoid.units.iter().any(|u| u == h || u.iter().zip(h).all(|(a, b)| *a == -b)) {
                PolyError::NotAdditive
            } else {
                PolyError::NotAFaceLocus
            });
        }
    }

    // Solve ⟨λ, h⟩ = val(h) on the finite locus.
    let rows: Vec<Vec<Rational>> = finite.iter().map(|&i| to_field(&hb[i])).collect();
    let rhs: Vec<Rational> = finite
        .iter()
        .map(|&i| values[i].finite().cloned().expect("finite by construction"))
        .collect();
    let lambda = if rows.is_empty() {
        vec![Rational::zero(); dim]
    } else {
        Matrix::from_rows(rows, dim)
            .solve(&rhs)
            .ok_or(PolyError::NotAdditive)?
    };
    let q = QuotientMap::for_cone(&tau);
    Ok(ExtendedPoint {
        host: sigma.clone(),
        face: tau,
        finite: q.apply(&lambda),
    })
}

/// One stratum of the canonical compactification of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub face: Cone,
    /// The image of the host cone in `N(face)`; its compactification is the
    /// closure of this stratum.
    pub star_cone: Cone,
    pub quotient: QuotientMap,
}

/// One stratum per face `τ`, each described by the star cone in `N(τ)`.
pub fn canonical_compactification_strata(sigma: &Cone) -> Vec<Stratum> {
    sigma
        .faces()
        .into_iter()
        .map(|tau| {
            let q = QuotientMap::for_cone(&tau);
            let star_cone = sigma.image(q.matrix()).expect("image of a cone modulo a face");
            Stratum {
                face: tau,
                star_cone,
                quotient: q,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{gordan_monoid, Budget};
    use crate::scalar::{int_rat, rat};
    use crate::valfield::parse_scalar;

    fn quadrant() -> Cone {
        Cone::from_generators(2, &[vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn torus_points() {
        let p = [parse_scalar("t^2", 1).unwrap(), parse_scalar("3 + t", 1).unwrap()];
        assert_eq!(trop_torus_point(&p).unwrap(), vec![int_rat(2), int_rat(0)]);
        let p = [parse_scalar("t^(1/2)", 2).unwrap(), parse_scalar("t^(-3)", 2).unwrap()];
        assert_eq!(trop_torus_point(&p).unwrap(), vec![rat(1, 2), int_rat(-3)]);
        let p = [parse_scalar("1", 1).unwrap(), parse_scalar("0", 1).unwrap()];
        assert_eq!(trop_torus_point(&p), Err(PolyError::NotInTorus(1)));
    }

    #[test]
    fn toric_points_of_the_plane() {
        let s = quadrant();
        let m = gordan_monoid(&s, Budget::default()).unwrap();
        // hilbert basis order: (0,1) = y, (1,0) = x
        let p = trop_toric_point(&s, &m, &[ExtRat::Infinity, ExtRat::Finite(int_rat(1))]).unwrap();
        assert_eq!(p.face.rays(), &[vec![0, 1]]);
        assert_eq!(p.finite, vec![int_rat(1)]);

        let p = trop_toric_point(
            &s,
            &m,
            &[ExtRat::Finite(int_rat(3)), ExtRat::Finite(int_rat(2))],
        )
        .unwrap();
        assert!(p.face.is_zero());
        assert_eq!(p.finite, vec![int_rat(2), int_rat(3)]);

        let p = trop_toric_point(&s, &m, &[ExtRat::Infinity, ExtRat::Infinity]).unwrap();
        assert_eq!(p.face, s);
        assert!(p.finite.is_empty());
    }

    #[test]
    fn non_additive_values_are_rejected() {
        let s = Cone::from_generators(2, &[vec![1, 0], vec![1, 2]]).unwrap();
        let m = gordan_monoid(&s, Budget::default()).unwrap();
        // basis (0,1), (1,0), (2,-1): relation (2,-1) + 2·(0,1) = 2·(1,0)
        let good = [1, 1, 1].map(|v| ExtRat::Finite(int_rat(v)));
        assert!(trop_toric_point(&s, &m, &good).is_ok());
        let bad = [1, 1, 5].map(|v| ExtRat::Finite(int_rat(v)));
        assert_eq!(trop_toric_point(&s, &m, &bad), Err(PolyError::NotAdditive));
        // finite only on (1,0): not a face of σ∨ since (1,0) is interior-ish
        let locus = [ExtRat::Infinity, ExtRat::Finite(int_rat(1)), ExtRat::Infinity];
        assert_eq!(trop_toric_point(&s, &m, &locus), Err(PolyError::NotAFaceLocus));
    }

    #[test]
    fn compactification_strata_counts() {
        assert_eq!(canonical_compactification_strata(&quadrant()).len(), 4);
        let ray = Cone::from_generators(2, &[vec![1, 1]]).unwrap();
        assert_eq!(canonical_compactification_strata(&ray).len(), 2);
        let simplex = Cone::from_generators(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let strata = canonical_compactification_strata(&simplex);
        assert_eq!(strata.len(), 8);
        for s in &strata {
            assert_eq!(s.star_cone.dimension(), 3 - s.face.dimension());
        }
    }
}
