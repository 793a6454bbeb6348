//! Kummer data, stacky cones and fans, and fans in the type-A building.
//!
//! A Kummer datum on `σ ⊂ N_R` is a finite-index superlattice `M̃ ⊇ M`,
//! stored as a rational matrix `B` whose columns are a basis of `M̃` in
//! `M_Q` coordinates. The dual lattice `Ñ ⊆ N` has basis `B^{-T}`, and a
//! vector `n ∈ N_Q` has `Ñ`-coordinates `Bᵀ n`.

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::building::{norms_equal, GINorm};
use crate::matrix::Matrix;
use crate::polyhedra::{gordan_monoid, Budget, Cone, Fan, FanViolation, PolyError};
use crate::rootdata::{RootDataError, RootDatum, WeylGroup, WEYL_ORDER_CAP};
use crate::scalar::{primitive_i64, to_field};
use crate::zlattice::{
    cokernel, hermite_basis, integer_kernel, is_primitive_system, same_lattice, FiniteAbelianGroup,
    LatticeError,
};
use crate::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StackyError {
    #[error("superlattice basis must be a nonsingular {0}x{0} matrix")]
    BadBasis(usize),
    #[error("the given lattice does not contain M")]
    NotSuperlattice,
    #[error("not a face of the cone")]
    NotAFace,
    #[error("no Kummer datum for maximal cone {0:?}")]
    MissingKummer(Vec<Vec<i64>>),
    #[error("Kummer datum for a cone that is not maximal in the fan: {0:?}")]
    StrayKummer(Vec<Vec<i64>>),
    #[error("invalid fan: {0:?} and {1:?} meet in a non-face")]
    InvalidFan(Vec<Vec<i64>>, Vec<Vec<i64>>),
    #[error("cocharacter is not in any apartment of the fan")]
    NotRelatable,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// A cone `σ` with a superlattice `M̃ ⊇ M` of finite index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerData {
    cone: Cone,
    basis: RatMatrix,
    inverse: Matrix<i64>,
}

fn rational_to_i64(m: &RatMatrix) -> Option<Matrix<i64>> {
    let entries: Option<Vec<i64>> = m
        .entries()
        .map(|q| if q.is_integer() { q.numer().to_i64() } else { None })
        .collect();
    Some(Matrix::from_rows(
        entries?.chunks(m.ncols().max(1)).map(|c| c.to_vec()).collect(),
        m.ncols(),
    ))
}

impl KummerData {
    pub fn new(cone: Cone, basis: RatMatrix) -> Result<Self, StackyError> {
        let r = cone.ambient_dim();
        if basis.nrows() != r || basis.ncols() != r {
            return Err(StackyError::BadBasis(r));
        }
        let inv = basis.inverse().ok_or(StackyError::BadBasis(r))?;
        // M ⊆ M̃ iff every standard basis vector has integral M̃-coordinates
        let inverse = rational_to_i64(&inv).ok_or(StackyError::NotSuperlattice)?;
        Ok(KummerData {
            cone,
            basis,
            inverse,
        })
    }

    /// `M̃ = M`.
    pub fn trivial(cone: Cone) -> Self {
        let r = cone.ambient_dim();
        KummerData {
            cone,
            basis: Matrix::identity(r),
            inverse: Matrix::int_identity(r),
        }
    }

    /// `M̃` dual to the lattice spanned by the rays of a full-dimensional
    /// simplicial cone, so that `Ñ` is generated by the rays.
    pub fn from_ray_lattice(cone: Cone) -> Result<Self, StackyError> {
        let r = cone.ambient_dim();
        if cone.rays().len() != r {
            return Err(StackyError::BadBasis(r));
        }
        let rays = Matrix::<Rational>::from_i64(&Matrix::from_cols(cone.rays(), r));
        let inv = rays.inverse().ok_or(StackyError::BadBasis(r))?;
        Self::new(cone, inv.transpose())
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.index() == 1
    }

    /// `[M̃ : M]`.
    pub fn index(&self) -> u64 {
        let d = Matrix::<Rational>::from_i64(&self.inverse).determinant();
        d.abs().to_integer().to_u64().expect("index fits in u64")
    }

    /// Basis of `Ñ` (columns) in `N_Q` coordinates.
    pub fn n_tilde_basis(&self) -> RatMatrix {
        self.basis.inverse().expect("nonsingular").transpose()
    }

    /// Primitive generators of `σ̃` in `Ñ`-coordinates.
    pub fn tilde_generators(&self) -> Vec<Vec<i64>> {
        let bt = self.basis.transpose();
        self.cone
            .rays()
            .iter()
            .map(|r| primitive_i64(&bt.mul_vec(&to_field::<Rational>(r))))
            .collect()
    }

    /// The monoid `S̃_σ = σ∨ ∩ M̃`, as vectors of `M_Q`.
    pub fn monoid(&self, budget: Budget) -> Result<Vec<Vec<Rational>>, StackyError> {
        let r = self.cone.ambient_dim();
        let tilde = Cone::from_generators(r, &self.tilde_generators())?;
        let m = gordan_monoid(&tilde, budget)?;
        Ok(m.hilbert_basis
            .iter()
            .map(|c| self.basis.mul_vec(&to_field::<Rational>(c)))
            .collect())
    }

    /// Basis of `Ñ ∩ span(τ)`, in `N_Q` coordinates.
    pub fn lattice_on(&self, tau: &Cone) -> Vec<Vec<Rational>> {
        let r = self.cone.ambient_dim();
        if tau.is_zero() {
            return Vec::new();
        }
        let q = self.n_tilde_basis();
        if tau.dimension() == r {
            return (0..r).map(|c| q.col(c)).collect();
        }
        let annihilator = integer_kernel(&Matrix::from_rows(tau.rays().to_vec(), r));
        let aq = Matrix::<Rational>::from_i64(&Matrix::from_rows(annihilator, r)).mul(&q);
        // clear denominators row by row
        let rows: Vec<Vec<i64>> = (0..aq.nrows()).map(|i| primitive_i64(aq.row(i))).collect();
        let coeffs = hermite_basis(&integer_kernel(&Matrix::from_rows(rows, r)), r);
        coeffs
            .iter()
            .map(|c| q.mul_vec(&to_field::<Rational>(c)))
            .collect()
    }
}

/// The Kummer datum induced on a face: same `M̃`, smaller cone.
pub fn restrict_kummer_to_face(k: &KummerData, tau: &Cone) -> Result<KummerData, StackyError> {
    if !tau.is_face_of(&k.cone) {
        return Err(StackyError::NotAFace);
    }
    Ok(KummerData {
        cone: tau.clone(),
        basis: k.basis.clone(),
        inverse: k.inverse.clone(),
    })
}

/// `M̃ / M`.
pub fn stabilizer_group(k: &KummerData) -> FiniteAbelianGroup {
    cokernel(&k.inverse).expect("square nonsingular inclusion")
}

/// True iff `σ` is simplicial and the primitive generators of `σ̃` extend to
/// a basis of `Ñ`.
pub fn is_smooth_stacky_cone(k: &KummerData) -> bool {
    k.cone.is_simplicial()
        && is_primitive_system(&k.tilde_generators(), k.cone.ambient_dim()).unwrap_or(false)
}

/// A fan with one Kummer datum per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    fan: Fan,
    kummer: Vec<KummerData>,
}

/// Two maximal cones inducing different lattices on a common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyViolation {
    pub first: Cone,
    pub second: Cone,
    pub face: Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyCertificate {
    pub incidences_checked: usize,
}

impl StackyFan {
    /// Data must be supplied for exactly the maximal cones.
    pub fn new(fan: Fan, kummer: Vec<KummerData>) -> Result<Self, StackyError> {
        let maximal = fan.maximal_cones();
        for k in &kummer {
            if !maximal.contains(&k.cone) {
                return Err(StackyError::StrayKummer(k.cone.rays().to_vec()));
            }
        }
        let mut ordered = Vec::with_capacity(maximal.len());
        for m in &maximal {
            let k = kummer
                .iter()
                .find(|k| &k.cone == m)
                .ok_or_else(|| StackyError::MissingKummer(m.rays().to_vec()))?;
            ordered.push(k.clone());
        }
        Ok(StackyFan {
            fan,
            kummer: ordered,
        })
    }

    pub fn trivial(fan: Fan) -> Self {
        let kummer = fan.maximal_cones().into_iter().map(KummerData::trivial).collect();
        StackyFan { fan, kummer }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Kummer data of the maximal cones, in the order of `Fan::maximal_cones`.
    pub fn maximal_data(&self) -> &[KummerData] {
        &self.kummer
    }

    /// The datum on any cone, restricted from the first maximal cone
    /// containing it.
    pub fn kummer_for(&self, c: &Cone) -> Option<KummerData> {
        self.kummer
            .iter()
            .find(|k| c.is_face_of(&k.cone))
            .and_then(|k| restrict_kummer_to_face(k, c).ok())
    }

    /// Smoothness of every cone, in fan order.
    pub fn smoothness(&self) -> Vec<(Cone, bool)> {
        self.fan
            .cones()
            .iter()
            .map(|c| {
                let smooth = self.kummer_for(c).is_some_and(|k| is_smooth_stacky_cone(&k));
                (c.clone(), smooth)
            })
            .collect()
    }
}

/// Checks that maximal cones sharing a face induce the same lattice
/// `Ñ ∩ span(τ)` on it.
#[allow(clippy::result_large_err)]
pub fn validate_stacky_fan(f: &StackyFan) -> Result<StackyCertificate, StackyViolation> {
    let mut checked = 0;
    for (i, a) in f.kummer.iter().enumerate() {
        for b in &f.kummer[i + 1..] {
            let meet = a.cone.intersection(&b.cone);
            let r = a.cone.ambient_dim();
            for tau in meet.faces() {
                checked += 1;
                if !same_lattice(&a.lattice_on(&tau), &b.lattice_on(&tau), r) {
                    return Err(StackyViolation {
                        first: a.cone.clone(),
                        second: b.cone.clone(),
                        face: tau,
                    });
                }
            }
        }
    }
    Ok(StackyCertificate {
        incidences_checked: checked,
    })
}

/// True iff every Weyl group element maps maximal cones to maximal cones and
/// carries their `Ñ` lattices onto each other.
pub fn weyl_equivariance_check(f: &StackyFan, r: &RootDatum) -> Result<bool, StackyError> {
    let Some(positive) = r.positive_roots() else {
        return Err(RootDataError::Malformed("no positive system".into()).into());
    };
    let rank = r.rank();
    if f.fan.rank() != rank {
        return Err(StackyError::Dimension {
            expected: rank,
            found: f.fan.rank(),
        });
    }
    let w = WeylGroup::generate(r, positive, WEYL_ORDER_CAP)?;
    let cols = |m: &RatMatrix| (0..m.ncols()).map(|c| m.col(c)).collect::<Vec<_>>();
    for g in &w.elements {
        let gq = Matrix::<Rational>::from_i64(g);
        for k in &f.kummer {
            let image = k.cone.image(g)?;
            let Some(target) = f.kummer.iter().find(|t| t.cone == image) else {
                return Ok(false);
            };
            let moved = gq.mul(&k.n_tilde_basis());
            if !same_lattice(&cols(&moved), &cols(&target.n_tilde_basis()), rank) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A cone in the apartment of `GL(n)` attached to the frame `apartment`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingCone {
    pub apartment: RatMatrix,
    pub cone: Cone,
}

/// Records that cones `cones.0` and `cones.1` meet in `face`, a cone of the
/// apartment `apartment`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub cones: (usize, usize),
    pub apartment: RatMatrix,
    pub face: Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingFan {
    pub cones: Vec<BuildingCone>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildingFanViolation {
    SingularApartment(usize),
    /// Same apartment, intersection not a common face.
    NotAFan(usize, usize),
    MissingWitness(usize, usize),
    /// The witnessed face does not sit in the given cone as a face.
    BadWitness { witness: usize, cone: usize },
}

/// Coordinates of the point `(g, v)` in the apartment of `frame`, if the
/// point lies in that apartment.
pub fn coordinates_in_apartment(
    g: &RatMatrix,
    v: &[Rational],
    frame: &RatMatrix,
) -> Option<Vec<Rational>> {
    let norm = GINorm::new(g.clone(), v.to_vec()).ok()?;
    let mu: Option<Vec<Rational>> = (0..frame.ncols()).map(|j| norm.evaluate(&frame.col(j))).collect();
    let mu = mu?;
    let there = GINorm::new(frame.clone(), mu.clone()).ok()?;
    norms_equal(&norm, &there).then_some(mu)
}

impl BuildingFan {
    pub fn validate(&self) -> Result<(), BuildingFanViolation> {
        for (i, c) in self.cones.iter().enumerate() {
            if c.apartment.inverse().is_none() {
                return Err(BuildingFanViolation::SingularApartment(i));
            }
        }
        for (wi, w) in self.witnesses.iter().enumerate() {
            for idx in [w.cones.0, w.cones.1] {
                let Some(c) = self.cones.get(idx) else {
                    return Err(BuildingFanViolation::BadWitness { witness: wi, cone: idx });
                };
                if !self.witness_face_in(w, c) {
                    return Err(BuildingFanViolation::BadWitness { witness: wi, cone: idx });
                }
            }
        }
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let (a, b) = (&self.cones[i], &self.cones[j]);
                if a.apartment == b.apartment {
                    let meet = a.cone.intersection(&b.cone);
                    if !(meet.is_face_of(&a.cone) && meet.is_face_of(&b.cone)) {
                        return Err(BuildingFanViolation::NotAFan(i, j));
                    }
                } else if !self
                    .witnesses
                    .iter()
                    .any(|w| w.cones == (i, j) || w.cones == (j, i))
                {
                    return Err(BuildingFanViolation::MissingWitness(i, j));
                }
            }
        }
        Ok(())
    }

    /// The witness face, moved into the cone's apartment, is a face of it.
    fn witness_face_in(&self, w: &Witness, c: &BuildingCone) -> bool {
        let n = w.face.ambient_dim();
        let mut moved = Vec::new();
        let mut points: Vec<Vec<i64>> = w.face.rays().to_vec();
        points.push(w.face.interior_point());
        for p in &points {
            let Some(mu) = coordinates_in_apartment(&w.apartment, &to_field(p), &c.apartment) else {
                return false;
            };
            moved.push(mu);
        }
        let interior = moved.pop().expect("interior point pushed last");
        let rays: Vec<Vec<i64>> = moved.iter().map(|m| primitive_i64(m)).collect();
        if rays.iter().any(|r| r.iter().all(|x| *x == 0)) {
            return false;
        }
        let Ok(face) = Cone::from_generators(n, &rays) else {
            return false;
        };
        face.dimension() == w.face.dimension()
            && face.is_face_of(&c.cone)
            && face.relative_interior_contains(&interior)
    }
}

/// Limit test: `lim t^u` exists iff `u` lies in the support.
/// The cocharacter `(g, v)` is placed in each cone's apartment by comparing
/// Goldman–Iwahori norms.
pub fn one_parameter_limit_exists(
    g: &RatMatrix,
    v: &[i64],
    fan: &BuildingFan,
) -> Result<bool, StackyError> {
    if v.iter().all(|x| *x == 0) {
        return Ok(true);
    }
    let vq: Vec<Rational> = to_field(v);
    let mut relatable = false;
    for c in &fan.cones {
        if c.apartment.nrows() != v.len() {
            return Err(StackyError::Dimension {
                expected: c.apartment.nrows(),
                found: v.len(),
            });
        }
        if let Some(mu) = coordinates_in_apartment(g, &vq, &c.apartment) {
            relatable = true;
            if c.cone.contains(&mu) {
                return Ok(true);
            }
        }
    }
    if relatable {
        Ok(false)
    } else {
        Err(StackyError::NotRelatable)
    }
}

/// A stacky fan is valid when the fan is valid and the data are compatible.
pub fn check_stacky(f: &StackyFan) -> Result<StackyCertificate, StackyError> {
    f.fan.validate().map_err(|FanViolation { first, second, .. }| {
        StackyError::InvalidFan(first.rays().to_vec(), second.rays().to_vec())
    })?;
    validate_stacky_fan(f).map_err(|v| StackyError::InvalidFan(v.first.rays().to_vec(), v.second.rays().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{weyl_fan, GroupKind};
    use crate::scalar::{int_rat, rat};

    fn cone(gens: &[&[i64]]) -> Cone {
        let g: Vec<Vec<i64>> = gens.iter().map(|v| v.to_vec()).collect();
        Cone::from_generators(g[0].len(), &g).unwrap()
    }

    fn half_x() -> RatMatrix {
        Matrix::diagonal(&[rat(1, 2), int_rat(1)])
    }

    #[test]
    fn kummer_validity() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert!(KummerData::new(q.clone(), half_x()).is_ok());
        assert_eq!(
            KummerData::new(q.clone(), Matrix::diagonal(&[int_rat(2), int_rat(1)])),
            Err(StackyError::NotSuperlattice)
        );
        assert_eq!(
            KummerData::new(q, Matrix::zeros(2, 2)),
            Err(StackyError::BadBasis(2))
        );
    }

    #[test]
    fn face_restriction() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        let k = KummerData::new(q.clone(), half_x()).unwrap();
        let ray = cone(&[&[1, 0]]);
        let kr = restrict_kummer_to_face(&k, &ray).unwrap();
        let m = kr.monoid(Budget::default()).unwrap();
        // one generator with x = 1/2 (chosen modulo the units), plus ±e_2
        assert_eq!(m.iter().filter(|v| v[0] == rat(1, 2)).count(), 1);
        assert!(m.iter().all(|v| v[0] >= int_rat(0)));
        assert!(m.contains(&vec![int_rat(0), int_rat(1)]));
        assert!(m.contains(&vec![int_rat(0), int_rat(-1)]));
        assert_eq!(m.len(), 3);
        let kz = restrict_kummer_to_face(&KummerData::trivial(q.clone()), &ray).unwrap();
        assert!(kz.is_trivial());
        let k0 = restrict_kummer_to_face(&k, &Cone::zero(2)).unwrap();
        assert_eq!(k0.monoid(Budget::default()).unwrap().len(), 4);
        assert_eq!(k0.basis(), &half_x());
        assert_eq!(
            restrict_kummer_to_face(&k, &cone(&[&[1, 1]])),
            Err(StackyError::NotAFace)
        );
    }

    #[test]
    fn stabilizers_and_smoothness() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        let k = KummerData::new(q.clone(), half_x()).unwrap();
        assert_eq!(stabilizer_group(&k).to_string(), "Z/2");
        assert_eq!(k.index(), 2);
        assert!(stabilizer_group(&KummerData::trivial(q)).is_trivial());

        let sl = RootDatum::builtin(GroupKind::Sl(3));
        let chamber = sl.dominant_cone(sl.positive_roots().unwrap()).unwrap();
        assert!(!is_smooth_stacky_cone(&KummerData::trivial(chamber.clone())));
        let ext = KummerData::from_ray_lattice(chamber).unwrap();
        assert_eq!(stabilizer_group(&ext).to_string(), "Z/3");
        assert!(is_smooth_stacky_cone(&ext));

        let pgl = RootDatum::builtin(GroupKind::Pgl(3));
        let chamber = pgl.dominant_cone(pgl.positive_roots().unwrap()).unwrap();
        assert!(is_smooth_stacky_cone(&KummerData::trivial(chamber)));
        assert!(!is_smooth_stacky_cone(&KummerData::trivial(cone(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, -1]
        ]))));
    }

    #[test]
    fn stacky_fans() {
        let rays = vec![vec![1, 0], vec![0, 1], vec![0, -1]];
        let fan = Fan::from_ray_indices(2, &rays, &[vec![0, 1], vec![0, 2]]).unwrap();
        assert!(validate_stacky_fan(&StackyFan::trivial(fan.clone())).is_ok());
        let upper = cone(&[&[1, 0], &[0, 1]]);
        let lower = cone(&[&[1, 0], &[0, -1]]);
        let bad = StackyFan::new(
            fan.clone(),
            vec![
                KummerData::new(upper.clone(), half_x()).unwrap(),
                KummerData::trivial(lower.clone()),
            ],
        )
        .unwrap();
        let v = validate_stacky_fan(&bad).unwrap_err();
        assert_eq!(v.face, cone(&[&[1, 0]]));
        // a superlattice only along the y-axis is invisible on the shared ray
        let half_y = Matrix::diagonal(&[int_rat(1), rat(1, 2)]);
        let ok = StackyFan::new(
            fan.clone(),
            vec![KummerData::new(upper, half_y).unwrap(), KummerData::trivial(lower)],
        )
        .unwrap();
        assert!(validate_stacky_fan(&ok).is_ok());
        let single = Fan::from_ray_indices(2, &rays, &[vec![0, 1]]).unwrap();
        assert!(validate_stacky_fan(&StackyFan::trivial(single)).is_ok());
        assert!(matches!(
            StackyFan::new(fan, vec![]),
            Err(StackyError::MissingKummer(_))
        ));
    }

    #[test]
    fn weyl_equivariance() {
        let pgl = RootDatum::builtin(GroupKind::Pgl(3));
        let pos = pgl.positive_roots().unwrap().to_vec();
        let fan = weyl_fan(&pgl, &pos, 4).unwrap();
        assert!(weyl_equivariance_check(&StackyFan::trivial(fan.clone()), &pgl).unwrap());
        let chamber = pgl.dominant_cone(&pos).unwrap();
        let alone = Fan::from_cones(2, std::slice::from_ref(&chamber));
        assert!(!weyl_equivariance_check(&StackyFan::trivial(alone), &pgl).unwrap());
        let mut data: Vec<KummerData> = fan.maximal_cones().into_iter().map(KummerData::trivial).collect();
        let pos0 = data.iter().position(|k| k.cone() == &chamber).unwrap();
        data[pos0] = KummerData::new(chamber, Matrix::diagonal(&[rat(1, 2), rat(1, 2)])).unwrap();
        let altered = StackyFan::new(fan, data).unwrap();
        assert!(!weyl_equivariance_check(&altered, &pgl).unwrap());
    }

    fn reference_fan() -> BuildingFan {
        BuildingFan {
            cones: vec![BuildingCone {
                apartment: Matrix::identity(2),
                cone: cone(&[&[1, 0], &[1, 2]]),
            }],
            witnesses: vec![],
        }
    }

    #[test]
    fn one_parameter_limits() {
        let f = reference_fan();
        let id: RatMatrix = Matrix::identity(2);
        assert!(one_parameter_limit_exists(&id, &[1, 2], &f).unwrap());
        assert!(!one_parameter_limit_exists(&id, &[-1, 0], &f).unwrap());
        assert!(one_parameter_limit_exists(&id, &[0, 0], &f).unwrap());
        assert!(one_parameter_limit_exists(&id, &[3, 6], &f).unwrap());
        // the same cocharacter written in the swapped frame
        let p: RatMatrix = crate::building::permutation_matrix(&[1, 0]);
        assert!(one_parameter_limit_exists(&p, &[2, 1], &f).unwrap());
        assert!(!one_parameter_limit_exists(&p, &[1, -1], &f).unwrap());
        // a frame sharing no apartment with the identity at this point
        let shear = Matrix::from_rows(vec![vec![int_rat(1), int_rat(1)], vec![int_rat(0), int_rat(1)]], 2);
        assert_eq!(
            one_parameter_limit_exists(&shear, &[0, 1], &f),
            Err(StackyError::NotRelatable)
        );
        assert!(one_parameter_limit_exists(&shear, &[1, 0], &f).unwrap());
    }

    #[test]
    fn building_fans() {
        let id: RatMatrix = Matrix::identity(2);
        let shear = Matrix::from_rows(vec![vec![int_rat(1), int_rat(1)], vec![int_rat(0), int_rat(1)]], 2);
        let a = BuildingCone {
            apartment: id.clone(),
            cone: cone(&[&[1, 0], &[1, -1]]),
        };
        let b = BuildingCone {
            apartment: shear.clone(),
            cone: cone(&[&[1, 0], &[1, -1]]),
        };
        let mut f = BuildingFan {
            cones: vec![a, b],
            witnesses: vec![],
        };
        assert_eq!(f.validate(), Err(BuildingFanViolation::MissingWitness(0, 1)));
        f.witnesses.push(Witness {
            cones: (0, 1),
            apartment: id.clone(),
            face: cone(&[&[1, 0], &[1, -1]]),
        });
        assert!(f.validate().is_ok());
        f.witnesses[0].face = cone(&[&[0, 1]]);
        assert!(matches!(f.validate(), Err(BuildingFanViolation::BadWitness { .. })));
        let overlap = BuildingFan {
            cones: vec![
                BuildingCone {
                    apartment: id.clone(),
                    cone: cone(&[&[1, 0], &[0, 1]]),
                },
                BuildingCone {
                    apartment: id,
                    cone: cone(&[&[1, 1], &[-1, 1]]),
                },
            ],
            witnesses: vec![],
        };
        assert_eq!(overlap.validate(), Err(BuildingFanViolation::NotAFan(0, 1)));
    }
}
