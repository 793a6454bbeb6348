//! Root data, Weyl groups, Weyl chambers and the coroot-hyperplane fan.
//!
//! Both lattices are `Z^r` in chosen bases with an explicit integer pairing
//! matrix `P`: `⟨λ, m⟩ = λᵀ P m` for `λ ∈ N`, `m ∈ M`. The builtin data of
//! type A use dual bases, so `P` is the identity there.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::polyhedra::{generators_of_inequalities, Cone, Fan, PolyCone, PolyError};
use crate::scalar::{dot, to_field};
use crate::zlattice::{hermite_basis, integer_kernel, Lattice};
use crate::Rational;

/// Default cap on the order of an enumerated Weyl group.
pub const WEYL_ORDER_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("Weyl group order exceeds the cap {0}")]
    WeylGroupTooLarge(usize),
    #[error("lattice rank {rank} exceeds the cap {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("root index {0} out of range")]
    RootIndex(usize),
    #[error("malformed root datum: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The classical groups with builtin root data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Gl(usize),
    Sl(usize),
    Pgl(usize),
}

impl GroupKind {
    /// Parses `GL(3)`, `SL3`, `pgl(2)` and the like.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_uppercase();
        let (head, rest) = if let Some(r) = s.strip_prefix("PGL") {
            ("PGL", r)
        } else if let Some(r) = s.strip_prefix("GL") {
            ("GL", r)
        } else {
            ("SL", s.strip_prefix("SL")?)
        };
        let n: usize = rest.trim_start_matches('(').trim_end_matches(')').trim().parse().ok()?;
        if n == 0 {
            return None;
        }
        Some(match head {
            "GL" => GroupKind::Gl(n),
            "SL" => GroupKind::Sl(n),
            _ => GroupKind::Pgl(n),
        })
    }

    pub fn n(&self) -> usize {
        match *self {
            GroupKind::Gl(n) | GroupKind::Sl(n) | GroupKind::Pgl(n) => n,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Gl(n) => write!(f, "GL({n})"),
            GroupKind::Sl(n) => write!(f, "SL({n})"),
            GroupKind::Pgl(n) => write!(f, "PGL({n})"),
        }
    }
}

/// A root datum `(M, Φ, N, Φ*)`; `coroots[i]` is the coroot of `roots[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub m_lattice: Lattice,
    pub n_lattice: Lattice,
    pub pairing: Matrix<i64>,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Default positive system (indices into `roots`), if one has been fixed.
    pub positive: Option<Vec<usize>>,
}

/// A structural defect found by [`validate_root_datum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `⟨α*, α⟩ ≠ 2`.
    Pairing { root: usize, value: i64 },
    /// `s_α(β) ∉ Φ`.
    Closure { root: usize, image_of: usize },
    /// `s_{α*}(β*) ∉ Φ*`.
    CoClosure { coroot: usize, image_of: usize },
    /// Shapes disagree with the lattice ranks.
    Shape(String),
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Pairing { .. } => "pairing",
            Violation::Closure { .. } => "closure",
            Violation::CoClosure { .. } => "coclosure",
            Violation::Shape(_) => "shape",
        }
    }
}

/// Proof that every axiom was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatumCertificate {
    pub roots: usize,
    pub pairings_checked: usize,
    pub reflections_checked: usize,
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Type-A roots `e_a − e_b` in the basis of "fundamental" vectors
/// `ω_k = e_1 + … + e_k` of `Z^n / (1,…,1)`.
fn quotient_coords(a: usize, b: usize, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n - 1];
    let mut bump = |k: usize, s: i64| {
        if (1..n).contains(&k) {
            v[k - 1] += s;
        }
    };
    // ē_a = ω_a − ω_{a−1}, indices 1-based, ω_0 = ω_n = 0
    bump(a + 1, 1);
    bump(a, -1);
    bump(b + 1, -1);
    bump(b, 1);
    v
}

/// Type-A roots `e_a − e_b` in the basis `f_k = e_k − e_{k+1}` of the
/// sum-zero sublattice.
fn sum_zero_coords(a: usize, b: usize, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n - 1];
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    for x in v.iter_mut().take(hi).skip(lo) {
        *x = s;
    }
    v
}

impl RootDatum {
    /// The standard root datum of `GL(n)`, `SL(n)` or `PGL(n)` with the
    /// positive system `{e_i − e_j : i < j}`, whose dominant chamber is
    /// `λ_1 ≥ … ≥ λ_n`.
    pub fn builtin(kind: GroupKind) -> RootDatum {
        let n = kind.n();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let (m_lattice, n_lattice, roots, coroots, r) = match kind {
            GroupKind::Gl(_) => {
                let e = |a: usize, b: usize| {
                    let mut v = vec![0i64; n];
                    v[a] = 1;
                    v[b] = -1;
                    v
                };
                let roots: Vec<Vec<i64>> = pairs.iter().map(|&(a, b)| e(a, b)).collect();
                (Lattice::standard(n), Lattice::standard(n), roots.clone(), roots, n)
            }
            GroupKind::Sl(_) => (
                Lattice::standard(n - 1),
                Lattice::sum_zero(n),
                pairs.iter().map(|&(a, b)| quotient_coords(a, b, n)).collect(),
                pairs.iter().map(|&(a, b)| sum_zero_coords(a, b, n)).collect(),
                n - 1,
            ),
            GroupKind::Pgl(_) => (
                Lattice::sum_zero(n),
                Lattice::standard(n - 1),
                pairs.iter().map(|&(a, b)| sum_zero_coords(a, b, n)).collect(),
                pairs.iter().map(|&(a, b)| quotient_coords(a, b, n)).collect(),
                n - 1,
            ),
        };
        let positive = pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a < b)
            .map(|(i, _)| i)
            .collect();
        RootDatum {
            m_lattice,
            n_lattice,
            pairing: Matrix::int_identity(r),
            roots,
            coroots,
            positive: Some(positive),
        }
    }

    pub fn rank(&self) -> usize {
        self.pairing.nrows()
    }

    /// `⟨λ, m⟩` for `λ ∈ N`, `m ∈ M`.
    pub fn pair(&self, lambda: &[i64], m: &[i64]) -> i64 {
        let pm = self.pairing.int_mul_vec(m);
        lambda.iter().zip(&pm).map(|(a, b)| a * b).sum()
    }

    pub fn pair_rational(&self, lambda: &[Rational], m: &[i64]) -> Rational {
        dot(lambda, &to_field::<Rational>(&self.pairing.int_mul_vec(m)))
    }

    /// The linear form `λ ↦ ⟨λ, m⟩` as an integer vector on `N`.
    pub fn functional(&self, m: &[i64]) -> Vec<i64> {
        self.pairing.int_mul_vec(m)
    }

    /// `s_α` acting on `M`.
    pub fn reflect_m(&self, root: usize, m: &[i64]) -> Vec<i64> {
        let c = self.pair(&self.coroots[root], m);
        m.iter().zip(&self.roots[root]).map(|(x, a)| x - c * a).collect()
    }

    /// `s_{α*}` acting on `N`.
    pub fn reflect_n(&self, root: usize, lambda: &[i64]) -> Vec<i64> {
        let c = self.pair(lambda, &self.roots[root]);
        lambda
            .iter()
            .zip(&self.coroots[root])
            .map(|(x, a)| x - c * a)
            .collect()
    }

    /// Matrix of `s_{α*}` on `N`.
    pub fn reflection_matrix(&self, root: usize) -> Matrix<i64> {
        let r = self.rank();
        let f = self.functional(&self.roots[root]);
        let a = &self.coroots[root];
        Matrix::from_fn(r, r, |i, j| i64::from(i == j) - a[i] * f[j])
    }

    pub fn positive_roots(&self) -> Option<&[usize]> {
        self.positive.as_deref()
    }

    /// Simple roots of a positive system: positive roots that are not a sum
    /// of two positive roots.
    pub fn simple_roots(&self, positive: &[usize]) -> Vec<usize> {
        let set: BTreeSet<&Vec<i64>> = positive.iter().map(|&i| &self.roots[i]).collect();
        positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&j| {
                    j != i && set.contains(&sub(&self.roots[i], &self.roots[j]))
                })
            })
            .collect()
    }

    /// The Weyl chamber `{u : ⟨u, α⟩ ≥ 0 ∀ α ∈ Φ⁺}`, possibly with lineality.
    pub fn weyl_chamber(&self, positive: &[usize]) -> PolyCone {
        let ineqs: Vec<Vec<i64>> = positive.iter().map(|&i| self.functional(&self.roots[i])).collect();
        generators_of_inequalities::<Rational>(self.rank(), &ineqs)
    }

    /// The dominant chamber as a strictly convex cone (semisimple case).
    pub fn dominant_cone(&self, positive: &[usize]) -> Result<Cone, PolyError> {
        let ineqs: Vec<Vec<i64>> = positive.iter().map(|&i| self.functional(&self.roots[i])).collect();
        Cone::from_inequalities(self.rank(), &ineqs, &[])
    }

    /// A basis of the `W`-invariant characters `{m : ⟨α*, m⟩ = 0 ∀ α*}`.
    pub fn invariant_characters(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        if self.coroots.is_empty() {
            return (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        }
        let pt = self.pairing.transpose();
        let rows: Vec<Vec<i64>> = self.coroots.iter().map(|a| pt.int_mul_vec(a)).collect();
        hermite_basis(&integer_kernel(&Matrix::from_rows(rows, r)), r)
    }
}

/// Checks the axioms exhaustively; returns every violation found.
pub fn validate_root_datum(r: &RootDatum) -> Result<RootDatumCertificate, Vec<Violation>> {
    let rank = r.rank();
    let mut violations = Vec::new();
    if !r.pairing.is_square() {
        violations.push(Violation::Shape("pairing matrix is not square".into()));
        return Err(violations);
    }
    if r.roots.len() != r.coroots.len() {
        violations.push(Violation::Shape(format!(
            "{} roots but {} coroots",
            r.roots.len(),
            r.coroots.len()
        )));
        return Err(violations);
    }
    if r.roots.iter().chain(&r.coroots).any(|v| v.len() != rank) {
        violations.push(Violation::Shape(format!("vectors must have length {rank}")));
        return Err(violations);
    }
    let roots: BTreeSet<&Vec<i64>> = r.roots.iter().collect();
    let coroots: BTreeSet<&Vec<i64>> = r.coroots.iter().collect();
    let mut reflections = 0;
    for i in 0..r.roots.len() {
        let v = r.pair(&r.coroots[i], &r.roots[i]);
        if v != 2 {
            violations.push(Violation::Pairing { root: i, value: v });
        }
        for j in 0..r.roots.len() {
            reflections += 1;
            if !roots.contains(&r.reflect_m(i, &r.roots[j])) {
                violations.push(Violation::Closure {
                    root: i,
                    image_of: j,
                });
            }
            if !coroots.contains(&r.reflect_n(i, &r.coroots[j])) {
                violations.push(Violation::CoClosure {
                    coroot: i,
                    image_of: j,
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(RootDatumCertificate {
            roots: r.roots.len(),
            pairings_checked: r.roots.len(),
            reflections_checked: reflections,
        })
    } else {
        Err(violations)
    }
}

/// A finite Weyl group as an explicit list of matrices acting on `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub elements: Vec<Matrix<i64>>,
    pub generators: Vec<Matrix<i64>>,
}

impl WeylGroup {
    /// Closure of the simple reflections by breadth-first products.
    pub fn generate(r: &RootDatum, positive: &[usize], cap: usize) -> Result<Self, RootDataError> {
        let generators: Vec<Matrix<i64>> = r
            .simple_roots(positive)
            .into_iter()
            .map(|i| r.reflection_matrix(i))
            .collect();
        let id = Matrix::int_identity(r.rank());
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let key = |m: &Matrix<i64>| m.entries().copied().collect::<Vec<i64>>();
        seen.insert(key(&id));
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in &generators {
                let p = s.int_mul(&w);
                if seen.insert(key(&p)) {
                    if elements.len() >= cap {
                        return Err(RootDataError::WeylGroupTooLarge(cap));
                    }
                    elements.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
        Ok(WeylGroup {
            elements,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn act(w: &Matrix<i64>, lambda: &[Rational]) -> Vec<Rational> {
        Matrix::<Rational>::from_i64(w).mul_vec(lambda)
    }
}

/// Moves `λ` into the dominant chamber by repeatedly applying a simple
/// reflection whose root pairs negatively with it. Returns the dominant
/// vector and the Weyl element `w` with `λ_dom = w · λ`.
pub fn dominant_representative(
    lambda: &[Rational],
    r: &RootDatum,
    positive: &[usize],
) -> (Vec<Rational>, Matrix<i64>) {
    let simple = r.simple_roots(positive);
    let mut current = lambda.to_vec();
    let mut w = Matrix::int_identity(r.rank());
    loop {
        let bad = simple
            .iter()
            .copied()
            .find(|&i| r.pair_rational(&current, &r.roots[i]).is_negative());
        let Some(i) = bad else {
            return (current, w);
        };
        let s = r.reflection_matrix(i);
        current = WeylGroup::act(&s, &current);
        w = s.int_mul(&w);
    }
}

/// Basis of `{λ : ⟨λ, α⟩ = 0 ∀ α ∈ I}`; lattice points of the subspace in
/// Hermite form.
pub fn apartment_intersection(roots: &[usize], r: &RootDatum) -> Result<Vec<Vec<i64>>, RootDataError> {
    let rank = r.rank();
    let mut rows = Vec::new();
    for &i in roots {
        let a = r.roots.get(i).ok_or(RootDataError::RootIndex(i))?;
        rows.push(r.functional(a));
    }
    if rows.is_empty() {
        return Ok((0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect());
    }
    Ok(hermite_basis(&integer_kernel(&Matrix::from_rows(rows, rank)), rank))
}

/// The fan of all Weyl chambers and their faces.
///
/// When the chambers contain lines (non-semisimple data such as `GL(n)`),
/// each chamber is additionally cut by the coordinate hyperplanes of a basis
/// of `W`-invariant characters, which keeps every cone strictly convex and
/// the fan `W`-stable.
pub fn weyl_fan(r: &RootDatum, positive: &[usize], max_rank: usize) -> Result<Fan, RootDataError> {
    let rank = r.rank();
    if rank > max_rank {
        return Err(RootDataError::RankCap {
            rank,
            cap: max_rank,
        });
    }
    let w = WeylGroup::generate(r, positive, WEYL_ORDER_CAP)?;
    let base: Vec<Vec<i64>> = positive.iter().map(|&i| r.functional(&r.roots[i])).collect();
    let invariants: Vec<Vec<i64>> = r.invariant_characters().iter().map(|m| r.functional(m)).collect();
    let mut maximal: BTreeSet<Cone> = BTreeSet::new();
    for signs in 0..(1usize << invariants.len()) {
        let mut ineqs = base.clone();
        for (j, l) in invariants.iter().enumerate() {
            let s = if signs >> j & 1 == 0 { 1 } else { -1 };
            ineqs.push(l.iter().map(|x| s * x).collect());
        }
        let chamber = Cone::from_inequalities(rank, &ineqs, &[])?;
        for g in &w.elements {
            maximal.insert(chamber.image(g)?);
        }
    }
    let maximal: Vec<Cone> = maximal.into_iter().collect();
    Ok(Fan::from_cones(rank, &maximal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int_rat, rat};
    use crate::zlattice::is_unimodular_subset;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int_rat(x)).collect()
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(GroupKind::parse("GL(3)"), Some(GroupKind::Gl(3)));
        assert_eq!(GroupKind::parse("pgl3"), Some(GroupKind::Pgl(3)));
        assert_eq!(GroupKind::parse("SL(2)"), Some(GroupKind::Sl(2)));
        assert_eq!(GroupKind::parse("SO(3)"), None);
        assert_eq!(GroupKind::parse("GL(0)"), None);
    }

    #[test]
    fn builtins_validate_and_have_symmetric_weyl_groups() {
        for n in 1..=4 {
            for kind in [GroupKind::Gl(n), GroupKind::Sl(n), GroupKind::Pgl(n)] {
                let r = RootDatum::builtin(kind);
                assert!(validate_root_datum(&r).is_ok(), "{kind}");
                let w = WeylGroup::generate(&r, r.positive_roots().unwrap(), WEYL_ORDER_CAP).unwrap();
                let fact: usize = (1..=n).product();
                assert_eq!(w.order(), fact, "{kind}");
            }
        }
        let gl2 = RootDatum::builtin(GroupKind::Gl(2));
        assert_eq!(gl2.roots, vec![vec![1, -1], vec![-1, 1]]);
    }

    #[test]
    fn injected_defects_are_reported() {
        let mut r = RootDatum::builtin(GroupKind::Sl(2));
        r.coroots[0] = vec![2];
        r.coroots[1] = vec![-2];
        let v = validate_root_datum(&r).unwrap_err();
        assert!(v.iter().any(|x| x.kind() == "pairing"));

        let mut r = RootDatum::builtin(GroupKind::Gl(3));
        r.roots.pop();
        r.coroots.pop();
        let v = validate_root_datum(&r).unwrap_err();
        assert!(v.iter().any(|x| x.kind() == "closure"));
    }

    #[test]
    fn dominance_is_descending_sort_in_type_a() {
        let r = RootDatum::builtin(GroupKind::Gl(3));
        let pos = r.positive_roots().unwrap().to_vec();
        let (d, _) = dominant_representative(&ints(&[0, 3, 1]), &r, &pos);
        assert_eq!(d, ints(&[3, 1, 0]));
        let (d, w) = dominant_representative(&ints(&[5, 2, 2]), &r, &pos);
        assert_eq!(d, ints(&[5, 2, 2]));
        assert_eq!(w, Matrix::int_identity(3));
        let r2 = RootDatum::builtin(GroupKind::Gl(2));
        let (d, w) = dominant_representative(&ints(&[0, 5]), &r2, r2.positive_roots().unwrap());
        assert_eq!(d, ints(&[5, 0]));
        assert_eq!(w, Matrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2));
        let (d, _) = dominant_representative(&[rat(1, 2), rat(3, 4)], &r2, r2.positive_roots().unwrap());
        assert_eq!(d, vec![rat(3, 4), rat(1, 2)]);
    }

    #[test]
    fn apartment_intersections() {
        let r = RootDatum::builtin(GroupKind::Gl(3));
        // root 0 is e_1 - e_2
        assert_eq!(r.roots[0], vec![1, -1, 0]);
        let plane = apartment_intersection(&[0], &r).unwrap();
        assert_eq!(plane.len(), 2);
        for v in &plane {
            assert_eq!(v[0], v[1]);
        }
        assert_eq!(apartment_intersection(&[], &r).unwrap().len(), 3);
        let sl = RootDatum::builtin(GroupKind::Sl(3));
        // e_1 - e_2 and e_2 - e_3
        let i12 = sl.coroots.iter().position(|c| c == &vec![1, 0]).unwrap();
        let i23 = sl.coroots.iter().position(|c| c == &vec![0, 1]).unwrap();
        assert!(apartment_intersection(&[i12, i23], &sl).unwrap().is_empty());
    }

    #[test]
    fn chambers_of_sl3_and_pgl3() {
        let sl = RootDatum::builtin(GroupKind::Sl(3));
        let c = sl.dominant_cone(sl.positive_roots().unwrap()).unwrap();
        assert_eq!(c.rays(), &[vec![1, 2], vec![2, 1]]);
        let ambient: Vec<Vec<i64>> = c.rays().iter().map(|r| sl.n_lattice.to_ambient(r)).collect();
        assert!(ambient.contains(&vec![2, -1, -1]) && ambient.contains(&vec![1, 1, -2]));
        assert!(!is_unimodular_subset(&ambient, &sl.n_lattice).unwrap());
        let pgl = RootDatum::builtin(GroupKind::Pgl(3));
        let c = pgl.dominant_cone(pgl.positive_roots().unwrap()).unwrap();
        assert!(is_unimodular_subset(c.rays(), &pgl.n_lattice).unwrap());
        let gl = RootDatum::builtin(GroupKind::Gl(3));
        let ch = gl.weyl_chamber(gl.positive_roots().unwrap());
        assert_eq!(ch.lineality, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn weyl_fans() {
        let pgl = RootDatum::builtin(GroupKind::Pgl(3));
        let f = weyl_fan(&pgl, pgl.positive_roots().unwrap(), 4).unwrap();
        assert_eq!(f.len(), 13);
        assert_eq!(f.counts_by_dimension(), vec![1, 6, 6]);
        assert!(f.validate().is_ok());
        let gl1 = RootDatum::builtin(GroupKind::Gl(1));
        let f = weyl_fan(&gl1, &[], 4).unwrap();
        assert_eq!(f.len(), 3);
        let sl2 = RootDatum::builtin(GroupKind::Sl(2));
        let f = weyl_fan(&sl2, sl2.positive_roots().unwrap(), 4).unwrap();
        assert_eq!(f.counts_by_dimension(), vec![1, 2]);
        let gl3 = RootDatum::builtin(GroupKind::Gl(3));
        let f = weyl_fan(&gl3, gl3.positive_roots().unwrap(), 4).unwrap();
        assert_eq!(f.maximal_cones().len(), 12);
        assert!(f.validate().is_ok());
        assert!(matches!(
            weyl_fan(&gl3, gl3.positive_roots().unwrap(), 2),
            Err(RootDataError::RankCap { .. })
        ));
    }
}
