use std::collections::BTreeSet;

use super::cone::{Cone, QuotientMap};
use super::PolyError;
use crate::scalar::OrderedField;

/// A finite fan: a face-closed collection of strictly convex cones in `Z^rank`.
///
/// `rays` keeps the primitive ray generators in a fixed order (input order
/// for fans read from files); several constructions depend on that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Cone>,
}

/// A pair of cones whose intersection is not a face of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanViolation {
    pub first: Cone,
    pub second: Cone,
    pub intersection: Cone,
}

impl Fan {
    /// Closes `cones` under faces. Ray order is lexicographic.
    pub fn from_cones(rank: usize, cones: &[Cone]) -> Self {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        all.insert(Cone::zero(rank));
        for c in cones {
            assert_eq!(c.ambient_dim(), rank, "cone lives in a different lattice");
            all.extend(c.faces());
        }
        let rays: BTreeSet<Vec<i64>> = all.iter().flat_map(|c| c.rays().to_vec()).collect();
        Self::assemble(rank, rays.into_iter().collect(), all)
    }

    /// Builds a fan from an ordered ray list and cones given by ray indices.
    /// The ray list is kept as given (after making each ray primitive).
    pub fn from_ray_indices(
        rank: usize,
        rays: &[Vec<i64>],
        cones: &[Vec<usize>],
    ) -> Result<Self, PolyError> {
        let mut prim = Vec::with_capacity(rays.len());
        for r in rays {
            if r.len() != rank {
                return Err(PolyError::Dimension {
                    expected: rank,
                    found: r.len(),
                });
            }
            let g = r.iter().fold(0i64, |acc, &x| crate::scalar::gcd_i64(acc, x));
            if g == 0 {
                return Err(PolyError::ZeroRay);
            }
            prim.push(r.iter().map(|x| x / g).collect::<Vec<i64>>());
        }
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        all.insert(Cone::zero(rank));
        for idx in cones {
            let gens: Result<Vec<Vec<i64>>, PolyError> = idx
                .iter()
                .map(|&i| prim.get(i).cloned().ok_or(PolyError::RayIndex(i)))
                .collect();
            let c = Cone::from_generators(rank, &gens?)?;
            all.extend(c.faces());
        }
        let mut order = prim;
        for c in &all {
            for r in c.rays() {
                if !order.contains(r) {
                    order.push(r.clone());
                }
            }
        }
        Ok(Self::assemble(rank, order, all))
    }

    fn assemble(rank: usize, rays: Vec<Vec<i64>>, all: BTreeSet<Cone>) -> Self {
        let mut cones: Vec<Cone> = all.into_iter().collect();
        cones.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
        Fan { rank, rays, cones }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray_index(&self, ray: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.binary_search_by(|x| {
            x.dimension().cmp(&c.dimension()).then_with(|| x.cmp(c))
        })
        .is_ok()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|x| x == c)
    }

    /// Cones that are not proper faces of other cones.
    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d != *c && d.dimension() > c.dimension() && c.is_face_of(d))
            })
            .cloned()
            .collect()
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn counts_by_dimension(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 1];
        for c in &self.cones {
            counts[c.dimension()] += 1;
        }
        counts
    }

    /// Checks that every pairwise intersection is a face of both cones.
    /// Face closure holds by construction.
    #[allow(clippy::result_large_err)]
    pub fn validate(&self) -> Result<(), FanViolation> {
        let maximal = self.maximal_cones();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let meet = a.intersection(b);
                if !(meet.is_face_of(a) && meet.is_face_of(b)) {
                    return Err(FanViolation {
                        first: a.clone(),
                        second: b.clone(),
                        intersection: meet,
                    });
                }
            }
        }
        Ok(())
    }

    /// True if some cone contains `x`.
    pub fn support_contains<F: OrderedField>(&self, x: &[F]) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }

    /// The star of `tau`: images in `N(τ)` of the cones containing `tau`.
    pub fn star(&self, tau: &Cone) -> Result<Fan, PolyError> {
        if !self.contains_cone(tau) {
            return Err(PolyError::NotInFan);
        }
        let q = QuotientMap::for_cone(tau);
        let images: Vec<Cone> = self
            .cones
            .iter()
            .filter(|s| tau.is_face_of(s))
            .map(|s| s.image(q.matrix()))
            .collect::<Result<_, _>>()?;
        Ok(Fan::from_cones(q.target_rank(), &images))
    }

    /// Orbit–cone correspondence: one torus orbit per cone, of dimension
    /// `rank − dim σ`, with closure order the reverse of the face order.
    pub fn orbit_cone_table(&self) -> OrbitConeTable {
        let entries: Vec<OrbitEntry> = self
            .cones
            .iter()
            .enumerate()
            .map(|(i, c)| OrbitEntry {
                cone: c.clone(),
                stratum: i,
                stratum_dim: self.rank - c.dimension(),
            })
            .collect();
        let mut counts = vec![0; self.rank + 1];
        for e in &entries {
            counts[e.stratum_dim] += 1;
        }
        // Closure of O(τ) is the toric variety of star(τ); O(σ) lies in it
        // iff σ contributes a cone to the star, i.e. iff τ ⊆ σ. Compare that
        // relation, computed through stars, with the face relation.
        let mut anti_isomorphism = true;
        for (i, tau) in self.cones.iter().enumerate() {
            let star = self.star(tau).expect("cone of this fan");
            let q = QuotientMap::for_cone(tau);
            for (j, sigma) in self.cones.iter().enumerate() {
                let face = tau.is_face_of(sigma);
                let contains = tau.rays().iter().all(|r| sigma.contains_int(r));
                let in_closure = contains
                    && sigma.image(q.matrix()).is_ok_and(|img| {
                        star.contains_cone(&img)
                            && star.rank() - img.dimension() == entries[j].stratum_dim
                    });
                let dims_ok = !face || entries[i].stratum_dim >= entries[j].stratum_dim;
                if face != in_closure || !dims_ok {
                    anti_isomorphism = false;
                }
            }
        }
        OrbitConeTable {
            entries,
            counts_by_stratum_dim: counts,
            anti_isomorphism,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    pub cone: Cone,
    pub stratum: usize,
    pub stratum_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitConeTable {
    pub entries: Vec<OrbitEntry>,
    /// Number of strata of each dimension `0..=rank`.
    pub counts_by_stratum_dim: Vec<usize>,
    /// Certificate that cone ↦ stratum reverses the order on all pairs.
    pub anti_isomorphism: bool,
}
