//! Double description for polyhedral cones `{x : A x ≥ 0}` over an exact
//! ordered field (Motzkin's incremental method with the combinatorial
//! adjacency test).

use std::collections::BTreeSet;

use crate::matrix::Matrix;
use crate::scalar::{dot, primitive_i64, to_field, OrderedField};
use crate::zlattice::{hermite_basis, saturation};

/// A polyhedral cone that may contain lines: `cone(rays) + span(lineality)`.
///
/// Both lists are canonical: `lineality` is the Hermite basis of the lattice
/// points of the lineality space, and each ray is the primitive integer
/// vector of its projection onto the orthogonal complement of that space,
/// sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCone {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

impl PolyCone {
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Generators as a plain list: the rays followed by `±` each lineality vector.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    /// Dual cone `{y : ⟨x, y⟩ ≥ 0 ∀ x}`.
    pub fn dual(&self) -> PolyCone {
        generators_of_inequalities::<crate::Rational>(self.dim, &self.generators())
    }

    /// Inequality description `{x : ⟨m, x⟩ ≥ 0 ∀ m ∈ ineqs}` of this cone.
    pub fn inequalities(&self) -> Vec<Vec<i64>> {
        self.dual().generators()
    }

    pub fn contains<F: OrderedField>(&self, x: &[F]) -> bool {
        self.inequalities()
            .iter()
            .all(|m| dot(&to_field::<F>(m), x) >= F::zero())
    }
}

struct Ray<F> {
    v: Vec<F>,
    tight: BTreeSet<usize>,
}

/// Generators of `{x ∈ F^dim : ⟨a, x⟩ ≥ 0 for every a in ineqs}`.
pub fn generators_of_inequalities<F: OrderedField>(dim: usize, ineqs: &[Vec<i64>]) -> PolyCone {
    let mut lineality: Vec<Vec<F>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray<F>> = Vec::new();

    for (idx, a_int) in ineqs.iter().enumerate() {
        assert_eq!(a_int.len(), dim, "inequality has wrong dimension");
        let a: Vec<F> = to_field(a_int);
        if let Some(pos) = lineality.iter().position(|l| !dot(&a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            if dot(&a, &l0).is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
            }
            let al0 = dot(&a, &l0);
            for l in lineality.iter_mut() {
                let f = dot(&a, l) / al0.clone();
                if !f.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
            for r in rays.iter_mut() {
                let f = dot(&a, &r.v) / al0.clone();
                if !f.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
                r.tight.insert(idx);
            }
            let tight: BTreeSet<usize> = (0..idx).collect();
            rays.push(Ray { v: l0, tight });
            continue;
        }

        let values: Vec<F> = rays.iter().map(|r| dot(&a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(idx);
                }
            }
            continue;
        }
        let lin_dim = lineality.len();
        let mut new_rays: Vec<Ray<F>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> =
                    rays[p].tight.intersection(&rays[n].tight).copied().collect();
                if common.len() + 2 + lin_dim < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| {
                    i != p && i != n && common.is_subset(&r.tight)
                });
                if blocked {
                    continue;
                }
                let ap = values[p].clone();
                let an = values[n].clone();
                let v: Vec<F> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| ap.clone() * x.clone() - an.clone() * y.clone())
                    .collect();
                let v = to_field(&primitive_i64(&v));
                let mut tight = common;
                tight.insert(idx);
                new_rays.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray<F>> = Vec::new();
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.tight.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    canonicalize::<F>(dim, &lineality, rays.iter().map(|r| &r.v))
}

fn canonicalize<'a, F: OrderedField + 'a>(
    dim: usize,
    lineality: &[Vec<F>],
    rays: impl Iterator<Item = &'a Vec<F>>,
) -> PolyCone {
    let lin_int: Vec<Vec<i64>> = lineality.iter().map(|l| primitive_i64(l)).collect();
    let lin = hermite_basis(&saturation(&lin_int, dim), dim);
    let lin_f: Vec<Vec<F>> = lin.iter().map(|l| to_field(l)).collect();
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    for r in rays {
        let p = project_orthogonal(r, &lin_f);
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        out.insert(primitive_i64(&p));
    }
    PolyCone {
        dim,
        rays: out.into_iter().collect(),
        lineality: lin,
    }
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub(crate) fn project_orthogonal<F: OrderedField>(v: &[F], basis: &[Vec<F>]) -> Vec<F> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let n = v.len();
    // Solve the Gram system for the coefficients of the projection onto span(basis).
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |i, j| dot(&basis[i], &basis[j]));
    let rhs: Vec<F> = basis.iter().map(|b| dot(b, v)).collect();
    let coeffs = gram.solve(&rhs).expect("lineality basis is independent");
    (0..n)
        .map(|i| {
            coeffs
                .iter()
                .zip(basis)
                .fold(v[i].clone(), |acc, (c, b)| acc - c.clone() * b[i].clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;

    fn gens(ineqs: &[Vec<i64>], dim: usize) -> PolyCone {
        generators_of_inequalities::<Rational>(dim, ineqs)
    }

    #[test]
    fn quadrant_is_self_dual() {
        let c = gens(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(c.rays, vec![vec![0, 1], vec![1, 0]]);
        assert!(c.lineality.is_empty());
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = gens(&[vec![1, 1]], 2);
        assert_eq!(c.rays, vec![vec![1, 1]]);
        assert_eq!(c.lineality, vec![vec![1, -1]]);
        assert_eq!(c.generators().len(), 3);
    }

    #[test]
    fn redundant_inequalities_are_harmless() {
        let c = gens(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]], 2);
        assert_eq!(c.rays, vec![vec![0, 1], vec![1, 0]]);
        let e = gens(&[vec![1, 0], vec![-1, 0]], 2);
        assert_eq!(e.rays, Vec::<Vec<i64>>::new());
        assert_eq!(e.lineality, vec![vec![0, 1]]);
    }

    #[test]
    fn square_pyramid_in_rank_three() {
        // cone over a square: x ± y ≥ 0 ... four facets, four rays
        let ineqs = vec![vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1]];
        let c = gens(&ineqs, 3);
        assert_eq!(c.rays.len(), 4);
        for r in &c.rays {
            assert!(ineqs.iter().filter(|a| a.iter().zip(r).map(|(x, y)| x * y).sum::<i64>() == 0).count() == 2);
        }
        // same answer in a machine-word rational field
        let d = generators_of_inequalities::<Ratio<i64>>(3, &ineqs);
        assert_eq!(c, d);
    }

    #[test]
    fn empty_system_is_everything() {
        let c = gens(&[], 3);
        assert!(c.rays.is_empty());
        assert_eq!(c.lineality.len(), 3);
    }
}
