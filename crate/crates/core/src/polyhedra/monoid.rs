//! Hilbert bases of toric monoids `S_σ = σ∨ ∩ M`.

use super::cone::Cone;
use super::dd::PolyCone;
use super::PolyError;
use crate::scalar::dot_i64;

/// Caps on lattice rank and on the number of lattice points examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_rank: usize,
    pub max_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rank: 4,
            max_points: 2_000_000,
        }
    }
}

/// A finitely generated saturated monoid in `M = Z^rank`, given by its
/// minimal generating set. Units appear as `±` pairs of a lattice basis of the
/// unit group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricMonoid {
    pub rank: usize,
    pub hilbert_basis: Vec<Vec<i64>>,
    pub units: Vec<Vec<i64>>,
}

impl ToricMonoid {
    pub fn is_pointed(&self) -> bool {
        self.units.is_empty()
    }
}

/// The Gordan monoid `σ∨ ∩ M` of a cone.
pub fn gordan_monoid(sigma: &Cone, budget: Budget) -> Result<ToricMonoid, PolyError> {
    hilbert_basis(&sigma.dual(), budget)
}

/// Minimal generating set of `C ∩ Z^dim` for a rational cone `C`.
///
/// Candidates are the lattice points of `C` in the bounding box of the
/// zonotope `Σ [0,1]·g` over the generators (rays and `±` lineality basis);
/// every irreducible element has a representative there. Reducible
/// candidates are then discarded greedily.
pub fn hilbert_basis(c: &PolyCone, budget: Budget) -> Result<ToricMonoid, PolyError> {
    let dim = c.dim;
    if dim > budget.max_rank {
        return Err(PolyError::RankCap {
            rank: dim,
            cap: budget.max_rank,
        });
    }
    let gens = c.generators();
    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for g in &gens {
        for i in 0..dim {
            lo[i] += g[i].min(0);
            hi[i] += g[i].max(0);
        }
    }
    let volume = lo
        .iter()
        .zip(&hi)
        .try_fold(1u64, |acc, (l, h)| acc.checked_mul((h - l + 1) as u64));
    match volume {
        Some(v) if v <= budget.max_points => {}
        _ => {
            return Err(PolyError::BudgetExceeded {
                limit: budget.max_points,
            })
        }
    }

    let ineqs = c.inequalities();
    let in_cone = |x: &[i64]| ineqs.iter().all(|m| dot_i64(m, x) >= 0);
    // Units: points pairing to zero with every inequality.
    let is_unit = |x: &[i64]| ineqs.iter().all(|m| dot_i64(m, x) == 0);

    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut point = lo.clone();
    'enumerate: loop {
        if point.iter().any(|&x| x != 0) && in_cone(&point) && !is_unit(&point) {
            candidates.push(point.clone());
        }
        for i in 0..dim {
            if point[i] < hi[i] {
                point[i] += 1;
                for (j, p) in point.iter_mut().enumerate().take(i) {
                    *p = lo[j];
                }
                continue 'enumerate;
            }
        }
        break;
    }

    let mut irreducible: Vec<Vec<i64>> = Vec::new();
    for x in &candidates {
        let reducible = candidates.iter().any(|y| {
            if y == x {
                return false;
            }
            let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            in_cone(&diff) && !is_unit(&diff)
        });
        if reducible {
            continue;
        }
        // keep one representative per class modulo units
        let dup = irreducible.iter().any(|z| {
            let diff: Vec<i64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
            is_unit(&diff)
        });
        if !dup {
            irreducible.push(x.clone());
        }
    }
    irreducible.sort();

    let mut basis = irreducible;
    for l in &c.lineality {
        basis.push(l.clone());
        basis.push(l.iter().map(|x| -x).collect());
    }
    Ok(ToricMonoid {
        rank: dim,
        hilbert_basis: basis,
        units: c.lineality.clone(),
    })
}
