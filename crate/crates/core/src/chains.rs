//! Decorated metric chains and their points in a fan.
//!
//! A chain with `k` edges is decorated by `k` rays of a fan with a fixed ray
//! order; the rays must be increasing in that order and span a `k`-dimensional
//! cone of the fan. Edge lengths then give the point `Σ ℓ_i β_i`, where `β_i`
//! is the integral marker of the `i`-th ray. Infinite lengths land in the
//! stratum of the canonical compactification indexed by the face they span.

use std::fmt;

use thiserror::Error;

use crate::polyhedra::{Cone, ExtendedPoint, Fan, PolyError, QuotientMap};
use crate::scalar::{gcd_i64, int_rat};
use crate::valfield::ExtRat;
use crate::{Rational, ValuedScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("edge {0} has negative length")]
    NegativeLength(usize),
    #[error("parameter {0} has negative valuation")]
    NegativeValuation(usize),
    #[error("ray index {0} out of range")]
    RayIndex(usize),
    #[error("order violated at edge {position}: ray {ray} does not come after ray {previous}")]
    OrderViolated {
        position: usize,
        previous: usize,
        ray: usize,
    },
    #[error("no cone of the fan is spanned by the decoration rays")]
    NoMatchingCone,
    #[error("{0} cones match the decoration")]
    MultipleCones(usize),
    #[error("{lengths} lengths for a decoration with {edges} edges")]
    LengthMismatch { lengths: usize, edges: usize },
    #[error("marker of ray {0} is not a positive multiple of the ray")]
    BadMarker(usize),
    #[error("vector {0:?} is not a ray of the fan")]
    UnknownRay(Vec<i64>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A chain graph with `k` edges and lengths in `Q≥0 ∪ {+∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricChain {
    lengths: Vec<ExtRat>,
}

impl MetricChain {
    pub fn new(lengths: Vec<ExtRat>) -> Result<Self, ChainError> {
        let zero = ExtRat::zero();
        if let Some(i) = lengths.iter().position(|l| *l < zero) {
            return Err(ChainError::NegativeLength(i));
        }
        Ok(MetricChain { lengths })
    }

    pub fn edges(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[ExtRat] {
        &self.lengths
    }

    pub fn is_pseudo(&self) -> bool {
        self.lengths.iter().any(|l| !l.is_finite())
    }
}

/// A fan whose ordered rays carry integral markers `β_ρ ∈ ρ ∩ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedFan {
    fan: Fan,
    markers: Vec<Vec<i64>>,
}

impl MarkedFan {
    /// Markers default to the primitive ray generators.
    pub fn new(fan: Fan, markers: Option<Vec<Vec<i64>>>) -> Result<Self, ChainError> {
        let markers = match markers {
            None => fan.rays().to_vec(),
            Some(m) => {
                if m.len() != fan.rays().len() {
                    return Err(ChainError::BadMarker(m.len().min(fan.rays().len())));
                }
                for (i, (b, r)) in m.iter().zip(fan.rays()).enumerate() {
                    let g = b.iter().fold(0, |acc, &x| gcd_i64(acc, x));
                    let prim: Option<Vec<i64>> = (g != 0).then(|| b.iter().map(|x| x / g).collect());
                    if b.len() != r.len() || prim.as_ref() != Some(r) {
                        return Err(ChainError::BadMarker(i));
                    }
                }
                m
            }
        };
        Ok(MarkedFan { fan, markers })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn markers(&self) -> &[Vec<i64>] {
        &self.markers
    }
}

/// The dominant half-plane `λ_1 ≥ λ_2` of `GL(2)` cut into three unimodular
/// cones, with rays ordered `(1,1), (1,0), (0,−1), (−1,−1)`.
pub fn gl2_chamber_fan() -> MarkedFan {
    let rays = vec![vec![1, 1], vec![1, 0], vec![0, -1], vec![-1, -1]];
    let fan = Fan::from_ray_indices(2, &rays, &[vec![0, 1], vec![1, 2], vec![2, 3]])
        .expect("fixed fan");
    MarkedFan::new(fan, None).expect("primitive markers")
}

/// Edge `i` of the chain is decorated by ray `rays[i]` of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub rays: Vec<usize>,
}

impl Decoration {
    /// Looks up ray vectors in the fan's ray list.
    pub fn from_vectors(vectors: &[Vec<i64>], fan: &MarkedFan) -> Result<Self, ChainError> {
        let rays = vectors
            .iter()
            .map(|v| {
                fan.markers
                    .iter()
                    .position(|m| m == v)
                    .or_else(|| fan.fan.ray_index(v))
                    .ok_or_else(|| ChainError::UnknownRay(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Decoration { rays })
    }

    pub fn edges(&self) -> usize {
        self.rays.len()
    }
}

/// The unique cone of the fan whose rays are exactly the decoration rays.
pub fn validate_decoration(dec: &Decoration, fan: &MarkedFan) -> Result<Cone, ChainError> {
    let rays = fan.fan.rays();
    for (i, &r) in dec.rays.iter().enumerate() {
        if r >= rays.len() {
            return Err(ChainError::RayIndex(r));
        }
        if i > 0 && dec.rays[i - 1] >= r {
            return Err(ChainError::OrderViolated {
                position: i,
                previous: dec.rays[i - 1],
                ray: r,
            });
        }
    }
    let mut wanted: Vec<Vec<i64>> = dec.rays.iter().map(|&r| rays[r].clone()).collect();
    wanted.sort();
    let matches: Vec<&Cone> = fan
        .fan
        .cones()
        .iter()
        .filter(|c| c.dimension() == dec.edges() && c.rays() == wanted.as_slice())
        .collect();
    match matches.len() {
        0 => Err(ChainError::NoMatchingCone),
        1 => Ok(matches[0].clone()),
        n => Err(ChainError::MultipleCones(n)),
    }
}

/// A realized point: inside the cone, or on a boundary stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Finite { cone: Cone, point: Vec<Rational> },
    Extended(ExtendedPoint),
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| {
            v.iter()
                .map(crate::scalar::fmt_rational)
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Realization::Finite { point, .. } => write!(f, "({})", show(point)),
            Realization::Extended(e) => write!(
                f,
                "({}) on the stratum of face {:?}",
                show(&e.finite),
                e.face.rays()
            ),
        }
    }
}

/// `Σ ℓ_i β_i`, or its image in `N(τ)` when the rays of infinite length span
/// the face `τ`.
pub fn realize(chain: &MetricChain, dec: &Decoration, fan: &MarkedFan) -> Result<Realization, ChainError> {
    if chain.edges() != dec.edges() {
        return Err(ChainError::LengthMismatch {
            lengths: chain.edges(),
            edges: dec.edges(),
        });
    }
    let sigma = validate_decoration(dec, fan)?;
    let dim = fan.fan.rank();
    let mut point = vec![int_rat(0); dim];
    let mut infinite_rays = Vec::new();
    for (l, &r) in chain.lengths.iter().zip(&dec.rays) {
        match l {
            ExtRat::Finite(q) => {
                for (p, &b) in point.iter_mut().zip(&fan.markers[r]) {
                    *p += q * int_rat(b);
                }
            }
            ExtRat::Infinity => infinite_rays.push(fan.fan.rays()[r].clone()),
        }
    }
    if infinite_rays.is_empty() {
        return Ok(Realization::Finite { cone: sigma, point });
    }
    let face = Cone::from_generators(dim, &infinite_rays)?;
    let q = QuotientMap::for_cone(&face);
    Ok(Realization::Extended(ExtendedPoint {
        host: sigma,
        face,
        finite: q.apply(&point),
    }))
}

/// Edge lengths `ℓ_i = val(r_i)` from node-smoothing parameters; `None` (or
/// zero) marks a node that is not smoothed.
pub fn trop_family(
    params: &[Option<ValuedScalar>],
    dec: &Decoration,
    fan: &MarkedFan,
) -> Result<(MetricChain, Realization), ChainError> {
    let zero = ExtRat::zero();
    let mut lengths = Vec::with_capacity(params.len());
    for (i, p) in params.iter().enumerate() {
        let v = p.as_ref().map_or(ExtRat::Infinity, |x| x.valuation());
        if v < zero {
            return Err(ChainError::NegativeValuation(i));
        }
        lengths.push(v);
    }
    let chain = MetricChain::new(lengths)?;
    let point = realize(&chain, dec, fan)?;
    Ok((chain, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::valfield::parse_scalar;

    fn fin(v: &[i64]) -> Vec<ExtRat> {
        v.iter().map(|&x| ExtRat::Finite(int_rat(x))).collect()
    }

    fn dec(v: &[&[i64]]) -> Decoration {
        let vs: Vec<Vec<i64>> = v.iter().map(|x| x.to_vec()).collect();
        Decoration::from_vectors(&vs, &gl2_chamber_fan()).unwrap()
    }

    #[test]
    fn decorations() {
        let f = gl2_chamber_fan();
        let sigma = validate_decoration(&dec(&[&[1, 1], &[1, 0]]), &f).unwrap();
        assert_eq!(sigma.rays(), &[vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            validate_decoration(&dec(&[&[1, 0], &[1, 1]]), &f),
            Err(ChainError::OrderViolated { position: 1, .. })
        ));
        let err = validate_decoration(&dec(&[&[1, 0], &[1, 1]]), &f).unwrap_err();
        assert!(err.to_string().starts_with("order violated"));
        assert!(validate_decoration(&Decoration { rays: vec![] }, &f).unwrap().is_zero());
        assert_eq!(
            validate_decoration(&dec(&[&[1, 1], &[0, -1]]), &f),
            Err(ChainError::NoMatchingCone)
        );
        assert_eq!(
            validate_decoration(&Decoration { rays: vec![9] }, &f),
            Err(ChainError::RayIndex(9))
        );
    }

    #[test]
    fn realizations() {
        let f = gl2_chamber_fan();
        let d = dec(&[&[1, 1], &[1, 0]]);
        let chain = MetricChain::new(fin(&[2, 1])).unwrap();
        match realize(&chain, &d, &f).unwrap() {
            Realization::Finite { point, cone } => {
                assert_eq!(point, vec![int_rat(3), int_rat(2)]);
                assert!(cone.contains(&point));
            }
            other => panic!("{other:?}"),
        }
        let zero = realize(&MetricChain::new(fin(&[0, 0])).unwrap(), &d, &f).unwrap();
        assert!(matches!(zero, Realization::Finite { ref point, .. } if point.iter().all(|x| *x == int_rat(0))));
        let chain = MetricChain::new(vec![ExtRat::Infinity, ExtRat::Finite(int_rat(1))]).unwrap();
        match realize(&chain, &d, &f).unwrap() {
            Realization::Extended(e) => {
                assert_eq!(e.face.rays(), &[vec![1, 1]]);
                assert_eq!(e.finite, vec![int_rat(1)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            realize(&MetricChain::new(fin(&[1])).unwrap(), &d, &f),
            Err(ChainError::LengthMismatch { .. })
        ));
        assert_eq!(
            MetricChain::new(vec![ExtRat::Finite(rat(-1, 2))]),
            Err(ChainError::NegativeLength(0))
        );
    }

    #[test]
    fn non_primitive_markers_scale() {
        let base = gl2_chamber_fan();
        let markers = vec![vec![2, 2], vec![1, 0], vec![0, -3], vec![-1, -1]];
        let f = MarkedFan::new(base.fan().clone(), Some(markers)).unwrap();
        let d = Decoration { rays: vec![0, 1] };
        let r = realize(&MetricChain::new(fin(&[1, 1])).unwrap(), &d, &f).unwrap();
        assert!(matches!(r, Realization::Finite { ref point, .. } if *point == vec![int_rat(3), int_rat(2)]));
        let bad = vec![vec![2, 1], vec![1, 0], vec![0, -1], vec![-1, -1]];
        assert_eq!(MarkedFan::new(base.fan().clone(), Some(bad)), Err(ChainError::BadMarker(0)));
        let neg = vec![vec![-1, -1], vec![1, 0], vec![0, -1], vec![-1, -1]];
        assert_eq!(MarkedFan::new(base.fan().clone(), Some(neg)), Err(ChainError::BadMarker(0)));
    }

    #[test]
    fn families() {
        let f = gl2_chamber_fan();
        let d = dec(&[&[1, 1], &[1, 0]]);
        let p = |s: &str| Some(parse_scalar(s, 2).unwrap());
        let (chain, _) = trop_family(&[p("t^3"), p("t^(1/2)")], &d, &f).unwrap();
        assert_eq!(chain.lengths(), &[ExtRat::Finite(int_rat(3)), ExtRat::Finite(rat(1, 2))]);
        let (chain, r) = trop_family(&[p("1"), p("1")], &d, &f).unwrap();
        assert_eq!(chain.lengths(), &fin(&[0, 0])[..]);
        assert!(matches!(r, Realization::Finite { ref point, .. } if point.iter().all(|x| *x == int_rat(0))));
        let (chain, r) = trop_family(&[p("t^2"), None], &d, &f).unwrap();
        assert!(chain.is_pseudo());
        assert!(matches!(r, Realization::Extended(_)));
        assert_eq!(
            trop_family(&[p("1/t"), p("1")], &d, &f).unwrap_err(),
            ChainError::NegativeValuation(0)
        );
    }
}
