//! JSON input formats. Rationals are written as strings (`"3"`, `"-1/2"`);
//! plain JSON integers are accepted too. Scalars of `Q(t^{1/d})` use the
//! expression grammar of [`crate::valfield::parse_scalar`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::{Decoration, MarkedFan, MetricChain};
use crate::matrix::Matrix;
use crate::polyhedra::{Cone, Fan, PolyError};
use crate::rootdata::{GroupKind, RootDatum};
use crate::scalar::{fmt_rational, parse_rational};
use crate::stacky::{BuildingCone, BuildingFan, KummerData, StackyError, StackyFan, Witness};
use crate::valfield::{infer_denominator, parse_scalar, ExtRat, ValFieldError};
use crate::zlattice::Lattice;
use crate::{RatMatrix, Rational, ValuedMatrix, ValuedScalar};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid value: {0}")]
    Value(String),
    #[error("scalar {index}: {source}")]
    Scalar {
        index: String,
        #[source]
        source: ValFieldError,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Stacky(#[from] StackyError),
}

/// A rational number written as a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Int(i64),
    Text(String),
}

impl RatText {
    pub fn value(&self) -> Result<Rational, IoError> {
        match self {
            RatText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RatText::Text(s) => {
                parse_rational(s).ok_or_else(|| IoError::Value(format!("not a rational number: {s:?}")))
            }
        }
    }
}

impl From<&Rational> for RatText {
    fn from(q: &Rational) -> Self {
        RatText::Text(fmt_rational(q))
    }
}

fn rationals(v: &[RatText]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(RatText::value).collect()
}

fn rat_matrix(rows: &[Vec<RatText>], n: usize, what: &str) -> Result<RatMatrix, IoError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Value(format!("{what} must be {n}x{n}")));
    }
    let rows = rows.iter().map(|r| rationals(r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows, n))
}

/// `{"n", "d", "entries"}`; `d` is inferred when absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(default)]
    pub d: Option<u32>,
    pub entries: Vec<Vec<String>>,
}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::Integer::lcm(&a, &b)
}

fn valued_matrix(rows: &[Vec<String>], n: usize, d: Option<u32>, what: &str) -> Result<ValuedMatrix, IoError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Value(format!("{what} must be {n}x{n}")));
    }
    let d = d.unwrap_or_else(|| rows.iter().flatten().map(|s| infer_denominator(s)).fold(1, lcm));
    let mut out = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        let row = r
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_scalar(s, d).map_err(|source| IoError::Scalar {
                    index: format!("{what}[{i}][{j}]"),
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    Ok(Matrix::from_rows(out, n))
}

impl MatrixJson {
    pub fn matrix(&self) -> Result<ValuedMatrix, IoError> {
        valued_matrix(&self.entries, self.n, self.d, "entries")
    }
}

/// `{"n", "g", "lambda"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingPointJson {
    pub n: usize,
    pub g: Vec<Vec<RatText>>,
    pub lambda: Vec<RatText>,
}

impl BuildingPointJson {
    pub fn point(&self) -> Result<crate::building::BuildingPoint, IoError> {
        let g = rat_matrix(&self.g, self.n, "g")?;
        let lambda = rationals(&self.lambda)?;
        crate::building::BuildingPoint::new(g, lambda).map_err(|e| IoError::Value(e.to_string()))
    }
}

/// `{"n", "d", "g", "lambda", "h"}` describing `g · t^λ · h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub n: usize,
    #[serde(default)]
    pub d: Option<u32>,
    pub g: Vec<Vec<RatText>>,
    pub lambda: Vec<RatText>,
    pub h: Vec<Vec<String>>,
}

impl TripleJson {
    pub fn parts(&self) -> Result<(RatMatrix, Vec<Rational>, ValuedMatrix), IoError> {
        let g = rat_matrix(&self.g, self.n, "g")?;
        let lambda = rationals(&self.lambda)?;
        if lambda.len() != self.n {
            return Err(IoError::Value(format!("lambda must have length {}", self.n)));
        }
        let h = valued_matrix(&self.h, self.n, self.d, "h")?;
        Ok((g, lambda, h))
    }
}

/// One cross-apartment intersection record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub cones: (usize, usize),
    pub apartment: Vec<Vec<RatText>>,
    pub face: Vec<Vec<i64>>,
}

/// Fans, optionally with Kummer data, ray markers, or apartment tags.
///
/// Rays are given in lattice coordinates; `basis` only records how the
/// lattice sits in an ambient `Z^m` (columns) and is used for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub lattice_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_markers: Option<Vec<Vec<i64>>>,
    /// One superlattice basis (columns) per entry of `cones`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kummer: Option<Vec<Vec<Vec<RatText>>>>,
    /// One frame per entry of `cones`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apartment: Option<Vec<Vec<Vec<RatText>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessJson>>,
}

impl FanJson {
    pub fn from_fan(fan: &Fan) -> Self {
        let cones = fan
            .maximal_cones()
            .iter()
            .map(|c| c.rays().iter().map(|r| fan.ray_index(r).expect("ray of the fan")).collect())
            .collect();
        FanJson {
            lattice_rank: fan.rank(),
            basis: None,
            rays: fan.rays().to_vec(),
            cones,
            ray_markers: None,
            kummer: None,
            apartment: None,
            witnesses: None,
        }
    }

    pub fn fan(&self) -> Result<Fan, IoError> {
        Ok(Fan::from_ray_indices(self.lattice_rank, &self.rays, &self.cones)?)
    }

    pub fn lattice(&self) -> Result<Lattice, IoError> {
        match &self.basis {
            None => Ok(Lattice::standard(self.lattice_rank)),
            Some(cols) => {
                if cols.len() != self.lattice_rank {
                    return Err(IoError::Value("basis must list lattice_rank columns".into()));
                }
                let m = cols.first().map_or(0, Vec::len);
                Lattice::with_basis(Matrix::from_cols(cols, m)).map_err(|e| IoError::Value(e.to_string()))
            }
        }
    }

    fn input_cones(&self) -> Result<Vec<Cone>, IoError> {
        self.cones
            .iter()
            .map(|idx| {
                let gens = idx
                    .iter()
                    .map(|&i| self.rays.get(i).cloned().ok_or(PolyError::RayIndex(i)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Cone::from_generators(self.lattice_rank, &gens)?)
            })
            .collect()
    }

    /// The stacky fan; cones without a listed superlattice get the trivial one.
    pub fn stacky_fan(&self) -> Result<StackyFan, IoError> {
        let fan = self.fan()?;
        let Some(kummer) = &self.kummer else {
            return Ok(StackyFan::trivial(fan));
        };
        if kummer.len() != self.cones.len() {
            return Err(IoError::Value("kummer must have one matrix per cone".into()));
        }
        let cones = self.input_cones()?;
        let mut data = Vec::new();
        for (c, b) in cones.into_iter().zip(kummer) {
            data.push(KummerData::new(c, rat_matrix(b, self.lattice_rank, "kummer basis")?)?);
        }
        Ok(StackyFan::new(fan, data)?)
    }

    pub fn marked_fan(&self) -> Result<MarkedFan, IoError> {
        MarkedFan::new(self.fan()?, self.ray_markers.clone()).map_err(|e| IoError::Value(e.to_string()))
    }

    /// The fan in the building; every cone defaults to the reference apartment.
    pub fn building_fan(&self) -> Result<BuildingFan, IoError> {
        let r = self.lattice_rank;
        let cones = self.input_cones()?;
        let frames: Vec<RatMatrix> = match &self.apartment {
            None => vec![Matrix::identity(r); cones.len()],
            Some(a) => {
                if a.len() != cones.len() {
                    return Err(IoError::Value("apartment must have one matrix per cone".into()));
                }
                a.iter().map(|m| rat_matrix(m, r, "apartment")).collect::<Result<_, _>>()?
            }
        };
        let witnesses = self
            .witnesses
            .iter()
            .flatten()
            .map(|w| {
                Ok(Witness {
                    cones: w.cones,
                    apartment: rat_matrix(&w.apartment, r, "witness apartment")?,
                    face: Cone::from_generators(r, &w.face)?,
                })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(BuildingFan {
            cones: cones
                .into_iter()
                .zip(frames)
                .map(|(cone, apartment)| BuildingCone { apartment, cone })
                .collect(),
            witnesses,
        })
    }
}

/// Either `{"builtin": "PGL(3)"}` or explicit data with `coroots[i]` the
/// coroot of `roots[i]` (or of `roots[j]` where `bijection[j] = i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub pairing: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub roots: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub coroots: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub bijection: Option<Vec<usize>>,
    #[serde(default)]
    pub positive: Option<Vec<usize>>,
}

impl RootDatumJson {
    pub fn root_datum(&self) -> Result<RootDatum, IoError> {
        if let Some(name) = &self.builtin {
            let kind = GroupKind::parse(name)
                .ok_or_else(|| IoError::Value(format!("unknown group {name:?}")))?;
            return Ok(RootDatum::builtin(kind));
        }
        let missing = |f: &str| IoError::Value(format!("root datum needs \"{f}\" or \"builtin\""));
        let rank = self.rank.ok_or_else(|| missing("rank"))?;
        let roots = self.roots.clone().ok_or_else(|| missing("roots"))?;
        let mut coroots = self.coroots.clone().ok_or_else(|| missing("coroots"))?;
        if let Some(b) = &self.bijection {
            let mut seen = vec![false; coroots.len()];
            if b.len() != roots.len() || b.iter().any(|&i| i >= coroots.len() || std::mem::replace(&mut seen[i], true)) {
                return Err(IoError::Value("bijection must be a permutation".into()));
            }
            coroots = b.iter().map(|&i| coroots[i].clone()).collect();
        }
        let pairing = match &self.pairing {
            None => Matrix::int_identity(rank),
            Some(rows) => {
                if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                    return Err(IoError::Value(format!("pairing must be {rank}x{rank}")));
                }
                Matrix::from_rows(rows.clone(), rank)
            }
        };
        if let Some(p) = &self.positive {
            if p.iter().any(|&i| i >= roots.len()) {
                return Err(IoError::Value("positive root index out of range".into()));
            }
        }
        Ok(RootDatum {
            m_lattice: Lattice::standard(rank),
            n_lattice: Lattice::standard(rank),
            pairing,
            roots,
            coroots,
            positive: self.positive.clone(),
        })
    }
}

/// `{"lengths" | "params", "d"?, "decoration", "fan"}`. `params` entries of
/// `null` are non-smoothed nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    #[serde(default)]
    pub lengths: Option<Vec<String>>,
    #[serde(default)]
    pub params: Option<Vec<Option<String>>>,
    #[serde(default)]
    pub d: Option<u32>,
    pub decoration: Vec<usize>,
    pub fan: FanJson,
}

/// What a chain file asks for.
pub enum ChainInput {
    Lengths(MetricChain),
    Params(Vec<Option<ValuedScalar>>),
}

impl ChainJson {
    pub fn decoration(&self) -> Decoration {
        Decoration {
            rays: self.decoration.clone(),
        }
    }

    pub fn input(&self) -> Result<ChainInput, IoError> {
        match (&self.lengths, &self.params) {
            (Some(l), None) => {
                let lengths = l
                    .iter()
                    .map(|s| ExtRat::parse(s).ok_or_else(|| IoError::Value(format!("bad length {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                MetricChain::new(lengths)
                    .map(ChainInput::Lengths)
                    .map_err(|e| IoError::Value(e.to_string()))
            }
            (None, Some(p)) => {
                let d = self
                    .d
                    .unwrap_or_else(|| p.iter().flatten().map(|s| infer_denominator(s)).fold(1, lcm));
                let params = p
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.as_ref()
                            .map(|s| {
                                parse_scalar(s, d).map_err(|source| IoError::Scalar {
                                    index: format!("params[{i}]"),
                                    source,
                                })
                            })
                            .transpose()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ChainInput::Params(params))
            }
            _ => Err(IoError::Value("give exactly one of \"lengths\" and \"params\"".into())),
        }
    }
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}
