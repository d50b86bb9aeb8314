//! Job specifications: algebra descriptions, parameter bounds, field
//! selection.
//!
//! An algebra arrives either as flags (`--kupisch 1,2,2`, `--cyclic 3`,
//! `--lengths 3,3,2`) or as a JSON file:
//!
//! ```json
//! {"field": {"kind": "prime", "p": 32003},
//!  "algebra": {"kind": "kupisch_linear", "c": [1, 2, 2]}}
//! ```
//!
//! with the other algebra kinds `{"kind": "kupisch_cyclic", "c": [3]}` and
//! `{"kind": "monomial", "vertices": n, "arrows": [[s, t], ..],
//! "relations": [[arrow, ..], ..]}` (vertices and arrow indices 1-based).

use serde::Deserialize;
use yoneda_core::quiver::{KupischSeries, MonomialAlgebra, Quiver};
use yoneda_core::{Error, FieldSpec, DEFAULT_PRIME};

/// Documented parameter bounds.
pub const MAX_DEGREE: usize = 12;
pub const MAX_P_EXHAUSTIVE: usize = 12;

#[derive(Debug, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: Option<FieldDesc>,
    pub algebra: AlgebraDesc,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDesc {
    Rational,
    Prime { p: u64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraDesc {
    KupischLinear { c: Vec<usize> },
    KupischCyclic { c: Vec<usize> },
    Monomial { vertices: usize, arrows: Vec<(usize, usize)>, relations: Vec<Vec<usize>> },
}

impl AlgebraDesc {
    pub fn build(&self) -> Result<MonomialAlgebra, Error> {
        match self {
            AlgebraDesc::KupischLinear { c } => {
                let series = KupischSeries::linear(c.clone())?;
                MonomialAlgebra::nakayama_linear(&series)
            }
            AlgebraDesc::KupischCyclic { c } => {
                let series = KupischSeries::cyclic(c.clone())?;
                MonomialAlgebra::nakayama_cyclic(&series)
            }
            AlgebraDesc::Monomial { vertices, arrows, relations } => {
                // 1-based on the wire, 0-based inside.
                let arrows0: Vec<(usize, usize)> = arrows
                    .iter()
                    .map(|&(s, t)| {
                        if s == 0 || t == 0 {
                            Err(Error::InvalidInput("vertices are 1-based".into()))
                        } else {
                            Ok((s - 1, t - 1))
                        }
                    })
                    .collect::<Result<_, _>>()?;
                let rels0: Vec<Vec<usize>> = relations
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|&a| {
                                if a == 0 {
                                    Err(Error::InvalidInput("arrow indices are 1-based".into()))
                                } else {
                                    Ok(a - 1)
                                }
                            })
                            .collect::<Result<_, _>>()
                    })
                    .collect::<Result<_, _>>()?;
                let quiver = Quiver::new(*vertices, arrows0)?;
                MonomialAlgebra::monomial(quiver, rels0, FieldSpec::Prime(DEFAULT_PRIME))
            }
        }
    }

    /// Short text used inside reports.
    pub fn describe(&self) -> String {
        match self {
            AlgebraDesc::KupischLinear { c } => format!("kupisch_linear {c:?}"),
            AlgebraDesc::KupischCyclic { c } => format!("kupisch_cyclic {c:?}"),
            AlgebraDesc::Monomial { vertices, arrows, relations } => {
                format!("monomial v={vertices} arrows={arrows:?} relations={relations:?}")
            }
        }
    }
}

/// Parses `q` or `fp:P`.
pub fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    if s == "q" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad field modulus in {s:?}")))?;
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        return Ok(spec);
    }
    Err(Error::InvalidInput(format!(
        "unknown field {s:?}; expected \"q\" or \"fp:P\""
    )))
}

/// Parses a comma-separated list of positive integers.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad integer {part:?}")))
        })
        .collect()
}

pub fn check_degree_bounds(d: usize, k_max: usize) -> Result<(), Error> {
    if d > MAX_DEGREE {
        return Err(Error::InvalidInput(format!("max degree {d} exceeds the bound {MAX_DEGREE}")));
    }
    if k_max > d + 1 {
        return Err(Error::InvalidInput(format!(
            "k_max {k_max} exceeds max degree + 1 = {}",
            d + 1
        )));
    }
    if k_max < 2 {
        return Err(Error::InvalidInput("k_max must be at least 2".into()));
    }
    Ok(())
}
