use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::DynamicalSystem;
use crate::field::{ElementJson, Valuation};
use crate::series::{SeriesJson, TruncatedSeries};
use crate::solvers::{DominantSet, FamilyJson};

/// `"inf"` when the residual vanishes to the working precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResidualValuation {
    Finite(i64),
    Symbol(String),
}

impl fmt::Display for ResidualValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualValuation::Finite(v) => write!(f, "{v}"),
            ResidualValuation::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearizeJson {
    pub kind: String,
    pub order: u32,
    pub vlambda: i64,
    pub lambda: ElementJson,
    pub h: SeriesJson,
    pub residual_valuation: ResidualValuation,
}

impl LinearizeJson {
    pub fn new(kind: &str, sys: &DynamicalSystem, h: &TruncatedSeries, residual: &TruncatedSeries) -> Self {
        let v = residual.coeffs().iter().filter_map(|c| match c.valuation() {
            Valuation::Finite(v) => Some(v),
            _ => None,
        });
        LinearizeJson {
            kind: kind.to_string(),
            order: sys.order(),
            vlambda: sys.vlambda(),
            lambda: sys.lambda().to_json(),
            h: h.to_json(),
            residual_valuation: v.min().map_or(ResidualValuation::Symbol("inf".into()), ResidualValuation::Finite),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitPointJson {
    pub t: u64,
    pub valuation: i64,
    /// Closed-form valuation as a decimal string.
    pub closed_form: String,
    pub value: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitJson {
    pub order: u32,
    pub vlambda: i64,
    pub points: Vec<OrbitPointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominantPointJson {
    pub exp: Vec<u32>,
    pub coeff_valuation: i64,
    /// Integer weight at which the term is minimal, as decimal strings.
    pub weight: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub exp: Vec<u32>,
    /// Rational weight making the term the unique minimum, `"p/q"` strings.
    pub weight: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominantJson {
    pub dominant: Vec<DominantPointJson>,
    pub vertices: Vec<VertexJson>,
}

impl DominantJson {
    pub fn new(set: &DominantSet) -> Self {
        DominantJson {
            dominant: set
                .points
                .iter()
                .zip(&set.weights)
                .map(|(p, w)| DominantPointJson {
                    exp: p.exponent.0.clone(),
                    coeff_valuation: p.coeff_valuation,
                    weight: w.iter().map(|x| x.to_string()).collect(),
                })
                .collect(),
            vertices: set
                .vertices
                .iter()
                .map(|(i, w)| VertexJson { exp: i.0.clone(), weight: w.iter().map(|x| x.to_string()).collect() })
                .collect(),
        }
    }
}

/// `mann-solve` input file; integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MannInputJson {
    pub coeffs: Vec<String>,
    pub base: u64,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MannJson {
    pub families: Vec<FamilyJson>,
    /// Box on which the families were compared with direct evaluation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_checked: Option<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    #[serde(rename = "box")]
    pub box_bound: u64,
    pub solutions: Vec<Vec<u64>>,
}
