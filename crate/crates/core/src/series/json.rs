//! JSON forms: series are `{"trunc", "terms": [{"exp", "coeff"}], "polynomial"}`,
//! polynomials are `{"nvars", "terms": [{"exp": [..], "coeff"}]}`.

use serde::{Deserialize, Serialize};

use super::{MultiIndex, MultiPoly, TruncatedSeries};
use crate::error::{Error, Result};
use crate::field::{ElementJson, FieldSpec, ValuedElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTermJson {
    pub exp: usize,
    pub coeff: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    pub terms: Vec<SeriesTermJson>,
    #[serde(default)]
    pub polynomial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermJson {
    pub exp: Vec<u32>,
    pub coeff: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<PolyTermJson>,
}

impl TruncatedSeries {
    pub fn to_json(&self) -> SeriesJson {
        let terms = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(|(exp, c)| SeriesTermJson { exp, coeff: c.to_json() })
            .collect();
        SeriesJson { trunc: Some(self.trunc()), terms, polynomial: self.is_polynomial() }
    }

    /// Parses a series; `default_trunc` applies when the document omits
    /// `trunc`. A polynomial whose degree exceeds the truncation order is
    /// truncated and loses its polynomial flag.
    pub fn from_json(field: FieldSpec, j: &SeriesJson, default_trunc: usize) -> Result<Self> {
        let trunc = j.trunc.unwrap_or(default_trunc);
        let top = j.terms.iter().map(|t| t.exp).max().unwrap_or(0);
        let mut coeffs = vec![ValuedElement::zero(field); top.max(trunc) + 1];
        for t in &j.terms {
            if !coeffs[t.exp].is_exact_zero() {
                return Err(Error::Parse(format!("duplicate exponent {}", t.exp)));
            }
            coeffs[t.exp] = ValuedElement::from_json(field, &t.coeff)?;
        }
        TruncatedSeries::new(field, coeffs, trunc, j.polynomial)
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars(),
            terms: self.terms().map(|(i, c)| PolyTermJson { exp: i.0.clone(), coeff: c.to_json() }).collect(),
        }
    }

    pub fn from_json(field: FieldSpec, j: &PolyJson) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if !seen.insert(t.exp.clone()) {
                return Err(Error::Parse(format!("duplicate exponent {:?}", t.exp)));
            }
            terms.push((MultiIndex(t.exp.clone()), ValuedElement::from_json(field, &t.coeff)?));
        }
        MultiPoly::new(field, j.nvars, terms)
    }
}
