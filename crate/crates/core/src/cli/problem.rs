use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ElementJson, FieldSpec, FieldSpecJson, ValuedElement};
use crate::series::{MultiPoly, PolyJson, SeriesJson, TruncatedSeries, DEFAULT_TRUNC};

/// Environment variable consulted for the truncation order when neither
/// the command line nor the problem file sets one.
pub const TRUNC_ENV: &str = "ORBITREL_TRUNC";

/// On-disk problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub field: FieldSpecJson,
    pub map: SeriesJson,
    pub a: ElementJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub verbose: bool,
}

/// A parsed problem with options resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub field: FieldSpec,
    pub map: TruncatedSeries,
    pub a: ValuedElement,
    pub poly: Option<MultiPoly>,
    pub trunc: usize,
    pub box_bound: u64,
    pub verbose: bool,
}

/// Truncation order: command-line flag, then problem file, then
/// environment, then the default.
pub fn resolve_trunc(flag: Option<usize>, file: Option<usize>) -> Result<usize> {
    if let Some(t) = flag.or(file) {
        return Ok(t);
    }
    match std::env::var(TRUNC_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{TRUNC_ENV}={s:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_TRUNC),
    }
}

impl ProblemJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn resolve(&self, trunc_flag: Option<usize>, box_flag: Option<u64>, verbose_flag: bool) -> Result<Problem> {
        let field = FieldSpec::from_json(&self.field)?;
        let trunc = resolve_trunc(trunc_flag, self.trunc)?;
        let map = TruncatedSeries::from_json(field, &self.map, trunc)?;
        let poly = self.poly.as_ref().map(|p| MultiPoly::from_json(field, p)).transpose()?;
        Ok(Problem {
            field,
            map,
            a: ValuedElement::from_json(field, &self.a)?,
            poly,
            trunc,
            box_bound: box_flag.or(self.box_bound).unwrap_or(crate::classifier::DEFAULT_BOX),
            verbose: verbose_flag || self.verbose,
        })
    }
}

impl Problem {
    pub fn to_json(&self) -> ProblemJson {
        ProblemJson {
            field: self.field.to_json(),
            map: self.map.to_json(),
            a: self.a.to_json(),
            poly: self.poly.as_ref().map(MultiPoly::to_json),
            trunc: Some(self.trunc),
            box_bound: Some(self.box_bound),
            verbose: self.verbose,
        }
    }

    pub fn require_poly(&self) -> Result<&MultiPoly> {
        self.poly.as_ref().ok_or_else(|| Error::Parse("problem file has no \"poly\" entry".into()))
    }
}
