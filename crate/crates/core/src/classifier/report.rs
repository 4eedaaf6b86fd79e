use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::family::{format_point, DeformedTorusFamily, Family, IterationalVariety};
use super::{ClassifyOptions, Verification, VerifiedFamily};
use crate::error::{Error, Result};
use crate::field::{ElementJson, FieldSpec, FieldSpecJson, ValuedElement};
use crate::series::{MultiPoly, PolyJson, SeriesJson, TruncatedSeries};

/// Full answer of [`super::classify`], with the input echoed back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub map: TruncatedSeries,
    pub basepoint: ValuedElement,
    pub poly: MultiPoly,
    pub options: ClassifyOptions,
    pub order: u32,
    pub vlambda: i64,
    /// Number of initial orbit steps taken before `v(a) > v(lambda)`.
    pub normalization: u64,
    pub families: Vec<VerifiedFamily>,
    /// Zeros found inside refuted candidate cosets and not covered by any
    /// family.
    pub residual_points: Vec<Vec<u64>>,
    pub diagnostics: Vec<String>,
}

impl ClassificationReport {
    pub fn field(&self) -> FieldSpec {
        self.map.field()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Whether `t` lies in some family or among the residual points.
    pub fn covers(&self, t: &[u64]) -> bool {
        self.families.iter().any(|f| f.family.contains(t)) || self.residual_points.iter().any(|p| p == t)
    }

    /// Covered tuples in `[0, b]^n`.
    pub fn solutions_in_box(&self, b: u64) -> std::collections::BTreeSet<Vec<u64>> {
        super::box_points(self.nvars(), b).filter(|t| self.covers(t)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty() && self.residual_points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputJson {
    pub field: FieldSpecJson,
    pub map: SeriesJson,
    pub a: ElementJson,
    pub poly: PolyJson,
    #[serde(rename = "box")]
    pub box_bound: u64,
    pub trunc: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VerificationJson {
    ProvedToTruncation {
        trunc: usize,
    },
    BoxVerified {
        #[serde(rename = "box")]
        box_bound: u64,
    },
}

/// `x_var = f^index(a)`; `var` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFixJson {
    pub var: usize,
    pub index: u64,
}

/// `x_var = f^iterate(x_base)`; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkJson {
    pub var: usize,
    pub base: usize,
    pub iterate: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyEntryJson {
    Iterational {
        nvars: usize,
        fixed: Vec<PointFixJson>,
        links: Vec<LinkJson>,
        lower_bounds: Vec<u64>,
        consistent: bool,
        verification: VerificationJson,
    },
    Torus {
        nvars: usize,
        lattice_matrix: Vec<Vec<i64>>,
        base_exponents: Vec<u64>,
        saturated: bool,
        lower_bounds: Vec<u64>,
        verification: VerificationJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub input: InputJson,
    pub order: u32,
    pub vlambda: i64,
    pub normalization: u64,
    pub families: Vec<FamilyEntryJson>,
    pub residual_points: Vec<Vec<u64>>,
    pub diagnostics: Vec<String>,
}

impl Verification {
    pub fn to_json(self) -> VerificationJson {
        match self {
            Verification::ProvedToTruncation { trunc } => VerificationJson::ProvedToTruncation { trunc },
            Verification::BoxVerified { box_bound } => VerificationJson::BoxVerified { box_bound },
        }
    }

    pub fn from_json(j: &VerificationJson) -> Self {
        match *j {
            VerificationJson::ProvedToTruncation { trunc } => Verification::ProvedToTruncation { trunc },
            VerificationJson::BoxVerified { box_bound } => Verification::BoxVerified { box_bound },
        }
    }
}

fn small(x: &BigInt) -> i64 {
    i64::try_from(x).expect("lattice entry fits in 64 bits")
}

fn index(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::Parse(format!("variable index {i} out of range 1..={n}")))
    } else {
        Ok(i - 1)
    }
}

fn check_len(v: &[u64], n: usize, what: &str) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::Parse(format!("{what} has {} entries, expected {n}", v.len())))
    }
}

impl VerifiedFamily {
    pub fn to_json(&self) -> FamilyEntryJson {
        let verification = self.verification.to_json();
        match &self.family {
            Family::Iterational(v) => FamilyEntryJson::Iterational {
                nvars: v.nvars,
                fixed: v.fixed.iter().map(|(&i, &m)| PointFixJson { var: i + 1, index: m }).collect(),
                links: v.links.iter().map(|(&(j, k), &l)| LinkJson { var: j + 1, base: k + 1, iterate: l }).collect(),
                lower_bounds: v.lower_bounds.clone(),
                consistent: v.consistent,
                verification,
            },
            Family::Torus(v) => FamilyEntryJson::Torus {
                nvars: v.nvars,
                lattice_matrix: v.lattice_matrix.iter().map(|r| r.iter().map(small).collect()).collect(),
                base_exponents: v.base_exponents.clone(),
                saturated: v.saturated,
                lower_bounds: v.lower_bounds.clone(),
                verification,
            },
        }
    }

    pub fn from_json(j: &FamilyEntryJson) -> Result<Self> {
        match j {
            FamilyEntryJson::Iterational { nvars, fixed, links, lower_bounds, consistent, verification } => {
                let n = *nvars;
                check_len(lower_bounds, n, "lower_bounds")?;
                let mut fx = BTreeMap::new();
                for f in fixed {
                    fx.insert(index(f.var, n)?, f.index);
                }
                let mut lk = BTreeMap::new();
                for l in links {
                    lk.insert((index(l.var, n)?, index(l.base, n)?), l.iterate);
                }
                Ok(VerifiedFamily {
                    family: Family::Iterational(IterationalVariety {
                        nvars: n,
                        fixed: fx,
                        links: lk,
                        lower_bounds: lower_bounds.clone(),
                        consistent: *consistent,
                    }),
                    verification: Verification::from_json(verification),
                })
            }
            FamilyEntryJson::Torus { nvars, lattice_matrix, base_exponents, saturated, lower_bounds, verification } => {
                let n = *nvars;
                check_len(lower_bounds, n, "lower_bounds")?;
                check_len(base_exponents, n, "base_exponents")?;
                if lattice_matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse(format!("lattice rows must have {n} entries")));
                }
                Ok(VerifiedFamily {
                    family: Family::Torus(DeformedTorusFamily {
                        nvars: n,
                        lattice_matrix: lattice_matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                        base_exponents: base_exponents.clone(),
                        saturated: *saturated,
                        lower_bounds: lower_bounds.clone(),
                    }),
                    verification: Verification::from_json(verification),
                })
            }
        }
    }
}

impl ClassificationReport {
    pub fn input_json(&self) -> InputJson {
        InputJson {
            field: self.field().to_json(),
            map: self.map.to_json(),
            a: self.basepoint.to_json(),
            poly: self.poly.to_json(),
            box_bound: self.options.box_bound,
            trunc: self.options.trunc,
        }
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            input: self.input_json(),
            order: self.order,
            vlambda: self.vlambda,
            normalization: self.normalization,
            families: self.families.iter().map(VerifiedFamily::to_json).collect(),
            residual_points: self.residual_points.clone(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    pub fn from_json(j: &ReportJson) -> Result<Self> {
        let field = FieldSpec::from_json(&j.input.field)?;
        let map = TruncatedSeries::from_json(field, &j.input.map, j.input.trunc)?;
        let poly = MultiPoly::from_json(field, &j.input.poly)?;
        let n = poly.nvars();
        for p in &j.residual_points {
            check_len(p, n, "residual point")?;
        }
        let families = j.families.iter().map(VerifiedFamily::from_json).collect::<Result<Vec<_>>>()?;
        if families.iter().any(|f| f.family.nvars() != n) {
            return Err(Error::Parse(format!("family dimension differs from the polynomial's {n} variables")));
        }
        Ok(ClassificationReport {
            map,
            basepoint: ValuedElement::from_json(field, &j.input.a)?,
            poly,
            options: ClassifyOptions { trunc: j.input.trunc, box_bound: j.input.box_bound },
            order: j.order,
            vlambda: j.vlambda,
            normalization: j.normalization,
            families,
            residual_points: j.residual_points.clone(),
            diagnostics: j.diagnostics.clone(),
        })
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::ProvedToTruncation { trunc } => write!(f, "proved mod x^{}", trunc + 1),
            Verification::BoxVerified { box_bound } => write!(f, "verified on [0,{box_bound}]^n"),
        }
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let regime = if self.order == 1 { "attracting" } else { "superattracting" };
        writeln!(f, "map: f(x) = {}", self.map)?;
        writeln!(f, "fixed point: {regime}, M = {}, v(lambda) = {}", self.order, self.vlambda)?;
        writeln!(f, "G = {}", self.poly)?;
        if self.normalization > 0 {
            writeln!(f, "basepoint normalized after {} step(s)", self.normalization)?;
        }
        if self.is_empty() {
            writeln!(f, "no relations on orbit (within verified box)")?;
        }
        for v in &self.families {
            writeln!(f, "{}   [{}]", v.family, v.verification)?;
        }
        for p in &self.residual_points {
            writeln!(f, "isolated solution: t = {}", format_point(p))?;
        }
        for d in &self.diagnostics {
            writeln!(f, "note: {d}")?;
        }
        Ok(())
    }
}
