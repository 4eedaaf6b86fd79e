//! JSON form of field specs and elements.
//!
//! Elements: `{"val": int | "inf", "digits": [...], "prec": int, "exact": bool}`.
//! p-adic digits are integers; Laurent coefficients are `{"num", "den"}`
//! decimal strings. For a zero to precision `prec` is the absolute bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Backend, FieldSpec, Mantissa, Repr, ValuedElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValJson {
    Finite(i64),
    Symbol(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DigitJson {
    Int(i64),
    Rational { num: String, den: String },
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub val: ValJson,
    #[serde(default)]
    pub digits: Vec<DigitJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpecJson {
    Padic { p: u64, precision_cap: u32 },
    Laurent { precision_cap: u32 },
}

impl FieldSpec {
    pub fn to_json(&self) -> FieldSpecJson {
        match self.backend {
            Backend::PAdic { p } => FieldSpecJson::Padic { p, precision_cap: self.precision_cap },
            Backend::Laurent => FieldSpecJson::Laurent { precision_cap: self.precision_cap },
        }
    }

    pub fn from_json(j: &FieldSpecJson) -> Result<Self> {
        match *j {
            FieldSpecJson::Padic { p, precision_cap } => FieldSpec::padic(p, precision_cap),
            FieldSpecJson::Laurent { precision_cap } => FieldSpec::laurent(precision_cap),
        }
    }
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

pub(crate) fn parse_rational(d: &DigitJson) -> Result<BigRational> {
    match d {
        DigitJson::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
        DigitJson::Rational { num, den } => {
            let den = parse_big(den)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_big(num)?, den))
        }
        DigitJson::Text(s) => match s.split_once('/') {
            Some((n, d)) => {
                let den = parse_big(d)?;
                if den == BigInt::from(0) {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(parse_big(n)?, den))
            }
            None => Ok(BigRational::from_integer(parse_big(s)?)),
        },
    }
}

pub(crate) fn rational_json(q: &BigRational) -> DigitJson {
    DigitJson::Rational { num: q.numer().to_string(), den: q.denom().to_string() }
}

impl ValuedElement {
    pub fn to_json(&self) -> ElementJson {
        match &self.repr {
            Repr::Zero { abs } => ElementJson {
                val: ValJson::Symbol("inf".into()),
                digits: vec![],
                prec: Some(abs.unwrap_or(0)),
                exact: Some(abs.is_none()),
            },
            _ => {
                let digits = match self.mantissa() {
                    Mantissa::Digits(d) => d.into_iter().map(|x| DigitJson::Int(x as i64)).collect(),
                    Mantissa::Coefficients(cs) => cs.iter().map(rational_json).collect(),
                    Mantissa::Empty => unreachable!(),
                };
                let prec = match &self.repr {
                    Repr::PAdic { prec, .. } | Repr::Laurent { prec, .. } => *prec as i64,
                    Repr::Zero { .. } => unreachable!(),
                };
                ElementJson {
                    val: ValJson::Finite(self.valuation().finite().unwrap()),
                    digits,
                    prec: Some(prec),
                    exact: Some(self.is_exact()),
                }
            }
        }
    }

    pub fn from_json(field: FieldSpec, j: &ElementJson) -> Result<Self> {
        let cap = field.precision_cap as i64;
        match &j.val {
            ValJson::Symbol(s) => {
                if s != "inf" {
                    return Err(Error::Parse(format!("valuation must be an integer or \"inf\", got {s:?}")));
                }
                if !j.digits.is_empty() {
                    return Err(Error::Parse("zero element cannot carry digits".into()));
                }
                let exact = j.exact.unwrap_or(true);
                if exact {
                    Ok(ValuedElement::zero(field))
                } else {
                    let abs = j.prec.ok_or_else(|| Error::Parse("inexact zero needs \"prec\"".into()))?;
                    Ok(ValuedElement::zero_to(field, abs))
                }
            }
            ValJson::Finite(val) => {
                let prec = j.prec.unwrap_or(cap);
                if prec < 1 {
                    return Err(Error::Parse(format!("prec must be positive, got {prec}")));
                }
                let prec = prec.min(cap) as u32;
                match field.backend {
                    Backend::PAdic { .. } => {
                        if j.exact == Some(true) {
                            return Err(Error::Parse("p-adic elements are never exact".into()));
                        }
                        let digits = j
                            .digits
                            .iter()
                            .map(|d| match d {
                                DigitJson::Int(n) => Ok(BigInt::from(*n)),
                                DigitJson::Text(s) => parse_big(s),
                                DigitJson::Rational { .. } => Err(Error::Parse("p-adic digits must be integers".into())),
                            })
                            .collect::<Result<Vec<_>>>()?;
                        ValuedElement::from_padic_digits(field, *val, &digits, prec)
                    }
                    Backend::Laurent => {
                        let coeffs = j.digits.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
                        ValuedElement::from_laurent_coeffs(field, *val, &coeffs, prec, j.exact.unwrap_or(true))
                    }
                }
            }
        }
    }
}
