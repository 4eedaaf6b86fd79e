//! Truncated power series in one variable and exact multivariate polynomials
//! over a valued field.

mod json;
mod poly;

pub use json::{PolyJson, PolyTermJson, SeriesJson, SeriesTermJson};
pub use poly::{MultiIndex, MultiPoly};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Valuation, ValuedElement};

/// Default truncation order.
pub const DEFAULT_TRUNC: usize = 32;

/// A power series `sum_{i <= T} c_i x^i` known modulo `x^(T+1)`.
///
/// When `polynomial` is set the coefficients past `T` are known to vanish,
/// so the series is an exact polynomial of degree at most `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldSpec,
    coeffs: Vec<ValuedElement>,
    polynomial: bool,
}

impl TruncatedSeries {
    /// Builds a series from coefficients `c_0, c_1, ...`, padding with exact
    /// zeros up to `trunc`. Coefficients past `trunc` are dropped; dropping a
    /// nonzero one clears the polynomial flag.
    pub fn new(field: FieldSpec, mut coeffs: Vec<ValuedElement>, trunc: usize, polynomial: bool) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut polynomial = polynomial;
        if coeffs.len() > trunc + 1 {
            if coeffs[trunc + 1..].iter().any(|c| !c.is_exact_zero()) {
                polynomial = false;
            }
            coeffs.truncate(trunc + 1);
        }
        coeffs.resize(trunc + 1, ValuedElement::zero(field));
        Ok(TruncatedSeries { field, coeffs, polynomial })
    }

    /// Like [`TruncatedSeries::new`] but insists on coefficients in the
    /// valuation ring (Gauss norm at most one).
    pub fn integral(field: FieldSpec, coeffs: Vec<ValuedElement>, trunc: usize, polynomial: bool) -> Result<Self> {
        let s = Self::new(field, coeffs, trunc, polynomial)?;
        if let Some((i, c)) = s.coeffs.iter().enumerate().find(|(_, c)| !c.is_integral()) {
            return Err(Error::NotIntegral(format!("coefficient of x^{i} has valuation {}", c.valuation())));
        }
        Ok(s)
    }

    pub fn zero(field: FieldSpec, trunc: usize) -> Self {
        TruncatedSeries { field, coeffs: vec![ValuedElement::zero(field); trunc + 1], polynomial: true }
    }

    pub fn constant(c: ValuedElement, trunc: usize) -> Self {
        let mut s = Self::zero(c.field(), trunc);
        s.coeffs[0] = c;
        s
    }

    /// The identity series `x`.
    pub fn identity(field: FieldSpec, trunc: usize) -> Self {
        let mut s = Self::zero(field, trunc);
        if trunc >= 1 {
            s.coeffs[1] = ValuedElement::one(field);
        } else {
            s.polynomial = false;
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    pub fn coeffs(&self) -> &[ValuedElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; `None` past the truncation order of a
    /// non-polynomial series.
    pub fn coefficient(&self, i: usize) -> Option<ValuedElement> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.polynomial => Some(ValuedElement::zero(self.field)),
            None => None,
        }
    }

    pub fn set_coefficient(&mut self, i: usize, c: ValuedElement) {
        assert_eq!(c.field(), self.field);
        self.coeffs[i] = c;
    }

    /// Index of the last coefficient that is not an exact zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_exact_zero())
    }

    /// Index of the first coefficient that is not an exact zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_exact_zero())
    }

    /// Re-truncates to order `trunc` (never extends a non-polynomial series).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        if trunc >= self.trunc() {
            if self.polynomial {
                let mut s = self.clone();
                s.coeffs.resize(trunc + 1, ValuedElement::zero(self.field));
                return s;
            }
            return self.clone();
        }
        Self::new(self.field, self.coeffs.clone(), trunc, self.polynomial).unwrap()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn common_trunc(&self, other: &Self) -> usize {
        self.trunc().min(other.trunc())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let t = if self.polynomial && other.polynomial {
            self.trunc().max(other.trunc())
        } else {
            self.common_trunc(other)
        };
        let a = self.with_trunc(t);
        let b = other.with_trunc(t);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(TruncatedSeries { field: self.field, coeffs, polynomial: a.polynomial && b.polynomial })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            polynomial: self.polynomial,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ValuedElement) -> Self {
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            polynomial: self.polynomial,
        }
    }

    /// Product modulo `x^(T+1)` with `T` the smaller truncation order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let t = self.common_trunc(other);
        let mut out = vec![ValuedElement::zero(self.field); t + 1];
        let mut dropped = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                if i + j > t {
                    dropped = true;
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(TruncatedSeries { field: self.field, coeffs: out, polynomial: self.polynomial && other.polynomial && !dropped })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(ValuedElement::one(self.field), self.trunc());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `outer(inner(x))` modulo `x^(T+1)`, `T` the smaller truncation order.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.check(inner)?;
        if !inner.coeffs[0].is_exact_zero() {
            return Err(Error::ConstantTermNonzero);
        }
        let t = outer.common_trunc(inner);
        let inner_t = inner.with_trunc(t);
        let top = outer.degree().map_or(0, |d| d.min(t));
        let mut acc = Self::constant(outer.coeffs[top].clone(), t);
        for j in (0..top).rev() {
            acc = acc.mul(&inner_t)?;
            acc.coeffs[0] = &acc.coeffs[0] + &outer.coeffs[j];
        }
        let exact_degree = match (outer.degree(), inner.degree()) {
            (Some(a), Some(b)) => a * b,
            _ => 0,
        };
        acc.polynomial = outer.polynomial && inner.polynomial && exact_degree <= t && outer.trunc() >= outer.degree().unwrap_or(0);
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let field = self.field;
        if self.trunc() == 0 {
            return TruncatedSeries { field, coeffs: vec![ValuedElement::zero(field)], polynomial: self.polynomial };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect();
        TruncatedSeries { field, coeffs, polynomial: self.polynomial }
    }

    /// Additive Gauss norm: the least coefficient valuation.
    pub fn gauss_norm_valuation(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .filter_map(|c| c.valuation().finite())
            .min()
            .ok_or_else(|| Error::EmptyInput("Gauss norm of the zero series".into()))
    }

    /// Least valuation over coefficients, `Infinite` when every coefficient
    /// is zero to precision (used for functional-equation residuals).
    pub fn min_valuation(&self) -> Valuation {
        match self.coeffs.iter().filter_map(|c| c.valuation().finite()).min() {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    /// Evaluates at `x` with `v(x) >= 1`, assuming the unknown tail has
    /// coefficients in the valuation ring: the result is known modulo
    /// `pi^((T+1) v(x))`.
    pub fn eval(&self, x: &ValuedElement) -> Result<ValuedElement> {
        let vx = eval_point_valuation(x)?;
        let tail = (!self.polynomial).then(|| (self.trunc() as i64 + 1) * vx);
        self.eval_with_tail(x, tail)
    }

    /// Horner evaluation; `tail_abs` bounds the valuation of the omitted tail.
    pub fn eval_with_tail(&self, x: &ValuedElement, tail_abs: Option<i64>) -> Result<ValuedElement> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let top = self.degree().unwrap_or(0);
        let mut acc = self.coeffs[top].clone();
        for c in self.coeffs[..top].iter().rev() {
            acc = &(&acc * x) + c;
        }
        Ok(match tail_abs {
            Some(a) => acc.with_abs_cap(a),
            None => acc,
        })
    }
}

pub(crate) fn eval_point_valuation(x: &ValuedElement) -> Result<i64> {
    match x.valuation() {
        Valuation::Finite(v) if v >= 1 => Ok(v),
        Valuation::Finite(v) => Err(Error::OutsideConvergenceControl(v)),
        Valuation::AtLeast(k) if k >= 1 => Ok(k),
        Valuation::AtLeast(k) => Err(Error::OutsideConvergenceControl(k)),
        Valuation::Infinite => Ok(i64::MAX / 4),
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_exact_zero() {
                parts.push(format!("({c})*x^{i}"));
            }
        }
        if !self.polynomial {
            parts.push(format!("O(x^{})", self.trunc() + 1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
