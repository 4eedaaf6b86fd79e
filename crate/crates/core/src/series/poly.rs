use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ValuedElement};

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` unless `other` divides `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Weighted degree `<w, I>`.
    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Polynomial `sum_I g_I x^I` in `nvars` variables.
///
/// Exact-zero coefficients are never stored. Coefficients that are only
/// zero to precision are kept so their precision loss stays visible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<MultiIndex, ValuedElement>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn new(field: FieldSpec, nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, ValuedElement)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (i, c) in terms {
            if i.len() != nvars {
                return Err(Error::Parse(format!("exponent {i} has {} entries, expected {nvars}", i.len())));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(i, c);
        }
        Ok(p)
    }

    /// Like [`MultiPoly::new`] but rejects coefficients of negative valuation.
    pub fn integral(field: FieldSpec, nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, ValuedElement)>) -> Result<Self> {
        let p = Self::new(field, nvars, terms)?;
        if let Some((i, c)) = p.terms.iter().find(|(_, c)| !c.is_integral()) {
            return Err(Error::NotIntegral(format!("coefficient of x^{i} has valuation {}", c.valuation())));
        }
        Ok(p)
    }

    pub fn constant(c: ValuedElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(ValuedElement::one(field), MultiIndex::unit(nvars, i))
    }

    pub fn monomial(c: ValuedElement, i: MultiIndex) -> Self {
        let mut p = Self::zero(c.field(), i.len());
        p.add_term(i, c);
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ValuedElement)> {
        self.terms.iter()
    }

    /// Terms whose coefficient is not zero to precision.
    pub fn significant_terms(&self) -> impl Iterator<Item = (&MultiIndex, &ValuedElement)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero_to_precision())
    }

    pub fn coefficient(&self, i: &MultiIndex) -> ValuedElement {
        self.terms.get(i).cloned().unwrap_or_else(|| ValuedElement::zero(self.field))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no stored coefficient is known to be nonzero.
    pub fn is_zero_to_precision(&self) -> bool {
        self.terms.values().all(|c| c.is_zero_to_precision())
    }

    pub fn has_inexact_zeros(&self) -> bool {
        self.terms.values().any(|c| c.is_zero_to_precision())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|i| i.degree()).max()
    }

    pub fn add_term(&mut self, i: MultiIndex, c: ValuedElement) {
        debug_assert_eq!(i.len(), self.nvars);
        if c.is_exact_zero() {
            return;
        }
        let sum = match self.terms.remove(&i) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_exact_zero() {
            self.terms.insert(i, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::Parse(format!("variable count mismatch: {} vs {}", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ValuedElement) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (i, x) in &self.terms {
            out.add_term(i.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_trunc(other, None)
    }

    /// Product keeping only monomials of total degree at most `max_deg`.
    pub fn mul_trunc(&self, other: &Self, max_deg: Option<u64>) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let k = i.add(j);
                if max_deg.is_some_and(|d| k.degree() > d) {
                    continue;
                }
                out.add_term(k, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        self.pow_trunc(k, None)
    }

    pub fn pow_trunc(&self, k: u32, max_deg: Option<u64>) -> Result<Self> {
        let mut acc = Self::constant(ValuedElement::one(self.field), self.nvars);
        for _ in 0..k {
            acc = acc.mul_trunc(self, max_deg)?;
        }
        Ok(acc)
    }

    /// Drops monomials of total degree above `max_deg`.
    pub fn truncate_degree(&self, max_deg: u64) -> Self {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(i, _)| i.degree() <= max_deg).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    /// Additive Gauss norm: the least coefficient valuation.
    pub fn gauss_norm_valuation(&self) -> Result<i64> {
        self.terms
            .values()
            .filter_map(|c| c.valuation().finite())
            .min()
            .ok_or_else(|| Error::EmptyInput("Gauss norm of the zero polynomial".into()))
    }

    /// Evaluates at a point of the open polydisc (every coordinate of
    /// positive valuation).
    pub fn eval(&self, point: &[ValuedElement]) -> Result<ValuedElement> {
        if point.len() != self.nvars {
            return Err(Error::Parse(format!("point has {} coordinates, expected {}", point.len(), self.nvars)));
        }
        for x in point {
            super::eval_point_valuation(x)?;
        }
        self.eval_unchecked(point)
    }

    /// Evaluation without the polydisc check.
    pub fn eval_unchecked(&self, point: &[ValuedElement]) -> Result<ValuedElement> {
        if point.iter().any(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut powers: Vec<Vec<ValuedElement>> = vec![vec![ValuedElement::one(self.field)]; self.nvars];
        let mut acc = ValuedElement::zero(self.field);
        for (i, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in i.0.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &point[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitutes the value `x` for variable `var`, leaving a polynomial in
    /// the remaining `nvars - 1` variables.
    pub fn substitute_value(&self, var: usize, x: &ValuedElement) -> Result<Self> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(self.field, self.nvars - 1);
        for (i, c) in &self.terms {
            let mut e = i.0.clone();
            let k = e.remove(var);
            out.add_term(MultiIndex(e), c * &x.pow(k as u64));
        }
        Ok(out)
    }

    /// Substitutes a polynomial for each variable (`images[k]` replaces `x_k`),
    /// truncating at total degree `max_deg` in the new variables.
    pub fn substitute(&self, images: &[MultiPoly], max_deg: Option<u64>) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Parse(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let m = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(ValuedElement::one(self.field), p.nvars)])
            .collect();
        let mut out = Self::zero(self.field, m);
        for (i, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone(), m);
            for (k, &e) in i.0.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul_trunc(&images[k], max_deg)?;
                    powers[k].push(next);
                }
                term = term.mul_trunc(&powers[k][e as usize], max_deg)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Largest monomial dividing every stored term.
    pub fn monomial_content(&self) -> MultiIndex {
        let mut it = self.terms.keys();
        match it.next() {
            None => MultiIndex::zero(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, i| acc.meet(i)),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &MultiIndex) -> Result<Self> {
        let mut out = Self::zero(self.field, self.nvars);
        for (i, c) in &self.terms {
            let q = i.checked_sub(m).ok_or_else(|| Error::domain(format!("x^{m} does not divide x^{i}")))?;
            out.add_term(q, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let mono: Vec<String> = i
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
