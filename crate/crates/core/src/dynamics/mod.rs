//! Attracting self-maps of the open unit disc with a fixed point at `0`.

mod conjugacy;

pub use conjugacy::{boettcher, eval_linearizer, functional_residual, koenigs, koenigs_inverse};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Valuation, ValuedElement, ZeroTest};
use crate::series::TruncatedSeries;

/// A validated map `f(x) = lambda x^M + ...` with an attracting fixed point
/// at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalSystem {
    f: TruncatedSeries,
    m: u32,
    lambda: ValuedElement,
    vlambda: i64,
}

/// One point `f^t(a)` of a forward orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub index: u64,
    pub value: ValuedElement,
    pub valuation: i64,
}

impl DynamicalSystem {
    pub fn new(f: TruncatedSeries) -> Result<Self> {
        let c0 = &f.coeffs()[0];
        if !c0.is_exact_zero() {
            return Err(Error::ConstantTermNonzero);
        }
        let m = f.order().ok_or(Error::ZeroMap)?;
        let lambda = f.coeffs()[m].clone();
        let vlambda = lambda
            .valuation()
            .finite()
            .ok_or_else(|| Error::precision(format!("coefficient of x^{m} is zero to precision")))?;
        if let Some((i, c)) = f.coeffs().iter().enumerate().find(|(_, c)| !c.is_integral()) {
            return Err(Error::NotIntegral(format!("coefficient of x^{i} has valuation {}", c.valuation())));
        }
        if m == 1 && vlambda <= 0 {
            return Err(Error::NotAttracting(vlambda));
        }
        Ok(DynamicalSystem { f, m: m as u32, lambda, vlambda })
    }

    pub fn map(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    /// Order of vanishing `M` at the origin.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn lambda(&self) -> &ValuedElement {
        &self.lambda
    }

    pub fn vlambda(&self) -> i64 {
        self.vlambda
    }

    pub fn is_superattracting(&self) -> bool {
        self.m >= 2
    }

    /// Closed form for `v(f^t(a))` given `v(a) > v(lambda)`.
    pub fn iterate_valuation(&self, va: i64, t: u64) -> BigInt {
        let va = BigInt::from(va);
        let vl = BigInt::from(self.vlambda);
        if self.m == 1 {
            return va + vl * BigInt::from(t);
        }
        let mt = num_traits::pow(BigInt::from(self.m), t as usize);
        let geom = (&mt - BigInt::one()) / BigInt::from(self.m - 1);
        mt * va + geom * vl
    }

    /// One application of `f`, failing when the result is not determined.
    pub fn step(&self, x: &ValuedElement) -> Result<ValuedElement> {
        let y = self.f.eval(x)?;
        match y.zero_test() {
            ZeroTest::ExactZero => Err(Error::domain("orbit reaches the fixed point 0")),
            ZeroTest::ZeroToPrecision(k) => Err(Error::precision(format!("iterate known only modulo pi^{k}"))),
            ZeroTest::NonZero => Ok(y),
        }
    }

    fn check_basepoint(&self, a: &ValuedElement) -> Result<i64> {
        match a.valuation() {
            Valuation::Finite(v) if v > self.vlambda && v >= 1 => Ok(v),
            Valuation::Finite(v) => Err(Error::domain(format!(
                "basepoint valuation {v} must exceed v(lambda) = {} and be positive",
                self.vlambda
            ))),
            Valuation::Infinite => Err(Error::domain("basepoint 0 is fixed")),
            Valuation::AtLeast(k) => Err(Error::precision(format!("basepoint known only modulo pi^{k}"))),
        }
    }

    /// `[a, f(a), ..., f^t_max(a)]`, checking each valuation against the
    /// closed form.
    pub fn orbit(&self, a: &ValuedElement, t_max: u64) -> Result<Vec<OrbitPoint>> {
        let va = self.check_basepoint(a)?;
        let mut out = Vec::with_capacity(t_max as usize + 1);
        let mut x = a.clone();
        for t in 0..=t_max {
            if t > 0 {
                x = self.step(&x)?;
            }
            let expect = self
                .iterate_valuation(va, t)
                .to_i64()
                .ok_or_else(|| Error::precision(format!("valuation of f^{t}(a) overflows")))?;
            let got = x.valuation().finite().unwrap();
            if got != expect {
                return Err(Error::precision(format!("f^{t}(a) has valuation {got}, expected {expect}")));
            }
            out.push(OrbitPoint { index: t, value: x.clone(), valuation: got });
        }
        Ok(out)
    }

    /// `f^t(a)` by repeated evaluation.
    pub fn iterate(&self, a: &ValuedElement, t: u64) -> Result<ValuedElement> {
        let mut x = a.clone();
        for _ in 0..t {
            x = self.step(&x)?;
        }
        Ok(x)
    }

    /// Least `N` with `v(f^N(a)) > v(lambda)`, together with `f^N(a)`.
    pub fn normalize_basepoint(&self, a: &ValuedElement) -> Result<(u64, ValuedElement)> {
        let mut x = a.clone();
        let bound = self.vlambda.max(0) as u64 + 2;
        for n in 0..=bound {
            match x.valuation() {
                Valuation::Infinite => return Err(Error::domain("basepoint orbit reaches 0")),
                Valuation::AtLeast(k) => return Err(Error::precision(format!("f^{n}(a) known only modulo pi^{k}"))),
                Valuation::Finite(v) if v < 1 => {
                    return Err(Error::domain(format!("basepoint valuation {v} is outside the open unit disc")))
                }
                Valuation::Finite(v) if v > self.vlambda => return Ok((n, x)),
                Valuation::Finite(_) => x = self.step(&x)?,
            }
        }
        Err(Error::precision("basepoint normalization did not terminate"))
    }
}
