//! Formal conjugacies: the Koenigs linearizer (`h o f = lambda h`) in the
//! attracting case and the Böttcher coordinate (`h o f = lambda h^M`) in the
//! superattracting case.

use super::DynamicalSystem;
use crate::error::{Error, Result};
use crate::field::{Backend, ValuedElement};
use crate::series::{eval_point_valuation, TruncatedSeries};

const PADIC_SAFETY_DIGITS: i64 = 8;

/// Powers `f^1, ..., f^count` truncated at `trunc`.
fn powers(f: &TruncatedSeries, count: usize, trunc: usize) -> Result<Vec<TruncatedSeries>> {
    let f = f.with_trunc(trunc);
    let mut out: Vec<TruncatedSeries> = Vec::with_capacity(count);
    for _ in 0..count {
        let next = match out.last() {
            None => f.clone(),
            Some(prev) => prev.mul(&f)?,
        };
        out.push(next);
    }
    Ok(out)
}

/// Truncation order actually determined by `f` when `need` extra
/// coefficients of `f` past the requested order are used.
fn effective_trunc(f: &TruncatedSeries, trunc: usize, need: usize) -> Result<usize> {
    if f.is_polynomial() {
        return Ok(trunc);
    }
    let t = trunc.min(f.trunc().saturating_sub(need));
    if t == 0 {
        return Err(Error::precision("map is truncated too early to determine a conjugacy"));
    }
    Ok(t)
}

/// Koenigs linearizer `h = x + h_2 x^2 + ...` with `h o f = lambda h`
/// modulo `x^(T+1)`.
pub fn koenigs(sys: &DynamicalSystem, trunc: usize) -> Result<TruncatedSeries> {
    if sys.order() != 1 {
        return Err(Error::domain("Koenigs linearization needs a simple fixed point (M = 1)"));
    }
    let field = sys.field();
    let t = effective_trunc(sys.map(), trunc, 0)?;
    if let Backend::PAdic { .. } = field.backend {
        let need = t as i64 * sys.vlambda() + PADIC_SAFETY_DIGITS;
        if (field.precision_cap as i64) <= need {
            return Err(Error::precision(format!(
                "precision cap {} must exceed T*v(lambda) + {PADIC_SAFETY_DIGITS} = {need}",
                field.precision_cap
            )));
        }
    }
    let lambda = sys.lambda();
    let pw = powers(sys.map(), t.saturating_sub(1), t)?;
    let mut h = vec![ValuedElement::zero(field); t + 1];
    if t >= 1 {
        h[1] = ValuedElement::one(field);
    }
    let mut lambda_n = lambda.clone();
    for n in 2..=t {
        lambda_n = &lambda_n * lambda;
        let mut s = ValuedElement::zero(field);
        for j in 1..n {
            if h[j].is_exact_zero() {
                continue;
            }
            s = &s + &(&h[j] * &pw[j - 1].coeffs()[n]);
        }
        if !s.is_exact_zero() {
            h[n] = s.div(&(lambda - &lambda_n))?;
        }
    }
    let linear = sys.map().is_polynomial() && sys.map().degree() == Some(1);
    TruncatedSeries::new(field, h, t, linear)
}

/// Böttcher coordinate `h = x + h_2 x^2 + ...` with `h o f = lambda h^M`
/// modulo `x^(T+1)`.
pub fn boettcher(sys: &DynamicalSystem, trunc: usize) -> Result<TruncatedSeries> {
    let m = sys.order() as usize;
    if m < 2 {
        return Err(Error::domain("Böttcher coordinate needs a superattracting fixed point (M >= 2)"));
    }
    let field = sys.field();
    if !field.characteristic_zero() {
        return Err(Error::CharacteristicNotZero);
    }
    let t = effective_trunc(sys.map(), trunc, m - 1)?;
    let top = t + m - 1;
    let lambda = sys.lambda();
    let denom = lambda.scale_int(m as i64);
    let pw = powers(sys.map(), t.saturating_sub(1), top)?;
    let mut h = vec![ValuedElement::zero(field); top + 1];
    if t >= 1 {
        h[1] = ValuedElement::one(field);
    }
    for n in 2..=t {
        let k = n + m - 1;
        let mut lhs = ValuedElement::zero(field);
        for j in 1..n {
            if h[j].is_exact_zero() || j * m > k {
                continue;
            }
            lhs = &lhs + &(&h[j] * &pw[j - 1].coeffs()[k]);
        }
        let partial = TruncatedSeries::new(field, h[..n].to_vec(), k, true)?;
        let q = partial.pow(m as u32)?.coeffs()[k].clone();
        let num = &lhs - &(lambda * &q);
        if !num.is_exact_zero() {
            h[n] = num.div(&denom)?;
        }
    }
    h.truncate(t + 1);
    let monomial = sys.map().is_polynomial() && sys.map().degree() == Some(m);
    TruncatedSeries::new(field, h, t, monomial)
}

/// Compositional inverse of `h` (with `h(0) = 0`, `h'(0)` a unit) modulo
/// `x^(T+1)`, by coefficient-wise reversion.
pub fn koenigs_inverse(h: &TruncatedSeries, trunc: usize) -> Result<TruncatedSeries> {
    let field = h.field();
    if !h.coeffs()[0].is_exact_zero() {
        return Err(Error::ConstantTermNonzero);
    }
    let t = if h.is_polynomial() { trunc } else { trunc.min(h.trunc()) };
    let hc = |i: usize| h.coefficient(i).unwrap_or_else(|| ValuedElement::zero(field));
    let h1_inv = hc(1).inv()?;
    let zero = ValuedElement::zero(field);
    let mut g = vec![zero.clone(); t + 1];
    if t == 0 {
        return TruncatedSeries::new(field, g, 0, false);
    }
    g[1] = h1_inv.clone();
    // p[j][n] = [y^n] g^j for j >= 2, filled as g becomes known
    let mut p: Vec<Vec<ValuedElement>> = vec![vec![zero.clone(); t + 1]; t + 1];
    for n in 2..=t {
        for j in 2..=n {
            let mut s = zero.clone();
            for k in 1..=n - 1 {
                let prev = if j == 2 { &g[n - k] } else { &p[j - 1][n - k] };
                if g[k].is_exact_zero() || prev.is_exact_zero() {
                    continue;
                }
                s = &s + &(&g[k] * prev);
            }
            p[j][n] = s;
        }
        let mut s = zero.clone();
        for j in 2..=n {
            let hj = hc(j);
            if hj.is_exact_zero() || p[j][n].is_exact_zero() {
                continue;
            }
            s = &s + &(&hj * &p[j][n]);
        }
        if !s.is_exact_zero() {
            g[n] = -(&s * &h1_inv);
        }
    }
    let linear = h.is_polynomial() && h.degree() == Some(1);
    TruncatedSeries::new(field, g, t, linear)
}

/// `h o f - lambda h^M`, which vanishes modulo `x^(T+1)` for a conjugacy.
pub fn functional_residual(sys: &DynamicalSystem, h: &TruncatedSeries) -> Result<TruncatedSeries> {
    let lhs = TruncatedSeries::compose(h, sys.map())?;
    let rhs = h.pow(sys.order())?.scale(sys.lambda());
    lhs.sub(&rhs)
}

/// Evaluates a Koenigs linearizer at `x` with `v(x) > v(lambda)`. The tail
/// bound uses `v(h_N) >= (1 - N) v(lambda)`.
pub fn eval_linearizer(h: &TruncatedSeries, vlambda: i64, x: &ValuedElement) -> Result<ValuedElement> {
    let vx = eval_point_valuation(x)?;
    if vx <= vlambda {
        return Err(Error::domain(format!("point valuation {vx} must exceed v(lambda) = {vlambda}")));
    }
    let tail = (!h.is_polynomial()).then(|| vlambda + (h.trunc() as i64 + 1) * (vx - vlambda));
    h.eval_with_tail(x, tail)
}
