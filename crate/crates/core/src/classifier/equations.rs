//! Valuation equations forced by a zero of `G` on the orbit.
//!
//! At a zero, the minimum of `v(g_I) + sum_i I_i v(f^{t_i}(a))` over all
//! terms is attained twice, by two dominant exponents `I != J`. With the
//! closed form for orbit valuations this becomes a linear equation in `t`
//! (attracting case) or an exponential one in `M^t` (superattracting case).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dynamics::DynamicalSystem;
use crate::error::Result;
use crate::series::{MultiIndex, MultiPoly};
use crate::solvers::{dominant_monomials, NewtonPoint};

/// `sum_i coeffs[i] * t_i = rhs` when `base` is `None`, otherwise
/// `sum_i coeffs[i] * base^(t_i) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEquation {
    pub i: MultiIndex,
    pub j: MultiIndex,
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub base: Option<u64>,
}

impl PairEquation {
    pub fn holds(&self, t: &[u64]) -> bool {
        let lhs: BigInt = match self.base {
            None => self.coeffs.iter().zip(t).map(|(c, &x)| c * BigInt::from(x)).sum(),
            Some(m) => self
                .coeffs
                .iter()
                .zip(t)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, &x)| c * num_traits::pow(BigInt::from(m), x as usize))
                .sum(),
        };
        lhs == self.rhs
    }
}

/// Equation for the pair `(p, q)` of Newton points with `v(a) = va`.
pub fn pair_equation(sys: &DynamicalSystem, va: i64, p: &NewtonPoint, q: &NewtonPoint) -> PairEquation {
    let (i, j) = (&p.exponent, &q.exponent);
    let vl = BigInt::from(sys.vlambda());
    let va = BigInt::from(va);
    let diff: Vec<BigInt> = i.0.iter().zip(&j.0).map(|(&x, &y)| BigInt::from(x as i64 - y as i64)).collect();
    let dv = BigInt::from(q.coeff_valuation - p.coeff_valuation);
    let ddeg = BigInt::from(j.degree() as i64 - i.degree() as i64);
    let m = sys.order();
    if m == 1 {
        PairEquation {
            i: i.clone(),
            j: j.clone(),
            coeffs: diff.iter().map(|d| d * &vl).collect(),
            rhs: dv + ddeg * va,
            base: None,
        }
    } else {
        let m1 = BigInt::from(m - 1);
        let k = &m1 * va + &vl;
        PairEquation {
            i: i.clone(),
            j: j.clone(),
            coeffs: diff.iter().map(|d| d * &k).collect(),
            rhs: m1 * dv - ddeg * vl,
            base: Some(m as u64),
        }
    }
}

/// One equation per unordered pair of dominant exponents, in graded order.
pub fn pair_equations(sys: &DynamicalSystem, va: i64, g: &MultiPoly) -> Result<Vec<PairEquation>> {
    let set = dominant_monomials(g)?;
    let pts = &set.points;
    let mut out = Vec::new();
    for x in 0..pts.len() {
        for y in x + 1..pts.len() {
            out.push(pair_equation(sys, va, &pts[x], &pts[y]));
        }
    }
    Ok(out)
}

/// A pair of dominant exponents whose valuation equation `t` satisfies, if
/// any. Every zero of `G` on the orbit of a normalized basepoint has one.
pub fn valuation_witness(sys: &DynamicalSystem, va: i64, g: &MultiPoly, t: &[u64]) -> Result<Option<(MultiIndex, MultiIndex)>> {
    Ok(pair_equations(sys, va, g)?.into_iter().find(|e| e.holds(t)).map(|e| (e.i, e.j)))
}
