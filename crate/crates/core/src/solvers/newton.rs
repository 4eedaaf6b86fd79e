//! Valuation-dominant monomials of a polynomial.
//!
//! A term `g_I x^I` is dominant when some weight `w` in `N^n` makes
//! `v(g_I) + <I, w>` minimal among all terms. Plugging in a point `b` with
//! `v(b) = w` then makes `|g_I b^I|` maximal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lp::{self, Lp, LpOutcome};
use crate::error::{Error, Result};
use crate::series::{MultiIndex, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoint {
    pub exponent: MultiIndex,
    pub coeff_valuation: i64,
}

/// The dominant set `F` with certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantSet {
    /// Dominant points in graded-lex order of exponent.
    pub points: Vec<NewtonPoint>,
    /// For each entry of `points`, an integer weight at which it is an argmin.
    pub weights: Vec<Vec<BigInt>>,
    /// Vertices of the lower hull: points that are the unique argmin for the
    /// attached rational weight.
    pub vertices: Vec<(MultiIndex, Vec<BigRational>)>,
}

impl DominantSet {
    pub fn exponents(&self) -> Vec<MultiIndex> {
        self.points.iter().map(|p| p.exponent.clone()).collect()
    }

    pub fn contains(&self, i: &MultiIndex) -> bool {
        self.points.iter().any(|p| &p.exponent == i)
    }
}

/// `(I, v(g_I))` for every term whose coefficient is known to be nonzero.
pub fn newton_points(g: &MultiPoly) -> Vec<NewtonPoint> {
    g.significant_terms()
        .map(|(i, c)| NewtonPoint { exponent: i.clone(), coeff_valuation: c.valuation().finite().unwrap() })
        .collect()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `v(g_I) + <I, w>` at an integer weight.
pub fn weighted_value(p: &NewtonPoint, w: &[BigInt]) -> BigInt {
    p.exponent.0.iter().zip(w).map(|(&e, x)| BigInt::from(e) * x).sum::<BigInt>() + BigInt::from(p.coeff_valuation)
}

/// Indices of `points` attaining the minimum of `v(g_I) + <I, w>`.
pub fn argmin(points: &[NewtonPoint], w: &[BigInt]) -> Vec<usize> {
    let vals: Vec<BigInt> = points.iter().map(|p| weighted_value(p, w)).collect();
    let Some(best) = vals.iter().min() else { return vec![] };
    (0..points.len()).filter(|&i| vals[i] == *best).collect()
}

/// Box for the integer search; any nonempty region of the form used here
/// contains an integer point with coordinates below this bound.
fn search_bound(points: &[NewtonPoint], n: usize) -> BigInt {
    let max_exp = points.iter().flat_map(|p| p.exponent.0.iter()).copied().max().unwrap_or(0) as i64;
    let max_val = points.iter().map(|p| p.coeff_valuation.abs()).max().unwrap_or(0);
    let delta = BigInt::from(max_exp.max(max_val) + 1);
    BigInt::from(n as i64 + 1) * num_traits::pow(delta * BigInt::from(n as i64), n) + BigInt::one()
}

/// Constraints `<I - J, w> <= v(g_J) - v(g_I)` for all `J != I`.
fn region(points: &[NewtonPoint], i: usize, n: usize) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let pi = &points[i];
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, pj) in points.iter().enumerate() {
        if j == i {
            continue;
        }
        a.push((0..n).map(|k| q(pi.exponent.0[k] as i64 - pj.exponent.0[k] as i64)).collect());
        b.push(q(pj.coeff_valuation - pi.coeff_valuation));
    }
    (a, b)
}

/// Rational weight making point `i` the unique argmin, if any.
fn vertex_certificate(points: &[NewtonPoint], i: usize, n: usize) -> Option<Vec<BigRational>> {
    let (mut a, b) = region(points, i, n);
    // maximize s subject to <I - J, w> + s <= v_J - v_I, s <= 1
    for row in a.iter_mut() {
        row.push(BigRational::one());
    }
    let mut cap = vec![BigRational::zero(); n + 1];
    cap[n] = BigRational::one();
    a.push(cap);
    let mut b = b;
    b.push(BigRational::one());
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    match lp::solve(&Lp { a, b, c }) {
        LpOutcome::Optimal { x, value } if value.is_positive() => Some(x[..n].to_vec()),
        _ => None,
    }
}

/// The dominant set of `g`, computed exactly by integer feasibility of each
/// term's weight region.
pub fn dominant_monomials(g: &MultiPoly) -> Result<DominantSet> {
    let mut points = newton_points(g);
    if points.is_empty() {
        return Err(Error::EmptyInput("dominant monomials of the zero polynomial".into()));
    }
    points.sort_by(|a, b| a.exponent.cmp(&b.exponent));
    let n = g.nvars();
    let bound = search_bound(&points, n);
    let mut out = DominantSet { points: vec![], weights: vec![], vertices: vec![] };
    for i in 0..points.len() {
        let (a, b) = region(&points, i, n);
        if let Some(w) = lp::integer_point(&a, &b, n, &bound) {
            debug_assert!(argmin(&points, &w).contains(&i));
            if let Some(cert) = vertex_certificate(&points, i, n) {
                out.vertices.push((points[i].exponent.clone(), cert));
            }
            out.points.push(points[i].clone());
            out.weights.push(w);
        }
    }
    Ok(out)
}
