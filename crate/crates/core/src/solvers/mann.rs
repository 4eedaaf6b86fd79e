//! `sum_i c_i M^(t_i) = c0` over `t in N^n`.
//!
//! Every solution either has no vanishing subsum (nondegenerate; finitely
//! many, found in a box given by the gap principle) or splits off a
//! vanishing subsum `S`, leaving a homogeneous problem on `S` and the
//! original right-hand side on the complement. Homogeneous nondegenerate
//! solutions are invariant under a common shift, so they become offset
//! families.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::family::SolutionFamily;
use crate::error::{Error, Result};

struct Solver<'a> {
    coeffs: &'a [BigInt],
    base: BigInt,
    nvars: usize,
    powers: Vec<BigInt>,
    memo: HashMap<(u64, bool), Vec<SolutionFamily>>,
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Largest `g` with `base^g <= bound` (0 when `bound < base`).
fn log_floor(base: &BigInt, bound: &BigInt) -> usize {
    let mut g = 0;
    let mut p = base.clone();
    while &p <= bound {
        g += 1;
        p *= base;
    }
    g
}

impl<'a> Solver<'a> {
    fn pow(&mut self, k: usize) -> BigInt {
        while self.powers.len() <= k {
            let next = self.powers.last().unwrap() * &self.base;
            self.powers.push(next);
        }
        self.powers[k].clone()
    }

    fn subset_sum_vanishes(&mut self, vars: &[usize], t: &[usize], proper_only: bool) -> bool {
        let k = vars.len();
        let full = (1u64 << k) - 1;
        let terms: Vec<BigInt> = (0..k).map(|i| &self.coeffs[vars[i]] * self.pow(t[i])).collect();
        (1..=full).any(|s| {
            if proper_only && s == full {
                return false;
            }
            (0..k).filter(|i| s >> i & 1 == 1).map(|i| &terms[i]).sum::<BigInt>().is_zero()
        })
    }

    /// Solutions with no vanishing subsum, `c0 != 0`.
    fn nondegenerate(&mut self, vars: &[usize], c0: &BigInt) -> Vec<SolutionFamily> {
        let total: BigInt = vars.iter().map(|&i| self.coeffs[i].abs()).sum();
        let gap = log_floor(&self.base, &(c0.abs() + &total));
        let lowest = log_floor(&self.base, &c0.abs());
        let top = lowest + (vars.len() - 1) * gap;
        let mut out = Vec::new();
        for t in boxed(vars.len(), top) {
            if *t.iter().min().unwrap() > lowest || !gaps_ok(&t, gap) {
                continue;
            }
            let s: BigInt = vars.iter().zip(&t).map(|(&i, &ti)| &self.coeffs[i] * self.pow(ti)).sum();
            if s != *c0 || self.subset_sum_vanishes(vars, &t, true) {
                continue;
            }
            let mut fam = SolutionFamily::everything(self.nvars);
            for (&i, &ti) in vars.iter().zip(&t) {
                fam.fixed.insert(i, ti as i64);
            }
            out.push(fam);
        }
        out
    }

    /// Homogeneous solutions with no vanishing proper subsum, as offset
    /// families normalized so that the smallest exponent is free.
    fn nondegenerate_homogeneous(&mut self, vars: &[usize]) -> Vec<SolutionFamily> {
        let total: BigInt = vars.iter().map(|&i| self.coeffs[i].abs()).sum();
        let gap = log_floor(&self.base, &total);
        let top = (vars.len() - 1) * gap;
        let mut out = Vec::new();
        for t in boxed(vars.len(), top) {
            if *t.iter().min().unwrap() != 0 || !gaps_ok(&t, gap) {
                continue;
            }
            let s: BigInt = vars.iter().zip(&t).map(|(&i, &ti)| &self.coeffs[i] * self.pow(ti)).sum();
            if !s.is_zero() || self.subset_sum_vanishes(vars, &t, true) {
                continue;
            }
            let root = vars[t.iter().position(|&x| x == 0).unwrap()];
            let mut fam = SolutionFamily::everything(self.nvars);
            for (&i, &ti) in vars.iter().zip(&t) {
                if i != root {
                    fam.offsets.insert((i, root), ti as i64);
                }
            }
            out.push(fam.canonical().unwrap());
        }
        out
    }

    fn products(a: &[SolutionFamily], b: &[SolutionFamily], out: &mut Vec<SolutionFamily>) {
        for x in a {
            for y in b {
                if let Some(f) = x.meet(y) {
                    out.push(f);
                }
            }
        }
    }

    fn homogeneous(&mut self, mask: u64) -> Vec<SolutionFamily> {
        if let Some(r) = self.memo.get(&(mask, true)) {
            return r.clone();
        }
        let vars = members(mask);
        let mut out = Vec::new();
        if vars.len() >= 2 {
            out = self.nondegenerate_homogeneous(&vars);
            let low = mask & mask.wrapping_neg();
            // split off the part containing the lowest variable
            let mut sub = (mask - 1) & mask;
            while sub != 0 {
                if sub & low != 0 {
                    let a = self.homogeneous(sub);
                    let b = self.homogeneous(mask & !sub);
                    Self::products(&a, &b, &mut out);
                }
                sub = (sub - 1) & mask;
            }
        }
        dedup(&mut out);
        self.memo.insert((mask, true), out.clone());
        out
    }

    fn inhomogeneous(&mut self, mask: u64, c0: &BigInt) -> Vec<SolutionFamily> {
        if c0.is_zero() {
            return self.homogeneous(mask);
        }
        if let Some(r) = self.memo.get(&(mask, false)) {
            return r.clone();
        }
        let vars = members(mask);
        let mut out = Vec::new();
        if !vars.is_empty() {
            out = self.nondegenerate(&vars, c0);
            let mut sub = (mask - 1) & mask;
            while sub != 0 {
                let a = self.homogeneous(sub);
                if !a.is_empty() {
                    let b = self.inhomogeneous(mask & !sub, c0);
                    Self::products(&a, &b, &mut out);
                }
                sub = (sub - 1) & mask;
            }
        }
        dedup(&mut out);
        self.memo.insert((mask, false), out.clone());
        out
    }
}

fn dedup(v: &mut Vec<SolutionFamily>) {
    let set: BTreeSet<SolutionFamily> = v.drain(..).collect();
    v.extend(set);
}

/// Sorted consecutive differences of `t` are at most `gap`.
fn gaps_ok(t: &[usize], gap: usize) -> bool {
    let mut s = t.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[1] - w[0] <= gap)
}

fn boxed(k: usize, top: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = Some(vec![0usize; k]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < top {
                next[i] += 1;
                for x in next.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// All solutions of `sum_i coeffs[i] * base^(t_i) = rhs` with `t in N^n`, as
/// a finite union of fixed/offset families. Variables with a zero
/// coefficient are unconstrained.
pub fn mann_solve(coeffs: &[BigInt], base: u64, rhs: &BigInt) -> Result<Vec<SolutionFamily>> {
    if base < 2 {
        return Err(Error::domain(format!("base must be at least 2, got {base}")));
    }
    if coeffs.len() > 20 {
        return Err(Error::domain("at most 20 variables are supported"));
    }
    let mask = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(0u64, |m, (i, _)| m | 1 << i);
    let mut solver = Solver {
        coeffs,
        base: BigInt::from(base),
        nvars: coeffs.len(),
        powers: vec![BigInt::from(1)],
        memo: HashMap::new(),
    };
    let mut out = if mask == 0 {
        if rhs.is_zero() {
            vec![SolutionFamily::everything(coeffs.len())]
        } else {
            vec![]
        }
    } else {
        solver.inhomogeneous(mask, rhs)
    };
    dedup(&mut out);
    Ok(out)
}
