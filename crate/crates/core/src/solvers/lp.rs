//! Exact linear programming over the rationals.
//!
//! Dense two-phase tableau simplex with Bland's rule, plus a small
//! branch-and-bound for integer feasibility. Problems here have a handful of
//! variables and constraints, so clarity wins over speed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// `maximize c.x subject to A x <= b, x >= 0`.
#[derive(Clone, Debug)]
pub struct Lp {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            let (src, dst) = if i < r {
                let (lo, hi) = self.rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = self.rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = &*d - &(&f * s);
                }
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &self.rhs[r]);
        }
        self.basis[r] = col;
    }

    /// Maximizes `obj . x` over the current feasible basis, restricted to
    /// columns `< ncols`. Returns `false` when unbounded.
    fn optimize(&mut self, obj: &[Q], ncols: usize) -> bool {
        loop {
            // reduced cost of column j: obj_j - sum_i obj_{basis_i} a_ij
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !obj[bi].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &obj[bi] * &self.rows[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(col) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

pub fn solve(lp: &Lp) -> LpOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    // columns: x (n), slack (m), artificial (m)
    let width = n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Q::zero(); width];
        let neg = lp.b[i].is_negative();
        let sign = if neg { -Q::one() } else { Q::one() };
        for j in 0..n {
            row[j] = &sign * &lp.a[i][j];
        }
        row[n + i] = sign.clone();
        if neg {
            row[n + m + i] = Q::one();
            basis.push(n + m + i);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
        rhs.push(&sign * &lp.b[i]);
    }
    let mut t = Tableau { rows, rhs, basis };

    let mut phase1 = vec![Q::zero(); width];
    for i in 0..m {
        if lp.b[i].is_negative() {
            phase1[n + m + i] = -Q::one();
        }
    }
    t.optimize(&phase1, width);
    let infeasibility: Q = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bi, _)| bi >= n + m)
        .map(|(_, v)| v.clone())
        .fold(Q::zero(), |acc, v| acc + v);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining (zero-level) artificials out of the basis
    for r in 0..m {
        if t.basis[r] >= n + m {
            if let Some(col) = (0..n + m).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            }
        }
    }

    let mut obj = vec![Q::zero(); width];
    obj[..n].clone_from_slice(&lp.c);
    if !t.optimize(&obj, n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs[i].clone();
        }
    }
    let value = x.iter().zip(&lp.c).fold(Q::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { x, value }
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Finds an integer point of `{x >= 0 : A x <= b, x_j <= bound}` with small
/// coordinate sum, by depth-first branch and bound.
pub fn integer_point(a: &[Vec<Q>], b: &[Q], n: usize, bound: &BigInt) -> Option<Vec<BigInt>> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    for j in 0..n {
        let mut row = vec![Q::zero(); n];
        row[j] = Q::one();
        a.push(row);
        b.push(Q::from_integer(bound.clone()));
    }
    let c = vec![q(-1); n];
    branch(&mut a, &mut b, &c)
}

fn branch(a: &mut Vec<Vec<Q>>, b: &mut Vec<Q>, c: &[Q]) -> Option<Vec<BigInt>> {
    let n = c.len();
    let lp = Lp { a: a.clone(), b: b.clone(), c: c.to_vec() };
    let LpOutcome::Optimal { x, .. } = solve(&lp) else { return None };
    let Some(j) = x.iter().position(|v| !v.is_integer()) else {
        return Some(x.iter().map(|v| v.to_integer()).collect());
    };
    let fl = x[j].numer().div_floor(x[j].denom());
    let mut row = vec![Q::zero(); n];
    row[j] = Q::one();
    a.push(row.clone());
    b.push(Q::from_integer(fl.clone()));
    let down = branch(a, b, c);
    a.pop();
    b.pop();
    if down.is_some() {
        return down;
    }
    row[j] = -Q::one();
    a.push(row);
    b.push(-Q::from_integer(fl + 1));
    let up = branch(a, b, c);
    a.pop();
    b.pop();
    up
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let lp = Lp { a: vec![qs(&[1, 1]), qs(&[1, 3]), qs(&[1, 0])], b: qs(&[4, 6, 3]), c: qs(&[3, 2]) };
        assert_eq!(solve(&lp), LpOutcome::Optimal { x: qs(&[3, 1]), value: q(11) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = Lp { a: vec![qs(&[1]), qs(&[-1])], b: qs(&[1, -2]), c: qs(&[1]) };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let lp = Lp { a: vec![qs(&[-1, 1])], b: qs(&[1]), c: qs(&[1, 0]) };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x + y >= 2 written as -x - y <= -2; min x + 2y
        let lp = Lp { a: vec![qs(&[-1, -1])], b: qs(&[-2]), c: qs(&[-1, -2]) };
        assert_eq!(solve(&lp), LpOutcome::Optimal { x: qs(&[2, 0]), value: q(-2) });
    }

    #[test]
    fn integer_point_skips_fractional_region() {
        // 2x = 1 has no integer point; 2x >= 1, 2x <= 3 has x = 1
        let a = vec![qs(&[2]), qs(&[-2])];
        assert_eq!(integer_point(&a, &qs(&[1, -1]), 1, &BigInt::from(10)), None);
        assert_eq!(integer_point(&a, &qs(&[3, -1]), 1, &BigInt::from(10)), Some(vec![BigInt::from(1)]));
    }
}
