//! Exact Diophantine layer: dominant monomials, linear equations over `N^n`,
//! exponential equations `sum c_i M^(t_i) = c0`, and lattice saturation.

mod family;
pub mod lattice;
pub mod lp;
mod mann;
mod newton;

pub use family::{FamilyJson, FixedJson, LatticeConstraint, LatticeJson, OffsetJson, SolutionFamily};
pub use mann::mann_solve;
pub use newton::{argmin, dominant_monomials, newton_points, weighted_value, DominantSet, NewtonPoint};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use lattice::{dot, gcd_all, integer_kernel, particular_solution, saturate_rows, IVec};

/// Work cap for the witness search in [`linear_solve`].
const WITNESS_SEARCH_LIMIT: u64 = 2_000_000;

/// `{t in N^n : d . t = e}`. `None` when no integer solution exists.
///
/// The family carries the kernel basis of `d . t = 0` and, when the set has
/// a point in `N^n`, the witness of least coordinate sum (ties broken
/// lexicographically). If the least point is out of reach of the search
/// budget, some valid point is returned instead.
pub fn linear_solve(d: &[BigInt], e: &BigInt) -> Option<SolutionFamily> {
    let n = d.len();
    let g = gcd_all(d);
    if g.is_zero() {
        return e.is_zero().then(|| SolutionFamily::everything(n));
    }
    if !e.is_multiple_of(&g) {
        return None;
    }
    let matrix = vec![d.to_vec()];
    let kernel = integer_kernel(&matrix, n);
    let witness = witness(d, e);
    let mut fam = SolutionFamily::everything(n);
    fam.lattice = Some(LatticeConstraint { matrix, rhs: vec![e.clone()], witness, kernel });
    Some(fam)
}

fn witness(d: &[BigInt], e: &BigInt) -> Option<IVec> {
    let n = d.len();
    let active: Vec<usize> = (0..n).filter(|&i| !d[i].is_zero()).collect();
    let pos = active.iter().any(|&i| d[i].is_positive());
    let neg = active.iter().any(|&i| d[i].is_negative());
    let zero = vec![BigInt::zero(); n];
    if e.is_zero() {
        return Some(zero);
    }
    let reach = if pos && neg {
        let fallback = mixed_sign_point(d, e, &active)?;
        let s: BigInt = fallback.iter().sum();
        Some((s, fallback))
    } else {
        if pos != e.is_positive() {
            return None;
        }
        let min = active.iter().map(|&i| d[i].abs()).min().unwrap();
        Some((e.abs() / min, zero.clone()))
    }?;
    let (max_sum, fallback) = reach;
    let max_sum: u64 = u64::try_from(&max_sum).unwrap_or(u64::MAX);
    let mut budget = WITNESS_SEARCH_LIMIT;
    let k = active.len();
    for s in 0..=max_sum {
        let mut found = None;
        let mut exhausted = false;
        compositions(k, s, &mut |c| {
            if budget == 0 {
                exhausted = true;
                return false;
            }
            budget -= 1;
            let total: BigInt = active.iter().zip(c).map(|(&i, &x)| &d[i] * BigInt::from(x)).sum();
            if total == *e {
                let mut t = zero.clone();
                for (&i, &x) in active.iter().zip(c) {
                    t[i] = BigInt::from(x);
                }
                found = Some(t);
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
        if exhausted {
            return (fallback != zero).then_some(fallback);
        }
    }
    (fallback != zero && dot(d, &fallback) == *e).then_some(fallback)
}

/// A point of `N^n` on `d . t = e` when `d` has entries of both signs.
fn mixed_sign_point(d: &[BigInt], e: &BigInt, active: &[usize]) -> Option<IVec> {
    let n = d.len();
    let mut x0 = particular_solution(&[d.to_vec()], std::slice::from_ref(e), n)?;
    for i in 0..n {
        if d[i].is_zero() {
            x0[i] = BigInt::zero();
        }
    }
    let p = *active.iter().find(|&&i| d[i].is_positive()).unwrap();
    let q = *active.iter().find(|&&i| d[i].is_negative()).unwrap();
    // strictly positive kernel vector on the active coordinates
    let mut u = vec![BigInt::zero(); n];
    for &i in active {
        let j = if d[i].is_positive() { q } else { p };
        u[i] += d[j].abs();
        u[j] += d[i].abs();
    }
    debug_assert!(dot(d, &u).is_zero());
    let mut k = BigInt::zero();
    for &i in active {
        if x0[i].is_negative() {
            let need = (-&x0[i]).div_ceil(&u[i]);
            if need > k {
                k = need;
            }
        }
    }
    Some(x0.iter().zip(&u).map(|(x, ui)| x + &k * ui).collect())
}

/// Calls `f` on every composition of `s` into `k` parts in lexicographic
/// order, stopping early when `f` returns false.
fn compositions(k: usize, s: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    fn rec(buf: &mut Vec<u64>, k: usize, s: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if buf.len() + 1 == k {
            buf.push(s);
            let go = f(buf);
            buf.pop();
            return go;
        }
        for x in 0..=s {
            buf.push(x);
            let go = rec(buf, k, s - x, f);
            buf.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k == 0 {
        return s != 0 || f(&[]);
    }
    rec(&mut Vec::with_capacity(k), k, s, f)
}

/// Rewrites a lattice family with a saturated constraint matrix. The result
/// has the same points; the list is empty when the constraints have no
/// integer solution.
pub fn saturate(family: &SolutionFamily) -> Vec<SolutionFamily> {
    let Some(l) = &family.lattice else { return vec![family.clone()] };
    let n = family.nvars;
    let Some(t0) = particular_solution(&l.matrix, &l.rhs, n) else { return vec![] };
    let matrix = saturate_rows(&l.matrix, n);
    let rhs = matrix.iter().map(|row| dot(row, &t0)).collect();
    let mut out = family.clone();
    let mut rest: (Vec<IVec>, IVec) = (vec![], vec![]);
    for (row, r) in matrix.into_iter().zip::<IVec>(rhs) {
        if !absorb_row(&mut out, &row, &r) {
            rest.0.push(row);
            rest.1.push(r);
        }
    }
    out.lattice = (!rest.0.is_empty()).then(|| LatticeConstraint {
        matrix: rest.0,
        rhs: rest.1,
        witness: l.witness.clone(),
        kernel: integer_kernel(&l.matrix, n),
    });
    match out.canonical() {
        Some(c) => vec![c],
        None => vec![],
    }
}

/// Turns `t_i = r` and `t_j - t_k = r` rows into fixed values and offsets.
fn absorb_row(fam: &mut SolutionFamily, row: &[BigInt], r: &BigInt) -> bool {
    let support: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
    let Ok(r) = i64::try_from(r) else { return false };
    let one = BigInt::from(1);
    match support[..] {
        [i] if row[i] == one => {
            fam.fixed.insert(i, r);
            true
        }
        [a, b] if row[a].abs() == one && row[b] == -&row[a] => {
            let (j, k, shift) = if row[a] == one { (a, b, r) } else { (b, a, r) };
            fam.offsets.insert((j, k), shift);
            true
        }
        _ => false,
    }
}

/// True when the row lattice of `rows` is saturated in `Z^n`.
pub fn is_saturated(rows: &[IVec], n: usize) -> bool {
    let sat = saturate_rows(rows, n);
    lattice::hermite(rows, n) == sat
}
