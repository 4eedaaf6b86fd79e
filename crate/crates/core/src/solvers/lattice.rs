//! Integer row reduction: kernels, particular solutions, Hermite normal
//! form and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IVec = Vec<BigInt>;

/// Row echelon form of `rows` by unimodular row operations; `transform`
/// records the operations (`echelon = transform * rows`).
struct Echelon {
    rows: Vec<IVec>,
    transform: Vec<IVec>,
    rank: usize,
}

fn echelon(input: &[IVec], ncols: usize) -> Echelon {
    let nrows = input.len();
    let mut rows: Vec<IVec> = input.to_vec();
    let mut transform: Vec<IVec> = (0..nrows)
        .map(|i| (0..nrows).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            // row with the smallest nonzero entry in column c
            let pivot = (r..nrows).filter(|&i| !rows[i][c].is_zero()).min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            transform.swap(r, p);
            let mut done = true;
            for i in r + 1..nrows {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_scaled(&mut rows, i, r, &q);
                sub_scaled(&mut transform, i, r, &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < nrows && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                negate(&mut rows[r]);
                negate(&mut transform[r]);
            }
            r += 1;
        }
    }
    Echelon { rows, transform, rank: r }
}

fn sub_scaled(m: &mut [IVec], i: usize, r: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[r].clone();
    for (d, s) in m[i].iter_mut().zip(src.iter()) {
        *d -= q * s;
    }
}

fn negate(v: &mut IVec) {
    for x in v.iter_mut() {
        *x = -&*x;
    }
}

fn transpose(a: &[IVec], ncols: usize) -> Vec<IVec> {
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A basis of `{t in Z^n : A t = 0}`, in Hermite normal form.
pub fn integer_kernel(a: &[IVec], n: usize) -> Vec<IVec> {
    if a.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    }
    let e = echelon(&transpose(a, n), a.len());
    hermite(&e.transform[e.rank..], n)
}

/// Some `t in Z^n` with `A t = r`, if one exists.
pub fn particular_solution(a: &[IVec], r: &[BigInt], n: usize) -> Option<IVec> {
    if a.is_empty() {
        return Some(vec![BigInt::zero(); n]);
    }
    let m = a.len();
    // E = V A^T is echelon; A t = r with t = V^T y becomes E^T y = r.
    let e = echelon(&transpose(a, n), m);
    let mut y = vec![BigInt::zero(); n];
    let mut col = 0;
    let mut residual: IVec = r.to_vec();
    for i in 0..e.rank {
        while e.rows[i][col].is_zero() {
            if !residual[col].is_zero() {
                return None;
            }
            col += 1;
        }
        let (q, rem) = residual[col].div_rem(&e.rows[i][col]);
        if !rem.is_zero() {
            return None;
        }
        for (k, res) in residual.iter_mut().enumerate() {
            *res -= &q * &e.rows[i][k];
        }
        y[i] = q;
        col += 1;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let t: IVec = (0..n).map(|j| (0..n).map(|i| &y[i] * &e.transform[i][j]).sum()).collect();
    debug_assert!(a.iter().zip(r).all(|(row, ri)| dot(row, &t) == *ri));
    Some(t)
}

/// Row Hermite normal form of the lattice spanned by `rows`: zero rows
/// dropped, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite(rows: &[IVec], n: usize) -> Vec<IVec> {
    let e = echelon(rows, n);
    let mut h: Vec<IVec> = e.rows[..e.rank].to_vec();
    for i in 0..h.len() {
        let c = h[i].iter().position(|x| !x.is_zero()).unwrap();
        for k in 0..i {
            let q = h[k][c].div_floor(&h[i][c]);
            sub_scaled(&mut h, k, i, &q);
        }
    }
    h
}

/// Rows spanning the saturation of the row lattice of `a`: the integer
/// vectors orthogonal to its kernel.
pub fn saturate_rows(a: &[IVec], n: usize) -> Vec<IVec> {
    let k = integer_kernel(a, n);
    integer_kernel(&k, n)
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_single_equation() {
        assert_eq!(integer_kernel(&[iv(&[1, -2])], 2), vec![iv(&[2, 1])]);
        let k = integer_kernel(&[iv(&[2, 4, 6])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(&iv(&[2, 4, 6]), v), BigInt::zero());
        }
    }

    #[test]
    fn particular_solutions() {
        let t = particular_solution(&[iv(&[1, -2])], &iv(&[2]), 2).unwrap();
        assert_eq!(dot(&iv(&[1, -2]), &t), BigInt::from(2));
        assert_eq!(particular_solution(&[iv(&[2])], &iv(&[3]), 1), None);
        assert_eq!(particular_solution(&[iv(&[2, 4])], &iv(&[3]), 2), None);
        let a = [iv(&[1, 1, 0]), iv(&[0, 1, 1])];
        let t = particular_solution(&a, &iv(&[3, 5]), 3).unwrap();
        assert_eq!((dot(&a[0], &t), dot(&a[1], &t)), (BigInt::from(3), BigInt::from(5)));
        assert_eq!(particular_solution(&[iv(&[1, 1]), iv(&[2, 2])], &iv(&[1, 3]), 2), None);
    }

    #[test]
    fn saturation_divides_common_factor() {
        assert_eq!(saturate_rows(&[iv(&[2, -2])], 2), vec![iv(&[1, -1])]);
        assert_eq!(saturate_rows(&[iv(&[1, -2])], 2), vec![iv(&[1, -2])]);
        // rows (1,1,0) and (1,-1,0) span an index-2 sublattice of Z^2 x 0
        let s = saturate_rows(&[iv(&[1, 1, 0]), iv(&[1, -1, 0])], 3);
        assert_eq!(s, vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])]);
    }
}
