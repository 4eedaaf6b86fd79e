use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::lattice::{dot, IVec};

/// Linear constraints `A t = r` on exponent tuples, with an optional
/// witness point in `N^n` and a basis of the solution lattice of `A t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeConstraint {
    pub matrix: Vec<IVec>,
    pub rhs: IVec,
    pub witness: Option<IVec>,
    pub kernel: Vec<IVec>,
}

/// A set of exponent tuples `t in N^n` cut out by fixed values
/// `t_i = A_i`, offsets `t_j = t_k + B` and an optional lattice constraint.
///
/// Variables are 0-based here; reports shift to 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionFamily {
    pub nvars: usize,
    pub fixed: BTreeMap<usize, i64>,
    /// `(j, k) -> B` meaning `t_j = t_k + B`.
    pub offsets: BTreeMap<(usize, usize), i64>,
    pub lattice: Option<LatticeConstraint>,
}

impl SolutionFamily {
    /// All of `N^n`.
    pub fn everything(nvars: usize) -> Self {
        SolutionFamily { nvars, fixed: BTreeMap::new(), offsets: BTreeMap::new(), lattice: None }
    }

    pub fn point(t: &[i64]) -> Self {
        let mut f = Self::everything(t.len());
        for (i, &v) in t.iter().enumerate() {
            f.fixed.insert(i, v);
        }
        f
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        if t.len() != self.nvars || t.iter().any(|&x| x < 0) {
            return false;
        }
        if self.fixed.iter().any(|(&i, &v)| t[i] != v) {
            return false;
        }
        if self.offsets.iter().any(|(&(j, k), &b)| t[j] != t[k] + b) {
            return false;
        }
        if let Some(l) = &self.lattice {
            let tb: IVec = t.iter().map(|&x| BigInt::from(x)).collect();
            if l.matrix.iter().zip(&l.rhs).any(|(row, r)| dot(row, &tb) != *r) {
                return false;
            }
        }
        true
    }

    /// Members inside `[0, bound]^n`, in lexicographic order.
    pub fn points_in_box(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut t = vec![0i64; self.nvars];
        loop {
            if self.contains(&t) {
                out.push(t.clone());
            }
            let mut k = self.nvars;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if t[k] < bound {
                    t[k] += 1;
                    for x in t.iter_mut().skip(k + 1) {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Variables not pinned by a fixed value or an offset to another variable.
    pub fn free_roots(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|i| !self.fixed.contains_key(i) && !self.offsets.keys().any(|&(j, _)| j == *i))
            .collect()
    }

    /// Rewrites fixed/offset constraints in canonical form: each connected
    /// group of offset-linked variables either becomes fixed values or is
    /// expressed relative to its least member (smallest potential, then
    /// smallest index) with nonnegative offsets. Returns `None` when the
    /// constraints are contradictory or force a negative exponent.
    pub fn canonical(&self) -> Option<Self> {
        let n = self.nvars;
        // union-find with potentials: t_i = t_root + pot_i
        let mut parent: Vec<usize> = (0..n).collect();
        let mut pot = vec![0i64; n];
        fn find(parent: &mut [usize], pot: &mut [i64], i: usize) -> (usize, i64) {
            if parent[i] == i {
                return (i, 0);
            }
            let (r, p) = find(parent, pot, parent[i]);
            parent[i] = r;
            pot[i] += p;
            (r, pot[i])
        }
        for (&(j, k), &b) in &self.offsets {
            let (rj, pj) = find(&mut parent, &mut pot, j);
            let (rk, pk) = find(&mut parent, &mut pot, k);
            if rj == rk {
                if pj != pk + b {
                    return None;
                }
                continue;
            }
            // t_j = t_k + b: t_rj + pj = t_rk + pk + b
            parent[rj] = rk;
            pot[rj] = pk + b - pj;
        }
        let mut groups: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for i in 0..n {
            let (r, p) = find(&mut parent, &mut pot, i);
            groups.entry(r).or_default().push((i, p));
        }
        let mut out = Self::everything(n);
        out.lattice = self.lattice.clone();
        for members in groups.values() {
            let mut root_value: Option<i64> = None;
            for (i, p) in members {
                if let Some(&v) = self.fixed.get(i) {
                    let rv = v - p;
                    if root_value.is_some_and(|x| x != rv) {
                        return None;
                    }
                    root_value = Some(rv);
                }
            }
            match root_value {
                Some(rv) => {
                    for (i, p) in members {
                        let v = rv + p;
                        if v < 0 {
                            return None;
                        }
                        out.fixed.insert(*i, v);
                    }
                }
                None => {
                    let &(least, lp) = members.iter().min_by_key(|(i, p)| (*p, *i)).unwrap();
                    for (i, p) in members {
                        if *i != least {
                            out.offsets.insert((*i, least), p - lp);
                        }
                    }
                }
            }
        }
        Some(out)
    }

    /// Intersection of constraint sets (no lattice merging).
    pub fn meet(&self, other: &Self) -> Option<Self> {
        debug_assert!(self.lattice.is_none() && other.lattice.is_none());
        let mut f = self.clone();
        for (&i, &v) in &other.fixed {
            if f.fixed.insert(i, v).is_some_and(|old| old != v) {
                return None;
            }
        }
        for (&k, &b) in &other.offsets {
            if f.offsets.insert(k, b).is_some_and(|old| old != b) {
                return None;
            }
        }
        f.canonical()
    }

    /// Checks that the family solves `sum c_i M^(t_i) = c0` identically:
    /// fixed variables account for `c0` and every free group cancels.
    pub fn solves_mann(&self, coeffs: &[BigInt], base: u64, rhs: &BigInt) -> bool {
        let Some(canon) = self.canonical() else { return false };
        let m = BigInt::from(base);
        let mut fixed_sum = BigInt::zero();
        let mut groups: BTreeMap<usize, BigInt> = BTreeMap::new();
        for i in 0..self.nvars {
            if coeffs[i].is_zero() {
                continue;
            }
            if let Some(&v) = canon.fixed.get(&i) {
                fixed_sum += &coeffs[i] * num_traits::pow(m.clone(), v as usize);
            } else {
                let (root, off) = canon.offsets.iter().find(|((j, _), _)| *j == i).map_or((i, 0), |(&(_, k), &b)| (k, b));
                *groups.entry(root).or_insert_with(BigInt::zero) += &coeffs[i] * num_traits::pow(m.clone(), off as usize);
            }
        }
        fixed_sum == *rhs && groups.values().all(|s| s.is_zero())
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, v) in &self.fixed {
            parts.push(format!("t{} = {v}", i + 1));
        }
        for ((j, k), b) in &self.offsets {
            parts.push(match b.cmp(&0) {
                std::cmp::Ordering::Equal => format!("t{} = t{}", j + 1, k + 1),
                std::cmp::Ordering::Greater => format!("t{} = t{} + {b}", j + 1, k + 1),
                std::cmp::Ordering::Less => format!("t{} = t{} - {}", j + 1, k + 1, -b),
            });
        }
        if let Some(l) = &self.lattice {
            for (row, r) in l.matrix.iter().zip(&l.rhs) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                parts.push(format!("[{}] . t = {r}", cells.join(" ")));
            }
        }
        if parts.is_empty() {
            write!(f, "all t")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedJson {
    pub var: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffsetJson {
    pub var: usize,
    pub base: usize,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    pub kernel: Vec<Vec<i64>>,
}

/// JSON form of a family; variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub nvars: usize,
    pub fixed: Vec<FixedJson>,
    pub offsets: Vec<OffsetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeJson>,
}

fn small(v: &BigInt) -> i64 {
    i64::try_from(v).expect("lattice entry fits in 64 bits")
}

fn small_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(small).collect()
}

fn big_vec(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl SolutionFamily {
    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            nvars: self.nvars,
            fixed: self.fixed.iter().map(|(&i, &v)| FixedJson { var: i + 1, value: v }).collect(),
            offsets: self.offsets.iter().map(|(&(j, k), &b)| OffsetJson { var: j + 1, base: k + 1, shift: b }).collect(),
            lattice: self.lattice.as_ref().map(|l| LatticeJson {
                matrix: l.matrix.iter().map(|r| small_vec(r)).collect(),
                rhs: small_vec(&l.rhs),
                witness: l.witness.as_ref().map(|w| small_vec(w)),
                kernel: l.kernel.iter().map(|r| small_vec(r)).collect(),
            }),
        }
    }

    pub fn from_json(j: &FamilyJson) -> crate::Result<Self> {
        let bad = |msg: String| crate::Error::Parse(msg);
        let idx = |i: usize| {
            if i == 0 || i > j.nvars {
                Err(bad(format!("variable index {i} out of range 1..={}", j.nvars)))
            } else {
                Ok(i - 1)
            }
        };
        let mut f = Self::everything(j.nvars);
        for x in &j.fixed {
            f.fixed.insert(idx(x.var)?, x.value);
        }
        for o in &j.offsets {
            f.offsets.insert((idx(o.var)?, idx(o.base)?), o.shift);
        }
        if let Some(l) = &j.lattice {
            if l.matrix.len() != l.rhs.len() || l.matrix.iter().chain(&l.kernel).any(|r| r.len() != j.nvars) {
                return Err(bad("lattice dimensions do not match".into()));
            }
            f.lattice = Some(LatticeConstraint {
                matrix: l.matrix.iter().map(|r| big_vec(r)).collect(),
                rhs: big_vec(&l.rhs),
                witness: l.witness.as_ref().map(|w| big_vec(w)),
                kernel: l.kernel.iter().map(|r| big_vec(r)).collect(),
            });
        }
        Ok(f)
    }
}
