use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::solvers::lattice::{dot, IVec};

/// Zero set of equations `x_i = f^m(a)` and `x_j = f^l(x_k)`, read in
/// exponent space as `t_i = m` and `t_j = t_k + l`. Variables are 0-based.
///
/// `lower_bounds` restricts the free exponents (`t_i >= lower_bounds[i]`);
/// it is nonzero only when the basepoint needed normalization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IterationalVariety {
    pub nvars: usize,
    pub fixed: BTreeMap<usize, u64>,
    /// `(j, k) -> l` meaning `x_j = f^l(x_k)`.
    pub links: BTreeMap<(usize, usize), u64>,
    pub lower_bounds: Vec<u64>,
    pub consistent: bool,
}

impl IterationalVariety {
    pub fn contains(&self, t: &[u64]) -> bool {
        self.consistent
            && t.len() == self.nvars
            && t.iter().zip(&self.lower_bounds).all(|(x, b)| x >= b)
            && self.fixed.iter().all(|(&i, &m)| t[i] == m)
            && self.links.iter().all(|(&(j, k), &l)| t[j] == t[k] + l)
    }

    /// Exponents left free by the defining equations.
    pub fn free_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|i| !self.fixed.contains_key(i) && !self.links.keys().any(|&(j, _)| j == *i))
            .collect()
    }
}

/// Lattice coset `{s in N^n : A (s - t) = 0, s >= lower_bounds}`: the
/// exponent-space picture of a deformed torus `h^{-1}(xi T)` met with the
/// orbit. `base_exponents` is a member of the set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeformedTorusFamily {
    pub nvars: usize,
    pub lattice_matrix: Vec<IVec>,
    pub base_exponents: Vec<u64>,
    pub saturated: bool,
    pub lower_bounds: Vec<u64>,
}

impl DeformedTorusFamily {
    pub fn contains(&self, s: &[u64]) -> bool {
        if s.len() != self.nvars || s.iter().zip(&self.lower_bounds).any(|(x, b)| x < b) {
            return false;
        }
        let diff: IVec = s.iter().zip(&self.base_exponents).map(|(&x, &y)| BigInt::from(x) - BigInt::from(y)).collect();
        self.lattice_matrix.iter().all(|row| dot(row, &diff) == BigInt::from(0))
    }

    /// Dimension of the coset.
    pub fn dimension(&self) -> usize {
        self.nvars - self.lattice_matrix.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Iterational(IterationalVariety),
    Torus(DeformedTorusFamily),
}

impl Family {
    pub fn contains(&self, t: &[u64]) -> bool {
        match self {
            Family::Iterational(v) => v.contains(t),
            Family::Torus(v) => v.contains(t),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Family::Iterational(v) => v.nvars,
            Family::Torus(v) => v.nvars,
        }
    }
}

fn tuple(v: &[u64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(","))
}

fn bounds(f: &mut fmt::Formatter<'_>, lower: &[u64], skip: impl Fn(usize) -> bool) -> fmt::Result {
    for (i, &b) in lower.iter().enumerate() {
        if b > 0 && !skip(i) {
            write!(f, ", t{} >= {b}", i + 1)?;
        }
    }
    Ok(())
}

impl fmt::Display for IterationalVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, m) in &self.fixed {
            parts.push(format!("x{} = f^{m}(a)", i + 1));
        }
        for ((j, k), l) in &self.links {
            parts.push(format!("x{} = f^{l}(x{})", j + 1, k + 1));
        }
        if parts.is_empty() {
            write!(f, "all tuples")?;
        } else {
            write!(f, "{}", parts.join(", "))?;
        }
        let free = self.free_variables();
        bounds(f, &self.lower_bounds, |i| !free.contains(&i))
    }
}

impl fmt::Display for DeformedTorusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lattice_matrix.is_empty() {
            write!(f, "all tuples")?;
        } else {
            let rows: Vec<String> = self
                .lattice_matrix
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            write!(f, "lattice: [{}] \u{b7} (s - {}) = 0", rows.join("; "), tuple(&self.base_exponents))?;
        }
        bounds(f, &self.lower_bounds, |_| false)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Iterational(v) => v.fmt(f),
            Family::Torus(v) => v.fmt(f),
        }
    }
}

pub(crate) fn format_point(t: &[u64]) -> String {
    tuple(t)
}
