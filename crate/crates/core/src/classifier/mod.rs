//! Orbit relations: the set of `t in N^n` with
//! `G(f^t1(a), ..., f^tn(a)) = 0`, described as a finite union of special
//! families.
//!
//! The basepoint is first pushed forward until `v(a) > v(lambda)`; indices
//! below that point are handled by substituting their orbit values into `G`.
//! On the normalized orbit every zero forces a valuation equation between
//! two dominant monomials of `G` (see [`equations`]). In the
//! superattracting case the equations are exponential and their solution
//! families are iterational; each is confirmed by substituting it into `G`,
//! and refined recursively otherwise. In the attracting case the equations
//! are linear and their saturated lattice cosets are confirmed on a box.

mod engine;
pub mod equations;
mod family;
mod report;

pub use equations::{pair_equation, pair_equations, valuation_witness, PairEquation};
pub use family::{DeformedTorusFamily, Family, IterationalVariety};
pub use report::{
    ClassificationReport, FamilyEntryJson, InputJson, LinkJson, PointFixJson, ReportJson, VerificationJson,
};

use std::collections::BTreeSet;

use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::field::ValuedElement;
use crate::series::{MultiPoly, DEFAULT_TRUNC};

use engine::Engine;

/// Default side of the verification box `[0, B]^n`.
pub const DEFAULT_BOX: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Series are compared modulo `x^(trunc + 1)`.
    pub trunc: usize,
    /// Verification box `[0, box_bound]^n`.
    pub box_bound: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { trunc: DEFAULT_TRUNC, box_bound: DEFAULT_BOX }
    }
}

/// How a reported family was confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verification {
    /// `G` restricted to the family vanishes modulo `x^(trunc + 1)`.
    ProvedToTruncation { trunc: usize },
    /// `G` vanishes at every member of the family in `[0, box_bound]^n`.
    BoxVerified { box_bound: u64 },
}

/// Outcome of [`verify_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationStatus {
    Verified(Verification),
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerifiedFamily {
    pub family: Family,
    pub verification: Verification,
}

/// Describes the orbit relations of `G` for the system `sys` and basepoint
/// `a`.
pub fn classify(sys: &DynamicalSystem, a: &ValuedElement, g: &MultiPoly, opts: ClassifyOptions) -> Result<ClassificationReport> {
    check_inputs(sys, a, g)?;
    let (shift, a1) = sys.normalize_basepoint(a)?;
    let n = g.nvars();
    let prefix: Vec<ValuedElement> = (0..shift).map(|m| sys.iterate(a, m)).collect::<Result<_>>()?;
    let mut engine = Engine::new(sys, a1, opts);
    let mut families = BTreeSet::new();
    let mut residual = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for pins in assignments(n, shift) {
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| match pins[i] {
                Some(m) => MultiPoly::constant(prefix[m as usize].clone(), n),
                None => MultiPoly::var(g.field(), n, i),
            })
            .collect();
        let gs = g.substitute(&images, None)?;
        let offsets: Vec<u64> = pins.iter().map(|p| p.unwrap_or(shift)).collect();
        let pinned: Vec<bool> = pins.iter().map(Option::is_some).collect();
        let part = engine.core(&gs, &pinned, &offsets)?;
        families.extend(part.families);
        residual.extend(part.residual);
        diagnostics.extend(part.diagnostics);
    }
    let families: Vec<VerifiedFamily> = families.into_iter().collect();
    let residual_points: Vec<Vec<u64>> =
        residual.into_iter().filter(|t: &Vec<u64>| !families.iter().any(|f| f.family.contains(t))).collect();
    Ok(ClassificationReport {
        map: sys.map().clone(),
        basepoint: a.clone(),
        poly: g.clone(),
        options: opts,
        order: sys.order(),
        vlambda: sys.vlambda(),
        normalization: shift,
        families,
        residual_points,
        diagnostics,
    })
}

fn check_inputs(sys: &DynamicalSystem, a: &ValuedElement, g: &MultiPoly) -> Result<()> {
    if a.field() != sys.field() || g.field() != sys.field() {
        return Err(Error::FieldMismatch);
    }
    if g.nvars() == 0 {
        return Err(Error::EmptyInput("polynomial in zero variables".into()));
    }
    if g.nvars() > 20 {
        return Err(Error::domain("at most 20 variables are supported"));
    }
    if g.is_zero_to_precision() {
        return Ok(());
    }
    if g.gauss_norm_valuation()? < 0 {
        return Err(Error::NotIntegral("polynomial coefficients must lie in the valuation ring".into()));
    }
    Ok(())
}

/// Every way of pinning some variables to an index below `shift`.
fn assignments(n: usize, shift: u64) -> Vec<Vec<Option<u64>>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for choice in std::iter::once(None).chain((0..shift).map(Some)) {
                let mut q = p.clone();
                q.push(choice);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Checks a candidate family against `G`: iterational families by
/// substitution, lattice families on the box.
pub fn verify_family(
    sys: &DynamicalSystem,
    a: &ValuedElement,
    g: &MultiPoly,
    family: &Family,
    opts: ClassifyOptions,
) -> Result<VerificationStatus> {
    check_inputs(sys, a, g)?;
    let mut engine = Engine::new(sys, a.clone(), opts);
    match family {
        Family::Iterational(v) => {
            if !v.consistent {
                return Ok(VerificationStatus::Refuted);
            }
            let fixed = v.fixed.iter().map(|(&i, &m)| (i, m));
            let links = v.links.iter().map(|(&jk, &l)| (jk, l));
            let rest = engine.restrict(g, fixed, links)?;
            Ok(if rest.is_zero_to_precision() {
                VerificationStatus::Verified(Verification::ProvedToTruncation { trunc: opts.trunc })
            } else {
                VerificationStatus::Refuted
            })
        }
        Family::Torus(_) => {
            for t in box_points(g.nvars(), opts.box_bound) {
                if family.contains(&t) && !engine.vanishes_at(g, &t)? {
                    return Ok(VerificationStatus::Refuted);
                }
            }
            Ok(VerificationStatus::Verified(Verification::BoxVerified { box_bound: opts.box_bound }))
        }
    }
}

/// All `t in [0, B]^n` with `G(f^t(a)) = 0`, by direct evaluation.
pub fn brute_force_oracle(sys: &DynamicalSystem, a: &ValuedElement, g: &MultiPoly, box_bound: u64) -> Result<BTreeSet<Vec<u64>>> {
    check_inputs(sys, a, g)?;
    let mut engine = Engine::new(sys, a.clone(), ClassifyOptions { trunc: DEFAULT_TRUNC, box_bound });
    let mut out = BTreeSet::new();
    for t in box_points(g.nvars(), box_bound) {
        if engine.vanishes_at(g, &t)? {
            out.insert(t);
        }
    }
    Ok(out)
}

/// `[0, b]^n` in lexicographic order.
pub fn box_points(n: usize, b: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut cur = Some(vec![0u64; n]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        for i in (0..n).rev() {
            if next[i] < b {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests;
