use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use super::equations::pair_equations;
use super::family::{DeformedTorusFamily, Family, IterationalVariety};
use super::{box_points, ClassifyOptions, Verification, VerifiedFamily};
use crate::dynamics::DynamicalSystem;
use crate::error::Result;
use crate::field::ValuedElement;
use crate::series::{MultiIndex, MultiPoly, TruncatedSeries};
use crate::solvers::lattice::{dot, particular_solution, saturate_rows, IVec};
use crate::solvers::{linear_solve, mann_solve, newton_points, SolutionFamily};

/// Upper limit on lattice cosets examined per attracting subproblem.
const COSET_LIMIT: usize = 4096;

/// Orbit values and iterated maps for one basepoint, computed on demand.
pub(super) struct Engine<'a> {
    sys: &'a DynamicalSystem,
    opts: ClassifyOptions,
    orbit: Vec<ValuedElement>,
    iterates: Vec<TruncatedSeries>,
}

/// Results for one choice of pinned prefix indices, in original exponents.
pub(super) struct Part {
    pub families: Vec<VerifiedFamily>,
    pub residual: Vec<Vec<u64>>,
    pub diagnostics: Vec<String>,
}

fn strip_monomial(g: &MultiPoly) -> Result<MultiPoly> {
    let m = g.monomial_content();
    if m.degree() == 0 {
        Ok(g.clone())
    } else {
        g.div_monomial(&m)
    }
}

fn describe(i: &MultiIndex) -> String {
    let cells: Vec<String> = i.0.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(","))
}

impl<'a> Engine<'a> {
    pub fn new(sys: &'a DynamicalSystem, a: ValuedElement, opts: ClassifyOptions) -> Self {
        Engine { sys, opts, orbit: vec![a], iterates: vec![] }
    }

    fn point(&mut self, t: u64) -> Result<ValuedElement> {
        while self.orbit.len() as u64 <= t {
            let next = self.sys.step(self.orbit.last().unwrap())?;
            self.orbit.push(next);
        }
        Ok(self.orbit[t as usize].clone())
    }

    fn iterate_series(&mut self, l: u64) -> Result<TruncatedSeries> {
        if self.iterates.is_empty() {
            self.iterates.push(TruncatedSeries::identity(self.sys.field(), self.opts.trunc));
        }
        while self.iterates.len() as u64 <= l {
            let next = TruncatedSeries::compose(self.sys.map(), self.iterates.last().unwrap())?;
            self.iterates.push(next);
        }
        Ok(self.iterates[l as usize].clone())
    }

    /// `G` with `x_i = f^m(a)` for fixed indices and `x_j = f^l(x_k)` for
    /// links, the latter modulo total degree `trunc + 1`.
    pub fn restrict(
        &mut self,
        g: &MultiPoly,
        fixed: impl IntoIterator<Item = (usize, u64)>,
        links: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<MultiPoly> {
        let n = g.nvars();
        let k = g.field();
        let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(k, n, i)).collect();
        for (i, m) in fixed {
            images[i] = MultiPoly::constant(self.point(m)?, n);
        }
        let mut linked = false;
        for ((j, root), l) in links {
            let s = self.iterate_series(l)?;
            let terms = s.coeffs().iter().enumerate().map(|(d, c)| {
                let mut e = vec![0; n];
                e[root] = d as u32;
                (MultiIndex(e), c.clone())
            });
            images[j] = MultiPoly::new(k, n, terms)?;
            linked = true;
        }
        g.substitute(&images, linked.then_some(self.opts.trunc as u64))
    }

    pub fn vanishes_at(&mut self, g: &MultiPoly, t: &[u64]) -> Result<bool> {
        let pts = t.iter().map(|&x| self.point(x)).collect::<Result<Vec<_>>>()?;
        Ok(g.eval(&pts)?.is_zero_to_precision())
    }

    fn basepoint_valuation(&self) -> i64 {
        self.orbit[0].valuation().finite().expect("normalized basepoint has finite valuation")
    }

    /// Classifies `g` on the normalized orbit. Pinned variables do not occur
    /// in `g`; `offsets[i]` converts normalized exponents back to original
    /// ones (the shift, or the pinned value).
    pub fn core(&mut self, g: &MultiPoly, pinned: &[bool], offsets: &[u64]) -> Result<Part> {
        let g = strip_monomial(g)?;
        if self.sys.order() >= 2 {
            let mut c = SolutionFamily::everything(g.nvars());
            for (i, _) in pinned.iter().enumerate().filter(|(_, p)| **p) {
                c.fixed.insert(i, 0);
            }
            let fams = self.solve_iterational(&g, c)?;
            let families = fams
                .into_iter()
                .map(|f| VerifiedFamily {
                    family: Family::Iterational(to_variety(&f, offsets)),
                    verification: Verification::ProvedToTruncation { trunc: self.opts.trunc },
                })
                .collect();
            Ok(Part { families, residual: vec![], diagnostics: vec![] })
        } else {
            self.solve_torus(&g, pinned, offsets)
        }
    }

    /// Zero set of `g` inside the fixed/offset family `c`, where `g` only
    /// involves the free roots of `c`.
    fn solve_iterational(&mut self, g: &MultiPoly, c: SolutionFamily) -> Result<Vec<SolutionFamily>> {
        let g = strip_monomial(g)?;
        if g.is_zero_to_precision() {
            return Ok(vec![c]);
        }
        if newton_points(&g).len() < 2 {
            return Ok(vec![]);
        }
        let va = self.basepoint_valuation();
        let base = self.sys.order() as u64;
        let mut candidates = BTreeSet::new();
        for e in pair_equations(self.sys, va, &g)? {
            for d in mann_solve(&e.coeffs, base, &e.rhs)? {
                if let Some(x) = d.meet(&c) {
                    if x != c {
                        candidates.insert(x);
                    }
                }
            }
        }
        let roots = c.free_roots();
        let mut out = Vec::new();
        for e in candidates {
            let fixed: Vec<(usize, u64)> =
                e.fixed.iter().filter(|(i, _)| !c.fixed.contains_key(i)).map(|(&i, &m)| (i, m as u64)).collect();
            let links: Vec<((usize, usize), u64)> =
                e.offsets.iter().filter(|((j, _), _)| roots.contains(j)).map(|(&jk, &b)| (jk, b as u64)).collect();
            let rest = self.restrict(&g, fixed, links)?;
            out.extend(self.solve_iterational(&rest, e)?);
        }
        Ok(prune(out))
    }

    fn solve_torus(&mut self, g: &MultiPoly, pinned: &[bool], offsets: &[u64]) -> Result<Part> {
        let n = g.nvars();
        let mut pin_rows = Vec::new();
        for (i, _) in pinned.iter().enumerate().filter(|(_, p)| **p) {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::from(1);
            pin_rows.push(row);
        }
        let mut part = Part { families: vec![], residual: vec![], diagnostics: vec![] };
        let trivial = Coset::new(&pin_rows, &vec![BigInt::zero(); pin_rows.len()], n).expect("pinning is consistent");
        if g.is_zero_to_precision() {
            part.families.push(VerifiedFamily {
                family: Family::Torus(trivial.to_family(&vec![0; n], offsets)),
                verification: Verification::ProvedToTruncation { trunc: self.opts.trunc },
            });
            return Ok(part);
        }
        if newton_points(g).len() < 2 {
            return Ok(part);
        }
        let va = self.basepoint_valuation();
        let mut queue = VecDeque::new();
        for e in pair_equations(self.sys, va, g)? {
            let Some(fam) = linear_solve(&e.coeffs, &e.rhs) else { continue };
            let Some(l) = fam.lattice else { continue };
            if l.witness.is_none() {
                part.diagnostics.push(format!(
                    "pair {} / {}: valuation equation has integer solutions but none in N^n",
                    describe(&e.i),
                    describe(&e.j)
                ));
            }
            if let Some(c) = trivial.meet(&Coset { rows: l.matrix, rhs: l.rhs }, n) {
                queue.push_back(c);
            }
        }
        let core_box: Vec<Vec<u64>> = box_points(n, self.opts.box_bound)
            .filter(|t| (0..n).all(|i| if pinned[i] { t[i] == 0 } else { t[i] + offsets[i] <= self.opts.box_bound }))
            .collect();
        let mut zero: HashMap<Vec<u64>, bool> = HashMap::new();
        let mut seen: BTreeSet<Coset> = queue.iter().cloned().collect();
        let mut verified: Vec<(Coset, Vec<u64>)> = Vec::new();
        let mut refuted: Vec<(Coset, Vec<Vec<u64>>)> = Vec::new();
        let mut empty = 0usize;
        while let Some(c) = queue.pop_front() {
            let pts: Vec<Vec<u64>> = core_box.iter().filter(|t| c.contains(t)).cloned().collect();
            if pts.is_empty() {
                empty += 1;
                continue;
            }
            let mut zeros = Vec::new();
            for t in &pts {
                let z = match zero.get(t) {
                    Some(&z) => z,
                    None => {
                        let z = self.vanishes_at(g, t)?;
                        zero.insert(t.clone(), z);
                        z
                    }
                };
                if z {
                    zeros.push(t.clone());
                }
            }
            if zeros.len() == pts.len() {
                let base = pts.iter().min_by_key(|t| (t.iter().sum::<u64>(), (*t).clone())).unwrap().clone();
                verified.push((c, base));
                continue;
            }
            for (r, _) in &refuted {
                if seen.len() >= COSET_LIMIT {
                    break;
                }
                if let Some(x) = c.meet(r, n) {
                    if seen.insert(x.clone()) {
                        queue.push_back(x);
                    }
                }
            }
            refuted.push((c, zeros));
        }
        if seen.len() >= COSET_LIMIT {
            part.diagnostics.push(format!("coset refinement stopped after {COSET_LIMIT} cosets"));
        }
        if empty > 0 {
            part.diagnostics.push(format!("{empty} candidate coset(s) have no points in the verification box"));
        }
        let keep: Vec<&(Coset, Vec<u64>)> = verified
            .iter()
            .filter(|(c, _)| !verified.iter().any(|(d, _)| d != c && c.subset_of(d, n)))
            .collect();
        for (c, base) in &keep {
            part.families.push(VerifiedFamily {
                family: Family::Torus(c.to_family(base, offsets)),
                verification: Verification::BoxVerified { box_bound: self.opts.box_bound },
            });
        }
        for (_, zeros) in refuted {
            for t in zeros {
                if !keep.iter().any(|(c, _)| c.contains(&t)) {
                    part.residual.push(t.iter().zip(offsets).map(|(x, o)| x + o).collect());
                }
            }
        }
        Ok(part)
    }
}

/// Drops duplicates and families contained in another one.
fn prune(fams: Vec<SolutionFamily>) -> Vec<SolutionFamily> {
    let set: BTreeSet<SolutionFamily> = fams.into_iter().collect();
    let all: Vec<SolutionFamily> = set.into_iter().collect();
    all.iter().filter(|x| !all.iter().any(|y| y != *x && x.meet(y).as_ref() == Some(*x))).cloned().collect()
}

fn to_variety(f: &SolutionFamily, offsets: &[u64]) -> IterationalVariety {
    IterationalVariety {
        nvars: f.nvars,
        fixed: f.fixed.iter().map(|(&i, &m)| (i, m as u64 + offsets[i])).collect(),
        links: f.offsets.iter().map(|(&jk, &b)| (jk, b as u64)).collect(),
        lower_bounds: offsets.to_vec(),
        consistent: true,
    }
}

/// `{t : A t = r}` with `A` saturated and in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Coset {
    rows: Vec<IVec>,
    rhs: IVec,
}

impl Coset {
    fn new(rows: &[IVec], rhs: &[BigInt], n: usize) -> Option<Self> {
        let t0 = particular_solution(rows, rhs, n)?;
        let rows = if rows.is_empty() { vec![] } else { saturate_rows(rows, n) };
        let rhs = rows.iter().map(|r| dot(r, &t0)).collect();
        Some(Coset { rows, rhs })
    }

    fn meet(&self, other: &Coset, n: usize) -> Option<Coset> {
        let rows: Vec<IVec> = self.rows.iter().chain(&other.rows).cloned().collect();
        let rhs: IVec = self.rhs.iter().chain(&other.rhs).cloned().collect();
        Coset::new(&rows, &rhs, n)
    }

    fn subset_of(&self, other: &Coset, n: usize) -> bool {
        self.meet(other, n).as_ref() == Some(self)
    }

    fn contains(&self, t: &[u64]) -> bool {
        let t: IVec = t.iter().map(|&x| BigInt::from(x)).collect();
        self.rows.iter().zip(&self.rhs).all(|(row, r)| dot(row, &t) == *r)
    }

    fn to_family(&self, base: &[u64], offsets: &[u64]) -> DeformedTorusFamily {
        DeformedTorusFamily {
            nvars: base.len(),
            lattice_matrix: self.rows.clone(),
            base_exponents: base.iter().zip(offsets).map(|(x, o)| x + o).collect(),
            saturated: true,
            lower_bounds: offsets.to_vec(),
        }
    }
}
