//! End-to-end acceptance checks. Each criterion prints one line; the
//! process exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitrel::classifier::{
    self, brute_force_oracle, classify, valuation_witness, ClassificationReport, ClassifyOptions, Family, ReportJson,
};
use orbitrel::cli::{self, ProblemJson};
use orbitrel::dynamics::{self, DynamicalSystem};
use orbitrel::solvers::{self, SolutionFamily};
use orbitrel::{FieldSpec, MultiIndex, MultiPoly, TruncatedSeries, Valuation, ValuedElement};

const TRUNC: usize = 32;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pi(k: FieldSpec, e: u64) -> ValuedElement {
    ValuedElement::uniformizer(k).pow(e)
}

/// A unit of the valuation ring with a small integer representative.
fn unit(k: FieldSpec, rng: &mut ChaCha8Rng) -> ValuedElement {
    loop {
        let u: i64 = rng.gen_range(-4..=4);
        let ok = u != 0 && k.prime().map_or(true, |p| u.rem_euclid(p as i64) != 0);
        if ok {
            return ValuedElement::from_int(k, u);
        }
    }
}

fn scalar(k: FieldSpec, rng: &mut ChaCha8Rng, vmin: u64, vmax: u64) -> ValuedElement {
    &unit(k, rng) * &pi(k, rng.gen_range(vmin..=vmax))
}

fn fields(rng: &mut ChaCha8Rng) -> FieldSpec {
    match rng.gen_range(0..4) {
        0 => FieldSpec::padic(2, 60).unwrap(),
        1 => FieldSpec::padic(3, 60).unwrap(),
        2 => FieldSpec::padic(5, 60).unwrap(),
        _ => FieldSpec::laurent(40).unwrap(),
    }
}

/// `lambda x^m + sum c_i x^i` with `m < i <= deg`.
fn random_system(k: FieldSpec, rng: &mut ChaCha8Rng, m: usize, vl: (u64, u64)) -> DynamicalSystem {
    let deg = m + rng.gen_range(0..=2);
    let mut cs = vec![ValuedElement::zero(k); deg + 1];
    cs[m] = scalar(k, rng, vl.0, vl.1);
    for c in cs.iter_mut().skip(m + 1) {
        if rng.gen_bool(0.7) {
            *c = scalar(k, rng, 0, 2);
        }
    }
    DynamicalSystem::new(TruncatedSeries::new(k, cs, TRUNC, true).unwrap()).unwrap()
}

fn residual_vanishes(sys: &DynamicalSystem, h: &TruncatedSeries) -> Result<(), String> {
    let r = dynamics::functional_residual(sys, h).map_err(|e| e.to_string())?;
    for (n, c) in r.coeffs().iter().enumerate().take(TRUNC + 1) {
        ensure(c.is_zero_to_precision(), || format!("residual coefficient of x^{n} is {c}"))?;
    }
    let report = cli::LinearizeJson::new("koenigs", sys, h, &r);
    ensure(report.residual_valuation == cli::ResidualValuation::Symbol("inf".into()), || {
        format!("residual valuation {}", report.residual_valuation)
    })
}

fn koenigs_corpus() -> Vec<DynamicalSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..25)
        .map(|i| {
            let k = if i % 4 == 3 { FieldSpec::laurent(40).unwrap() } else { FieldSpec::padic([2, 3, 5][i % 4], 128).unwrap() };
            random_system(k, &mut rng, 1, (1, 3))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for sys in koenigs_corpus() {
        let h = dynamics::koenigs(&sys, TRUNC).map_err(|e| e.to_string())?;
        residual_vanishes(&sys, &h)?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("25 systems, residual inf mod x^33, {:.2}s", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for sys in koenigs_corpus() {
        let h = dynamics::koenigs(&sys, TRUNC).map_err(|e| e.to_string())?;
        for (n, c) in h.coeffs().iter().enumerate().skip(1).take(TRUNC) {
            if let Valuation::Finite(v) = c.valuation() {
                let bound = (1 - n as i64) * sys.vlambda();
                ensure(v >= bound, || format!("v(h_{n}) = {v} < {bound}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients, 0 violations"))
}

fn criterion_3() -> Outcome {
    let k = FieldSpec::laurent(40).unwrap();
    let lambda = pi(k, 1);
    let cs: Vec<ValuedElement> =
        (0..=TRUNC).map(|i| if i == 0 { ValuedElement::zero(k) } else { lambda.clone() }).collect();
    let sys = DynamicalSystem::new(TruncatedSeries::new(k, cs, TRUNC, false).unwrap()).unwrap();
    let h = dynamics::koenigs(&sys, TRUNC).map_err(|e| e.to_string())?;
    let c = (&ValuedElement::one(k) - &lambda).inv().map_err(|e| e.to_string())?;
    for j in 1..=TRUNC {
        let expected = c.pow(j as u64 - 1);
        let got = h.coefficient(j).unwrap_or_else(|| ValuedElement::zero(k));
        ensure(got.eq_to_precision(&expected), || format!("h_{j} = {got}, expected {expected}"))?;
    }
    Ok(format!("h_j = (1 - lambda)^(1 - j) for j <= {TRUNC}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..25 {
        let k = fields(&mut rng);
        let sys = random_system(k, &mut rng, 2 + i % 2, (0, 2));
        let h = dynamics::boettcher(&sys, TRUNC).map_err(|e| format!("{e} for f = {}", sys.map()))?;
        let r = dynamics::functional_residual(&sys, &h).map_err(|e| e.to_string())?;
        for (n, c) in r.coeffs().iter().enumerate().take(TRUNC + 1) {
            ensure(c.is_zero_to_precision(), || format!("f = {}: residual coefficient of x^{n} is {c}", sys.map()))?;
        }
    }
    Ok("25 systems, M in {2,3}, residual vanishes mod x^33".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50 {
        let k = fields(&mut rng);
        let sys = if i % 2 == 0 { random_system(k, &mut rng, 1, (1, 3)) } else { random_system(k, &mut rng, 2, (0, 2)) };
        let va = sys.vlambda().max(0) as u64 + rng.gen_range(1..=3);
        let a = scalar(k, &mut rng, va, va);
        let tmax = if sys.order() == 1 { 20 } else { 12 };
        let pts = sys.orbit(&a, tmax).map_err(|e| e.to_string())?;
        for p in &pts {
            let closed = sys.iterate_valuation(va as i64, p.index);
            ensure(closed == BigInt::from(p.valuation), || format!("t = {}: {} vs {closed}", p.index, p.valuation))?;
        }
    }
    Ok("50 orbits, closed form equals direct valuation".into())
}

fn random_poly(k: FieldSpec, rng: &mut ChaCha8Rng, n: usize, terms: usize, max_val: u64) -> MultiPoly {
    let ts = (0..terms).map(|_| {
        let e = MultiIndex((0..n).map(|_| rng.gen_range(0..=3)).collect());
        (e, scalar(k, rng, 0, max_val))
    });
    MultiPoly::new(k, n, ts.collect::<Vec<_>>()).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k = FieldSpec::laurent(40).unwrap();
    let mut done = 0;
    let mut widened = 0;
    while done < 100 {
        let n = rng.gen_range(1..=3);
        let t = rng.gen_range(1..=8);
        let g = random_poly(k, &mut rng, n, t, 10);
        if g.is_zero_to_precision() {
            continue;
        }
        let set = solvers::dominant_monomials(&g).map_err(|e| e.to_string())?;
        let pts = solvers::newton_points(&g);
        for _ in 0..200 {
            let w: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=40))).collect();
            for i in solvers::argmin(&pts, &w) {
                ensure(set.contains(&pts[i].exponent), || format!("argmin at {w:?} outside F for {g}"))?;
            }
        }
        // the grid is widened when a certificate weight lies outside [0,20]^n
        let side = set.weights.iter().flatten().map(|x| u64::try_from(x).unwrap()).max().unwrap_or(0).max(20);
        if side > 20 {
            widened += 1;
        }
        let mut grid = BTreeSet::new();
        for w in classifier::box_points(n, side) {
            let w: Vec<BigInt> = w.into_iter().map(BigInt::from).collect();
            grid.extend(solvers::argmin(&pts, &w).into_iter().map(|i| pts[i].exponent.clone()));
        }
        let f: BTreeSet<MultiIndex> = set.exponents().into_iter().collect();
        ensure(f == grid, || format!("F = {f:?} but grid union = {grid:?} for {g}"))?;
        done += 1;
    }
    Ok(format!("100 polynomials, 20000 evaluations, grid oracle agrees ({widened} needed a grid wider than 20)"))
}

fn brute_mann(coeffs: &[BigInt], base: u64, rhs: &BigInt, b: u64) -> BTreeSet<Vec<i64>> {
    let m = BigInt::from(base);
    classifier::box_points(coeffs.len(), b)
        .filter(|t| {
            let s: BigInt = coeffs.iter().zip(t).map(|(c, &x)| c * num_traits::pow(m.clone(), x as usize)).sum();
            s == *rhs
        })
        .map(|t| t.into_iter().map(|x| x as i64).collect())
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let base = [2u64, 3, 5][rng.gen_range(0..3)];
        let coeffs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect();
        // half the instances get a right-hand side with a known solution
        let rhs = if rng.gen_bool(0.5) {
            BigInt::from(rng.gen_range(-400..=400))
        } else {
            let m = BigInt::from(base);
            let s: BigInt = coeffs.iter().map(|c| c * num_traits::pow(m.clone(), rng.gen_range(0..=3))).sum();
            if s.magnitude() <= &400u32.into() {
                s
            } else {
                BigInt::zero()
            }
        };
        let fams: Vec<SolutionFamily> = solvers::mann_solve(&coeffs, base, &rhs).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<i64>> = fams.iter().flat_map(|f| f.points_in_box(12)).collect();
        let expected = brute_mann(&coeffs, base, &rhs, 12);
        ensure(got == expected, || format!("{coeffs:?} base {base} rhs {rhs}: {got:?} vs {expected:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("200 instances agree with enumeration on [0,12]^n, {:.2}s", t.as_secs_f64()))
}

struct Instance {
    sys: DynamicalSystem,
    a: ValuedElement,
    g: MultiPoly,
}

fn worked_examples() -> Vec<Instance> {
    let k = FieldSpec::laurent(40).unwrap();
    let one = |e: &[u32], c: ValuedElement| (MultiIndex(e.to_vec()), c);
    let m1 = DynamicalSystem::new(TruncatedSeries::new(k, vec![ValuedElement::zero(k), pi(k, 1)], TRUNC, true).unwrap())
        .unwrap();
    let m2 = DynamicalSystem::new(
        TruncatedSeries::new(k, vec![ValuedElement::zero(k), ValuedElement::zero(k), pi(k, 1)], TRUNC, true).unwrap(),
    )
    .unwrap();
    vec![
        Instance {
            sys: m1,
            a: pi(k, 2),
            g: MultiPoly::new(k, 2, [one(&[1, 0], ValuedElement::one(k)), one(&[0, 2], -&ValuedElement::one(k))])
                .unwrap(),
        },
        Instance {
            sys: m2,
            a: pi(k, 2),
            g: MultiPoly::new(k, 2, [one(&[0, 1], ValuedElement::one(k)), one(&[2, 0], -&pi(k, 1))]).unwrap(),
        },
    ]
}

/// `G(x) = sum c_i x_var^i` evaluated at the map: `x_dst - f(x_src)`.
fn link_poly(sys: &DynamicalSystem, n: usize, dst: usize, src: usize) -> MultiPoly {
    let k = sys.field();
    let mut terms = vec![(MultiIndex::unit(n, dst), ValuedElement::one(k))];
    for (i, c) in sys.map().coeffs().iter().enumerate() {
        if !c.is_exact_zero() {
            let mut e = MultiIndex::zero(n);
            e.0[src] = i as u32;
            terms.push((e, -c));
        }
    }
    MultiPoly::new(k, n, terms).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, superattracting: bool) -> Instance {
    let k = FieldSpec::laurent(40).unwrap();
    let sys = if superattracting {
        let m = 2 + rng.gen_range(0..=1);
        random_system(k, rng, m, (0, 1))
    } else {
        let cs = vec![ValuedElement::zero(k), scalar(k, rng, 1, 2)];
        DynamicalSystem::new(TruncatedSeries::new(k, cs, TRUNC, true).unwrap()).unwrap()
    };
    let va = sys.vlambda().max(0) as u64 + rng.gen_range(1..=2);
    let a = &unit(k, rng) * &pi(k, va);
    let n = rng.gen_range(1..=3);
    let g = match rng.gen_range(0..4) {
        // binomial with matching valuations somewhere on the orbit
        0 => {
            let t: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            let xs: Vec<ValuedElement> = t.iter().map(|&m| sys.iterate(&a, m).unwrap()).collect();
            let e1 = MultiIndex((0..n).map(|_| rng.gen_range(0..=2)).collect());
            let e2 = MultiIndex((0..n).map(|_| rng.gen_range(0..=2)).collect());
            let mono = |e: &MultiIndex| {
                e.0.iter().zip(&xs).fold(ValuedElement::one(k), |acc, (&p, x)| &acc * &x.pow(p as u64))
            };
            let (v1, v2) = (mono(&e1), mono(&e2));
            if e1 == e2 {
                random_poly(k, rng, n, 2, 3)
            } else {
                MultiPoly::new(k, n, [(e1, v2), (e2, -&v1)]).unwrap()
            }
        }
        1 => {
            let terms = rng.gen_range(2..=3);
            random_poly(k, rng, n, terms, 3)
        }
        2 if n >= 2 && superattracting => link_poly(&sys, n, 1, 0),
        _ => {
            let m = rng.gen_range(0..=5);
            let target = sys.iterate(&a, m).unwrap();
            let i = rng.gen_range(0..n);
            MultiPoly::var(k, n, i).sub(&MultiPoly::constant(target, n)).unwrap()
        }
    };
    Instance { sys, a, g }
}

fn end_to_end_corpus() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut v = worked_examples();
    v.extend((0..30).map(|i| random_instance(&mut rng, i % 2 == 1)));
    v
}

const E2E_BOX: u64 = 10;

fn criterion_8() -> Outcome {
    let mut families = 0;
    for inst in end_to_end_corpus() {
        let opts = ClassifyOptions { trunc: TRUNC, box_bound: E2E_BOX };
        let ctx = || format!("f = {}, a = {}, G = {}", inst.sys.map(), inst.a, inst.g);
        let report = classify(&inst.sys, &inst.a, &inst.g, opts).map_err(|e| format!("{e} for {}", ctx()))?;
        let oracle = brute_force_oracle(&inst.sys, &inst.a, &inst.g, E2E_BOX).map_err(|e| e.to_string())?;
        let got = report.solutions_in_box(E2E_BOX);
        ensure(got == oracle, || format!("{}: classify {got:?} vs oracle {oracle:?}", ctx()))?;
        for f in &report.families {
            let ok = match &f.family {
                Family::Iterational(_) => inst.sys.order() >= 2,
                Family::Torus(t) => inst.sys.order() == 1 && t.saturated,
            };
            ensure(ok, || format!("{}: family {} has the wrong shape", ctx(), f.family))?;
        }
        families += report.families.len();
    }
    Ok(format!("2 worked examples + 30 random instances agree with the oracle ({families} families)"))
}

fn criterion_9() -> Outcome {
    let mut solutions = 0;
    for inst in end_to_end_corpus() {
        let (_, b) = inst.sys.normalize_basepoint(&inst.a).map_err(|e| e.to_string())?;
        let va = b.checked_valuation().map_err(|e| e.to_string())?;
        ensure(va == inst.a.checked_valuation().unwrap(), || "corpus basepoints are normalized".into())?;
        for t in brute_force_oracle(&inst.sys, &inst.a, &inst.g, E2E_BOX).map_err(|e| e.to_string())? {
            let w = valuation_witness(&inst.sys, va, &inst.g, &t).map_err(|e| e.to_string())?;
            ensure(w.is_some(), || format!("t = {t:?} has no valuation witness for G = {}", inst.g))?;
            solutions += 1;
        }
    }
    Ok(format!("{solutions} solutions, 0 counterexamples"))
}

fn docs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("orbitrel").chain(args.iter().copied()), &mut out, &mut err);
    ensure(code == 0, || format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn element_strategy(k: FieldSpec) -> impl Strategy<Value = ValuedElement> {
    prop_oneof![
        Just(ValuedElement::zero(k)),
        (-50i64..50, 1i64..20, 0u64..6).prop_map(move |(num, den, v)| {
            let q = BigRational::new(num.into(), den.into());
            if q.is_zero() {
                ValuedElement::zero(k)
            } else {
                &ValuedElement::from_rational(k, q) * &pi(k, v)
            }
        }),
    ]
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 5, 7]), 4u32..40).prop_map(|(p, c)| FieldSpec::padic(p, c).unwrap()),
        (4u32..40).prop_map(|c| FieldSpec::laurent(c).unwrap()),
    ]
}

fn problem_strategy() -> impl Strategy<Value = ProblemJson> {
    field_strategy().prop_flat_map(|k| {
        (
            prop::collection::vec(element_strategy(k), 1..6),
            element_strategy(k),
            1usize..4,
            prop::collection::vec((prop::collection::vec(0u32..4, 3), element_strategy(k)), 0..5),
            prop::option::of(1usize..40),
            prop::option::of(0u64..20),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(move |(cs, a, n, terms, trunc, box_bound, polynomial, verbose)| {
                let mut coeffs = vec![ValuedElement::zero(k)];
                coeffs.extend(cs);
                let map = TruncatedSeries::new(k, coeffs, trunc.unwrap_or(32), polynomial).unwrap();
                let poly = MultiPoly::new(k, n, terms.into_iter().map(|(e, c)| (MultiIndex(e[..n].to_vec()), c)))
                    .unwrap();
                ProblemJson {
                    field: k.to_json(),
                    map: map.to_json(),
                    a: a.to_json(),
                    poly: Some(poly.to_json()),
                    trunc,
                    box_bound,
                    verbose,
                }
            })
    })
}

fn report_strategy() -> impl Strategy<Value = ReportJson> {
    let family = |n: usize| {
        prop_oneof![
            (
                prop::collection::btree_map(0..n, 0u64..30, 0..=n),
                prop::collection::btree_map((0..n, 0..n), 0u64..5, 0..=2),
                prop::collection::vec(0u64..5, n),
                any::<bool>(),
                any::<bool>(),
            )
                .prop_map(move |(fixed, links, lower, consistent, proved)| {
                    let v = classifier::IterationalVariety { nvars: n, fixed, links, lower_bounds: lower, consistent };
                    (Family::Iterational(v), proved)
                }),
            (
                prop::collection::vec(prop::collection::vec(-9i64..10, n), 0..=n),
                prop::collection::vec(0u64..30, n),
                prop::collection::vec(0u64..5, n),
                any::<bool>(),
                any::<bool>(),
            )
                .prop_map(move |(rows, base, lower, saturated, proved)| {
                    let t = classifier::DeformedTorusFamily {
                        nvars: n,
                        lattice_matrix: rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
                        base_exponents: base,
                        saturated,
                        lower_bounds: lower,
                    };
                    (Family::Torus(t), proved)
                }),
        ]
    };
    problem_strategy().prop_flat_map(move |p| {
        let n = p.poly.as_ref().unwrap().nvars;
        (
            Just(p),
            prop::collection::vec(family(n), 0..4),
            prop::collection::vec(prop::collection::vec(0u64..12, n), 0..3),
            prop::collection::vec("[a-z ]{0,12}", 0..2),
            1u32..4,
            0i64..4,
            0u64..3,
        )
            .prop_map(|(p, fams, residual, diagnostics, order, vlambda, normalization)| {
                let trunc = p.trunc.unwrap_or(32);
                let box_bound = p.box_bound.unwrap_or(12);
                let families = fams
                    .into_iter()
                    .map(|(family, proved)| classifier::VerifiedFamily {
                        family,
                        verification: if proved {
                            classifier::Verification::ProvedToTruncation { trunc }
                        } else {
                            classifier::Verification::BoxVerified { box_bound }
                        },
                    })
                    .map(|f| f.to_json())
                    .collect();
                ReportJson {
                    input: classifier::InputJson {
                        field: p.field,
                        map: p.map,
                        a: p.a,
                        poly: p.poly.unwrap(),
                        box_bound,
                        trunc,
                    },
                    order,
                    vlambda,
                    normalization,
                    families,
                    residual_points: residual,
                    diagnostics,
                }
            })
    })
}

fn round_trip_cases() -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&(problem_strategy(), report_strategy()), |(problem, report)| {
            let text = serde_json::to_string_pretty(&problem).unwrap();
            let back = ProblemJson::parse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back, &problem);
            let resolved = back.resolve(None, None, false).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(resolved.to_json().field, problem.field.clone());

            let text = serde_json::to_string_pretty(&report).unwrap();
            let back: ReportJson = serde_json::from_str(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back, &report);
            let typed = ClassificationReport::from_json(&back).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(typed.to_json(), report);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn criterion_10() -> Outcome {
    let docs = docs_dir();
    let cases = [
        ("classify", "attracting_lattice"),
        ("classify", "superattracting_link"),
        ("linearize", "mobius_linearization"),
    ];
    for (cmd, name) in cases {
        let problem = docs.join("problems").join(format!("{name}.json"));
        let expected = std::fs::read_to_string(docs.join("expected").join(format!("{name}.json")))
            .map_err(|e| format!("{name}: {e}"))?;
        let got = run_cli(&[cmd, problem.to_str().unwrap(), "--json"])?;
        ensure(got == expected, || format!("{name}: output differs from the committed report"))?;
    }
    round_trip_cases()?;
    Ok("3 problem files reproduce byte-for-byte, 1000 round-trip cases".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Koenigs functional equation", criterion_1),
        ("Koenigs coefficient bound", criterion_2),
        ("Moebius closed form", criterion_3),
        ("Boettcher functional equation", criterion_4),
        ("orbit valuations", criterion_5),
        ("dominant monomials", criterion_6),
        ("Mann solver", criterion_7),
        ("classification end to end", criterion_8),
        ("valuation necessity", criterion_9),
        ("CLI reports and schema round trip", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
