use super::*;
use crate::field::FieldSpec;
use crate::series::{MultiIndex, TruncatedSeries};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};

fn padic() -> FieldSpec {
    FieldSpec::padic(3, 40).unwrap()
}

fn laurent() -> FieldSpec {
    FieldSpec::laurent(40).unwrap()
}

fn pi(k: FieldSpec, e: u64) -> ValuedElement {
    ValuedElement::uniformizer(k).pow(e)
}

/// `pi x^deg`.
fn monomial_system(k: FieldSpec, deg: usize) -> DynamicalSystem {
    let mut cs = vec![ValuedElement::zero(k); deg + 1];
    cs[deg] = pi(k, 1);
    DynamicalSystem::new(TruncatedSeries::new(k, cs, 32, true).unwrap()).unwrap()
}

fn poly(k: FieldSpec, n: usize, terms: &[(i64, u64, &[u32])]) -> MultiPoly {
    MultiPoly::new(
        k,
        n,
        terms.iter().map(|(sign, v, e)| (MultiIndex(e.to_vec()), pi(k, *v).scale_int(*sign))),
    )
    .unwrap()
}

fn opts(box_bound: u64) -> ClassifyOptions {
    ClassifyOptions { box_bound, ..Default::default() }
}

#[test]
fn attracting_worked_example() {
    for k in [laurent(), padic()] {
        let sys = monomial_system(k, 1);
        let g = poly(k, 2, &[(1, 0, &[1, 0]), (-1, 0, &[0, 2])]);
        let a = pi(k, 2);
        let report = classify(&sys, &a, &g, opts(10)).unwrap();
        assert_eq!(report.families.len(), 1);
        let Family::Torus(t) = &report.families[0].family else { panic!("expected a lattice family") };
        assert_eq!(t.lattice_matrix, vec![vec![BigInt::from(1), BigInt::from(-2)]]);
        assert_eq!(t.base_exponents, vec![2, 0]);
        assert!(t.saturated);
        assert_eq!(report.families[0].family.to_string(), "lattice: [1 -2] \u{b7} (s - (2,0)) = 0");
        let oracle = brute_force_oracle(&sys, &a, &g, 10).unwrap();
        let expected: BTreeSet<Vec<u64>> = [[2, 0], [4, 1], [6, 2], [8, 3], [10, 4]].iter().map(|t| t.to_vec()).collect();
        assert_eq!(oracle, expected);
        assert_eq!(report.solutions_in_box(10), oracle);
    }
}

#[test]
fn superattracting_worked_example() {
    let k = padic();
    let sys = monomial_system(k, 2);
    let g = poly(k, 2, &[(1, 0, &[0, 1]), (-1, 1, &[2, 0])]);
    let a = pi(k, 2);
    let report = classify(&sys, &a, &g, opts(8)).unwrap();
    assert_eq!(report.families.len(), 1);
    let Family::Iterational(v) = &report.families[0].family else { panic!("expected an iterational family") };
    assert_eq!(v.links, BTreeMap::from([((1, 0), 1)]));
    assert!(v.fixed.is_empty());
    assert_eq!(report.families[0].family.to_string(), "x2 = f^1(x1)");
    assert_eq!(report.families[0].verification, Verification::ProvedToTruncation { trunc: 32 });
    assert_eq!(report.solutions_in_box(8), brute_force_oracle(&sys, &a, &g, 8).unwrap());
}

#[test]
fn constant_polynomial_has_no_relations() {
    let k = padic();
    let sys = monomial_system(k, 2);
    let g = MultiPoly::constant(ValuedElement::one(k), 2);
    let report = classify(&sys, &pi(k, 2), &g, opts(6)).unwrap();
    assert!(report.is_empty());
    assert!(report.to_string().contains("no relations on orbit (within verified box)"));
    assert!(brute_force_oracle(&sys, &pi(k, 2), &g, 6).unwrap().is_empty());
}

#[test]
fn zero_polynomial_vanishes_everywhere() {
    let k = laurent();
    let sys = monomial_system(k, 1);
    let x = MultiPoly::var(k, 1, 0);
    let g = x.sub(&x).unwrap();
    assert_eq!(brute_force_oracle(&sys, &pi(k, 2), &g, 5).unwrap().len(), 6);
    let report = classify(&sys, &pi(k, 2), &g, opts(5)).unwrap();
    assert_eq!(report.solutions_in_box(5).len(), 6);
}

#[test]
fn fixed_orbit_point() {
    let k = padic();
    let sys = monomial_system(k, 2);
    let a = pi(k, 2);
    let target = sys.iterate(&a, 3).unwrap();
    let g = MultiPoly::var(k, 1, 0).sub(&MultiPoly::constant(target, 1)).unwrap();
    let report = classify(&sys, &a, &g, opts(8)).unwrap();
    assert_eq!(report.families.len(), 1);
    assert_eq!(report.families[0].family.to_string(), "x1 = f^3(a)");
}

#[test]
fn verify_family_examples() {
    let k = padic();
    let sys = monomial_system(k, 2);
    let a = pi(k, 2);
    let g = poly(k, 2, &[(1, 0, &[0, 1]), (-1, 1, &[2, 0])]);
    let link = Family::Iterational(IterationalVariety {
        nvars: 2,
        fixed: BTreeMap::new(),
        links: BTreeMap::from([((1, 0), 1)]),
        lower_bounds: vec![0, 0],
        consistent: true,
    });
    assert!(matches!(verify_family(&sys, &a, &g, &link, opts(8)).unwrap(), VerificationStatus::Verified(_)));

    let f1 = sys.iterate(&a, 1).unwrap();
    let g1 = MultiPoly::var(k, 1, 0).sub(&MultiPoly::constant(f1, 1)).unwrap();
    let wrong = Family::Iterational(IterationalVariety {
        nvars: 1,
        fixed: BTreeMap::from([(0, 0)]),
        links: BTreeMap::new(),
        lower_bounds: vec![0],
        consistent: true,
    });
    assert_eq!(verify_family(&sys, &a, &g1, &wrong, opts(8)).unwrap(), VerificationStatus::Refuted);

    let k = laurent();
    let sys = monomial_system(k, 1);
    let g = poly(k, 2, &[(1, 0, &[1, 0]), (-1, 0, &[0, 2])]);
    let torus = Family::Torus(DeformedTorusFamily {
        nvars: 2,
        lattice_matrix: vec![vec![BigInt::from(1), BigInt::from(-2)]],
        base_exponents: vec![2, 0],
        saturated: true,
        lower_bounds: vec![0, 0],
    });
    assert_eq!(
        verify_family(&sys, &pi(k, 2), &g, &torus, opts(12)).unwrap(),
        VerificationStatus::Verified(Verification::BoxVerified { box_bound: 12 })
    );
}

#[test]
fn normalization_prefix_is_recovered() {
    // v(lambda) = 2 and v(a) = 1: the first two orbit points precede the
    // normalized range
    let k = laurent();
    let sys = DynamicalSystem::new(
        TruncatedSeries::new(k, vec![ValuedElement::zero(k), pi(k, 2), ValuedElement::one(k)], 32, true).unwrap(),
    )
    .unwrap();
    let a = pi(k, 1);
    let x = MultiPoly::var(k, 2, 0);
    let y = MultiPoly::var(k, 2, 1);
    let g = x.sub(&y).unwrap();
    let report = classify(&sys, &a, &g, opts(6)).unwrap();
    assert!(report.normalization > 0);
    assert_eq!(report.solutions_in_box(6), brute_force_oracle(&sys, &a, &g, 6).unwrap());
}

#[test]
fn product_relation_splits_into_components() {
    // (x1 - x2)(x1 - x3) over the attracting system f = pi x
    let k = laurent();
    let sys = monomial_system(k, 1);
    let x: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(k, 3, i)).collect();
    let g = x[0].sub(&x[1]).unwrap().mul(&x[0].sub(&x[2]).unwrap()).unwrap();
    let report = classify(&sys, &pi(k, 1), &g, opts(6)).unwrap();
    assert_eq!(report.solutions_in_box(6), brute_force_oracle(&sys, &pi(k, 1), &g, 6).unwrap());
    assert!(report.families.len() >= 2);
}

#[test]
fn superattracting_product_relation() {
    let k = padic();
    let sys = monomial_system(k, 2);
    let x: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(k, 3, i)).collect();
    let p = MultiPoly::constant(pi(k, 1), 3);
    // (x2 - p x1^2)(x3 - x1)
    let first = x[1].sub(&p.mul(&x[0].pow(2).unwrap()).unwrap()).unwrap();
    let g = first.mul(&x[2].sub(&x[0]).unwrap()).unwrap();
    let a = pi(k, 1).scale_int(2);
    let report = classify(&sys, &a, &g, opts(5)).unwrap();
    assert_eq!(report.solutions_in_box(5), brute_force_oracle(&sys, &a, &g, 5).unwrap());
    for f in &report.families {
        assert!(matches!(f.family, Family::Iterational(_)));
    }
}

#[test]
fn valuation_necessity_on_examples() {
    let k = laurent();
    let sys = monomial_system(k, 1);
    let g = poly(k, 2, &[(1, 0, &[1, 0]), (-1, 0, &[0, 2])]);
    for t in brute_force_oracle(&sys, &pi(k, 2), &g, 10).unwrap() {
        assert!(valuation_witness(&sys, 2, &g, &t).unwrap().is_some());
    }
}

#[test]
fn report_json_round_trip() {
    let k = laurent();
    let sys = monomial_system(k, 1);
    let g = poly(k, 2, &[(1, 0, &[1, 0]), (-1, 0, &[0, 2])]);
    let report = classify(&sys, &pi(k, 2), &g, opts(10)).unwrap();
    let text = serde_json::to_string(&report.to_json()).unwrap();
    let back: ReportJson = serde_json::from_str(&text).unwrap();
    assert_eq!(ClassificationReport::from_json(&back).unwrap(), report);
}

#[test]
fn mismatched_fields_rejected() {
    let sys = monomial_system(padic(), 1);
    let g = MultiPoly::var(laurent(), 1, 0);
    assert_eq!(classify(&sys, &pi(padic(), 2), &g, opts(4)).unwrap_err(), Error::FieldMismatch);
}
