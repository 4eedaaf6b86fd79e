use super::*;
use std::path::PathBuf;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orbitrel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_problem(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("orbitrel-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

const ATTRACTING: &str = r#"{
  "field": { "kind": "laurent", "precision_cap": 40 },
  "map": { "terms": [ { "exp": 1, "coeff": { "val": 1, "digits": [1] } } ], "polynomial": true },
  "a": { "val": 2, "digits": [1] },
  "poly": { "nvars": 2, "terms": [
    { "exp": [1, 0], "coeff": { "val": 0, "digits": [1] } },
    { "exp": [0, 2], "coeff": { "val": 0, "digits": [-1] } } ] },
  "box": 10,
  "trunc": 16
}"#;

#[test]
fn mann_solve_point() {
    let (code, out, _) = run_args(&["mann-solve", "--coeffs", "1,-1", "--base", "2", "--rhs", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "point (3,2)\n");
}

#[test]
fn mann_solve_json_family() {
    let (code, out, _) = run_args(&["mann-solve", "--coeffs", "1,-2", "--base", "2", "--rhs", "0", "--json"]);
    assert_eq!(code, 0);
    let j: MannJson = serde_json::from_str(&out).unwrap();
    assert_eq!(j.families.len(), 1);
    assert_eq!(j.box_checked, Some([0, 12]));
    assert!(out.ends_with("}\n"));
}

#[test]
fn mann_solve_without_solutions() {
    let (code, out, _) = run_args(&["mann-solve", "--coeffs", "2,2", "--base", "2", "--rhs", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "no solutions\n");
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run_args(&["frobnicate"]).0, 1);
    assert_eq!(run_args(&["mann-solve", "--coeffs", "1,x", "--base", "2", "--rhs", "4"]).0, 1);
    assert_eq!(run_args(&["classify", "/nonexistent/problem.json"]).0, 1);
    let path = temp_problem("garbage", "{ not json");
    assert_eq!(run_args(&["classify", path.to_str().unwrap()]).0, 1);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn repelling_map_is_a_domain_error() {
    let text = ATTRACTING.replace(r#""exp": 1, "coeff": { "val": 1"#, r#""exp": 1, "coeff": { "val": 0"#);
    let path = temp_problem("repelling", &text);
    let (code, _, err) = run_args(&["linearize", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: "));
}

#[test]
fn unknown_basepoint_is_a_precision_error() {
    let text = ATTRACTING.replace(r#""a": { "val": 2, "digits": [1] }"#, r#""a": { "val": "inf", "digits": [], "prec": 5, "exact": false }"#);
    let path = temp_problem("precision", &text);
    let (code, _, err) = run_args(&["orbit", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn classify_text_and_json_agree() {
    let path = temp_problem("classify", ATTRACTING);
    let p = path.to_str().unwrap();
    let (code, text, _) = run_args(&["classify", p]);
    assert_eq!(code, 0);
    assert!(text.contains("lattice: [1 -2] \u{b7} (s - (2,0)) = 0"));
    let (code, json, _) = run_args(&["classify", p, "--json"]);
    assert_eq!(code, 0);
    let report: classifier::ReportJson = serde_json::from_str(&json).unwrap();
    assert_eq!(report.input.trunc, 16);
    assert_eq!(report.families.len(), 1);
    let (_, oracle, _) = run_args(&["oracle", p, "--json"]);
    let oracle: OracleJson = serde_json::from_str(&oracle).unwrap();
    assert_eq!(oracle.solutions, vec![vec![2, 0], vec![4, 1], vec![6, 2], vec![8, 3], vec![10, 4]]);
}

#[test]
fn flags_override_file_options() {
    let path = temp_problem("flags", ATTRACTING);
    let (code, json, _) = run_args(&["classify", path.to_str().unwrap(), "--json", "--trunc", "20", "--box", "6"]);
    assert_eq!(code, 0);
    let report: classifier::ReportJson = serde_json::from_str(&json).unwrap();
    assert_eq!((report.input.trunc, report.input.box_bound), (20, 6));
}

#[test]
fn orbit_matches_closed_form() {
    let path = temp_problem("orbit", ATTRACTING);
    let (code, json, _) = run_args(&["orbit", path.to_str().unwrap(), "--tmax", "6", "--json"]);
    assert_eq!(code, 0);
    let o: OrbitJson = serde_json::from_str(&json).unwrap();
    assert_eq!(o.points.len(), 7);
    for p in &o.points {
        assert_eq!(p.valuation.to_string(), p.closed_form);
    }
}

#[test]
fn truncation_precedence() {
    // the only test touching the environment variable
    std::env::set_var(TRUNC_ENV, "7");
    assert_eq!(resolve_trunc(Some(3), Some(5)), Ok(3));
    assert_eq!(resolve_trunc(None, Some(5)), Ok(5));
    assert_eq!(resolve_trunc(None, None), Ok(7));
    std::env::set_var(TRUNC_ENV, "seven");
    assert!(resolve_trunc(None, None).is_err());
    std::env::remove_var(TRUNC_ENV);
    assert_eq!(resolve_trunc(None, None), Ok(crate::series::DEFAULT_TRUNC));
}

#[test]
fn problem_json_round_trip() {
    let p = ProblemJson::parse(ATTRACTING).unwrap().resolve(None, None, false).unwrap();
    let text = serde_json::to_string(&p.to_json()).unwrap();
    assert_eq!(ProblemJson::parse(&text).unwrap().resolve(None, None, false).unwrap(), p);
    assert!(ProblemJson::parse(r#"{"field": {"kind": "laurent", "precision_cap": 8}, "extra": 1}"#).is_err());
}
