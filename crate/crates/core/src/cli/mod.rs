//! Command-line front end: `orbitrel <subcommand> ...`.
//!
//! Exit codes: 0 success, 1 parse or schema error, 2 precision exhausted,
//! 3 domain violation. With `--json` exactly one JSON object is written to
//! standard output; diagnostics go to standard error.

mod output;
mod problem;

pub use output::{
    DominantJson, DominantPointJson, LinearizeJson, MannInputJson, MannJson, OracleJson, OrbitJson, OrbitPointJson,
    ResidualValuation, VertexJson,
};
pub use problem::{resolve_trunc, Problem, ProblemJson, TRUNC_ENV};

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::classifier::{self, ClassifyOptions, Family};
use crate::dynamics::{self, DynamicalSystem};
use crate::error::{Error, Result};
use crate::solvers;

#[derive(Parser, Debug)]
#[command(name = "orbitrel", version, about = "Polynomial relations on orbits of attracting fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Emit one JSON object instead of text.
    #[arg(long)]
    json: bool,
    /// Truncation order T (series are compared modulo x^(T+1)).
    #[arg(long)]
    trunc: Option<usize>,
    /// Verification box [0, B]^n.
    #[arg(long = "box")]
    box_bound: Option<u64>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct MannArgs {
    /// Optional JSON input {"coeffs": [...], "base": M, "rhs": c0}.
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<String>,
    #[arg(long)]
    base: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    rhs: Option<String>,
    /// Side of the box used to cross-check the families.
    #[arg(long = "box", default_value_t = 12)]
    box_bound: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Koenigs (M = 1) or Boettcher (M >= 2) conjugacy.
    Linearize(ProblemArgs),
    /// Orbit valuations against the closed form.
    Orbit {
        #[command(flatten)]
        args: ProblemArgs,
        #[arg(long, default_value_t = 10)]
        tmax: u64,
    },
    /// Valuation-dominant monomials of the problem's polynomial.
    Dominant(ProblemArgs),
    /// Solve sum c_i M^(t_i) = c0 over N^n.
    MannSolve(MannArgs),
    /// Classify all orbit relations of the problem's polynomial.
    Classify(ProblemArgs),
    /// Brute-force zero set on the verification box.
    Oracle(ProblemArgs),
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(args: &ProblemArgs) -> Result<Problem> {
    let text = read(&args.problem)?;
    ProblemJson::parse(&text)?.resolve(args.trunc, args.box_bound, args.verbose)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Linearize(args) => linearize(&args, out),
        Command::Orbit { args, tmax } => orbit(&args, tmax, out),
        Command::Dominant(args) => dominant(&args, out),
        Command::MannSolve(args) => mann(&args, out),
        Command::Classify(args) => classify(&args, out),
        Command::Oracle(args) => oracle(&args, out),
    }
}

fn linearize(args: &ProblemArgs, out: &mut dyn Write) -> Result<()> {
    let p = load(args)?;
    let sys = DynamicalSystem::new(p.map.clone())?;
    let (kind, h) = if sys.order() == 1 {
        ("koenigs", dynamics::koenigs(&sys, p.trunc)?)
    } else {
        ("boettcher", dynamics::boettcher(&sys, p.trunc)?)
    };
    let residual = dynamics::functional_residual(&sys, &h)?;
    let report = LinearizeJson::new(kind, &sys, &h, &residual);
    if args.json {
        return emit_json(out, &report);
    }
    let w = |e| io_error(e);
    writeln!(out, "{kind} conjugacy, M = {}, v(lambda) = {}", sys.order(), sys.vlambda()).map_err(w)?;
    writeln!(out, "h(x) = {h}").map_err(w)?;
    writeln!(out, "residual valuation: {}", report.residual_valuation).map_err(w)
}

fn orbit(args: &ProblemArgs, tmax: u64, out: &mut dyn Write) -> Result<()> {
    let p = load(args)?;
    let sys = DynamicalSystem::new(p.map.clone())?;
    let va = p.a.checked_valuation()?;
    let pts = sys.orbit(&p.a, tmax)?;
    let report = OrbitJson {
        order: sys.order(),
        vlambda: sys.vlambda(),
        points: pts
            .iter()
            .map(|o| OrbitPointJson {
                t: o.index,
                valuation: o.valuation,
                closed_form: sys.iterate_valuation(va, o.index).to_string(),
                value: o.value.to_json(),
            })
            .collect(),
    };
    if args.json {
        return emit_json(out, &report);
    }
    let w = |e| io_error(e);
    writeln!(out, "{:>4}  {:>12}  {:>12}", "t", "v(f^t(a))", "closed form").map_err(w)?;
    for o in &report.points {
        writeln!(out, "{:>4}  {:>12}  {:>12}", o.t, o.valuation, o.closed_form).map_err(w)?;
    }
    Ok(())
}

fn dominant(args: &ProblemArgs, out: &mut dyn Write) -> Result<()> {
    let p = load(args)?;
    let g = p.require_poly()?;
    let set = solvers::dominant_monomials(g)?;
    let report = DominantJson::new(&set);
    if args.json {
        return emit_json(out, &report);
    }
    let w = |e| io_error(e);
    for d in &report.dominant {
        let exp: Vec<String> = d.exp.iter().map(|x| x.to_string()).collect();
        let wt: Vec<String> = d.weight.iter().map(|x| x.to_string()).collect();
        writeln!(out, "I = ({})  v(g_I) = {}  weight ({})", exp.join(","), d.coeff_valuation, wt.join(",")).map_err(w)?;
    }
    Ok(())
}

fn mann(args: &MannArgs, out: &mut dyn Write) -> Result<()> {
    let input = match &args.input {
        Some(path) => serde_json::from_str::<MannInputJson>(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?,
        None => MannInputJson {
            coeffs: args.coeffs.clone(),
            base: args.base.ok_or_else(|| Error::Parse("--base is required".into()))?,
            rhs: args.rhs.clone().ok_or_else(|| Error::Parse("--rhs is required".into()))?,
        },
    };
    let big = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("{s:?} is not an integer")));
    let coeffs = input.coeffs.iter().map(|s| big(s)).collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("--coeffs is required".into()));
    }
    let rhs = big(&input.rhs)?;
    let fams = solvers::mann_solve(&coeffs, input.base, &rhs)?;
    let box_checked = (coeffs.len() <= MANN_CHECK_VARS).then_some([0, args.box_bound]);
    if box_checked.is_some() {
        cross_check_mann(&fams, &coeffs, input.base, &rhs, args.box_bound)?;
    }
    let report = MannJson { families: fams.iter().map(|f| f.to_json()).collect(), box_checked };
    if args.json {
        return emit_json(out, &report);
    }
    let w = |e| io_error(e);
    if fams.is_empty() {
        writeln!(out, "no solutions").map_err(w)?;
    }
    for f in &fams {
        if f.fixed.len() == f.nvars {
            let pt: Vec<String> = (0..f.nvars).map(|i| f.fixed[&i].to_string()).collect();
            writeln!(out, "point ({})", pt.join(",")).map_err(w)?;
        } else {
            writeln!(out, "{f}").map_err(w)?;
        }
    }
    Ok(())
}

/// Largest `n` for which `mann-solve` compares its answer with brute force.
const MANN_CHECK_VARS: usize = 4;

fn cross_check_mann(fams: &[solvers::SolutionFamily], coeffs: &[BigInt], base: u64, rhs: &BigInt, b: u64) -> Result<()> {
    let m = BigInt::from(base);
    for t in classifier::box_points(coeffs.len(), b) {
        let s: BigInt = coeffs.iter().zip(&t).map(|(c, &x)| c * num_traits::pow(m.clone(), x as usize)).sum();
        let ti: Vec<i64> = t.iter().map(|&x| x as i64).collect();
        if (s == *rhs) != fams.iter().any(|f| f.contains(&ti)) {
            return Err(Error::domain(format!("solution families disagree with direct evaluation at {ti:?}")));
        }
    }
    Ok(())
}

fn classify(args: &ProblemArgs, out: &mut dyn Write) -> Result<()> {
    let p = load(args)?;
    let g = p.require_poly()?;
    let sys = DynamicalSystem::new(p.map.clone())?;
    let report = classifier::classify(&sys, &p.a, g, ClassifyOptions { trunc: p.trunc, box_bound: p.box_bound })?;
    if args.json {
        return emit_json(out, &report.to_json());
    }
    write!(out, "{report}").map_err(io_error)?;
    if p.verbose && sys.order() == 1 {
        let h = dynamics::koenigs(&sys, p.trunc)?;
        for f in &report.families {
            if let Family::Torus(t) = &f.family {
                let xi = t
                    .base_exponents
                    .iter()
                    .map(|&m| Ok(dynamics::eval_linearizer(&h, sys.vlambda(), &sys.iterate(&p.a, m)?)?.to_string()))
                    .collect::<Result<Vec<_>>>();
                match xi {
                    Ok(xi) => writeln!(out, "xi for {}: ({})", t, xi.join(", ")).map_err(io_error)?,
                    Err(e) => writeln!(out, "xi for {t}: unavailable ({e})").map_err(io_error)?,
                }
            }
        }
    }
    Ok(())
}

fn oracle(args: &ProblemArgs, out: &mut dyn Write) -> Result<()> {
    let p = load(args)?;
    let g = p.require_poly()?;
    let sys = DynamicalSystem::new(p.map.clone())?;
    let sols = classifier::brute_force_oracle(&sys, &p.a, g, p.box_bound)?;
    let report = OracleJson { box_bound: p.box_bound, solutions: sols.into_iter().collect() };
    if args.json {
        return emit_json(out, &report);
    }
    let w = |e| io_error(e);
    writeln!(out, "{} solution(s) in [0,{}]^{}", report.solutions.len(), p.box_bound, g.nvars()).map_err(w)?;
    for t in &report.solutions {
        let cells: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        writeln!(out, "({})", cells.join(",")).map_err(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
