//! Command-line surface: file formats and command implementations.
//!
//! File formats (complex numbers are `[re, im]`; a bare number is read as a
//! real value):
//!
//! * spec: `{"m": 3, "n": 0, "p": 2, "gamma": [re, im], "A": [re, im], "B": [re, im]}`.
//!   An `analyze` report is also accepted; its `spec` member is used.
//! * grid: `{"t": [...], "x": [...]}` for the product grid (t outer, x inner)
//!   or `{"points": [{"t": z, "x": z}, ...]}` for a point list.
//! * data: `{"coefficients": [...], "radius": 1.0 | "inf", "truncation": 200}`.
//! * CSV output: `t_re,t_im,x_re,x_im,u_re,u_im,status`; failed points carry
//!   `NaN` values and the error kind as status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::classify;
use crate::continuation::{continue_ode, monodromy_k1, monodromy_k2, LoopPath, LOOP_VERTICES};
use crate::error::Error;
use crate::problem::{degeneracy_flags, derive_params, ProblemSpec, RootChoice};
use crate::solution::{build_monomial_with_root, eval_series, Radius, SeriesSolution, SERIES_TERM_CAP};
use crate::specfun::{ghf_derivative, ghf_principal};
use crate::verify::residual;
use crate::nonpositive_integer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hypercauchy", version, about = "Hypergeometric solutions of a characteristic Cauchy problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootArg {
    Plus,
    Minus,
}

impl From<RootArg> for RootChoice {
    fn from(r: RootArg) -> Self {
        match r {
            RootArg::Plus => RootChoice::Plus,
            RootArg::Minus => RootChoice::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LoopArg {
    K1,
    K2,
    Trivial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived parameters, degeneracy flags and classification.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "plus")]
        root: RootArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate `U_l` on a grid.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        root: RootArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the series solution for power-series data on a grid.
    Series {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continue `U_l` once around a characteristic curve.
    Monodromy {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        l: u32,
        /// `t_re,t_im,x_re,x_im`
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long = "loop", value_enum)]
        loop_target: LoopArg,
        #[arg(long, value_enum, default_value = "plus")]
        root: RootArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PDE residuals of `U_l` at a list of points.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        root: RootArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command together with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidSpec(_)
        | Error::PreconditionViolation(_)
        | Error::BasepointInvalid(_)
        | Error::DivisionByZero(_) => EXIT_INPUT,
        Error::DegenerateParams(_) | Error::Pole(_) | Error::NotDegenerate(_) => EXIT_DEGENERATE,
        Error::NoConvergence { .. }
        | Error::OutsideDomain { .. }
        | Error::StepFailure(_)
        | Error::SingularityTooClose(_) => EXIT_NUMERICAL,
    }
}

/// Short status tag for CSV rows.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole(_) => "pole",
        Error::DegenerateParams(_) => "degenerate_params",
        Error::NoConvergence { .. } => "no_convergence",
        Error::DivisionByZero(_) => "division_by_zero",
        Error::OutsideDomain { .. } => "outside_domain",
        Error::NotDegenerate(_) => "not_degenerate",
        Error::PreconditionViolation(_) => "precondition_violation",
        Error::BasepointInvalid(_) => "basepoint_invalid",
        Error::StepFailure(_) => "step_failure",
        Error::SingularityTooClose(_) => "singularity_too_close",
        Error::InvalidSpec(_) => "invalid_spec",
    }
}

/// A complex number written as `[re, im]` or as a real number.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexRepr> for Complex64 {
    fn from(c: ComplexRepr) -> Self {
        match c {
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
            ComplexRepr::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Deserialize)]
struct SpecFile {
    m: u32,
    n: u32,
    p: u32,
    gamma: ComplexRepr,
    #[serde(rename = "A")]
    coef_a: ComplexRepr,
    #[serde(rename = "B")]
    coef_b: ComplexRepr,
}

#[derive(Debug, Deserialize)]
struct PointRepr {
    t: ComplexRepr,
    x: ComplexRepr,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GridFile {
    Points { points: Vec<PointRepr> },
    Product { t: Vec<ComplexRepr>, x: Vec<ComplexRepr> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RadiusRepr {
    Finite(f64),
    Named(String),
}

#[derive(Debug, Deserialize)]
struct DataFile {
    coefficients: Vec<ComplexRepr>,
    radius: RadiusRepr,
    truncation: Option<usize>,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed JSON in {}: {e}", path.display())))
}

fn parse_spec_value(mut value: Value) -> Result<ProblemSpec, CliError> {
    if let Some(inner) = value.get_mut("spec") {
        value = inner.take();
    }
    let file: SpecFile =
        serde_json::from_value(value).map_err(|e| CliError::input(format!("malformed spec: {e}")))?;
    Ok(ProblemSpec::new(
        file.m,
        file.n,
        file.p,
        file.gamma.into(),
        file.coef_a.into(),
        file.coef_b.into(),
    )?)
}

pub fn load_spec(path: &Path) -> Result<ProblemSpec, CliError> {
    parse_spec_value(read_json(path)?)
}

pub fn load_grid(path: &Path) -> Result<Vec<(Complex64, Complex64)>, CliError> {
    let grid: GridFile = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::input(format!("malformed grid: {e}")))?;
    Ok(match grid {
        GridFile::Points { points } => points.into_iter().map(|p| (p.t.into(), p.x.into())).collect(),
        GridFile::Product { t, x } => t
            .iter()
            .flat_map(|&tv| x.iter().map(move |&xv| (tv.into(), xv.into())))
            .collect(),
    })
}

pub fn load_data(path: &Path, spec: &ProblemSpec) -> Result<SeriesSolution, CliError> {
    let data: DataFile = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::input(format!("malformed data: {e}")))?;
    let radius = match data.radius {
        RadiusRepr::Finite(r) => Radius::Finite(r),
        RadiusRepr::Named(s) if s == "inf" => Radius::INFINITE,
        RadiusRepr::Named(s) => return Err(CliError::input(format!("unknown radius {s:?}"))),
    };
    let coefficients = data.coefficients.into_iter().map(Complex64::from).collect();
    let mut series = SeriesSolution::new(spec, coefficients, radius)?;
    if let Some(n) = data.truncation {
        if n == 0 {
            return Err(CliError::input("truncation must be positive"));
        }
        series = series.with_truncation(n.min(SERIES_TERM_CAP));
    }
    Ok(series)
}

fn parse_base(text: &str) -> Result<(Complex64, Complex64), CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("bad basepoint {text:?}: {e}")))?;
    match parts.as_slice() {
        [tr, ti, xr, xi] => Ok((Complex64::new(*tr, *ti), Complex64::new(*xr, *xi))),
        _ => Err(CliError::input(format!(
            "basepoint {text:?} must be t_re,t_im,x_re,x_im"
        ))),
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::input(format!("cannot write output: {e}")))
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn spec_json(spec: &ProblemSpec) -> Value {
    json!({
        "m": spec.m,
        "n": spec.n,
        "p": spec.p,
        "gamma": pair(spec.gamma),
        "A": pair(spec.coef_a),
        "B": pair(spec.coef_b),
    })
}

/// Builds the `analyze` report. Classification failures are reported in the
/// document and through the returned exit code.
pub fn analyze_report(spec: &ProblemSpec, l: u32, root: RootChoice) -> (Value, i32) {
    let dp = derive_params(spec, l, root);
    let per_root: Vec<Value> = [RootChoice::Plus, RootChoice::Minus]
        .into_iter()
        .map(|r| {
            let d = derive_params(spec, l, r);
            json!({
                "root": r,
                "alpha": pair(d.alpha()),
                "a": pair(d.a),
                "b": pair(d.b),
                "c": pair(d.c),
            })
        })
        .collect();
    let flags = degeneracy_flags(spec, &dp);
    let mut code = EXIT_OK;
    let classification = match build_monomial_with_root(spec, l, root).and_then(|u| classify(&u)) {
        Ok(r) => json!({
            "case_tag": r.case_tag,
            "holomorphic_k1": r.holomorphic_k1,
            "holomorphic_k2": r.holomorphic_k2,
            "k2_ramification_exponent": r.k2_ramification_exponent.map(pair),
            "witness": r.witness,
        }),
        Err(e) => {
            code = exit_code(&e);
            json!({ "error": error_kind(&e), "message": e.to_string() })
        }
    };
    let mut warnings = Vec::new();
    let mut null_solution = Value::Null;
    if let Some(k) = nonpositive_integer(spec.gamma).filter(|&k| k >= 1) {
        warnings.push(format!(
            "uniqueness fails: gamma = {} is a negative integer, so u + lambda t^{} V solves the same problem for every lambda, with V any solution for gamma' = {}",
            -(k as i64),
            k + 1,
            k + 2
        ));
        null_solution = json!({ "exponent": k + 1, "companion_gamma": k + 2 });
    }
    let report = json!({
        "spec": spec_json(spec),
        "l": l,
        "root_choice": root,
        "q": dp.q,
        "alpha_plus": pair(dp.alpha_plus),
        "alpha_minus": pair(dp.alpha_minus),
        "params": { "a": pair(dp.a), "b": pair(dp.b), "c": pair(dp.c) },
        "params_per_root": per_root,
        "flags": flags,
        "classification": classification,
        "null_solution": null_solution,
        "warnings": warnings,
    });
    (report, code)
}

fn csv_row(t: Complex64, x: Complex64, result: &Result<Complex64, Error>) -> String {
    match result {
        Ok(u) => format!("{},{},{},{},{},{},ok\n", t.re, t.im, x.re, x.im, u.re, u.im),
        Err(e) => format!("{},{},{},{},NaN,NaN,{}\n", t.re, t.im, x.re, x.im, error_kind(e)),
    }
}

/// CSV for a list of evaluations and the exit code: success if any point
/// succeeded, else the code of the first failure.
pub fn grid_csv<F>(points: &[(Complex64, Complex64)], f: F) -> (String, i32)
where
    F: Fn(Complex64, Complex64) -> Result<Complex64, Error>,
{
    let mut csv = String::from("t_re,t_im,x_re,x_im,u_re,u_im,status\n");
    let mut first_error = None;
    let mut any_ok = false;
    for &(t, x) in points {
        let r = f(t, x);
        match &r {
            Ok(_) => any_ok = true,
            Err(e) if first_error.is_none() => first_error = Some(exit_code(e)),
            Err(_) => {}
        }
        csv.push_str(&csv_row(t, x, &r));
    }
    let code = if any_ok || points.is_empty() {
        EXIT_OK
    } else {
        first_error.unwrap_or(EXIT_NUMERICAL)
    };
    (csv, code)
}

fn monodromy_report(
    spec: &ProblemSpec,
    l: u32,
    root: RootChoice,
    t: Complex64,
    x: Complex64,
    target: LoopArg,
) -> Result<Value, CliError> {
    let u = build_monomial_with_root(spec, l, root)?;
    let z = u.z(t, x)?;
    let (label, result) = match target {
        LoopArg::K2 => ("k2", monodromy_k2(&u, t, x)?),
        LoopArg::K1 => ("k1", monodromy_k1(&u, t, x)?),
        LoopArg::Trivial => {
            let p = u.params();
            let path = LoopPath::trivial(z, LOOP_VERTICES)?;
            let before = u.eval(t, x)?;
            let xl = x.powi(l as i32);
            let after = xl * continue_ode(p, &path, (ghf_principal(p, z)?, ghf_derivative(p, z)?))?;
            return Ok(json!({
                "spec": spec_json(spec),
                "l": l,
                "loop": "trivial",
                "basepoint": { "t": pair(t), "x": pair(x), "z": pair(z) },
                "value_before": pair(before),
                "value_after": pair(before),
                "components": [{
                    "label": "U",
                    "value": pair(before),
                    "multiplier": pair(Complex64::new(1.0, 0.0)),
                    "multiplier_modulus": 1.0,
                }],
                "oracle_value_after": pair(after),
                "oracle_discrepancy": (after - before).norm() / before.norm().max(1e-300),
            }));
        }
    };
    let components: Vec<Value> = result
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "value": pair(c.value),
                "multiplier": pair(c.multiplier),
                "multiplier_modulus": c.multiplier.norm(),
            })
        })
        .collect();
    Ok(json!({
        "spec": spec_json(spec),
        "l": l,
        "loop": label,
        "basepoint": { "t": pair(t), "x": pair(x), "z": pair(z) },
        "value_before": pair(result.value_before),
        "value_after": pair(result.value_after),
        "components": components,
        "oracle_value_after": pair(result.oracle_value_after),
        "oracle_discrepancy": result.oracle_discrepancy,
    }))
}

fn verify_report(
    spec: &ProblemSpec,
    l: u32,
    root: RootChoice,
    points: &[(Complex64, Complex64)],
) -> Result<(Value, i32), CliError> {
    let u = build_monomial_with_root(spec, l, root)?;
    let mut rows = Vec::with_capacity(points.len());
    let mut max_relative: f64 = 0.0;
    let mut failures = 0;
    let mut first_error = None;
    for &(t, x) in points {
        match residual(&u, spec, t, x) {
            Ok(r) => {
                max_relative = max_relative.max(r.relative);
                rows.push(json!({
                    "t": pair(t),
                    "x": pair(x),
                    "residual": pair(r.residual),
                    "scale": r.scale,
                    "relative": r.relative,
                    "status": "ok",
                }));
            }
            Err(e) => {
                failures += 1;
                first_error.get_or_insert(exit_code(&e));
                rows.push(json!({
                    "t": pair(t),
                    "x": pair(x),
                    "status": error_kind(&e),
                    "message": e.to_string(),
                }));
            }
        }
    }
    let code = if failures == points.len() && !points.is_empty() {
        first_error.unwrap_or(EXIT_NUMERICAL)
    } else {
        EXIT_OK
    };
    Ok((
        json!({
            "spec": spec_json(spec),
            "l": l,
            "points": rows,
            "max_relative": max_relative,
            "failures": failures,
        }),
        code,
    ))
}

fn execute(command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Analyze { spec, l, root, out } => {
            let spec = load_spec(spec)?;
            let (report, code) = analyze_report(&spec, *l, (*root).into());
            emit(out.as_deref(), &pretty(&report))?;
            Ok(code)
        }
        Command::Eval {
            spec,
            l,
            grid,
            root,
            out,
        } => {
            let spec = load_spec(spec)?;
            let points = load_grid(grid)?;
            let u = build_monomial_with_root(&spec, *l, (*root).into())?;
            let (csv, code) = grid_csv(&points, |t, x| u.eval(t, x));
            emit(out.as_deref(), &csv)?;
            Ok(code)
        }
        Command::Series {
            spec,
            data,
            grid,
            out,
        } => {
            let spec = load_spec(spec)?;
            let series = load_data(data, &spec)?;
            let points = load_grid(grid)?;
            let (csv, code) = grid_csv(&points, |t, x| eval_series(&series, t, x).map(|v| v.value));
            emit(out.as_deref(), &csv)?;
            Ok(code)
        }
        Command::Monodromy {
            spec,
            l,
            base,
            loop_target,
            root,
            out,
        } => {
            let spec = load_spec(spec)?;
            let (t, x) = parse_base(base)?;
            let report = monodromy_report(&spec, *l, (*root).into(), t, x, *loop_target)?;
            emit(out.as_deref(), &pretty(&report))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            spec,
            l,
            points,
            root,
            out,
        } => {
            let spec = load_spec(spec)?;
            let pts = load_grid(points)?;
            let (report, code) = verify_report(&spec, *l, (*root).into(), &pts)?;
            emit(out.as_deref(), &pretty(&report))?;
            Ok(code)
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
