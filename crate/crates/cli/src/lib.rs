//! Command-line front-end for `trunc_bose`.
//!
//! Every subcommand renders to one of three formats (plain table, CSV, JSON).
//! JSON documents carry a [`RunManifest`] and follow
//! `schemas/output.schema.json`. Exit codes: 0 success, 1 failed check or
//! solver failure, 2 usage or domain error.

mod format;
mod manifest;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use trunc_bose::lie::{self, HomomorphismReport};
use trunc_bose::operators::{self, sweep_tolerance, BracketReport};
use trunc_bose::scaling::{self, ScalingFit};
use trunc_bose::spectral::{self, bose_jacobi, DEFAULT_ABS_TOL, MAX_EIGENVECTOR_DIM};
use trunc_bose::states::{self, ComplexParam, StateLabel};
use trunc_bose::{Complex64, Dim, Error, Role, TruncatedOperator};

pub use format::{format_float, parse_csv_matrix};
pub use manifest::RunManifest;

pub const MAX_SPECTRUM_DIM: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "trunc-bose", version, about = "Truncated Bose operators: brackets, spectra, states, scaling")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,

    /// Tolerance: bracket residual for lie-check, bisection width for
    /// spectrum and scaling, phase cutoff for expect.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a truncated operator matrix (N, B, C, b, bdag, I).
    Build { op: String, n: usize },
    /// Verify the commutator tables of the truncated operators and the small representations.
    LieCheck {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        /// Corrupt one generator before checking (negative control).
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
    /// Eigenvalues (and optionally eigenvectors) of B_n, descending.
    Spectrum {
        n: usize,
        #[arg(long)]
        vectors: bool,
    },
    /// Expectation value of an operator in number:K, coherent:RE,IM or squeezed:RE,IM.
    Expect { state: String, op: String, n: usize },
    /// Power-law fit of the largest eigenvalue or the top gap over a geometric grid.
    Scaling {
        #[arg(value_enum)]
        kind: ScalingKind,
        n_min: usize,
        n_max: usize,
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingKind {
    LambdaMax,
    Gap,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            stderr: line(msg.into()),
            code: 2,
        }
    }

    fn failure(msg: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            stderr: line(msg.into()),
            code: 1,
        }
    }
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Outcome::usage(format!("--tol must be a nonnegative number, got {t}"));
        }
    }
    match &cli.command {
        Command::Build { op, n } => cmd_build(op, *n, cli.format),
        Command::LieCheck {
            dims,
            inject_sign_flip,
        } => cmd_lie_check(dims, cli.tol, *inject_sign_flip, cli.format),
        Command::Spectrum { n, vectors } => cmd_spectrum(*n, *vectors, cli.tol, cli.format),
        Command::Expect { state, op, n } => cmd_expect(state, op, *n, cli.tol, cli.format),
        Command::Scaling {
            kind,
            n_min,
            n_max,
            points,
        } => cmd_scaling(*kind, *n_min, *n_max, *points, cli.tol, cli.format),
    }
}

fn parse_dim(n: usize) -> Result<Dim, Outcome> {
    Dim::new(n).map_err(|e| Outcome::usage(e.to_string()))
}

fn parse_role(op: &str) -> Result<Role, Outcome> {
    Role::from_symbol(op).ok_or_else(|| {
        Outcome::usage(format!(
            "unknown operator '{op}'; expected one of N, B, C, b, bdag, I"
        ))
    })
}

fn positive_tol(tol: Option<f64>) -> Result<f64, Outcome> {
    match tol {
        None => Ok(DEFAULT_ABS_TOL),
        Some(t) if t > 0.0 => Ok(t),
        Some(t) => Err(Outcome::usage(format!("--tol must be positive here, got {t}"))),
    }
}

fn to_json(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

pub fn cmd_build(op: &str, n: usize, fmt: OutputFormat) -> Outcome {
    let (role, dim) = match (parse_role(op), parse_dim(n)) {
        (Ok(r), Ok(d)) => (r, d),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let op = TruncatedOperator::build(role, dim);
    let m = op.entries();
    let out = match fmt {
        OutputFormat::Csv => format::csv_matrix(m),
        OutputFormat::Table => format::table_matrix(m),
        OutputFormat::Json => {
            let mut params = BTreeMap::new();
            params.insert("op".into(), role.symbol().into());
            params.insert("n".into(), n.to_string());
            to_json(json!({
                "dim": n,
                "role": role.symbol(),
                "entries": m.as_slice().iter().map(|&x| format::clean(x)).collect::<Vec<_>>(),
                "manifest": RunManifest::new("build", params),
            }))
        }
    };
    Outcome::ok(out)
}

#[derive(Debug, Serialize)]
struct BracketRow {
    dim: usize,
    lhs: String,
    rhs: String,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

impl BracketRow {
    fn new(dim: usize, r: &BracketReport) -> Self {
        Self {
            dim,
            lhs: r.lhs_label.clone(),
            rhs: r.rhs_label.clone(),
            residual: r.residual,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

pub fn cmd_lie_check(dims: &[usize], tol: Option<f64>, inject_sign_flip: bool, fmt: OutputFormat) -> Outcome {
    if dims.is_empty() {
        return Outcome::usage("--dims needs at least one dimension");
    }
    let mut rows = Vec::new();
    for &n in dims {
        let dim = match parse_dim(n) {
            Ok(d) => d,
            Err(e) => return e,
        };
        let t = tol.unwrap_or_else(|| sweep_tolerance(dim));
        match operators::truncation_brackets(dim, t) {
            Ok(reports) => rows.extend(reports.iter().map(|r| BracketRow::new(n, r))),
            Err(e) => return Outcome::failure(e.to_string()),
        }
    }

    let rep_tol = tol.unwrap_or(0.0);
    let mut heisenberg = lie::heisenberg_3x3();
    if inject_sign_flip {
        heisenberg.matrices[2] = heisenberg.matrices[2].scale(-1.0);
    }
    let reps: Vec<HomomorphismReport> = vec![
        lie::verify_structure(&heisenberg, rep_tol),
        lie::verify_structure(&lie::fermi_2x2(), rep_tol),
        lie::verify_structure(&lie::oscillator_adjoint_4x4(), rep_tol),
        lie::verify_adjoint_homomorphism(rep_tol),
    ];

    let pass = rows.iter().all(|r| r.pass) && reps.iter().all(HomomorphismReport::passed);
    let stdout = match fmt {
        OutputFormat::Json => {
            let mut params = BTreeMap::new();
            params.insert(
                "dims".into(),
                dims.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
            );
            if let Some(t) = tol {
                params.insert("tol".into(), format_float(t));
            }
            if inject_sign_flip {
                params.insert("inject_sign_flip".into(), "true".into());
            }
            to_json(json!({
                "pass": pass,
                "brackets": rows,
                "representations": reps,
                "manifest": RunManifest::new("lie-check", params),
            }))
        }
        OutputFormat::Csv => {
            let mut s = String::from("check,dim,lhs,rhs,residual,tolerance,pass\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "bracket,{},{},{},{},{},{}",
                    r.dim,
                    r.lhs,
                    r.rhs,
                    format_float(r.residual),
                    format_float(r.tolerance),
                    r.pass
                );
            }
            for rep in &reps {
                let _ = writeln!(
                    s,
                    "{},,,,{},{},{}",
                    rep.name,
                    format_float(rep.max_residual),
                    format_float(rep.tolerance),
                    rep.passed()
                );
            }
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<6} {:<6} {:<6} {:>10} {:>10}  result", "dim", "lhs", "rhs", "residual", "tolerance");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<6} {:<6} {:<6} {:>10} {:>10}  {}",
                    r.dim,
                    r.lhs,
                    r.rhs,
                    format!("{:.3e}", r.residual),
                    format!("{:.3e}", r.tolerance),
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            for rep in &reps {
                let _ = writeln!(
                    s,
                    "{:<36} pairs={} max_residual={:.3e}  {}",
                    rep.name,
                    rep.pairs_checked,
                    rep.max_residual,
                    if rep.passed() { "pass" } else { "FAIL" }
                );
                for f in &rep.failures {
                    let _ = writeln!(s, "  failing pair [{}, {}] residual {}", f.lhs, f.rhs, format_float(f.residual));
                }
            }
            s
        }
    };
    if pass {
        Outcome::ok(stdout)
    } else {
        let mut failing: Vec<String> = rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("[{}, {}] at n={}", r.lhs, r.rhs, r.dim))
            .collect();
        for rep in &reps {
            failing.extend(rep.failures.iter().map(|f| format!("{}: [{}, {}]", rep.name, f.lhs, f.rhs)));
        }
        Outcome {
            stdout,
            stderr: format!("bracket check failed: {}\n", failing.join("; ")),
            code: 1,
        }
    }
}

pub fn cmd_spectrum(n: usize, vectors: bool, tol: Option<f64>, fmt: OutputFormat) -> Outcome {
    let dim = match parse_dim(n) {
        Ok(d) => d,
        Err(e) => return e,
    };
    if n > MAX_SPECTRUM_DIM {
        return Outcome::usage(format!("n must be at most {MAX_SPECTRUM_DIM}, got {n}"));
    }
    if vectors && n > MAX_EIGENVECTOR_DIM {
        return Outcome::usage(format!("--vectors requires n <= {MAX_EIGENVECTOR_DIM}, got {n}"));
    }
    let abs_tol = match positive_tol(tol) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let j = bose_jacobi(dim);
    let result = if vectors {
        spectral::eigen_decomposition(&j, abs_tol)
    } else {
        spectral::eigenvalues_bisect(&j, abs_tol)
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let ev: Vec<f64> = result.eigenvalues.iter().map(|&x| format::clean(x)).collect();
    let stdout = match fmt {
        OutputFormat::Json => {
            let mut params = BTreeMap::new();
            params.insert("n".into(), n.to_string());
            params.insert("vectors".into(), vectors.to_string());
            params.insert("tol".into(), format_float(abs_tol));
            let mut doc = json!({
                "n": n,
                "abs_tol": abs_tol,
                "residual_bound": result.residual_bound,
                "eigenvalues": ev,
                "manifest": RunManifest::new("spectrum", params),
            });
            if let Some(v) = &result.eigenvectors {
                doc["eigenvectors"] = json!(v);
            }
            to_json(doc)
        }
        OutputFormat::Csv => {
            let mut s = String::from("index,eigenvalue");
            if vectors {
                for k in 0..n {
                    let _ = write!(s, ",v{k}");
                }
            }
            s.push('\n');
            for (i, l) in ev.iter().enumerate() {
                let _ = write!(s, "{i},{}", format_float(*l));
                if let Some(vs) = &result.eigenvectors {
                    for x in &vs[i] {
                        let _ = write!(s, ",{}", format_float(*x));
                    }
                }
                s.push('\n');
            }
            s
        }
        OutputFormat::Table => {
            let mut s = format!("spectrum of B_{n} (descending, abs_tol {abs_tol:e})\n");
            for (i, l) in ev.iter().enumerate() {
                let _ = write!(s, "{i:>6}  {:>24}", format_float(*l));
                if let Some(vs) = &result.eigenvectors {
                    let parts: Vec<String> = vs[i].iter().map(|x| format_float(*x)).collect();
                    let _ = write!(s, "  [{}]", parts.join(", "));
                }
                s.push('\n');
            }
            s
        }
    };
    Outcome::ok(stdout)
}

/// Parses `number:K`, `coherent:RE,IM` or `squeezed:RE,IM`.
pub fn parse_state_spec(spec: &str) -> Result<StateLabel, String> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("state spec '{spec}' must look like number:K, coherent:RE,IM or squeezed:RE,IM"))?;
    let complex = |rest: &str| -> Result<ComplexParam, String> {
        let (re, im) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected RE,IM after '{kind}:', got '{rest}'"))?;
        let re: f64 = re.trim().parse().map_err(|e| format!("bad real part '{re}': {e}"))?;
        let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part '{im}': {e}"))?;
        ComplexParam::new(re, im).map_err(|e| e.to_string())
    };
    match kind {
        "number" => rest
            .trim()
            .parse::<usize>()
            .map(StateLabel::Number)
            .map_err(|e| format!("bad number-state index '{rest}': {e}")),
        "coherent" => complex(rest).map(StateLabel::Coherent),
        "squeezed" => complex(rest).map(StateLabel::SqueezedVacuum),
        other => Err(format!("unknown state kind '{other}'")),
    }
}

fn state_label_text(label: StateLabel) -> String {
    match label {
        StateLabel::Number(k) => format!("number:{k}"),
        StateLabel::Coherent(p) => format!("coherent:{},{}", format_float(p.re), format_float(p.im)),
        StateLabel::SqueezedVacuum(p) => format!("squeezed:{},{}", format_float(p.re), format_float(p.im)),
    }
}

pub fn cmd_expect(state: &str, op: &str, n: usize, tol: Option<f64>, fmt: OutputFormat) -> Outcome {
    let label = match parse_state_spec(state) {
        Ok(l) => l,
        Err(e) => return Outcome::usage(e),
    };
    let (role, dim) = match (parse_role(op), parse_dim(n)) {
        (Ok(r), Ok(d)) => (r, d),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let cutoff = tol.unwrap_or(1e-12);
    let psi = match label {
        StateLabel::Number(k) => states::number_state(dim, k),
        StateLabel::Coherent(b) => Ok(states::coherent_state(dim, b)),
        StateLabel::SqueezedVacuum(z) => states::squeezed_vacuum(dim, z),
    };
    let psi = match psi {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let value = match states::expectation(&psi, &TruncatedOperator::build(role, dim)) {
        Ok(v) => v,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let reference = states::analytic_expectation(label, role);
    let deviation = (value - reference).norm();
    let show = |z: Complex64| -> String {
        if z.im.abs() > cutoff {
            format!("{} {} {}i", format_float(z.re), if z.im < 0.0 { "-" } else { "+" }, format_float(z.im.abs()))
        } else {
            format_float(z.re)
        }
    };
    let stdout = match fmt {
        OutputFormat::Json => {
            let mut params = BTreeMap::new();
            params.insert("state".into(), state_label_text(label));
            params.insert("op".into(), role.symbol().into());
            params.insert("n".into(), n.to_string());
            to_json(json!({
                "state": state_label_text(label),
                "operator": role.symbol(),
                "n": n,
                "value": {"re": format::clean(value.re), "im": format::clean(value.im)},
                "reference": {"re": format::clean(reference.re), "im": format::clean(reference.im)},
                "deviation": deviation,
                "manifest": RunManifest::new("expect", params),
            }))
        }
        OutputFormat::Csv => format!(
            "state,operator,n,value_re,value_im,reference_re,reference_im,deviation\n{},{},{},{},{},{},{},{}\n",
            state_label_text(label),
            role.symbol(),
            n,
            format_float(value.re),
            format_float(value.im),
            format_float(reference.re),
            format_float(reference.im),
            format_float(deviation)
        ),
        OutputFormat::Table => format!(
            "<{st}| {op} |{st}> at n={n}\nvalue      {}\nreference  {}\ndeviation  {}\n",
            show(value),
            show(reference),
            format_float(deviation),
            st = state_label_text(label),
            op = role.symbol(),
        ),
    };
    Outcome::ok(stdout)
}

pub fn cmd_scaling(
    kind: ScalingKind,
    n_min: usize,
    n_max: usize,
    points: usize,
    tol: Option<f64>,
    fmt: OutputFormat,
) -> Outcome {
    if n_min < scaling::MIN_SWEEP_DIM || n_max > scaling::MAX_SWEEP_DIM || n_min > n_max {
        return Outcome::usage(format!(
            "need {} <= n_min <= n_max <= {}, got {n_min}..{n_max}",
            scaling::MIN_SWEEP_DIM,
            scaling::MAX_SWEEP_DIM
        ));
    }
    if points < scaling::MIN_FIT_SAMPLES {
        return Outcome::usage(format!(
            "need at least {} points, got {points}",
            scaling::MIN_FIT_SAMPLES
        ));
    }
    if let Err(e) = scaling::geometric_grid(n_min, n_max, points) {
        return Outcome::usage(e.to_string());
    }
    let abs_tol = match positive_tol(tol) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let fit = match kind {
        ScalingKind::LambdaMax => scaling::lambda_max_report(n_min, n_max, points, abs_tol),
        ScalingKind::Gap => scaling::gap_law_report(n_min, n_max, points, abs_tol),
    };
    let fit: ScalingFit = match fit {
        Ok(f) => f,
        Err(e @ (Error::InvalidParameter(_) | Error::TooFewSamples { .. })) => {
            return Outcome::usage(e.to_string())
        }
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let kind_name = match kind {
        ScalingKind::LambdaMax => "lambda-max",
        ScalingKind::Gap => "gap",
    };
    let stdout = match fmt {
        OutputFormat::Json => {
            let mut params = BTreeMap::new();
            params.insert("kind".into(), kind_name.into());
            params.insert("n_min".into(), n_min.to_string());
            params.insert("n_max".into(), n_max.to_string());
            params.insert("points".into(), points.to_string());
            params.insert("tol".into(), format_float(abs_tol));
            to_json(json!({
                "kind": kind_name,
                "samples": fit.samples.iter().map(|&(n, v)| json!({"n": n as u64, "value": v})).collect::<Vec<_>>(),
                "fit": {
                    "exponent": fit.exponent,
                    "prefactor": fit.prefactor,
                    "rms_residual": fit.rms_residual,
                    "n_min": fit.n_range.0 as u64,
                    "n_max": fit.n_range.1 as u64,
                },
                "manifest": RunManifest::new("scaling", params),
            }))
        }
        OutputFormat::Csv => {
            let mut s = String::from("n,value\n");
            for &(n, v) in &fit.samples {
                let _ = writeln!(s, "{},{}", n as u64, format_float(v));
            }
            let _ = write!(
                s,
                "\nexponent,prefactor,rms_residual,n_min,n_max\n{},{},{},{},{}\n",
                format_float(fit.exponent),
                format_float(fit.prefactor),
                format_float(fit.rms_residual),
                fit.n_range.0 as u64,
                fit.n_range.1 as u64
            );
            s
        }
        OutputFormat::Table => {
            let mut s = format!("{kind_name} over n in [{n_min}, {n_max}], {points} points\n");
            let _ = writeln!(s, "{:>8}  {:>24}", "n", "value");
            for &(n, v) in &fit.samples {
                let _ = writeln!(s, "{:>8}  {:>24}", n as u64, format_float(v));
            }
            let _ = writeln!(
                s,
                "fit: value = {} * n^{}  (rms log residual {})",
                format_float(fit.prefactor),
                format_float(fit.exponent),
                format_float(fit.rms_residual)
            );
            s
        }
    };
    Outcome::ok(stdout)
}
