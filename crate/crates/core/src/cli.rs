//! Command-line front end: loads a scenario, runs one check, emits a report.
//!
//! Exit status: 0 when every decision passes, 1 when a check fails,
//! 2 for usage and parse errors, 3 for a numerical singularity.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cyclic::{cohomologous, is_cyclic_cocycle, periodicity_witness, CyclicCochain};
use crate::error::{Error, Result};
use crate::fredholm::FredholmModule;
use crate::homotopy::{homotopy_check, normalize_conjugate, simpson_steps, validate_path};
use crate::omega::chern_character;
use crate::par;
use crate::scenario::{CochainFile, Scenario, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "fredholm-chern",
    version,
    about = "Chern characters of finite Fredholm modules and their certificates"
)]
pub struct Cli {
    /// Absolute tolerance on residuals, scaled by max |entry|
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Evaluate tensor entries on all cores
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra, the module axioms and, if present, the path
    Validate { scenario: PathBuf },
    /// Emit the Chern character of the given even degree
    Chern {
        scenario: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Check that the character is a cyclic cocycle
    Cocycle {
        scenario: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Compare Sτⁿ with τⁿ⁺² through the explicit coboundary
    Periodicity {
        scenario: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Integrate the transgression along the scenario's path
    Homotopy {
        scenario: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 64)]
        steps: usize,
    },
    /// Decide whether two cochain files differ by a cyclic coboundary
    Cohomologous {
        scenario: PathBuf,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Chern { .. } => "chern",
            Command::Cocycle { .. } => "cocycle",
            Command::Periodicity { .. } => "periodicity",
            Command::Homotopy { .. } => "homotopy",
            Command::Cohomologous { .. } => "cohomologous",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 over the bytes of every input file, in argument order.
    pub inputs_digest: String,
    pub residuals: BTreeMap<String, f64>,
    pub decisions: BTreeMap<String, bool>,
    pub tolerance: f64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainFile>,
}

impl CheckReport {
    fn new(command: &str, digest: String, tolerance: f64) -> Self {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs_digest: digest,
            residuals: BTreeMap::new(),
            decisions: BTreeMap::new(),
            tolerance,
            elapsed_ms: 0.0,
            cochains: BTreeMap::new(),
        }
    }

    fn residual(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), value);
    }

    fn decide(&mut self, name: &str, value: bool) {
        self.decisions.insert(name.to_string(), value);
    }

    fn cochain(&mut self, name: &str, psi: &CyclicCochain) {
        self.cochains
            .insert(name.to_string(), CochainFile::from_cochain(psi));
    }

    pub fn passed(&self) -> bool {
        self.decisions.values().all(|&d| d)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "command: {}\ninputs: {}\ntolerance: {:e}\n",
            self.command, self.inputs_digest, self.tolerance
        );
        for (k, v) in &self.residuals {
            s += &format!("residual {k} = {v:.6e}\n");
        }
        for (k, psi) in &self.cochains {
            s += &format!("cochain {k}: degree {}\n", psi.degree);
        }
        for (k, v) in &self.decisions {
            s += &format!("{} {k}\n", if *v { "PASS" } else { "FAIL" });
        }
        s += &format!("elapsed: {:.1} ms\n", self.elapsed_ms);
        s
    }
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Singular { .. } => 3,
        Error::Precondition(_) => 1,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidInput(_) => "invalid_input",
        Error::Domain(_) => "domain",
        Error::Structure(_) => "structure",
        Error::UnsupportedOperand(_) => "unsupported_operand",
        Error::Precondition(_) => "precondition",
        Error::Singular { .. } => "singular",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
    }
}

fn digest(paths: &[&Path]) -> Result<String> {
    let mut h = Sha256::new();
    for p in paths {
        h.update(fs::read(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?);
    }
    Ok(hex::encode(h.finalize()))
}

fn require_even(degree: usize) -> Result<()> {
    if degree % 2 == 1 {
        return Err(Error::Domain(format!("degree must be even, got {degree}")));
    }
    Ok(())
}

/// Loads a scenario and aborts unless the algebra and module validate.
fn load_valid(path: &Path, tol: f64) -> Result<Scenario> {
    let sc = Scenario::load(path)?;
    let alg = sc.module.algebra().validate();
    if !alg.passes(tol) {
        return Err(Error::Precondition(format!(
            "algebra fails validation: associativity residual {:.3e}, unit residual {:?}",
            alg.associativity_residual, alg.unit_residual
        )));
    }
    let r = sc.module.validate(tol);
    if !r.passed {
        return Err(Error::Precondition(format!(
            "module fails validation: ||F²-id|| = {:.3e}, ||Fε+εF|| = {:.3e}, homomorphism residual {:.3e}",
            r.f_squared_residual, r.anticommutation_residual, r.homomorphism_residual
        )));
    }
    Ok(sc)
}

fn validate_into(report: &mut CheckReport, fm: &FredholmModule, tol: f64) {
    let alg = fm.algebra().validate();
    report.residual("algebra.associativity", alg.associativity_residual);
    if let Some(u) = alg.unit_residual {
        report.residual("algebra.unit", u);
    }
    report.decide("algebra.valid", alg.passes(tol));
    let r = fm.validate(tol);
    report.residual("module.f_squared", r.f_squared_residual);
    report.residual("module.anticommutation", r.anticommutation_residual);
    report.residual("module.homomorphism", r.homomorphism_residual);
    for (label, norm) in &r.commutator_schatten_norms {
        report.residual(&format!("module.commutator_schatten.{label}"), *norm);
    }
    report.decide("module.valid", r.passed);
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli) -> Result<CheckReport> {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {}",
            cli.tolerance
        )));
    }
    par::set_parallel(cli.parallel);
    let start = Instant::now();
    let tol = cli.tolerance;
    let name = cli.command.name();
    let mut report = match &cli.command {
        Command::Validate { scenario } => {
            let mut report = CheckReport::new(name, digest(&[scenario])?, tol);
            let sc = Scenario::load(scenario)?;
            validate_into(&mut report, &sc.module, tol);
            if let Some(path) = &sc.path {
                let steps = 64;
                let v = validate_path(path, steps, tol)?;
                report.residual("path.f_squared", v.worst_f_squared());
                report.residual("path.anticommutation", v.worst_anticommutation());
                report.residual("path.homomorphism", v.worst_homomorphism());
                report.decide("path.valid", v.passed);
            }
            report
        }
        Command::Chern { scenario, degree } => {
            require_even(*degree)?;
            let mut report = CheckReport::new(name, digest(&[scenario])?, tol);
            let sc = load_valid(scenario, tol)?;
            report.cochain("tau", &chern_character(&sc.module, *degree)?);
            report
        }
        Command::Cocycle { scenario, degree } => {
            require_even(*degree)?;
            let mut report = CheckReport::new(name, digest(&[scenario])?, tol);
            let sc = load_valid(scenario, tol)?;
            let tau = chern_character(&sc.module, *degree)?;
            let r = is_cyclic_cocycle(&tau, tol);
            report.residual("cyclicity", r.cyclicity_residual);
            report.residual("coboundary", r.coboundary_residual);
            report.residual("scale", r.scale);
            report.decide("cocycle", r.passed);
            report
        }
        Command::Periodicity { scenario, degree } => {
            require_even(*degree)?;
            let mut report = CheckReport::new(name, digest(&[scenario])?, tol);
            let sc = load_valid(scenario, tol)?;
            let w = periodicity_witness(&sc.module, *degree)?;
            let scale = w.scale();
            report.residual("witness", w.residual);
            report.residual("scale", scale);
            report.decide("witness", w.residual <= tol * scale);
            let class = cohomologous(&w.s_tau, &w.tau_next, tol)?;
            report.residual("cohomologous", class.residual);
            report.decide("cohomologous", class.cohomologous);
            report.cochain("s_tau", &w.s_tau);
            report.cochain("tau_next", &w.tau_next);
            report.cochain("phi", &w.phi);
            report
        }
        Command::Homotopy {
            scenario,
            degree,
            steps,
        } => {
            require_even(*degree)?;
            let mut report = CheckReport::new(name, digest(&[scenario])?, tol);
            let sc = load_valid(scenario, tol)?;
            let path = sc
                .path
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("scenario has no path".into()))?;
            let normalized = normalize_conjugate(path)?;
            let v = validate_path(&normalized, simpson_steps(*steps), tol)?;
            report.residual("path.f_squared", v.worst_f_squared());
            report.residual("path.homomorphism", v.worst_homomorphism());
            report.decide("path.valid", v.passed);
            if !v.passed {
                return Err(Error::Precondition(format!(
                    "path fails validation at t = {:?}: worst homomorphism residual {:.3e}",
                    v.failures(),
                    v.worst_homomorphism()
                )));
            }
            let h = homotopy_check(&normalized, *degree, *steps, tol)?;
            report.residual("b0", h.b0_residual);
            report.residual("big_b", h.big_b_residual);
            report.residual("character_change", h.character_change);
            report.residual("scale", h.scale);
            report.residual("cohomologous", h.periodicity_class.residual);
            report.decide("b0", h.b0_residual <= tol * h.scale);
            report.decide(
                "big_b",
                h.big_b_residual <= tol * h.scale * (*degree as f64 + 1.0),
            );
            report.decide("cohomologous", h.periodicity_class.cohomologous);
            report
        }
        Command::Cohomologous {
            scenario,
            lhs,
            rhs,
            degree,
        } => {
            let mut report = CheckReport::new(name, digest(&[scenario, lhs, rhs])?, tol);
            let sc = Scenario::load(scenario)?;
            let alg = sc.module.algebra();
            let a = CochainFile::load(lhs)?.to_cochain(alg, &lhs.display().to_string())?;
            let b = CochainFile::load(rhs)?.to_cochain(alg, &rhs.display().to_string())?;
            for (psi, p) in [(&a, lhs), (&b, rhs)] {
                if psi.degree() != *degree {
                    return Err(Error::Parse {
                        path: format!("{}: degree", p.display()),
                        message: format!("expected degree {degree}, found {}", psi.degree()),
                    });
                }
            }
            let d = cohomologous(&a, &b, tol)?;
            report.residual("coboundary", d.residual);
            report.residual("scale", d.scale);
            report.decide("cohomologous", d.cohomologous);
            if let Some(w) = &d.witness {
                report.cochain("witness", w);
            }
            report
        }
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn render(cli: &Cli, report: &CheckReport) -> String {
    match cli.output {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("plain data") + "\n",
        OutputFormat::Text => report.to_text(),
    }
}

fn report_error(cli: &Cli, err: &Error) {
    if cli.output == OutputFormat::Text {
        eprintln!("error: {err}");
    } else {
        let body = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": cli.command.name(),
            "error": { "kind": error_kind(err), "message": err.to_string() },
        });
        eprintln!(
            "{}",
            serde_json::to_string_pretty(&body).expect("plain data")
        );
    }
}

/// Parses arguments, runs, prints, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &render(&cli, &report)) {
                report_error(&cli, &e);
                return 2;
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report_error(&cli, &e);
            exit_code(&e)
        }
    }
}
