//! Subcommand implementations. Each writes its normal output to `out` and
//! returns the exit code; failures come back as [`CliError`].

use std::io::Write;

use twomode::fock::{pin_conventions, verify_single, verify_state, VerificationRecord, VerifyTolerances};
use twomode::measures::MeasureReport;
use twomode::states::{make, GaussianCov, StateSpec};
use twomode::Error;

use crate::args::{Command, Grid, SpecArgs, SweepParam};
use crate::covfile::CovFile;
use crate::error::{exit, CliError};
use crate::format::{self, DEFAULT_DIGITS};
use crate::report::{Report, Unit};

/// Largest cutoff accepted for two-mode verification (dimension 1681).
pub const MAX_CUTOFF_TWO: usize = 40;
/// Largest cutoff accepted for single-mode verification.
pub const MAX_CUTOFF_ONE: usize = 400;
/// Cutoff of the generator sign self-test run before verification.
const PIN_CUTOFF: usize = 20;

pub const SWEEP_HEADER: [&str; 9] =
    ["param", "mu", "S_V", "I", "n_minus", "n_plus", "nt_minus", "eof", "log_neg"];

pub fn execute(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Analyze { path, bits, precision } => analyze(&path, unit(bits), precision.into(), out),
        Command::Validate { path } => validate(&path, out),
        Command::Make { spec, label, precision } => make_file(&spec, label, precision.into(), out),
        Command::Sweep { spec, param, range, out: path, bits } => match path {
            Some(p) => {
                let mut file = std::fs::File::create(&p)
                    .map_err(|e| CliError::Failed(format!("{}: {e}", p.display())))?;
                sweep(&spec, param, &range, unit(bits), &mut file)
            }
            None => sweep(&spec, param, &range, unit(bits), out),
        },
        Command::Verify { path, spec, cutoff } => verify(path.as_deref(), &spec, cutoff, out),
    }
}

fn unit(bits: bool) -> Unit {
    if bits {
        Unit::Bits
    } else {
        Unit::Nats
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Failed(format!("write failed: {e}"))
}

fn required(spec: &SpecArgs) -> Result<StateSpec, CliError> {
    spec.spec().ok_or_else(|| CliError::OutOfRange("--kind is required".into()))
}

pub fn analyze(path: &str, unit: Unit, digits: usize, out: &mut dyn Write) -> Result<u8, CliError> {
    let file = CovFile::read(path)?;
    let report = Report::of(&file.covariance()?, file.label.clone(), unit)?;
    out.write_all(report.render(digits).as_bytes()).map_err(io)?;
    Ok(exit::OK)
}

pub fn validate(path: &str, out: &mut dyn Write) -> Result<u8, CliError> {
    let file = CovFile::read(path)?;
    let margin = file.uncertainty_margin()?;
    file.covariance()?;
    writeln!(out, "valid: minimum eigenvalue of σ + iΩ/2 is {}", format::sig(margin, DEFAULT_DIGITS))
        .map_err(io)?;
    Ok(exit::OK)
}

pub fn make_file(
    spec: &SpecArgs,
    label: Option<String>,
    digits: usize,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let sigma = make(&required(spec)?)?;
    out.write_all(CovFile::from_cov(&sigma, label).render(digits).as_bytes()).map_err(io)?;
    Ok(exit::OK)
}

pub fn sweep(
    spec: &SpecArgs,
    param: SweepParam,
    grid: &Grid,
    unit: Unit,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let base = required(spec)?;
    if base.modes != 2 {
        return Err(CliError::OutOfRange("sweep needs a two-mode state".into()));
    }
    let mut rows = Vec::new();
    for x in grid.points() {
        let mut s = base.clone();
        param.set(&mut s, x);
        let sigma = make(&s)?.into_two_mode()?;
        let m = MeasureReport::of(&sigma)?;
        let num = |v: f64| format::sig(v, DEFAULT_DIGITS);
        rows.push([
            num(x),
            num(m.purity),
            num(unit.scale(m.von_neumann)),
            num(unit.scale(m.mutual_information)),
            num(m.n_minus),
            num(m.n_plus),
            num(m.nt_minus),
            m.eof.map(|e| num(unit.scale(e))).unwrap_or_default(),
            num(unit.scale(m.log_negativity)),
        ]);
    }
    let mut w = csv::Writer::from_writer(out);
    let csv = |e: csv::Error| CliError::Failed(format!("write failed: {e}"));
    w.write_record(SWEEP_HEADER).map_err(csv)?;
    for row in &rows {
        w.write_record(row).map_err(csv)?;
    }
    w.flush().map_err(io)?;
    Ok(exit::OK)
}

pub fn verify(
    path: Option<&str>,
    spec: &SpecArgs,
    cutoff: usize,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let (label, sigma) = match (path, spec.spec()) {
        (Some(p), _) => {
            let file = CovFile::read(p)?;
            let label = file.label.clone().unwrap_or_else(|| p.to_string());
            (label, file.covariance()?)
        }
        (None, Some(s)) => (s.kind.to_string(), make(&s)?),
        (None, None) => return Err(CliError::OutOfRange("give a covariance file or --kind".into())),
    };
    let limit = if sigma.two_mode().is_some() { MAX_CUTOFF_TWO } else { MAX_CUTOFF_ONE };
    if !(1..=limit).contains(&cutoff) {
        return Err(CliError::OutOfRange(format!(
            "cutoff {cutoff} outside 1..={limit} for a {}-mode state",
            if limit == MAX_CUTOFF_TWO { "two" } else { "single" }
        )));
    }
    match pin_conventions(PIN_CUTOFF) {
        Err(e @ Error::ConventionMismatch { .. }) => {
            eprintln!("twomode: {e}");
            return Ok(exit::VERIFY_BREACH);
        }
        other => other?,
    }
    let tol = VerifyTolerances::default();
    let record: VerificationRecord = match &sigma {
        GaussianCov::Two(s) => verify_state(&label, s, cutoff, &tol)?,
        GaussianCov::Single(s) => verify_single(&label, s, cutoff, &tol)?,
    };
    out.write_all(format::to_text(&record, DEFAULT_DIGITS).as_bytes()).map_err(io)?;
    if record.pass {
        Ok(exit::OK)
    } else {
        eprintln!("twomode: verification gaps exceed tolerances");
        Ok(exit::VERIFY_BREACH)
    }
}
