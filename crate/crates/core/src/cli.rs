//! The `bellgeom` command line: `measure`, `sample`, `verify` and `filter`.
//!
//! Exit codes are part of the interface: 0 success, 1 input error,
//! 2 non-physical state, 3 verification failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::geometry::{sample_states, Classification, Region};
use crate::io::{fmt12, read_matrix_file};
use crate::measures::{
    concurrence_general, filter_concurrence_law, measure, negativity_general, MeasureReport,
};
use crate::qmat::{hermitian_eigen, ComplexMatrix, C64, PSD_CLAMP};
use crate::states::{from_standard, is_standard_form, DensityMatrix, LocalFilter, StandardState};
use crate::verify::{run_verification, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NON_PHYSICAL: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Tolerance for matrices read from files.
pub const FILE_TOL: f64 = 1e-8;

pub const CSV_HEADER: &str =
    "r_x,r_y,r_z,classification,concurrence,negativity,euclid_distance,hs_distance";

#[derive(Debug, Parser)]
#[command(
    name = "bellgeom",
    version,
    about = "Entanglement measures and separability geometry for two qubits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report concurrence, negativity and distances for one state.
    Measure(StateInput),
    /// Sample a region of the parameter cube and write one CSV row per state.
    Sample {
        /// Number of accepted states
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One of cube, physical, entangled, separable
        #[arg(long, default_value = "physical")]
        region: String,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every distance relation numerically over seeded samples.
    Verify {
        /// Samples per check
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare the predicted and actual concurrence after a local filter.
    Filter {
        #[command(flatten)]
        state: StateInput,
        /// Filter on the first qubit: four comma-separated entries, row-major, each `re` or `re:im`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Filter on the second qubit, same format as `--a`.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateInput {
    /// Standard-form coordinates `x,y,z`.
    #[arg(long, allow_hyphen_values = true, value_name = "X,Y,Z")]
    pub r: Option<String>,
    /// JSON matrix file.
    #[arg(long, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
}

fn parse_number(token: &str, what: &str) -> Result<f64> {
    let t = token.trim();
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse(format!("invalid number `{t}` in {what}"))),
    }
}

/// Parses `x,y,z`.
pub fn parse_triple(text: &str) -> Result<StandardState> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "--r expects three comma-separated numbers, got `{text}`"
        )));
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| parse_number(p, "--r"))
        .collect::<Result<_>>()?;
    Ok(StandardState::new(v[0], v[1], v[2]))
}

/// Parses four row-major entries, each `re` or `re:im`, into a 2×2 matrix.
pub fn parse_2x2(text: &str, flag: &str) -> Result<ComplexMatrix> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "{flag} expects four comma-separated entries, got `{text}`"
        )));
    }
    let mut entries = Vec::with_capacity(4);
    for p in parts {
        let z = match p.split_once(':') {
            Some((re, im)) => C64::new(parse_number(re, flag)?, parse_number(im, flag)?),
            None => C64::new(parse_number(p, flag)?, 0.0),
        };
        entries.push(z);
    }
    ComplexMatrix::new(2, 2, entries)
}

enum LoadedState {
    Standard(StandardState),
    General(ComplexMatrix),
}

fn load_state(input: &StateInput) -> Result<LoadedState> {
    if let Some(r) = &input.r {
        return Ok(LoadedState::Standard(parse_triple(r)?));
    }
    let path = input.matrix.as_ref().expect("clap enforces one input");
    let m = read_matrix_file(path)?;
    let deviation = m.hermiticity_error();
    if deviation > FILE_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > FILE_TOL || tr.im.abs() > FILE_TOL {
        return Err(Error::NotUnitTrace { trace: tr.re });
    }
    match is_standard_form(&DensityMatrix::unchecked(m.clone()), FILE_TOL)? {
        Some(s) => Ok(LoadedState::Standard(s)),
        None => Ok(LoadedState::General(m)),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

fn write_report(out: &mut dyn Write, path: &str, report: &MeasureReport) -> std::io::Result<()> {
    let [x, y, z] = report.state.r;
    writeln!(out, "path: {path}")?;
    writeln!(out, "r: {},{},{}", fmt12(x), fmt12(y), fmt12(z))?;
    writeln!(out, "classification: {}", report.classification.name())?;
    if let Classification::Entangled(v) = report.classification {
        writeln!(out, "corner: {v}")?;
    }
    if report.classification.is_physical() {
        writeln!(out, "concurrence: {}", opt(report.concurrence))?;
        writeln!(out, "negativity: {}", opt(report.negativity))?;
        writeln!(out, "euclid_distance: {}", opt(report.euclidean_distance))?;
        writeln!(out, "hs_distance: {}", opt(report.hs_distance))?;
    }
    Ok(())
}

fn cmd_measure(input: &StateInput, out: &mut dyn Write) -> Result<i32> {
    match load_state(input)? {
        LoadedState::Standard(s) => {
            let report = measure(&s);
            write_report(out, "standard", &report)?;
            Ok(if report.classification.is_physical() {
                EXIT_OK
            } else {
                EXIT_NON_PHYSICAL
            })
        }
        LoadedState::General(m) => {
            writeln!(out, "path: general")?;
            let lowest = hermitian_eigen(&m)?.min();
            if lowest < -PSD_CLAMP {
                writeln!(out, "classification: nonphysical")?;
                writeln!(out, "min_eigenvalue: {}", fmt12(lowest))?;
                return Ok(EXIT_NON_PHYSICAL);
            }
            let d = DensityMatrix::unchecked(m);
            let c = concurrence_general(&d)?;
            let n = negativity_general(&d)?;
            // Peres-Horodecki: for two qubits, PPT is equivalent to separable.
            let class = if n > 0.0 { "entangled" } else { "separable" };
            writeln!(out, "classification: {class}")?;
            writeln!(out, "concurrence: {}", fmt12(c))?;
            writeln!(out, "negativity: {}", fmt12(n))?;
            Ok(EXIT_OK)
        }
    }
}

/// One CSV line (without newline) for a sampled state.
pub fn csv_row(report: &MeasureReport) -> String {
    let [x, y, z] = report.state.r;
    [
        fmt12(x),
        fmt12(y),
        fmt12(z),
        report.classification.name().to_string(),
        opt(report.concurrence),
        opt(report.negativity),
        opt(report.euclidean_distance),
        opt(report.hs_distance),
    ]
    .join(",")
}

pub fn sample_csv(n: usize, seed: u64, region: Region) -> Result<String> {
    let states = sample_states(n, seed, region)?;
    let mut text = String::with_capacity(128 * (n + 1));
    text.push_str(CSV_HEADER);
    text.push('\n');
    for s in &states {
        text.push_str(&csv_row(&measure(s)));
        text.push('\n');
    }
    Ok(text)
}

fn cmd_sample(
    n: usize,
    seed: u64,
    region: &str,
    path: &PathBuf,
    out: &mut dyn Write,
) -> Result<i32> {
    let region: Region = region.parse()?;
    let text = sample_csv(n, seed, region)?;
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    writeln!(out, "wrote {n} rows to {}", path.display())?;
    Ok(EXIT_OK)
}

fn cmd_verify(n: usize, seed: u64, inject_fault: bool, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = VerifyConfig::new(n, seed);
    cfg.inject_fault = inject_fault;
    let summary = run_verification(&cfg)?;
    writeln!(out, "{summary}")?;
    Ok(if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_filter(input: &StateInput, a: &str, b: &str, out: &mut dyn Write) -> Result<i32> {
    let f = LocalFilter::new(parse_2x2(a, "--a")?, parse_2x2(b, "--b")?)?;
    let m = match load_state(input)? {
        LoadedState::Standard(s) => from_standard(&s).into_matrix(),
        LoadedState::General(m) => m,
    };
    let d = DensityMatrix::with_tolerance(m, FILE_TOL)?;
    let law = filter_concurrence_law(&d, &f)?;
    writeln!(out, "concurrence: {}", fmt12(law.initial))?;
    writeln!(out, "predicted: {}", fmt12(law.predicted))?;
    writeln!(out, "actual: {}", fmt12(law.actual))?;
    writeln!(out, "deviation: {:e}", law.deviation())?;
    if law.exceeds_unity() {
        writeln!(out, "warning: predicted concurrence exceeds 1")?;
    }
    Ok(if law.holds() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonPhysical(..) | Error::NotPsd { .. } => EXIT_NON_PHYSICAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv`, runs the command, and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Measure(input) => cmd_measure(input, out),
        Command::Sample {
            n,
            seed,
            region,
            out: path,
        } => cmd_sample(*n, *seed, region, path, out),
        Command::Verify {
            n,
            seed,
            inject_fault,
        } => cmd_verify(*n, *seed, *inject_fault, out),
        Command::Filter { state, a, b } => cmd_filter(state, a, b, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::FilterNotInvertible { .. }) {
                let _ = writeln!(err, "filter not invertible");
            }
            exit_code_for(&e)
        }
    }
}
