//! Command line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 scale limit,
//! 4 verification failure.

pub mod report;
pub mod spec;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{center_equations, idempotents, zero};
use crate::demazure::enumerate_roots;
use crate::error::Error;
use crate::exec::Execution;
use crate::monoid::MonoidStructure;
use crate::oracle::{
    check_associativity, check_group_axioms, differential_example_formulas, grid_idempotents, parse_rationals,
    predicted_on_grid, ExampleFormula, OracleReport,
};
use crate::points::ToricPoint;

pub use report::Report;
pub use spec::{parse_spec, MonoidSpec, SpecError};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SCALE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Environment variable overriding the point budget.
pub const BUDGET_ENV: &str = "TORIMON_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "torimon", version, about = "Corank-one monoid structures on affine toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cone data, idempotents, zero element and center.
    Classify(Opts),
    /// Idempotent locus; with --grid also the brute-force grid search.
    Idempotents(Opts),
    /// Center equations.
    Center(Opts),
    /// Zero element.
    Zero(Opts),
    /// Demazure roots of a ray in a coordinate box.
    Roots(Opts),
    /// Product of two points given by generator values.
    Multiply(Opts),
    /// Seeded oracle checks.
    Verify(Opts),
    /// classify and verify combined.
    Report(Opts),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Args, Debug)]
struct Opts {
    /// Monoid spec (JSON).
    #[arg(long, value_name = "FILE")]
    spec: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Ray index for `roots` (defaults to the distinguished ray).
    #[arg(long)]
    ray: Option<usize>,
    /// Coordinate bound for `roots`.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// First factor, comma-separated generator values.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Second factor, comma-separated generator values.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Grid of values for the idempotent search, e.g. `-1,0,1/2,1,2`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Spec(SpecError::Validation(Error::ScaleLimit { .. })) | CliError::Core(Error::ScaleLimit { .. }) => {
                EXIT_SCALE
            }
            CliError::Spec(_) | CliError::Core(_) => EXIT_VALIDATION,
        }
    }
}

fn parse_point(m: &MonoidStructure, flag: &str, text: Option<&String>) -> Result<ToricPoint, CliError> {
    let text = text.ok_or_else(|| CliError::Usage(format!("multiply needs --{flag}")))?;
    let values =
        parse_rationals(text).ok_or_else(|| CliError::Usage(format!("--{flag}: cannot parse `{text}` as rationals")))?;
    let x = ToricPoint::new(values);
    m.variety().check_len(&x)?;
    if !m.variety().try_validate(&x, crate::points::DEFAULT_DEGREE_BOUND)? {
        return Err(Error::InvalidPoint(format!("--{flag} = {x} is not a point of the variety")).into());
    }
    Ok(x)
}

/// Grid oracle against the predicted idempotent set.
fn grid_check(m: &MonoidStructure, values: &[num_rational::BigRational], exec: Execution) -> Result<OracleReport, CliError> {
    let set = idempotents(m)?;
    let found = grid_idempotents(m, values, exec)?;
    let predicted = predicted_on_grid(m, &set, values)?;
    let mut r = OracleReport { checked: found.len().max(predicted.len()), ..Default::default() };
    let missing = predicted.iter().filter(|p| !found.contains(p));
    let extra = found.iter().filter(|p| !predicted.contains(p));
    for p in missing.chain(extra) {
        r.failed += 1;
        r.witnesses.push(crate::oracle::Witness {
            check: "grid idempotent set differs from prediction".into(),
            inputs: vec![p.clone()],
            lhs: p.clone(),
            rhs: ToricPoint::new(Vec::new()),
        });
    }
    r.passed = r.checked.saturating_sub(r.failed);
    Ok(r)
}

fn verification(
    m: &MonoidStructure,
    opts: &Opts,
    grid: Option<&[num_rational::BigRational]>,
) -> Result<report::VerificationSection, CliError> {
    let exec = Execution::default();
    let mut checks: BTreeMap<String, OracleReport> = BTreeMap::new();
    checks.insert("associativity".into(), check_associativity(m, opts.samples, opts.seed, exec)?);
    checks.insert("group_axioms".into(), check_group_axioms(m, opts.samples, opts.seed, exec)?);
    for (name, which) in [("affspace_formula", ExampleFormula::Affspace), ("quadratic_cone_formula", ExampleFormula::QuadraticCone)] {
        match differential_example_formulas(m, which, opts.samples, opts.seed, exec) {
            Ok(r) => {
                checks.insert(name.into(), r);
            }
            Err(Error::TemplateMismatch(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(values) = grid {
        checks.insert("grid_idempotents".into(), grid_check(m, values, exec)?);
    }
    let all_passed = checks.values().all(OracleReport::is_clean);
    Ok(report::VerificationSection {
        seed: opts.seed,
        samples: opts.samples,
        checks: checks.iter().map(|(k, v)| (k.clone(), report::check_entry(v))).collect(),
        all_passed,
    })
}

fn build_report(command: &str, opts: &Opts, budget_env: Option<&str>) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(&opts.spec)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", opts.spec.display())))?;
    let spec = parse_spec(&text)?;
    let override_points = match budget_env {
        Some(v) => Some(
            v.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a nonnegative integer, got `{v}`")))?,
        ),
        None => None,
    };
    let m = spec.build(spec.budget(override_points))?;
    let (names, warning) = spec.names(m.variety().generator_count());
    let mut r = Report::new(command, warning.into_iter().collect());
    let grid = match &opts.grid {
        Some(g) => Some(parse_rationals(g).ok_or_else(|| CliError::Usage(format!("--grid: cannot parse `{g}`")))?),
        None => None,
    };

    let with_cone = matches!(command, "classify" | "idempotents" | "report");
    if with_cone {
        r.cone = Some(report::cone_section(&m, &names));
    }
    if matches!(command, "classify" | "idempotents" | "report") {
        r.idempotents = Some(report::idempotent_section(&idempotents(&m)?, &names));
    }
    if matches!(command, "classify" | "zero" | "report") {
        r.zero = Some(report::zero_section(&zero(&m)?));
    }
    if matches!(command, "classify" | "center" | "report") {
        r.center = Some(report::center_section(&center_equations(&m)?, &names));
    }
    match command {
        "roots" => {
            let ray = opts.ray.unwrap_or(spec.distinguished_ray);
            let bound = opts
                .bound
                .or(spec.root_bound())
                .ok_or_else(|| CliError::Usage("roots needs --bound (or budgets.root_bound in the spec)".into()))?;
            let roots = enumerate_roots(m.cone(), ray, bound, m.variety().budget())?;
            r.roots = Some(report::roots_section(ray, bound, &roots));
        }
        "multiply" => {
            let x = parse_point(&m, "x", opts.x.as_ref())?;
            let y = parse_point(&m, "y", opts.y.as_ref())?;
            let p = m.multiply(&x, &y)?;
            r.product = Some(report::ProductSection {
                x: report::point_strings(&x),
                y: report::point_strings(&y),
                product: report::point_strings(&p),
            });
        }
        "verify" | "report" => {
            r.verification = Some(verification(&m, opts, grid.as_deref())?);
        }
        "idempotents" => {
            if let Some(values) = &grid {
                let g = grid_check(&m, values, Execution::default())?;
                r.verification = Some(report::VerificationSection {
                    seed: opts.seed,
                    samples: 0,
                    all_passed: g.is_clean(),
                    checks: BTreeMap::from([("grid_idempotents".to_string(), report::check_entry(&g))]),
                });
            }
        }
        _ => {}
    }
    Ok(r)
}

/// Run the tool on `args` (including the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, budget_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
                    EXIT_USAGE
                }
            };
        }
    };
    let (name, opts) = match &cli.command {
        Command::Classify(o) => ("classify", o),
        Command::Idempotents(o) => ("idempotents", o),
        Command::Center(o) => ("center", o),
        Command::Zero(o) => ("zero", o),
        Command::Roots(o) => ("roots", o),
        Command::Multiply(o) => ("multiply", o),
        Command::Verify(o) => ("verify", o),
        Command::Report(o) => ("report", o),
    };
    match build_report(name, opts, budget_env) {
        Ok(r) => {
            let text = match opts.format {
                Format::Json => r.to_json(),
                Format::Text => report::to_text(&r),
            };
            let _ = out.write_all(text.as_bytes());
            for w in &r.validation.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            match &r.verification {
                Some(v) if !v.all_passed => EXIT_VERIFICATION,
                _ => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
