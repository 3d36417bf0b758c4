//! Command-line front end. Data goes to `out`, diagnostics to `err`; the
//! return value is the process exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bundles::{make_bundle, rr_chi_p2, rr_chi_p3, SerreBundle};
use crate::field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
use crate::ideals::{self, GradedBetti};
use crate::schemes::{random_scheme, Constraint, SchemeFile, SchemeSpec, ZeroDimScheme};
use crate::verifier::{run_suite, Suite};

pub const DEFAULT_SEED: u64 = 1729;
/// Overrides the default prime for commands that take `--field fp`.
pub const PRIME_ENV: &str = "P2B_PRIME";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "p2bundles", version, about = "Rank-two bundles on the projective plane from zero-dimensional schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    P2,
    P3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Tcv2,
    Resolutions,
    Remarks,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Tcv2 => Suite::Tcv2,
            SuiteArg::Resolutions => Suite::Resolutions,
            SuiteArg::Remarks => Suite::Remarks,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomology table of the bundle built from a scheme.
    Cohomology {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Twist window `a..b`; must contain the whole H^1 support.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hilbert function, Betti numbers and resolution label of a scheme.
    Classify {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs the verifier; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// `fp`, `fp:P` or `q`.
        #[arg(long, default_value = "fp")]
        field: String,
        /// Defaults to json.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exact Riemann-Roch Euler characteristic of a twisted rank-two bundle.
    Rr {
        #[arg(long, value_enum, default_value = "p2")]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emits a random scheme file.
    Random {
        #[arg(long)]
        u: usize,
        /// `generic`, `collinear:K`, `conic` or `arc:L`.
        #[arg(long, default_value = "generic")]
        constraint: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "fp")]
        field: String,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Failure(_) => EXIT_FAIL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Failure(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn default_prime() -> Result<u64, CliError> {
    match std::env::var(PRIME_ENV) {
        Ok(v) => {
            let p: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{PRIME_ENV}={v:?} is not an integer")))?;
            PrimeField::new(p).map_err(|e| CliError::Input(format!("{PRIME_ENV}: {e}")))?;
            Ok(p)
        }
        Err(_) => Ok(DEFAULT_PRIME),
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let spec = match s {
        "q" => FieldSpec::Rationals,
        "fp" => FieldSpec::PrimeField { p: default_prime()? },
        _ => match s.strip_prefix("fp:") {
            Some(p) => FieldSpec::PrimeField {
                p: p.parse().map_err(|_| CliError::Usage(format!("bad prime in --field {s:?}")))?,
            },
            None => return Err(CliError::Usage(format!("--field must be fp, fp:P or q, got {s:?}"))),
        },
    };
    spec.validate().map_err(input)?;
    Ok(spec)
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("--range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_scheme_file(path: &Path) -> Result<SchemeFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    SchemeFile::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn cohomology<F: Field>(
    z: ZeroDimScheme<F>,
    c1: i64,
    r: i64,
    range: Option<(i64, i64)>,
    format: Format,
) -> Result<String, CliError> {
    let e: SerreBundle<F> = make_bundle(z, c1, r).map_err(|e| CliError::Input(format!("bundle rejected: {e}")))?;
    let table = e.cohomology_table(range).map_err(input)?;
    Ok(match format {
        Format::Text => table.to_text(),
        Format::Json => to_json(&json!({
            "table": table,
            "window": [table.k_min, table.k_max],
            "resolution": e.bundle_resolution(),
        })),
    })
}

fn classify<F: Field>(z: ZeroDimScheme<F>, format: Format) -> Result<String, CliError> {
    let degree = z.degree();
    let (regularity, betti) = if z.is_empty() {
        (None, GradedBetti::unit_ideal())
    } else {
        let reg = ideals::regularity(&z).map_err(input)?;
        (Some(reg), ideals::graded_betti(&z).map_err(|e| CliError::Failure(e.to_string()))?)
    };
    let top = regularity.unwrap_or(0) as i64 + 2;
    let hilbert: Vec<usize> = (0..=top).map(|d| ideals::ideal_cohomology(&z, d).h0).collect();
    let label = if (1..=5).contains(&degree) {
        Some(
            ideals::classify_resolution(&z)
                .map_err(|e| CliError::Failure(e.to_string()))?
                .to_string(),
        )
    } else {
        None
    };
    Ok(match format {
        Format::Json => to_json(&json!({
            "degree": degree,
            "regularity": regularity,
            "hilbert": hilbert,
            "betti": betti,
            "label": label,
        })),
        Format::Text => {
            let list = |v: &[i64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
            format!(
                "degree: {degree}\nregularity: {}\nh0(I_Z(d)), d = 0..{top}: {}\ngenerators: {}\nsyzygies: {}\nlabel: {}\n",
                regularity.map_or("-".to_string(), |r| r.to_string()),
                hilbert.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" "),
                list(&betti.generators),
                list(&betti.syzygies),
                label.as_deref().unwrap_or("-"),
            )
        }
    })
}

fn random_file<F: Field>(field: &F, spec: &SchemeSpec, seed: u64) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = random_scheme(field, spec, &mut rng).map_err(input)?;
    Ok(SchemeFile::from_scheme(&z).to_json() + "\n")
}

fn execute(cmd: Command, err: &mut dyn Write) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Cohomology {
            scheme,
            c1,
            r,
            range,
            format,
        } => {
            let range = range.as_deref().map(parse_range).transpose()?;
            let file = read_scheme_file(&scheme)?;
            let text = match file.field {
                FieldSpec::PrimeField { p } => {
                    let f = PrimeField::new(p).map_err(input)?;
                    cohomology(file.to_scheme(&f).map_err(input)?, c1, r, range, format)?
                }
                FieldSpec::Rationals => cohomology(file.to_scheme(&Rationals).map_err(input)?, c1, r, range, format)?,
            };
            Ok((text, EXIT_OK))
        }
        Command::Classify { scheme, format } => {
            let file = read_scheme_file(&scheme)?;
            let text = match file.field {
                FieldSpec::PrimeField { p } => {
                    let f = PrimeField::new(p).map_err(input)?;
                    classify(file.to_scheme(&f).map_err(input)?, format)?
                }
                FieldSpec::Rationals => classify(file.to_scheme(&Rationals).map_err(input)?, format)?,
            };
            Ok((text, EXIT_OK))
        }
        Command::Verify {
            trials,
            seed,
            suite,
            field,
            format,
        } => {
            let field = parse_field(&field)?;
            let summary = run_suite(suite.into(), trials, seed, field).map_err(input)?;
            let fails = summary.fail_count();
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => summary.to_json() + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for c in &summary.checks {
                        s += &format!("{:<34} pass {:>5}  fail {:>3}  flag {:>3}\n", c.id, c.pass, c.fail, c.flag);
                    }
                    s
                }
            };
            if fails > 0 {
                let _ = writeln!(err, "{fails} check(s) failed");
                Ok((text, EXIT_FAIL))
            } else {
                Ok((text, EXIT_OK))
            }
        }
        Command::Rr {
            space,
            c1,
            c2,
            k,
            format,
        } => {
            let chi = match space {
                Space::P2 => json!(rr_chi_p2(c1, c2, k).map_err(input)?),
                // rational values travel as decimal strings
                Space::P3 => json!(rr_chi_p3(c1, c2, k).map_err(input)?.to_string()),
            };
            let text = match format {
                Format::Text => match &chi {
                    serde_json::Value::String(s) => format!("{s}\n"),
                    v => format!("{v}\n"),
                },
                Format::Json => to_json(&json!({
                    "space": if space == Space::P2 { "p2" } else { "p3" },
                    "c1": c1,
                    "c2": c2,
                    "k": k,
                    "chi": chi,
                })),
            };
            Ok((text, EXIT_OK))
        }
        Command::Random {
            u,
            constraint,
            seed,
            field,
        } => {
            let constraint: Constraint = constraint.parse().map_err(CliError::Usage)?;
            let spec = SchemeSpec::new(u, constraint);
            let text = match parse_field(&field)? {
                FieldSpec::PrimeField { p } => random_file(&PrimeField::new(p).map_err(input)?, &spec, seed)?,
                FieldSpec::Rationals => random_file(&Rationals, &spec, seed)?,
            };
            Ok((text, EXIT_OK))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command, err) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
