//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 classification
//! undetermined, 3 malformed input, 4 invalid lines or linkage, 5 numeric
//! failure. Diagnostics go to the error stream as one JSON object per line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{Rational, Scalar};
use crate::classify::{classify, Family};
use crate::error::{Error, Result};
use crate::examples::example_one;
use crate::generate::{construct_cubic_type, random_cubic, random_line_symmetric, random_parallel, RandomSource};
use crate::io::{
    classification_to_json, linkage_to_json, parse_linkage, parse_sym_configs, traced_points_to_json, AnyLinkage,
    ScalarKind, SCALAR_ENV,
};
use crate::lambda::build_lambda_matrix;
use crate::linalg::RankMode;
use crate::linkage::Linkage;
use crate::sampler::{format_poses, linear_grid, trace_with_options, TraceOptions};

#[derive(Parser, Debug)]
#[command(name = "hexalink", version, about = "Angle-symmetric 6R linkages: rank, classification, synthesis, tracing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a linkage (JSON file, or stdin when omitted or `-`).
    Classify { input: Option<PathBuf> },
    /// Emit a linkage of the given family.
    Generate {
        #[arg(value_enum)]
        family: GenFamily,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on sampled numerators and denominators.
        #[arg(long, default_value_t = crate::generate::DEFAULT_BOUND)]
        bound: i64,
        /// Cubic type only: `a1,b1;a2,b2;a3,b3` (rationals as `p/q`).
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Rank of the realified lambda matrix.
    Rank {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = crate::algebra::DEFAULT_TOL)]
        tol: f64,
        /// Also write the 48×7 real matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Trace the angle-symmetric configuration curve on a grid `a:b:n`.
    Trace {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value = "t3")]
        slice: String,
    },
    /// Write the pose file for a list of configurations.
    Poses {
        input: Option<PathBuf>,
        #[arg(long)]
        configs: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Emit the built-in reference linkage.
    Example1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenFamily {
    Parallel,
    Linesym,
    Cubic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Tol,
}

/// Runs with `HEXALINK_SCALAR` taken from the environment.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let scalar = std::env::var(SCALAR_ENV).ok();
    run_with(args, scalar.as_deref(), stdin, stdout, stderr)
}

pub fn run_with<I, T>(
    args: I,
    scalar_override: Option<&str>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{}", json!({ "error": "usage", "message": first }));
            return 1;
        }
    };
    let mut ctx = Ctx { stdin, stdout, stderr };
    let result = scalar_override.map(ScalarKind::parse).transpose().and_then(|k| ctx.dispatch(cli.command, k));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 1,
        Error::Parse(_) => 3,
        Error::NotPure
        | Error::NotALine(_)
        | Error::ZeroDirection
        | Error::IrrationalLength
        | Error::IdenticalAxes(..)
        | Error::InvalidLinkage(_) => 4,
        _ => 5,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        1 => "io",
        3 => "parse",
        4 => "invalid-input",
        _ => "numeric",
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read_input(&mut self, path: &Option<PathBuf>) -> Result<String> {
        match path {
            Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn linkage(&mut self, path: &Option<PathBuf>, kind: Option<ScalarKind>) -> Result<AnyLinkage> {
        let text = self.read_input(path)?;
        parse_linkage(&text, kind)
    }

    fn out(&mut self, text: impl std::fmt::Display) -> Result<()> {
        writeln!(self.stdout, "{text}")?;
        Ok(())
    }

    fn warn(&mut self, message: &str) -> Result<()> {
        writeln!(self.stderr, "{}", json!({ "warning": message }))?;
        Ok(())
    }

    fn dispatch(&mut self, cmd: Command, kind: Option<ScalarKind>) -> Result<i32> {
        match cmd {
            Command::Classify { input } => match self.linkage(&input, kind)? {
                AnyLinkage::Rational(l) => self.classify(&l),
                AnyLinkage::Float(l) => {
                    self.warn("float input: rank and classification are advisory")?;
                    self.classify(&l)
                }
            },
            Command::Generate { family, seed, bound, pairs } => {
                let l = generate(family, seed, bound, pairs.as_deref())?;
                self.out(linkage_to_json(&l))?;
                Ok(0)
            }
            Command::Rank { input, mode, tol, csv } => {
                let l = self.linkage(&input, kind)?;
                let mode = match mode {
                    Some(ModeArg::Exact) => Some(RankMode::Exact),
                    Some(ModeArg::Tol) => Some(RankMode::Tolerance(tol)),
                    None => None,
                };
                let (rank, text) = match &l {
                    AnyLinkage::Rational(l) => rank_of(l, mode.unwrap_or(RankMode::Exact))?,
                    AnyLinkage::Float(l) => rank_of(l, mode.unwrap_or(RankMode::Tolerance(tol)))?,
                };
                if let Some(path) = csv {
                    std::fs::write(path, text)?;
                }
                self.out(rank)?;
                Ok(0)
            }
            Command::Trace { input, grid, slice } => {
                let grid = parse_grid(&grid)?;
                let slice = match slice.as_str() {
                    "t1" => 0,
                    "t2" => 1,
                    "t3" => 2,
                    other => return Err(Error::Parse(format!("slice must be t1, t2 or t3, got {other:?}"))),
                };
                let opts = TraceOptions { slice, ..TraceOptions::default() };
                let points = match self.linkage(&input, kind)? {
                    AnyLinkage::Rational(l) => trace_with_options(&l, &grid, &opts)?,
                    AnyLinkage::Float(l) => trace_with_options(&l, &grid, &opts)?,
                };
                self.out(traced_points_to_json(&points, slice))?;
                Ok(0)
            }
            Command::Poses { input, configs, output } => {
                let text = std::fs::read_to_string(&configs)?;
                let poses = match self.linkage(&input, kind)? {
                    AnyLinkage::Rational(l) => format_poses(&l, &parse_sym_configs::<Rational>(&text)?)?,
                    AnyLinkage::Float(l) => format_poses(&l, &parse_sym_configs::<f64>(&text)?)?,
                };
                std::fs::write(output, poses)?;
                Ok(0)
            }
            Command::Example1 => {
                self.out(linkage_to_json(&example_one()))?;
                Ok(0)
            }
        }
    }

    fn classify<S: Scalar>(&mut self, l: &Linkage<S>) -> Result<i32> {
        let c = classify(l)?;
        self.out(classification_to_json(&c))?;
        Ok(if matches!(c.family, Family::Undetermined { .. }) { 2 } else { 0 })
    }
}

fn rank_of<S: Scalar>(l: &Linkage<S>, mode: RankMode) -> Result<(usize, String)> {
    let m = build_lambda_matrix(l);
    Ok((m.rank(mode)?, m.to_csv()))
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Parse(format!("grid must be a:b:n, got {s:?}"));
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    Ok(linear_grid(a, b, n))
}

fn parse_pairs(s: &str) -> Result<[(Rational, Rational); 3]> {
    let bad = || Error::Parse(format!("pairs must be a1,b1;a2,b2;a3,b3, got {s:?}"));
    let num = |t: &str| t.trim().parse::<Rational>().map_err(|_| bad());
    let pairs: Vec<(Rational, Rational)> = s
        .split(';')
        .map(|p| {
            let (a, b) = p.split_once(',').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        })
        .collect::<Result<_>>()?;
    pairs.try_into().map_err(|_| bad())
}

fn generate(family: GenFamily, seed: u64, bound: i64, pairs: Option<&str>) -> Result<Linkage<Rational>> {
    let mut src = RandomSource::with_bound(seed, bound);
    match (family, pairs) {
        (GenFamily::Parallel, _) => Ok(random_parallel(&mut src)?.instance.linkage),
        (GenFamily::Linesym, _) => Ok(random_line_symmetric(&mut src)?.instance.linkage),
        (GenFamily::Cubic, None) => Ok(random_cubic(&mut src)?.instance.linkage),
        (GenFamily::Cubic, Some(p)) => {
            let pairs = parse_pairs(p)?;
            if !distinct_norms(&pairs) {
                return Err(Error::NonGeneric("the three norm quadratics must be distinct".into()));
            }
            let mut last = None;
            for _ in 0..100 {
                let axes = [src.line(), src.line(), src.line()];
                match construct_cubic_type(&pairs, &axes) {
                    Ok(l) => return Ok(l),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("at least one attempt"))
        }
    }
}

/// `t² − 2at + a² + b²` depends on `a` and `b²` only.
fn distinct_norms(pairs: &[(Rational, Rational); 3]) -> bool {
    let key = |(a, b): &(Rational, Rational)| (a.clone(), b.clone() * b.clone());
    let k = pairs.each_ref().map(key);
    k[0] != k[1] && k[0] != k[2] && k[1] != k[2]
}
