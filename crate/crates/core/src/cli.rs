//! The `avecert` command line.
//!
//! ```text
//! avecert check <file> [--emit]
//! avecert oracle <file> [--cap k] [--emit]
//! avecert solve <file> [--method newton|picard-plus|picard-minus|enumerate] [--tol t] [--max-iter k] [--emit]
//! avecert counterexample
//! avecert bench --kind <kind> --n <n> --samples <m> --seed <s> [--shift c] --out <path>
//! ```
//!
//! `AVECERT_ORACLE_CAP` replaces the default oracle cap of 16 (never above 24).
//! `--emit` prints the parsed problem in canonical form instead of running.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::conditions::check_all;
use crate::counterexample::demonstrate_counterexample;
use crate::ensemble::{run_campaign_with_cap, write_report, EnsembleKind, EnsembleSpec};
use crate::error::Error;
use crate::matrix::Vector;
use crate::oracle::{
    certify_uniqueness, enumerate_solutions_with_cap, CertificateStatus, DEFAULT_CAP, HARD_MAX_CAP,
};
use crate::problem_file::ProblemFile;
use crate::solvers::{
    generalized_newton, picard_minus, picard_plus, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};

/// Process exit codes, one per outcome category.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    /// Unparseable problem file or any I/O failure.
    pub const INPUT: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const NOT_UNIQUE: i32 = 10;
    pub const CAP_EXCEEDED: i32 = 11;
    pub const NOT_CONVERGED: i32 = 12;
    /// `solve --method enumerate` found zero, several, or infinitely many solutions.
    pub const NOT_SINGLE_SOLUTION: i32 = 13;
    pub const SOUNDNESS_VIOLATION: i32 = 14;
}

pub const CAP_ENV_VAR: &str = "AVECERT_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "avecert",
    version,
    about = "Unique-solvability certificates for Ax - |x| = b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every sufficient condition on A.
    Check {
        path: PathBuf,
        #[arg(long)]
        emit: bool,
    },
    /// Exact certificate by vertex enumeration.
    Oracle {
        path: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        emit: bool,
    },
    /// Solve Ax - |x| = b (the file must contain b).
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Newton)]
        method: SolveMethod,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        emit: bool,
    },
    /// Show why A = 0 defeats the known-incorrect conditions.
    Counterexample,
    /// Seeded campaign scoring all conditions against the oracle.
    Bench {
        #[arg(long, value_enum)]
        kind: BenchKind,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Diagonal shift for shifted-gaussian.
        #[arg(long)]
        shift: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveMethod {
    Newton,
    PicardPlus,
    PicardMinus,
    Enumerate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BenchKind {
    Gaussian,
    ShiftedGaussian,
    DiagonalDominant,
    Fixture,
}

/// Output sinks for one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Runs one command and returns its exit code. `env_cap` is the raw value of
/// `AVECERT_ORACLE_CAP`, if set.
pub fn run<I, T>(args: I, env_cap: Option<&str>, io: Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let Io { out, err } = io;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let default_cap = match resolve_env_cap(env_cap, err) {
        Ok(cap) => cap,
        Err(code) => return code,
    };
    let result = match cli.command {
        Command::Check { path, emit } => cmd_check(&path, emit, out),
        Command::Oracle { path, cap, emit } => cmd_oracle(&path, cap, default_cap, emit, out, err),
        Command::Solve {
            path,
            method,
            tol,
            max_iter,
            emit,
        } => cmd_solve(&path, method, tol, max_iter, default_cap, emit, out),
        Command::Counterexample => cmd_counterexample(out),
        Command::Bench {
            kind,
            n,
            samples,
            seed,
            shift,
            out: path,
        } => cmd_bench(kind, n, samples, seed, shift, &path, default_cap, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn numerical(e: Error) -> Self {
        Self::new(exit::NUMERICAL, e.to_string())
    }

    fn io(e: std::io::Error) -> Self {
        Self::new(exit::INPUT, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn resolve_env_cap(raw: Option<&str>, err: &mut dyn Write) -> Result<usize, i32> {
    let Some(raw) = raw else {
        return Ok(DEFAULT_CAP);
    };
    match raw.trim().parse::<usize>() {
        Ok(0) | Err(_) => {
            let _ = writeln!(
                err,
                "error: {CAP_ENV_VAR}={raw:?} is not a positive integer"
            );
            Err(exit::USAGE)
        }
        Ok(k) if k > HARD_MAX_CAP => {
            let _ = writeln!(
                err,
                "warning: {CAP_ENV_VAR}={k} exceeds the hard maximum; using {HARD_MAX_CAP}"
            );
            Ok(HARD_MAX_CAP)
        }
        Ok(k) => Ok(k),
    }
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text)
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))
}

fn emit(file: &ProblemFile, out: &mut dyn Write) -> CmdResult {
    out.write_all(file.emit().as_bytes()).map_err(Failure::io)?;
    Ok(exit::OK)
}

fn cmd_check(path: &Path, emit_only: bool, out: &mut dyn Write) -> CmdResult {
    let file = load(path)?;
    if emit_only {
        return emit(&file, out);
    }
    let verdicts = check_all(&file.a).map_err(Failure::numerical)?;
    writeln!(out, "n = {}", file.a.order()).map_err(Failure::io)?;
    for v in verdicts {
        writeln!(out, "{v}").map_err(Failure::io)?;
    }
    Ok(exit::OK)
}

fn cmd_oracle(
    path: &Path,
    cap: Option<usize>,
    default_cap: usize,
    emit_only: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let cap = cap.unwrap_or(default_cap);
    if cap == 0 || cap > HARD_MAX_CAP {
        return Err(Failure::new(
            exit::USAGE,
            format!("--cap must lie in 1..={HARD_MAX_CAP}, got {cap}"),
        ));
    }
    let file = load(path)?;
    if emit_only {
        return emit(&file, out);
    }
    if cap > DEFAULT_CAP && file.a.order() > DEFAULT_CAP {
        let _ = writeln!(
            err,
            "warning: enumerating 2^{} vertex determinants above the default cap {DEFAULT_CAP}",
            file.a.order()
        );
    }
    let cert = certify_uniqueness(&file.a, cap).map_err(Failure::numerical)?;
    writeln!(out, "{cert}").map_err(Failure::io)?;
    Ok(match cert.status() {
        CertificateStatus::UniqueForAllB => exit::OK,
        CertificateStatus::NotUnique => exit::NOT_UNIQUE,
        CertificateStatus::CapExceeded => exit::CAP_EXCEEDED,
    })
}

fn cmd_solve(
    path: &Path,
    method: SolveMethod,
    tol: f64,
    max_iter: usize,
    cap: usize,
    emit_only: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let file = load(path)?;
    if emit_only {
        return emit(&file, out);
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::new(
            exit::USAGE,
            format!("--tol must be positive, got {tol}"),
        ));
    }
    let problem = file
        .into_problem()
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))?;
    let x0 = Vector::zeros(problem.order());

    let result = match method {
        SolveMethod::Enumerate => {
            let set = match enumerate_solutions_with_cap(&problem, cap) {
                Err(e @ Error::CapExceeded { .. }) => {
                    return Err(Failure::new(exit::CAP_EXCEEDED, e.to_string()))
                }
                other => other.map_err(Failure::numerical)?,
            };
            writeln!(out, "method: enumerate\n{set}").map_err(Failure::io)?;
            return Ok(if set.count() == 1 && !set.degenerate {
                exit::OK
            } else {
                exit::NOT_SINGLE_SOLUTION
            });
        }
        SolveMethod::Newton => generalized_newton(&problem, &x0, tol, max_iter),
        SolveMethod::PicardPlus => picard_plus(&problem, &x0, tol, max_iter),
        SolveMethod::PicardMinus => picard_minus(&problem, &x0, tol, max_iter),
    };
    match result {
        Ok(r) => {
            writeln!(out, "{r}").map_err(Failure::io)?;
            Ok(if r.converged {
                exit::OK
            } else {
                exit::NOT_CONVERGED
            })
        }
        Err(e @ Error::Singular { .. }) => {
            writeln!(out, "singular iteration matrix: {e}\nconverged: false")
                .map_err(Failure::io)?;
            Ok(exit::NOT_CONVERGED)
        }
        Err(e) => Err(Failure::numerical(e)),
    }
}

fn cmd_counterexample(out: &mut dyn Write) -> CmdResult {
    writeln!(out, "{}", demonstrate_counterexample()).map_err(Failure::io)?;
    Ok(exit::OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    kind: BenchKind,
    n: usize,
    samples: usize,
    seed: u64,
    shift: Option<f64>,
    path: &Path,
    cap: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let spec = match kind {
        BenchKind::Fixture => EnsembleSpec::fixture(),
        _ => {
            if n == 0 || samples == 0 {
                return Err(Failure::new(
                    exit::USAGE,
                    "--n and --samples must be positive",
                ));
            }
            if n > cap {
                return Err(Failure::new(
                    exit::USAGE,
                    format!("--n {n} exceeds the oracle cap {cap} (set {CAP_ENV_VAR} to raise it, at most {HARD_MAX_CAP})"),
                ));
            }
            let kind = match (kind, shift) {
                (BenchKind::Gaussian, _) => EnsembleKind::Gaussian,
                (BenchKind::DiagonalDominant, _) => EnsembleKind::DiagonalDominant,
                (BenchKind::ShiftedGaussian, Some(shift)) if shift.is_finite() => {
                    EnsembleKind::ShiftedGaussian { shift }
                }
                (BenchKind::ShiftedGaussian, _) => {
                    return Err(Failure::new(
                        exit::USAGE,
                        "shifted-gaussian needs a finite --shift",
                    ))
                }
                (BenchKind::Fixture, _) => unreachable!(),
            };
            EnsembleSpec::new(kind, n, samples, seed)
        }
    };
    let campaign = match run_campaign_with_cap(&spec, cap) {
        Ok(c) => c,
        Err(Error::SoundnessViolation {
            sample_id,
            condition,
            oracle,
            reproducer,
        }) => {
            let mut repro_path = path.as_os_str().to_owned();
            repro_path.push(".reproducer.txt");
            let repro_path = PathBuf::from(repro_path);
            std::fs::write(&repro_path, reproducer).map_err(Failure::io)?;
            return Err(Failure::new(
                exit::SOUNDNESS_VIOLATION,
                format!(
                    "{condition} holds on sample {sample_id} but the oracle reports {oracle}; matrix written to {}",
                    repro_path.display()
                ),
            ));
        }
        Err(e) => return Err(Failure::numerical(e)),
    };
    write_report(&campaign, path)
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))?;
    writeln!(
        out,
        "ensemble: {} n={} seed={}",
        spec.kind, spec.n, spec.seed
    )
    .map_err(Failure::io)?;
    writeln!(out, "{}", campaign.summary).map_err(Failure::io)?;
    writeln!(out, "wrote {}", path.display()).map_err(Failure::io)?;
    Ok(exit::OK)
}
