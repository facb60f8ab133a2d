use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qchar::presentations::{OrbitKind, OrbitQuotientSpec};
use qchar::qtensor::Mat;
use qchar::scalars::parse_scalar;
use qchar::suite::{check_matrix, run, DimsAlgebra, MatrixTarget, RunConfig, RunReport, Suite, Task, VerifyTarget};
use qchar::Error;

#[derive(Parser)]
#[command(name = "qchar", version, about = "Exact checks for reflection-equation algebras, their characters and orbit quantizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single family of checks.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Compare quotient dimensions with their commutative or classical counterparts.
    Dims {
        #[arg(long, value_enum)]
        algebra: DimsAlgebra,
        #[command(flatten)]
        common: Common,
    },
    /// Extract the semiclassical bracket and check it.
    Poisson {
        #[command(flatten)]
        common: Common,
    },
    /// Run a named suite of checks.
    #[command(alias = "suite")]
    Run {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Check a matrix given as JSON `{n, entries}` against the RE or an orbit quotient.
    CheckMatrix {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "re")]
        against: Against,
        /// Multiplicity of the first eigenvalue.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Multiplicity of the second eigenvalue.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Multiplicity of the zero eigenvalue (bisymmetric orbits).
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "a^2")]
        lambda: String,
        #[arg(long, default_value = "b^2")]
        mu: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Against {
    Re,
    Symmetric,
    Bisymmetric,
    Nilpotent,
    TwoParameter,
    Kks,
}

#[derive(Args)]
struct Common {
    /// Matrix sizes: `3`, `2..4` (inclusive) or `2,3`.
    #[arg(long, value_parser = parse_sizes)]
    n: Option<Sizes>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Use exact symbolic elimination instead of modular specializations.
    #[arg(long)]
    exact: bool,
    /// Also write the report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the size and degree caps.
    #[arg(long)]
    force: bool,
    /// Record wall-clock time per check (makes the report run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone)]
struct Sizes(Vec<usize>);

fn parse_sizes(text: &str) -> Result<Sizes, String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("not a size: {s:?}"));
    let sizes = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {text}"));
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Sizes(sizes))
}

impl Common {
    fn config(&self, task: Task) -> RunConfig {
        RunConfig {
            task,
            n: self.n.as_ref().map(|s| s.0.clone()),
            max_degree: self.max_degree,
            seed: self.seed,
            exact: self.exact,
            force: self.force,
            timings: self.timings,
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) | Error::TooLarge { .. } | Error::BoundTooSmall { .. } | Error::ShapeMismatch(_) | Error::Parse { .. } | Error::Json(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn emit(report: &RunReport, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = report.to_json_pretty();
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    // a closed pipe (e.g. `| head`) is not an error
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Runtime(format!("cannot write the report: {e}"))),
        _ => Ok(()),
    }
}

fn orbit_spec(against: Against, n: usize, l: usize, m: usize, k: usize, lambda: &str, mu: &str) -> Result<OrbitQuotientSpec, Failure> {
    let (lambda, mu) = (parse_scalar(lambda)?, parse_scalar(mu)?);
    let kind = match against {
        Against::Symmetric => OrbitKind::Symmetric { l, m, lambda, mu },
        Against::Bisymmetric => OrbitKind::Bisymmetric { l, m, k, lambda, mu },
        Against::Nilpotent => OrbitKind::Nilpotent { n },
        Against::TwoParameter => OrbitKind::TwoParameter { n1: l, n2: m, mu1: lambda, mu2: mu },
        Against::Kks => OrbitKind::Kks { n1: l, n2: m, mu1: lambda, mu2: mu },
        Against::Re => unreachable!("handled by the caller"),
    };
    Ok(OrbitQuotientSpec::new(kind)?)
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    let (config, out) = match cli.command {
        Command::Verify { target, common } => (common.config(Task::Verify(target)), common.out),
        Command::Dims { algebra, common } => (common.config(Task::Dims(algebra)), common.out),
        Command::Poisson { common } => (common.config(Task::Poisson), common.out),
        Command::Run { suite, common } => (common.config(Task::Suite(suite)), common.out),
        Command::CheckMatrix { path, against, l, m, k, lambda, mu, out } => {
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let a = Mat::from_json_str(&text).map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))?;
            let target = match against {
                Against::Re => MatrixTarget::Re,
                other => MatrixTarget::Orbit(orbit_spec(other, a.dim(), l, m, k, &lambda, &mu)?),
            };
            let record = check_matrix(&a, &target)?;
            let report = RunReport::new(RunConfig::new(Task::CheckMatrix(path.display().to_string())), vec![record]);
            emit(&report, out.as_ref())?;
            return Ok(report.all_passed());
        }
    };
    let report = run(&config)?;
    emit(&report, out.as_ref())?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
