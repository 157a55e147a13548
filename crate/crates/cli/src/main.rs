use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhadic_cli::{emit, parse_jobs, run_batch, suite, CliError, Command, Context, Format, JobSpec};

#[derive(Parser)]
#[command(name = "hhadic", version, about = "Torsion, completion, local and Hochschild cohomology over polynomial rings")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "markdown")]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "HHADIC_WORKERS")]
    workers: Option<usize>,
    /// Seed for sampled checks, recorded in their reports.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct JobArgs {
    /// Job file, or `-` for stdin.
    #[arg(long)]
    job: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    MainTheorem,
    Hkr,
    GmDuality,
    Cofinality,
    Padic,
    WprExample,
}

impl From<Check> for Command {
    fn from(c: Check) -> Command {
        match c {
            Check::MainTheorem => Command::MainTheorem,
            Check::Hkr => Command::Hkr,
            Check::GmDuality => Command::GmDuality,
            Check::Cofinality => Command::Cofinality,
            Check::Padic => Command::Padic,
            Check::WprExample => Command::WprExample,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of an ideal or submodule.
    Gb(JobArgs),
    /// Homology of a complex of free modules.
    Homology(JobArgs),
    /// Local cohomology through Koszul towers.
    Localcoh(JobArgs),
    /// Adic completion at finite precision.
    Complete(JobArgs),
    /// Torsion submodule.
    Torsion(JobArgs),
    /// Pro-zero certificate for Koszul homology towers.
    Wpr(JobArgs),
    /// Hochschild cohomology with bimodule coefficients.
    Hochschild(JobArgs),
    /// A job or batch whose documents name their own command.
    Run(JobArgs),
    /// Checks against closed forms; without `--job`, runs the built-in corpus.
    Verify {
        check: Option<Check>,
        #[arg(long, conflicts_with = "check")]
        all: bool,
        #[arg(long)]
        job: Option<PathBuf>,
    },
}

fn read_jobs(path: &Path) -> Result<Vec<JobSpec>, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_jobs(&text)
}

/// Fills in the command a subcommand implies; a job naming a different one is an input error.
fn bind(mut jobs: Vec<JobSpec>, cmd: Command) -> Result<Vec<JobSpec>, CliError> {
    let single = jobs.len() == 1;
    for (k, job) in jobs.iter_mut().enumerate() {
        match job.command {
            None => job.command = Some(cmd),
            Some(c) if c == cmd => {}
            Some(c) => {
                let at = if single { "/command".to_string() } else { format!("/jobs/{k}/command") };
                return Err(CliError::input(&at, format!("job is {:?} but the subcommand is {}", c.name(), cmd.name())));
            }
        }
    }
    Ok(jobs)
}

fn jobs_for(cmd: &Cmd) -> Result<Vec<JobSpec>, CliError> {
    let (args, command) = match cmd {
        Cmd::Gb(a) => (a, Command::Gb),
        Cmd::Homology(a) => (a, Command::Homology),
        Cmd::Localcoh(a) => (a, Command::Localcoh),
        Cmd::Complete(a) => (a, Command::Complete),
        Cmd::Torsion(a) => (a, Command::Torsion),
        Cmd::Wpr(a) => (a, Command::Wpr),
        Cmd::Hochschild(a) => (a, Command::Hochschild),
        Cmd::Run(a) => return read_jobs(&a.job),
        Cmd::Verify { check, all, job } => {
            return match (check, job) {
                (Some(c), Some(path)) => bind(read_jobs(path)?, (*c).into()),
                (None, Some(path)) => {
                    let jobs = read_jobs(path)?;
                    if let Some(k) = jobs.iter().position(|j| !j.command.is_some_and(Command::is_check)) {
                        return Err(CliError::input(&format!("/jobs/{k}/command"), "verify jobs must name a check"));
                    }
                    Ok(jobs)
                }
                (Some(c), None) => Ok(suite::corpus((*c).into())),
                (None, None) if *all => Ok(suite::full()),
                (None, None) => Err(CliError::input("/", "name a check, pass --all, or give --job")),
            };
        }
    };
    bind(read_jobs(&args.job)?, command)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(1);
        }
    }
    let jobs = match jobs_for(&cli.cmd) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let result = run_batch(&jobs, Context { seed: cli.seed });
    if !result.outputs.is_empty() {
        print!("{}", emit(&result.outputs, cli.format));
    }
    for e in &result.errors {
        eprintln!("error: {e}");
    }
    ExitCode::from(result.exit_code() as u8)
}
