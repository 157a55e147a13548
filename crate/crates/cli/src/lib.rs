//! Batch front end for `hhadic`: JSON job specifications, dispatch, report emission and the
//! `verify` suite.

pub mod error;
pub mod job;
pub mod output;
pub mod run;
pub mod suite;

use rayon::prelude::*;

pub use error::CliError;
pub use job::{parse_jobs, Command, JobSpec};
pub use output::{emit, parse_outputs, Computation, Format, Output};
pub use run::{run, Context};

/// Outcome of a batch: outputs in job order, input errors, and the process exit code.
#[derive(Debug)]
pub struct BatchResult {
    pub outputs: Vec<Output>,
    pub errors: Vec<CliError>,
}

impl BatchResult {
    /// Input errors dominate failures, which dominate inconclusive results.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            return 1;
        }
        let worst = self.outputs.iter().map(Output::verdict).fold(hhadic::Verdict::Pass, hhadic::Verdict::combine);
        worst.exit_code()
    }
}

/// Runs jobs concurrently on the current rayon pool.
pub fn run_batch(jobs: &[JobSpec], ctx: Context) -> BatchResult {
    let single = jobs.len() == 1;
    let results: Vec<Result<Vec<Output>, CliError>> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, job)| {
            let prefix = if single { String::new() } else { format!("/jobs/{k}") };
            run(job, &prefix, ctx).map_err(|e| match e {
                CliError::Compute(e) => CliError::input(if single { "/" } else { &prefix }, e.to_string()),
                e => e,
            })
        })
        .collect();
    let mut outputs = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(o) => outputs.extend(o),
            Err(e) => errors.push(e),
        }
    }
    BatchResult { outputs, errors }
}
