mod collision;
mod dist;
mod hsp;
mod swaptest;

use schurlab::spectra::BoundReport;

use crate::args::{Cli, Command};
use crate::cache::Cache;
use crate::failure::{CliResult, Failure};

pub fn run(cli: Cli) -> CliResult<()> {
    let cache = Cache::from_env();
    match cli.command {
        Command::Dist(a) => dist::run(&a, &cache),
        Command::Hsp(a) => hsp::run(&a, &cache),
        Command::Collision(a) => collision::run(&a),
        Command::Swaptest(a) => swaptest::run(&a),
    }
}

/// Fails with exit code 4 when any report is violated.
fn contradictions<'a>(reports: impl IntoIterator<Item = &'a BoundReport>) -> CliResult<()> {
    let bad: Vec<String> = reports
        .into_iter()
        .filter(|r| !r.satisfied)
        .map(|r| format!("{} {:?}", r.name, r.context))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Contradiction(format!(
            "bound violated: {}",
            bad.join("; ")
        )))
    }
}
