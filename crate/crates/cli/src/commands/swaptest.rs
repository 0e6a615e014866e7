use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use schurlab::collision::{swap_fidelity, swap_test_bound, SwapTestInstance, MAX_BRANCHES};
use serde::Serialize;
use serde_json::json;

use crate::args::SwaptestArgs;
use crate::failure::{CliResult, Failure};
use crate::output::{decimal, Artifact, Table};

pub const MAX_TRIALS: u64 = 100_000;
/// Agreement required between the simulated fidelity and its closed form.
pub const FORMULA_TOL: f64 = 1e-9;

#[derive(Serialize)]
struct Row {
    trial: u64,
    branches: usize,
    equal_branches: usize,
    fidelity: f64,
    exact_formula: f64,
    pass: bool,
}

#[derive(Serialize)]
struct SwaptestResult {
    m: usize,
    dim: usize,
    trials: u64,
    seed: u64,
    max_branches: usize,
    bound: f64,
    vacuous: bool,
    min_fidelity: f64,
    max_formula_error: f64,
    all_pass: bool,
    rows: Vec<Row>,
}

pub fn run(a: &SwaptestArgs) -> CliResult<()> {
    let emitter = a.output.emitter();
    emitter.check()?;
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    if a.max_branches == 0 {
        return Err(Failure::Usage("--max-branches must be at least 1".into()));
    }
    for (what, got, limit) in [
        ("trials", a.trials, MAX_TRIALS),
        ("max_branches", a.max_branches as u64, MAX_BRANCHES as u64),
    ] {
        if got > limit {
            return Err(schurlab::Error::CapExceeded { what, limit, got }.into());
        }
    }
    // surface instance errors (caps, dim) before fanning out
    SwapTestInstance::<f64>::random(a.m, a.dim, 1, &mut ChaCha20Rng::seed_from_u64(a.seed))?;

    let bound = swap_test_bound(a.m);
    let rows = (0..a.trials)
        .into_par_iter()
        .map(|trial| -> schurlab::Result<Row> {
            let mut rng = ChaCha20Rng::seed_from_u64(a.seed);
            rng.set_stream(trial);
            let branches = rng.random_range(1..=a.max_branches);
            let inst = SwapTestInstance::<f64>::random(a.m, a.dim, branches, &mut rng)?;
            let f = swap_fidelity(&inst)?;
            Ok(Row {
                trial,
                branches,
                equal_branches: inst.branches().iter().filter(|b| b.theta).count(),
                fidelity: f.fidelity,
                exact_formula: f.exact_formula,
                pass: f.fidelity >= f.bound && (f.fidelity - f.exact_formula).abs() <= FORMULA_TOL,
            })
        })
        .collect::<schurlab::Result<Vec<_>>>()?;

    let mut table = Table::new(&[
        "trial",
        "branches",
        "equal_branches",
        "fidelity",
        "exact_formula",
        "bound",
        "pass",
    ]);
    for r in &rows {
        table.push(vec![
            r.trial.to_string(),
            r.branches.to_string(),
            r.equal_branches.to_string(),
            decimal(r.fidelity),
            decimal(r.exact_formula),
            decimal(bound),
            r.pass.to_string(),
        ]);
    }
    let result = SwaptestResult {
        m: a.m,
        dim: a.dim,
        trials: a.trials,
        seed: a.seed,
        max_branches: a.max_branches,
        bound,
        vacuous: bound <= 0.0,
        min_fidelity: rows
            .iter()
            .map(|r| r.fidelity)
            .fold(f64::INFINITY, f64::min),
        max_formula_error: rows
            .iter()
            .map(|r| (r.fidelity - r.exact_formula).abs())
            .fold(0.0, f64::max),
        all_pass: rows.iter().all(|r| r.pass),
        rows,
    };
    let all_pass = result.all_pass;
    emitter.emit(&Artifact {
        command: "swaptest",
        stem: "swaptest".into(),
        parameters: json!({
            "m": a.m,
            "dim": a.dim,
            "trials": a.trials,
            "max_branches": a.max_branches,
        }),
        seed: Some(a.seed),
        result,
        table,
    })?;
    if !all_pass {
        return Err(Failure::Contradiction(
            "a swap test instance fell below the fidelity bound".into(),
        ));
    }
    Ok(())
}
