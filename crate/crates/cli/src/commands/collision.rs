use schurlab::collision::CollisionCase;
use schurlab::collision::{
    grover_iterations_unknown_input, montecarlo_collision, plan_collision_algorithm, CollisionPlan,
    MonteCarloReport,
};
use schurlab::spectra::distinguish_advantage;
use serde::Serialize;
use serde_json::json;

use crate::args::{CollisionAction, CollisionArgs};
use crate::failure::CliResult;
use crate::output::{decimal, rat_cells, Artifact, Rat, Table};

#[derive(Serialize)]
struct AdvantageResult {
    d: usize,
    r: usize,
    k: usize,
    l1: Rat,
    success: Rat,
}

#[derive(Serialize)]
struct PlanResult {
    plan: CollisionPlan,
    /// Grover iterations when `r` is unknown and guessed by doubling.
    unknown_input_grover_iters: u64,
}

#[derive(Serialize)]
struct MonteCarloResult {
    d: u64,
    r: u64,
    trials: u64,
    seed: u64,
    reports: Vec<MonteCarloReport>,
    /// `r_to_one` minus `one_to_one` success, when both were run.
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<f64>,
}

pub fn run(a: &CollisionArgs) -> CliResult<()> {
    let emitter = a.output.emitter();
    emitter.check()?;
    match a.action {
        CollisionAction::Advantage { d, r, k } => {
            let adv = distinguish_advantage(k, d, r)?;
            let mut table = Table::new(&[
                "d",
                "r",
                "k",
                "l1",
                "l1_decimal",
                "success",
                "success_decimal",
            ]);
            let mut cells = vec![d.to_string(), r.to_string(), k.to_string()];
            cells.extend(rat_cells(Some(&adv.l1)));
            cells.extend(rat_cells(Some(&adv.success)));
            table.push(cells);
            emitter.emit(&Artifact {
                command: "collision",
                stem: "collision-advantage".into(),
                parameters: json!({ "action": "advantage", "d": d, "r": r, "k": k }),
                seed: None,
                result: AdvantageResult {
                    d,
                    r,
                    k,
                    l1: Rat::from(&adv.l1),
                    success: Rat::from(&adv.success),
                },
                table,
            })
        }
        CollisionAction::Plan { d, r } => {
            let plan = plan_collision_algorithm(d, r)?;
            let unknown = grover_iterations_unknown_input(d, r)?;
            let mut table = Table::new(&["field", "value"]);
            for (field, value) in [
                ("d", plan.d.to_string()),
                ("r", plan.r.to_string()),
                ("table_size", plan.table_size.to_string()),
                ("m", plan.m.to_string()),
                ("grover_iters", plan.grover_iters.to_string()),
                ("total_queries", plan.total_queries.to_string()),
                ("amplification_iters", plan.amplification_iters.to_string()),
                ("comparison_error", decimal(plan.comparison_error)),
                ("running_time_estimate", decimal(plan.running_time_estimate)),
                ("unknown_input_grover_iters", unknown.to_string()),
            ] {
                table.push(vec![field.to_string(), value]);
            }
            emitter.emit(&Artifact {
                command: "collision",
                stem: "collision-plan".into(),
                parameters: json!({ "action": "plan", "d": d, "r": r }),
                seed: None,
                result: PlanResult {
                    plan,
                    unknown_input_grover_iters: unknown,
                },
                table,
            })
        }
        CollisionAction::Montecarlo {
            d,
            r,
            trials,
            seed,
            case,
        } => {
            let reports = case
                .cases()
                .into_iter()
                .map(|c| montecarlo_collision(d, r, trials, seed, c))
                .collect::<schurlab::Result<Vec<_>>>()?;
            let rate =
                |c: CollisionCase| reports.iter().find(|x| x.case == c).map(|x| x.success_rate);
            let gap = rate(CollisionCase::RToOne)
                .zip(rate(CollisionCase::OneToOne))
                .map(|(a, b)| a - b);
            let mut table = Table::new(&[
                "case",
                "trials",
                "seed",
                "success_rate",
                "mean_queries",
                "table_collisions",
            ]);
            for rep in &reports {
                table.push(vec![
                    rep.case.to_string(),
                    rep.trials.to_string(),
                    rep.seed.to_string(),
                    decimal(rep.success_rate),
                    decimal(rep.mean_queries),
                    rep.table_collisions.to_string(),
                ]);
            }
            let case_name = match reports.as_slice() {
                [one] => one.case.to_string(),
                _ => "both".to_string(),
            };
            emitter.emit(&Artifact {
                command: "collision",
                stem: "collision-montecarlo".into(),
                parameters: json!({
                    "action": "montecarlo",
                    "d": d,
                    "r": r,
                    "trials": trials,
                    "case": case_name,
                }),
                seed: Some(seed),
                result: MonteCarloResult {
                    d,
                    r,
                    trials,
                    seed,
                    reports,
                    gap,
                },
                table,
            })
        }
    }
}
