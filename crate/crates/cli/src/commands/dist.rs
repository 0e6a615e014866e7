use num_traits::Signed;
use rayon::prelude::*;
use schurlab::spectra::{
    bhattacharyya, check_amplified_lower_bound, check_delta_bounds, check_fidelity_lower_bound,
    check_monotonicity, delta, l1_distance, planch, schur, BoundReport, Enclosure, Quantity,
    FIDELITY_CHECK_MAX_D,
};
use schurlab::{BigRational, ExactDistribution};
use serde::Serialize;
use serde_json::json;

use super::contradictions;
use crate::args::{Compare, DistArgs};
use crate::cache::Cache;
use crate::failure::{CliResult, Failure};
use crate::output::{rat_cells, Artifact, Rat, Table};

/// Largest `d` accepted by `--sweep`.
const SWEEP_MAX_D: usize = 64;

#[derive(Serialize)]
struct Row {
    partition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    planch: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_diff: Option<Rat>,
}

#[derive(Serialize)]
struct Overlap {
    lo: String,
    hi: String,
    decimal: f64,
}

impl From<&Enclosure> for Overlap {
    fn from(e: &Enclosure) -> Self {
        Overlap {
            lo: schurlab::serde_rational::to_string(&e.lo),
            hi: schurlab::serde_rational::to_string(&e.hi),
            decimal: Rat::from(&e.lo).decimal,
        }
    }
}

#[derive(Serialize)]
struct DistResult {
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    compare: &'static str,
    rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bhattacharyya: Option<Overlap>,
    bounds: Vec<BoundReport>,
    all_bounds_hold: bool,
}

pub fn run(a: &DistArgs, cache: &Cache) -> CliResult<()> {
    let emitter = a.output.emitter();
    emitter.check()?;
    if a.sweep {
        return sweep(a, &emitter);
    }
    let k = a.k.expect("clap requires --k without --sweep");
    if (1..=schurlab::characters::MAX_K).contains(&k) {
        cache.preload_sym_table(k)?;
    }
    let compare = match (a.compare, a.d) {
        (Some(c), _) => c,
        (None, Some(_)) => Compare::Both,
        (None, None) => Compare::Planch,
    };
    if compare != Compare::Planch && a.d.is_none() {
        return Err(Failure::Usage("--compare schur/both needs --d".into()));
    }

    let p: Option<ExactDistribution> =
        (compare != Compare::Schur).then(|| planch(k)).transpose()?;
    let s: Option<ExactDistribution> = match (compare, a.d) {
        (Compare::Planch, _) | (_, None) => None,
        (_, Some(d)) => Some(schur(k, d)?),
    };
    let labels = p
        .as_ref()
        .or(s.as_ref())
        .expect("one side is present")
        .partitions()
        .to_vec();
    let mut rows = Vec::new();
    let mut table = Table::new(&[
        "partition",
        "planch",
        "planch_decimal",
        "schur",
        "schur_decimal",
        "abs_diff",
        "abs_diff_decimal",
        "delta",
        "delta_decimal",
    ]);
    let delta = match (&p, &s) {
        (Some(p), Some(s)) => Some(l1_distance(s, p)?),
        _ => None,
    };
    for lam in &labels {
        let pv = p.as_ref().map(|p| p.get(lam));
        let sv = s.as_ref().map(|s| s.get(lam));
        let diff: Option<BigRational> = match (&pv, &sv) {
            (Some(x), Some(y)) => Some((x - y).abs()),
            _ => None,
        };
        let mut cells = vec![lam.to_string()];
        cells.extend(rat_cells(pv.as_ref()));
        cells.extend(rat_cells(sv.as_ref()));
        cells.extend(rat_cells(diff.as_ref()));
        cells.extend(rat_cells(delta.as_ref()));
        table.push(cells);
        rows.push(Row {
            partition: lam.to_string(),
            planch: pv.as_ref().map(Rat::from),
            schur: sv.as_ref().map(Rat::from),
            abs_diff: diff.as_ref().map(Rat::from),
        });
    }

    let overlap = match (&p, &s, a.d) {
        (Some(p), Some(s), Some(d)) if d <= FIDELITY_CHECK_MAX_D => Some(bhattacharyya(s, p)?),
        _ => None,
    };

    let mut bounds = Vec::new();
    if a.bounds {
        let d =
            a.d.ok_or_else(|| Failure::Usage("--bounds needs --d".into()))?;
        if 2 <= k && k <= d {
            bounds.extend(check_delta_bounds(k, d)?);
            if d <= FIDELITY_CHECK_MAX_D {
                bounds.push(check_fidelity_lower_bound(k, d)?);
            }
        }
        if k >= d && d >= 2 {
            bounds.push(check_amplified_lower_bound(k, d)?);
        }
        if let (Some(d2), Some(r)) = (a.d2, a.r) {
            bounds.push(check_monotonicity(k, d, d2, r)?);
        }
    }

    let all_bounds_hold = bounds.iter().all(|b| b.satisfied);
    let result = DistResult {
        k,
        d: a.d,
        compare: match compare {
            Compare::Planch => "planch",
            Compare::Schur => "schur",
            Compare::Both => "both",
        },
        rows,
        delta: delta.as_ref().map(Rat::from),
        bhattacharyya: overlap.as_ref().map(Overlap::from),
        bounds,
        all_bounds_hold,
    };
    let artifact = Artifact {
        command: "dist",
        stem: "dist".into(),
        parameters: json!({
            "k": k,
            "d": a.d,
            "compare": result.compare,
            "bounds": a.bounds,
            "d2": a.d2,
            "r": a.r,
        }),
        seed: None,
        result,
        table,
    };
    emitter.emit(&artifact)?;
    contradictions(&artifact.result.bounds)
}

#[derive(Serialize)]
struct SweepRow {
    k: usize,
    d: usize,
    delta: Rat,
    bounds: Vec<BoundReport>,
}

#[derive(Serialize)]
struct SweepResult {
    k_max: usize,
    d_max: usize,
    rows: Vec<SweepRow>,
    all_bounds_hold: bool,
}

fn sweep(a: &DistArgs, emitter: &crate::output::Emitter) -> CliResult<()> {
    let (k_max, d_max) = (a.k_max.unwrap_or(0), a.d_max.unwrap_or(0));
    if k_max == 0 || d_max == 0 {
        return Err(Failure::Usage(
            "--k-max and --d-max must be at least 1".into(),
        ));
    }
    if k_max > schurlab::spectra::MAX_K {
        return Err(schurlab::Error::CapExceeded {
            what: "k_max",
            limit: schurlab::spectra::MAX_K as u64,
            got: k_max as u64,
        }
        .into());
    }
    if d_max > SWEEP_MAX_D {
        return Err(schurlab::Error::CapExceeded {
            what: "d_max",
            limit: SWEEP_MAX_D as u64,
            got: d_max as u64,
        }
        .into());
    }
    let grid: Vec<(usize, usize)> = (1..=k_max)
        .flat_map(|k| (1..=d_max).map(move |d| (k, d)))
        .collect();
    let rows = grid
        .par_iter()
        .map(
            |&(k, d)| -> schurlab::Result<(SweepRow, Option<BigRational>)> {
                let dl = delta(k, d)?;
                let mut bounds = Vec::new();
                if 2 <= k && k <= d {
                    bounds.extend(check_delta_bounds(k, d)?);
                    if d <= FIDELITY_CHECK_MAX_D {
                        bounds.push(check_fidelity_lower_bound(k, d)?);
                    }
                }
                if k >= d && d >= 2 {
                    bounds.push(check_amplified_lower_bound(k, d)?);
                }
                let lo = bounds.iter().find_map(|b| match &b.lhs {
                    Quantity::Enclosure(e) => Some(e.lo.clone()),
                    _ => None,
                });
                Ok((
                    SweepRow {
                        k,
                        d,
                        delta: Rat::from(&dl),
                        bounds,
                    },
                    lo,
                ))
            },
        )
        .collect::<schurlab::Result<Vec<_>>>()?;

    let mut table = Table::new(&[
        "k",
        "d",
        "delta",
        "delta_decimal",
        "bhattacharyya_lo",
        "bhattacharyya_lo_decimal",
        "bounds_checked",
        "bounds_satisfied",
    ]);
    for (row, lo) in &rows {
        let mut cells = vec![row.k.to_string(), row.d.to_string()];
        cells.push(row.delta.exact.clone());
        cells.push(crate::output::decimal(row.delta.decimal));
        cells.extend(rat_cells(lo.as_ref()));
        cells.push(row.bounds.len().to_string());
        cells.push(
            row.bounds
                .iter()
                .filter(|b| b.satisfied)
                .count()
                .to_string(),
        );
        table.push(cells);
    }
    let rows: Vec<SweepRow> = rows.into_iter().map(|(r, _)| r).collect();
    let all_bounds_hold = rows.iter().flat_map(|r| &r.bounds).all(|b| b.satisfied);
    let artifact = Artifact {
        command: "dist",
        stem: "dist-sweep".into(),
        parameters: json!({ "sweep": true, "k_max": k_max, "d_max": d_max }),
        seed: None,
        result: SweepResult {
            k_max,
            d_max,
            rows,
            all_bounds_hold,
        },
        table,
    };
    emitter.emit(&artifact)?;
    contradictions(artifact.result.rows.iter().flat_map(|r| &r.bounds))
}
