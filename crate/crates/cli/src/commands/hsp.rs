use schurlab::groups::{
    fourier_distribution, hidden_subgroup_state, CharacterTable, FiniteGroup, Subgroup,
};
use schurlab::sampling::{
    indistinguishability_bound, joint_fourier_schur, prob_repeated_irrep, weak_schur_dist, Clamp,
    IrrepType,
};
use schurlab::scalar::ratio_to_f64;
use schurlab::spectra::{planch, schur};
use schurlab::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::args::{HspArgs, HspMode};
use crate::cache::Cache;
use crate::failure::{CliResult, Failure};
use crate::output::{decimal, rat_cells, Artifact, Rat, Table};

/// Tolerance for a multiplicity-free conditional against `Planch(k)`.
pub const CONDITIONAL_TOL: f64 = 1e-9;

#[derive(Serialize)]
struct SubgroupInfo {
    spec: String,
    order: usize,
    elements: Vec<String>,
}

#[derive(Serialize)]
struct IrrepRow {
    label: String,
    dim: usize,
    probability: Rat,
}

#[derive(Serialize)]
struct RepeatedReport {
    exact: Rat,
    bound: Rat,
    /// The bound says something only when it is at most 1.
    informative: bool,
    holds: bool,
}

#[derive(Serialize)]
struct SchurRow {
    partition: String,
    probability: f64,
    /// `Schur(k, |G|/|H|)`; the hidden subgroup state is flat of that rank.
    formula: Rat,
    abs_diff: f64,
}

#[derive(Serialize)]
struct SchurReport {
    registers: usize,
    rows: Vec<SchurRow>,
    max_abs_diff: f64,
    clamped: Vec<Clamp>,
}

#[derive(Serialize)]
struct JointReport {
    partitions: Vec<String>,
    types: Vec<IrrepType>,
    planch: Vec<f64>,
    /// Largest `|Pr(λ | σ̄) - Planch(λ)|` over multiplicity-free types.
    multiplicity_free_max_deviation: f64,
    total: f64,
    clamped: Vec<Clamp>,
}

#[derive(Serialize)]
struct HspResult {
    group: String,
    order: usize,
    subgroup: SubgroupInfo,
    k: usize,
    mode: &'static str,
    d_max: usize,
    fourier: Vec<IrrepRow>,
    indistinguishability_bound: Rat,
    repeated_irrep: RepeatedReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur: Option<SchurReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    joint: Option<JointReport>,
}

pub fn run(a: &HspArgs, cache: &Cache) -> CliResult<()> {
    let emitter = a.output.emitter();
    emitter.check()?;
    if a.k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let group = a.group.build()?;
    let subgroup = a.subgroup.resolve(&group)?;
    let table = cache.group_table(&group)?;
    if a.mode != HspMode::Fourier {
        cache.preload_sym_table(a.k.min(schurlab::characters::MAX_K))?;
    }

    let fourier = fourier_distribution(&group, &table, &subgroup)?;
    let repeated = prob_repeated_irrep(&group, &table, &subgroup, a.k)?;
    let one = BigRational::from_integer(1.into());
    let informative = repeated.bound <= one;
    let repeated_irrep = RepeatedReport {
        exact: Rat::from(&repeated.exact),
        bound: Rat::from(&repeated.bound),
        informative,
        holds: repeated.exact <= repeated.bound,
    };
    let bound = indistinguishability_bound(
        group.order() as u64,
        subgroup.order() as u64,
        table.d_max as u64,
        a.k as u64,
    );

    let (mode, table_out, schur_report, joint_report) = match a.mode {
        HspMode::Fourier => ("fourier", fourier_table(&table, &fourier), None, None),
        HspMode::Schur => {
            let (t, r) = schur_mode(&group, &subgroup, a.k)?;
            ("schur", t, Some(r), None)
        }
        HspMode::Joint => {
            let (t, r) = joint_mode(&group, &table, &subgroup, a.k)?;
            ("joint", t, None, Some(r))
        }
    };

    let result = HspResult {
        group: a.group.to_string(),
        order: group.order(),
        subgroup: SubgroupInfo {
            spec: a.subgroup.to_string(),
            order: subgroup.order(),
            elements: subgroup
                .elements()
                .iter()
                .map(|&g| group.name(g).to_string())
                .collect(),
        },
        k: a.k,
        mode,
        d_max: table.d_max,
        fourier: table
            .irreps
            .iter()
            .zip(&fourier)
            .map(|(irrep, p)| IrrepRow {
                label: irrep.label.clone(),
                dim: irrep.dim,
                probability: Rat::from(p),
            })
            .collect(),
        indistinguishability_bound: Rat::from(&bound),
        repeated_irrep,
        schur: schur_report,
        joint: joint_report,
    };
    let artifact = Artifact {
        command: "hsp",
        stem: format!("hsp-{mode}"),
        parameters: json!({
            "group": a.group.to_string(),
            "subgroup": a.subgroup.to_string(),
            "k": a.k,
            "mode": mode,
        }),
        seed: None,
        result,
        table: table_out,
    };
    emitter.emit(&artifact)?;

    let r = &artifact.result;
    if informative && !r.repeated_irrep.holds {
        return Err(Failure::Contradiction(format!(
            "repeated-irrep probability {} exceeds its bound {}",
            r.repeated_irrep.exact.exact, r.repeated_irrep.bound.exact
        )));
    }
    if let Some(j) = &r.joint {
        if j.multiplicity_free_max_deviation > CONDITIONAL_TOL {
            return Err(Failure::Contradiction(format!(
                "a multiplicity-free conditional differs from Planch({}) by {:e}",
                a.k, j.multiplicity_free_max_deviation
            )));
        }
    }
    Ok(())
}

fn fourier_table(table: &CharacterTable, fourier: &[BigRational]) -> Table {
    let mut t = Table::new(&["irrep", "dim", "probability", "probability_decimal"]);
    for (irrep, p) in table.irreps.iter().zip(fourier) {
        let mut cells = vec![irrep.label.clone(), irrep.dim.to_string()];
        cells.extend(rat_cells(Some(p)));
        t.push(cells);
    }
    t
}

fn schur_mode(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    k: usize,
) -> CliResult<(Table, SchurReport)> {
    let n = group.order();
    schurlab::sampling::check_registers(k, n)?;
    let rho = hidden_subgroup_state::<f64>(group, subgroup).tensor_power(k);
    let ws = weak_schur_dist(&rho, k, n)?;
    let formula = schur::<BigRational>(k, n / subgroup.order())?;
    let mut t = Table::new(&["partition", "probability", "formula", "formula_decimal"]);
    let mut rows = Vec::new();
    for (lam, &p) in ws.distribution.iter() {
        let f = formula.get(lam);
        let mut cells = vec![lam.to_string(), decimal(p)];
        cells.extend(rat_cells(Some(&f)));
        t.push(cells);
        rows.push(SchurRow {
            partition: lam.to_string(),
            probability: p,
            abs_diff: (p - ratio_to_f64(&f)).abs(),
            formula: Rat::from(&f),
        });
    }
    let max_abs_diff = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    Ok((
        t,
        SchurReport {
            registers: n,
            rows,
            max_abs_diff,
            clamped: ws.clamped,
        },
    ))
}

fn joint_mode(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    k: usize,
) -> CliResult<(Table, JointReport)> {
    let joint = joint_fourier_schur::<f64>(group, table, subgroup, k)?;
    let pl = planch::<BigRational>(k)?;
    let planch: Vec<f64> = joint
        .partitions
        .iter()
        .map(|l| ratio_to_f64(&pl.get(l)))
        .collect();
    let mut deviation: f64 = 0.0;
    for t in joint.types.iter().filter(|t| t.is_multiplicity_free()) {
        if let Some(c) = &t.conditional {
            for (x, y) in c.iter().zip(&planch) {
                deviation = deviation.max((x - y).abs());
            }
        }
    }
    let mut out = Table::new(&[
        "irrep_type",
        "sequences",
        "type_probability",
        "partition",
        "conditional",
        "probability",
    ]);
    for t in &joint.types {
        for (i, lam) in joint.partitions.iter().enumerate() {
            let c = t.conditional.as_ref().map(|c| c[i]);
            out.push(vec![
                t.labels.join(" "),
                t.sequences.to_string(),
                decimal(t.probability),
                lam.to_string(),
                c.map(decimal).unwrap_or_default(),
                decimal(c.unwrap_or(0.0) * t.probability),
            ]);
        }
    }
    Ok((
        out,
        JointReport {
            partitions: joint.partitions.iter().map(|l| l.to_string()).collect(),
            total: joint.total(),
            types: joint.types,
            planch,
            multiplicity_free_max_deviation: deviation,
            clamped: joint.clamped,
        },
    ))
}
