//! The amplified swap test and query accounting for the quantum collision
//! algorithm.
//!
//! Swap test registers are ordered `α^{⊗m} β^{⊗m}` with register 1 most
//! significant; pair `j` is registers `(j, m + j)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::ComplexField;
use num_complex::Complex;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, invalid, Error, Result};
use crate::linalg::{kron_vec, random_unit_vector, zeros, MAX_DIM};
use crate::scalar::{complex, Real};
use crate::{CMatrix, CVector};

/// Largest number of branches in a swap test instance.
pub const MAX_BRANCHES: usize = 64;
/// Largest Monte Carlo trial count.
pub const MAX_TRIALS: u64 = 10_000_000;
/// Largest domain size for the Monte Carlo.
pub const MAX_DOMAIN: u64 = 1 << 32;

fn swap_dim(m: usize, dim: usize) -> Result<usize> {
    if m == 0 || dim == 0 {
        return Err(invalid(format!(
            "need m >= 1 and dim >= 1, got m={m}, dim={dim}"
        )));
    }
    let n = (dim as u64).checked_pow(2 * m as u32).unwrap_or(u64::MAX);
    check_cap("dim^(2m)", n, MAX_DIM as u64)?;
    Ok(n as usize)
}

/// For each basis index, its image under the swap of registers `j` and `m + j`.
fn pair_swaps(m: usize, dim: usize) -> Vec<Vec<usize>> {
    let n = dim.pow(2 * m as u32);
    let weight = |reg: usize| dim.pow((2 * m - 1 - reg) as u32);
    (0..m)
        .map(|j| {
            let (wa, wb) = (weight(j), weight(m + j));
            (0..n)
                .map(|x| {
                    let (a, b) = ((x / wa) % dim, (x / wb) % dim);
                    x - a * wa - b * wb + b * wa + a * wb
                })
                .collect()
        })
        .collect()
}

/// `U = 1 - 2Π` with `Π = ⊗_j (I + SWAP_j)/2` on `(C^dim)^{⊗2m}`.
pub fn amplified_swap_unitary<F: Real>(m: usize, dim: usize) -> Result<CMatrix<F>> {
    let n = swap_dim(m, dim)?;
    let mut u = zeros::<F>(n);
    let swaps = pair_swaps(m, dim);
    for x in 0..n {
        let mut col = CVector::<F>::zeros(n);
        col[x] = Complex::new(F::one(), F::zero());
        u.set_column(x, &apply_unitary(&swaps, &col, 1));
    }
    Ok(u)
}

/// `(U ⊗ I_blocks) v` where the system index is the most significant.
fn apply_unitary<F: Real>(swaps: &[Vec<usize>], v: &CVector<F>, blocks: usize) -> CVector<F> {
    let half = F::cast(0.5);
    let mut p = v.clone();
    for swap in swaps {
        let mut next = p.clone();
        for (x, &y) in swap.iter().enumerate() {
            for b in 0..blocks {
                next[x * blocks + b] = (p[x * blocks + b] + p[y * blocks + b]) * half;
            }
        }
        p = next;
    }
    v - p * Complex::new(F::cast(2.0), F::zero())
}

/// One branch `a |α⟩^{⊗m} |β⟩^{⊗m} |γ⟩` of a swap test input.
#[derive(Clone, Debug)]
pub struct SwapBranch<F: Real> {
    pub amplitude: Complex<F>,
    pub alpha: CVector<F>,
    pub beta: CVector<F>,
    /// `true` when `β` equals `α` up to phase, `false` when orthogonal.
    pub theta: bool,
}

/// A superposition of branches with orthonormal ancilla tags `|γ_i⟩ = |i⟩`.
#[derive(Clone, Debug)]
pub struct SwapTestInstance<F: Real> {
    m: usize,
    dim: usize,
    branches: Vec<SwapBranch<F>>,
}

impl<F: Real> SwapTestInstance<F> {
    pub fn new(m: usize, dim: usize, branches: Vec<SwapBranch<F>>) -> Result<Self> {
        swap_dim(m, dim)?;
        if branches.is_empty() {
            return Err(invalid("swap test needs at least one branch"));
        }
        check_cap("branches", branches.len() as u64, MAX_BRANCHES as u64)?;
        let tol = F::VALIDATION_TOL;
        let norm: f64 = branches
            .iter()
            .map(|b| b.amplitude.norm_sqr().as_f64())
            .sum();
        if (norm - 1.0).abs() > tol {
            return Err(Error::InvariantViolation(format!(
                "branch amplitudes have squared norm {norm}"
            )));
        }
        for (i, b) in branches.iter().enumerate() {
            if b.alpha.len() != dim || b.beta.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "branch {i} vectors are not in C^{dim}"
                )));
            }
            let (na, nb) = (b.alpha.norm().as_f64(), b.beta.norm().as_f64());
            if (na - 1.0).abs() > tol || (nb - 1.0).abs() > tol {
                return Err(Error::InvariantViolation(format!(
                    "branch {i} vectors are not unit"
                )));
            }
            let overlap = b.alpha.dotc(&b.beta).modulus().as_f64();
            let want = if b.theta { 1.0 } else { 0.0 };
            if (overlap - want).abs() > tol {
                return Err(Error::InvariantViolation(format!(
                    "branch {i} has |<alpha|beta>| = {overlap} but theta = {}",
                    b.theta as u8
                )));
            }
        }
        Ok(Self { m, dim, branches })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn branches(&self) -> &[SwapBranch<F>] {
        &self.branches
    }

    /// `|ψ⟩` (or `|ψ'⟩` with the `(-1)^{θ_i}` signs when `signed`), ancilla least significant.
    fn state(&self, signed: bool) -> CVector<F> {
        let nb = self.branches.len();
        let mut out = CVector::<F>::zeros(self.dim.pow(2 * self.m as u32) * nb);
        for (i, b) in self.branches.iter().enumerate() {
            let mut v = CVector::<F>::from_element(1, Complex::new(F::one(), F::zero()));
            for _ in 0..self.m {
                v = kron_vec(&v, &b.alpha);
            }
            for _ in 0..self.m {
                v = kron_vec(&v, &b.beta);
            }
            let mut a = b.amplitude;
            if signed && b.theta {
                a = -a;
            }
            for (x, c) in v.iter().enumerate() {
                out[x * nb + i] = *c * a;
            }
        }
        out
    }

    /// Random instance with `branches` branches, each `θ` a fair coin.
    /// Needs `dim >= 2` for orthogonal pairs.
    pub fn random<R: Rng + ?Sized>(
        m: usize,
        dim: usize,
        branches: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(invalid("random swap test instances need dim >= 2"));
        }
        let amps = random_unit_vector::<F, _>(branches, rng);
        let bs = amps
            .iter()
            .map(|&amplitude| {
                let alpha = random_unit_vector::<F, _>(dim, rng);
                let theta = rng.random_bool(0.5);
                let beta = if theta {
                    let phase: f64 = rng.random_range(0.0..2.0 * PI);
                    alpha.clone() * complex::<F>(phase.cos(), phase.sin())
                } else {
                    loop {
                        let w = random_unit_vector::<F, _>(dim, rng);
                        let w = &w - &alpha * alpha.dotc(&w);
                        let n = w.norm();
                        if n > F::cast(1e-3) {
                            break w.unscale(n);
                        }
                    }
                };
                SwapBranch {
                    amplitude,
                    alpha,
                    beta,
                    theta,
                }
            })
            .collect();
        Self::new(m, dim, bs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SwapFidelity {
    /// `|⟨ψ'|U|ψ⟩|²` from the state vectors.
    pub fidelity: f64,
    /// `1 - 2^{2-m}`.
    pub bound: f64,
    /// `|1 - Σ_i |a_i|² [θ_i = 0] 2^{1-m}|²`.
    pub exact_formula: f64,
    /// The bound is at most zero and says nothing.
    pub vacuous: bool,
}

pub fn swap_test_bound(m: usize) -> f64 {
    1.0 - 2f64.powi(2 - m as i32)
}

pub fn swap_fidelity<F: Real>(instance: &SwapTestInstance<F>) -> Result<SwapFidelity> {
    let nb = instance.branches.len();
    let total = swap_dim(instance.m, instance.dim)? * nb;
    check_cap("state dimension", total as u64, (MAX_DIM * 16) as u64)?;
    let psi = instance.state(false);
    let psi_prime = instance.state(true);
    let swaps = pair_swaps(instance.m, instance.dim);
    let u_psi = apply_unitary(&swaps, &psi, nb);
    let fidelity = psi_prime.dotc(&u_psi).norm_sqr().as_f64();
    let orthogonal_weight: f64 = instance
        .branches
        .iter()
        .filter(|b| !b.theta)
        .map(|b| b.amplitude.norm_sqr().as_f64())
        .sum();
    let exact_formula = (1.0 - orthogonal_weight * 2f64.powi(1 - instance.m as i32)).powi(2);
    let bound = swap_test_bound(instance.m);
    Ok(SwapFidelity {
        fidelity,
        bound,
        exact_formula,
        vacuous: bound <= 0.0,
    })
}

/// `ε0 + ℓ 2^{1 - m/2}`.
pub fn error_accumulation(iterations: u64, m: u32, eps0: f64) -> f64 {
    eps0 + iterations as f64 * 2f64.powf(1.0 - m as f64 / 2.0)
}

fn cube_root_round(q: u64) -> u64 {
    // largest c with (c - 1/2)^3 <= q
    let mut c = 0u64;
    while (2 * c + 1).pow(3) <= 8 * q {
        c += 1;
    }
    c
}

fn cube_root_ceil(q: u64) -> u64 {
    let mut c = 0u64;
    while c.pow(3) < q {
        c += 1;
    }
    c
}

fn ceil_log2(q: u64) -> u32 {
    q.next_power_of_two().trailing_zeros()
}

/// Resource plan for the collision algorithm on `f: [d] → [d/r]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollisionPlan {
    pub d: u64,
    pub r: u64,
    /// `round((d/r)^{1/3})` table entries.
    pub table_size: u64,
    /// `2 + 2 ceil(log2(d/r))` copies per comparison.
    pub m: u32,
    /// `ceil((d/r)^{1/3})` Grover iterations budgeted.
    pub grover_iters: u64,
    /// `m · table_size + 2m · grover_iters`.
    pub total_queries: u64,
    /// Iterations actually run: the budget, capped at `floor(π / 4θ)` for
    /// `sin²θ = (r - 1) table_size / (d - table_size)` so that amplitude
    /// amplification does not overshoot.
    pub amplification_iters: u64,
    /// `ℓ 2^{1 - m/2}` for the budgeted `ℓ`.
    pub comparison_error: f64,
    /// `sqrt(d/r) log2(d/r)`, the running time with a Grover-implemented comparison.
    pub running_time_estimate: f64,
}

pub fn plan_collision_algorithm(d: u64, r: u64) -> Result<CollisionPlan> {
    if r == 0 || !d.is_multiple_of(r) {
        return Err(invalid(format!("r = {r} must divide d = {d}")));
    }
    let q = d / r;
    if q < 2 {
        return Err(invalid(format!("need d/r >= 2, got {q}")));
    }
    check_cap("d", d, MAX_DOMAIN)?;
    let table_size = cube_root_round(q);
    let grover_iters = cube_root_ceil(q);
    let m = 2 + 2 * ceil_log2(q);
    let total_queries = m as u64 * table_size + 2 * m as u64 * grover_iters;
    let marked = ((r - 1) * table_size) as f64 / (d - table_size) as f64;
    let amplification_iters = if marked > 0.0 {
        let theta = marked.sqrt().asin();
        grover_iters.min((PI / (4.0 * theta)).floor() as u64)
    } else {
        grover_iters
    };
    Ok(CollisionPlan {
        d,
        r,
        table_size,
        m,
        grover_iters,
        total_queries,
        amplification_iters,
        comparison_error: error_accumulation(grover_iters, m, 0.0),
        running_time_estimate: (q as f64).sqrt() * (q as f64).log2(),
    })
}

/// `floor(4 / (π sqrt(asin((r/d)^{2/3}))))`.
pub fn grover_iterations_unknown_input(d: u64, r: u64) -> Result<u64> {
    if r == 0 || r > d {
        return Err(invalid(format!("need 1 <= r <= d, got r={r}, d={d}")));
    }
    let x = (r as f64 / d as f64).powf(2.0 / 3.0).min(1.0);
    Ok((4.0 / (PI * x.asin().sqrt())).floor() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionCase {
    OneToOne,
    RToOne,
}

impl fmt::Display for CollisionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollisionCase::OneToOne => "one_to_one",
            CollisionCase::RToOne => "r_to_one",
        })
    }
}

impl FromStr for CollisionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_to_one" => Ok(CollisionCase::OneToOne),
            "r_to_one" => Ok(CollisionCase::RToOne),
            other => Err(invalid(format!(
                "unknown case {other:?}, expected one_to_one or r_to_one"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub case: CollisionCase,
    pub trials: u64,
    pub seed: u64,
    pub plan: CollisionPlan,
    pub success_rate: f64,
    pub mean_queries: f64,
    /// Trials whose table had two entries with the same value.
    pub table_collisions: u64,
}

/// Number of inputs outside the table whose value appears in the table:
/// `Σ_v (r - c_v)` over distinct table values `v` with multiplicity `c_v`.
fn marked_outside(values: &mut [u64], r: u64) -> (u64, bool) {
    values.sort_unstable();
    let mut marked = 0;
    let mut collided = false;
    for run in values.chunk_by(|a, b| a == b) {
        marked += r - run.len() as u64;
        collided |= run.len() > 1;
    }
    (marked, collided)
}

/// Classical model of the algorithm. A trial draws a random table of
/// distinct inputs, counts the marked inputs outside it, and scores the
/// amplitude amplification success `sin²((2ℓ+1)θ)` less the accumulated
/// comparison error. A uniformly random `r`-to-one function composed with a
/// random table has the law of the fixed function `x ↦ ⌊x/r⌋`, which is
/// used directly.
pub fn montecarlo_collision(
    d: u64,
    r: u64,
    trials: u64,
    seed: u64,
    case: CollisionCase,
) -> Result<MonteCarloReport> {
    let plan = plan_collision_algorithm(d, r)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    check_cap("trials", trials, MAX_TRIALS)?;
    let ell = plan.amplification_iters;
    let penalty = error_accumulation(ell, plan.m, 0.0);
    let outside = (d - plan.table_size) as f64;
    let outcomes: Vec<(f64, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let table = sample(&mut rng, d as usize, plan.table_size as usize);
            let (marked, collided) = match case {
                CollisionCase::OneToOne => (0, false),
                CollisionCase::RToOne => {
                    let mut values: Vec<u64> = table.iter().map(|x| x as u64 / r).collect();
                    marked_outside(&mut values, r)
                }
            };
            let theta = (marked as f64 / outside).sqrt().asin();
            let success = ((2 * ell + 1) as f64 * theta).sin().powi(2) - penalty;
            (success.max(0.0), collided)
        })
        .collect();
    let total: f64 = outcomes.iter().map(|o| o.0).sum();
    let m = plan.m as u64;
    Ok(MonteCarloReport {
        case,
        trials,
        seed,
        success_rate: total / trials as f64,
        mean_queries: (m * plan.table_size + 2 * m * ell) as f64,
        table_collisions: outcomes.iter().filter(|o| o.1).count() as u64,
        plan,
    })
}
