//! Brute-force weak Schur sampling on `(C^d)^{⊗k}` and joint weak
//! Fourier-Schur sampling of hidden subgroup states.
//!
//! Register 1 is the most significant digit of a basis index, and
//! `P(π)|i_1 … i_k⟩ = |i_{π⁻¹(1)} … i_{π⁻¹(k)}⟩`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{character_table, SymCharacterTable};
use crate::error::{check_cap, invalid, Error, Result};
use crate::groups::{fourier_distribution, hidden_subgroup_state, isotypic_projector};
use crate::groups::{CharacterTable, FiniteGroup, Subgroup};
use crate::linalg::{zeros, DensityMatrix, MAX_DIM};
use crate::perm::Permutation;
use crate::scalar::{complex, Real};
use crate::spectra::PartitionDistribution;
use crate::young::{binomial, dim_sym_irrep, factorial, Partition};
use crate::CMatrix;

/// Largest number of registers for the `S_k` sums.
pub const MAX_K: usize = 6;

/// Checks `k` and `d^k` against the caps and returns `d^k`.
pub fn check_registers(k: usize, d: usize) -> Result<usize> {
    if k == 0 || d == 0 {
        return Err(invalid(format!("need k >= 1 and d >= 1, got k={k}, d={d}")));
    }
    check_cap("k", k as u64, MAX_K as u64)?;
    let dim = (d as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    check_cap("d^k", dim, MAX_DIM as u64)?;
    Ok(dim as usize)
}

/// Digits of `x` in base `d`, register 1 first.
fn digits(mut x: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// Image of each basis index under `P(π)`.
fn register_permutation(k: usize, d: usize, pi: &Permutation) -> Vec<usize> {
    let n = d.pow(k as u32);
    let mut out_digits = vec![0; k];
    (0..n)
        .map(|x| {
            let ds = digits(x, d, k);
            for (s, &v) in ds.iter().enumerate() {
                out_digits[pi.apply(s)] = v;
            }
            undigits(&out_digits, d)
        })
        .collect()
}

/// The matrix of `P(π)` on `(C^d)^{⊗k}`.
pub fn permutation_matrix<F: Real>(k: usize, d: usize, pi: &Permutation) -> Result<CMatrix<F>> {
    let n = check_registers(k, d)?;
    if pi.degree() != k {
        return Err(Error::ShapeMismatch(format!(
            "permutation of {} points acting on {k} registers",
            pi.degree()
        )));
    }
    let image = register_permutation(k, d, pi);
    Ok(crate::linalg::permutation_matrix(n, |x| image[x]))
}

fn class_values(table: &SymCharacterTable, pi: &Permutation) -> Vec<i64> {
    let c = table
        .class_index(&pi.cycle_type())
        .expect("every cycle type is a class");
    table.values.iter().map(|row| row[c]).collect()
}

/// The isotypic projectors `Π_λ = (dim P_λ / k!) Σ_π χ_λ(π) P(π)`.
#[derive(Clone, Debug)]
pub struct SchurProjectorSet<F: Real> {
    pub k: usize,
    pub d: usize,
    pub projectors: Vec<(Partition, CMatrix<F>)>,
}

impl<F: Real> SchurProjectorSet<F> {
    pub fn get(&self, lambda: &Partition) -> Option<&CMatrix<F>> {
        self.projectors
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, m)| m)
    }
}

pub fn schur_projectors<F: Real>(k: usize, d: usize) -> Result<SchurProjectorSet<F>> {
    let n = check_registers(k, d)?;
    let table = character_table(k)?;
    let kf = factorial(k);
    let scales: Vec<f64> = table
        .partitions
        .iter()
        .map(|l| crate::scalar::ratio_to_f64(&BigRational::new(dim_sym_irrep(l), kf.clone())))
        .collect();
    let mut mats: Vec<CMatrix<F>> = table.partitions.iter().map(|_| zeros(n)).collect();
    for pi in Permutation::all(k) {
        let image = register_permutation(k, d, &pi);
        let chis = class_values(&table, &pi);
        for ((m, &chi), &scale) in mats.iter_mut().zip(&chis).zip(&scales) {
            if chi == 0 {
                continue;
            }
            let w = complex::<F>(chi as f64 * scale, 0.0);
            for (x, &y) in image.iter().enumerate() {
                m[(y, x)] += w;
            }
        }
    }
    Ok(SchurProjectorSet {
        k,
        d,
        projectors: table.partitions.iter().cloned().zip(mats).collect(),
    })
}

/// A probability in `[-tol, 0)` that was set to zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clamp {
    pub label: String,
    pub value: f64,
}

fn clamp<F: Real>(label: impl FnOnce() -> String, p: F, clamped: &mut Vec<Clamp>) -> Result<F> {
    if p >= F::zero() {
        return Ok(p);
    }
    let v = p.as_f64();
    if v < -F::VALIDATION_TOL {
        return Err(Error::InvariantViolation(format!(
            "probability {v:e} at {} is below -{:e}",
            label(),
            F::VALIDATION_TOL
        )));
    }
    clamped.push(Clamp {
        label: label(),
        value: v,
    });
    Ok(F::zero())
}

#[derive(Clone, Debug)]
pub struct WeakSchur<F: Real> {
    pub distribution: PartitionDistribution<F>,
    pub clamped: Vec<Clamp>,
}

/// `Pr(λ | γ) = tr(Π_λ γ)` for a state on `(C^d)^{⊗k}`, computed from the
/// traces `tr(P(π) γ)` without forming the projectors.
pub fn weak_schur_dist<F: Real>(
    gamma: &DensityMatrix<F>,
    k: usize,
    d: usize,
) -> Result<WeakSchur<F>> {
    let n = check_registers(k, d)?;
    if gamma.dim() != n {
        return Err(Error::ShapeMismatch(format!(
            "state of dimension {} on {k} registers of dimension {d}",
            gamma.dim()
        )));
    }
    let g = gamma.matrix();
    let table = character_table(k)?;
    let mut acc = vec![Complex::new(F::zero(), F::zero()); table.partitions.len()];
    for pi in Permutation::all(k) {
        let image = register_permutation(k, d, &pi);
        // tr(P γ) = Σ_y γ[y, P y]
        let tr = image
            .iter()
            .enumerate()
            .fold(Complex::new(F::zero(), F::zero()), |s, (y, &x)| {
                s + g[(y, x)]
            });
        for (a, chi) in acc.iter_mut().zip(class_values(&table, &pi)) {
            *a += tr * F::cast(chi as f64);
        }
    }
    let kf = factorial(k);
    let mut clamped = Vec::new();
    let entries = table
        .partitions
        .iter()
        .zip(acc)
        .map(|(lam, a)| {
            let scale = F::cast(crate::scalar::ratio_to_f64(&BigRational::new(
                dim_sym_irrep(lam),
                kf.clone(),
            )));
            let p = clamp(|| lam.to_string(), a.re * scale, &mut clamped)?;
            Ok((lam.clone(), p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakSchur {
        distribution: PartitionDistribution::new(k, entries)?,
        clamped,
    })
}

/// One canonical irrep type: a nondecreasing sequence of irrep indices.
#[derive(Clone, Debug, Serialize)]
pub struct IrrepType {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    /// Number of sequences with this type.
    pub sequences: u64,
    /// Probability of observing this type.
    pub probability: f64,
    /// `Pr(λ | σ̄)` aligned with [`JointDistribution::partitions`]; absent
    /// when the type has probability zero.
    pub conditional: Option<Vec<f64>>,
}

impl IrrepType {
    pub fn is_multiplicity_free(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] != w[1])
    }
}

/// Joint law of the irrep type and the partition under weak Fourier-Schur
/// sampling of `ρ_H^{⊗k}`.
#[derive(Clone, Debug, Serialize)]
pub struct JointDistribution {
    pub k: usize,
    pub partitions: Vec<Partition>,
    pub types: Vec<IrrepType>,
    pub clamped: Vec<Clamp>,
}

impl JointDistribution {
    /// `(type, λ, probability)` triples in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&IrrepType, &Partition, f64)> + '_ {
        self.types.iter().flat_map(move |t| {
            self.partitions.iter().enumerate().map(move |(i, lam)| {
                let p = t.conditional.as_ref().map_or(0.0, |c| c[i] * t.probability);
                (t, lam, p)
            })
        })
    }

    pub fn total(&self) -> f64 {
        self.entries().map(|(_, _, p)| p).sum()
    }

    pub fn partition_marginal(&self) -> Result<PartitionDistribution<f64>> {
        let mut probs = vec![0.0; self.partitions.len()];
        for t in &self.types {
            if let Some(c) = &t.conditional {
                for (p, q) in probs.iter_mut().zip(c) {
                    *p += q * t.probability;
                }
            }
        }
        PartitionDistribution::new(self.k, self.partitions.iter().cloned().zip(probs))
    }
}

/// Nondecreasing sequences of length `k` over `0..m`.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn arrangements(indices: &[usize]) -> u64 {
    let mut count = factorial(indices.len());
    for run in indices.chunk_by(|a, b| a == b) {
        count /= factorial(run.len());
    }
    u64::try_from(count).expect("k <= 6")
}

/// `tr(P(π) (B_{s_1} ⊗ … ⊗ B_{s_k}))`: each cycle `(r, π r, …)` of `π`
/// contributes `tr(B_{π^{c-1} r} ⋯ B_{π r} B_r)`.
fn cycle_trace<F: Real>(pi: &Permutation, blocks: &[&CMatrix<F>]) -> Complex<F> {
    pi.cycles()
        .iter()
        .map(|cycle| {
            let mut prod = blocks[cycle[0]].clone();
            for &r in &cycle[1..] {
                prod = blocks[r] * prod;
            }
            prod.trace()
        })
        .fold(Complex::new(F::one(), F::zero()), |a, b| a * b)
}

/// Weak Fourier-Schur sampling of `ρ_H^{⊗k}`: measure the irrep of each
/// register, then the Schur-Weyl partition.
///
/// Only one sequence per type is evaluated; the others are register
/// permutations of it, which the partition measurement cannot see.
pub fn joint_fourier_schur<F: Real>(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    k: usize,
) -> Result<JointDistribution> {
    check_registers(k, group.order())?;
    let rho = hidden_subgroup_state::<F>(group, subgroup);
    let fourier = fourier_distribution(group, table, subgroup)?;
    let blocks = (0..table.len())
        .map(|s| Ok(isotypic_projector::<F>(group, table, s)? * rho.matrix()))
        .collect::<Result<Vec<_>>>()?;
    let sym = character_table(k)?;
    let perms = Permutation::all(k);
    let kf = factorial(k);
    let scales: Vec<F> = sym
        .partitions
        .iter()
        .map(|l| {
            F::cast(crate::scalar::ratio_to_f64(&BigRational::new(
                dim_sym_irrep(l),
                kf.clone(),
            )))
        })
        .collect();

    let results = multisets(table.len(), k)
        .into_par_iter()
        .map(|indices| {
            let bs: Vec<&CMatrix<F>> = indices.iter().map(|&i| &blocks[i]).collect();
            let p_seq = indices
                .iter()
                .fold(BigRational::one(), |a, &i| a * &fourier[i]);
            let mut acc = vec![F::zero(); sym.partitions.len()];
            for pi in &perms {
                let t = cycle_trace(pi, &bs).re;
                for (a, chi) in acc.iter_mut().zip(class_values(&sym, pi)) {
                    *a += t * F::cast(chi as f64);
                }
            }
            let labels: Vec<String> = indices
                .iter()
                .map(|&i| table.irreps[i].label.clone())
                .collect();
            let name = labels.join(" ");
            let mut clamped = Vec::new();
            let joint = acc
                .iter()
                .zip(&scales)
                .zip(&sym.partitions)
                .map(|((a, s), lam)| clamp(|| format!("[{name}] {lam}"), *a * *s, &mut clamped))
                .collect::<Result<Vec<F>>>()?;
            let sequences = arrangements(&indices);
            let p_seq = crate::scalar::ratio_to_f64(&p_seq);
            let probability = p_seq * sequences as f64;
            let conditional = (p_seq > 0.0).then(|| {
                joint
                    .iter()
                    .map(|j| j.as_f64() / p_seq)
                    .collect::<Vec<f64>>()
            });
            Ok((
                IrrepType {
                    indices,
                    labels,
                    sequences,
                    probability,
                    conditional,
                },
                clamped,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut types = Vec::with_capacity(results.len());
    let mut clamped = Vec::new();
    for (t, c) in results {
        types.push(t);
        clamped.extend(c);
    }
    let dist = JointDistribution {
        k,
        partitions: sym.partitions.clone(),
        types,
        clamped,
    };
    let total = dist.total();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvariantViolation(format!(
            "joint Fourier-Schur distribution sums to {total}"
        )));
    }
    Ok(dist)
}

/// Probability that some two of `k` independent weak Fourier samples agree,
/// with the union bound `C(k,2) d_max² |H| / |G|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepeatedIrrep {
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub exact: BigRational,
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub bound: BigRational,
}

/// `1 - k! e_k(p)` where `p` is the weak Fourier distribution and `e_k` the
/// elementary symmetric polynomial.
pub fn prob_repeated_irrep(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    k: usize,
) -> Result<RepeatedIrrep> {
    let p = fourier_distribution(group, table, subgroup)?;
    // e[j] = e_j(p_1..p_i) after processing i probabilities
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for pi in &p {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * pi;
            e[j] += add;
        }
    }
    let distinct = BigRational::from_integer(factorial(k)) * &e[k];
    let bound = BigRational::new(
        binomial(k, 2) * BigInt::from(table.d_max * table.d_max) * BigInt::from(subgroup.order()),
        BigInt::from(group.order()),
    );
    Ok(RepeatedIrrep {
        exact: BigRational::one() - distinct,
        bound,
    })
}

/// `k² |H| d_max² / |G|`, bounding how far weak Fourier-Schur sampling of `k`
/// copies of `ρ_H` can move from the trivial-subgroup outcome.
pub fn indistinguishability_bound(order_g: u64, order_h: u64, d_max: u64, k: u64) -> BigRational {
    BigRational::new(
        BigInt::from(k * k) * BigInt::from(order_h) * BigInt::from(d_max * d_max),
        BigInt::from(order_g),
    )
}

/// The bound for a hidden reflection in `D_N`: `|G| = 2N`, `|H| = 2`, `d_max = 2`.
pub fn hidden_reflection_bound(n: u64, k: u64) -> BigRational {
    indistinguishability_bound(2 * n, 2, 2, k)
}
