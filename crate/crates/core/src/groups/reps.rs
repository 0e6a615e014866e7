//! Regular representations, isotypic projectors and hidden subgroup states.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CharacterTable, FiniteGroup, Subgroup};
use crate::error::{invalid, Result};
use crate::linalg::{permutation_matrix, zeros, DensityMatrix};
use crate::scalar::{complex, Real};
use crate::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `L(g)|x⟩ = |g x⟩`
    Left,
    /// `R(g)|x⟩ = |x g⁻¹⟩`
    Right,
}

/// Permutation matrix of `g` in the left or right regular representation.
pub fn regular_rep<F: Real>(group: &FiniteGroup, side: Side, g: usize) -> CMatrix<F> {
    match side {
        Side::Left => permutation_matrix(group.order(), |x| group.mul(g, x)),
        Side::Right => {
            let gi = group.inv(g);
            permutation_matrix(group.order(), |x| group.mul(x, gi))
        }
    }
}

/// `Π_σ = (dim σ / |G|) Σ_g conj(χ_σ(g)) L(g)`, with entries
/// `Π_σ[y, x] = (dim σ / |G|) conj(χ_σ(y x⁻¹))`.
pub fn isotypic_projector<F: Real>(
    group: &FiniteGroup,
    table: &CharacterTable,
    sigma: usize,
) -> Result<CMatrix<F>> {
    if sigma >= table.len() {
        return Err(invalid(format!("irrep index {sigma} out of range")));
    }
    let n = group.order();
    let scale = table.irreps[sigma].dim as f64 / n as f64;
    let mut m = zeros::<F>(n);
    for y in 0..n {
        for x in 0..n {
            let c = table.chi(group, sigma, group.mul(y, group.inv(x))).conj() * scale;
            m[(y, x)] = complex(c.re, c.im);
        }
    }
    Ok(m)
}

/// `ρ_H = (1/|G|) Σ_{h∈H} R(h)`: entry `(y, x)` is `1/|G|` when `x⁻¹ y ∈ H`.
pub fn hidden_subgroup_state<F: Real>(
    group: &FiniteGroup,
    subgroup: &Subgroup,
) -> DensityMatrix<F> {
    let n = group.order();
    let w = complex::<F>(1.0 / n as f64, 0.0);
    let mut m = zeros::<F>(n);
    for y in 0..n {
        for x in 0..n {
            if subgroup.contains(group.mul(group.inv(x), y)) {
                m[(y, x)] = w;
            }
        }
    }
    DensityMatrix::new_unchecked(m)
}

fn character_sum(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    sigma: usize,
) -> f64 {
    subgroup
        .elements()
        .iter()
        .map(|&h| table.chi(group, sigma, h).conj())
        .sum::<num_complex::Complex<f64>>()
        .re
}

/// `Pr(σ) = (dim σ / |G|) Σ_{h∈H} conj(χ_σ(h))` under weak Fourier sampling of `ρ_H`.
pub fn fourier_probability(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    sigma: usize,
) -> f64 {
    table.irreps[sigma].dim as f64 * character_sum(group, table, subgroup, sigma)
        / group.order() as f64
}

/// Exact form of [`fourier_probability`]. The character sum over a subgroup
/// is `|H|` times the multiplicity of the trivial irrep of `H` in `σ`, an
/// integer, so the float sum is rounded.
pub fn fourier_probability_exact(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
    sigma: usize,
) -> Result<BigRational> {
    let s = character_sum(group, table, subgroup, sigma);
    let r = s.round();
    if (s - r).abs() > 1e-6 {
        return Err(crate::Error::InvariantViolation(format!(
            "character sum {s} over subgroup is not an integer"
        )));
    }
    Ok(BigRational::new(
        BigInt::from(table.irreps[sigma].dim as i64 * r as i64),
        BigInt::from(group.order()),
    ))
}

/// Exact weak Fourier sampling distribution, indexed like `table.irreps`.
pub fn fourier_distribution(
    group: &FiniteGroup,
    table: &CharacterTable,
    subgroup: &Subgroup,
) -> Result<Vec<BigRational>> {
    let probs = (0..table.len())
        .map(|s| fourier_probability_exact(group, table, subgroup, s))
        .collect::<Result<Vec<_>>>()?;
    let total = probs.iter().fold(BigRational::zero(), |a, b| a + b);
    if total != BigRational::from_integer(1.into()) {
        return Err(crate::Error::InvariantViolation(format!(
            "Fourier distribution sums to {total}"
        )));
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, subgroups, GroupFamily};
    use crate::linalg::{identity, max_abs_diff, trace_of_product};

    #[test]
    fn cyclic_right_shift() {
        let g = make_group(GroupFamily::Cyclic(3)).unwrap();
        let r = regular_rep::<f64>(&g, Side::Right, 1);
        // |x⟩ -> |x - 1⟩
        for x in 0..3 {
            assert_eq!(r[((x + 2) % 3, x)].re, 1.0);
        }
        assert_eq!(
            max_abs_diff(&regular_rep::<f64>(&g, Side::Left, 0), &identity(3)),
            0.0
        );
    }

    #[test]
    fn homomorphism_and_commuting() {
        let g = make_group(GroupFamily::Sym(3)).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                for side in [Side::Left, Side::Right] {
                    let lhs = regular_rep::<f64>(&g, side, a) * regular_rep::<f64>(&g, side, b);
                    assert_eq!(max_abs_diff(&lhs, &regular_rep(&g, side, g.mul(a, b))), 0.0);
                }
                let l = regular_rep::<f64>(&g, Side::Left, a);
                let r = regular_rep::<f64>(&g, Side::Right, b);
                assert_eq!(max_abs_diff(&(&l * &r), &(&r * &l)), 0.0);
            }
        }
    }

    #[test]
    fn sym3_transposition_subgroup() {
        let g = make_group(GroupFamily::Sym(3)).unwrap();
        let t = CharacterTable::of(&g).unwrap();
        let h = Subgroup::generated(&g, &[1]).unwrap();
        assert_eq!(h.order(), 2);
        let p: Vec<String> = fourier_distribution(&g, &t, &h)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let labels: Vec<&str> = t.irreps.iter().map(|i| i.label.as_str()).collect();
        assert_eq!(labels, vec!["(3)", "(2,1)", "(1,1,1)"]);
        assert_eq!(p, vec!["1/3", "2/3", "0"]);
        let rho = hidden_subgroup_state::<f64>(&g, &h);
        let sq = rho.matrix() * rho.matrix();
        assert!(
            max_abs_diff(
                &sq,
                &(rho.matrix() * num_complex::Complex::new(2.0 / 6.0, 0.0))
            ) < 1e-12
        );
    }

    #[test]
    fn projector_traces_match_characters() {
        for fam in [
            GroupFamily::Sym(3),
            GroupFamily::Dihedral(4),
            GroupFamily::Cyclic(6),
        ] {
            let g = make_group(fam).unwrap();
            let t = CharacterTable::of(&g).unwrap();
            for h in subgroups(&g).unwrap() {
                let rho = hidden_subgroup_state::<f64>(&g, &h);
                assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
                for s in 0..t.len() {
                    let pi = isotypic_projector::<f64>(&g, &t, s).unwrap();
                    let tr = trace_of_product(&pi, rho.matrix());
                    assert!((tr.re - fourier_probability(&g, &t, &h, s)).abs() < 1e-9);
                    assert!(tr.im.abs() < 1e-9);
                }
            }
        }
    }
}
