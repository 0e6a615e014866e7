//! Character tables for the supported group families.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupFamily};
use crate::characters::character;
use crate::error::Result;
use crate::young::{dim_sym_irrep, enumerate_partitions, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
}

/// Irreducible characters evaluated on the conjugacy classes of a group,
/// using the class order of [`FiniteGroup::classes`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub family: GroupFamily,
    pub irreps: Vec<Irrep>,
    /// `values[irrep][class]`
    pub values: Vec<Vec<Complex<f64>>>,
    pub d_max: usize,
}

fn real(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

impl CharacterTable {
    pub fn of(group: &FiniteGroup) -> Result<Self> {
        let reps: Vec<usize> = group.classes().iter().map(|c| c[0]).collect();
        let (irreps, values) = match group.family() {
            GroupFamily::Cyclic(n) => cyclic(n, &reps),
            GroupFamily::Dihedral(n) => dihedral(n, &reps),
            GroupFamily::Sym(n) => sym(group, n, &reps)?,
            GroupFamily::WreathS2(n) => wreath(n, &reps)?,
        };
        let d_max = irreps.iter().map(|i| i.dim).max().unwrap_or(0);
        Ok(Self {
            family: group.family(),
            irreps,
            values,
            d_max,
        })
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|i| i.label == label)
    }

    /// `chi_sigma(g)`.
    pub fn chi(&self, group: &FiniteGroup, sigma: usize, g: usize) -> Complex<f64> {
        self.values[sigma][group.class_of(g)]
    }

    /// Checks a table obtained elsewhere (for example from disk) against
    /// `group`: family, shape, `χ(e) = dim`, `Σ dim² = |G|` and orthogonality.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let classes = group.classes().len();
        let ok = self.family == group.family()
            && self.irreps.len() == classes
            && self.values.len() == classes
            && self.values.iter().all(|row| row.len() == classes)
            && self.sum_of_squared_dims() == group.order()
            && self.d_max == self.irreps.iter().map(|i| i.dim).max().unwrap_or(0)
            && self.irreps.iter().enumerate().all(|(s, i)| {
                (self.chi(group, s, group.identity()) - real(i.dim as f64)).norm() < 1e-9
            })
            && self.orthogonality_defect(group) < 1e-9;
        if ok {
            Ok(())
        } else {
            Err(crate::Error::InvariantViolation(format!(
                "character table does not match {}",
                group.family()
            )))
        }
    }

    pub fn sum_of_squared_dims(&self) -> usize {
        self.irreps.iter().map(|i| i.dim * i.dim).sum()
    }

    /// Largest deviation of the class-weighted Gram matrix of the characters
    /// from `|G|` times the identity.
    pub fn orthogonality_defect(&self, group: &FiniteGroup) -> f64 {
        let sizes: Vec<f64> = group.classes().iter().map(|c| c.len() as f64).collect();
        let order = group.order() as f64;
        let mut worst = 0.0f64;
        for (a, ra) in self.values.iter().enumerate() {
            for (b, rb) in self.values.iter().enumerate() {
                let ip: Complex<f64> = ra
                    .iter()
                    .zip(rb)
                    .zip(&sizes)
                    .map(|((x, y), s)| x * y.conj() * *s)
                    .sum();
                let target = if a == b { order } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

type Rows = (Vec<Irrep>, Vec<Vec<Complex<f64>>>);

fn cyclic(n: usize, reps: &[usize]) -> Rows {
    (0..n)
        .map(|j| {
            let row = reps
                .iter()
                .map(|&a| Complex::from_polar(1.0, 2.0 * PI * (j * a % n) as f64 / n as f64))
                .collect();
            (
                Irrep {
                    label: format!("chi_{j}"),
                    dim: 1,
                },
                row,
            )
        })
        .unzip()
}

fn dihedral(n: usize, reps: &[usize]) -> Rows {
    let parity = |a: usize| if a.is_multiple_of(2) { 1.0 } else { -1.0 };
    // element x: rotation r^a if x < n, reflection s r^a otherwise
    let split = |x: usize| (x >= n, x % n);
    let mut rows: Vec<(Irrep, Vec<Complex<f64>>)> = Vec::new();
    let one_dim = |label: &str, f: &dyn Fn(bool, usize) -> f64| {
        (
            Irrep {
                label: label.to_string(),
                dim: 1,
            },
            reps.iter()
                .map(|&x| {
                    let (refl, a) = split(x);
                    real(f(refl, a))
                })
                .collect::<Vec<_>>(),
        )
    };
    rows.push(one_dim("trivial", &|_, _| 1.0));
    rows.push(one_dim("sign", &|refl, _| if refl { -1.0 } else { 1.0 }));
    if n.is_multiple_of(2) {
        rows.push(one_dim("alt", &|_, a| parity(a)));
        rows.push(one_dim("alt_sign", &|refl, a| {
            if refl {
                -parity(a)
            } else {
                parity(a)
            }
        }));
    }
    for h in 1..=(n - 1) / 2 {
        let row = reps
            .iter()
            .map(|&x| {
                let (refl, a) = split(x);
                if refl {
                    real(0.0)
                } else {
                    real(2.0 * (2.0 * PI * (h * a % n) as f64 / n as f64).cos())
                }
            })
            .collect();
        rows.push((
            Irrep {
                label: format!("rho_{h}"),
                dim: 2,
            },
            row,
        ));
    }
    rows.into_iter().unzip()
}

fn sym(group: &FiniteGroup, n: usize, reps: &[usize]) -> Result<Rows> {
    let cycle_types: Vec<Partition> = reps
        .iter()
        .map(|&g| group.as_permutation(g).expect("sym element").cycle_type())
        .collect();
    enumerate_partitions(n, None)
        .into_iter()
        .map(|lam| {
            let row = cycle_types
                .iter()
                .map(|mu| character(&lam, mu).map(|v| real(v as f64)))
                .collect::<Result<Vec<_>>>()?;
            let dim = usize::try_from(dim_sym_irrep(&lam)).expect("small dimension");
            Ok((
                Irrep {
                    label: lam.to_string(),
                    dim,
                },
                row,
            ))
        })
        .collect::<Result<Vec<_>>>()
        .map(|rows| rows.into_iter().unzip())
}

/// Irreps of `S_n ≀ Z_2`: for `λ ≠ μ` the induced `{λ, μ}` of dimension
/// `2 dim λ dim μ`, vanishing off the base group; for `λ = μ` two
/// extensions of `λ ⊗ λ` whose value at `(a, b, 1)` is `±χ_λ(ab)`.
fn wreath(n: usize, reps: &[usize]) -> Result<Rows> {
    let base = super::make_group(GroupFamily::Sym(n))?;
    let m = base.order();
    let split = |x: usize| (x / (m * m), (x / m) % m, x % m);
    let cycle_type = |g: usize| base.as_permutation(g).expect("sym element").cycle_type();
    let parts = enumerate_partitions(n, None);
    let chi =
        |lam: &Partition, g: usize| -> Result<f64> { Ok(character(lam, &cycle_type(g))? as f64) };
    let dim = |lam: &Partition| usize::try_from(dim_sym_irrep(lam)).expect("small dimension");

    let mut rows = Vec::new();
    for (i, lam) in parts.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let row = reps
                .iter()
                .map(|&x| {
                    let (e, a, b) = split(x);
                    let v = if e == 0 {
                        chi(lam, a)? * chi(lam, b)?
                    } else {
                        sign * chi(lam, base.mul(a, b))?
                    };
                    Ok(real(v))
                })
                .collect::<Result<Vec<_>>>()?;
            let tag = if sign > 0.0 { "+" } else { "-" };
            rows.push((
                Irrep {
                    label: format!("{lam}x{lam}{tag}"),
                    dim: dim(lam) * dim(lam),
                },
                row,
            ));
        }
        for mu in &parts[i + 1..] {
            let row = reps
                .iter()
                .map(|&x| {
                    let (e, a, b) = split(x);
                    let v = if e == 0 {
                        chi(lam, a)? * chi(mu, b)? + chi(mu, a)? * chi(lam, b)?
                    } else {
                        0.0
                    };
                    Ok(real(v))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((
                Irrep {
                    label: format!("{{{lam},{mu}}}"),
                    dim: 2 * dim(lam) * dim(mu),
                },
                row,
            ));
        }
    }
    Ok(rows.into_iter().unzip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;

    fn table(fam: GroupFamily) -> (FiniteGroup, CharacterTable) {
        let g = make_group(fam).unwrap();
        let t = CharacterTable::of(&g).unwrap();
        (g, t)
    }

    #[test]
    fn complete_and_orthogonal() {
        let mut fams = vec![
            GroupFamily::Sym(1),
            GroupFamily::Sym(2),
            GroupFamily::Sym(3),
            GroupFamily::Sym(4),
        ];
        fams.extend((1..=12).map(GroupFamily::Cyclic));
        fams.extend((1..=12).map(GroupFamily::Dihedral));
        fams.extend([
            GroupFamily::WreathS2(1),
            GroupFamily::WreathS2(2),
            GroupFamily::WreathS2(3),
        ]);
        for fam in fams {
            let (g, t) = table(fam);
            assert_eq!(t.sum_of_squared_dims(), g.order(), "{fam}");
            assert_eq!(t.len(), g.classes().len(), "{fam}");
            assert!(t.orthogonality_defect(&g) < 1e-9, "{fam}");
            // chi(identity) = dim
            for (s, irrep) in t.irreps.iter().enumerate() {
                assert!((t.chi(&g, s, g.identity()) - real(irrep.dim as f64)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn validation() {
        let (g, mut t) = table(GroupFamily::Dihedral(5));
        assert!(t.validate(&g).is_ok());
        t.values[2][1] = real(0.3);
        assert!(t.validate(&g).is_err());
        let (h, _) = table(GroupFamily::Cyclic(10));
        assert!(table(GroupFamily::Dihedral(5)).1.validate(&h).is_err());
    }

    #[test]
    fn dims() {
        let (_, t) = table(GroupFamily::Sym(3));
        let mut d: Vec<_> = t.irreps.iter().map(|i| i.dim).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
        let (_, t) = table(GroupFamily::Dihedral(4));
        let mut d: Vec<_> = t.irreps.iter().map(|i| i.dim).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
        for n in 3..=24 {
            assert_eq!(table(GroupFamily::Dihedral(n)).1.d_max, 2);
        }
        assert_eq!(table(GroupFamily::Sym(4)).1.d_max, 3);
        assert_eq!(table(GroupFamily::Cyclic(7)).1.d_max, 1);
        assert_eq!(table(GroupFamily::WreathS2(3)).1.d_max, 4);
    }
}
