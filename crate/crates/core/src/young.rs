//! Partitions, Young diagrams and the dimension formulas of Schur-Weyl duality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, invalid, Error, Result};

/// Largest `k` accepted by [`count_syt_bruteforce`].
pub const SYT_BRUTEFORCE_MAX_K: usize = 10;

/// A partition of `k`: a weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// One box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub content: i64,
    pub hook: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The single-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self { parts: vec![k] }
        }
    }

    /// The single-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    /// Sorts arbitrary positive parts into a partition (used for cycle types).
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Cells in row-major order, with contents and hook lengths.
    pub fn cells(&self) -> Vec<Cell> {
        let conj = self.transpose();
        let mut out = Vec::with_capacity(self.size());
        for (i0, &len) in self.parts.iter().enumerate() {
            for j0 in 0..len {
                let arm = len - j0 - 1;
                let leg = conj.part(j0) - i0 - 1;
                out.push(Cell {
                    row: i0 + 1,
                    col: j0 + 1,
                    content: j0 as i64 - i0 as i64,
                    hook: arm + leg + 1,
                });
            }
        }
        out
    }

    /// Sum of the contents `j - i` over all cells.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                let len = len as i64;
                let i = i as i64;
                len * (len - 1) / 2 - i * len
            })
            .sum()
    }

    /// Corners whose removal leaves a partition, as row indices (0-based).
    pub fn removable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parts.len()).filter(move |&i| self.part(i) > self.part(i + 1))
    }

    fn without_corner(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(2,1)`, `2,1`, `[2, 1]` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("cannot parse partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// All partitions of `k` in reverse-lexicographic order, optionally limited
/// to at most `max_rows` rows.
pub fn enumerate_partitions(k: usize, max_rows: Option<usize>) -> Vec<Partition> {
    fn go(
        remaining: usize,
        max_part: usize,
        rows_left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            go(remaining - p, p, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    go(k, k, max_rows.unwrap_or(k), &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of the Specht module: `k! / prod(hooks)`.
pub fn dim_sym_irrep(lambda: &Partition) -> BigInt {
    let hooks = lambda
        .cells()
        .iter()
        .fold(BigInt::one(), |acc, c| acc * c.hook);
    factorial(lambda.size()) / hooks
}

/// Dimension of the `U(d)` irrep labelled by `lambda`, zero when `lambda`
/// has more than `d` rows.
pub fn dim_unitary_irrep(lambda: &Partition, d: usize) -> BigInt {
    if lambda.len() > d {
        return BigInt::zero();
    }
    let contents = lambda.cells().iter().fold(BigInt::one(), |acc, c| {
        acc * BigInt::from(d as i64 + c.content)
    });
    let (q, r) = (dim_sym_irrep(lambda) * contents).div_rem(&factorial(lambda.size()));
    debug_assert!(r.is_zero(), "non-integral dim Q for {lambda} at d={d}");
    q
}

/// Counts standard Young tableaux of shape `lambda` by placing the largest
/// entry in each removable corner in turn.
pub fn count_syt_bruteforce(lambda: &Partition) -> Result<u64> {
    check_cap("k", lambda.size() as u64, SYT_BRUTEFORCE_MAX_K as u64)?;

    fn go(shape: &Partition) -> u64 {
        if shape.is_empty() {
            return 1;
        }
        shape
            .removable_rows()
            .map(|row| go(&shape.without_corner(row)))
            .sum()
    }
    Ok(go(lambda))
}
