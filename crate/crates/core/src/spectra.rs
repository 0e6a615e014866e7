//! Plancherel and Schur distributions on partitions, the distances and
//! overlaps between them, and checkers for the finite-size bounds relating
//! them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{check_cap, invalid, Error, Result};
use crate::scalar::{ratio_to_f64, Field};
use crate::young::{dim_sym_irrep, dim_unitary_irrep, enumerate_partitions, factorial, Partition};

/// Largest `k` accepted by the distribution builders.
pub const MAX_K: usize = 14;

/// Largest `d` accepted by [`check_fidelity_lower_bound`].
pub const FIDELITY_CHECK_MAX_D: usize = 40;

/// Bits of precision used for square-root enclosures.
const SQRT_BITS: u64 = 96;

/// A probability distribution over all partitions of `k`, stored in
/// reverse-lexicographic order. Partitions outside the support carry an
/// explicit zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionDistribution<T> {
    k: usize,
    support: Vec<Partition>,
    probs: Vec<T>,
}

impl<T: Field> PartitionDistribution<T> {
    /// Builds a distribution from `(partition, probability)` pairs; missing
    /// partitions of `k` get probability zero.
    pub fn new(k: usize, entries: impl IntoIterator<Item = (Partition, T)>) -> Result<Self> {
        let support = enumerate_partitions(k, None);
        let mut probs = vec![T::zero(); support.len()];
        for (lam, p) in entries {
            let idx = support
                .iter()
                .position(|s| *s == lam)
                .ok_or_else(|| invalid(format!("{lam} is not a partition of {k}")))?;
            probs[idx] = p;
        }
        let dist = Self { k, support, probs };
        dist.validate()?;
        Ok(dist)
    }

    fn from_aligned(k: usize, probs: Vec<T>) -> Result<Self> {
        let support = enumerate_partitions(k, None);
        debug_assert_eq!(support.len(), probs.len());
        let dist = Self { k, support, probs };
        dist.validate()?;
        Ok(dist)
    }

    fn validate(&self) -> Result<()> {
        if let Some((lam, p)) = self.iter().find(|(_, p)| **p < T::zero()) {
            return Err(Error::InvariantViolation(format!(
                "negative probability {p:?} at {lam}"
            )));
        }
        let excess = self.total() - T::one();
        let ok = if T::normalization_slack() == 0.0 {
            excess.is_zero()
        } else {
            excess.abs().as_f64() <= T::normalization_slack()
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvariantViolation(format!(
                "distribution over partitions of {} sums to 1 + {excess:?}",
                self.k
            )))
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &T)> {
        self.support.iter().zip(self.probs.iter())
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.support
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probs
    }

    /// Probability of `lambda`, zero if it is not a partition of `k`.
    pub fn get(&self, lambda: &Partition) -> T {
        self.support
            .iter()
            .position(|s| s == lambda)
            .map(|i| self.probs[i].clone())
            .unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        self.probs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn to_f64(&self) -> PartitionDistribution<f64> {
        PartitionDistribution {
            k: self.k,
            support: self.support.clone(),
            probs: self.probs.iter().map(Field::as_f64).collect(),
        }
    }

    /// Expectation of `f(lambda)` under this distribution.
    pub fn expect(&self, f: impl Fn(&Partition) -> T) -> T {
        self.iter()
            .fold(T::zero(), |acc, (lam, p)| acc + p.clone() * f(lam))
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    check_cap("k", k as u64, MAX_K as u64)
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        Err(invalid("d must be at least 1"))
    } else {
        Ok(())
    }
}

/// Plancherel measure: `(dim P_lambda)^2 / k!`.
pub fn planch<T: Field>(k: usize) -> Result<PartitionDistribution<T>> {
    check_k(k)?;
    let kf = factorial(k);
    let probs = enumerate_partitions(k, None)
        .iter()
        .map(|lam| {
            let dim = dim_sym_irrep(lam);
            T::from_ratio(&(&dim * &dim), &kf)
        })
        .collect();
    PartitionDistribution::from_aligned(k, probs)
}

/// Schur distribution via the content product:
/// `Planch(lambda) * prod_{cells} (1 + content/d)`.
pub fn schur<T: Field>(k: usize, d: usize) -> Result<PartitionDistribution<T>> {
    check_k(k)?;
    check_d(d)?;
    let kf = factorial(k);
    let dd = BigInt::from(d);
    let probs = enumerate_partitions(k, None)
        .iter()
        .map(|lam| {
            let dim = dim_sym_irrep(lam);
            lam.cells()
                .iter()
                .fold(T::from_ratio(&(&dim * &dim), &kf), |acc, c| {
                    acc * T::from_ratio(&(&dd + c.content), &dd)
                })
        })
        .collect();
    PartitionDistribution::from_aligned(k, probs)
}

/// Schur distribution via `dim P_lambda * dim Q_lambda^d / d^k`.
pub fn schur_by_dimensions<T: Field>(k: usize, d: usize) -> Result<PartitionDistribution<T>> {
    check_k(k)?;
    check_d(d)?;
    let dk = BigInt::from(d).pow(k as u32);
    let probs = enumerate_partitions(k, None)
        .iter()
        .map(|lam| T::from_ratio(&(dim_sym_irrep(lam) * dim_unitary_irrep(lam, d)), &dk))
        .collect();
    PartitionDistribution::from_aligned(k, probs)
}

fn same_k<T, U>(p: &PartitionDistribution<T>, q: &PartitionDistribution<U>) -> Result<()> {
    if p.k != q.k {
        Err(Error::ShapeMismatch(format!(
            "distributions over partitions of {} and {}",
            p.k, q.k
        )))
    } else {
        Ok(())
    }
}

/// Unnormalized 1-norm `sum |p - q|`. Equals twice the total variation distance.
pub fn l1_distance<T: Field>(
    p: &PartitionDistribution<T>,
    q: &PartitionDistribution<T>,
) -> Result<T> {
    same_k(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .fold(T::zero(), |acc, (a, b)| acc + (a.clone() - b.clone()).abs()))
}

/// Conventional total variation distance, `l1 / 2`.
pub fn total_variation<T: Field>(
    p: &PartitionDistribution<T>,
    q: &PartitionDistribution<T>,
) -> Result<T> {
    let two = T::one() + T::one();
    Ok(l1_distance(p, q)? / two)
}

/// A rational interval known to contain a real number.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn mid(&self) -> f64 {
        ratio_to_f64(&((&self.lo + &self.hi) / BigInt::from(2)))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|x| self.lo <= x && x <= self.hi)
    }

    /// Square root of a non-negative rational, to `bits` bits after the point.
    pub fn sqrt(x: &BigRational, bits: u64) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        // sqrt(a/b) = sqrt(a b) / b
        let (a, b) = (x.numer(), x.denom());
        let scale = BigInt::one() << bits;
        let radicand = a * b * &scale * &scale;
        let s = radicand.sqrt();
        let den = b * &scale;
        let lo = BigRational::new(s.clone(), den.clone());
        let hi = if &s * &s == radicand {
            lo.clone()
        } else {
            BigRational::new(s + 1, den)
        };
        Self { lo, hi }
    }
}

impl std::ops::Add for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

/// Bhattacharyya coefficient `sum sqrt(p q)` of two exact distributions,
/// enclosed in a rational interval far narrower than `1e-12` relative.
pub fn bhattacharyya(
    p: &PartitionDistribution<BigRational>,
    q: &PartitionDistribution<BigRational>,
) -> Result<Enclosure> {
    same_k(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .fold(Enclosure::exact(BigRational::zero()), |acc, (a, b)| {
            acc + Enclosure::sqrt(&(a * b), SQRT_BITS)
        }))
}

/// Bhattacharyya coefficient in floating point.
pub fn bhattacharyya_float<F: Field + num_traits::Float>(
    p: &PartitionDistribution<F>,
    q: &PartitionDistribution<F>,
) -> Result<F> {
    same_k(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .fold(F::zero(), |acc, (&a, &b)| acc + (a * b).sqrt()))
}

/// Squared Bhattacharyya coefficient, the fidelity of the two distributions
/// viewed as commuting density matrices.
pub fn fidelity(
    p: &PartitionDistribution<BigRational>,
    q: &PartitionDistribution<BigRational>,
) -> Result<Enclosure> {
    let b = bhattacharyya(p, q)?;
    Ok(Enclosure {
        lo: &b.lo * &b.lo,
        hi: &b.hi * &b.hi,
    })
}

/// Plancherel expectation of `v1(lambda)^m`, where `v1` is the content sum,
/// by direct summation.
pub fn kerov_moment(k: usize, m: u32) -> Result<BigRational> {
    let plancherel = planch::<BigRational>(k)?;
    Ok(plancherel.expect(|lam| BigRational::from_integer(BigInt::from(lam.content_sum()).pow(m))))
}

/// Closed form of the `m`-th Plancherel moment of `v1`: zero for odd `m`,
/// `(2j)! k! / (4^j j! (k-2j)!)` for `m = 2j`, and zero when `2j > k`.
pub fn kerov_closed_form(k: usize, m: u32) -> BigRational {
    if m % 2 == 1 {
        return BigRational::zero();
    }
    let j = (m / 2) as usize;
    if 2 * j > k {
        return BigRational::zero();
    }
    let num = factorial(2 * j) * factorial(k);
    let den = BigInt::from(4).pow(j as u32) * factorial(j) * factorial(k - 2 * j);
    BigRational::new(num, den)
}

/// A number appearing on one side of a checked inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Exact(#[serde(serialize_with = "crate::serde_rational::serialize")] BigRational),
    Float(f64),
    Enclosure(Enclosure),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => ratio_to_f64(r),
            Quantity::Float(x) => *x,
            Quantity::Enclosure(e) => e.mid(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundContext {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

/// Outcome of checking `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub lhs: Quantity,
    pub relation: Relation,
    pub rhs: Quantity,
    pub satisfied: bool,
    pub context: BoundContext,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `Delta_{k,d} = ||Schur(k,d) - Planch(k)||_1`.
pub fn delta(k: usize, d: usize) -> Result<BigRational> {
    l1_distance(&schur(k, d)?, &planch(k)?)
}

/// Checks `k/(36d) <= Delta_{k,d}` and `Delta_{k,d}^2 <= 2 k^2 / d^2`
/// for `2 <= k <= d`. Returns the lower-bound report first.
pub fn check_delta_bounds(k: usize, d: usize) -> Result<Vec<BoundReport>> {
    if !(2 <= k && k <= d) {
        return Err(invalid(format!(
            "delta bounds need 2 <= k <= d, got k={k}, d={d}"
        )));
    }
    check_k(k)?;
    let delta = delta(k, d)?;
    let context = BoundContext {
        k: Some(k),
        d: Some(d),
        ..Default::default()
    };
    let lower = rat(k as i64, 36 * d as i64);
    let upper_sq = rat(2 * (k * k) as i64, (d * d) as i64);
    let delta_sq = &delta * &delta;
    Ok(vec![
        BoundReport {
            name: "delta_lower",
            satisfied: delta >= lower,
            lhs: Quantity::Exact(delta),
            relation: Relation::Ge,
            rhs: Quantity::Exact(lower),
            context: context.clone(),
        },
        BoundReport {
            name: "delta_upper_squared",
            satisfied: delta_sq <= upper_sq,
            lhs: Quantity::Exact(delta_sq),
            relation: Relation::Le,
            rhs: Quantity::Exact(upper_sq),
            context,
        },
    ])
}

/// Checks `||Schur(k,d1) - Schur(k,d2)||_1 >= ||Schur(k,r d1) - Schur(k,r d2)||_1`.
pub fn check_monotonicity(k: usize, d1: usize, d2: usize, r: usize) -> Result<BoundReport> {
    if r < 2 {
        return Err(invalid(format!("monotonicity needs r >= 2, got {r}")));
    }
    check_k(k)?;
    check_d(d1)?;
    check_d(d2)?;
    let lhs = l1_distance(&schur(k, d1)?, &schur(k, d2)?)?;
    let rhs = l1_distance(&schur(k, r * d1)?, &schur(k, r * d2)?)?;
    Ok(BoundReport {
        name: "monotonicity",
        satisfied: lhs >= rhs,
        lhs: Quantity::Exact(lhs),
        relation: Relation::Ge,
        rhs: Quantity::Exact(rhs),
        context: BoundContext {
            k: Some(k),
            d1: Some(d1),
            d2: Some(d2),
            r: Some(r),
            ..Default::default()
        },
    })
}

/// Checks `Delta_{k,d} / 2 >= 1 - exp(-(k/d - 1)/10368)` for `k >= d >= 2`.
pub fn check_amplified_lower_bound(k: usize, d: usize) -> Result<BoundReport> {
    if !(k >= d && d >= 2) {
        return Err(invalid(format!(
            "amplified bound needs k >= d >= 2, got k={k}, d={d}"
        )));
    }
    check_k(k)?;
    let half = delta(k, d)? / BigInt::from(2);
    let exponent = (k as f64 / d as f64 - 1.0) / 10368.0;
    let rhs = -(-exponent).exp_m1();
    Ok(BoundReport {
        name: "amplified_lower",
        satisfied: ratio_to_f64(&half) >= rhs,
        lhs: Quantity::Exact(half),
        relation: Relation::Ge,
        rhs: Quantity::Float(rhs),
        context: BoundContext {
            k: Some(k),
            d: Some(d),
            ..Default::default()
        },
    })
}

/// Checks `sum sqrt(Schur(k,d) Planch(k)) >= 1 - k^3/(12 d^2)` using the
/// lower end of the enclosure.
pub fn check_fidelity_lower_bound(k: usize, d: usize) -> Result<BoundReport> {
    if !(2 <= k && k <= d) {
        return Err(invalid(format!(
            "fidelity bound needs 2 <= k <= d, got k={k}, d={d}"
        )));
    }
    check_k(k)?;
    check_cap("d", d as u64, FIDELITY_CHECK_MAX_D as u64)?;
    let b = bhattacharyya(&schur(k, d)?, &planch(k)?)?;
    let rhs = BigRational::one() - rat((k * k * k) as i64, 12 * (d * d) as i64);
    Ok(BoundReport {
        name: "bhattacharyya_lower",
        satisfied: b.lo >= rhs,
        lhs: Quantity::Enclosure(b),
        relation: Relation::Ge,
        rhs: Quantity::Exact(rhs),
        context: BoundContext {
            k: Some(k),
            d: Some(d),
            ..Default::default()
        },
    })
}

/// Best equal-prior success probability for telling `k` copies of a rank-`d`
/// maximally mixed state from a rank-`d/r` one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Advantage {
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub l1: BigRational,
    #[serde(serialize_with = "crate::serde_rational::serialize")]
    pub success: BigRational,
}

pub fn distinguish_advantage(k: usize, d: usize, r: usize) -> Result<Advantage> {
    if r == 0 || d == 0 || !d.is_multiple_of(r) {
        return Err(invalid(format!("r={r} must divide d={d}")));
    }
    let l1 = l1_distance(&schur(k, d)?, &schur(k, d / r)?)?;
    let success = rat(1, 2) + &l1 / BigInt::from(4);
    Ok(Advantage { l1, success })
}

/// Exact Plancherel probability of a partition, handy for comparisons
/// against floating-point conditionals.
pub fn planch_probability(lambda: &Partition) -> BigRational {
    let dim = dim_sym_irrep(lambda);
    BigRational::new(&dim * &dim, factorial(lambda.size()))
}
