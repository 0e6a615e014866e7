//! Conjugacy classes and irreducible characters of the symmetric group.
//!
//! Characters are evaluated with the Murnaghan–Nakayama rule in its
//! beta-set (abacus) form: removing a border strip of length `r` moves one
//! bead down by `r`, and the sign is `(-1)^height` where the height is the
//! number of beads jumped over.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, invalid, Error, Result};
use crate::young::{binomial, dim_sym_irrep, enumerate_partitions, factorial, Partition};

/// Largest `k` for which class and character tables are built.
pub const MAX_K: usize = 14;

/// A conjugacy class of `S_k`, labelled by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleType {
    pub cycles: Partition,
    pub class_size: BigInt,
}

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        let class_size = class_size(&cycles);
        Self { cycles, class_size }
    }

    /// The class of transpositions `(2,1^{k-2})`.
    pub fn transposition(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid("transpositions need k >= 2"));
        }
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, k - 2));
        Ok(Self::new(Partition::new(parts)?))
    }
}

/// `k! / prod_m (m^{c_m} c_m!)`.
pub fn class_size(cycles: &Partition) -> BigInt {
    let mut denom = BigInt::one();
    let parts = cycles.parts();
    let mut i = 0;
    while i < parts.len() {
        let m = parts[i];
        let mult = parts[i..].iter().take_while(|&&p| p == m).count();
        denom *= BigInt::from(m).pow(mult as u32) * factorial(mult);
        i += mult;
    }
    factorial(cycles.size()) / denom
}

/// One class per partition of `k`, in reverse-lexicographic order.
pub fn conjugacy_classes(k: usize) -> Result<Vec<CycleType>> {
    if k == 0 {
        return Err(invalid("conjugacy classes need k >= 1"));
    }
    check_cap("k", k as u64, MAX_K as u64)?;
    Ok(enumerate_partitions(k, None)
        .into_iter()
        .map(CycleType::new)
        .collect())
}

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `chi_lambda` evaluated on the class with cycle type `mu`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::ShapeMismatch(format!(
            "character of {lambda} (k={}) on class {mu} (k={})",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

fn mn(lambda: &[usize], cycles: &[usize]) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), cycles.to_vec());
    if let Some(&v) = memo().read().expect("character memo poisoned").get(&key) {
        return v;
    }

    let r = cycles[0];
    let rest = &cycles[1..];
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();

    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&smaller, rest);
    }

    memo()
        .write()
        .expect("character memo poisoned")
        .insert(key, total);
    total
}

/// Full character table of `S_k`; rows and columns both follow the
/// reverse-lexicographic partition order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymCharacterTable {
    pub k: usize,
    pub partitions: Vec<Partition>,
    pub classes: Vec<CycleType>,
    /// `values[irrep][class]`
    pub values: Vec<Vec<i64>>,
}

impl SymCharacterTable {
    pub fn build(k: usize) -> Result<Self> {
        let classes = conjugacy_classes(k)?;
        let partitions = enumerate_partitions(k, None);
        let values = partitions
            .iter()
            .map(|lam| {
                classes
                    .iter()
                    .map(|c| mn(lam.parts(), c.cycles.parts()))
                    .collect()
            })
            .collect();
        Ok(Self {
            k,
            partitions,
            classes,
            values,
        })
    }

    pub fn irrep_index(&self, lambda: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == lambda)
    }

    pub fn class_index(&self, mu: &Partition) -> Option<usize> {
        self.classes.iter().position(|c| &c.cycles == mu)
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.irrep_index(lambda)?][self.class_index(mu)?])
    }

    /// Checks labels, class sizes and the row orthogonality relations
    /// `Σ_μ |C_μ| χ_λ(μ) χ_ν(μ) = k! δ_λν`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::InvariantViolation(format!(
                "S_{} table: {msg}",
                self.k
            )))
        };
        if self.partitions != enumerate_partitions(self.k, None) {
            return bad("irrep labels");
        }
        if self.classes != conjugacy_classes(self.k)? {
            return bad("classes");
        }
        if self.values.len() != self.partitions.len() {
            return bad("row count");
        }
        let kf = factorial(self.k);
        for (a, ra) in self.values.iter().enumerate() {
            for (b, rb) in self.values.iter().enumerate() {
                if ra.len() != self.classes.len() {
                    return bad("row length");
                }
                let ip: BigInt = ra
                    .iter()
                    .zip(rb)
                    .zip(&self.classes)
                    .map(|((x, y), c)| BigInt::from(x * y) * &c.class_size)
                    .sum();
                let want = if a == b { kf.clone() } else { BigInt::from(0) };
                if ip != want {
                    return bad("orthogonality");
                }
            }
        }
        Ok(())
    }
}

type TableCache = RwLock<HashMap<usize, Arc<SymCharacterTable>>>;

fn tables() -> &'static TableCache {
    static TABLES: OnceLock<TableCache> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

/// Process-wide cache of [`SymCharacterTable`]s keyed by `k`.
pub fn character_table(k: usize) -> Result<Arc<SymCharacterTable>> {
    if let Some(t) = tables().read().expect("table cache poisoned").get(&k) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(SymCharacterTable::build(k)?);
    Ok(Arc::clone(
        tables()
            .write()
            .expect("table cache poisoned")
            .entry(k)
            .or_insert(table),
    ))
}

/// Seeds the process-wide cache with a table loaded from elsewhere after
/// validating it.
pub fn install_character_table(table: SymCharacterTable) -> Result<()> {
    table.validate()?;
    tables()
        .write()
        .expect("table cache poisoned")
        .insert(table.k, Arc::new(table));
    Ok(())
}

/// `C(k,2) chi_lambda(tau) / dim P_lambda` for a transposition `tau`.
pub fn central_character_transposition(lambda: &Partition) -> Result<BigRational> {
    let k = lambda.size();
    let tau = CycleType::transposition(k)?;
    let chi = character(lambda, &tau.cycles)?;
    Ok(BigRational::new(
        binomial(k, 2) * BigInt::from(chi),
        dim_sym_irrep(lambda),
    ))
}
