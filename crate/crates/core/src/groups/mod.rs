//! Small finite groups given by multiplication tables, their subgroups,
//! character tables, regular representations and hidden subgroup states.
//!
//! Element orderings are fixed per family:
//!
//! - `cyclic:N`: index `a` is `r^a`.
//! - `dihedral:N`: indices `0..N` are the rotations `r^a`, indices `N..2N`
//!   are the reflections `s r^a`, with `s r s = r^{-1}`.
//! - `sym:n`: permutations of `n` points in lexicographic order of their
//!   one-line notation; the product is composition, `(gh)(i) = g(h(i))`.
//! - `wreath_s2:n`: `S_n ≀ Z_2` with elements `(a, b, e)` stored at index
//!   `e (n!)^2 + a n! + b`, where `a, b` index `sym:n` and `e` is the swap bit.
//!   `(a, b, e)(c, d, f) = ((a, b) · e(c, d), e + f)` and `e` swaps the pair.

mod reps;
mod spec;
mod table;

use std::collections::HashSet;
use std::fmt;

use crate::error::{check_cap, invalid, Result};
use crate::perm::Permutation;

pub use reps::{
    fourier_distribution, fourier_probability, fourier_probability_exact, hidden_subgroup_state,
    isotypic_projector, regular_rep, Side,
};
pub use spec::{GroupSpec, SubgroupSpec};
pub use table::{CharacterTable, Irrep};

/// Largest group order accepted by the constructors.
pub const MAX_ORDER: usize = 72;
/// Largest group order accepted by [`subgroups`].
pub const MAX_SUBGROUP_SEARCH_ORDER: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GroupFamily {
    Cyclic(usize),
    Dihedral(usize),
    Sym(usize),
    WreathS2(usize),
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupFamily::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupFamily::Sym(n) => write!(f, "sym:{n}"),
            GroupFamily::WreathS2(n) => write!(f, "wreath_s2:{n}"),
        }
    }
}

/// A finite group presented by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    family: GroupFamily,
    order: usize,
    /// `mult[g * order + h]` is the index of `g h`.
    mult: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl FiniteGroup {
    fn from_table(family: GroupFamily, order: usize, mult: Vec<usize>, names: Vec<String>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mult[e * order + g] == g && mult[g * order + e] == g))
            .expect("multiplication table has an identity");
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mult[g * order + h] == identity)
                    .expect("every element has an inverse")
            })
            .collect::<Vec<_>>();

        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..order)
                .map(|x| mult[mult[x * order + g] * order + inv[x]])
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }

        Self {
            family,
            order,
            mult,
            identity,
            inv,
            names,
            class_of,
            classes,
        }
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Conjugacy classes, ordered by their smallest element index.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Exhaustive associativity check of the table.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Permutation of `n` points represented by element `g` of `sym:n`.
    pub fn as_permutation(&self, g: usize) -> Option<Permutation> {
        match self.family {
            GroupFamily::Sym(n) => Some(Permutation::all(n).swap_remove(g)),
            _ => None,
        }
    }
}

/// Builds one of the supported families.
pub fn make_group(family: GroupFamily) -> Result<FiniteGroup> {
    match family {
        GroupFamily::Cyclic(n) => {
            if n == 0 {
                return Err(invalid("cyclic group needs N >= 1"));
            }
            check_cap("cyclic order", n as u64, 48)?;
            let mult = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            let names = (0..n).map(|a| format!("r^{a}")).collect();
            Ok(FiniteGroup::from_table(family, n, mult, names))
        }
        GroupFamily::Dihedral(n) => {
            if n == 0 {
                return Err(invalid("dihedral group needs N >= 1"));
            }
            check_cap("dihedral order", 2 * n as u64, 48)?;
            let order = 2 * n;
            // (s^e r^a)(s^f r^b) = s^{e+f} r^{(-1)^f a + b}
            let mut mult = vec![0; order * order];
            for x in 0..order {
                let (e, a) = (x / n, x % n);
                for y in 0..order {
                    let (f, b) = (y / n, y % n);
                    let a = if f == 1 { (n - a) % n } else { a };
                    mult[x * order + y] = ((e + f) % 2) * n + (a + b) % n;
                }
            }
            let names = (0..order)
                .map(|x| {
                    if x < n {
                        format!("r^{x}")
                    } else {
                        format!("sr^{}", x - n)
                    }
                })
                .collect();
            Ok(FiniteGroup::from_table(family, order, mult, names))
        }
        GroupFamily::Sym(n) => {
            if n == 0 {
                return Err(invalid("symmetric group needs n >= 1"));
            }
            check_cap("sym degree", n as u64, 4)?;
            let perms = Permutation::all(n);
            let order = perms.len();
            let mut mult = vec![0; order * order];
            for (i, g) in perms.iter().enumerate() {
                for (j, h) in perms.iter().enumerate() {
                    let gh = g.compose(h);
                    mult[i * order + j] = perms.binary_search(&gh).expect("closed");
                }
            }
            let names = perms.iter().map(|p| p.to_string()).collect();
            Ok(FiniteGroup::from_table(family, order, mult, names))
        }
        GroupFamily::WreathS2(n) => {
            if n == 0 {
                return Err(invalid("wreath product needs n >= 1"));
            }
            let base = make_group(GroupFamily::Sym(n))?;
            let m = base.order();
            let order = 2 * m * m;
            check_cap("wreath_s2 order", order as u64, MAX_ORDER as u64)?;
            let split = |x: usize| (x / (m * m), (x / m) % m, x % m);
            let mut mult = vec![0; order * order];
            for x in 0..order {
                let (e, a, b) = split(x);
                for y in 0..order {
                    let (f, c, d) = split(y);
                    let (c, d) = if e == 1 { (d, c) } else { (c, d) };
                    let (p, q) = (base.mul(a, c), base.mul(b, d));
                    mult[x * order + y] = ((e + f) % 2) * m * m + p * m + q;
                }
            }
            let names = (0..order)
                .map(|x| {
                    let (e, a, b) = split(x);
                    format!("[{};{};{}]", base.name(a), base.name(b), e)
                })
                .collect();
            Ok(FiniteGroup::from_table(family, order, mult, names))
        }
    }
}

/// A subgroup, stored as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
            return Err(invalid(format!(
                "element {g} is not in a group of order {}",
                group.order()
            )));
        }
        let mut members = vec![false; group.order()];
        members[group.identity()] = true;
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            elements: (0..group.order()).filter(|&i| members[i]).collect(),
        })
    }

    /// Validates closure and identity of an explicit element set.
    pub fn from_elements(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let set: HashSet<usize> = elements.iter().copied().collect();
        let closed = set.contains(&group.identity())
            && elements.iter().all(|&a| {
                set.contains(&group.inv(a))
                    && elements.iter().all(|&b| set.contains(&group.mul(a, b)))
            });
        if !closed {
            return Err(invalid(format!("{elements:?} is not a subgroup")));
        }
        Ok(Self { elements })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            elements: vec![group.identity()],
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Self {
            elements: group.elements().collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// Every subgroup of `group`, ordered by size and then by element list.
///
/// Starts from the cyclic subgroups and repeatedly joins a known subgroup
/// with one more element until nothing new appears.
pub fn subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    check_cap(
        "group order",
        group.order() as u64,
        MAX_SUBGROUP_SEARCH_ORDER as u64,
    )?;
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = Vec::new();
    for g in group.elements() {
        let h = Subgroup::generated(group, &[g])?;
        if found.insert(h.elements.clone()) {
            queue.push(h);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let base = queue[i].clone();
        for g in group.elements().filter(|&g| !base.contains(g)) {
            let mut gens = base.elements.clone();
            gens.push(g);
            let joined = Subgroup::generated(group, &gens)?;
            if found.insert(joined.elements.clone()) {
                queue.push(joined);
            }
        }
        i += 1;
    }
    queue.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(queue)
}
