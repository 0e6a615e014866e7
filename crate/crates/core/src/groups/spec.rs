//! Text forms for groups (`dihedral:6`) and subgroups (`gen:(12)`).

use std::fmt;
use std::str::FromStr;

use super::{make_group, FiniteGroup, GroupFamily, Subgroup};
use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;

/// `<family>:<param>` with family one of `cyclic`, `dihedral`, `sym`, `wreath_s2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec(pub GroupFamily);

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        make_group(self.0)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, param) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| invalid(format!("group spec {s:?} is not of the form family:param")))?;
        let n: usize = param.trim().parse().map_err(|_| {
            invalid(format!(
                "group parameter {param:?} is not a non-negative integer"
            ))
        })?;
        let fam = match family.trim() {
            "cyclic" => GroupFamily::Cyclic(n),
            "dihedral" => GroupFamily::Dihedral(n),
            "sym" => GroupFamily::Sym(n),
            "wreath_s2" => GroupFamily::WreathS2(n),
            other => return Err(invalid(format!("unsupported group family {other:?}"))),
        };
        Ok(GroupSpec(fam))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Subgroup description, resolved against a concrete group.
///
/// - `trivial`, `full`
/// - `reflection:j`: `{e, s r^j}` in a dihedral group
/// - `gen:<list>`: the subgroup generated by the listed elements, separated
///   by commas or spaces. An element is an index, an element name such as
///   `sr^2`, or for `sym:n` a product of cycles on points `1..n` such as `(12)(34)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Full,
    Reflection(usize),
    Generated(Vec<String>),
}

impl FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "trivial" => return Ok(SubgroupSpec::Trivial),
            "full" => return Ok(SubgroupSpec::Full),
            _ => {}
        }
        if let Some(j) = s.strip_prefix("reflection:") {
            let j = j
                .trim()
                .parse()
                .map_err(|_| invalid(format!("reflection index {j:?} is not an integer")))?;
            return Ok(SubgroupSpec::Reflection(j));
        }
        if let Some(list) = s.strip_prefix("gen:") {
            let tokens = split_top_level(list)?;
            if tokens.is_empty() {
                return Err(invalid("gen: needs at least one generator"));
            }
            return Ok(SubgroupSpec::Generated(tokens));
        }
        Err(invalid(format!(
            "subgroup spec {s:?} is not trivial, full, reflection:<j> or gen:<list>"
        )))
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Trivial => write!(f, "trivial"),
            SubgroupSpec::Full => write!(f, "full"),
            SubgroupSpec::Reflection(j) => write!(f, "reflection:{j}"),
            SubgroupSpec::Generated(g) => write!(f, "gen:{}", g.join(",")),
        }
    }
}

fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(invalid(format!("unbalanced brackets in {s:?}")));
        }
        if depth == 0 && (c == ',' || c.is_whitespace()) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(invalid(format!("unbalanced brackets in {s:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_cycles(n: usize, s: &str) -> Result<Permutation> {
    let mut p = Permutation::identity(n);
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .filter(|_| rest.starts_with('('))
            .ok_or_else(|| invalid(format!("cannot read cycle notation {s:?}")))?;
        let body = &rest[1..body_end];
        let points = body
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c.to_digit(10) {
                Some(d) if d >= 1 && (d as usize) <= n => Ok(d as usize - 1),
                _ => Err(invalid(format!("{c:?} is not a point of 1..{n} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            p = p.compose(&Permutation::from_cycles(n, &[points])?);
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(p)
}

fn resolve_element(group: &FiniteGroup, token: &str) -> Result<usize> {
    if let Some(g) = group.elements().find(|&g| group.name(g) == token) {
        return Ok(g);
    }
    if let Ok(i) = token.parse::<usize>() {
        if i < group.order() {
            return Ok(i);
        }
        return Err(invalid(format!(
            "element index {i} out of range for order {}",
            group.order()
        )));
    }
    if let GroupFamily::Sym(n) = group.family() {
        if token.starts_with('(') {
            let p = parse_cycles(n, token)?;
            return Ok(Permutation::all(n)
                .binary_search(&p)
                .expect("all permutations listed"));
        }
    }
    Err(invalid(format!(
        "{token:?} is not an element of {}",
        group.family()
    )))
}

impl SubgroupSpec {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<Subgroup> {
        match self {
            SubgroupSpec::Trivial => Ok(Subgroup::trivial(group)),
            SubgroupSpec::Full => Ok(Subgroup::full(group)),
            SubgroupSpec::Reflection(j) => match group.family() {
                GroupFamily::Dihedral(n) if *j < n => Subgroup::generated(group, &[n + j]),
                GroupFamily::Dihedral(n) => {
                    Err(invalid(format!("reflection index {j} must be below {n}")))
                }
                fam => Err(invalid(format!(
                    "reflection subgroups need a dihedral group, not {fam}"
                ))),
            },
            SubgroupSpec::Generated(tokens) => {
                let gens = tokens
                    .iter()
                    .map(|t| resolve_element(group, t))
                    .collect::<Result<Vec<_>>>()?;
                Subgroup::generated(group, &gens)
            }
        }
    }
}
