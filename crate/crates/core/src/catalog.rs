//! Constructors for the small groups used throughout the crate.
//!
//! Element orderings:
//! - `Cn`: residues `0..n`.
//! - `Dn` (order `2n`): `τ^ε σ^i` at index `εn + i`.
//! - `Dicn` (order `4n`): `a^i b^ε` at index `2nε + i`.
//! - `Q8`: `1, -1, i, -i, j, -j, k, -k`.
//! - `Sn`, `An`: permutations of `0..n` in lexicographic order of their image
//!   arrays, composed right to left.
//! - `AxB`: `(a, b)` at index `a·|B| + b`.
//! - semidirect products `N ⋊ C_k`: `(x, i)` at index `i·|N| + x`.
//! - `SL23`: determinant-one 2×2 matrices over F3 in lexicographic order of
//!   `(a, b, c, d)`, so the identity comes first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, FiniteGroup, GroupMap, MAX_GROUP_ORDER};
use crate::morphism::{groups_isomorphic, AutomorphismGroup};

/// Group order bound for automorphism enumeration of catalog groups.
pub const CATALOG_AUT_BOUND: usize = 120;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Quaternion8,
    Symmetric(usize),
    Alternating(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// `C8 ⋊ C2` with `x ↦ 3x`.
    Semidihedral16,
    /// `C8 ⋊ C2` with `x ↦ 5x`.
    Modular16,
    /// `C4 ⋊ C4` with inversion.
    C4SemiC4,
    /// `(C2×C2) ⋊ C4` with the factor swap.
    KleinSemiC4,
    /// `(C4×C2) ⋊ C2`, the split extension admitting an automorphism of order 3.
    Semidirect16,
    Sl23,
}

impl GroupSpec {
    /// Direct product, flattened to a left-nested chain.
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        match b {
            GroupSpec::Product(b1, b2) => GroupSpec::product(GroupSpec::product(a, *b1), *b2),
            b => GroupSpec::Product(Box::new(a), Box::new(b)),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            GroupSpec::Product(a, b) => a.order() * b.order(),
            GroupSpec::Semidihedral16
            | GroupSpec::Modular16
            | GroupSpec::C4SemiC4
            | GroupSpec::KleinSemiC4
            | GroupSpec::Semidirect16 => 16,
            GroupSpec::Sl23 => 24,
        }
    }

    /// Factors of a direct product, left to right.
    pub fn factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(a, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
            other => vec![other],
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let order = self.order();
        if order == 0 {
            return Err(Error::Input(format!("{self} has no elements")));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::capacity("group order", order, MAX_GROUP_ORDER));
        }
        let name = self.to_string();
        let g = match self {
            GroupSpec::Cyclic(n) => FiniteGroup::from_fn(name.clone(), *n, |a, b| (a + b) % n)?,
            GroupSpec::Dihedral(n) => dihedral(*n)?,
            GroupSpec::Dicyclic(n) => dicyclic(*n)?,
            GroupSpec::Quaternion8 => quaternion8()?,
            GroupSpec::Symmetric(n) => permutation_group(*n, false)?,
            GroupSpec::Alternating(n) => permutation_group(*n, true)?,
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?)?,
            GroupSpec::Semidihedral16 => {
                let c8 = GroupSpec::Cyclic(8).build()?;
                semidirect_cyclic(&c8, 2, &multiplier(8, 3))?
            }
            GroupSpec::Modular16 => {
                let c8 = GroupSpec::Cyclic(8).build()?;
                semidirect_cyclic(&c8, 2, &multiplier(8, 5))?
            }
            GroupSpec::C4SemiC4 => {
                let c4 = GroupSpec::Cyclic(4).build()?;
                semidirect_cyclic(&c4, 4, &multiplier(4, 3))?
            }
            GroupSpec::KleinSemiC4 => {
                let v = klein().build()?;
                semidirect_cyclic(&v, 4, &GroupMap::new(vec![0, 2, 1, 3]))?
            }
            GroupSpec::Semidirect16 => semidirect16()?,
            GroupSpec::Sl23 => sl23()?,
        };
        Ok(g.with_name(name))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "Dic{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Semidihedral16 => write!(f, "QD16"),
            GroupSpec::Modular16 => write!(f, "M16"),
            GroupSpec::C4SemiC4 => write!(f, "C4:C4"),
            GroupSpec::KleinSemiC4 => write!(f, "C2^2:C4"),
            GroupSpec::Semidirect16 => write!(f, "SD16"),
            GroupSpec::Sl23 => write!(f, "SL23"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(spec) = special_name(s) {
            return Ok(spec);
        }
        let mut parts = s.split('x').map(parse_factor);
        let first = parts
            .next()
            .ok_or_else(|| Error::Lookup(format!("empty group name {s:?}")))??;
        parts.try_fold(first, |acc, next| Ok(GroupSpec::product(acc, next?)))
    }
}

fn special_name(s: &str) -> Option<GroupSpec> {
    Some(match s {
        "Q8" => GroupSpec::Quaternion8,
        "QD16" => GroupSpec::Semidihedral16,
        "M16" => GroupSpec::Modular16,
        "C4:C4" => GroupSpec::C4SemiC4,
        "C2^2:C4" => GroupSpec::KleinSemiC4,
        "SD16" => GroupSpec::Semidirect16,
        "SL23" => GroupSpec::Sl23,
        _ => return None,
    })
}

fn parse_factor(tok: &str) -> Result<GroupSpec> {
    let bad = || Error::Lookup(format!("unknown group name {tok:?}"));
    if let Some(spec) = special_name(tok) {
        return Ok(spec);
    }
    let num = |digits: &str| digits.parse::<usize>().map_err(|_| bad());
    let spec = if let Some(rest) = tok.strip_prefix("Dic") {
        GroupSpec::Dicyclic(num(rest)?)
    } else if let Some(rest) = tok.strip_prefix('C') {
        match rest.split_once('^') {
            Some((p, k)) => {
                let (p, k) = (num(p)?, num(k)?);
                if k == 0 {
                    return Err(bad());
                }
                let mut acc = GroupSpec::Cyclic(p);
                for _ in 1..k {
                    acc = GroupSpec::product(acc, GroupSpec::Cyclic(p));
                }
                acc
            }
            None => GroupSpec::Cyclic(num(rest)?),
        }
    } else if let Some(rest) = tok.strip_prefix('D') {
        GroupSpec::Dihedral(num(rest)?)
    } else if let Some(rest) = tok.strip_prefix('S') {
        GroupSpec::Symmetric(num(rest)?)
    } else if let Some(rest) = tok.strip_prefix('A') {
        GroupSpec::Alternating(num(rest)?)
    } else {
        return Err(bad());
    };
    match spec {
        GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) if n == 0 || n > 5 => {
            Err(Error::capacity("permutation degree", n, 5))
        }
        GroupSpec::Cyclic(0) | GroupSpec::Dihedral(0) | GroupSpec::Dicyclic(0) => Err(bad()),
        s => Ok(s),
    }
}

fn klein() -> GroupSpec {
    GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2))
}

fn multiplier(n: usize, a: usize) -> GroupMap {
    GroupMap::new((0..n).map(|x| a * x % n).collect())
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_fn(format!("D{n}"), 2 * n, |x, y| {
        let (e1, i) = (x / n, x % n);
        let (e2, j) = (y / n, y % n);
        let i = if e2 == 1 { (n - i) % n } else { i };
        ((e1 + e2) % 2) * n + (i + j) % n
    })
}

fn dicyclic(n: usize) -> Result<FiniteGroup> {
    let m = 2 * n;
    FiniteGroup::from_fn(format!("Dic{n}"), 2 * m, |x, y| {
        let (e1, i) = (x / m, x % m);
        let (e2, j) = (y / m, y % m);
        let j = if e1 == 1 { (m - j) % m } else { j };
        let extra = if e1 + e2 == 2 { n } else { 0 };
        ((e1 + e2) % 2) * m + (i + j + extra) % m
    })
}

fn quaternion8() -> Result<FiniteGroup> {
    // Units 1, i, j, k as 0..4; (unit, negative) sits at index 2·unit + negative.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    FiniteGroup::from_fn("Q8", 8, |x, y| {
        let (u, neg) = UNIT[x / 2][y / 2];
        let negative = neg ^ (x % 2 == 1) ^ (y % 2 == 1);
        2 * u + usize::from(negative)
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn permutation_elements(n: usize, even_only: bool) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .filter(|p| !even_only || is_even(p))
        .collect()
}

fn permutation_group(n: usize, even_only: bool) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::capacity("permutation degree", n, 5));
    }
    let elems = permutation_elements(n, even_only);
    let index: HashMap<&[usize], usize> =
        elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let name = if even_only { format!("A{n}") } else { format!("S{n}") };
    FiniteGroup::from_fn(name, elems.len(), |a, b| {
        let composed: Vec<usize> = (0..n).map(|x| elems[a][elems[b][x]]).collect();
        index[composed.as_slice()]
    })
}

/// Parses cycle notation on points `1..=n`, e.g. `(1 2)(3 4)`.
pub fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let bad = || Error::Input(format!("bad cycle notation {text:?} for degree {n}"));
    let text = text.trim();
    if text.is_empty() || text == "()" {
        return Ok(perm);
    }
    let mut touched = vec![false; n];
    for cycle in text.split(')').map(str::trim).filter(|c| !c.is_empty()) {
        let body = cycle.strip_prefix('(').ok_or_else(bad)?;
        let points = body
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        for &p in &points {
            if std::mem::replace(&mut touched[p], true) {
                return Err(bad());
            }
        }
        for (k, &p) in points.iter().enumerate() {
            perm[p] = points[(k + 1) % points.len()];
        }
    }
    Ok(perm)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let nb = b.order();
    FiniteGroup::from_fn(
        format!("{}x{}", a.name(), b.name()),
        a.order() * nb,
        |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
    )
}

/// `N ⋊ C_k` where the generator of `C_k` acts by `action` (which must have
/// order dividing `k`).
pub fn semidirect_cyclic(base: &FiniteGroup, k: usize, action: &GroupMap) -> Result<FiniteGroup> {
    action.require_automorphism(base)?;
    if k == 0 || action.order() > k || !k.is_multiple_of(action.order()) {
        return Err(Error::Contract(format!(
            "action of order {} does not factor through C{k}",
            action.order()
        )));
    }
    let n = base.order();
    let powers: Vec<GroupMap> = (0..k).map(|i| action.pow(i)).collect();
    FiniteGroup::from_fn(format!("{}:C{k}", base.name()), n * k, |x, y| {
        let (i, a) = (x / n, x % n);
        let (j, b) = (y / n, y % n);
        ((i + j) % k) * n + base.mul(a, powers[i].apply(b))
    })
}

fn semidirect16() -> Result<FiniteGroup> {
    static CHOICE: OnceLock<Vec<usize>> = OnceLock::new();
    let base = GroupSpec::product(GroupSpec::Cyclic(4), GroupSpec::Cyclic(2)).build()?;
    if let Some(images) = CHOICE.get() {
        return semidirect_cyclic(&base, 2, &GroupMap::new(images.clone()));
    }
    let auts = AutomorphismGroup::new(&base)?;
    for alpha in auts.elements() {
        if alpha.order() != 2 {
            continue;
        }
        let g = semidirect_cyclic(&base, 2, alpha)?;
        if g.is_abelian() {
            continue;
        }
        let has_order_three = AutomorphismGroup::new(&g)?
            .elements()
            .iter()
            .any(|m| m.order() == 3);
        if has_order_three {
            let _ = CHOICE.set(alpha.images.clone());
            return Ok(g);
        }
    }
    Err(Error::Internal("no (C4xC2):C2 admits an automorphism of order 3".into()))
}

/// The 2×2 matrices over F3 of determinant one, as `(a, b, c, d)` rows.
pub fn sl23_elements() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 3 * 3 - b * c) % 3 == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out.sort();
    let id = out.iter().position(|m| *m == [1, 0, 0, 1]).expect("identity");
    let e = out.remove(id);
    out.insert(0, e);
    out
}

fn sl23() -> Result<FiniteGroup> {
    let elems = sl23_elements();
    let index: HashMap<[usize; 4], usize> =
        elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    FiniteGroup::from_fn("SL23", elems.len(), |x, y| {
        let [a, b, c, d] = elems[x];
        let [e, f, g, h] = elems[y];
        index[&[(a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3]]
    })
}

/// One isomorphism type per entry, for orders 1 through 16.
pub fn groups_of_order(n: usize) -> Result<Vec<GroupSpec>> {
    use GroupSpec::*;
    let c = |k| Cyclic(k);
    let p = GroupSpec::product;
    let list = match n {
        1 | 2 | 3 | 5 | 7 | 11 | 13 => vec![c(n)],
        4 => vec![c(4), p(c(2), c(2))],
        6 | 10 | 14 => vec![c(n), Dihedral(n / 2)],
        8 => vec![c(8), p(c(4), c(2)), p(p(c(2), c(2)), c(2)), Dihedral(4), Quaternion8],
        9 => vec![c(9), p(c(3), c(3))],
        12 => vec![c(12), p(c(6), c(2)), Dihedral(6), Dicyclic(3), Alternating(4)],
        15 => vec![c(15)],
        16 => vec![
            c(16),
            p(c(8), c(2)),
            p(c(4), c(4)),
            p(p(c(4), c(2)), c(2)),
            p(p(p(c(2), c(2)), c(2)), c(2)),
            Dihedral(8),
            Dicyclic(4),
            Semidihedral16,
            Modular16,
            C4SemiC4,
            KleinSemiC4,
            p(c(2), Dihedral(4)),
            p(c(2), Quaternion8),
            Semidirect16,
        ],
        0 => return Err(Error::Input("order must be positive".into())),
        _ => return Err(Error::capacity("order for the group list", n, 16)),
    };
    Ok(list)
}

/// A catalog group together with its lazily computed automorphism group.
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub group: Arc<FiniteGroup>,
    aut: OnceLock<std::result::Result<Arc<AutomorphismGroup>, String>>,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatalogEntry({})", self.spec)
    }
}

impl CatalogEntry {
    pub fn automorphisms(&self) -> Result<Arc<AutomorphismGroup>> {
        self.aut
            .get_or_init(|| {
                AutomorphismGroup::with_bound(&self.group, CATALOG_AUT_BOUND)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .clone()
            .map_err(|_| {
                Error::capacity("group order for automorphism search", self.group.order(), CATALOG_AUT_BOUND)
            })
    }
}

/// Shared, cached catalog entry for `spec`.
pub fn entry(spec: &GroupSpec) -> Result<Arc<CatalogEntry>> {
    static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Arc<CatalogEntry>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().expect("catalog lock").get(spec) {
        return Ok(e.clone());
    }
    let group = Arc::new(spec.build()?);
    let mut map = cache.lock().expect("catalog lock");
    Ok(map
        .entry(spec.clone())
        .or_insert_with(|| {
            Arc::new(CatalogEntry {
                spec: spec.clone(),
                group,
                aut: OnceLock::new(),
            })
        })
        .clone())
}

pub fn build(spec: &GroupSpec) -> Result<Arc<FiniteGroup>> {
    Ok(entry(spec)?.group.clone())
}

/// Catalog groups tried when identifying a group of the given order.
fn identification_candidates(n: usize) -> Vec<GroupSpec> {
    if let Ok(list) = groups_of_order(n) {
        return list;
    }
    let mut out = vec![GroupSpec::Cyclic(n)];
    if n.is_multiple_of(2) {
        out.push(GroupSpec::Dihedral(n / 2));
    }
    if n.is_multiple_of(4) {
        out.push(GroupSpec::Dicyclic(n / 4));
    }
    match n {
        24 => out.extend([GroupSpec::Symmetric(4), GroupSpec::Sl23]),
        36 => out.push(GroupSpec::product(GroupSpec::Symmetric(3), GroupSpec::Symmetric(3))),
        60 => out.push(GroupSpec::Alternating(5)),
        120 => out.push(GroupSpec::Symmetric(5)),
        _ => {}
    }
    out
}

/// Finds the catalog type of `g` with an isomorphism `g → catalog group`.
pub fn identify(g: &FiniteGroup) -> Option<(GroupSpec, GroupMap)> {
    identification_candidates(g.order()).into_iter().find_map(|spec| {
        let target = build(&spec).ok()?;
        groups_isomorphic(g, &target).map(|iso| (spec, iso))
    })
}

/// Resolves an automorphism name for the given catalog group.
///
/// Grammar: `f*g` composes (apply `g` first), `f^k` is a power, and atoms are
/// `id`, `inner:<index>`, `class:<k>`, `images:<i0>,<i1>,...`, `mul:<a>[@n]`,
/// `phi:<a>,<b>[@n]`, `mat:<row>;<row>...`, `conj:<cycles>`, `swap`,
/// `pair:<left>|<right>`, and the table names `psi_sigma`, `psi_tau`,
/// `alpha_sigma`, `alpha_tau`, `beta_sigma`, `beta_tau`, `psi1`..`psi5`.
pub fn named_automorphism(spec: &GroupSpec, name: &str) -> Result<GroupMap> {
    let g = build(spec)?;
    let map = resolve(spec, &g, name.trim())?;
    if !map.is_automorphism(&g) {
        return Err(Error::Contract(format!("{name} does not define an automorphism of {spec}")));
    }
    Ok(map)
}

fn resolve(spec: &GroupSpec, g: &FiniteGroup, name: &str) -> Result<GroupMap> {
    if name.starts_with("pair:") {
        return resolve_atom(spec, g, name);
    }
    let mut acc = GroupMap::identity(g.order());
    for factor in name.split('*').rev() {
        let factor = factor.trim();
        let (base, power) = match factor.rsplit_once('^') {
            Some((b, k)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_digit()) => {
                (b, k.parse::<usize>().map_err(|e| Error::Input(e.to_string()))?)
            }
            _ => (factor, 1),
        };
        let m = resolve_atom(spec, g, base)?;
        if !m.is_automorphism(g) {
            return Err(Error::Contract(format!("{base} does not define an automorphism of {spec}")));
        }
        acc = m.pow(power).compose(&acc);
    }
    Ok(acc)
}

fn parse_num(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Input(format!("expected an integer, got {s:?}")))
}

fn split_modulus<'a>(body: &'a str, spec: &GroupSpec, expected: usize) -> Result<&'a str> {
    match body.split_once('@') {
        Some((b, n)) => {
            let n = parse_num(n)?;
            if n as usize != expected {
                return Err(Error::Input(format!("modulus {n} does not match group {spec}")));
            }
            Ok(b)
        }
        None => Ok(body),
    }
}

fn lookup_err(spec: &GroupSpec, name: &str) -> Error {
    Error::Lookup(format!("automorphism {name:?} is not defined for {spec}"))
}

fn resolve_atom(spec: &GroupSpec, g: &FiniteGroup, name: &str) -> Result<GroupMap> {
    let n = g.order();
    let (head, body) = name.split_once(':').unwrap_or((name, ""));
    let modp = |v: i64, m: usize| v.rem_euclid(m as i64) as usize;
    match head {
        "id" => Ok(GroupMap::identity(n)),
        "inner" => {
            let a = if *spec == GroupSpec::Sl23 && body == "A" {
                let target = [0, 2, 1, 0];
                sl23_elements().iter().position(|m| *m == target).expect("A in SL(2,3)")
            } else {
                let a = parse_num(body)?;
                if a < 0 || a as usize >= n {
                    return Err(Error::Input(format!("element {a} out of range for {spec}")));
                }
                a as usize
            };
            Ok(GroupMap::inner(g, a))
        }
        "class" => {
            let k = parse_num(body)?;
            let aut = entry(spec)?.automorphisms()?;
            aut.classes()
                .get(k as usize)
                .map(|c| c.representative.clone())
                .ok_or_else(|| Error::Lookup(format!("{spec} has {} automorphism classes", aut.classes().len())))
        }
        "images" => {
            let images = body
                .split(',')
                .map(|t| parse_num(t).map(|v| v as usize))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n || images.iter().any(|&v| v >= n) {
                return Err(Error::Input(format!("image list must have {n} entries below {n}")));
            }
            Ok(GroupMap::new(images))
        }
        "mul" => {
            let GroupSpec::Cyclic(m) = *spec else {
                return Err(lookup_err(spec, name));
            };
            let a = modp(parse_num(split_modulus(body, spec, m)?)?, m);
            if gcd(a, m) != 1 && m > 1 {
                return Err(Error::Contract(format!("{a} is not a unit modulo {m}")));
            }
            Ok(multiplier(m, a))
        }
        "phi" => {
            let GroupSpec::Dihedral(m) = *spec else {
                return Err(lookup_err(spec, name));
            };
            let body = split_modulus(body, spec, m)?;
            let (a, b) = body
                .split_once(',')
                .ok_or_else(|| Error::Input(format!("expected phi:a,b, got {name:?}")))?;
            let (a, b) = (modp(parse_num(a)?, m), modp(parse_num(b)?, m));
            Ok(crate::dihedral::DihedralAut::new(m, a, b)?.images())
        }
        "mat" => matrix_map(spec, body),
        "conj" => {
            let (degree, even) = match spec {
                GroupSpec::Symmetric(d) => (*d, false),
                GroupSpec::Alternating(d) => (*d, true),
                _ => return Err(lookup_err(spec, name)),
            };
            let elems = permutation_elements(degree, even);
            let pi = parse_cycles(body, degree)?;
            let mut pi_inv = vec![0; degree];
            for (x, &y) in pi.iter().enumerate() {
                pi_inv[y] = x;
            }
            let index: HashMap<Vec<usize>, usize> =
                elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            (0..n)
                .map(|x| {
                    let c: Vec<usize> = (0..degree).map(|t| pi[elems[x][pi_inv[t]]]).collect();
                    index.get(&c).copied().ok_or_else(|| Error::Internal("conjugate left the group".into()))
                })
                .collect::<Result<Vec<_>>>()
                .map(GroupMap::new)
        }
        "swap" => {
            let GroupSpec::Product(a, b) = spec else {
                return Err(lookup_err(spec, name));
            };
            if a != b {
                return Err(Error::Contract(format!("swap needs identical factors, got {spec}")));
            }
            let m = b.order();
            Ok(GroupMap::new((0..n).map(|x| (x % m) * m + x / m).collect()))
        }
        "pair" => {
            let GroupSpec::Product(a, b) = spec else {
                return Err(lookup_err(spec, name));
            };
            let (l, r) = body
                .split_once('|')
                .ok_or_else(|| Error::Input(format!("expected pair:<left>|<right>, got {name:?}")))?;
            let lm = named_automorphism(a, l)?;
            let rm = named_automorphism(b, r)?;
            let m = b.order();
            Ok(GroupMap::new((0..n).map(|x| lm.apply(x / m) * m + rm.apply(x % m)).collect()))
        }
        "psi_sigma" | "psi_tau" | "alpha_sigma" | "alpha_tau" => {
            let k = if head.starts_with("psi") { 4 } else { 6 };
            if spec.to_string() != format!("C{k}xC2") {
                return Err(lookup_err(spec, name));
            }
            let sigma = head.ends_with("sigma");
            Ok(GroupMap::new(
                (0..n)
                    .map(|x| {
                        let (i, j) = (x / 2, x % 2);
                        let first = if sigma {
                            if k == 4 { i + 2 * j } else { 2 * i + 3 * j }
                        } else {
                            k - i
                        };
                        (first % k) * 2 + (i + j) % 2
                    })
                    .collect(),
            ))
        }
        "beta_sigma" | "beta_tau" => {
            if *spec != GroupSpec::Dicyclic(3) {
                return Err(lookup_err(spec, name));
            }
            let sigma = head == "beta_sigma";
            Ok(GroupMap::new(
                (0..n)
                    .map(|x| {
                        let (e, i) = (x / 6, x % 6);
                        let i2 = if sigma { (i + e) % 6 } else { (6 - i) % 6 };
                        6 * e + i2
                    })
                    .collect(),
            ))
        }
        "psi1" | "psi2" | "psi3" | "psi4" | "psi5" => {
            if *spec != GroupSpec::Quaternion8 {
                return Err(lookup_err(spec, name));
            }
            // Images of the generators i (index 2) and j (index 4).
            let (i_img, j_img) = match head {
                "psi1" => (2, 4),
                "psi2" => (2, 5),
                "psi3" => (4, 2),
                "psi4" => (4, 6),
                _ => (4, 3),
            };
            from_generator_images(g, &[2, 4], &[i_img, j_img])
        }
        _ => Err(lookup_err(spec, name)),
    }
}

/// Extends generator images to a map, checking well-definedness.
pub fn from_generator_images(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Result<GroupMap> {
    let mut map = vec![None; g.order()];
    map[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("mapped");
        for (&s, &t) in gens.iter().zip(images) {
            let z = g.mul(x, s);
            let w = g.mul(fx, t);
            match map[z] {
                Some(v) if v != w => {
                    return Err(Error::Contract("generator images do not extend to a homomorphism".into()))
                }
                Some(_) => {}
                None => {
                    map[z] = Some(w);
                    queue.push_back(z);
                }
            }
        }
    }
    map.into_iter()
        .collect::<Option<Vec<_>>>()
        .map(GroupMap::new)
        .ok_or_else(|| Error::Contract("generators do not generate the group".into()))
}

fn matrix_map(spec: &GroupSpec, body: &str) -> Result<GroupMap> {
    let factors = spec.factors();
    let p = match factors[0] {
        GroupSpec::Cyclic(p) if factors.iter().all(|f| **f == GroupSpec::Cyclic(*p)) => *p,
        _ => return Err(lookup_err(spec, &format!("mat:{body}"))),
    };
    let k = factors.len();
    let rows = body
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|v| parse_num(v).map(|x| x.rem_euclid(p as i64) as usize))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(Error::Input(format!("matrix must be {k}x{k} for {spec}")));
    }
    let n = p.pow(k as u32);
    let digits = |mut x: usize| {
        let mut v = vec![0; k];
        for slot in v.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        v
    };
    Ok(GroupMap::new(
        (0..n)
            .map(|x| {
                let v = digits(x);
                rows.iter()
                    .map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<usize>() % p)
                    .fold(0, |acc, d| acc * p + d)
            })
            .collect(),
    ))
}
