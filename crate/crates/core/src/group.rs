//! Finite groups stored as Cayley tables.
//!
//! Elements are the indices `0..order`, and index 0 is always the identity.
//! Every constructor re-checks the group axioms, so a `FiniteGroup` value is
//! known to be a group.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by any constructor.
pub const MAX_GROUP_ORDER: usize = 128;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, `rows[i][j] = i·j`.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Structural("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::capacity("group order", n, MAX_GROUP_ORDER));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(name.into(), n, flat)
    }

    /// Builds a group of the given order from a product function on indices.
    pub fn from_fn(
        name: impl Into<String>,
        order: usize,
        mut product: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Structural("empty group".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::capacity("group order", order, MAX_GROUP_ORDER));
        }
        let mut flat = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                flat.push(product(i, j));
            }
        }
        Self::from_flat(name.into(), order, flat)
    }

    fn from_flat(name: String, n: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::Structural(format!("entry {bad} out of range 0..{n}")));
        }
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::Structural(format!(
                    "index 0 is not the identity (row/column {i})"
                )));
            }
        }
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] == 2 * i + 1 {
                    return Err(Error::Structural(format!("row {i} repeats {v}")));
                }
                seen[v] = 2 * i + 1;
            }
            for j in 0..n {
                let v = table[j * n + i];
                if seen[v] == 2 * i + 2 {
                    return Err(Error::Structural(format!("column {i} repeats {v}")));
                }
                seen[v] = 2 * i + 2;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    if table[ij * n + k] != table[i * n + table[j * n + k]] {
                        return Err(Error::Structural(format!(
                            "associativity fails at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0; n];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n).find(|&j| table[i * n + j] == 0).expect("Latin square");
        }
        let mut orders = vec![1; n];
        for (i, ord) in orders.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = table[x * n + i];
                *ord += 1;
            }
        }
        Ok(FiniteGroup {
            name,
            order: n,
            table,
            inverses,
            orders,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Unchecked product; panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Checked product.
    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Checked inverse.
    pub fn inverse(&self, a: usize) -> Result<usize> {
        self.check_index(a)?;
        Ok(self.inv(a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k % self.orders[a] {
            r = self.mul(r, a);
        }
        r
    }

    /// `a·x·a⁻¹`.
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(a, x), self.inv(a))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_members(
            self.order,
            (0..self.order)
                .filter(|&z| (0..self.order).all(|x| self.mul(x, z) == self.mul(z, x)))
                .collect(),
        )
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_mask(self.closure_mask(gens))
    }

    fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// Generators chosen by repeatedly adding the smallest element outside
    /// the current closure.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        while let Some(next) = mask.iter().position(|&m| !m) {
            gens.push(next);
            mask = self.closure_mask(&gens);
        }
        gens
    }

    /// Whether `h` is closed and invariant under conjugation.
    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check_subgroup(h)?;
        Ok(self.is_normal_unchecked(h))
    }

    pub(crate) fn is_normal_unchecked(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|a| h.members().iter().all(|&x| h.contains(self.conjugate(a, x))))
    }

    /// Contract check that `h` is a subgroup of this group.
    pub fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.parent_order() != self.order {
            return Err(Error::Contract(format!(
                "subset of a group of order {} used in a group of order {}",
                h.parent_order(),
                self.order
            )));
        }
        if !h.contains(0) {
            return Err(Error::Contract("subset does not contain the identity".into()));
        }
        for &a in h.members() {
            for &b in h.members() {
                if !h.contains(self.mul(a, b)) {
                    return Err(Error::Contract(format!(
                        "subset not closed: {a}·{b} = {} missing",
                        self.mul(a, b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The smallest normal subgroup containing `x`.
    pub fn normal_closure(&self, x: usize) -> Subgroup {
        let conj: Vec<usize> = (0..self.order).map(|a| self.conjugate(a, x)).collect();
        self.generated_subgroup(&conj)
    }

    /// True for nontrivial groups without proper nontrivial normal subgroups.
    pub fn is_simple(&self) -> bool {
        self.order > 1 && (1..self.order).all(|x| self.normal_closure(x).len() == self.order)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GroupJson = serde_json::from_str(text)?;
        if raw.table.len() != raw.order {
            return Err(Error::Structural(format!(
                "declared order {} but table has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        Self::from_table(raw.name, &raw.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson {
            name: self.name.clone(),
            order: self.order,
            table: self.rows(),
        })
        .expect("plain data serializes")
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a >= self.order {
            return Err(Error::Structural(format!(
                "element {a} out of range for group of order {}",
                self.order
            )));
        }
        Ok(())
    }
}

/// A subset of a group's elements, normally a subgroup.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
    #[serde(skip)]
    mask: Vec<bool>,
    parent_order: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

impl Subgroup {
    pub fn from_members(parent_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            members,
            mask,
            parent_order,
        }
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup {
            members,
            parent_order: mask.len(),
            mask,
        }
    }

    pub fn whole(order: usize) -> Self {
        Self::from_mask(vec![true; order])
    }

    pub fn trivial(order: usize) -> Self {
        Self::from_members(order, vec![0])
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            self.parent_order,
            self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        )
    }
}

/// Re-indexes a subgroup as a group in its own right.
///
/// Element `i` of the result is `h.members()[i]`; the returned vector is that
/// embedding.
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    g.check_subgroup(h)?;
    let members = h.members().to_vec();
    let sub = FiniteGroup::from_fn(format!("{}<{}>", g.name(), members.len()), members.len(), |i, j| {
        h.position(g.mul(members[i], members[j])).expect("closed")
    })?;
    Ok((sub, members))
}

/// A total map between the element sets of two groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupMap {
    pub images: Vec<usize>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl GroupMap {
    pub fn new(images: Vec<usize>) -> Self {
        GroupMap { images }
    }

    pub fn identity(n: usize) -> Self {
        GroupMap {
            images: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupMap { images: inv }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.images.len() == source.order()
            && self.images.iter().all(|&y| y < target.order())
            && self.images[0] == 0
            && (0..source.order()).all(|a| {
                (0..source.order()).all(|b| {
                    self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b])
                })
            })
    }

    pub fn is_automorphism(&self, g: &FiniteGroup) -> bool {
        self.is_bijective() && self.is_homomorphism(g, g)
    }

    /// Contract check used wherever an automorphism is required.
    pub fn require_automorphism(&self, g: &FiniteGroup) -> Result<()> {
        if self.is_automorphism(g) {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "map {:?} is not an automorphism of {}",
                self.images,
                g.name()
            )))
        }
    }

    /// Order of a permutation of the element set.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn pow(&self, k: usize) -> GroupMap {
        let mut r = GroupMap::identity(self.images.len());
        for _ in 0..k {
            r = self.compose(&r);
        }
        r
    }

    /// `τ ∘ self ∘ τ⁻¹`.
    pub fn conjugate_by(&self, tau: &GroupMap) -> GroupMap {
        tau.compose(&self.compose(&tau.inverse()))
    }

    /// The inner automorphism `x ↦ a·x·a⁻¹`.
    pub fn inner(g: &FiniteGroup, a: usize) -> GroupMap {
        GroupMap {
            images: (0..g.order()).map(|x| g.conjugate(a, x)).collect(),
        }
    }

    pub fn fixed_subgroup(&self) -> Subgroup {
        Subgroup::from_members(
            self.images.len(),
            (0..self.images.len()).filter(|&x| self.images[x] == x).collect(),
        )
    }

    /// Restriction to an invariant subgroup, re-indexed by member position.
    pub fn restrict(&self, h: &Subgroup) -> Result<GroupMap> {
        h.members()
            .iter()
            .map(|&x| {
                h.position(self.images[x]).ok_or_else(|| {
                    Error::Contract(format!("subgroup not invariant: {x} maps outside"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupMap::new)
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let c4 = cyclic(4);
        assert_eq!(c4.multiply(1, 3).unwrap(), 0);
        assert_eq!(cyclic(6).inverse(2).unwrap(), 4);
        assert_eq!(cyclic(15).element_order(3), 5);
        assert_eq!(c4.element_order(0), 1);
        assert!(c4.multiply(4, 0).is_err());
        assert!(c4.inverse(9).is_err());
    }

    #[test]
    fn generated() {
        let c12 = cyclic(12);
        assert_eq!(c12.generated_subgroup(&[8]).members(), &[0, 4, 8]);
        assert_eq!(c12.generated_subgroup(&[]).members(), &[0]);
        assert_eq!(c12.greedy_generators(), vec![1]);
    }

    #[test]
    fn rejects_bad_tables() {
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table("x", &not_latin),
            Err(Error::Structural(_))
        ));
        let wrong_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("x", &wrong_identity).is_err());
        // A Latin square with identity 0 that is not associative.
        let loop5: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &loop5).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let g = cyclic(5);
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        let bad = r#"{"name":"x","order":2,"table":[[0,1],[1,1]]}"#;
        assert!(FiniteGroup::from_json(bad).is_err());
    }

    #[test]
    fn non_closed_subset_is_contract_error() {
        let g = cyclic(4);
        let h = Subgroup::from_members(4, vec![0, 1]);
        assert!(matches!(g.is_normal(&h), Err(Error::Contract(_))));
    }

    #[test]
    fn map_algebra() {
        let g = cyclic(5);
        let twice = GroupMap::new((0..5).map(|x| 2 * x % 5).collect());
        assert!(twice.is_automorphism(&g));
        assert_eq!(twice.order(), 4);
        assert_eq!(twice.pow(4), GroupMap::identity(5));
        assert_eq!(twice.compose(&twice.inverse()), GroupMap::identity(5));
        assert_eq!(twice.fixed_subgroup().members(), &[0]);
    }
}
