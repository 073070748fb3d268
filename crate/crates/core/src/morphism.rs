//! Isomorphism and automorphism search between Cayley-table groups.
//!
//! Maps are determined by the images of the greedy generators of the source;
//! candidates for each generator image are restricted to elements of the same
//! order, and each partial assignment is checked on the subgroup it generates.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};

/// Default bound on the group order for automorphism enumeration.
pub const DEFAULT_AUT_BOUND: usize = 60;

/// Visits every isomorphism `g1 → g2` until the visitor breaks.
pub fn for_each_isomorphism<B>(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    mut visit: impl FnMut(&GroupMap) -> ControlFlow<B>,
) -> Option<B> {
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return None;
    }
    let gens = g1.greedy_generators();
    if gens.is_empty() {
        return match visit(&GroupMap::identity(g1.order())) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        };
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..g2.order())
                .filter(|&y| g2.element_order(y) == g1.element_order(x))
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    match extend(g1, g2, &gens, &candidates, &mut images, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

fn extend<B>(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut impl FnMut(&GroupMap) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let k = images.len();
    for &y in &candidates[k] {
        images.push(y);
        if let Some(map) = close(g1, g2, &gens[..=k], images) {
            if k + 1 == gens.len() {
                visit(&GroupMap::new(map.into_iter().map(|v| v.expect("total")).collect()))?;
            } else {
                extend(g1, g2, gens, candidates, images, visit)?;
            }
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

/// Extends `gens[i] ↦ images[i]` over the generated subgroup, returning
/// `None` if the extension is not a well-defined injective homomorphism.
fn close(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g1.order()];
    let mut used = vec![false; g2.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for (&g, &img) in gens.iter().zip(images) {
            let z = g1.mul(x, g);
            let w = g2.mul(fx, img);
            match map[z] {
                Some(v) if v != w => return None,
                Some(_) => {}
                None => {
                    if used[w] {
                        return None;
                    }
                    used[w] = true;
                    map[z] = Some(w);
                    queue.push_back(z);
                }
            }
        }
    }
    Some(map)
}

/// All isomorphisms `g1 → g2`, at most `limit` of them.
pub fn isomorphisms(g1: &FiniteGroup, g2: &FiniteGroup, limit: Option<usize>) -> Vec<GroupMap> {
    let mut out = Vec::new();
    for_each_isomorphism(g1, g2, |m| {
        out.push(m.clone());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// A witness isomorphism if the groups are isomorphic.
pub fn groups_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<GroupMap> {
    if g1.order() != g2.order()
        || g1.order_profile() != g2.order_profile()
        || g1.is_abelian() != g2.is_abelian()
        || g1.center().len() != g2.center().len()
    {
        return None;
    }
    for_each_isomorphism(g1, g2, |m| ControlFlow::Break(m.clone()))
}

/// Every automorphism of `g`, with the default order bound.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<GroupMap>> {
    automorphism_group_bounded(g, DEFAULT_AUT_BOUND)
}

pub fn automorphism_group_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<GroupMap>> {
    if g.order() > bound {
        return Err(Error::capacity("group order for automorphism search", g.order(), bound));
    }
    Ok(isomorphisms(g, g, None))
}

/// One conjugacy class of `Aut(G)`.
#[derive(Clone, Debug)]
pub struct AutClass {
    /// The member with the lexicographically smallest image array.
    pub representative: GroupMap,
    pub size: usize,
    members: Vec<usize>,
}

impl AutClass {
    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

/// `Aut(G)` together with its conjugacy classes.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    auts: Vec<GroupMap>,
    index: HashMap<Vec<usize>, usize>,
    generators: Vec<usize>,
    classes: Vec<AutClass>,
    class_of: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_bound(g, DEFAULT_AUT_BOUND)
    }

    pub fn with_bound(g: &FiniteGroup, bound: usize) -> Result<Self> {
        let auts = automorphism_group_bounded(g, bound)?;
        Ok(Self::from_elements(auts))
    }

    fn from_elements(auts: Vec<GroupMap>) -> Self {
        let index: HashMap<Vec<usize>, usize> = auts
            .iter()
            .enumerate()
            .map(|(i, a)| (a.images.clone(), i))
            .collect();
        let generators = permutation_generators(&auts, &index);
        let inverses: Vec<GroupMap> = generators.iter().map(|&t| auts[t].inverse()).collect();

        let mut class_of = vec![usize::MAX; auts.len()];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..auts.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = raw_classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for (&t, tinv) in generators.iter().zip(&inverses) {
                    let c = auts[t].compose(&auts[i].compose(tinv));
                    let j = index[&c.images];
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable_by(|&a, &b| auts[a].images.cmp(&auts[b].images));
            raw_classes.push(members);
        }
        raw_classes.sort_by(|a, b| auts[a[0]].images.cmp(&auts[b[0]].images));
        for (cid, members) in raw_classes.iter().enumerate() {
            for &m in members {
                class_of[m] = cid;
            }
        }
        let classes = raw_classes
            .into_iter()
            .map(|members| AutClass {
                representative: auts[members[0]].clone(),
                size: members.len(),
                members,
            })
            .collect();
        AutomorphismGroup {
            auts,
            index,
            generators,
            classes,
            class_of,
        }
    }

    pub fn elements(&self) -> &[GroupMap] {
        &self.auts
    }

    pub fn len(&self) -> usize {
        self.auts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.auts.is_empty()
    }

    /// Indices into [`elements`](Self::elements) of a generating set.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Classes sorted by representative.
    pub fn classes(&self) -> &[AutClass] {
        &self.classes
    }

    pub fn position(&self, psi: &GroupMap) -> Option<usize> {
        self.index.get(&psi.images).copied()
    }

    /// Index of the conjugacy class containing `psi`.
    pub fn class_index(&self, psi: &GroupMap) -> Result<usize> {
        self.position(psi)
            .map(|i| self.class_of[i])
            .ok_or_else(|| Error::Contract(format!("{:?} is not an automorphism", psi.images)))
    }

    /// Canonical representative of the class of `psi`.
    pub fn canonical_conjugate(&self, psi: &GroupMap) -> Result<&GroupMap> {
        Ok(&self.classes[self.class_index(psi)?].representative)
    }

    /// Some `τ` with `τ ∘ a ∘ τ⁻¹ = b`, if one exists.
    pub fn conjugator(&self, a: &GroupMap, b: &GroupMap) -> Result<Option<GroupMap>> {
        if self.class_index(a)? != self.class_index(b)? {
            return Ok(None);
        }
        let n = a.len();
        let start = self.index[&a.images];
        let mut via: HashMap<usize, GroupMap> = HashMap::from([(start, GroupMap::identity(n))]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            if self.auts[i] == *b {
                return Ok(Some(via[&i].clone()));
            }
            for &t in &self.generators {
                let tau = &self.auts[t];
                let j = self.index[&self.auts[i].conjugate_by(tau).images];
                if !via.contains_key(&j) {
                    via.insert(j, tau.compose(&via[&i]));
                    queue.push_back(j);
                }
            }
        }
        Err(Error::Internal("conjugacy class lost a member".into()))
    }

    /// Whether `psi = (x ↦ a·x·a⁻¹)` for some `a` in `g`.
    pub fn is_inner(g: &FiniteGroup, psi: &GroupMap) -> bool {
        (0..g.order()).any(|a| GroupMap::inner(g, a) == *psi)
    }
}

/// Greedy generating set of a permutation group given by its element list.
fn permutation_generators(auts: &[GroupMap], index: &HashMap<Vec<usize>, usize>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; auts.len()];
    let mut count = 0;
    for cand in 0..auts.len() {
        if count == auts.len() {
            break;
        }
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        inside.iter_mut().for_each(|b| *b = false);
        let id = index[&GroupMap::identity(auts[0].len()).images];
        inside[id] = true;
        count = 1;
        let mut queue = VecDeque::from([id]);
        while let Some(i) = queue.pop_front() {
            for &t in &gens {
                let j = index[&auts[i].compose(&auts[t]).images];
                if !inside[j] {
                    inside[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
    }
    gens
}

/// Conjugacy classes of `Aut(G)` as (representative, class size).
pub fn automorphism_conjugacy_classes(g: &FiniteGroup) -> Result<Vec<(GroupMap, usize)>> {
    Ok(AutomorphismGroup::new(g)?
        .classes()
        .iter()
        .map(|c| (c.representative.clone(), c.size))
        .collect())
}
