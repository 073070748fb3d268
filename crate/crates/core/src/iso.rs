//! Quandle isomorphism deciders.
//!
//! [`brute_force_iso`] is a complete backtracking search and works for any
//! pair of quandles. The other deciders apply to generalized Alexander
//! quandles only and are checked against each other in [`decide`].

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, GroupSpec};
use crate::dihedral::{self, DihedralAut};
use crate::error::{Error, Result};
use crate::group::{lcm, GroupMap, Subgroup};
use crate::invariants::AlexanderQuandle;
use crate::morphism::{for_each_isomorphism, AutomorphismGroup};
use crate::quandle::Quandle;

/// Default size bound for the brute-force search.
pub const DEFAULT_BRUTE_MAX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoResult {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

impl IsoResult {
    pub fn as_str(self) -> &'static str {
        match self {
            IsoResult::Isomorphic => "isomorphic",
            IsoResult::NotIsomorphic => "not-isomorphic",
            IsoResult::Undecided => "undecided",
        }
    }
}

impl std::fmt::Display for IsoResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    /// Search for an isomorphism `h: P → P'` compatible with `ψ` and with the
    /// displacement sets `{s_a(e)}`; valid when `P²` is normal in `G` and
    /// `P² = {s_p(e) : p ∈ P}` on both sides.
    DisplacementCriterion,
    InvariantSeparation,
    SimpleGroupConjugacy,
    DihedralFormula,
    CyclicFormula,
    AbelianNelson,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::BruteForce => "brute-force",
            Method::DisplacementCriterion => "displacement-criterion",
            Method::InvariantSeparation => "invariant-separation",
            Method::SimpleGroupConjugacy => "simple-group-conjugacy",
            Method::DihedralFormula => "dihedral-formula",
            Method::CyclicFormula => "cyclic-formula",
            Method::AbelianNelson => "abelian-nelson",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub result: IsoResult,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IsoVerdict {
    fn isomorphic(method: Method, witness: Option<Vec<usize>>) -> Self {
        IsoVerdict {
            result: IsoResult::Isomorphic,
            method,
            witness,
            separator: None,
            note: None,
        }
    }

    fn not_isomorphic(method: Method) -> Self {
        IsoVerdict {
            result: IsoResult::NotIsomorphic,
            method,
            witness: None,
            separator: None,
            note: None,
        }
    }

    fn undecided(method: Method, note: impl Into<String>) -> Self {
        IsoVerdict {
            result: IsoResult::Undecided,
            method,
            witness: None,
            separator: None,
            note: Some(note.into()),
        }
    }

    fn with_separator(mut self, field: &str) -> Self {
        self.separator = Some(field.to_string());
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_isomorphic(&self) -> bool {
        self.result == IsoResult::Isomorphic
    }

    pub fn is_decided(&self) -> bool {
        self.result != IsoResult::Undecided
    }
}

// ---------------------------------------------------------------------------
// Brute force

struct Side<'a> {
    q: &'a Quandle,
    pair: Vec<u32>,
    color: Vec<u32>,
}

fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut len = vec![0; perm.len()];
    for s in 0..perm.len() {
        if len[s] != 0 {
            continue;
        }
        let mut cycle = vec![s];
        let mut x = perm[s];
        while x != s {
            cycle.push(x);
            x = perm[x];
        }
        for &c in &cycle {
            len[c] = cycle.len();
        }
    }
    len
}

fn orbit_sizes(q: &Quandle) -> Vec<usize> {
    let n = q.size();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        let mut y = x;
        while c[y] != r {
            let next = c[y];
            c[y] = r;
            y = next;
        }
        r
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut comp, y), find(&mut comp, q.s(x, y)));
            if a != b {
                comp[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut comp, x)).collect();
    let mut size = vec![0; n];
    for &r in &roots {
        size[r] += 1;
    }
    roots.iter().map(|&r| size[r]).collect()
}

fn build_side<'a>(
    q: &'a Quandle,
    pair_ids: &mut HashMap<(usize, usize), u32>,
    color_ids: &mut HashMap<Vec<u32>, u32>,
) -> Side<'a> {
    let n = q.size();
    let cycles: Vec<Vec<usize>> = (0..n).map(|x| cycle_lengths(q.row(x))).collect();
    let mut pair = vec![0u32; n * n];
    let mut composed = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            for (z, slot) in composed.iter_mut().enumerate() {
                *slot = q.s(x, q.s(y, z));
            }
            let ord = cycle_lengths(&composed).into_iter().fold(1, lcm);
            let key = (ord, cycles[x][y]);
            let next = pair_ids.len() as u32;
            pair[x * n + y] = *pair_ids.entry(key).or_insert(next);
        }
    }
    let orbits = orbit_sizes(q);
    let color = (0..n)
        .map(|x| {
            let mut cycle_type = cycles[x].clone();
            cycle_type.sort_unstable();
            let mut row: Vec<u32> = (0..n).map(|y| pair[x * n + y]).collect();
            let mut col: Vec<u32> = (0..n).map(|y| pair[y * n + x]).collect();
            row.sort_unstable();
            col.sort_unstable();
            let mut key = vec![orbits[x] as u32, u32::MAX];
            key.extend(cycle_type.iter().map(|&c| c as u32));
            key.push(u32::MAX);
            key.extend(row);
            key.push(u32::MAX);
            key.extend(col);
            let next = color_ids.len() as u32;
            *color_ids.entry(key).or_insert(next)
        })
        .collect();
    Side { q, pair, color }
}

struct Search<'a> {
    n: usize,
    a: Side<'a>,
    b: Side<'a>,
    f: Vec<usize>,
    finv: Vec<usize>,
    trail: Vec<usize>,
    work: Vec<(usize, usize)>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        let n = self.n;
        self.a.color[x] == self.b.color[y]
            && self.trail.iter().all(|&m| {
                let fm = self.f[m];
                self.a.pair[m * n + x] == self.b.pair[fm * n + y]
                    && self.a.pair[x * n + m] == self.b.pair[y * n + fm]
            })
    }

    /// Maps `x ↦ y` and everything it forces; false on contradiction.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        self.work.clear();
        self.work.push((x, y));
        while let Some((u, v)) = self.work.pop() {
            if self.f[u] != UNSET {
                if self.f[u] != v {
                    return false;
                }
                continue;
            }
            if self.finv[v] != UNSET || !self.consistent(u, v) {
                return false;
            }
            self.f[u] = v;
            self.finv[v] = u;
            self.trail.push(u);
            for i in 0..self.trail.len() {
                let m = self.trail[i];
                let fm = self.f[m];
                let (qa, qb) = (self.a.q, self.b.q);
                self.work.push((qa.s(m, u), qb.s(fm, v)));
                self.work.push((qa.s(u, m), qb.s(v, fm)));
                self.work.push((qa.s_inv(m, u), qb.s_inv(fm, v)));
                self.work.push((qa.s_inv(u, m), qb.s_inv(v, fm)));
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let u = self.trail.pop().expect("nonempty");
            self.finv[self.f[u]] = UNSET;
            self.f[u] = UNSET;
        }
    }

    fn candidates(&self, x: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&y| self.finv[y] == UNSET && self.consistent(x, y))
            .collect()
    }

    fn run(&mut self) -> bool {
        if self.trail.len() == self.n {
            return self.a.q.is_isomorphism_to(self.b.q, &self.f);
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in (0..self.n).filter(|&x| self.f[x] == UNSET) {
            let c = self.candidates(x);
            if best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len()) {
                let done = c.len() <= 1;
                best = Some((x, c));
                if done {
                    break;
                }
            }
        }
        let (x, cands) = best.expect("an unmapped point exists");
        for y in cands {
            let save = self.trail.len();
            if self.assign(x, y) && self.run() {
                return true;
            }
            self.undo(save);
        }
        false
    }
}

/// Complete isomorphism search with the default size bound.
pub fn brute_force_iso(q1: &Quandle, q2: &Quandle) -> Result<IsoVerdict> {
    brute_force_iso_bounded(q1, q2, DEFAULT_BRUTE_MAX)
}

/// Complete isomorphism search.
///
/// When both quandles come from groups the identity is pinned to the
/// identity first; this loses nothing because left translations act
/// transitively by automorphisms.
pub fn brute_force_iso_bounded(q1: &Quandle, q2: &Quandle, max_size: usize) -> Result<IsoVerdict> {
    let n = q1.size().max(q2.size());
    if n > max_size {
        return Err(Error::capacity("quandle size for brute-force search", n, max_size));
    }
    if q1.size() != q2.size() {
        return Ok(IsoVerdict::not_isomorphic(Method::BruteForce).with_note("sizes differ"));
    }
    let mut pair_ids = HashMap::new();
    let mut color_ids = HashMap::new();
    let a = build_side(q1, &mut pair_ids, &mut color_ids);
    let b = build_side(q2, &mut pair_ids, &mut color_ids);
    let mut ca = a.color.clone();
    let mut cb = b.color.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(IsoVerdict::not_isomorphic(Method::BruteForce)
            .with_note("point invariants differ"));
    }
    let mut search = Search {
        n: q1.size(),
        a,
        b,
        f: vec![UNSET; n],
        finv: vec![UNSET; n],
        trail: Vec::new(),
        work: Vec::new(),
    };
    let pinned = q1.provenance().is_some() && q2.provenance().is_some();
    let found = if pinned {
        search.assign(0, 0) && search.run()
    } else {
        search.run()
    };
    Ok(if found {
        IsoVerdict::isomorphic(Method::BruteForce, Some(search.f))
    } else {
        IsoVerdict::not_isomorphic(Method::BruteForce).with_note("search exhausted")
    })
}

// ---------------------------------------------------------------------------
// Displacement criterion

fn both_conditions(a: &AlexanderQuandle) -> bool {
    a.p1() && a.p2_holds()
}

/// Decides `Q ≅ Q'` through isomorphisms `h: P → P'`, when `P²` is normal
/// in `G` and `P² = {s_p(e) : p ∈ P}` hold on both sides; otherwise undecided.
///
/// The isomorphism exists iff `|G| = |G'|`, `|Fix ψ| = |Fix ψ'|`, and some
/// `h` satisfies `h∘ψ|_P = ψ'|_{P'}∘h` and `h({s_a(e)}) ⊆ {s'_{a'}(e')}`.
/// A witness is assembled from `h` and verified.
pub fn criterion_iso(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<IsoVerdict> {
    let m = Method::DisplacementCriterion;
    if !both_conditions(a) || !both_conditions(b) {
        return Ok(IsoVerdict::undecided(
            m,
            "requires P^2 normal in G and P^2 = {s_p(e) : p in P} on both sides",
        ));
    }
    if a.order() != b.order() {
        return Ok(IsoVerdict::not_isomorphic(m).with_note("group orders differ"));
    }
    if a.fix.len() != b.fix.len() {
        return Ok(IsoVerdict::not_isomorphic(m).with_note("fixed subgroups differ in size"));
    }
    let sa = a.identity_orbit_image();
    let sb = b.identity_orbit_image();
    match find_compatible_p_iso(a, b, Some((&sa, &sb)))? {
        Some(h) => {
            let f = construct_witness(a, b, &h)?;
            Ok(IsoVerdict::isomorphic(m, Some(f)))
        }
        None => Ok(IsoVerdict::not_isomorphic(m)
            .with_note("no isomorphism of P intertwines psi and preserves displacements")),
    }
}

/// First isomorphism `h: P → P'` (as a map on parent indices, `UNSET` outside
/// `P`) intertwining `ψ` and, if given, mapping `sets.0 ∩ P` into `sets.1`.
fn find_compatible_p_iso(
    a: &AlexanderQuandle,
    b: &AlexanderQuandle,
    sets: Option<(&Subgroup, &Subgroup)>,
) -> Result<Option<Vec<usize>>> {
    let (pa, ea, psi_a) = a.p_group()?;
    let (pb, eb, psi_b) = b.p_group()?;
    if pa.order() != pb.order() {
        return Ok(None);
    }
    let found = for_each_isomorphism(&pa, &pb, |h| {
        if h.compose(&psi_a) != psi_b.compose(h) {
            return ControlFlow::Continue(());
        }
        if let Some((sa, sb)) = sets {
            let ok = (0..pa.order()).all(|i| !sa.contains(ea[i]) || sb.contains(eb[h.apply(i)]));
            if !ok {
                return ControlFlow::Continue(());
            }
        }
        ControlFlow::Break(h.clone())
    });
    Ok(found.map(|h| {
        let mut full = vec![UNSET; a.order()];
        for i in 0..pa.order() {
            full[ea[i]] = eb[h.apply(i)];
        }
        full
    }))
}

/// Builds the quandle isomorphism determined by a compatible `h: P → P'`.
///
/// Cosets `aP` are sent to cosets of `P'` so that `s_a(e)P²` and
/// `h(s_a(e))P'²` correspond, representatives are then shifted inside their
/// `P'`-coset until `s'_{k(a)}(e') = h(s_a(e))`, and finally
/// `f(x) = h(x·a_x⁻¹)·k(a_x)` where `a_x` represents `xP`.
pub fn construct_witness(a: &AlexanderQuandle, b: &AlexanderQuandle, h: &[usize]) -> Result<Vec<usize>> {
    let (g, g2) = (&*a.group, &*b.group);
    let n = g.order();
    let disp_a = |x: usize| g.mul(x, g.inv(a.psi.apply(x)));
    let disp_b = |x: usize| g2.mul(x, g2.inv(b.psi.apply(x)));
    let coset_min = |grp: &crate::group::FiniteGroup, sub: &Subgroup, x: usize| {
        sub.members().iter().map(|&p| grp.mul(x, p)).min().expect("nonempty")
    };
    let reps_a: Vec<usize> = (0..n).filter(|&x| coset_min(g, &a.p, x) == x).collect();
    let reps_b: Vec<usize> = (0..n).filter(|&x| coset_min(g2, &b.p, x) == x).collect();
    if reps_a.len() != reps_b.len() {
        return Err(Error::Internal("P and P' have different index".into()));
    }
    let pi_a = |x: usize| coset_min(g, &a.p2, disp_a(x));
    let pi_b = |x: usize| coset_min(g2, &b.p2, disp_b(x));
    let h_tilde = |s: usize| coset_min(g2, &b.p2, h[s]);

    let mut fibers_b: HashMap<usize, Vec<usize>> = HashMap::new();
    for &r in &reps_b {
        fibers_b.entry(pi_b(r)).or_default().push(r);
    }
    let mut fibers_a: Vec<(usize, Vec<usize>)> = Vec::new();
    for &r in &reps_a {
        let c = pi_a(r);
        match fibers_a.iter_mut().find(|(k, _)| *k == c) {
            Some((_, v)) => v.push(r),
            None => fibers_a.push((c, vec![r])),
        }
    }
    let mut k = vec![UNSET; n];
    for (c, fiber) in &fibers_a {
        let target = fibers_b
            .get(&h_tilde(*c))
            .ok_or_else(|| Error::Internal("displacement coset has no counterpart".into()))?;
        if target.len() != fiber.len() {
            return Err(Error::Internal("matching fibers differ in size".into()));
        }
        for (&r, &t) in fiber.iter().zip(target) {
            let want = h[disp_a(r)];
            let shifted = b
                .p
                .members()
                .iter()
                .map(|&p| g2.mul(t, p))
                .find(|&y| disp_b(y) == want)
                .ok_or_else(|| Error::Internal("no representative realizes the displacement".into()))?;
            k[r] = shifted;
        }
    }
    let rep_of: Vec<usize> = (0..n).map(|x| coset_min(g, &a.p, x)).collect();
    let f: Vec<usize> = (0..n)
        .map(|x| {
            let r = rep_of[x];
            g2.mul(h[g.mul(x, g.inv(r))], k[r])
        })
        .collect();
    // Left translations are quandle automorphisms; use one to fix e.
    let shift = g2.inv(f[0]);
    let f: Vec<usize> = f.into_iter().map(|y| g2.mul(shift, y)).collect();
    if !a.quandle.is_isomorphism_to(&b.quandle, &f) {
        return Err(Error::Internal("assembled map is not a quandle isomorphism".into()));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Specialized deciders

fn automorphisms_for(a: &AlexanderQuandle) -> Result<std::sync::Arc<AutomorphismGroup>> {
    match &a.spec {
        Some(spec) => catalog::entry(spec)?.automorphisms(),
        None => Ok(std::sync::Arc::new(AutomorphismGroup::new(&a.group)?)),
    }
}

fn same_group(a: &AlexanderQuandle, b: &AlexanderQuandle) -> bool {
    match (&a.spec, &b.spec) {
        (Some(x), Some(y)) => x == y,
        _ => a.group == b.group,
    }
}

/// For simple `G`: isomorphic iff `ψ` and `ψ'` are conjugate in `Aut(G)`; the
/// conjugating automorphism is the witness.
pub fn simple_group_decider(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<IsoVerdict> {
    if !same_group(a, b) {
        return Err(Error::Contract("both quandles must live on the same group".into()));
    }
    if !a.group.is_simple() {
        return Err(Error::Contract(format!("{} is not simple", a.group.name())));
    }
    let aut = automorphisms_for(a)?;
    Ok(match aut.conjugator(&a.psi, &b.psi)? {
        Some(tau) => IsoVerdict::isomorphic(Method::SimpleGroupConjugacy, Some(tau.images)),
        None => IsoVerdict::not_isomorphic(Method::SimpleGroupConjugacy),
    })
}

/// For abelian groups: isomorphic iff `|G| = |G'|` and some isomorphism of the
/// images of `id - ψ` intertwines the restrictions of `ψ` and `ψ'`.
pub fn abelian_decider(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<IsoVerdict> {
    if !a.group.is_abelian() || !b.group.is_abelian() {
        return Err(Error::Contract("both groups must be abelian".into()));
    }
    let m = Method::AbelianNelson;
    if a.order() != b.order() {
        return Ok(IsoVerdict::not_isomorphic(m).with_note("group orders differ"));
    }
    // For abelian G the image of id - ψ is exactly P.
    match find_compatible_p_iso(a, b, None)? {
        Some(h) => Ok(IsoVerdict::isomorphic(m, Some(construct_witness(a, b, &h)?))),
        None => Ok(IsoVerdict::not_isomorphic(m)),
    }
}

fn dihedral_view(a: &AlexanderQuandle) -> Option<DihedralAut> {
    match a.spec {
        Some(GroupSpec::Dihedral(n)) if n >= 3 => DihedralAut::from_images(n, &a.psi.images).ok(),
        _ => None,
    }
}

fn cyclic_view(a: &AlexanderQuandle) -> Option<(usize, usize)> {
    match a.spec {
        Some(GroupSpec::Cyclic(n)) if n >= 2 => Some((n, a.psi.apply(1))),
        _ => None,
    }
}

/// Dihedral closed form; also covers `C_{2n}` against `D_n` through the
/// realization of cyclic quandles inside dihedral groups.
pub fn dihedral_decider(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<Option<IsoVerdict>> {
    let lift = |x: &AlexanderQuandle, n: usize| -> Result<Option<DihedralAut>> {
        if let Some(d) = dihedral_view(x) {
            return Ok((d.n == n).then_some(d));
        }
        match cyclic_view(x) {
            Some((m, unit)) if m == 2 * n => dihedral::cyclic_to_dihedral(n, unit).map(Some),
            _ => Ok(None),
        }
    };
    let n = match (dihedral_view(a), dihedral_view(b)) {
        (Some(d), _) | (None, Some(d)) => d.n,
        _ => return Ok(None),
    };
    let (Some(x), Some(y)) = (lift(a, n)?, lift(b, n)?) else {
        return Ok(None);
    };
    Ok(Some(if dihedral::dihedral_iso_decider(&x, &y)? {
        IsoVerdict::isomorphic(Method::DihedralFormula, None)
    } else {
        IsoVerdict::not_isomorphic(Method::DihedralFormula)
    }))
}

pub fn cyclic_decider(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<Option<IsoVerdict>> {
    match (cyclic_view(a), cyclic_view(b)) {
        (Some((n, x)), Some((m, y))) if n == m => Ok(Some(if dihedral::cyclic_iso_decider(n, x, y)? {
            IsoVerdict::isomorphic(Method::CyclicFormula, None)
        } else {
            IsoVerdict::not_isomorphic(Method::CyclicFormula)
        })),
        _ => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Dispatch

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Also run the brute-force search and require agreement.
    pub cross_check: bool,
    pub brute_max: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            cross_check: false,
            brute_max: DEFAULT_BRUTE_MAX,
        }
    }
}

pub fn decide(a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<IsoVerdict> {
    decide_with(a, b, &DecideOptions::default())
}

/// Profile separation, then every applicable specialized decider and the
/// displacement criterion, then brute force if nothing applied. All methods
/// that reach a verdict must agree.
pub fn decide_with(a: &AlexanderQuandle, b: &AlexanderQuandle, opts: &DecideOptions) -> Result<IsoVerdict> {
    if a.order() != b.order() {
        return Ok(IsoVerdict::not_isomorphic(Method::InvariantSeparation).with_separator("group_order"));
    }
    let (pa, pb) = (a.profile()?, b.profile()?);
    if let Some(field) = pa.separator(pb) {
        return Ok(IsoVerdict::not_isomorphic(Method::InvariantSeparation).with_separator(field));
    }

    let mut verdicts: Vec<IsoVerdict> = Vec::new();
    if same_group(a, b) && a.group.is_simple() {
        verdicts.push(simple_group_decider(a, b)?);
    }
    if a.group.is_abelian() && b.group.is_abelian() {
        verdicts.push(abelian_decider(a, b)?);
    }
    verdicts.extend(dihedral_decider(a, b)?);
    verdicts.extend(cyclic_decider(a, b)?);
    let crit = criterion_iso(a, b)?;
    if crit.is_decided() {
        verdicts.push(crit);
    }
    let need_brute = verdicts.is_empty() || opts.cross_check;
    if need_brute {
        match brute_force_iso_bounded(&a.quandle, &b.quandle, opts.brute_max) {
            Ok(v) => verdicts.push(v),
            Err(Error::Capacity { .. }) if verdicts.is_empty() => {
                return Ok(IsoVerdict::undecided(
                    Method::BruteForce,
                    "no specialized decider applies and the quandles exceed the brute-force bound",
                ));
            }
            Err(Error::Capacity { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let first = verdicts[0].clone();
    if let Some(other) = verdicts.iter().find(|v| v.result != first.result) {
        return Err(Error::Disagreement(format!(
            "{} says {:?} but {} says {:?} for {} vs {}",
            first.method.as_str(),
            first.result,
            other.method.as_str(),
            other.result,
            a.label(),
            b.label()
        )));
    }
    let mut out = first;
    if out.is_isomorphic() && out.witness.is_none() {
        out.witness = verdicts.iter().find_map(|v| v.witness.clone());
        if out.witness.is_none() {
            let bf = brute_force_iso_bounded(&a.quandle, &b.quandle, opts.brute_max)?;
            if !bf.is_isomorphic() {
                return Err(Error::Disagreement(format!(
                    "{} says isomorphic but brute force disagrees for {} vs {}",
                    out.method.as_str(),
                    a.label(),
                    b.label()
                )));
            }
            out.witness = bf.witness;
        }
    }
    if let Some(w) = &out.witness {
        if !a.quandle.is_isomorphism_to(&b.quandle, w) {
            return Err(Error::Internal(format!("witness from {} does not verify", out.method.as_str())));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Witness properties

/// Structural properties every isomorphism `f` with `f(e) = e'` must have.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    /// `f(P) = P'` and `f|_P` is a quandle isomorphism of the subquandles.
    pub restricts_to_p: bool,
    /// `f∘ψ = ψ'∘f`.
    pub intertwines_psi: bool,
    /// `f|_P` is a group homomorphism.
    pub p_homomorphism: bool,
    /// `f(xP) = f(x)P'` for all `x`.
    pub preserves_cosets: bool,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.restricts_to_p && self.intertwines_psi && self.p_homomorphism && self.preserves_cosets
    }
}

pub fn check_witness_properties(
    a: &AlexanderQuandle,
    b: &AlexanderQuandle,
    f: &[usize],
) -> Result<WitnessReport> {
    if !a.quandle.is_isomorphism_to(&b.quandle, f) {
        return Err(Error::Contract("map is not a quandle isomorphism".into()));
    }
    if f[0] != 0 {
        return Err(Error::Contract("witness must send e to e'".into()));
    }
    let (g, g2) = (&*a.group, &*b.group);
    let mut r = WitnessReport::default();
    let image_p = Subgroup::from_members(g2.order(), a.p.members().iter().map(|&x| f[x]).collect());
    r.restricts_to_p = image_p == b.p
        && a.p.members().iter().all(|&x| {
            a.p.members()
                .iter()
                .all(|&y| f[a.quandle.s(x, y)] == b.quandle.s(f[x], f[y]))
        });
    if !r.restricts_to_p {
        r.failures.push("f(P) != P' or f|_P is not a subquandle isomorphism".into());
    }
    r.intertwines_psi = (0..g.order()).all(|x| f[a.psi.apply(x)] == b.psi.apply(f[x]));
    if !r.intertwines_psi {
        r.failures.push("f o psi != psi' o f".into());
    }
    r.p_homomorphism = a.p.members().iter().all(|&x| {
        a.p.members().iter().all(|&y| f[g.mul(x, y)] == g2.mul(f[x], f[y]))
    });
    if !r.p_homomorphism {
        r.failures.push("f|_P is not a group homomorphism".into());
    }
    r.preserves_cosets = (0..g.order()).all(|x| {
        let lhs = Subgroup::from_members(g2.order(), a.p.members().iter().map(|&p| f[g.mul(x, p)]).collect());
        let rhs = Subgroup::from_members(g2.order(), b.p.members().iter().map(|&p| g2.mul(f[x], p)).collect());
        lhs == rhs
    });
    if !r.preserves_cosets {
        r.failures.push("f(xP) != f(x)P' for some x".into());
    }
    Ok(r)
}

/// Conjugate automorphisms give isomorphic quandles via the conjugator.
pub fn conjugation_witness(tau: &GroupMap) -> Vec<usize> {
    tau.images.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(group: &str, aut: &str) -> AlexanderQuandle {
        AlexanderQuandle::from_names(group, aut).unwrap()
    }

    #[test]
    fn self_iso_is_identity() {
        let x = q("D4", "phi:3,1");
        let v = brute_force_iso(&x.quandle, &x.quandle).unwrap();
        assert!(v.is_isomorphic());
        assert_eq!(v.witness.unwrap(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn quaternion_vs_dihedral() {
        let a = q("Q8", "psi3");
        let b = q("D4", "phi:3,1");
        let v = brute_force_iso(&a.quandle, &b.quandle).unwrap();
        assert!(v.is_isomorphic());
        let f = v.witness.unwrap();
        assert!(check_witness_properties(&a, &b, &f).unwrap().all_pass());
        let c = criterion_iso(&a, &b).unwrap();
        assert!(c.is_isomorphic());
    }

    #[test]
    fn criterion_needs_both_conditions() {
        let a = q("Q8", "psi4");
        assert_eq!(criterion_iso(&a, &a).unwrap().result, IsoResult::Undecided);
    }

    #[test]
    fn criterion_on_identical_inputs() {
        let a = q("D6", "phi:5,2");
        let v = criterion_iso(&a, &a).unwrap();
        assert!(v.is_isomorphic());
    }

    #[test]
    fn simple_decider() {
        let a = q("C7", "mul:2");
        let b = q("C7", "mul:3");
        assert!(!simple_group_decider(&a, &b).unwrap().is_isomorphic());
        assert!(simple_group_decider(&a, &a).unwrap().is_isomorphic());
        let d = q("D4", "id");
        assert!(matches!(simple_group_decider(&d, &d), Err(Error::Contract(_))));
    }

    #[test]
    fn abelian_decider_cases() {
        assert!(abelian_decider(&q("C9", "mul:4"), &q("C9", "mul:7")).unwrap().is_isomorphic());
        let m5 = q("C2xC2xC2", "mat:0,0,1;1,0,0;0,1,1");
        let m6 = q("C2xC2xC2", "mat:0,0,1;1,0,1;0,1,0");
        assert!(!abelian_decider(&m5, &m6).unwrap().is_isomorphic());
        assert!(matches!(abelian_decider(&q("Q8", "id"), &m5), Err(Error::Contract(_))));
    }

    #[test]
    fn verdict_json() {
        let v = IsoVerdict::not_isomorphic(Method::InvariantSeparation).with_separator("fix_size");
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"result":"not-isomorphic","method":"invariant-separation","separator":"fix_size"}"#
        );
    }
}
