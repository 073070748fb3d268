//! Quandles as tables of point symmetries.
//!
//! `sym[x][y] = s_x(y)`; the binary operation is the view `x * y = s_y(x)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{lcm, FiniteGroup, GroupMap, Subgroup};

/// Default bound on the size of a permutation group closure.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// Where a generalized Alexander quandle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub group: String,
    pub automorphism: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Quandle {
    size: usize,
    sym: Vec<usize>,
    inv: Vec<usize>,
    provenance: Option<Provenance>,
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle(size {})", self.size)
    }
}

/// A failed quandle axiom with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    OutOfRange { x: usize, y: usize, value: usize },
    /// `s_x(x) ≠ x`.
    Idempotence { x: usize },
    /// `s_x` is not a permutation.
    Bijectivity { x: usize },
    /// `s_x ∘ s_y ≠ s_{s_x(y)} ∘ s_x`, observed at `z`.
    Distributivity { x: usize, y: usize, z: usize },
}

/// Axiom violations of a raw table (`rows[x][y] = s_x(y)`); empty iff it is a quandle.
pub fn check_axioms(rows: &[Vec<usize>]) -> Vec<Violation> {
    let n = rows.len();
    let mut out = Vec::new();
    for (x, row) in rows.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                out.push(Violation::OutOfRange { x, y, value: v });
            }
        }
        if row.len() != n {
            out.push(Violation::Bijectivity { x });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (x, row) in rows.iter().enumerate() {
        if row[x] != x {
            out.push(Violation::Idempotence { x });
        }
        let mut seen = vec![false; n];
        if row.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
            out.push(Violation::Bijectivity { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let sxy = rows[x][y];
            if let Some(z) = (0..n).find(|&z| rows[x][rows[y][z]] != rows[sxy][rows[x][z]]) {
                out.push(Violation::Distributivity { x, y, z });
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct QuandleJson {
    size: usize,
    sym: Vec<Vec<usize>>,
    provenance: Option<Provenance>,
}

impl Quandle {
    /// Builds a quandle from `rows[x][y] = s_x(y)`, rejecting any axiom violation.
    pub fn from_rows(rows: &[Vec<usize>], provenance: Option<Provenance>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Structural("empty quandle".into()));
        }
        let violations = check_axioms(rows);
        if let Some(v) = violations.first() {
            return Err(Error::Structural(format!(
                "{} axiom violation(s), first: {v:?}",
                violations.len()
            )));
        }
        Ok(Self::from_flat_unchecked(
            rows.len(),
            rows.concat(),
            provenance,
        ))
    }

    fn from_flat_unchecked(size: usize, sym: Vec<usize>, provenance: Option<Provenance>) -> Self {
        let mut inv = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                inv[x * size + sym[x * size + y]] = y;
            }
        }
        Quandle {
            size,
            sym,
            inv,
            provenance,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `s_x(y)`.
    #[inline]
    pub fn s(&self, x: usize, y: usize) -> usize {
        self.sym[x * self.size + y]
    }

    /// `s_x⁻¹(y)`.
    #[inline]
    pub fn s_inv(&self, x: usize, y: usize) -> usize {
        self.inv[x * self.size + y]
    }

    /// `x * y = s_y(x)`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.s(y, x)
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.sym[x * self.size..(x + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Whether `f` is a quandle isomorphism `self → other`.
    pub fn is_isomorphism_to(&self, other: &Quandle, f: &[usize]) -> bool {
        f.len() == self.size
            && other.size == self.size
            && GroupMap::new(f.to_vec()).is_bijective()
            && (0..self.size)
                .all(|x| (0..self.size).all(|y| f[self.s(x, y)] == other.s(f[x], f[y])))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuandleJson = serde_json::from_str(text)?;
        if raw.sym.len() != raw.size {
            return Err(Error::Structural(format!(
                "declared size {} but table has {} rows",
                raw.size,
                raw.sym.len()
            )));
        }
        Self::from_rows(&raw.sym, raw.provenance)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuandleJson {
            size: self.size,
            sym: self.rows(),
            provenance: self.provenance.clone(),
        })
        .expect("plain data serializes")
    }
}

/// `Q(G, ψ)`: `s_x(y) = x·ψ(x⁻¹·y)`.
pub fn general_alexander(g: &FiniteGroup, psi: &GroupMap) -> Result<Quandle> {
    psi.require_automorphism(g)?;
    let n = g.order();
    let mut sym = Vec::with_capacity(n * n);
    for x in 0..n {
        let xi = g.inv(x);
        for y in 0..n {
            sym.push(g.mul(x, psi.apply(g.mul(xi, y))));
        }
    }
    Ok(Quandle::from_flat_unchecked(
        n,
        sym,
        Some(Provenance {
            group: g.name().to_string(),
            automorphism: psi.images.clone(),
        }),
    ))
}

/// A permutation group given by generators, with its closure materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>, bound: usize) -> Result<Self> {
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for gen in &generators {
                let next: Vec<usize> = elements[i].iter().map(|&v| gen[v]).collect();
                if !index.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(Error::capacity("permutation group closure", elements.len() + 1, bound));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.index.contains_key(perm)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        for e in &self.elements {
            seen[e[point]] = true;
        }
        (0..self.degree).filter(|&i| seen[i]).collect()
    }

    /// Cayley table with composition `(pq)(x) = p(q(x))`; index 0 is the identity.
    pub fn to_group(&self, name: &str) -> Result<FiniteGroup> {
        let els = &self.elements;
        FiniteGroup::from_fn(name, els.len(), |a, b| {
            let c: Vec<usize> = els[b].iter().map(|&v| els[a][v]).collect();
            self.index[&c]
        })
    }
}

/// `Inn(Q)`, generated by all point symmetries.
pub fn inner_group(q: &Quandle) -> Result<PermGroup> {
    inner_group_bounded(q, DEFAULT_CLOSURE_BOUND)
}

pub fn inner_group_bounded(q: &Quandle, bound: usize) -> Result<PermGroup> {
    let mut gens: Vec<Vec<usize>> = (0..q.size()).map(|x| q.row(x).to_vec()).collect();
    gens.sort();
    gens.dedup();
    PermGroup::new(q.size(), gens, bound)
}

fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut ord = 1;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            ord = lcm(ord, len);
        }
    }
    ord
}

/// The common order of the point symmetries.
pub fn quandle_order(q: &Quandle) -> Result<usize> {
    let orders: Vec<usize> = (0..q.size()).map(|x| perm_order(q.row(x))).collect();
    match orders.iter().position(|&o| o != orders[0]) {
        None => Ok(orders[0]),
        Some(x) => Err(Error::Contract(format!(
            "point symmetries have different orders: s_0 has order {}, s_{x} has order {}",
            orders[0], orders[x]
        ))),
    }
}

pub fn is_connected(q: &Quandle) -> bool {
    let mut seen = vec![false; q.size()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(y) = queue.pop_front() {
        for x in 0..q.size() {
            for z in [q.s(x, y), q.s_inv(x, y)] {
                if !seen[z] {
                    seen[z] = true;
                    count += 1;
                    queue.push_back(z);
                }
            }
        }
    }
    count == q.size()
}

/// The subquandle on `members`, re-indexed in sorted order.
pub fn subquandle(q: &Quandle, members: &[usize]) -> Result<Quandle> {
    let set = Subgroup::from_members(q.size(), members.to_vec());
    if set.is_empty() {
        return Err(Error::Contract("empty member set".into()));
    }
    let m = set.members();
    for &x in m {
        for &y in m {
            if !set.contains(q.s(x, y)) {
                return Err(Error::Contract(format!(
                    "member set not closed: s_{x}({y}) = {} is outside",
                    q.s(x, y)
                )));
            }
        }
    }
    let rows: Vec<Vec<usize>> = m
        .iter()
        .map(|&x| m.iter().map(|&y| set.position(q.s(x, y)).expect("closed")).collect())
        .collect();
    Quandle::from_rows(&rows, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn trivial_quandle() {
        let g = cyclic(5);
        let q = general_alexander(&g, &GroupMap::identity(5)).unwrap();
        assert!((0..5).all(|x| (0..5).all(|y| q.s(x, y) == y)));
        assert_eq!(inner_group(&q).unwrap().len(), 1);
        assert_eq!(quandle_order(&q).unwrap(), 1);
        assert!(!is_connected(&q));
    }

    #[test]
    fn takasaki_like_c4() {
        let g = cyclic(4);
        let psi = GroupMap::new(vec![0, 3, 2, 1]);
        let q = general_alexander(&g, &psi).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(q.s(x, y), (3 * y + 4 * 4 - 2 * x) % 4);
            }
        }
        assert_eq!(q.s(1, 0), 2);
        assert!(check_axioms(&q.rows()).is_empty());
    }

    #[test]
    fn idempotence_violation() {
        let mut rows = vec![vec![0, 1], vec![0, 1]];
        rows[0][0] = 1;
        rows[0][1] = 0;
        let v = check_axioms(&rows);
        assert!(v.contains(&Violation::Idempotence { x: 0 }));
    }

    #[test]
    fn latin_square_fails_distributivity() {
        // The dihedral quandle of order 5 with two entries of s_0 exchanged.
        let mut rows: Vec<Vec<usize>> =
            (0..5).map(|x| (0..5).map(|y| (2 * x + 5 - y) % 5).collect()).collect();
        assert!(check_axioms(&rows).is_empty());
        rows[0].swap(1, 2);
        let v = check_axioms(&rows);
        assert!(v.iter().any(|e| matches!(e, Violation::Distributivity { .. })));
    }

    #[test]
    fn non_homogeneous_order_is_reported() {
        // Disjoint union of a trivial point and the dihedral quandle of order 3.
        let rows = vec![
            vec![0, 1, 2, 3],
            vec![0, 1, 3, 2],
            vec![0, 3, 2, 1],
            vec![0, 2, 1, 3],
        ];
        let q = Quandle::from_rows(&rows, None).unwrap();
        assert!(matches!(quandle_order(&q), Err(Error::Contract(_))));
    }

    #[test]
    fn subquandle_closure() {
        let g = cyclic(4);
        let q = general_alexander(&g, &GroupMap::new(vec![0, 3, 2, 1])).unwrap();
        assert_eq!(subquandle(&q, &[0, 2]).unwrap().size(), 2);
        assert_eq!(subquandle(&q, &[3]).unwrap().size(), 1);
        assert!(matches!(subquandle(&q, &[0, 1]), Err(Error::Contract(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = cyclic(3);
        let q = general_alexander(&g, &GroupMap::new(vec![0, 2, 1])).unwrap();
        let back = Quandle::from_json(&q.to_json()).unwrap();
        assert_eq!(q, back);
        let bad = r#"{"size":2,"sym":[[1,0],[0,1]],"provenance":null}"#;
        assert!(Quandle::from_json(bad).is_err());
    }

    #[test]
    fn rejects_non_automorphism() {
        let g = cyclic(4);
        assert!(matches!(
            general_alexander(&g, &GroupMap::new(vec![0, 2, 0, 2])),
            Err(Error::Contract(_))
        ));
    }
}
