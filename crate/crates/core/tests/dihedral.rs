mod common;

use gaq_core::dihedral::{self, DihedralAut};
use gaq_core::iso::brute_force_iso;
use gaq_core::AlexanderQuandle;
use gaq_core::{catalog, Error};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// D_n from scratch: index e*n + i stands for tau^e sigma^i.
struct Dn {
    n: usize,
}

impl Dn {
    fn mul(&self, x: usize, y: usize) -> usize {
        let n = self.n;
        let (e, i) = (x / n, x % n);
        let (f, j) = (y / n, y % n);
        let i = if f == 1 { (n - i) % n } else { i };
        ((e + f) % 2) * n + (i + j) % n
    }
    fn inv(&self, x: usize) -> usize {
        (0..2 * self.n).find(|&y| self.mul(x, y) == 0).unwrap()
    }
    fn phi(&self, a: usize, b: usize, x: usize) -> usize {
        let n = self.n;
        let (e, i) = (x / n, x % n);
        e * n + (a * i + e * b) % n
    }
    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([0]);
        loop {
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.mul(x, g))
                .chain(set.iter().copied())
                .collect();
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }
    fn displacement(&self, a: usize, b: usize, among: &BTreeSet<usize>) -> BTreeSet<usize> {
        let gens: Vec<usize> = among.iter().map(|&x| self.mul(x, self.inv(self.phi(a, b, x)))).collect();
        self.closure(&gens)
    }
}

fn units(n: usize) -> Vec<usize> {
    (0..n).filter(|&a| gcd(a, n) == 1).collect()
}

fn rotations(n: usize, step: usize) -> BTreeSet<usize> {
    (0..n).step_by(step.max(1)).collect()
}

#[test]
fn formulas_match_enumeration() {
    for n in 3..=12 {
        let d = Dn { n };
        let all: BTreeSet<usize> = (0..2 * n).collect();
        for a in units(n) {
            for b in 0..n {
                let x = DihedralAut::new(n, a, b).unwrap();
                let fix = (0..2 * n).filter(|&y| d.phi(a, b, y) == y).count();
                assert_eq!(dihedral::fix_size_dn(&x), fix, "{x}");
                let p = d.displacement(a, b, &all);
                let p2 = d.displacement(a, b, &p);
                let (dd, g2) = dihedral::p_subgroups_dn(&x);
                assert_eq!(rotations(n, dd), p, "{x}");
                assert_eq!(rotations(n, dd * g2), p2, "{x}");
            }
        }
    }
}

#[test]
fn catalog_table_uses_the_same_labels() {
    for n in 3..=8 {
        let g = catalog::build(&format!("D{n}").parse().unwrap()).unwrap();
        let d = Dn { n };
        for x in 0..2 * n {
            for y in 0..2 * n {
                assert_eq!(g.mul(x, y), d.mul(x, y));
            }
        }
    }
}

/// Conjugacy in Aff(C_n) by exhaustive search over conjugators.
fn conjugate_naive(n: usize, x: (usize, usize), y: (usize, usize)) -> bool {
    let compose = |p: (usize, usize), q: (usize, usize)| (p.0 * q.0 % n, (p.0 * q.1 + p.1) % n);
    units(n).into_iter().any(|u| {
        (0..n).any(|v| compose((u, v), x) == compose(y, (u, v)))
    })
}

#[test]
fn conjugacy_matches_exhaustive_search() {
    for n in 3..=12 {
        let reps = dihedral::conjugacy_reps_aut_dn(n);
        for a in units(n) {
            for b in 0..n {
                let x = DihedralAut::new(n, a, b).unwrap();
                let hits: Vec<_> = reps.iter().filter(|r| conjugate_naive(n, (a, b), (r.a, r.b))).collect();
                assert_eq!(hits.len(), 1, "{x}");
                for c in units(n) {
                    for e in 0..n {
                        let y = DihedralAut::new(n, c, e).unwrap();
                        assert_eq!(
                            dihedral::are_conjugate_dn(&x, &y).unwrap(),
                            conjugate_naive(n, (a, b), (c, e))
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn reps_of_d6() {
    let reps: Vec<(usize, usize)> = dihedral::conjugacy_reps_aut_dn(6).into_iter().map(|x| (x.a, x.b)).collect();
    assert_eq!(reps, vec![(1, 1), (1, 2), (1, 3), (1, 0), (5, 1), (5, 2)]);
}

fn dn_quandle(n: usize, a: usize, b: usize) -> AlexanderQuandle {
    let spec: catalog::GroupSpec = format!("D{n}").parse().unwrap();
    let g = catalog::build(&spec).unwrap();
    AlexanderQuandle::new(g, DihedralAut::new(n, a, b).unwrap().images(), Some(spec)).unwrap()
}

#[test]
fn decider_matches_naive_search_on_small_orders() {
    for n in 3..=4 {
        let qs: Vec<_> = units(n)
            .into_iter()
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (DihedralAut::new(n, a, b).unwrap(), dn_quandle(n, a, b)))
            .collect();
        for (x, qx) in &qs {
            for (y, qy) in &qs {
                let naive = common::naive_quandle_iso(&qx.quandle.rows(), &qy.quandle.rows(), true);
                assert_eq!(dihedral::dihedral_iso_decider(x, y).unwrap(), naive, "{x} {y}");
            }
        }
    }
}

#[test]
fn decider_matches_brute_force() {
    for n in 5..=8 {
        let qs: Vec<_> = units(n)
            .into_iter()
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (DihedralAut::new(n, a, b).unwrap(), dn_quandle(n, a, b)))
            .collect();
        for (x, qx) in &qs {
            for (y, qy) in &qs {
                let brute = brute_force_iso(&qx.quandle, &qy.quandle).unwrap().is_isomorphic();
                assert_eq!(dihedral::dihedral_iso_decider(x, y).unwrap(), brute, "{x} {y}");
            }
        }
    }
}

#[test]
fn cyclic_realization_against_brute_force() {
    for n in 2..=8 {
        let big: catalog::GroupSpec = format!("C{}", 2 * n).parse().unwrap();
        for a in (1..2 * n).filter(|&a| gcd(a, 2 * n) == 1) {
            let x = dihedral::cyclic_to_dihedral(n, a).unwrap();
            let qc = AlexanderQuandle::from_spec(&big, &format!("mul:{a}")).unwrap();
            let spec: catalog::GroupSpec = format!("D{n}").parse().unwrap();
            let g = catalog::build(&spec).unwrap();
            let qd = AlexanderQuandle::new(g, x.images(), Some(spec)).unwrap();
            assert!(brute_force_iso(&qc.quandle, &qd.quandle).unwrap().is_isomorphic(), "C{} x{a}", 2 * n);
        }
    }
    assert!(matches!(dihedral::cyclic_to_dihedral(4, 2), Err(Error::Contract(_))));
}

#[test]
fn cyclic_decider_against_brute_force() {
    for n in 2..=12 {
        let spec: catalog::GroupSpec = format!("C{n}").parse().unwrap();
        let us = units(n);
        for &a in &us {
            for &b in &us {
                let qa = AlexanderQuandle::from_spec(&spec, &format!("mul:{a}")).unwrap();
                let qb = AlexanderQuandle::from_spec(&spec, &format!("mul:{b}")).unwrap();
                let brute = brute_force_iso(&qa.quandle, &qb.quandle).unwrap().is_isomorphic();
                assert_eq!(dihedral::cyclic_iso_decider(n, a, b).unwrap(), brute, "C{n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(matches!(DihedralAut::new(6, 2, 0), Err(Error::Contract(_))));
    assert!(matches!(DihedralAut::new(0, 1, 0), Err(Error::Input(_))));
    let x = DihedralAut::new(4, 1, 0).unwrap();
    let y = DihedralAut::new(5, 1, 0).unwrap();
    assert!(dihedral::are_conjugate_dn(&x, &y).is_err());
}

proptest! {
    #[test]
    fn congruence_solutions_are_exactly_the_roots(c in -40i64..40, d in -40i64..40, n in 1u64..40) {
        let roots: Vec<u64> = (0..n).filter(|&z| (c * z as i64 - d).rem_euclid(n as i64) == 0).collect();
        match dihedral::solve_congruence(c, d, n) {
            None => prop_assert!(roots.is_empty()),
            Some(s) => prop_assert_eq!(s.solutions(), roots),
        }
    }

    #[test]
    fn unit_multiplier_properties(c in -30i64..30, m in 1u64..30, n in 1u64..30) {
        let p = dihedral::unit_multiplier_to_gcd(c, m, n).unwrap();
        prop_assert_eq!(gcd(n as usize, p as usize), 1);
        let target = gcd(m as usize, c.unsigned_abs() as usize) as u64 % m;
        prop_assert_eq!((p as i64 * c).rem_euclid(m as i64) as u64, target);
    }

    #[test]
    fn images_compose_like_affine_maps(n in 3usize..15, i in 0usize..100, j in 0usize..100, b1 in 0usize..15, b2 in 0usize..15) {
        let us = units(n);
        let x = DihedralAut::new(n, us[i % us.len()], b1).unwrap();
        let y = DihedralAut::new(n, us[j % us.len()], b2).unwrap();
        prop_assert_eq!(x.compose(&y).images(), x.images().compose(&y.images()));
    }
}
