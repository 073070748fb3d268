mod common;

use gaq_core::catalog::{self, GroupSpec};
use gaq_core::invariants::{check_p1, check_p2, compute_p, compute_p2};
use gaq_core::morphism::AutomorphismGroup;
use gaq_core::quandle::{self, check_axioms, inner_group, Quandle, Violation};
use gaq_core::{AlexanderQuandle, Error, GroupMap};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn spec(name: &str) -> GroupSpec {
    name.parse().unwrap()
}

fn orbit_of_zero(q: &Quandle) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([0]);
    let mut stack = vec![0];
    while let Some(y) = stack.pop() {
        for x in 0..q.size() {
            for z in [q.s(x, y), q.s_inv(x, y)] {
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
    }
    seen
}

/// Takasaki quandle on Z/n: s_x(y) = 2x - y.
fn takasaki(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| (2 * x + n - y) % n).collect()).collect()
}

#[test]
fn raw_tables_are_checked() {
    assert!(check_axioms(&takasaki(5)).is_empty());
    let q = Quandle::from_rows(&takasaki(5), None).unwrap();
    assert!(quandle::is_connected(&q));
    assert_eq!(quandle::quandle_order(&q).unwrap(), 2);

    let mut broken = takasaki(3);
    broken[1][1] = 0;
    broken[1][0] = 1;
    let v = check_axioms(&broken);
    assert!(v.contains(&Violation::Idempotence { x: 1 }));
    assert!(matches!(Quandle::from_rows(&broken, None), Err(Error::Structural(_))));

    let not_bijective = vec![vec![0, 0], vec![1, 1]];
    assert!(check_axioms(&not_bijective).contains(&Violation::Bijectivity { x: 0 }));
    let out_of_range = vec![vec![0, 5], vec![0, 1]];
    assert!(matches!(check_axioms(&out_of_range)[0], Violation::OutOfRange { x: 0, y: 1, value: 5 }));
    let nd = vec![vec![0, 2, 1], vec![0, 1, 2], vec![1, 0, 2]];
    assert!(check_axioms(&nd).iter().any(|v| matches!(v, Violation::Distributivity { .. })));
}

#[test]
fn quandle_json_round_trip() {
    let q = AlexanderQuandle::from_names("Q8", "psi4").unwrap().quandle;
    let back = Quandle::from_json(&q.to_json()).unwrap();
    assert_eq!(back.rows(), q.rows());
    assert_eq!(back.provenance(), q.provenance());
    assert!(Quandle::from_json(r#"{"size":2,"sym":[[1,0],[0,1]],"provenance":null}"#).is_err());
}

#[test]
fn s3_squared_swap_breaks_only_the_first_property() {
    let g = catalog::build(&spec("S3xS3")).unwrap();
    let psi = catalog::named_automorphism(&spec("S3xS3"), "swap").unwrap();
    assert!(!check_p1(&g, &psi).unwrap());
    assert!(check_p2(&g, &psi).unwrap());
}

#[test]
fn nontrivial_maps_of_simple_groups_are_connected() {
    for p in [2, 3, 5, 7, 11, 13] {
        let s = spec(&format!("C{p}"));
        let g = catalog::build(&s).unwrap();
        for a in 2..p {
            let psi = catalog::named_automorphism(&s, &format!("mul:{a}")).unwrap();
            assert_eq!(compute_p(&g, &psi).unwrap().len(), p);
        }
    }
    let a5 = catalog::build(&spec("A5")).unwrap();
    for x in [1, 7, 30] {
        let psi = GroupMap::inner(&a5, x);
        if !psi.is_identity() {
            let q = AlexanderQuandle::new(a5.clone(), psi, None).unwrap();
            assert_eq!(q.p.len(), 60);
            assert!(quandle::is_connected(&q.quandle));
        }
    }
}

#[test]
fn sl23_inner_by_a() {
    let q = AlexanderQuandle::from_names("SL23", "inner:A").unwrap();
    assert_eq!(q.p.len(), 8);
    let (pg, _, _) = q.p_group().unwrap();
    let q8 = catalog::build(&spec("Q8")).unwrap();
    assert!(gaq_core::morphism::groups_isomorphic(&pg, &q8).is_some());
}

#[test]
fn subquandles() {
    let q = AlexanderQuandle::from_names("D4", "phi:3,1").unwrap();
    let sub = quandle::subquandle(&q.quandle, q.p.members()).unwrap();
    assert_eq!(sub.size(), q.p.len());
    assert!(quandle::subquandle(&q.quandle, &[1, 4]).is_err());
}

fn small_pair() -> impl Strategy<Value = (GroupSpec, usize)> {
    proptest::sample::select(common::specs_up_to(12)).prop_flat_map(|s| (Just(s), any::<usize>()))
}

fn build_pair(s: &GroupSpec, k: usize) -> AlexanderQuandle {
    let g = catalog::build(s).unwrap();
    let aut = AutomorphismGroup::new(&g).unwrap();
    let psi = aut.elements()[k % aut.len()].clone();
    AlexanderQuandle::new(g, psi, Some(s.clone())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn alexander_tables_are_quandles((s, k) in small_pair()) {
        let a = build_pair(&s, k);
        let q = &a.quandle;
        let n = q.size();
        for x in 0..n {
            prop_assert_eq!(q.s(x, x), x);
            for y in 0..n {
                prop_assert_eq!(q.s_inv(x, q.s(x, y)), y);
                for z in 0..n {
                    prop_assert_eq!(q.s(x, q.s(y, z)), q.s(q.s(x, y), q.s(x, z)));
                }
            }
        }
    }

    #[test]
    fn left_translations_are_automorphisms((s, k) in small_pair()) {
        let a = build_pair(&s, k);
        let g = &a.group;
        let n = g.order();
        let inn = inner_group(&a.quandle).unwrap();
        for t in 0..n {
            let lt: Vec<usize> = (0..n).map(|y| g.mul(t, y)).collect();
            prop_assert!(a.quandle.is_isomorphism_to(&a.quandle, &lt));
            prop_assert_eq!(inn.contains(&lt), a.p.contains(t));
        }
    }

    #[test]
    fn displacement_group_is_the_orbit((s, k) in small_pair()) {
        let a = build_pair(&s, k);
        let g = &a.group;
        let orbit: Vec<usize> = orbit_of_zero(&a.quandle).into_iter().collect();
        prop_assert_eq!(a.p.members(), &orbit[..]);
        let gens: Vec<usize> = (0..g.order()).map(|x| g.mul(x, g.inv(a.psi.apply(x)))).collect();
        let generated = g.generated_subgroup(&gens);
        prop_assert_eq!(generated.members(), &orbit[..]);
        prop_assert!(g.is_normal(&a.p).unwrap());
        let p2 = compute_p2(g, &a.psi).unwrap();
        prop_assert!(p2.members().iter().all(|&x| a.p.contains(x)));
        prop_assert_eq!(quandle::is_connected(&a.quandle), a.p.len() == g.order());
    }

    #[test]
    fn symmetry_order_is_the_automorphism_order((s, k) in small_pair()) {
        let a = build_pair(&s, k);
        let order = quandle::quandle_order(&a.quandle).unwrap();
        prop_assert_eq!(order, a.psi.order());
        prop_assert_eq!(a.psi.fixed_subgroup().len(), a.fix.len());
        let fixed = (0..a.group.order()).filter(|&x| a.psi.apply(x) == x).count();
        prop_assert_eq!(fixed, a.fix.len());
    }
}
