mod common;

use gaq_core::catalog::{self, GroupSpec};
use gaq_core::group::{FiniteGroup, GroupMap, Subgroup};
use gaq_core::morphism::{automorphism_conjugacy_classes, groups_isomorphic, AutomorphismGroup};
use gaq_core::Error;
use proptest::prelude::*;

fn spec(name: &str) -> GroupSpec {
    name.parse().unwrap()
}

#[test]
fn textbook_counts_of_isomorphism_types() {
    let counts: Vec<usize> = (1..=16).map(|n| catalog::groups_of_order(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
    assert!(matches!(catalog::groups_of_order(17), Err(Error::Capacity { .. })));
}

#[test]
fn catalog_types_are_pairwise_distinct() {
    for n in 1..=16 {
        let groups: Vec<_> = catalog::groups_of_order(n)
            .unwrap()
            .iter()
            .map(|s| catalog::build(s).unwrap())
            .collect();
        for i in 0..groups.len() {
            assert!(groups_isomorphic(&groups[i], &groups[i]).is_some());
            for j in i + 1..groups.len() {
                assert!(
                    groups_isomorphic(&groups[i], &groups[j]).is_none(),
                    "{} ~ {}",
                    groups[i].name(),
                    groups[j].name()
                );
            }
        }
    }
}

#[test]
fn hand_computed_products() {
    // D4 as e, s, s^2, s^3, t, ts, ts^2, ts^3 with t^2 = s^4 = e and st = ts^-1.
    let d4 = catalog::build(&spec("D4")).unwrap();
    assert_eq!(d4.multiply(1, 4).unwrap(), 7);
    assert_eq!(d4.multiply(4, 1).unwrap(), 5);
    let c4 = catalog::build(&spec("C4")).unwrap();
    assert_eq!(c4.multiply(1, 3).unwrap(), 0);
    assert!(matches!(c4.multiply(4, 0), Err(Error::Structural(_))));
    let c6 = catalog::build(&spec("C6")).unwrap();
    assert_eq!(c6.inverse(2).unwrap(), 4);
    let c12 = catalog::build(&spec("C12")).unwrap();
    assert_eq!(c12.generated_subgroup(&[8]).members(), &[0, 4, 8]);
    assert_eq!(c12.generated_subgroup(&[]).members(), &[0]);
    let c15 = catalog::build(&spec("C15")).unwrap();
    assert_eq!(c15.element_order(3), 5);
}

#[test]
fn dihedral_six_contains_s3() {
    // sigma^2 = 2 and tau = 6 generate a copy of S3.
    let d6 = catalog::build(&spec("D6")).unwrap();
    let h = d6.generated_subgroup(&[2, 6]);
    assert_eq!(h.len(), 6);
    let s3 = catalog::build(&spec("S3")).unwrap();
    let (hg, _) = gaq_core::group::subgroup_as_group(&d6, &h).unwrap();
    assert!(groups_isomorphic(&hg, &s3).is_some());
}

#[test]
fn normality_and_centers() {
    let s3 = catalog::build(&spec("S3")).unwrap();
    let transposition = (0..6).find(|&x| x != 0 && s3.element_order(x) == 2).unwrap();
    let h = s3.generated_subgroup(&[transposition]);
    assert!(!s3.is_normal(&h).unwrap());
    assert!(s3.is_normal(&Subgroup::whole(6)).unwrap());
    let q8 = catalog::build(&spec("Q8")).unwrap();
    assert_eq!(q8.center().len(), 2);
    let a4 = catalog::build(&spec("A4")).unwrap();
    assert_eq!(a4.center().len(), 1);
    let c10 = catalog::build(&spec("C10")).unwrap();
    assert_eq!(c10.center().len(), 10);
}

#[test]
fn sl23_generator_has_order_four() {
    let sl = catalog::build(&spec("SL23")).unwrap();
    let elems = catalog::sl23_elements();
    // A = [[0, -1], [1, 0]] over F3, stored row-major.
    let a = elems.iter().position(|m| *m == [0, 2, 1, 0]).unwrap();
    assert_eq!(sl.element_order(a), 4);
}

fn gl_order(n: u32, q: usize) -> usize {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

#[test]
fn automorphism_counts() {
    let count = |name: &str| AutomorphismGroup::new(&catalog::build(&spec(name)).unwrap()).unwrap().len();
    assert_eq!(count("C15"), 8);
    assert_eq!(count("Q8"), 24);
    assert_eq!(count("C2xC2xC2"), gl_order(3, 2));
    assert_eq!(count("C3xC3"), gl_order(2, 3));
    assert_eq!(count("D4"), 8);
    assert_eq!(count("A4"), 24);
    assert_eq!(count("SL23"), 24);
}

/// Oracle: filter all bijections fixing 0 for homomorphisms.
#[test]
fn automorphisms_match_bijection_filter() {
    for s in common::specs_up_to(8) {
        let g = catalog::build(&s).unwrap();
        let naive: Vec<Vec<usize>> = common::pointed_permutations(g.order())
            .into_iter()
            .filter(|p| GroupMap::new(p.clone()).is_automorphism(&g))
            .collect();
        let mut found: Vec<Vec<usize>> = AutomorphismGroup::new(&g)
            .unwrap()
            .elements()
            .iter()
            .map(|m| m.images.clone())
            .collect();
        found.sort();
        assert_eq!(found, naive, "{s}");
    }
}

#[test]
fn automorphism_bound_is_enforced() {
    let s5 = catalog::build(&spec("S5")).unwrap();
    assert!(matches!(AutomorphismGroup::new(&s5), Err(Error::Capacity { .. })));
    assert!(AutomorphismGroup::with_bound(&s5, 120).is_ok());
}

#[test]
fn conjugacy_classes_partition_and_close() {
    for s in common::specs_up_to(12) {
        let g = catalog::build(&s).unwrap();
        let aut = AutomorphismGroup::new(&g).unwrap();
        let total: usize = aut.classes().iter().map(|c| c.size).sum();
        assert_eq!(total, aut.len());
        for class in aut.classes() {
            let members: Vec<&GroupMap> = class.members().iter().map(|&i| &aut.elements()[i]).collect();
            assert_eq!(members[0], &class.representative);
            assert!(members.iter().all(|m| m.images >= class.representative.images));
            for tau in aut.elements() {
                for m in &members {
                    let c = m.conjugate_by(tau);
                    assert!(members.contains(&&c));
                }
            }
        }
    }
}

#[test]
fn class_counts_of_named_groups() {
    let classes = |name: &str| automorphism_conjugacy_classes(&catalog::build(&spec(name)).unwrap()).unwrap();
    let d4 = classes("D4");
    assert_eq!(d4.len(), 5);
    let q8 = classes("Q8");
    assert_eq!(q8.len(), 5);
    let mut sizes: Vec<usize> = q8.iter().map(|c| c.1).collect();
    sizes.sort();
    // Cycle types of S4: 1, 6, 3, 8, 6.
    assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    assert!(classes("C12").iter().all(|c| c.1 == 1));
}

#[test]
fn named_automorphisms_have_published_orders() {
    let ord = |g: &str, a: &str| catalog::named_automorphism(&spec(g), a).unwrap().order();
    assert_eq!(ord("Q8", "psi4"), 3);
    assert_eq!(ord("C6xC2", "alpha_sigma"), 6);
    assert_eq!(ord("C4xC2", "psi_sigma"), 4);
    assert_eq!(ord("Dic3", "beta_sigma"), 6);
    let g = catalog::build(&spec("C6xC2")).unwrap();
    assert_eq!(catalog::named_automorphism(&spec("C6xC2"), "alpha_sigma").unwrap().fixed_subgroup().len(), 1);
    for x in 0..g.order() {
        assert_eq!(GroupMap::inner(&g, 0).apply(x), x);
    }
    assert!(matches!(catalog::named_automorphism(&spec("D4"), "alpha_sigma"), Err(Error::Lookup(_))));
}

#[test]
fn direct_products_commute_componentwise() {
    let p = catalog::build(&spec("S3xC4")).unwrap();
    assert_eq!(p.order(), 24);
    // (x, 0) and (0, y) commute.
    for x in 0..6 {
        for y in 0..4 {
            let a = x * 4;
            let b = y;
            assert_eq!(p.mul(a, b), p.mul(b, a));
        }
    }
}

#[test]
fn group_json_round_trip_and_rejection() {
    let g = catalog::build(&spec("Dic3")).unwrap();
    let back = FiniteGroup::from_json(&g.to_json()).unwrap();
    assert_eq!(back.rows(), g.rows());
    let bad = r#"{"name":"bad","order":2,"table":[[0,1],[1,1]]}"#;
    assert!(matches!(FiniteGroup::from_json(bad), Err(Error::Structural(_))));
}

fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    // perm sends old indices to new ones and fixes 0.
    let n = g.order();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    FiniteGroup::from_fn("relabelled", n, |a, b| perm[g.mul(inv[a], inv[b])]).unwrap()
}

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    proptest::sample::select(common::specs_up_to(12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn catalog_groups_satisfy_axioms(s in small_spec()) {
        let g = catalog::build(&s).unwrap();
        // Rebuilding from the raw table re-runs every structural check.
        prop_assert!(FiniteGroup::from_table("copy", &g.rows()).is_ok());
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            prop_assert_eq!(g.order() % g.element_order(a), 0);
        }
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms(s in small_spec()) {
        let g = catalog::build(&s).unwrap();
        for m in AutomorphismGroup::new(&g).unwrap().elements() {
            prop_assert!(m.is_bijective());
            prop_assert!(m.is_homomorphism(&g, &g));
        }
    }

    #[test]
    fn isomorphism_survives_relabelling(s in small_spec(), seed in any::<u64>()) {
        let g = catalog::build(&s).unwrap();
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (2..n).rev() {
            state ^= state << 13; state ^= state >> 7; state ^= state << 17;
            let j = 1 + (state as usize) % i;
            perm.swap(i, j);
        }
        let h = relabel(&g, &perm);
        let iso = groups_isomorphic(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().is_homomorphism(&g, &h));
        let (found, _) = catalog::identify(&h).unwrap();
        prop_assert_eq!(found, s);
    }
}
