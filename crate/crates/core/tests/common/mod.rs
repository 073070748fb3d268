#![allow(dead_code)]

use gaq_core::catalog::{self, GroupSpec};

/// Every catalog group of order at most `n`.
pub fn specs_up_to(n: usize) -> Vec<GroupSpec> {
    (1..=n).flat_map(|k| catalog::groups_of_order(k).unwrap()).collect()
}

/// All bijections of `0..n` fixing 0, in lexicographic order.
pub fn pointed_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    catalog::permutations(n).into_iter().filter(|p| p[0] == 0).collect()
}

/// Naive quandle isomorphism test: every bijection, optionally pinned at 0.
pub fn naive_quandle_iso(a: &[Vec<usize>], b: &[Vec<usize>], pin: bool) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let perms = if pin { pointed_permutations(n) } else { catalog::permutations(n) };
    perms.iter().any(|f| {
        (0..n).all(|x| (0..n).all(|y| f[a[x][y]] == b[f[x]][f[y]]))
    })
}
