//! Closed forms for automorphisms of the dihedral group `D_n` of order `2n`.
//!
//! Every automorphism of `D_n` (`n ≥ 3`) is `φ_{a,b}: τ^ε σ^i ↦ τ^ε σ^{ai+εb}`
//! with `a` a unit mod `n`. With `g = gcd(n, 1-a)` and `d = gcd(n, 1-a, b)`:
//! the conjugacy class of `φ_{a,b}` is determined by `(a, d)`, the fixed
//! subgroup has `2g` elements when `d = g` and `g` otherwise, the subgroup `P`
//! is `⟨σ^d⟩`, and `P²` is `⟨σ^{d·g₂}⟩` with `g₂ = gcd(n/d, 1-a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, GroupMap};

fn gcd_i(n: u64, x: i64) -> u64 {
    gcd(n as usize, x.rem_euclid(n as i64) as usize) as u64
}

/// `φ_{a,b}` on `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralAut {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl DihedralAut {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("dihedral modulus must be positive".into()));
        }
        let (a, b) = (a % n, b % n);
        if gcd(a, n) != 1 {
            return Err(Error::Contract(format!("{a} is not a unit modulo {n}")));
        }
        Ok(DihedralAut { n, a, b })
    }

    /// Reads `φ_{a,b}` off an automorphism of the catalog `D_n` table.
    pub fn from_images(n: usize, images: &[usize]) -> Result<Self> {
        if n < 3 || images.len() != 2 * n {
            return Err(Error::Contract(format!("not an automorphism of D{n} with n >= 3")));
        }
        let a = images[1];
        let b = images[n].checked_sub(n).ok_or_else(|| {
            Error::Contract("image of the reflection is a rotation".into())
        })?;
        let x = Self::new(n, a, b)?;
        if x.images().images != images {
            return Err(Error::Contract("map is not of the form phi_{a,b}".into()));
        }
        Ok(x)
    }

    /// The map on element indices (`τ^ε σ^i` at `εn + i`).
    pub fn images(&self) -> GroupMap {
        let n = self.n;
        GroupMap::new(
            (0..2 * n)
                .map(|x| {
                    let (e, i) = (x / n, x % n);
                    e * n + (self.a * i + e * self.b) % n
                })
                .collect(),
        )
    }

    /// `g = gcd(n, 1 - a)`.
    pub fn g(&self) -> usize {
        gcd_i(self.n as u64, 1 - self.a as i64) as usize
    }

    /// `d = gcd(n, 1 - a, b)`.
    pub fn d(&self) -> usize {
        gcd(self.g(), self.b)
    }

    /// Composition in `Aff(C_n)`: `self ∘ other`.
    pub fn compose(&self, other: &DihedralAut) -> DihedralAut {
        let n = self.n;
        DihedralAut {
            n,
            a: self.a * other.a % n,
            b: (self.a * other.b + self.b) % n,
        }
    }
}

impl std::fmt::Display for DihedralAut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "phi:{},{}@{}", self.a, self.b, self.n)
    }
}

/// Solutions of `c·z ≡ d (mod n)`: `z0 + step·i` for `i < count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub z0: u64,
    pub step: u64,
    pub count: u64,
}

impl Congruence {
    pub fn solutions(&self) -> Vec<u64> {
        (0..self.count).map(|i| self.z0 + self.step * i).collect()
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn solve_congruence(c: i64, d: i64, n: u64) -> Option<Congruence> {
    if n == 0 {
        return None;
    }
    let ni = n as i64;
    let (c, d) = (c.rem_euclid(ni), d.rem_euclid(ni));
    let g = gcd_i(n, c) as i64;
    if d % g != 0 {
        return None;
    }
    let m = ni / g;
    let (_, x, _) = ext_gcd(c / g, m);
    let z0 = ((d / g) * x).rem_euclid(m);
    Some(Congruence {
        z0: z0 as u64,
        step: m as u64,
        count: g as u64,
    })
}

/// Some `p` with `gcd(n, p) = 1` and `p·c ≡ gcd(m, c) (mod m)`.
pub fn unit_multiplier_to_gcd(c: i64, m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::Input("moduli must be positive".into()));
    }
    let target = gcd_i(m, c) % m;
    let cm = c.rem_euclid(m as i64) as u64;
    (1..=n * m)
        .find(|&p| gcd(n as usize, p as usize) == 1 && (p * cm) % m == target)
        .ok_or_else(|| Error::Internal(format!("no unit multiplier for c={c}, m={m}, n={n}")))
}

/// Representatives `φ_{a, d mod n}` for `a` a unit and `d | gcd(n, 1-a)`.
pub fn conjugacy_reps_aut_dn(n: usize) -> Vec<DihedralAut> {
    let mut out = Vec::new();
    for a in (0..n).filter(|&a| gcd(a, n) == 1) {
        let g = gcd_i(n as u64, 1 - a as i64) as usize;
        for d in (1..=g).filter(|d| g.is_multiple_of(*d)) {
            out.push(DihedralAut { n, a, b: d % n });
        }
    }
    if n == 1 {
        out = vec![DihedralAut { n: 1, a: 0, b: 0 }];
    }
    out
}

fn same_n(x: &DihedralAut, y: &DihedralAut) -> Result<()> {
    if x.n != y.n {
        return Err(Error::Contract(format!("moduli differ: {} vs {}", x.n, y.n)));
    }
    Ok(())
}

pub fn are_conjugate_dn(x: &DihedralAut, y: &DihedralAut) -> Result<bool> {
    same_n(x, y)?;
    Ok(x.a == y.a && x.d() == y.d())
}

pub fn fix_size_dn(x: &DihedralAut) -> usize {
    let g = x.g();
    if x.d() == g {
        2 * g
    } else {
        g
    }
}

/// `(d, g2)` with `P = ⟨σ^d⟩` and `P² = ⟨σ^{d·g2}⟩`.
pub fn p_subgroups_dn(x: &DihedralAut) -> (usize, usize) {
    let d = x.d();
    (d, gcd_i((x.n / d) as u64, 1 - x.a as i64) as usize)
}

pub fn dihedral_iso_decider(x: &DihedralAut, y: &DihedralAut) -> Result<bool> {
    same_n(x, y)?;
    let d = x.d();
    Ok(fix_size_dn(x) == fix_size_dn(y) && d == y.d() && x.a % (x.n / d) == y.a % (x.n / d))
}

/// The `D_n` automorphism whose quandle realizes `Q(C_{2n}, a)`.
pub fn cyclic_to_dihedral(n: usize, a: usize) -> Result<DihedralAut> {
    if a.is_multiple_of(2) || gcd(a, 2 * n) != 1 {
        return Err(Error::Contract(format!("{a} is not an odd unit modulo {}", 2 * n)));
    }
    let a = a % (2 * n);
    let k = (a - 1) / 2;
    let g = gcd(k, n);
    let a_tilde = a - (a / n) * n;
    DihedralAut::new(n, a_tilde, g)
}

pub fn cyclic_iso_decider(n: usize, a: usize, a2: usize) -> Result<bool> {
    if gcd(a % n, n) != 1 || gcd(a2 % n, n) != 1 {
        return Err(Error::Contract(format!("{a} and {a2} must be units modulo {n}")));
    }
    let g = gcd_i(n as u64, 1 - a as i64) as usize;
    let g2 = gcd_i(n as u64, 1 - a2 as i64) as usize;
    Ok(g == g2 && a % (n / g) == a2 % (n / g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences() {
        let s = solve_congruence(4, 2, 6).unwrap();
        assert_eq!(s, Congruence { z0: 2, step: 3, count: 2 });
        assert_eq!(s.solutions(), vec![2, 5]);
        assert!(solve_congruence(2, 1, 4).is_none());
        assert_eq!(solve_congruence(1, 5, 7).unwrap().solutions(), vec![5]);
    }

    #[test]
    fn unit_multipliers() {
        assert_eq!(unit_multiplier_to_gcd(4, 6, 6).unwrap(), 5);
        assert_eq!(unit_multiplier_to_gcd(1, 9, 4).unwrap(), 1);
        assert_eq!(unit_multiplier_to_gcd(3, 9, 2).unwrap(), 1);
    }

    fn reps(n: usize) -> Vec<(usize, usize)> {
        conjugacy_reps_aut_dn(n).into_iter().map(|x| (x.a, x.b)).collect()
    }

    #[test]
    fn class_representatives() {
        assert_eq!(reps(5), vec![(1, 1), (1, 0), (2, 1), (3, 1), (4, 1)]);
        assert_eq!(reps(6), vec![(1, 1), (1, 2), (1, 3), (1, 0), (5, 1), (5, 2)]);
        assert_eq!(reps(8).len(), 11);
    }

    #[test]
    fn fix_and_p() {
        let x = DihedralAut::new(4, 1, 1).unwrap();
        assert_eq!(fix_size_dn(&x), 4);
        assert_eq!(fix_size_dn(&DihedralAut::new(4, 1, 0).unwrap()), 8);
        assert_eq!(fix_size_dn(&DihedralAut::new(8, 5, 2).unwrap()), 4);
        assert_eq!(p_subgroups_dn(&DihedralAut::new(4, 3, 1).unwrap()).0, 1);
        assert_eq!(p_subgroups_dn(&DihedralAut::new(4, 1, 0).unwrap()).0, 4);
        assert_eq!(p_subgroups_dn(&DihedralAut::new(8, 1, 2).unwrap()).0, 2);
        assert_eq!(p_subgroups_dn(&DihedralAut::new(8, 5, 2).unwrap()).0, 2);
    }

    #[test]
    fn deciders() {
        let d = |n, a, b| DihedralAut::new(n, a, b).unwrap();
        assert!(are_conjugate_dn(&d(4, 3, 1), &d(4, 3, 3)).unwrap());
        assert!(!are_conjugate_dn(&d(4, 1, 2), &d(4, 3, 2)).unwrap());
        assert!(dihedral_iso_decider(&d(4, 1, 2), &d(4, 3, 2)).unwrap());
        assert!(!dihedral_iso_decider(&d(8, 1, 2), &d(8, 5, 2)).unwrap());
        assert!(are_conjugate_dn(&d(4, 1, 1), &d(5, 1, 1)).is_err());
        assert!(cyclic_iso_decider(9, 4, 7).unwrap());
        assert!(!cyclic_iso_decider(15, 2, 4).unwrap());
        assert!(cyclic_iso_decider(15, 3, 4).is_err());
    }

    #[test]
    fn cyclic_realization() {
        assert_eq!(cyclic_to_dihedral(5, 3).unwrap(), DihedralAut::new(5, 3, 1).unwrap());
        assert_eq!(cyclic_to_dihedral(3, 5).unwrap(), DihedralAut::new(3, 2, 1).unwrap());
        assert_eq!(cyclic_to_dihedral(4, 1).unwrap(), DihedralAut::new(4, 1, 0).unwrap());
        assert!(cyclic_to_dihedral(4, 2).is_err());
    }
}
