//! Checks of the published classification results, one [`Claim`] each.
//!
//! Every isomorphism witness produced along the way is kept, so that the
//! final claim can run [`iso::check_witness_properties`] on all of them.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, GroupSpec};
use crate::classify::{self, ClassificationReport};
use crate::dihedral::{self, DihedralAut};
use crate::error::{Error, Result};
use crate::group::{GroupMap, Subgroup};
use crate::invariants::AlexanderQuandle;
use crate::iso::{self, DecideOptions, IsoResult, IsoVerdict, Method};
use crate::morphism::AutomorphismGroup;
use crate::reference::{self, Restricted};

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.millis,
            self.detail
        )
    }
}

/// A pair `(G, ψ)` given by catalog group and automorphism images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairKey {
    pub group: GroupSpec,
    pub automorphism: Vec<usize>,
}

impl PairKey {
    fn of(q: &AlexanderQuandle) -> Self {
        PairKey {
            group: q.spec.clone().expect("catalog quandle"),
            automorphism: q.psi.images.clone(),
        }
    }

    fn quandle(&self) -> Result<AlexanderQuandle> {
        AlexanderQuandle::new(
            catalog::build(&self.group)?,
            GroupMap::new(self.automorphism.clone()),
            Some(self.group.clone()),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub source: String,
    pub left: PairKey,
    pub right: PairKey,
    pub witness: Vec<usize>,
}

type Outcome = Result<(bool, String)>;

/// Runs the claims, sharing classification reports and collected witnesses.
#[derive(Default)]
pub struct Verifier {
    cache: Option<PathBuf>,
    reports: Mutex<BTreeMap<usize, Arc<ClassificationReport>>>,
    witnesses: Mutex<Vec<WitnessRecord>>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(dir: Option<PathBuf>) -> Self {
        Verifier {
            cache: dir,
            ..Self::default()
        }
    }

    pub fn witnesses(&self) -> Vec<WitnessRecord> {
        self.witnesses.lock().expect("witness lock").clone()
    }

    fn record(&self, source: &str, a: &AlexanderQuandle, b: &AlexanderQuandle, w: &[usize]) {
        self.witnesses.lock().expect("witness lock").push(WitnessRecord {
            source: source.to_string(),
            left: PairKey::of(a),
            right: PairKey::of(b),
            witness: w.to_vec(),
        });
    }

    pub fn report(&self, n: usize) -> Result<Arc<ClassificationReport>> {
        if let Some(r) = self.reports.lock().expect("report lock").get(&n) {
            return Ok(r.clone());
        }
        let r = Arc::new(classify::classify_order_cached(n, n > classify::MAX_PUBLISHED_ORDER, self.cache.as_deref())?);
        for e in r.merges() {
            if let Some(w) = &e.verdict.witness {
                self.witnesses.lock().expect("witness lock").push(WitnessRecord {
                    source: format!("classify {n}"),
                    left: PairKey {
                        group: r.pairs[e.left].group.clone(),
                        automorphism: r.pairs[e.left].automorphism.clone(),
                    },
                    right: PairKey {
                        group: r.pairs[e.right].group.clone(),
                        automorphism: r.pairs[e.right].automorphism.clone(),
                    },
                    witness: w.clone(),
                });
            }
        }
        self.reports.lock().expect("report lock").insert(n, r.clone());
        Ok(r)
    }

    fn run(&self, id: usize, title: &'static str, f: impl FnOnce(&Self) -> Outcome) -> Claim {
        let start = Instant::now();
        let (passed, detail) = match f(self) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        Claim {
            id,
            title,
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }

    pub fn run_all(&self) -> Vec<Claim> {
        (1..=10).map(|i| self.claim(i).expect("ids 1..=10 exist")).collect()
    }

    pub fn claim(&self, id: usize) -> Option<Claim> {
        Some(match id {
            1 => self.run(1, "counts |Q_GA(n)| for n = 1..15", Self::table1),
            2 => self.run(2, "closed forms for p, 2p, p^2", Self::closed_forms),
            3 => self.run(3, "order-8 and order-12 merge lists", Self::merge_lists),
            4 => self.run(4, "published per-group invariant rows", Self::published_invariants),
            5 => self.run(5, "dihedral formulas vs enumeration", Self::dihedral_formulas),
            6 => self.run(6, "decider cross-validation up to order 12", Self::cross_validation),
            7 => self.run(7, "Q(C_2n, a) ~ Q(D_n, phi) witnesses for n <= 8", Self::cyclic_dihedral),
            8 => self.run(8, "structure of P, P^2 and Inn", Self::structure),
            9 => self.run(9, "order-16 boundary cases", Self::order16),
            10 => self.run(10, "witness properties (i)-(iv)", Self::witness_properties),
            _ => return None,
        })
    }

    fn table1(&self) -> Outcome {
        let mut got = Vec::new();
        for n in 1..=reference::TABLE1.len() {
            got.push(self.report(n)?.class_count());
        }
        let ok = got == reference::TABLE1;
        Ok((ok, format!("computed {got:?}, expected {:?}", reference::TABLE1)))
    }

    fn closed_forms(&self) -> Outcome {
        let mut bad = Vec::new();
        let ns = [2, 3, 5, 7, 11, 13, 6, 10, 14, 4, 9];
        for n in ns {
            let got = self.report(n)?.class_count();
            let want = classify::closed_form_count(n);
            if want != Some(got) || want != Some(reference::TABLE1[n - 1]) {
                bad.push(format!("n={n}: classifier {got}, formula {want:?}"));
            }
        }
        Ok(if bad.is_empty() {
            (true, format!("{} orders match", ns.len()))
        } else {
            (false, bad.join("; "))
        })
    }

    fn merge_lists(&self) -> Outcome {
        let mut notes = Vec::new();
        let mut ok = true;
        for n in [8, 12] {
            let (pass, note) = self.merge_list(n)?;
            ok &= pass;
            notes.push(note);
        }
        Ok((ok, notes.join("; ")))
    }

    fn merge_list(&self, n: usize) -> Outcome {
        let report = self.report(n)?;
        let rows: Vec<_> = reference::published_rows().into_iter().filter(|r| r.order == n).collect();
        let mut label_pair = BTreeMap::new();
        let mut expected: Vec<Option<usize>> = vec![None; report.pairs.len()];
        let mut parent: Vec<usize> = (0..report.pairs.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                p[x] = find(p, p[x]);
            }
            p[x]
        }
        fn union(p: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        }
        let mut problems = Vec::new();
        for row in &rows {
            let spec = row.spec()?;
            let mut first = None;
            for name in std::iter::once(row.automorphism).chain(row.also.iter().copied()) {
                let psi = catalog::named_automorphism(&spec, name)?;
                let i = report
                    .find_pair(&spec, &psi)?
                    .ok_or_else(|| Error::Internal(format!("{} has no pair", row.label())))?;
                expected[i] = Some(row.index);
                match first {
                    None => first = Some(i),
                    Some(f) => union(&mut parent, f, i),
                }
            }
            label_pair.insert(row.index, first.expect("row has an automorphism"));
        }
        let lists: Vec<&[usize]> = reference::displayed_merges(n)
            .iter()
            .chain(reference::implied_merges(n))
            .copied()
            .collect();
        for list in &lists {
            for w in list.windows(2) {
                union(&mut parent, label_pair[&w[0]], label_pair[&w[1]]);
            }
        }
        let dn = GroupSpec::Dihedral(n / 2);
        for &(a, (at, g)) in reference::cyclic_realizations(n) {
            let c = report
                .find_pair(&GroupSpec::Cyclic(n), &catalog::named_automorphism(&GroupSpec::Cyclic(n), &format!("mul:{a}"))?)?
                .ok_or_else(|| Error::Internal(format!("C{n} unit {a} has no pair")))?;
            let d = report
                .find_pair(&dn, &DihedralAut::new(n / 2, at, g)?.images())?
                .ok_or_else(|| Error::Internal("dihedral realization has no pair".into()))?;
            expected[c] = Some(0);
            union(&mut parent, c, d);
        }
        for (i, e) in expected.iter().enumerate() {
            if e.is_none() {
                problems.push(format!("pair {} is not covered by the published rows", report.pairs[i].name()));
            }
        }
        // Same expected block <=> same computed class.
        let mut mismatches = 0;
        for i in 0..report.pairs.len() {
            for j in i + 1..report.pairs.len() {
                let same_expected = find(&mut parent, i) == find(&mut parent, j);
                let same_computed = report.class_of(i) == report.class_of(j);
                if same_expected != same_computed {
                    mismatches += 1;
                    if mismatches <= 5 {
                        problems.push(format!(
                            "{} vs {}: expected {}, computed {}",
                            report.pairs[i].name(),
                            report.pairs[j].name(),
                            if same_expected { "merged" } else { "separate" },
                            if same_computed { "merged" } else { "separate" }
                        ));
                    }
                }
            }
        }
        // The final published list names each class once.
        let finals: Vec<Option<usize>> = reference::final_table(n)
            .iter()
            .map(|k| report.class_of(label_pair[k]))
            .collect();
        let mut distinct = finals.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != report.class_count() || finals.len() != report.class_count() {
            problems.push("final list does not name each class exactly once".into());
        }
        // Each displayed identification, decided directly with a witness.
        let pairs: Vec<(usize, usize)> = lists
            .iter()
            .flat_map(|l| l.windows(2).map(|w| (w[0], w[1])))
            .collect();
        let opts = DecideOptions {
            cross_check: true,
            ..DecideOptions::default()
        };
        let checked: Vec<Result<Option<String>>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let rx = rows.iter().find(|r| r.index == x).expect("row");
                let ry = rows.iter().find(|r| r.index == y).expect("row");
                let a = AlexanderQuandle::from_spec(&rx.spec()?, rx.automorphism)?;
                let b = AlexanderQuandle::from_spec(&ry.spec()?, ry.automorphism)?;
                let v = iso::decide_with(&a, &b, &opts)?;
                match &v.witness {
                    Some(w) if v.is_isomorphic() && a.quandle.is_isomorphism_to(&b.quandle, w) => {
                        self.record(&format!("merge list {n}"), &a, &b, w);
                        Ok(None)
                    }
                    _ => Ok(Some(format!("{} ~ {} not confirmed", rx.label(), ry.label()))),
                }
            })
            .collect();
        for c in checked {
            problems.extend(c?);
        }
        let ok = problems.is_empty();
        let mut note = format!(
            "order {n}: {} classes, {} identifications verified with witnesses",
            report.class_count(),
            pairs.len()
        );
        if !reference::implied_merges(n).is_empty() {
            note.push_str(" (including 2 implied by the final table)");
        }
        if !ok {
            note.push_str(": ");
            note.push_str(&problems.join("; "));
        }
        Ok((ok, note))
    }

    fn published_invariants(&self) -> Outcome {
        let rows = reference::published_rows();
        let checked: Vec<Result<Vec<String>>> = rows
            .par_iter()
            .map(|row| {
                let spec = row.spec()?;
                let mut bad = Vec::new();
                for name in std::iter::once(row.automorphism).chain(row.also.iter().copied()) {
                    let q = AlexanderQuandle::from_spec(&spec, name)?;
                    let prof = q.profile()?;
                    let (_, _, psi_p) = q.p_group()?;
                    let restricted_ok = match row.restricted {
                        Restricted::Id => psi_p.is_identity(),
                        Restricted::Mul(k) => prof.psi_restricted_label == format!("x{k}"),
                        Restricted::Order(r) => psi_p.order() == r,
                    };
                    let flags_ok = row.flags.is_none_or(|f| f == (prof.p1, prof.p2_flag));
                    if prof.psi_order != row.psi_order
                        || prof.fix_size != row.fix_size
                        || prof.p_iso_type != row.p_type
                        || !restricted_ok
                        || !flags_ok
                    {
                        bad.push(format!(
                            "{} ({name}): computed ord {} fix {} P {} restr {} flags {}{}",
                            row.label(),
                            prof.psi_order,
                            prof.fix_size,
                            prof.p_iso_type,
                            prof.psi_restricted_label,
                            flag(prof.p1),
                            flag(prof.p2_flag)
                        ));
                    }
                }
                Ok(bad)
            })
            .collect();
        let mut bad = Vec::new();
        for c in checked {
            bad.extend(c?);
        }
        Ok(if bad.is_empty() {
            (true, format!("{} rows match", rows.len()))
        } else {
            (false, bad.join("; "))
        })
    }

    fn dihedral_formulas(&self) -> Outcome {
        let mut bad = Vec::new();
        let mut count = 0;
        for n in 1..=8usize {
            let spec = GroupSpec::Dihedral(n);
            let g = catalog::build(&spec)?;
            for a in (0..n.max(1)).filter(|&a| crate::group::gcd(a, n) == 1) {
                for b in 0..n {
                    let x = DihedralAut::new(n, a, b)?;
                    let q = AlexanderQuandle::new(g.clone(), x.images(), Some(spec.clone()))?;
                    let (d, g2) = dihedral::p_subgroups_dn(&x);
                    let sigma_pow = |k: usize| Subgroup::from_members(2 * n, (0..n).step_by(k.max(1)).collect());
                    count += 1;
                    if q.fix.len() != dihedral::fix_size_dn(&x) || q.p != sigma_pow(d) || q.p2 != sigma_pow(d * g2) {
                        bad.push(format!("{x}"));
                    }
                }
            }
            if n >= 3 {
                let aut = catalog::entry(&spec)?.automorphisms()?;
                let affs: Vec<DihedralAut> = aut
                    .elements()
                    .iter()
                    .map(|m| DihedralAut::from_images(n, &m.images))
                    .collect::<Result<_>>()?;
                for (i, x) in affs.iter().enumerate() {
                    for (j, y) in affs.iter().enumerate() {
                        let formula = dihedral::are_conjugate_dn(x, y)?;
                        let brute = aut.class_index(&aut.elements()[i])? == aut.class_index(&aut.elements()[j])?;
                        if formula != brute {
                            bad.push(format!("conjugacy {x} vs {y}"));
                        }
                    }
                }
                let mut hit: Vec<usize> = dihedral::conjugacy_reps_aut_dn(n)
                    .iter()
                    .map(|r| aut.class_index(&r.images()))
                    .collect::<Result<_>>()?;
                hit.sort_unstable();
                if hit != (0..aut.classes().len()).collect::<Vec<_>>() {
                    bad.push(format!("representatives for D{n} do not hit each class once"));
                }
            }
        }
        Ok(if bad.is_empty() {
            (true, format!("{count} automorphisms of D_1..D_8 checked"))
        } else {
            (false, bad.join("; "))
        })
    }

    fn cross_validation(&self) -> Outcome {
        let mut comparisons = 0usize;
        let mut bad = Vec::new();
        for n in 1..=12 {
            let mut quandles = Vec::new();
            for spec in catalog::groups_of_order(n)? {
                for p in classify::pairs_for_group(&spec)? {
                    quandles.push(p.quandle()?);
                }
            }
            let idx: Vec<(usize, usize)> = (0..quandles.len())
                .flat_map(|i| (i..quandles.len()).map(move |j| (i, j)))
                .collect();
            let results: Vec<Result<(usize, Vec<String>)>> = idx
                .par_iter()
                .map(|&(i, j)| self.cross_validate(&quandles[i], &quandles[j]))
                .collect();
            for r in results {
                let (c, b) = r?;
                comparisons += c;
                bad.extend(b);
            }
        }
        Ok(if bad.is_empty() {
            (true, format!("{comparisons} decider comparisons against brute force agree"))
        } else {
            (false, bad.join("; "))
        })
    }

    fn cross_validate(&self, a: &AlexanderQuandle, b: &AlexanderQuandle) -> Result<(usize, Vec<String>)> {
        let brute = iso::brute_force_iso(&a.quandle, &b.quandle)?;
        if let Some(w) = &brute.witness {
            self.record("brute force", a, b, w);
        }
        let mut others: Vec<IsoVerdict> = Vec::new();
        let crit = iso::criterion_iso(a, b)?;
        if crit.is_decided() {
            others.push(crit);
        }
        if a.group.is_abelian() && b.group.is_abelian() {
            others.push(iso::abelian_decider(a, b)?);
        }
        others.extend(iso::dihedral_decider(a, b)?);
        others.extend(iso::cyclic_decider(a, b)?);
        if a.spec == b.spec && a.group.is_simple() {
            others.push(iso::simple_group_decider(a, b)?);
        }
        let mut bad = Vec::new();
        for v in &others {
            if v.result != brute.result {
                bad.push(format!("{} disagrees with brute force on {} vs {}", v.method.as_str(), a.label(), b.label()));
            }
            if let Some(w) = &v.witness {
                if !a.quandle.is_isomorphism_to(&b.quandle, w) {
                    bad.push(format!("{} witness fails on {} vs {}", v.method.as_str(), a.label(), b.label()));
                } else {
                    self.record(v.method.as_str(), a, b, w);
                }
            }
        }
        Ok((others.len(), bad))
    }

    fn cyclic_dihedral(&self) -> Outcome {
        let mut bad = Vec::new();
        let mut count = 0;
        let opts = DecideOptions {
            cross_check: true,
            ..DecideOptions::default()
        };
        for n in 1..=8usize {
            let cyc = GroupSpec::Cyclic(2 * n);
            let dn = GroupSpec::Dihedral(n);
            for a in (1..2 * n).filter(|&a| crate::group::gcd(a, 2 * n) == 1) {
                let x = dihedral::cyclic_to_dihedral(n, a)?;
                let left = AlexanderQuandle::from_spec(&cyc, &format!("mul:{a}"))?;
                let right = AlexanderQuandle::new(catalog::build(&dn)?, x.images(), Some(dn.clone()))?;
                let v = iso::decide_with(&left, &right, &opts)?;
                count += 1;
                match &v.witness {
                    Some(w) if v.is_isomorphic() && left.quandle.is_isomorphism_to(&right.quandle, w) => {
                        self.record("cyclic realization", &left, &right, w);
                    }
                    _ => bad.push(format!("C{} unit {a} vs {x}", 2 * n)),
                }
            }
        }
        Ok(if bad.is_empty() {
            (true, format!("{count} witnesses found and verified"))
        } else {
            (false, bad.join("; "))
        })
    }

    fn structure(&self) -> Outcome {
        let mut bad = Vec::new();
        let (mut normal_checks, mut inn_checks, mut dichotomy) = (0, 0, 0);
        for n in 1..=12 {
            for spec in catalog::groups_of_order(n)? {
                let g = catalog::build(&spec)?;
                let aut = catalog::entry(&spec)?.automorphisms()?;
                for psi in aut.elements() {
                    let q = AlexanderQuandle::new(g.clone(), psi.clone(), Some(spec.clone()))?;
                    normal_checks += 1;
                    let orbit = orbit_of_identity(&q);
                    let disp: Vec<usize> = (0..n).map(|x| g.mul(x, g.inv(psi.apply(x)))).collect();
                    if orbit != g.generated_subgroup(&disp) || !g.is_normal(&q.p)? {
                        bad.push(format!("P on {}", q.label()));
                    }
                    let (pg, embed, _) = q.p_group()?;
                    let p2_in_p: Vec<usize> =
                        q.p2.members().iter().map(|&x| embed.iter().position(|&e| e == x).expect("P2 within P")).collect();
                    if !pg.is_normal(&Subgroup::from_members(pg.order(), p2_in_p))? {
                        bad.push(format!("P^2 not normal in P on {}", q.label()));
                    }
                }
                for class in aut.classes() {
                    let q = AlexanderQuandle::new(g.clone(), class.representative.clone(), Some(spec.clone()))?;
                    let (_, r) = q.inn_structure()?;
                    inn_checks += 1;
                    if !r.size_matches || r.semidirect_isomorphic != Some(true) {
                        bad.push(format!("Inn of {}: {r:?}", q.label()));
                    }
                    if r.p_centerless {
                        dichotomy += 1;
                        if r.dichotomy_holds() != Some(true) {
                            bad.push(format!("dichotomy fails on {}", q.label()));
                        }
                    }
                }
            }
        }
        for spec in ["S4", "S3xS3"] {
            let spec: GroupSpec = spec.parse()?;
            let g = catalog::build(&spec)?;
            for class in catalog::entry(&spec)?.automorphisms()?.classes() {
                let q = AlexanderQuandle::new(g.clone(), class.representative.clone(), Some(spec.clone()))?;
                let (_, r) = q.inn_structure()?;
                if r.p_centerless && r.direct_isomorphic.is_some() {
                    dichotomy += 1;
                    if r.dichotomy_holds() != Some(true) {
                        bad.push(format!("dichotomy fails on {}", q.label()));
                    }
                }
            }
        }
        let sl = AlexanderQuandle::from_names("SL23", "inner:A")?;
        let (_, r) = sl.inn_structure()?;
        let sl_p = sl.profile()?.p_iso_type.clone();
        let counterexample = sl_p == "Q8"
            && r.m == 2
            && r.size_matches
            && r.semidirect_isomorphic == Some(true)
            && r.direct_isomorphic == Some(false);
        if !counterexample {
            bad.push(format!("SL(2,3) counterexample: P = {sl_p}, {r:?}"));
        }
        Ok(if bad.is_empty() {
            (
                true,
                format!(
                    "{normal_checks} normality checks, {inn_checks} Inn isomorphisms, {dichotomy} centerless cases, SL(2,3): Inn ~ Q8:C2 but not Q8xC2"
                ),
            )
        } else {
            (false, bad.join("; "))
        })
    }

    fn order16(&self) -> Outcome {
        let mut notes = Vec::new();
        let mut ok = true;
        let [(g1, a1), (g2, a2)] = reference::D8_PAIR;
        let x = AlexanderQuandle::from_names(g1, a1)?;
        let y = AlexanderQuandle::from_names(g2, a2)?;
        let v = iso::decide(&x, &y)?;
        let fix = (x.fix.len(), y.fix.len());
        let px = x.profile()?;
        let py = y.profile()?;
        let d8_ok = v.result == IsoResult::NotIsomorphic
            && v.separator.as_deref() == Some("fix_size")
            && fix == (8, 4)
            && px.p_iso_type == "C4"
            && py.p_iso_type == "C4"
            && px.psi_restricted_label == "id"
            && py.psi_restricted_label == "id";
        ok &= d8_ok;
        notes.push(format!(
            "D8 phi_1,2 vs phi_5,2: {} via {} on {}, Fix {} vs {}",
            v.result,
            v.method.as_str(),
            v.separator.as_deref().unwrap_or("-"),
            fix.0,
            fix.1
        ));

        let left = AlexanderQuandle::from_names(reference::BEYOND_LEFT.0, reference::BEYOND_LEFT.1)?;
        let Some(right) = beyond_pair_partner(&left)? else {
            return Ok((false, format!("{}; no order-3 automorphism of SD16 matches the profile", notes.join("; "))));
        };
        let crit = iso::criterion_iso(&left, &right)?;
        let brute = iso::brute_force_iso(&left.quandle, &right.quandle)?;
        let definite = match (&brute.result, &brute.witness) {
            (IsoResult::Isomorphic, Some(w)) => {
                let good = left.quandle.is_isomorphism_to(&right.quandle, w);
                if good {
                    self.record("beyond-paper order 16", &left, &right, w);
                }
                good
            }
            (IsoResult::NotIsomorphic, _) => true,
            _ => false,
        };
        ok &= definite && crit.result == IsoResult::Undecided && brute.method == Method::BruteForce;
        notes.push(format!(
            "beyond-paper: Q(C2xQ8, id x psi4) vs Q(SD16, {:?}): criterion {}, brute force {}{}",
            right.psi.images,
            crit.result,
            brute.result,
            brute.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default()
        ));
        Ok((ok, notes.join("; ")))
    }

    fn witness_properties(&self) -> Outcome {
        let all = self.witnesses();
        if all.is_empty() {
            return Ok((false, "no witnesses were collected; run claims 1-9 first".into()));
        }
        let results: Vec<Result<Option<String>>> = all
            .par_iter()
            .map(|w| {
                let a = w.left.quandle()?;
                let b = w.right.quandle()?;
                let r = iso::check_witness_properties(&a, &b, &w.witness)?;
                Ok((!r.all_pass()).then(|| format!("{} ({}): {}", a.label(), w.source, r.failures.join(", "))))
            })
            .collect();
        let mut bad = Vec::new();
        for r in results {
            bad.extend(r?);
        }
        Ok(if bad.is_empty() {
            (true, format!("{} witnesses pass (i)-(iv)", all.len()))
        } else {
            (false, bad.into_iter().take(5).collect::<Vec<_>>().join("; "))
        })
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

/// The orbit of `e` under the point symmetries, computed on the quandle table.
fn orbit_of_identity(q: &AlexanderQuandle) -> Subgroup {
    let n = q.order();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(y) = stack.pop() {
        for x in 0..n {
            for z in [q.quandle.s(x, y), q.quandle.s_inv(x, y)] {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    Subgroup::from_mask(seen)
}

/// The first order-3 class representative of `Aut(SD16)` whose quandle has
/// the same invariant profile as `left`.
pub fn beyond_pair_partner(left: &AlexanderQuandle) -> Result<Option<AlexanderQuandle>> {
    let spec: GroupSpec = reference::BEYOND_RIGHT_GROUP.parse()?;
    let g = catalog::build(&spec)?;
    let target = left.profile()?;
    let aut: Arc<AutomorphismGroup> = catalog::entry(&spec)?.automorphisms()?;
    for class in aut.classes().iter().filter(|c| c.representative.order() == 3) {
        let q = AlexanderQuandle::new(g.clone(), class.representative.clone(), Some(spec.clone()))?;
        if q.profile()?.separator(target).is_none() {
            return Ok(Some(q));
        }
    }
    Ok(None)
}
