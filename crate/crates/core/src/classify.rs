//! Classification of generalized Alexander quandles by group order.
//!
//! Pairs `(G, ψ)` start from conjugacy-class representatives of `Aut(G)`
//! (conjugate automorphisms give isomorphic quandles), are bucketed by
//! [`InvariantProfile`], and are merged inside each bucket with
//! [`iso::decide`](crate::iso::decide).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap};
use crate::invariants::{AlexanderQuandle, InvariantProfile};
use crate::iso::{self, DecideOptions, IsoVerdict};

/// Highest order the classifier accepts without the beyond-paper flag.
pub const MAX_PUBLISHED_ORDER: usize = 15;
/// Highest order the classifier accepts at all.
pub const MAX_ORDER: usize = 16;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One `(G, ψ)` with `ψ` a class representative of `Aut(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub group: GroupSpec,
    /// Index of the class among the sorted classes of `Aut(G)`.
    pub class_index: usize,
    pub class_size: usize,
    pub automorphism: Vec<usize>,
}

impl PairRecord {
    /// A name that [`catalog::named_automorphism`] resolves back to this pair.
    pub fn name(&self) -> String {
        format!("{}:class:{}", self.group, self.class_index)
    }

    pub fn quandle(&self) -> Result<AlexanderQuandle> {
        AlexanderQuandle::new(
            catalog::build(&self.group)?,
            GroupMap::new(self.automorphism.clone()),
            Some(self.group.clone()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub left: usize,
    pub right: usize,
    pub verdict: IsoVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub engine_version: String,
    pub pairs: Vec<PairRecord>,
    /// Partition of `pairs` (by index) into isomorphism classes; the first
    /// member of each class is its representative.
    pub classes: Vec<Vec<usize>>,
    pub class_profiles: Vec<InvariantProfile>,
    pub verdict_log: Vec<VerdictEntry>,
    pub complete: bool,
    pub beyond_paper: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, pair: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&pair))
    }

    /// Index of the pair on `spec` whose automorphism is conjugate to `psi`.
    pub fn find_pair(&self, spec: &GroupSpec, psi: &GroupMap) -> Result<Option<usize>> {
        let aut = catalog::entry(spec)?.automorphisms()?;
        let k = aut.class_index(psi)?;
        Ok(self
            .pairs
            .iter()
            .position(|p| &p.group == spec && p.class_index == k))
    }

    /// Isomorphic verdicts whose witnesses join two pairs.
    pub fn merges(&self) -> impl Iterator<Item = &VerdictEntry> {
        self.verdict_log.iter().filter(|v| v.verdict.is_isomorphic())
    }

    /// Checks that `classes` partitions the pairs and that each class is
    /// joined by logged merges.
    pub fn verify_partition(&self) -> Result<()> {
        let n = self.pairs.len();
        let mut seen = vec![false; n];
        for &i in self.classes.iter().flatten() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Disagreement(format!("pair {i} is listed twice or out of range")));
            }
        }
        if seen.iter().any(|s| !s) && self.complete {
            return Err(Error::Disagreement("complete report leaves pairs unclassified".into()));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.merges() {
            if e.left >= n || e.right >= n {
                return Err(Error::Disagreement("merge refers to a missing pair".into()));
            }
            let (a, b) = (root(&mut parent, e.left), root(&mut parent, e.right));
            parent[a] = b;
        }
        for class in &self.classes {
            let r = root(&mut parent, class[0]);
            if class.iter().any(|&x| root(&mut parent, x) != r) {
                return Err(Error::Disagreement(format!("class of {} is not joined by merges", self.pairs[class[0]].name())));
            }
        }
        let roots: std::collections::HashSet<usize> =
            self.classes.iter().map(|c| root(&mut parent, c[0])).collect();
        if roots.len() != self.classes.len() {
            return Err(Error::Disagreement("two classes are joined by a merge".into()));
        }
        Ok(())
    }

    /// Rebuilds every merge and checks its witness.
    pub fn verify_witnesses(&self) -> Result<()> {
        self.verify_partition()?;
        self.merges().collect::<Vec<_>>().par_iter().try_for_each(|e| {
            let a = self.pairs[e.left].quandle()?;
            let b = self.pairs[e.right].quandle()?;
            let ok = e
                .verdict
                .witness
                .as_ref()
                .is_some_and(|w| a.quandle.is_isomorphism_to(&b.quandle, w));
            if ok {
                Ok(())
            } else {
                Err(Error::Disagreement(format!(
                    "stored witness for {} ~ {} does not verify",
                    self.pairs[e.left].name(),
                    self.pairs[e.right].name()
                )))
            }
        })
    }
}

/// Pairs for one group, sorted by class.
pub fn pairs_for_group(spec: &GroupSpec) -> Result<Vec<PairRecord>> {
    let aut = catalog::entry(spec)?.automorphisms()?;
    Ok(aut
        .classes()
        .iter()
        .enumerate()
        .map(|(k, c)| PairRecord {
            group: spec.clone(),
            class_index: k,
            class_size: c.size,
            automorphism: c.representative.images.clone(),
        })
        .collect())
}

fn check_order(n: usize, beyond_paper: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::capacity("classification order", n, MAX_ORDER));
    }
    if n > MAX_PUBLISHED_ORDER && !beyond_paper {
        return Err(Error::Input(format!(
            "order {n} needs the beyond-paper flag (supported without it: 1..={MAX_PUBLISHED_ORDER})"
        )));
    }
    Ok(())
}

/// `Q_GA(n)`: all generalized Alexander quandles on groups of order `n`.
pub fn classify_order(n: usize, beyond_paper: bool) -> Result<ClassificationReport> {
    check_order(n, beyond_paper)?;
    let mut pairs = Vec::new();
    for spec in catalog::groups_of_order(n)? {
        pairs.extend(pairs_for_group(&spec)?);
    }
    let mut report = classify_pairs(n, pairs)?;
    report.beyond_paper = n > MAX_PUBLISHED_ORDER;
    Ok(report)
}

/// `Q(G)` for a single catalog group.
pub fn classify_spec(spec: &GroupSpec) -> Result<ClassificationReport> {
    classify_pairs(spec.order(), pairs_for_group(spec)?)
}

/// `Q(G)` for an arbitrary group, which must match a catalog entry.
pub fn classify_group(g: &FiniteGroup) -> Result<ClassificationReport> {
    let (spec, _) = catalog::identify(g)
        .ok_or_else(|| Error::Lookup(format!("{} does not match a catalog group", g.name())))?;
    classify_spec(&spec)
}

struct Prepared {
    quandle: Option<AlexanderQuandle>,
    profile: Option<InvariantProfile>,
    problem: Option<String>,
}

fn prepare(pair: &PairRecord) -> Result<Prepared> {
    let q = match pair.quandle() {
        Ok(q) => q,
        Err(e @ Error::Capacity { .. }) => {
            return Ok(Prepared {
                quandle: None,
                profile: None,
                problem: Some(format!("{}: {e}", pair.name())),
            })
        }
        Err(e) => return Err(e),
    };
    match q.profile() {
        Ok(p) => {
            let p = p.clone();
            Ok(Prepared {
                quandle: Some(q),
                profile: Some(p),
                problem: None,
            })
        }
        Err(e @ Error::Capacity { .. }) => Ok(Prepared {
            quandle: None,
            profile: None,
            problem: Some(format!("{}: {e}", pair.name())),
        }),
        Err(e) => Err(e),
    }
}

/// Merges `pairs` (all of order `n`) into quandle isomorphism classes.
pub fn classify_pairs(n: usize, pairs: Vec<PairRecord>) -> Result<ClassificationReport> {
    let prepared: Vec<Prepared> = pairs.par_iter().map(prepare).collect::<Result<_>>()?;

    // Deterministic order: (ord ψ, |Fix|, P type, group, images).
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&i, &j| {
        let key = |k: usize| {
            let p = prepared[k].profile.as_ref();
            (
                p.map(|p| p.psi_order),
                p.map(|p| p.fix_size),
                p.map(|p| p.p_iso_type.clone()),
                pairs[k].group.to_string(),
                pairs[k].automorphism.clone(),
            )
        };
        key(i).cmp(&key(j))
    });

    let mut buckets: BTreeMap<&InvariantProfile, Vec<usize>> = BTreeMap::new();
    let mut problems = Vec::new();
    let mut orphans = Vec::new();
    for &i in &order {
        match &prepared[i].profile {
            Some(p) => buckets.entry(p).or_default().push(i),
            None => {
                problems.extend(prepared[i].problem.clone());
                orphans.push(i);
            }
        }
    }

    let bucket_list: Vec<Vec<usize>> = buckets.into_values().collect();
    let results: Vec<(Vec<Vec<usize>>, Vec<VerdictEntry>)> = bucket_list
        .par_iter()
        .map(|members| merge_bucket(members, &prepared))
        .collect::<Result<_>>()?;

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut verdict_log = Vec::new();
    for (cls, log) in results {
        classes.extend(cls);
        verdict_log.extend(log);
    }
    let rank: Vec<usize> = {
        let mut r = vec![0; pairs.len()];
        for (pos, &i) in order.iter().enumerate() {
            r[i] = pos;
        }
        r
    };
    classes.sort_by_key(|c| rank[c[0]]);
    let class_profiles = classes
        .iter()
        .map(|c| prepared[c[0]].profile.clone().expect("bucketed pairs have profiles"))
        .collect();
    // Pairs that could not be profiled stay unmerged and make the report partial.
    let complete = orphans.is_empty();
    Ok(ClassificationReport {
        order: n,
        engine_version: ENGINE_VERSION.to_string(),
        pairs,
        classes,
        class_profiles,
        verdict_log,
        complete,
        beyond_paper: n > MAX_PUBLISHED_ORDER,
        problems,
    })
}

fn merge_bucket(members: &[usize], prepared: &[Prepared]) -> Result<(Vec<Vec<usize>>, Vec<VerdictEntry>)> {
    let opts = DecideOptions::default();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut log = Vec::new();
    for &i in members {
        let qi = prepared[i].quandle.as_ref().expect("profiled");
        let mut joined = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            let qr = prepared[rep].quandle.as_ref().expect("profiled");
            let verdict = iso::decide_with(qr, qi, &opts)?;
            let iso = verdict.is_isomorphic();
            if !verdict.is_decided() {
                return Err(Error::capacity("undecided pair during classification", qi.order(), opts.brute_max));
            }
            log.push(VerdictEntry {
                left: rep,
                right: i,
                verdict,
            });
            if iso {
                class.push(i);
                joined = true;
                break;
            }
        }
        if !joined {
            classes.push(vec![i]);
        }
    }
    Ok((classes, log))
}

/// `|Q_GA(n)|` for `n` of the form `p`, `2p` (odd `p`) or `p²`.
pub fn closed_form_count(n: usize) -> Option<usize> {
    let is_prime = |p: usize| p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if is_prime(n) {
        return Some(n - 1);
    }
    if n.is_multiple_of(2) && n / 2 > 2 && is_prime(n / 2) {
        return Some(n / 2);
    }
    let r = (1..=n).find(|r| r * r >= n)?;
    (r * r == n && is_prime(r)).then(|| 2 * n - 2 * r - 1)
}

// ---------------------------------------------------------------------------
// Tables

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Input(format!("unknown table format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// `n.k`: class `k` in the row order of this table.
    pub label: String,
    pub psi_order: usize,
    pub fix_size: usize,
    pub p_type: String,
    pub psi_restricted: String,
    pub p1: bool,
    pub p2: bool,
    /// Published labels of the pairs in this class, where known.
    pub annotations: Vec<String>,
    pub members: Vec<String>,
}

/// Rows of the final table, one per class.
pub fn table_rows(report: &ClassificationReport) -> Result<Vec<TableRow>> {
    let labels = crate::reference::label_pairs(report)?;
    Ok(report
        .classes
        .iter()
        .zip(&report.class_profiles)
        .enumerate()
        .map(|(k, (class, prof))| {
            let mut annotated: Vec<(usize, String)> = class
                .iter()
                .filter_map(|i| labels.get(i))
                .map(|l| (l.rsplit('_').next().and_then(|k| k.parse().ok()).unwrap_or(0), l.clone()))
                .collect();
            annotated.sort();
            annotated.dedup();
            let annotations = annotated.into_iter().map(|(_, l)| l).collect();
            TableRow {
                label: format!("{}.{}", report.order, k + 1),
                psi_order: prof.psi_order,
                fix_size: prof.fix_size,
                p_type: prof.p_iso_type.clone(),
                psi_restricted: prof.psi_restricted_label.clone(),
                p1: prof.p1,
                p2: prof.p2_flag,
                annotations,
                members: class.iter().map(|&i| report.pairs[i].name()).collect(),
            }
        })
        .collect())
}

/// Renders the final table; an incomplete report gets a warning banner.
pub fn emit_table(report: &ClassificationReport, format: TableFormat) -> Result<String> {
    let rows = table_rows(report)?;
    let mut out = String::new();
    match format {
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                order: usize,
                complete: bool,
                beyond_paper: bool,
                classes: usize,
                rows: &'a [TableRow],
            }
            out = serde_json::to_string_pretty(&Doc {
                order: report.order,
                complete: report.complete,
                beyond_paper: report.beyond_paper,
                classes: rows.len(),
                rows: &rows,
            })?;
            out.push('\n');
        }
        TableFormat::Markdown => {
            if !report.complete {
                out.push_str("> PARTIAL: some pairs exceeded capacity bounds and were not merged.\n\n");
            }
            if report.beyond_paper {
                out.push_str("> Order beyond the published classification.\n\n");
            }
            let _ = writeln!(out, "|Q_GA({})| = {}\n", report.order, rows.len());
            out.push_str("| | ord psi | Fix | P | psi on P | P1 | P2 | published | members |\n");
            out.push_str("|---|---|---|---|---|---|---|---|---|\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.label,
                    r.psi_order,
                    r.fix_size,
                    r.p_type,
                    r.psi_restricted,
                    flag(r.p1),
                    flag(r.p2),
                    r.annotations.join(" "),
                    r.members.join(" ")
                );
            }
        }
        TableFormat::Csv => {
            if !report.complete {
                out.push_str("# PARTIAL: some pairs exceeded capacity bounds and were not merged\n");
            }
            out.push_str("label,psi_order,fix_size,p_type,psi_restricted,p1,p2,published,members\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},\"{}\",{},{},{},{}",
                    r.label,
                    r.psi_order,
                    r.fix_size,
                    r.p_type,
                    r.psi_restricted,
                    flag(r.p1),
                    flag(r.p2),
                    r.annotations.join(" "),
                    r.members.join(" ")
                );
            }
        }
    }
    Ok(out)
}

fn flag(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

// ---------------------------------------------------------------------------
// Cache

/// Directory for cached reports: `QF_CACHE_DIR` wins over the argument.
pub fn cache_dir(requested: Option<&Path>) -> Option<PathBuf> {
    std::env::var_os("QF_CACHE_DIR")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| requested.map(Path::to_path_buf))
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("classify-{n}-v{ENGINE_VERSION}.json"))
}

/// Loads a cached report after re-verifying every witness in it. Missing,
/// unreadable, or stale files are ignored.
pub fn load_cached(dir: &Path, n: usize) -> Result<Option<ClassificationReport>> {
    let path = cache_path(dir, n);
    let Ok(text) = std::fs::read_to_string(&path) else {
        return Ok(None);
    };
    let Ok(report) = serde_json::from_str::<ClassificationReport>(&text) else {
        return Ok(None);
    };
    if report.order != n || report.engine_version != ENGINE_VERSION {
        return Ok(None);
    }
    match report.verify_witnesses() {
        Ok(()) => Ok(Some(report)),
        Err(Error::Disagreement(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn store_cached(dir: &Path, report: &ClassificationReport) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, report.order);
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string(report)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

/// [`classify_order`] through the cache in `dir`, if any.
pub fn classify_order_cached(n: usize, beyond_paper: bool, dir: Option<&Path>) -> Result<ClassificationReport> {
    check_order(n, beyond_paper)?;
    if let Some(dir) = dir {
        if let Some(r) = load_cached(dir, n)? {
            return Ok(r);
        }
    }
    let report = classify_order(n, beyond_paper)?;
    if let Some(dir) = dir {
        store_cached(dir, &report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_count(2), Some(1));
        assert_eq!(closed_form_count(13), Some(12));
        assert_eq!(closed_form_count(10), Some(5));
        assert_eq!(closed_form_count(9), Some(11));
        assert_eq!(closed_form_count(4), Some(3));
        assert_eq!(closed_form_count(8), None);
        assert_eq!(closed_form_count(12), None);
        assert_eq!(closed_form_count(1), None);
    }

    #[test]
    fn trivial_order() {
        let r = classify_order(1, false).unwrap();
        assert_eq!(r.class_count(), 1);
        assert!(r.complete);
    }

    #[test]
    fn single_groups() {
        let d4 = classify_spec(&"D4".parse().unwrap()).unwrap();
        assert_eq!(d4.pairs.len(), 5);
        assert_eq!(d4.class_count(), 4);
        let e8 = classify_spec(&"C2xC2xC2".parse().unwrap()).unwrap();
        assert_eq!(e8.class_count(), 6);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(classify_order(16, false), Err(Error::Input(_))));
        assert!(matches!(classify_order(17, true), Err(Error::Capacity { .. })));
        assert!(matches!(classify_order(0, false), Err(Error::Input(_))));
    }

    #[test]
    fn tables_render() {
        let r = classify_order(4, false).unwrap();
        let md = emit_table(&r, TableFormat::Markdown).unwrap();
        assert!(md.contains("|Q_GA(4)| = 3"));
        let csv = emit_table(&r, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 4);
        let json: serde_json::Value = serde_json::from_str(&emit_table(&r, TableFormat::Json).unwrap()).unwrap();
        assert_eq!(json["classes"], 3);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = classify_order_cached(6, false, Some(dir.path())).unwrap();
        assert!(cache_path(dir.path(), 6).exists());
        let b = classify_order_cached(6, false, Some(dir.path())).unwrap();
        assert_eq!(a, b);
    }
}
