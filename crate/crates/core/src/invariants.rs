//! Invariants of generalized Alexander quandles `Q(G, ψ)`.
//!
//! `P` is the orbit of the identity under `Inn(Q)`; it always coincides with
//! the subgroup generated by `{x·ψ(x)⁻¹}`, and both are computed every time.
//! `P²` is the same construction applied to `Q(P, ψ|_P)`.

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, semidirect_cyclic, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{subgroup_as_group, FiniteGroup, GroupMap, Subgroup, MAX_GROUP_ORDER};
use crate::morphism::{groups_isomorphic, AutomorphismGroup};
use crate::quandle::{general_alexander, inner_group, PermGroup, Quandle};

pub const PROFILE_SCHEMA: &str = "profile.v1";

/// `P`, checked against `⟨x·ψ(x)⁻¹⟩`.
pub fn compute_p(g: &FiniteGroup, psi: &GroupMap) -> Result<Subgroup> {
    psi.require_automorphism(g)?;
    let n = g.order();
    // s_x(y) = x·ψ(x⁻¹y)
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for x in 0..n {
            let z = g.mul(x, psi.apply(g.mul(g.inv(x), y)));
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    let orbit = Subgroup::from_mask(seen);
    let displacements: Vec<usize> = (0..n).map(|x| g.mul(x, g.inv(psi.apply(x)))).collect();
    let generated = g.generated_subgroup(&displacements);
    if orbit != generated {
        return Err(Error::Internal(format!(
            "orbit of e {:?} differs from the displacement subgroup {:?}",
            orbit.members(),
            generated.members()
        )));
    }
    Ok(orbit)
}

/// `P²`, as a subgroup of `G`.
pub fn compute_p2(g: &FiniteGroup, psi: &GroupMap) -> Result<Subgroup> {
    let p = compute_p(g, psi)?;
    let (pg, embed) = subgroup_as_group(g, &p)?;
    let psi_p = psi.restrict(&p)?;
    let inner = compute_p(&pg, &psi_p)?;
    Ok(Subgroup::from_members(
        g.order(),
        inner.members().iter().map(|&i| embed[i]).collect(),
    ))
}

/// `{x : x·H·ψ(x)⁻¹ = H}` for an arbitrary subset `H`.
pub fn twisted_normalizer(g: &FiniteGroup, psi: &GroupMap, h: &Subgroup) -> Result<Subgroup> {
    psi.require_automorphism(g)?;
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| {
            let tail = g.inv(psi.apply(x));
            h.members().iter().all(|&y| h.contains(g.mul(g.mul(x, y), tail)))
        })
        .collect();
    let tn = Subgroup::from_members(g.order(), members);
    g.check_subgroup(&tn)
        .map_err(|e| Error::Internal(format!("twisted normalizer is not a subgroup: {e}")))?;
    Ok(tn)
}

/// `P²` is normal in `G`.
pub fn check_p1(g: &FiniteGroup, psi: &GroupMap) -> Result<bool> {
    let p2 = compute_p2(g, psi)?;
    Ok(g.is_normal_unchecked(&p2))
}

/// `P² = {s_p(e) : p ∈ P}`.
pub fn check_p2(g: &FiniteGroup, psi: &GroupMap) -> Result<bool> {
    let p = compute_p(g, psi)?;
    let p2 = compute_p2(g, psi)?;
    Ok(p2 == displacement_image(g, psi, &p))
}

/// `{s_x(e) : x ∈ X} = {x·ψ(x)⁻¹ : x ∈ X}`.
fn displacement_image(g: &FiniteGroup, psi: &GroupMap, xs: &Subgroup) -> Subgroup {
    Subgroup::from_members(
        g.order(),
        xs.members().iter().map(|&x| g.mul(x, g.inv(psi.apply(x)))).collect(),
    )
}

/// A generalized Alexander quandle with its core invariants precomputed.
pub struct AlexanderQuandle {
    pub spec: Option<GroupSpec>,
    pub group: Arc<FiniteGroup>,
    pub psi: GroupMap,
    pub quandle: Quandle,
    pub p: Subgroup,
    pub p2: Subgroup,
    pub fix: Subgroup,
    pub psi_order: usize,
    profile: OnceLock<InvariantProfile>,
}

impl std::fmt::Debug for AlexanderQuandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q({}, {:?})", self.group.name(), self.psi.images)
    }
}

impl AlexanderQuandle {
    pub fn new(group: Arc<FiniteGroup>, psi: GroupMap, spec: Option<GroupSpec>) -> Result<Self> {
        let quandle = general_alexander(&group, &psi)?;
        let p = compute_p(&group, &psi)?;
        let p2 = compute_p2(&group, &psi)?;
        let fix = psi.fixed_subgroup();
        let psi_order = psi.order();
        Ok(AlexanderQuandle {
            spec,
            group,
            psi,
            quandle,
            p,
            p2,
            fix,
            psi_order,
            profile: OnceLock::new(),
        })
    }

    /// `Q(G, ψ)` for a catalog group and an automorphism name.
    pub fn from_names(group: &str, automorphism: &str) -> Result<Self> {
        let spec: GroupSpec = group.parse()?;
        Self::from_spec(&spec, automorphism)
    }

    pub fn from_spec(spec: &GroupSpec, automorphism: &str) -> Result<Self> {
        let psi = catalog::named_automorphism(spec, automorphism)?;
        Self::new(catalog::build(spec)?, psi, Some(spec.clone()))
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn label(&self) -> String {
        format!("Q({}, {:?})", self.group.name(), self.psi.images)
    }

    pub fn p1(&self) -> bool {
        self.group.is_normal_unchecked(&self.p2)
    }

    pub fn p2_holds(&self) -> bool {
        self.p2 == displacement_image(&self.group, &self.psi, &self.p)
    }

    /// `{s_a(e) : a ∈ G}`.
    pub fn identity_orbit_image(&self) -> Subgroup {
        displacement_image(&self.group, &self.psi, &Subgroup::whole(self.order()))
    }

    /// `P` as a group, with its embedding and `ψ|_P`.
    pub fn p_group(&self) -> Result<(FiniteGroup, Vec<usize>, GroupMap)> {
        let (pg, embed) = subgroup_as_group(&self.group, &self.p)?;
        let psi_p = self.psi.restrict(&self.p)?;
        Ok((pg, embed, psi_p))
    }

    pub fn twisted_normalizer_of_p2(&self) -> Result<Subgroup> {
        twisted_normalizer(&self.group, &self.psi, &self.p2)
    }

    pub fn profile(&self) -> Result<&InvariantProfile> {
        if let Some(p) = self.profile.get() {
            return Ok(p);
        }
        let computed = self.compute_profile()?;
        Ok(self.profile.get_or_init(|| computed))
    }

    fn compute_profile(&self) -> Result<InvariantProfile> {
        let (pg, _, psi_p) = self.p_group()?;
        let (p_iso_type, psi_restricted_class, psi_restricted_label) = describe_restriction(&pg, &psi_p)?;
        let (p2g, _) = subgroup_as_group(&self.group, &self.p2)?;
        let p2_iso_type = describe_group(&p2g);
        let inn = inner_group(&self.quandle)?;
        if inn.len() != self.p.len() * self.psi_order {
            return Err(Error::Internal(format!(
                "|Inn| = {} but |P|·ord ψ = {}",
                inn.len(),
                self.p.len() * self.psi_order
            )));
        }
        Ok(InvariantProfile {
            schema: PROFILE_SCHEMA.to_string(),
            group_order: self.order(),
            psi_order: self.psi_order,
            fix_size: self.fix.len(),
            p_iso_type,
            p2_iso_type,
            p_fix_size: self.p.intersection(&self.fix).len(),
            psi_restricted_class,
            psi_restricted_label,
            tn_size: self.twisted_normalizer_of_p2()?.len(),
            p1: self.p1(),
            p2_flag: self.p2_holds(),
            inn_size: inn.len(),
        })
    }

    /// `Inn(Q)` and its comparison with `P ⋊ C_m` and `P × C_m`.
    pub fn inn_structure(&self) -> Result<(PermGroup, InnReport)> {
        let inn = inner_group(&self.quandle)?;
        let (pg, _, psi_p) = self.p_group()?;
        let m = self.psi_order;
        let centerless = pg.center().len() == 1;
        let psi_p_inner = AutomorphismGroup::is_inner(&pg, &psi_p);
        let mut report = InnReport {
            inn_size: inn.len(),
            p_size: pg.order(),
            m,
            size_matches: inn.len() == pg.order() * m,
            p_centerless: centerless,
            psi_p_inner,
            semidirect_isomorphic: None,
            direct_isomorphic: None,
        };
        if inn.len() <= MAX_GROUP_ORDER {
            let inn_group = inn.to_group("Inn")?;
            let cm = GroupSpec::Cyclic(m).build()?;
            let semi = semidirect_cyclic(&pg, m, &psi_p)?;
            let direct = catalog::direct_product(&pg, &cm)?;
            report.semidirect_isomorphic = Some(groups_isomorphic(&inn_group, &semi).is_some());
            report.direct_isomorphic = Some(groups_isomorphic(&inn_group, &direct).is_some());
        }
        Ok((inn, report))
    }
}

/// How `Inn(Q)` compares with `P ⋊ C_m` and `P × C_m`, `m = ord ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnReport {
    pub inn_size: usize,
    pub p_size: usize,
    pub m: usize,
    pub size_matches: bool,
    pub p_centerless: bool,
    pub psi_p_inner: bool,
    /// Computed when `|Inn|` is within the Cayley-table bound.
    pub semidirect_isomorphic: Option<bool>,
    pub direct_isomorphic: Option<bool>,
}

impl InnReport {
    /// For centerless `P`: `Inn ≅ P × C_m` exactly when `ψ|_P` is inner.
    /// `None` when it does not apply or was not computed.
    pub fn dichotomy_holds(&self) -> Option<bool> {
        if !self.p_centerless {
            return None;
        }
        self.direct_isomorphic.map(|d| d == self.psi_p_inner)
    }
}

/// Quandle invariants of `Q(G, ψ)`, flat and comparable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub schema: String,
    pub group_order: usize,
    pub psi_order: usize,
    pub fix_size: usize,
    pub p_iso_type: String,
    pub p2_iso_type: String,
    pub p_fix_size: usize,
    /// Conjugacy class of `ψ|_P` in `Aut(P)`, after transport to the catalog copy of `P`.
    pub psi_restricted_class: String,
    /// Readable form of the same class, e.g. `x3` for multiplication on a cyclic `P`.
    pub psi_restricted_label: String,
    pub tn_size: usize,
    pub p1: bool,
    pub p2_flag: bool,
    pub inn_size: usize,
}

impl InvariantProfile {
    /// The first field on which two profiles differ.
    pub fn separator(&self, other: &InvariantProfile) -> Option<&'static str> {
        let checks: [(&'static str, bool); 11] = [
            ("group_order", self.group_order != other.group_order),
            ("psi_order", self.psi_order != other.psi_order),
            ("fix_size", self.fix_size != other.fix_size),
            ("p_iso_type", self.p_iso_type != other.p_iso_type),
            ("p2_iso_type", self.p2_iso_type != other.p2_iso_type),
            ("p_fix_size", self.p_fix_size != other.p_fix_size),
            ("psi_restricted_class", self.psi_restricted_class != other.psi_restricted_class),
            ("tn_size", self.tn_size != other.tn_size),
            ("p1", self.p1 != other.p1),
            ("p2_flag", self.p2_flag != other.p2_flag),
            ("inn_size", self.inn_size != other.inn_size),
        ];
        checks.iter().find(|(_, differs)| *differs).map(|(name, _)| *name)
    }
}

/// Catalog name of a group, or a descriptor built from its order data.
pub fn describe_group(g: &FiniteGroup) -> String {
    match catalog::identify(g) {
        Some((spec, _)) => spec.to_string(),
        None => fallback_descriptor(g),
    }
}

fn fallback_descriptor(g: &FiniteGroup) -> String {
    let orders: Vec<String> = g.order_profile().iter().map(|o| o.to_string()).collect();
    format!(
        "ord{}:{}:{}",
        g.order(),
        if g.is_abelian() { "ab" } else { "nab" },
        orders.join(".")
    )
}

/// `(type of P, class id of ψ|_P, readable class label)`.
fn describe_restriction(pg: &FiniteGroup, psi_p: &GroupMap) -> Result<(String, String, String)> {
    let fix = psi_p.fixed_subgroup().len();
    let ord = psi_p.order();
    let Some((spec, iso)) = catalog::identify(pg) else {
        let class = format!("ord{ord}/fix{fix}");
        return Ok((fallback_descriptor(pg), class.clone(), class));
    };
    let entry = catalog::entry(&spec)?;
    let transported = iso.compose(&psi_p.compose(&iso.inverse()));
    let aut = match entry.automorphisms() {
        Ok(a) => a,
        Err(Error::Capacity { .. }) => {
            let class = format!("ord{ord}/fix{fix}");
            return Ok((spec.to_string(), class.clone(), class));
        }
        Err(e) => return Err(e),
    };
    let k = aut.class_index(&transported)?;
    let label = match spec {
        _ if psi_p.is_identity() => "id".to_string(),
        GroupSpec::Cyclic(_) => format!("x{}", transported.apply(1)),
        _ => format!("class {k} (ord {ord}, fix {fix})"),
    };
    Ok((spec.to_string(), format!("{spec}#{k}"), label))
}
