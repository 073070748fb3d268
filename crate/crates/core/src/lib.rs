//! Generalized Alexander quandles `Q(G, ψ)` of finite groups: construction,
//! invariants, isomorphism testing and classification by order.

pub mod catalog;
pub mod classify;
pub mod dihedral;
pub mod error;
pub mod group;
pub mod invariants;
pub mod iso;
pub mod morphism;
pub mod quandle;
pub mod reference;
pub mod verify;

pub use catalog::{named_automorphism, GroupSpec};
pub use classify::{ClassificationReport, TableFormat};
pub use dihedral::DihedralAut;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupMap, Subgroup};
pub use invariants::{AlexanderQuandle, InvariantProfile};
pub use iso::{IsoResult, IsoVerdict, Method};
pub use morphism::AutomorphismGroup;
pub use quandle::Quandle;
pub use verify::{Claim, Verifier};
