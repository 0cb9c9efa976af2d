//! Finite binary transformation groups.
//!
//! A binary action of a finite group G on a finite carrier X is a map
//! α : G × X² → X with `α(gh, x₁, x₂) = α(g, x₁, α(h, x₁, x₂))` and
//! `α(e, x₁, x₂) = x₂`. This crate validates such actions, computes orbits,
//! orbit spaces and saturations, checks structural maps and cross sections,
//! and constructs bi-equivariant extensions — with each structural result
//! encoded as an executable, witness-producing check.
//!
//! Modules:
//!
//! - [`group`] — finite groups as validated Cayley tables, subgroups,
//!   conjugation;
//! - [`action`] — binary actions as validated lookup tables, the two
//!   canonical self-actions, distributivity, the family-of-ordinary-actions
//!   view, binary-operation composition;
//! - [`orbit`] — set application K(A, B), bi-invariance, saturation
//!   fixpoints, orbits, and orbit partitions of distributive actions;
//! - [`section`] — cross sections of the orbit projection as transversals;
//! - [`extension`] — structural maps, the propagation engine for extension
//!   over a saturation, the section-based extension, and isotropy groups;
//! - [`search`] — seeded random generation and witness search;
//! - [`io`] — the JSON file formats.
//!
//! Everything operates on finite discrete carriers, where the topological
//! side conditions of the general theory (continuity, closedness,
//! compactness) hold automatically; only the set-theoretic and algebraic
//! content is represented.

pub mod action;
pub mod extension;
pub mod group;
pub mod io;
pub mod orbit;
pub mod search;
pub mod section;

pub use action::{BinaryAction, BinaryOperation, SelfActionVariant};
pub use extension::{PartialEquivariantMap, StructuralExtension, TotalEquivariantMap};
pub use group::FiniteGroup;
pub use orbit::{CarrierSubset, OrbitPartition};
pub use section::CrossSection;
pub use search::SearchConfig;
