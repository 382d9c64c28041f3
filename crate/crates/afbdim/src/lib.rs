//! Plane order diagrams: exact validation, accessibility from below, and
//! constructive small realizers.
//!
//! The crate takes a drawing of an order diagram (rational coordinates,
//! y-monotone polyline edges, no crossings), derives its combinatorial
//! embedding, decides whether every minimal element is accessible from below,
//! and when it is, constructs a realizer of at most six linear extensions.
//! A brute-force dimension search cross-checks the construction on small
//! instances.
//!
//! Modules:
//! - [`poset`]: posets, linear extensions, reversibility, alternating cycles
//! - [`dimension`]: exact dimension by backtracking over reversible coverings
//! - [`diagram`]: plane diagrams and their exact geometric validation
//! - [`embedding`]: rotation system, faces, accessibility, envelope order
//! - [`classify`]: the depth-first left/right/inside/outside classification
//! - [`paths`]: witnessing paths, meets over minimal pairs, lens regions
//! - [`reduce`]: the surgery giving every pair a minimal proxy
//! - [`realizer`]: type labels 1A..2E, reversible covers, realizer pipelines
//! - [`corpus`]: deterministic generators and differential cross-checks
//! - [`svg`]: deterministic SVG rendering with overlays

#![forbid(unsafe_code)]

pub mod classify;
pub mod corpus;
pub mod diagram;
pub mod dimension;
pub mod embedding;
pub mod error;
pub mod paths;
pub mod poset;
pub mod predicates;
pub mod rational;
pub mod realizer;
pub mod reduce;
pub mod svg;

pub use error::{Error, Result};
pub use poset::{AlternatingCycle, LinearExtension, Poset, Realizer, ReverseOutcome};
