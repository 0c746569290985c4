//! Calculus of projections and idempotents via Moore-Penrose inverses,
//! over two interchangeable matrix backends.
//!
//! The crate is layered:
//!
//! * [`ring`] defines the abstract *-ring surface every backend satisfies;
//! * [`exact`] implements it over the Gaussian rationals (identities hold
//!   literally or not at all), [`float`] over complex doubles (identities
//!   hold up to a configured tolerance, with marginal rank decisions
//!   flagged rather than trusted);
//! * [`subspace`] is an oracle for range and null-space geometry that
//!   never uses an MP inverse, so it can independently judge range claims
//!   made by MP formulas;
//! * [`pair`] and [`idempotent`] implement the verified calculus: block
//!   identities of a projection pair, closed forms for `(1-pq)^+`,
//!   join/meet constructions, the oblique idempotents `E`, `F`, `G` with
//!   their witnesses, and the equality equivalences that tie formulas to
//!   lattice geometry;
//! * [`report`] carries the statement catalog and the deterministic
//!   verdict format.

pub mod exact;
pub mod float;
pub mod idempotent;
pub mod pair;
pub mod report;
pub mod ring;
pub mod subspace;

/// Everything the verification harness needs from a backend: ring
/// arithmetic with MP inverses, the subspace oracle primitives, and a
/// stable fingerprint encoding.
pub trait Backend: subspace::SubspaceBackend + report::StableDigest {}

impl<T: subspace::SubspaceBackend + report::StableDigest> Backend for T {}
