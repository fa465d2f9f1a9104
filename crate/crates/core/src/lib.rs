//! Finite decision procedures for subgroups of right-angled Artin groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`raag`] holds words, the Hermiller–Meier moves, canonical normal forms,
//!   the syllable partial order and cyclic reduction.
//! * [`cube`] builds labeled cube complexes over the Salvetti complex by
//!   folding and square completion, and answers membership and enumeration
//!   queries against a verified core.
//! * [`surface`] is the symbolic surface: coincidence graph plus a monotone
//!   family of filling generator sets.
//! * [`cococheck`] combines the above into a convex-cocompactness
//!   [`Certificate`](cococheck::Certificate).
//! * [`section8`] is the explicit genus-indexed family with small
//!   curve-complex displacement, together with its span bookkeeping.

pub mod cococheck;
pub mod cube;
pub mod error;
pub mod raag;
pub mod section8;
pub mod surface;

pub use error::{Error, Result};
