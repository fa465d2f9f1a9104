//! The genus `n+1` family generated by powers of a rotation-like product,
//! with its block normal forms, window constants and curve-graph
//! displacement bounds.

mod bme;
mod constants;
mod displacement;
mod family;
mod order_window;
mod span;
mod star;

pub use bme::{bme_normal_form, bme_symbols, naive_expansion};
pub use constants::{constants, FamilyConstants};
pub use displacement::{displacement_upper, DisplacementBound};
pub use family::{HLetter, HWord, Section8Family, Symbol};
pub use order_window::{verify_order_window, verify_order_window_with, OrderViolation, OrderWindowReport};
pub use span::{disjoint, span_apply, span_apply_syllables, span_of, SpanState, Surface, SurfaceSet};
pub use star::{bullet_table, power_span_proper, verify_star, xbar, ybar, BulletCheck, StarReport, StarViolation};

/// Shorthand for [`Section8Family::new`].
pub fn family(n: u32, big_n: u32) -> crate::Result<Section8Family> {
    Section8Family::new(n, big_n)
}
