//! Finite categories of onto order-preserving / order-decreasing partial maps
//! on `{1..n}`, and the invariants of their category algebras.
//!
//! The crate materializes the categories `EO_n` (order-preserving), `EF_n`
//! (order-decreasing), `EC_n` (both, the partial Catalan case) and the
//! skeleton `SEO_n`, computes radical filtrations, Loewy lengths, quivers,
//! Cartan matrices and block decompositions, verifies quiver presentations by
//! congruence closure on path categories, and cross-checks every closed-form
//! count against a brute-force oracle.

pub mod category;
pub mod delta;
pub mod enumeration;
pub mod invariants;
pub mod maps;
pub mod matrix;
pub mod presentation;
pub mod report;

pub use category::{
    build_category, build_skeleton_seo, check_structure, CategoryKind, FiniteCategory,
};
pub use maps::{compose, enumerate_hom, enumerate_monoid, Family, Morphism, SubsetOfN};

use maps::subset_to_string;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Composition `g . f` was requested with `cod(f) != dom(g)`.
    #[error(
        "endpoint mismatch: inner codomain {} differs from outer domain {}",
        subset_to_string(inner_cod),
        subset_to_string(outer_dom)
    )]
    EndpointMismatch {
        inner_cod: SubsetOfN,
        outer_dom: SubsetOfN,
    },
    /// A size or path-count cap was exceeded.
    #[error("resource limit exceeded: {what} = {requested} is above the cap {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    /// Domain reduction hit an element of the target set that dominates the
    /// whole current domain; the hom-set is empty.
    #[error(
        "infeasible reduction: no element of {} is >= {element}",
        subset_to_string(current)
    )]
    Infeasible { current: SubsetOfN, element: usize },
    /// A value violates a structural invariant of its type.
    #[error("invalid construction: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
