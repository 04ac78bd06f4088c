//! Exact arithmetic on irreducible root systems and the facets of their root polytopes.
//!
//! Roots are coefficient vectors over the simple roots in Bourbaki numbering. Everything
//! is computed with integers or rationals; no floating point enters a verdict.
pub mod crossing;
pub mod dynkin;
pub mod error;
pub mod geometry;
pub mod ideals;
pub use ideals::{FacetIdeal, NilradicalType, RootIdeal};
pub mod rootsys;
pub mod triangulate;
pub mod weyl;
pub use rootsys::{Family, Root, RootSystem, RootSystemSpec};

pub use error::{Error, Result};
pub use geometry::Rational;

/// Formats a rational as `p/q`, the serialized form used everywhere.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
