//! Exact certification of higher-cohomology vanishing for torus-equivariant
//! reflexive sheaves on smooth projective toric varieties, described by Weil
//! decorations.
//!
//! Everything is exact: lattice data in `i64`, linear algebra and linear
//! programming over `BigRational`.

pub mod cohomology;
pub mod decoration;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod mori;
pub mod polytope;
pub mod resolution;
pub mod schema;
pub mod vanishing;

pub use cohomology::{Engine, GradedCohomology, ToricSheaf};
pub use decoration::{DecorationSummary, Filtration, Stratum, WeilDecoration};
pub use error::{Error, Result};
pub use fan::{Cone, Fan, FanSpec, LatticeVector, Wall};
pub use mori::{MoriCone, PrimitiveCollection};
pub use polytope::{QPolytope, TDivisor};
pub use resolution::{ResolutionComplex, StrataChain};
pub use vanishing::{Bounds, CriterionReport, GeoReport};
