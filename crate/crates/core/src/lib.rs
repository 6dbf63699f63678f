//! Exact combinatorics and toric geometry of equivelar triangulations of the
//! torus: Stanley-Reisner ideals, the binomial versal deformation space, its
//! cones and polytopes, symmetry groups, and the smoothing family of the
//! 7-vertex torus.

pub mod components;
pub mod deform;
pub mod error;
pub mod family;
pub mod exactlinalg;
pub mod par;
pub mod polyhedra;
pub mod srideal;
pub mod symmetry;
pub mod torus;

pub use error::{Error, Result};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
