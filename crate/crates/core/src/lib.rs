//! Support-number coordinates for convex polygons, convex 3-polytopes and
//! Fuchsian polyhedra: area forms, mixed volumes, their signatures, the
//! Minkowski and Alexandrov-Fenchel inequalities and flat cone metrics.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod fuchsian;
pub mod linalg;
pub mod polygon;
pub mod polytope;
pub mod surface;

pub use error::{Error, Result};
