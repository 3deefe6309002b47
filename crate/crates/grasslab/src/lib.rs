//! Exact-arithmetic toolkit for first-order systems of two PDEs for two
//! functions of three independent variables.
//!
//! The crate decides structural properties of such systems (non-degeneracy,
//! integrability, linearisability, linear degeneracy), computes the attached
//! conformal structure and its Einstein-Weyl data, verifies Lax pairs, applies
//! projective transformations, and builds the associated four-dimensional
//! geometry with its canonical connection.

pub mod exprcore;
pub mod grassmann;
pub mod jetspace;
pub mod linalg;
pub mod weylgeom;
