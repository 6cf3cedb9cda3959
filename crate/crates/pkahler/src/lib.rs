//! Exact positivity cones, invariant-form complexes, and generalized
//! p-Kähler detection with machine-checkable certificates.
//!
//! The crate decides, for a finite-dimensional invariant-form model of a
//! compact complex quotient, whether the model carries a generalized
//! p-Kähler structure. Membership questions become exact cone–subspace
//! separation problems: each verdict ships either a transverse form inside
//! the class subspace (primal certificate) or a nonnegative combination of
//! Dirac currents at simple vectors annihilating it (dual certificate),
//! both re-checkable in exact rational arithmetic.

pub mod scalar;

pub mod exterior;
pub mod cli;
pub mod detector;
pub mod grassmann;
pub mod positivity;
pub mod linalg;
pub mod model;
pub mod simplex;

pub use scalar::Scalar;
