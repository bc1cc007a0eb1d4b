//! Numerical laboratory for weighted admissibility questions.
//!
//! The crate implements, at desk scale, the objects connecting four a priori
//! different measurements of an observation operator against a semigroup or a
//! shift:
//!
//! * weighted admissibility constants (time-integral or discrete-sum Gram forms),
//! * resolvent growth along the corresponding frequency domain,
//! * Carleson one-box constants of the defining measure,
//! * Riesz capacities of the sets carrying the measure.
//!
//! Everything is finite and atomic: measures are finite sums of point masses,
//! capacities are solved on grids, suprema are taken over documented finite
//! families. Each module states the convention it uses (box edges, branch
//! cuts, grid layouts) so that the cross-checks in `tests/` are meaningful.
//!
//! Modules:
//! * [`measure`] — atomic measures, Carleson boxes, one-box constants,
//!   Cantor generators and stacked (layered) measures.
//! * [`capacity`] — Riesz kernels, grid capacities, Poisson extensions.
//! * [`halfplane`] — multiplication semigroup on a half-plane measure:
//!   admissibility Gram, resolvent suprema, Laplace embeddings, analytic
//!   witness functions.
//! * [`disk`] — normal-operator model on a disk measure: discrete
//!   admissibility, resolvent integrals, embedding ratios.
//! * [`spaces`] — coefficient norms, area norms, Bloch seminorms, Green-window
//!   seminorms, a Carleson test for BMOA membership, lacunary witnesses.
//! * [`hankel`] — weighted Hankel matrices of the shift system, operator
//!   norms, shift resolvent norms.
//! * [`experiment`] — reproducible experiment drivers behind the CLI.

// Validators are written `if !(x > 0.0 && ...)` on purpose: the negated form
// also rejects NaN, which a `x <= 0.0` rewrite would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod disk;
pub mod error;
pub mod experiment;
pub mod gamma;
pub mod halfplane;
pub mod hankel;
pub mod linalg;
pub mod measure;
pub mod oracle;
pub mod spaces;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
