//! Axial response of a single energy pile under combined thermal and
//! mechanical loading.
//!
//! The pile is a thermo-elastic bar embedded in a linear (Winkler-type) shear
//! interface of stiffness `k_s`, with an elastic head spring `k_h` and a tip
//! that is either end-bearing (`u(0) = 0`) or fully floating (`σ(0) = 0`).
//! Coordinates run upward from the tip (`x = 0`) to the head (`x = L`).
//!
//! - [`model`]: domain types, validation and grids (strict SI units).
//! - [`analytic`]: closed-form displacement, strain, stress and shear fields.
//! - [`oracle`]: independent finite-difference solution of the same boundary
//!   value problem, used for cross-validation.
//! - [`study`]: canonical cases, load scenarios, sweeps, figure datasets and
//!   the claims report.
//! - [`cli`]: command-line front end, config ingestion and file output.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod study;

pub use error::{Error, Result, ValidationError, Violation};
