//! Certificates of (generalized) strict diagonal dominance and eigenvalue
//! inclusion regions for dense complex matrices.
//!
//! The library decides SDD / Z / M / H-matrix structure with verifiable
//! diagonal-scaling certificates, evaluates a large catalog of dominance
//! criteria built from pair-function inequalities over row/column sum
//! functionals, and constructs the matching inclusion regions (disks,
//! ovals of Cassini, power-mean ovals) together with a dense eigenvalue
//! oracle that checks every spectrum point against every region family.

pub mod classify;
pub mod criteria;
pub mod eigen;
pub mod gfun;
pub mod matrix;
pub mod mm;
pub mod raster;
pub mod regions;
pub mod report;
pub mod structure;
#[cfg(test)]
pub(crate) mod testutil;

pub use classify::{classify_h, is_m_matrix, is_sdd, spectral_radius_nonneg, ClassificationReport};
pub use criteria::{catalog, check_criterion, sweep_criteria, CriterionSpec, SweepPlan};
pub use eigen::{eigenvalues, verify_inclusion, Spectrum};
pub use gfun::{
    check_pair_condition, eval_gfunction, eval_pair_function, GFunction, PairFunctionSpec,
    PairValueGrid,
};
pub use matrix::{Axis, ComplexMatrix, PositiveScaling, SumVector};
pub use raster::{approx_intersection, check_containment, rasterize, GridMask, GridParams};
pub use regions::{build_region_set, Region, RegionDef, RegionIndex, RegionSet};
pub use structure::{frobenius_normal_form, is_irreducible, tilde_sums, FrobeniusForm};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have order at least 1")]
    Empty,
    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scaling component {index} is not strictly positive and finite")]
    InvalidScaling { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown catalog id: {0}")]
    UnknownCriterion(String),
    #[error("missing scaling for weighted criterion {0}")]
    MissingScaling(String),
    #[error("k = {k} out of range for definition {def} (valid 1..={max})")]
    KOutOfRange { def: String, k: usize, max: usize },
    #[error("iteration did not converge after {iterations} steps: {context}")]
    NonConvergence { context: String, iterations: usize },
    #[error("matrix order {n} exceeds the eigenvalue solver cap {cap}")]
    OrderCap { n: usize, cap: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
