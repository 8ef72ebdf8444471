#![forbid(unsafe_code)]

//! Regular simplices and the sphericity of their scatter matrices.
//!
//! A set of n = p+1 points in R^p lies at the vertices of a regular simplex
//! (all pairwise distances equal, to √(2σ²)) exactly when the scatter matrix
//! of the set is σ² times the identity. This crate constructs such point sets
//! in arbitrary dimension and decides the equivalence numerically in both
//! directions:
//!
//! - [`simplex`] builds regular simplices by two independent methods (an
//!   inductive apex construction and a factorization of the centering
//!   projection) and computes the geometric quantities — circumradius,
//!   centroid shift, apex height — that the methods rest on.
//! - [`characterize`] classifies arbitrary point sets via their distance
//!   matrix and via their scatter matrix, reports residuals against
//!   configurable tolerances, and cross-validates the two routes.
//! - [`linalg`] supplies the small dense kernel: means, centering, scatter
//!   and covariance, squared-distance matrices, Gram–Schmidt, and seeded
//!   Haar-random rotations.
//! - [`batch`] maps the classifiers and constructors over slices, in
//!   parallel when the `parallel` feature (default) is enabled.
//!
//! All arithmetic is in `f64`. Every random quantity is driven by an explicit
//! u64 seed through ChaCha8, so results are reproducible bit for bit.

pub mod batch;
pub mod characterize;
pub mod linalg;
pub mod sampling;
pub mod simplex;

pub use characterize::{
    backward_distance_recovery, classify, is_equidistant, projection_checks, sphericity,
    DiagnosticsReport, ProjectionReport, ToleranceConfig, Verdict,
};
pub use linalg::{
    apply_motion, center, covariance, distance_matrix, gram_schmidt, mean, random_rotation,
    scatter, Matrix, PointSet, RigidMotion,
};
pub use simplex::{
    construct, construct_incremental, construct_projection, lemma_quantities, ConstructionMethod,
    LemmaQuantities, SimplexSpec,
};

use std::fmt;

/// Absolute floor below which a norm is treated as zero.
///
/// Relative tolerances are meaningless on a near-zero operand; comparisons
/// fall back to this absolute bound instead.
pub const NEAR_ZERO: f64 = 1e-12;

/// Errors produced by the public operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A point set with no points was supplied.
    EmptyPointSet,
    /// Two operands disagree on a dimension or element count.
    DimensionMismatch {
        /// The count the operation required.
        expected: usize,
        /// The count it received.
        found: usize,
    },
    /// A NaN or infinite value was found in an input.
    NonFinite {
        /// What was being validated.
        context: &'static str,
    },
    /// A parameter or input lies outside the operation's domain.
    Domain(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPointSet => write!(f, "empty input"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite { context } => write!(f, "non-finite value in {context}"),
            Error::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
