//! Batch evaluation over independent point sets.
//!
//! Every operation in this crate is a pure function, so batches parallelize
//! trivially. With the `parallel` feature (on by default) the `*_batch`
//! entry points fan out over rayon's thread pool; without it they fall back
//! to the sequential versions. Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::characterize::{classify, DiagnosticsReport, ToleranceConfig};
use crate::linalg::PointSet;
use crate::simplex::{construct, SimplexSpec};
use crate::Result;

/// Classifies each point set, in parallel when enabled.
pub fn classify_batch(
    sets: &[PointSet],
    tol: &ToleranceConfig,
) -> Result<Vec<DiagnosticsReport>> {
    #[cfg(feature = "parallel")]
    {
        sets.par_iter().map(|u| classify(u, tol)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        classify_batch_seq(sets, tol)
    }
}

/// Sequential fallback for [`classify_batch`].
pub fn classify_batch_seq(
    sets: &[PointSet],
    tol: &ToleranceConfig,
) -> Result<Vec<DiagnosticsReport>> {
    sets.iter().map(|u| classify(u, tol)).collect()
}

/// Constructs each requested simplex, in parallel when enabled.
pub fn construct_batch(specs: &[SimplexSpec]) -> Vec<PointSet> {
    #[cfg(feature = "parallel")]
    {
        specs.par_iter().map(construct).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        construct_batch_seq(specs)
    }
}

/// Sequential fallback for [`construct_batch`].
pub fn construct_batch_seq(specs: &[SimplexSpec]) -> Vec<PointSet> {
    specs.iter().map(construct).collect()
}
