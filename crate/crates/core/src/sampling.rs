//! Seeded Gaussian sampling for perturbation studies and negative controls.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::PointSet;
use crate::{Error, Result};

/// n points in R^dim with iid N(0, scale²) coordinates, drawn from ChaCha8
/// with the given seed.
pub fn gaussian_cloud(n: usize, dim: usize, scale: f64, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if dim == 0 {
        return Err(Error::Domain(
            "points must have at least one coordinate".to_string(),
        ));
    }
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::Domain(format!(
            "scale must be a positive finite number, got {scale}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim)
        .map(|_| {
            let g: f64 = StandardNormal.sample(&mut rng);
            scale * g
        })
        .collect();
    PointSet::from_flat(dim, coords)
}

/// Adds iid N(0, sigma²) noise to every coordinate. A sigma of zero returns
/// the input unchanged.
pub fn add_gaussian_noise(u: &PointSet, sigma: f64, seed: u64) -> Result<PointSet> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::Domain(format!(
            "noise scale must be nonnegative and finite, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(u.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noisy = u
        .iter()
        .map(|point| {
            point
                .iter()
                .map(|&c| {
                    let g: f64 = StandardNormal.sample(&mut rng);
                    c + sigma * g
                })
                .collect()
        })
        .collect();
    PointSet::from_points(noisy)
}
