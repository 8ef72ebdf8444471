//! Minimal dense linear algebra: means, centering, scatter and covariance,
//! squared-distance matrices, Gram–Schmidt orthonormalization, and seeded
//! random rigid motions.
//!
//! Everything here is a pure function of its inputs and single-threaded;
//! callers are free to parallelize over independent point sets.

mod matrix;
mod motion;
mod pointset;

pub use matrix::Matrix;
pub use motion::{apply_motion, random_rotation, RigidMotion};
pub use pointset::PointSet;

/// Relative factor for dropping near-dependent vectors in [`gram_schmidt`]:
/// a residual below this times the largest input norm counts as zero.
pub const RANK_DROP_FACTOR: f64 = 1e-10;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Coordinatewise arithmetic mean of the point set.
pub fn mean(u: &PointSet) -> Vec<f64> {
    let n = u.len() as f64;
    let mut out = vec![0.0; u.dim()];
    for point in u.iter() {
        for (acc, &c) in out.iter_mut().zip(point) {
            *acc += c;
        }
    }
    for acc in &mut out {
        *acc /= n;
    }
    out
}

/// Translates the set so its mean is the zero vector.
pub fn center(u: &PointSet) -> PointSet {
    let m = mean(u);
    let centered = u
        .iter()
        .map(|point| point.iter().zip(&m).map(|(c, mc)| c - mc).collect())
        .collect();
    PointSet::from_points(centered).expect("centering preserves validity")
}

/// Scatter matrix: the sum of outer products of the centered points.
///
/// The input is recentered internally, so the result is invariant under
/// translation. Equals n times the covariance matrix.
pub fn scatter(u: &PointSet) -> Matrix {
    let c = center(u);
    let p = u.dim();
    let mut b = Matrix::zeros(p, p);
    for point in c.iter() {
        for i in 0..p {
            for j in 0..p {
                b[(i, j)] += point[i] * point[j];
            }
        }
    }
    b
}

/// Covariance matrix: scatter divided by the number of points.
pub fn covariance(u: &PointSet) -> Matrix {
    scatter(u).scaled(1.0 / u.len() as f64)
}

/// The n x n matrix of squared interpoint distances (zero diagonal).
pub fn distance_matrix(u: &PointSet) -> Matrix {
    let n = u.len();
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d2 = squared_distance(u.point(i), u.point(j));
            d[(i, j)] = d2;
            d[(j, i)] = d2;
        }
    }
    d
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
///
/// Returns a maximal orthonormal set spanning the input vectors, in input
/// order. Vectors whose residual falls below [`RANK_DROP_FACTOR`] times the
/// largest input norm are dropped, so degenerate inputs simply yield a
/// shorter basis.
pub fn gram_schmidt(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let max_norm = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let drop_tol = RANK_DROP_FACTOR * max_norm;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        // two projection sweeps keep the basis orthonormal to machine precision
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let len = norm(&w);
        if len > drop_tol {
            for wi in &mut w {
                *wi /= len;
            }
            basis.push(w);
        }
    }
    basis
}
