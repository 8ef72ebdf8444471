use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

use super::{gram_schmidt, Matrix, PointSet};

/// Frobenius bound on `O'O - I` accepted when validating a rotation.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Bound on `|det(O) - 1|` accepted when validating a rotation.
pub const DETERMINANT_TOL: f64 = 1e-8;

/// A proper rotation together with a translation, applied as `x -> Ox + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidMotion {
    rotation: Matrix,
    translation: Vec<f64>,
}

impl RigidMotion {
    /// Validates that `rotation` is orthogonal with determinant +1 and that
    /// the translation matches its dimension.
    pub fn new(rotation: Matrix, translation: Vec<f64>) -> Result<Self> {
        if !rotation.is_square() {
            return Err(Error::Domain("rotation matrix must be square".to_string()));
        }
        let dim = rotation.rows();
        if translation.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: translation.len(),
            });
        }
        if !translation.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "translation vector",
            });
        }
        let gram = rotation.transpose().matmul(&rotation);
        let deviation = (&gram - &Matrix::identity(dim)).frobenius_norm();
        if deviation > ORTHOGONALITY_TOL {
            return Err(Error::Domain(format!(
                "rotation is not orthogonal: ||O'O - I|| = {deviation:e}"
            )));
        }
        let det = rotation.determinant();
        if (det - 1.0).abs() > DETERMINANT_TOL {
            return Err(Error::Domain(format!(
                "rotation must be proper: det = {det}"
            )));
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    /// The identity motion in dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        Self {
            rotation: Matrix::identity(dim),
            translation: vec![0.0; dim],
        }
    }

    /// A pure translation.
    pub fn translation_only(translation: Vec<f64>) -> Result<Self> {
        if translation.is_empty() {
            return Err(Error::Domain("translation must be nonempty".to_string()));
        }
        let dim = translation.len();
        Self::new(Matrix::identity(dim), translation)
    }

    /// Replaces the translation part.
    pub fn with_translation(self, translation: Vec<f64>) -> Result<Self> {
        Self::new(self.rotation, translation)
    }

    pub fn dim(&self) -> usize {
        self.rotation.rows()
    }

    pub fn rotation(&self) -> &Matrix {
        &self.rotation
    }

    pub fn translation(&self) -> &[f64] {
        &self.translation
    }

    pub(crate) fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.rotation.mul_vec(x);
        for (yi, ti) in y.iter_mut().zip(&self.translation) {
            *yi += ti;
        }
        y
    }
}

/// A seeded Haar-random proper rotation with zero translation.
///
/// A standard-Gaussian matrix is drawn from ChaCha8 with the given seed and
/// orthonormalized column by column; if the result has determinant -1 the
/// last column is flipped. The same seed yields bit-identical output.
pub fn random_rotation(dim: usize, seed: u64) -> RigidMotion {
    assert!(dim >= 1, "rotation dimension must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_column = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..dim)
            .map(|_| {
                let g: f64 = StandardNormal.sample(rng);
                g
            })
            .collect()
    };
    let mut columns: Vec<Vec<f64>> = (0..dim).map(|_| draw_column(&mut rng)).collect();
    let mut basis = gram_schmidt(&columns);
    while basis.len() < dim {
        // numerically rank-deficient draw; extend with fresh columns
        columns.push(draw_column(&mut rng));
        basis = gram_schmidt(&columns);
    }
    let mut rotation = Matrix::zeros(dim, dim);
    for (j, q) in basis.iter().enumerate() {
        for (i, &qi) in q.iter().enumerate() {
            rotation[(i, j)] = qi;
        }
    }
    if rotation.determinant() < 0.0 {
        for i in 0..dim {
            rotation[(i, dim - 1)] = -rotation[(i, dim - 1)];
        }
    }
    RigidMotion {
        rotation,
        translation: vec![0.0; dim],
    }
}

/// Applies the motion to every point: `x -> Ox + t`.
pub fn apply_motion(u: &PointSet, motion: &RigidMotion) -> Result<PointSet> {
    if motion.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: motion.dim(),
        });
    }
    let moved = u.iter().map(|x| motion.apply_point(x)).collect();
    PointSet::from_points(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{covariance, scatter};

    fn pts(points: &[&[f64]]) -> PointSet {
        PointSet::from_points(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn one_dimensional_rotation_is_identity() {
        for seed in 0..8 {
            let m = random_rotation(1, seed);
            assert_eq!(m.rotation().data(), &[1.0]);
        }
    }

    #[test]
    fn rotations_are_orthogonal_and_proper() {
        for dim in [1, 2, 3, 7, 20] {
            let m = random_rotation(dim, 42);
            let gram = m.rotation().transpose().matmul(m.rotation());
            let dev = (&gram - &Matrix::identity(dim)).frobenius_norm();
            assert!(dev <= 1e-12, "dim {dim}: ||O'O - I|| = {dev:e}");
            assert!((m.rotation().determinant() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn rotation_is_deterministic_in_the_seed() {
        let a = random_rotation(5, 7);
        let b = random_rotation(5, 7);
        assert_eq!(a.rotation().data(), b.rotation().data());
        let c = random_rotation(5, 8);
        assert_ne!(a.rotation().data(), c.rotation().data());
    }

    #[test]
    fn identity_motion_is_a_no_op() {
        let u = pts(&[&[1.0, 2.0], &[3.0, -1.0]]);
        let moved = apply_motion(&u, &RigidMotion::identity(2)).unwrap();
        assert_eq!(moved, u);
    }

    #[test]
    fn translation_leaves_covariance_unchanged() {
        let u = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, 2.0]]);
        let t = RigidMotion::translation_only(vec![3.25, -7.5]).unwrap();
        let moved = apply_motion(&u, &t).unwrap();
        let diff = (&covariance(&moved) - &covariance(&u)).max_abs();
        assert!(diff <= 1e-12);
    }

    #[test]
    fn rotation_conjugates_the_scatter_matrix() {
        let u = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, 2.0]]);
        let m = random_rotation(2, 11);
        let moved = apply_motion(&u, &m).unwrap();
        let conjugated = m.rotation().matmul(&scatter(&u)).matmul(&m.rotation().transpose());
        let b = scatter(&moved);
        let rel = (&b - &conjugated).frobenius_norm() / b.frobenius_norm();
        assert!(rel <= 1e-10, "relative deviation {rel:e}");
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let u = pts(&[&[1.0, 2.0]]);
        let m = random_rotation(3, 0);
        assert!(matches!(
            apply_motion(&u, &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn new_rejects_a_non_orthogonal_matrix() {
        let skew = Matrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            RigidMotion::new(skew, vec![0.0, 0.0]),
            Err(Error::Domain(_))
        ));
        // reflections are orthogonal but not proper
        let refl = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert!(matches!(
            RigidMotion::new(refl, vec![0.0, 0.0]),
            Err(Error::Domain(_))
        ));
    }
}
