use crate::{Error, Result};

use super::Matrix;

/// An ordered set of n points in R^p.
///
/// Contains at least one point; all points share the same dimension and all
/// coordinates are finite. Ordering is significant and preserved by every
/// operation.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from a list of coordinate vectors.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let dim = first.len();
        let mut coords = Vec::with_capacity(points.len() * dim);
        for point in &points {
            if point.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: point.len(),
                });
            }
            coords.extend_from_slice(point);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a point set from flat point-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain(
                "points must have at least one coordinate".to_string(),
            ));
        }
        if coords.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim * (coords.len() / dim + 1),
                found: coords.len(),
            });
        }
        if !coords.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "point coordinates",
            });
        }
        Ok(Self { dim, coords })
    }

    /// Number of points n.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    /// Always false; construction guarantees at least one point.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Ambient dimension p.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of point `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Iterates over the points in order.
    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// The p x n matrix whose columns are the points.
    pub fn column_matrix(&self) -> Matrix {
        let n = self.len();
        let mut x = Matrix::zeros(self.dim, n);
        for (i, point) in self.iter().enumerate() {
            for (j, &c) in point.iter().enumerate() {
                x[(j, i)] = c;
            }
        }
        x
    }

    /// Reads points back from a p x n column matrix.
    pub fn from_column_matrix(x: &Matrix) -> Self {
        let (p, n) = (x.rows(), x.cols());
        let mut coords = Vec::with_capacity(p * n);
        for i in 0..n {
            for j in 0..p {
                coords.push(x[(j, i)]);
            }
        }
        Self { dim: p, coords }
    }

    /// The set with point `i` removed (the leave-one-out set).
    pub fn without_point(&self, i: usize) -> Result<Self> {
        let n = self.len();
        if i >= n {
            return Err(Error::Domain(format!(
                "point index {i} out of range for {n} points"
            )));
        }
        if n == 1 {
            return Err(Error::EmptyPointSet);
        }
        let mut coords = Vec::with_capacity((n - 1) * self.dim);
        for (k, point) in self.iter().enumerate() {
            if k != i {
                coords.extend_from_slice(point);
            }
        }
        Ok(Self {
            dim: self.dim,
            coords,
        })
    }
}
