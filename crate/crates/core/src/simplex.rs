//! Regular simplex construction.
//!
//! A regular simplex on n = p+1 vertices in R^p has common squared edge
//! length 2σ². Two independent constructions are provided:
//!
//! - **Incremental**: start with two points at distance √(2σ²) on the first
//!   axis and repeatedly place the next vertex above the centroid of the
//!   face built so far, along a fresh coordinate axis, at the apex height
//!   h_k = √(2σ² − r²_{σ,k−1}).
//! - **Projection**: factor the centering projection I_n − (1/n)1·1' as Q·Q'
//!   with Q an orthonormal basis of the complement of the all-ones vector,
//!   and take the columns of σ·Q' as the points. The output is centered by
//!   construction and has scatter exactly σ²·I_p up to rounding.
//!
//! The geometry both constructions rest on, for an n-vertex regular simplex
//! with squared edge 2σ²:
//!
//! - circumradius r²_{σ,n} = σ²(n−1)/n — vertex to centroid,
//! - centroid shift s²_{σ,n} = σ²/(n(n−1)) — how far the centroid moves when
//!   one vertex is removed,
//! - apex height h = r_{σ,n} + s_{σ,n}, with 2σ² = r²_{σ,n−1} + h².

use crate::linalg::{self, gram_schmidt, Matrix, PointSet};
use crate::{Error, Result};

/// Which construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ConstructionMethod {
    Incremental,
    Projection,
}

impl ConstructionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionMethod::Incremental => "incremental",
            ConstructionMethod::Projection => "projection",
        }
    }
}

/// A validated request for a regular simplex: n = p+1 points in R^p with
/// squared edge length 2σ².
///
/// Exactly one scale is given at construction — σ² directly or the edge
/// length L with σ² = L²/2. An optional seed selects a Haar-random
/// orientation; without one the canonical axis-aligned orientation is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexSpec {
    dim: usize,
    sigma2: f64,
    method: ConstructionMethod,
    centered: bool,
    seed: Option<u64>,
}

impl SimplexSpec {
    /// Spec from the scale parameter σ² > 0.
    pub fn from_sigma2(dim: usize, sigma2: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain(
                "simplex dimension must be at least 1".to_string(),
            ));
        }
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(Error::Domain(format!(
                "sigma2 must be a positive finite number, got {sigma2}"
            )));
        }
        Ok(Self {
            dim,
            sigma2,
            method: ConstructionMethod::Projection,
            centered: true,
            seed: None,
        })
    }

    /// Spec from the edge length L > 0, converted via σ² = L²/2.
    pub fn from_edge(dim: usize, edge: f64) -> Result<Self> {
        if !edge.is_finite() || edge <= 0.0 {
            return Err(Error::Domain(format!(
                "edge length must be a positive finite number, got {edge}"
            )));
        }
        Self::from_sigma2(dim, edge * edge / 2.0)
    }

    pub fn with_method(mut self, method: ConstructionMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Skip the final mean subtraction in the incremental construction.
    pub fn uncentered(mut self) -> Self {
        self.centered = false;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices n = p+1.
    pub fn vertex_count(&self) -> usize {
        self.dim + 1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn edge(&self) -> f64 {
        (2.0 * self.sigma2).sqrt()
    }

    pub fn method(&self) -> ConstructionMethod {
        self.method
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// Circumradius, centroid shift, and apex height of an n-vertex regular
/// simplex with squared edge 2σ².
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LemmaQuantities {
    pub n: usize,
    /// r_{σ,n}: distance from each vertex to the centroid.
    pub circumradius: f64,
    /// s_{σ,n}: distance the centroid moves when one vertex is removed.
    pub centroid_shift: f64,
    /// h = r + s: height of a vertex above the opposite face's centroid.
    pub apex_height: f64,
}

/// Evaluates r²_{σ,n} = σ²(n−1)/n and s²_{σ,n} = σ²/(n(n−1)).
pub fn lemma_quantities(n: usize, sigma2: f64) -> Result<LemmaQuantities> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "lemma quantities need at least 2 points, got {n}"
        )));
    }
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::Domain(format!(
            "sigma2 must be a positive finite number, got {sigma2}"
        )));
    }
    let nf = n as f64;
    let circumradius = (sigma2 * (nf - 1.0) / nf).sqrt();
    let centroid_shift = (sigma2 / (nf * (nf - 1.0))).sqrt();
    Ok(LemmaQuantities {
        n,
        circumradius,
        centroid_shift,
        apex_height: circumradius + centroid_shift,
    })
}

/// Builds the simplex requested by `spec` using its chosen method.
pub fn construct(spec: &SimplexSpec) -> PointSet {
    match spec.method() {
        ConstructionMethod::Incremental => construct_incremental(spec),
        ConstructionMethod::Projection => construct_projection(spec),
    }
}

/// Inductive construction: base edge on the first axis, then one fresh axis
/// per additional vertex.
///
/// Vertex k is placed at the centroid of the first k−1 vertices plus
/// h_k·e_{k−1}, where h_k = √(2σ² − r²_{σ,k−1}). That form is numerically
/// stabler than the equivalent r_{σ,k} + s_{σ,k}.
pub fn construct_incremental(spec: &SimplexSpec) -> PointSet {
    let p = spec.dim();
    let n = spec.vertex_count();
    let sigma2 = spec.sigma2();
    let edge = spec.edge();

    let mut points = vec![vec![0.0; p]; n];
    points[1][0] = edge;
    for k in 3..=n {
        let built = k - 1;
        let mut centroid = vec![0.0; p];
        for point in points.iter().take(built) {
            for (acc, &c) in centroid.iter_mut().zip(point) {
                *acc += c;
            }
        }
        for acc in &mut centroid {
            *acc /= built as f64;
        }
        // r²_{σ,m} = σ²(m−1)/m for the face built so far (m = k−1 vertices)
        let r2_face = sigma2 * (built as f64 - 1.0) / built as f64;
        let height = (2.0 * sigma2 - r2_face).sqrt();
        centroid[k - 2] += height;
        points[k - 1] = centroid;
    }

    let mut out = PointSet::from_points(points).expect("construction yields valid points");
    if spec.centered() {
        out = linalg::center(&out);
    }
    finish_orientation(out, spec)
}

/// Projection construction: columns of σ·Q', where the columns of Q are the
/// Gram–Schmidt orthonormalization of {e_i − (1/n)·1} and span the
/// complement of the all-ones vector.
///
/// The Gram matrix of the output is σ²(I_n − (1/n)1·1'), so the points are
/// centered with scatter σ²·I_p, and all squared interpoint distances are
/// 2σ²(1 − 1/n) + 2σ²/n = 2σ².
pub fn construct_projection(spec: &SimplexSpec) -> PointSet {
    let p = spec.dim();
    let n = spec.vertex_count();
    let sigma = spec.sigma2().sqrt();

    let inputs: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = vec![-1.0 / n as f64; n];
            v[i] += 1.0;
            v
        })
        .collect();
    let basis = gram_schmidt(&inputs);
    debug_assert_eq!(basis.len(), p, "complement of the ones vector has rank p");

    let mut x = Matrix::zeros(p, n);
    for (j, q) in basis.iter().enumerate() {
        for (i, &qi) in q.iter().enumerate() {
            x[(j, i)] = sigma * qi;
        }
    }
    finish_orientation(PointSet::from_column_matrix(&x), spec)
}

fn finish_orientation(u: PointSet, spec: &SimplexSpec) -> PointSet {
    match spec.seed() {
        None => u,
        Some(seed) => {
            let motion = linalg::random_rotation(spec.dim(), seed);
            linalg::apply_motion(&u, &motion).expect("dimensions match by construction")
        }
    }
}
