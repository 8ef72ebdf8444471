//! Numerical decision of both directions of the simplex/sphericity
//! equivalence.
//!
//! For n = p+1 points the following are equivalent, and this module tests
//! each side against the other:
//!
//! - all squared interpoint distances equal a common 2σ² > 0 (decided from
//!   the distance matrix by [`is_equidistant`]);
//! - the scatter matrix equals σ²·I_p (decided by [`sphericity`] through the
//!   trace estimator σ̂² = tr(B)/p and the relative Frobenius residual).
//!
//! [`classify`] runs both routes, reports every residual, and never silently
//! reconciles them: if the two applicable checks disagree at the configured
//! tolerances the report carries an explicit inconsistency flag.

use crate::linalg::{self, distance_matrix, scatter, Matrix, PointSet};
use crate::{Error, Result, NEAR_ZERO};

/// Relative tolerances for the verification checks.
///
/// All tolerances are relative to the scale of the operand (squared-distance
/// mean, Frobenius norm) except where an operand is near zero, in which case
/// the absolute floor [`NEAR_ZERO`] applies.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ToleranceConfig {
    /// Max relative deviation of off-diagonal squared distances from their mean.
    pub equidist_rel: f64,
    /// Max relative Frobenius residual ||B − σ̂²I|| / ||B||.
    pub sphericity_rel: f64,
    /// Bound for the five projection-matrix residuals.
    pub projection_rel: f64,
    /// Max |cosine| accepted as orthogonal.
    pub ortho_cos: f64,
}

impl ToleranceConfig {
    /// Validates that every tolerance lies strictly between 0 and 1.
    pub fn new(
        equidist_rel: f64,
        sphericity_rel: f64,
        projection_rel: f64,
        ortho_cos: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("equidist_rel", equidist_rel),
            ("sphericity_rel", sphericity_rel),
            ("projection_rel", projection_rel),
            ("ortho_cos", ortho_cos),
        ] {
            if !value.is_finite() || value <= 0.0 || value >= 1.0 {
                return Err(Error::Domain(format!(
                    "tolerance {name} must lie strictly between 0 and 1, got {value}"
                )));
            }
        }
        Ok(Self {
            equidist_rel,
            sphericity_rel,
            projection_rel,
            ortho_cos,
        })
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            equidist_rel: 1e-8,
            sphericity_rel: 1e-8,
            projection_rel: 1e-10,
            ortho_cos: 1e-10,
        }
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    /// n = p+1 and the scatter matrix is a positive multiple of the identity.
    RegularSimplex,
    /// No positive common squared distance (covers duplicate points).
    NotEquidistant,
    /// The scatter matrix is not σ²·I at the configured tolerance.
    NotSpherical,
    /// n ≠ p+1, so the characterization does not apply.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::RegularSimplex => "regular_simplex",
            Verdict::NotEquidistant => "not_equidistant",
            Verdict::NotSpherical => "not_spherical",
            Verdict::NotApplicable => "not_applicable",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Residuals, scale estimates, and verdict for one point set.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DiagnosticsReport {
    pub n: usize,
    pub p: usize,
    /// Half the mean off-diagonal squared distance.
    pub sigma2_from_distances: f64,
    /// tr(B)/p, the least-squares multiple of the identity.
    pub sigma2_from_trace: f64,
    /// Max relative deviation of off-diagonal squared distances from their mean.
    pub equidist_residual: f64,
    /// ||B − σ̂²I|| / ||B|| (0 for a zero scatter matrix).
    pub sphericity_residual: f64,
    /// Whether n = p+1.
    pub theorem_applicable: bool,
    /// Distance-route outcome, recorded for cross-validation.
    pub equidistant: bool,
    /// Covariance-route outcome (σ̂² > 0 and residual within tolerance).
    pub spherical: bool,
    /// True when the two applicable routes disagree at the configured
    /// tolerances. Never silently resolved.
    pub inconsistent: bool,
    pub verdict: Verdict,
}

/// Mean off-diagonal squared distance and the max relative deviation from it.
fn equidistance_stats(d: &Matrix) -> (f64, f64) {
    let n = d.rows();
    let pairs = (n * (n - 1)) as f64;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += d[(i, j)];
            }
        }
    }
    let m = sum / pairs;
    if m <= 0.0 {
        // nonnegative entries with zero mean are all zero
        return (0.0, 0.0);
    }
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max((d[(i, j)] - m).abs() / m);
            }
        }
    }
    (m, worst)
}

/// Decides whether all interpoint distances agree, returning σ² = m/2 from
/// the common squared distance m when they do.
pub fn is_equidistant(u: &PointSet, tol: &ToleranceConfig) -> Result<Option<f64>> {
    if u.len() < 2 {
        return Err(Error::Domain(
            "equidistance needs at least 2 points".to_string(),
        ));
    }
    let (m, residual) = equidistance_stats(&distance_matrix(u));
    if m > 0.0 && residual <= tol.equidist_rel {
        Ok(Some(m / 2.0))
    } else {
        Ok(None)
    }
}

/// Trace estimate σ̂² = tr(B)/p and the relative Frobenius residual of the
/// scatter matrix from σ̂²·I.
///
/// σ̂² is the least-squares projection of B onto multiples of the identity,
/// so the residual is the minimal relative Frobenius distance from B to the
/// scalar-identity family. A scatter matrix with norm at or below
/// [`NEAR_ZERO`] is treated as zero: σ̂² = 0 and residual 0.
pub fn sphericity(u: &PointSet) -> (f64, f64) {
    let b = scatter(u);
    let norm = b.frobenius_norm();
    if norm <= NEAR_ZERO {
        return (0.0, 0.0);
    }
    let p = u.dim();
    let sigma2_hat = b.trace() / p as f64;
    let residual = (&b - &Matrix::identity(p).scaled(sigma2_hat)).frobenius_norm() / norm;
    (sigma2_hat, residual)
}

/// Residuals of the projection-matrix properties of A = σ⁻²·X'X for the
/// centered coordinate matrix X.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProjectionReport {
    pub n: usize,
    pub p: usize,
    /// ||A − A'||_F.
    pub symmetry: f64,
    /// ||A² − A||_F.
    pub idempotence: f64,
    /// |tr(A) − p|.
    pub trace_gap: f64,
    /// ||A·1_n||.
    pub ones_image: f64,
    /// ||A − (I − (1/n)1·1')||_F.
    pub centering_distance: f64,
    /// Entrywise max deviation from I − (1/n)1·1'.
    pub centering_max_abs: f64,
    /// Tolerance the pass flags were judged against.
    pub tolerance: f64,
    pub symmetry_ok: bool,
    pub idempotence_ok: bool,
    pub trace_ok: bool,
    pub ones_ok: bool,
    pub centering_ok: bool,
}

impl ProjectionReport {
    /// True when all five checks passed.
    pub fn all_ok(&self) -> bool {
        self.symmetry_ok && self.idempotence_ok && self.trace_ok && self.ones_ok && self.centering_ok
    }
}

/// Forms A = σ⁻²·X'X from the (defensively re-centered) points and checks
/// that it is the centering projection: symmetric, idempotent, trace p,
/// annihilating the all-ones vector, and equal to I − (1/n)1·1'.
pub fn projection_checks(
    u: &PointSet,
    sigma2: f64,
    tol: &ToleranceConfig,
) -> Result<ProjectionReport> {
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::Domain(format!(
            "sigma2 must be a positive finite number, got {sigma2}"
        )));
    }
    let n = u.len();
    let p = u.dim();
    let x = linalg::center(u).column_matrix();
    let a = x.transpose().matmul(&x).scaled(1.0 / sigma2);

    let symmetry = (&a - &a.transpose()).frobenius_norm();
    let idempotence = (&a.matmul(&a) - &a).frobenius_norm();
    let trace_gap = (a.trace() - p as f64).abs();
    let ones_image = linalg::norm(&a.mul_vec(&vec![1.0; n]));
    let mut centering = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            centering[(i, j)] -= 1.0 / n as f64;
        }
    }
    let diff = &a - &centering;
    let centering_distance = diff.frobenius_norm();
    let centering_max_abs = diff.max_abs();

    let t = tol.projection_rel;
    Ok(ProjectionReport {
        n,
        p,
        symmetry,
        idempotence,
        trace_gap,
        ones_image,
        centering_distance,
        centering_max_abs,
        tolerance: t,
        symmetry_ok: symmetry <= t,
        idempotence_ok: idempotence <= t,
        trace_ok: trace_gap <= t,
        ones_ok: ones_image <= t,
        centering_ok: centering_distance <= t,
    })
}

/// Runs both classification routes and fills a [`DiagnosticsReport`].
///
/// The verdict follows the covariance route: regular_simplex exactly when
/// n = p+1, σ̂² > 0, and the sphericity residual is within tolerance. The
/// distance route is recorded alongside; when the two applicable routes
/// disagree the `inconsistent` flag is raised.
pub fn classify(u: &PointSet, tol: &ToleranceConfig) -> Result<DiagnosticsReport> {
    let n = u.len();
    let p = u.dim();
    if n < 2 {
        return Err(Error::Domain(
            "classification needs at least 2 points".to_string(),
        ));
    }
    let (m, equidist_residual) = equidistance_stats(&distance_matrix(u));
    let equidistant = m > 0.0 && equidist_residual <= tol.equidist_rel;
    let (sigma2_hat, sphericity_residual) = sphericity(u);
    let spherical = sigma2_hat > 0.0 && sphericity_residual <= tol.sphericity_rel;
    let theorem_applicable = n == p + 1;

    let verdict = if !theorem_applicable {
        Verdict::NotApplicable
    } else if spherical {
        Verdict::RegularSimplex
    } else if m == 0.0 {
        Verdict::NotEquidistant
    } else {
        Verdict::NotSpherical
    };
    let inconsistent = theorem_applicable && (spherical != equidistant);

    Ok(DiagnosticsReport {
        n,
        p,
        sigma2_from_distances: m / 2.0,
        sigma2_from_trace: sigma2_hat,
        equidist_residual,
        sphericity_residual,
        theorem_applicable,
        equidistant,
        spherical,
        inconsistent,
        verdict,
    })
}

/// Reconstructs all squared interpoint distances of a centered σ²-spherical
/// configuration from inner products alone, via
/// ||x_i − x_j||² = 2(x_i'x_i − x_i'x_j).
///
/// Preconditions (violations are domain errors): the set is centered, and
/// its scatter matrix matches σ²·I within the default sphericity tolerance.
pub fn backward_distance_recovery(u: &PointSet, sigma2: f64) -> Result<Matrix> {
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::Domain(format!(
            "sigma2 must be a positive finite number, got {sigma2}"
        )));
    }
    let scale = u.iter().map(linalg::norm).fold(0.0, f64::max);
    let mean_norm = linalg::norm(&linalg::mean(u));
    if mean_norm > 1e-10 * scale + NEAR_ZERO {
        return Err(Error::Domain(format!(
            "point set is not centered: ||mean|| = {mean_norm:e}"
        )));
    }
    let b = scatter(u);
    let p = u.dim();
    let deviation = (&b - &Matrix::identity(p).scaled(sigma2)).frobenius_norm();
    let norm = b.frobenius_norm();
    let tol = ToleranceConfig::default().sphericity_rel;
    if deviation > tol * norm + NEAR_ZERO {
        return Err(Error::Domain(format!(
            "scatter matrix is not sigma2-spherical: ||B - sigma2 I|| = {deviation:e}"
        )));
    }

    let n = u.len();
    let x = u.column_matrix();
    let gram = x.transpose().matmul(&x);
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[(i, j)] = 2.0 * (gram[(i, i)] - gram[(i, j)]);
            }
        }
    }
    Ok(d)
}
