//! Report documents for `verify` and `analyze`.

use serde::Serialize;

use isoplex::simplex::lemma_quantities;
use isoplex::{
    center, classify, covariance, distance_matrix, gram_schmidt, mean, projection_checks,
    scatter, sphericity, DiagnosticsReport, LemmaQuantities, Matrix, PointSet, ProjectionReport,
    ToleranceConfig,
};

use crate::io::{fmt_f64, to_json_string};

const TOOL: &str = "isoplex";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct VerifyDoc<'a> {
    tool: &'static str,
    version: &'static str,
    mode: &'a str,
    input_digest: &'a str,
    tolerances: &'a ToleranceConfig,
    pass: bool,
    #[serde(flatten)]
    diagnostics: &'a DiagnosticsReport,
}

pub fn verify_report<'a>(
    diagnostics: &'a DiagnosticsReport,
    tolerances: &'a ToleranceConfig,
    mode: &'a str,
    input_digest: &'a str,
    pass: bool,
) -> VerifyDoc<'a> {
    VerifyDoc {
        tool: TOOL,
        version: VERSION,
        mode,
        input_digest,
        tolerances,
        pass,
        diagnostics,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    to_json_string(value)
}

pub fn print_verify_text(
    diagnostics: &DiagnosticsReport,
    mode: &str,
    input_digest: &str,
    pass: bool,
) {
    println!("input: {input_digest}");
    println!(
        "n = {}, p = {}, theorem applicable: {}",
        diagnostics.n,
        diagnostics.p,
        if diagnostics.theorem_applicable { "yes" } else { "no" }
    );
    println!(
        "sigma^2 from distances: {}",
        fmt_f64(diagnostics.sigma2_from_distances)
    );
    println!(
        "sigma^2 from trace:     {}",
        fmt_f64(diagnostics.sigma2_from_trace)
    );
    println!(
        "equidistance residual:  {:.3e}  sphericity residual: {:.3e}",
        diagnostics.equidist_residual, diagnostics.sphericity_residual
    );
    if diagnostics.inconsistent {
        println!("warning: distance and covariance routes disagree");
    }
    println!("verdict: {}", diagnostics.verdict);
    println!("result: {} (mode {mode})", if pass { "pass" } else { "fail" });
}

#[derive(Serialize)]
struct MeasuredRange {
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct LemmaDoc {
    predicted: LemmaQuantities,
    measured_circumradius: MeasuredRange,
    measured_centroid_shift: MeasuredRange,
    /// Worst |cosine| between a removed vertex's apex direction and the
    /// span of its leave-one-out face.
    max_orthogonality_cosine: f64,
    orthogonality_ok: bool,
}

#[derive(Serialize)]
pub struct AnalyzeDoc {
    tool: &'static str,
    version: &'static str,
    input_digest: String,
    n: usize,
    p: usize,
    mean: Vec<f64>,
    covariance: Vec<Vec<f64>>,
    scatter: Vec<Vec<f64>>,
    distance_matrix: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<DiagnosticsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection: Option<ProjectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection_matrix: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma: Option<LemmaDoc>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn measured_lemma(u: &PointSet, sigma2_hat: f64, tol: &ToleranceConfig) -> Option<LemmaDoc> {
    let n = u.len();
    let predicted = lemma_quantities(n, sigma2_hat).ok()?;
    let m = mean(u);
    let mut r = (f64::INFINITY, f64::NEG_INFINITY);
    let mut s = (f64::INFINITY, f64::NEG_INFINITY);
    let mut worst_cosine = 0.0f64;
    for i in 0..n {
        let radius = vec_norm(
            &u.point(i)
                .iter()
                .zip(&m)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        r = (r.0.min(radius), r.1.max(radius));
        let rest = u.without_point(i).ok()?;
        let rest_mean = mean(&rest);
        let shift = vec_norm(
            &m.iter()
                .zip(&rest_mean)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        s = (s.0.min(shift), s.1.max(shift));

        let apex: Vec<f64> = u
            .point(i)
            .iter()
            .zip(&rest_mean)
            .map(|(a, b)| a - b)
            .collect();
        let apex_norm = vec_norm(&apex);
        if apex_norm > 0.0 {
            let face: Vec<Vec<f64>> = center(&rest).iter().map(<[f64]>::to_vec).collect();
            for basis_vector in gram_schmidt(&face) {
                let cosine = apex
                    .iter()
                    .zip(&basis_vector)
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    .abs()
                    / apex_norm;
                worst_cosine = worst_cosine.max(cosine);
            }
        }
    }
    Some(LemmaDoc {
        predicted,
        measured_circumradius: MeasuredRange { min: r.0, max: r.1 },
        measured_centroid_shift: MeasuredRange { min: s.0, max: s.1 },
        max_orthogonality_cosine: worst_cosine,
        orthogonality_ok: worst_cosine <= tol.ortho_cos,
    })
}

/// Full numeric dump: moments, distances, classification when n >= 2, and
/// the projection/lemma sections when n = p+1 with a positive scale.
pub fn analyze_report(u: &PointSet, tol: &ToleranceConfig, input_digest: &str) -> AnalyzeDoc {
    let n = u.len();
    let p = u.dim();
    let classification = if n >= 2 {
        classify(u, tol).ok()
    } else {
        None
    };
    let (sigma2_hat, _) = sphericity(u);
    let applicable = n == p + 1 && sigma2_hat > 0.0;
    let (projection, projection_matrix) = if applicable {
        match projection_checks(u, sigma2_hat, tol) {
            Ok(report) => {
                let x = isoplex::center(u).column_matrix();
                let a = x.transpose().matmul(&x).scaled(1.0 / sigma2_hat);
                (Some(report), Some(matrix_rows(&a)))
            }
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    let lemma = if applicable {
        measured_lemma(u, sigma2_hat, tol)
    } else {
        None
    };
    AnalyzeDoc {
        tool: TOOL,
        version: VERSION,
        input_digest: input_digest.to_string(),
        n,
        p,
        mean: mean(u),
        covariance: matrix_rows(&covariance(u)),
        scatter: matrix_rows(&scatter(u)),
        distance_matrix: matrix_rows(&distance_matrix(u)),
        classification,
        projection,
        projection_matrix,
        lemma,
    }
}

pub fn print_analyze_text(doc: &AnalyzeDoc) {
    println!("input: {}", doc.input_digest);
    println!("n = {}, p = {}", doc.n, doc.p);
    println!("mean: [{}]", doc.mean.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(", "));
    print_matrix("covariance", &doc.covariance);
    print_matrix("scatter", &doc.scatter);
    print_matrix("squared distances", &doc.distance_matrix);
    if let Some(c) = &doc.classification {
        println!(
            "verdict: {} (equidistance residual {:.3e}, sphericity residual {:.3e})",
            c.verdict, c.equidist_residual, c.sphericity_residual
        );
    }
    if let Some(pr) = &doc.projection {
        println!(
            "projection checks: symmetry {:.3e}, idempotence {:.3e}, trace gap {:.3e}, ones image {:.3e}, centering {:.3e} ({})",
            pr.symmetry,
            pr.idempotence,
            pr.trace_gap,
            pr.ones_image,
            pr.centering_distance,
            if pr.all_ok() { "pass" } else { "fail" }
        );
    }
    if let Some(lemma) = &doc.lemma {
        println!(
            "circumradius: predicted {}, measured [{}, {}]",
            fmt_f64(lemma.predicted.circumradius),
            fmt_f64(lemma.measured_circumradius.min),
            fmt_f64(lemma.measured_circumradius.max)
        );
        println!(
            "centroid shift: predicted {}, measured [{}, {}]",
            fmt_f64(lemma.predicted.centroid_shift),
            fmt_f64(lemma.measured_centroid_shift.min),
            fmt_f64(lemma.measured_centroid_shift.max)
        );
        println!(
            "leave-one-out orthogonality: max |cosine| {:.3e} ({})",
            lemma.max_orthogonality_cosine,
            if lemma.orthogonality_ok { "pass" } else { "fail" }
        );
    }
}

fn print_matrix(name: &str, rows: &[Vec<f64>]) {
    println!("{name}:");
    for row in rows {
        println!(
            "  [{}]",
            row.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(", ")
        );
    }
}
