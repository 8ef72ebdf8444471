//! Black-box tests of the `isoplex` binary: command behavior, file formats,
//! report contents, and the exit-code contract (0 pass, 1 I/O, 2 usage or
//! parse, 3 verification failure).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoplex"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn json_report(output: &Output) -> Value {
    serde_json::from_str(stdout(output).trim()).expect("report parses as JSON")
}

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Self {
            dir: TempDir::new().expect("temp dir"),
        }
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn file(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.file(name);
        std::fs::write(&path, contents).expect("write fixture");
        path
    }

    fn read(&self, name: &str) -> Vec<u8> {
        std::fs::read(self.file(name)).expect("read output")
    }

    fn run(&self, args: &[&str]) -> Output {
        run_in(self.path(), args)
    }
}

#[test]
fn generate_csv_has_three_rows_of_two_and_verifies() {
    let sandbox = Sandbox::new();
    let out = sandbox.run(&[
        "generate", "--dim", "2", "--edge", "1", "--method", "projection", "--format", "csv",
        "--out", "tri.csv",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(sandbox.read("tri.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row.split(',').count(), 2);
    }
    let verify = sandbox.run(&["verify", "tri.csv", "--report", "json"]);
    assert_eq!(code(&verify), 0);
    let report = json_report(&verify);
    assert_eq!(report["verdict"], "regular_simplex");
}

#[test]
fn generate_pair_at_unit_squared_distance() {
    let sandbox = Sandbox::new();
    let out = sandbox.run(&["generate", "--dim", "1", "--sigma2", "0.5", "--out", "pair.csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(sandbox.read("pair.csv")).unwrap();
    let values: Vec<f64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    let d2 = (values[0] - values[1]).powi(2);
    assert!((d2 - 1.0).abs() <= 1e-12);
}

#[test]
fn generate_rejects_dimension_zero() {
    let sandbox = Sandbox::new();
    let out = sandbox.run(&["generate", "--dim", "0", "--sigma2", "0.5"]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn generate_requires_exactly_one_scale() {
    let sandbox = Sandbox::new();
    let neither = sandbox.run(&["generate", "--dim", "2"]);
    assert_eq!(code(&neither), 2);
    let both = sandbox.run(&["generate", "--dim", "2", "--sigma2", "1", "--edge", "1"]);
    assert_eq!(code(&both), 2);
}

#[test]
fn generate_seed_changes_orientation_deterministically() {
    let sandbox = Sandbox::new();
    for name in ["a.csv", "b.csv"] {
        let out = sandbox.run(&["generate", "--dim", "3", "--sigma2", "1", "--seed", "9", "--out", name]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(sandbox.read("a.csv"), sandbox.read("b.csv"));
    let canonical = sandbox.run(&["generate", "--dim", "3", "--sigma2", "1", "--out", "c.csv"]);
    assert_eq!(code(&canonical), 0);
    assert_ne!(sandbox.read("a.csv"), sandbox.read("c.csv"));
    let verify = sandbox.run(&["verify", "a.csv"]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn verify_square_is_not_applicable() {
    let sandbox = Sandbox::new();
    sandbox.write("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    let out = sandbox.run(&["verify", "square.csv", "--report", "json"]);
    assert_eq!(code(&out), 3);
    let report = json_report(&out);
    assert_eq!(report["verdict"], "not_applicable");
    assert_eq!(report["theorem_applicable"], Value::Bool(false));
}

#[test]
fn verify_modes_split_the_two_routes() {
    let sandbox = Sandbox::new();
    // the unit square has a spherical scatter matrix but unequal distances
    sandbox.write("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    let sphericity = sandbox.run(&["verify", "square.csv", "--mode", "sphericity"]);
    assert_eq!(code(&sphericity), 0);
    let distances = sandbox.run(&["verify", "square.csv", "--mode", "distances"]);
    assert_eq!(code(&distances), 3);
}

#[test]
fn verify_missing_file_is_io_failure() {
    let sandbox = Sandbox::new();
    let out = sandbox.run(&["verify", "missing.csv"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("missing.csv"));
}

#[test]
fn verify_malformed_csv_reports_line_number() {
    let sandbox = Sandbox::new();
    sandbox.write("bad.csv", "1,2\n3,oops\n");
    let out = sandbox.run(&["verify", "bad.csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));

    sandbox.write("ragged.csv", "1,2\n3\n");
    let ragged = sandbox.run(&["verify", "ragged.csv"]);
    assert_eq!(code(&ragged), 2);
    assert!(stderr(&ragged).contains("line 2"));

    sandbox.write("inf.csv", "1,2\n3,inf\n");
    let inf = sandbox.run(&["verify", "inf.csv"]);
    assert_eq!(code(&inf), 2);
}

#[test]
fn verify_malformed_json_is_a_parse_error() {
    let sandbox = Sandbox::new();
    sandbox.write("bad.json", "{\"points\": [[1, 2], [3]]");
    let out = sandbox.run(&["verify", "bad.json"]);
    assert_eq!(code(&out), 2);

    sandbox.write("mismatch.json", "{\"p\": 3, \"n\": 2, \"points\": [[1, 2], [3, 4]]}");
    let mismatch = sandbox.run(&["verify", "mismatch.json"]);
    assert_eq!(code(&mismatch), 2);
    assert!(stderr(&mismatch).contains("p = 3"));
}

#[test]
fn verify_single_point_is_a_usage_error() {
    let sandbox = Sandbox::new();
    sandbox.write("one.csv", "1,2\n");
    let out = sandbox.run(&["verify", "one.csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_tolerance_overrides() {
    let sandbox = Sandbox::new();
    let generate = sandbox.run(&["generate", "--dim", "5", "--sigma2", "1", "--out", "s.csv"]);
    assert_eq!(code(&generate), 0);
    let perturb = sandbox.run(&[
        "perturb", "s.csv", "--noise-sigma", "0.01", "--seed", "3", "--out", "noisy.csv",
    ]);
    assert_eq!(code(&perturb), 0);
    let strict = sandbox.run(&["verify", "noisy.csv"]);
    assert_eq!(code(&strict), 3);
    let loose = sandbox.run(&["verify", "noisy.csv", "--tol", "0.5"]);
    assert_eq!(code(&loose), 0);
    let invalid = sandbox.run(&["verify", "noisy.csv", "--tol", "1.5"]);
    assert_eq!(code(&invalid), 2);
}

#[test]
fn transform_preserves_the_verdict_and_scale() {
    let sandbox = Sandbox::new();
    let generate = sandbox.run(&["generate", "--dim", "3", "--sigma2", "2", "--out", "s.csv"]);
    assert_eq!(code(&generate), 0);
    let transform = sandbox.run(&[
        "transform", "s.csv", "--rotate-seed", "7", "--translate", "1,-2,0.5", "--out", "t.csv",
    ]);
    assert_eq!(code(&transform), 0, "{}", stderr(&transform));
    let verify = sandbox.run(&["verify", "t.csv", "--report", "json"]);
    assert_eq!(code(&verify), 0);
    let report = json_report(&verify);
    let sigma2 = report["sigma2_from_trace"].as_f64().unwrap();
    assert!((sigma2 - 2.0).abs() / 2.0 <= 1e-8);

    // fixed seed, bit-identical output
    let again = sandbox.run(&[
        "transform", "s.csv", "--rotate-seed", "7", "--translate", "1,-2,0.5", "--out", "t2.csv",
    ]);
    assert_eq!(code(&again), 0);
    assert_eq!(sandbox.read("t.csv"), sandbox.read("t2.csv"));
}

#[test]
fn translation_only_keeps_covariance() {
    let sandbox = Sandbox::new();
    sandbox.write("u.csv", "0,0\n1,0\n0.5,2\n");
    let transform = sandbox.run(&["transform", "u.csv", "--translate", "3,-4", "--out", "v.csv"]);
    assert_eq!(code(&transform), 0);
    let before = json_report(&sandbox.run(&["analyze", "u.csv"]));
    let after = json_report(&sandbox.run(&["analyze", "v.csv"]));
    let read = |v: &Value| -> Vec<Vec<f64>> {
        v["covariance"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect())
            .collect()
    };
    for (ra, rb) in read(&before).iter().zip(read(&after).iter()) {
        for (a, b) in ra.iter().zip(rb) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn transform_rejects_bad_translations() {
    let sandbox = Sandbox::new();
    sandbox.write("u.csv", "0,0\n1,0\n");
    let short = sandbox.run(&["transform", "u.csv", "--translate", "1", "--out", "v.csv"]);
    assert_eq!(code(&short), 2);
    let junk = sandbox.run(&["transform", "u.csv", "--translate", "1,x", "--out", "v.csv"]);
    assert_eq!(code(&junk), 2);
}

#[test]
fn perturb_zero_noise_copies_bit_for_bit() {
    let sandbox = Sandbox::new();
    // hand-written file whose formatting the tool would not itself produce
    sandbox.write("u.csv", "0.5, 1\n2,3.25\n");
    let out = sandbox.run(&["perturb", "u.csv", "--noise-sigma", "0", "--out", "v.csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(sandbox.read("u.csv"), sandbox.read("v.csv"));
}

#[test]
fn perturb_is_seeded_and_validated() {
    let sandbox = Sandbox::new();
    sandbox.write("u.csv", "0,0\n1,0\n");
    for name in ["a.csv", "b.csv"] {
        let out = sandbox.run(&[
            "perturb", "u.csv", "--noise-sigma", "0.1", "--seed", "5", "--out", name,
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(sandbox.read("a.csv"), sandbox.read("b.csv"));
    let negative = sandbox.run(&["perturb", "u.csv", "--noise-sigma", "-1", "--out", "c.csv"]);
    assert_eq!(code(&negative), 2);
}

#[test]
fn analyze_triangle_exposes_the_centering_projection() {
    let sandbox = Sandbox::new();
    let generate = sandbox.run(&["generate", "--dim", "2", "--sigma2", "0.5", "--out", "tri.csv"]);
    assert_eq!(code(&generate), 0);
    let out = sandbox.run(&["analyze", "tri.csv"]);
    assert_eq!(code(&out), 0);
    let doc = json_report(&out);

    // covariance = scatter / n
    let cov = doc["covariance"][0][0].as_f64().unwrap();
    let sc = doc["scatter"][0][0].as_f64().unwrap();
    assert!((cov - sc / 3.0).abs() <= 1e-12);

    let a = doc["projection_matrix"].as_array().unwrap();
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            let expected = if i == j { 2.0 / 3.0 } else { -1.0 / 3.0 };
            assert!((entry.as_f64().unwrap() - expected).abs() <= 1e-10);
        }
    }
    assert_eq!(doc["classification"]["verdict"], "regular_simplex");
    assert_eq!(doc["projection"]["symmetry_ok"], Value::Bool(true));
    assert!(doc["lemma"]["predicted"]["circumradius"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["lemma"]["orthogonality_ok"], Value::Bool(true));
    assert!(doc["lemma"]["max_orthogonality_cosine"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn analyze_single_point_and_square_never_fail() {
    let sandbox = Sandbox::new();
    sandbox.write("one.csv", "3,4\n");
    let one = sandbox.run(&["analyze", "one.csv"]);
    assert_eq!(code(&one), 0);
    let doc = json_report(&one);
    assert_eq!(doc["covariance"][0][0].as_f64().unwrap(), 0.0);
    assert_eq!(doc["distance_matrix"][0][0].as_f64().unwrap(), 0.0);
    assert!(doc.get("classification").is_none());

    sandbox.write("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    let square = sandbox.run(&["analyze", "square.csv"]);
    assert_eq!(code(&square), 0);
    let doc = json_report(&square);
    assert_eq!(doc["classification"]["theorem_applicable"], Value::Bool(false));
    assert!(doc["classification"]["equidist_residual"].as_f64().unwrap() > 0.0);
}

#[test]
fn csv_and_json_inputs_give_identical_reports_modulo_digest() {
    let sandbox = Sandbox::new();
    for (format, name) in [("csv", "u.csv"), ("json", "u.json")] {
        let out = sandbox.run(&[
            "generate", "--dim", "4", "--edge", "2", "--format", format, "--out", name,
        ]);
        assert_eq!(code(&out), 0);
    }
    let a = sandbox.run(&["verify", "u.csv", "--report", "json"]);
    let b = sandbox.run(&["verify", "u.json", "--report", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    let mut report_a = json_report(&a);
    let mut report_b = json_report(&b);
    let digest_a = report_a.as_object_mut().unwrap().remove("input_digest").unwrap();
    let digest_b = report_b.as_object_mut().unwrap().remove("input_digest").unwrap();
    assert_ne!(digest_a, digest_b, "different bytes, different digests");
    // byte-identical after removing the digest
    assert_eq!(
        serde_json::to_vec(&report_a).unwrap(),
        serde_json::to_vec(&report_b).unwrap()
    );
}

#[test]
fn multi_file_verify_keeps_order_and_first_failure_code() {
    let sandbox = Sandbox::new();
    let generate = sandbox.run(&["generate", "--dim", "2", "--sigma2", "1", "--out", "good.csv"]);
    assert_eq!(code(&generate), 0);
    sandbox.write("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    sandbox.write("bad.csv", "1,oops\n2,3\n");

    let out = sandbox.run(&["verify", "good.csv", "square.csv", "--report", "json"]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| !l.is_empty()).collect();
    assert_eq!(lines.len(), 2);
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    let second: Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(first["verdict"], "regular_simplex");
    assert_eq!(second["verdict"], "not_applicable");

    // a parse failure earlier in the list wins over a later verification failure
    let mixed = sandbox.run(&["verify", "bad.csv", "square.csv"]);
    assert_eq!(code(&mixed), 2);
    // reports for parseable inputs are still printed
    assert!(stdout(&mixed).contains("not_applicable"));
}

#[test]
fn unwritable_output_is_io_failure() {
    let sandbox = Sandbox::new();
    let out = sandbox.run(&[
        "generate", "--dim", "2", "--sigma2", "1", "--out", "no-such-dir/x.csv",
    ]);
    assert_eq!(code(&out), 1);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn reports_go_to_stdout_and_logs_to_stderr() {
    let sandbox = Sandbox::new();
    let generate = sandbox.run(&["generate", "--dim", "2", "--sigma2", "1", "--out", "u.csv"]);
    assert_eq!(code(&generate), 0);
    let verify = sandbox.run(&["verify", "u.csv"]);
    assert_eq!(code(&verify), 0);
    assert!(stdout(&verify).contains("verdict"));
    assert!(stderr(&verify).is_empty());
}
