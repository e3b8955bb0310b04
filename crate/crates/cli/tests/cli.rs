//! End-to-end contract of the `hypergon` binary: exit codes, report
//! schemas, determinism of seeded commands, and the SVG output.
//!
//! Exit code contract: 0 all checks passed, 1 a checked geometric
//! property failed, 2 usage, parse, or I/O trouble.

use hypergon::analysis::{AnalysisReport, CheckStatus};
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypergon"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code present")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn count(hay: &str, needle: &str) -> usize {
    hay.match_indices(needle).count()
}

#[test]
fn pentagon_validates_clean() {
    let out = run(&["validate", fixture("pentagon.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["validation"]["convex"]["ok"], true);
    assert_eq!(v["validation"]["simple"]["witnesses"], serde_json::json!([]));
    assert!(v.get("build_error").is_none());
}

#[test]
fn concyclic_square_fails_genericity_with_a_witness() {
    let out = run(&["validate", fixture("square.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["all_pass"], false);
    assert_eq!(v["validation"]["generic_circle"]["ok"], false);
    let witnesses = v["validation"]["generic_circle"]["witnesses"]
        .as_array()
        .unwrap();
    assert!(witnesses.contains(&serde_json::json!([0, 1, 2, 3])));
}

#[test]
fn structural_problems_exit_two() {
    // Unparseable JSON.
    let out = run(&["validate", fixture("truncated.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).starts_with("error:"));

    // Missing file.
    let out = run(&["validate", "/nonexistent/polygon.json"]);
    assert_eq!(code(&out), 2);

    // Unknown subcommand (clap handles this one).
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);

    // Unknown model.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("klein.json");
    std::fs::write(&path, r#"{"model":"klein","vertices":[[0.1,0.0],[0.0,0.1],[-0.1,0.0],[0.0,-0.1]]}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("klein"));
}

#[test]
fn off_model_points_are_checked_failures() {
    // |z| > 1 is a geometric failure of the document, not a usage error.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("outside.json");
    std::fs::write(&path, r#"{"model":"poincare","vertices":[[1.5,0.0],[0.0,0.2],[-0.2,0.0],[0.0,-0.2]]}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["all_pass"], false);
    assert!(v["build_error"].as_str().unwrap().contains("disk"));
}

#[test]
fn hyperboloid_documents_are_accepted() {
    // The same quad in both models validates identically.
    let quad = [[0.32, 0.01], [0.02, 0.28], [-0.31, -0.03], [-0.01, -0.36]];
    let lift: Vec<[f64; 3]> = quad
        .iter()
        .map(|&[x, y]| {
            let d = 1.0 - (x * x + y * y);
            [(2.0 - d) / d, 2.0 * x / d, 2.0 * y / d]
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lifted.json");
    std::fs::write(
        &path,
        serde_json::to_string(&serde_json::json!({"model": "hyperboloid", "vertices": lift}))
            .unwrap(),
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    assert_eq!(stdout_json(&out)["all_pass"], true);
}

#[test]
fn unknown_top_level_fields_are_preserved_not_rejected() {
    let text = std::fs::read_to_string(fixture("pentagon.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["annotations"] = serde_json::json!({"reviewed": true});
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("annotated.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn analyze_report_is_deterministic_and_round_trips() {
    let arg = fixture("pentagon.json");
    let a = run(&["analyze", arg.to_str().unwrap()]);
    let b = run(&["analyze", arg.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    // Parsing the report back and reserializing reproduces the bytes,
    // so every float survives the JSON trip unchanged.
    let text = String::from_utf8(a.stdout).unwrap();
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), text.trim_end());

    assert_eq!(report.n, 5);
    assert_eq!(report.checks.four_vertex, CheckStatus::Pass);
    assert_eq!(report.checks.defect_area, CheckStatus::Pass);
    assert!(report.validation.all_pass());
}

#[test]
fn nonconvex_dart_requires_force() {
    let arg = fixture("dart.json");
    let refused = run(&["analyze", arg.to_str().unwrap()]);
    assert_eq!(code(&refused), 1);
    assert!(stderr_text(&refused).contains("--force"));

    let forced = run(&["analyze", arg.to_str().unwrap(), "--force"]);
    assert_eq!(code(&forced), 0);
    let report: AnalysisReport = serde_json::from_slice(&forced.stdout).unwrap();
    assert!(!report.validation.convex.ok);
    for status in [
        report.checks.four_vertex,
        report.checks.density_identity,
        report.checks.evolute_density_bound,
        report.checks.cusp_extremal_agreement,
        report.checks.radii_ordering_agreement,
        report.checks.index_balance,
        report.checks.gauss_bonnet,
        report.checks.defect_area,
    ] {
        assert_eq!(status, CheckStatus::NotAsserted);
    }
    let notes = report.notes.join("; ");
    assert!(notes.contains("non-convex"), "notes: {notes}");
}

#[test]
fn verify_summary_is_reproducible_and_clean() {
    let args = ["verify", "--count", "40", "--n-range", "4..6", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "summary JSON must not wobble across runs");

    let v = stdout_json(&a);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["polygons"], 120);
    assert_eq!(v["prng"], "splitmix64");
    assert_eq!(v["n_range"], serde_json::json!([4, 6]));
    assert!(v["evolute_density_max"].as_f64().unwrap() <= -1.0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    for c in checks {
        assert_eq!(c["fail"], 0, "check {} failed", c["name"]);
        assert_eq!(c["not_evaluated"], 0);
        assert_eq!(c["pass"], 120);
    }
    assert!(v.get("first_failure").is_none());

    // The human table goes to stderr, never polluting the JSON stream.
    assert!(stderr_text(&a).contains("four_vertex"));
}

#[test]
fn verify_rejects_vertex_counts_below_four() {
    let out = run(&["verify", "--count", "5", "--n-range", "3..3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("at least four"));

    let out = run(&["verify", "--count", "5", "--n-range", "8..4"]);
    assert_eq!(code(&out), 2);

    let out = run(&["verify", "--count", "0", "--n-range", "4..4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn injected_flip_is_caught_and_reported() {
    let out = run(&[
        "verify",
        "--count",
        "5",
        "--n-range",
        "4..4",
        "--seed",
        "7",
        "--inject-flip",
    ]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["all_pass"], false);
    assert_eq!(v["injected_failure"], true);
    let failure = &v["first_failure"];
    assert_eq!(failure["n"], 4);
    assert_eq!(failure["index"], 0);
    assert!(failure["seed"].as_u64().is_some());
    let failed: Vec<&str> = failure["failed_checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert!(failed.contains(&"cusp_extremal_agreement"));
    assert!(failed.contains(&"injected edge flip"));

    let err = stderr_text(&out);
    assert!(err.contains("FIRST FAILURE"));
    assert!(err.contains("reproduction document"));

    // The dumped document is a loadable, untampered polygon.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("repro.json");
    std::fs::write(
        &path,
        serde_json::to_string(&failure["document"]).unwrap(),
    )
    .unwrap();
    let revalidated = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&revalidated), 0);
}

#[test]
fn generate_is_deterministic_and_output_validates() {
    let args = ["generate", "--n", "6", "--count", "3", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let dir = tempfile::tempdir().unwrap();
    for (i, line) in lines.iter().enumerate() {
        let doc: Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["model"], "poincare");
        assert_eq!(doc["metadata"]["prng"], "splitmix64");
        assert_eq!(doc["metadata"]["family"], "convex_random");
        assert_eq!(doc["metadata"]["index"], i);
        let path = dir.path().join(format!("g{i}.json"));
        std::fs::write(&path, line).unwrap();
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "generated polygon {i} must validate");
    }
}

#[test]
fn generate_reproduces_the_pinned_pentagon() {
    // fixtures/pentagon.json was produced by exactly this invocation.
    let out = run(&[
        "generate",
        "--family",
        "perturbed-regular",
        "--n",
        "5",
        "--seed",
        "11",
        "--count",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let pinned = std::fs::read(fixture("pentagon.json")).unwrap();
    assert_eq!(out.stdout, pinned);
}

#[test]
fn shrink_family_scales_down_a_seed_polygon() {
    let out = run(&[
        "generate", "--family", "shrink", "--n", "5", "--seed", "9", "--lambda", "0.25",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["metadata"]["family"], "shrink");
    assert_eq!(doc["metadata"]["lambda"], 0.25);
    // Every vertex sits strictly inside a quarter of the unit disk.
    for v in doc["vertices"].as_array().unwrap() {
        let (x, y) = (v[0].as_f64().unwrap(), v[1].as_f64().unwrap());
        assert!((x * x + y * y).sqrt() < 0.25);
    }
}

#[test]
fn tolerance_overrides_flow_into_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tol.json");
    std::fs::write(&cfg, r#"{"eps_id": 1e-5}"#).unwrap();
    let out = run(&[
        "--tolerances",
        cfg.to_str().unwrap(),
        "validate",
        fixture("pentagon.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    // The override lands; unlisted knobs keep their defaults.
    assert_eq!(v["tolerances"]["eps_id"], 1e-5);
    assert_eq!(v["tolerances"]["eps_norm"], 1e-10);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"eps_id": "tight"}"#).unwrap();
    let out = run(&[
        "--tolerances",
        bad.to_str().unwrap(),
        "validate",
        fixture("pentagon.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_matches_the_pinned_golden_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pentagon.svg");
    let out = run(&[
        "render",
        fixture("pentagon.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
        "--circles",
        "--exact-arcs",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let svg = std::fs::read_to_string(&path).unwrap();
    let golden = std::fs::read_to_string(fixture("pentagon.golden.svg")).unwrap();
    assert_eq!(svg, golden);

    assert_eq!(count(&svg, r#"class="edge""#), 5);
    assert_eq!(count(&svg, r#"class="circumcircle""#), 5);
    assert_eq!(count(&svg, r#"class="vertex-max""#), 2);
    assert_eq!(count(&svg, r#"class="vertex-min""#), 2);
    assert_eq!(count(&svg, r#"class="cusp""#), 4);
    // Exact arcs carry elliptical-arc commands, not sampled segments.
    assert!(svg.contains(" A"));
}

#[test]
fn sampled_renders_carry_dense_polylines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pentagon.svg");
    let out = run(&[
        "render",
        fixture("pentagon.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
        "--samples",
        "10",
    ]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    for line in svg.lines().filter(|l| l.contains(r#"class="edge""#)) {
        // Sample counts below 64 are raised to 64.
        assert!(count(line, " L") >= 64, "sparse edge path: {line}");
        assert!(!line.contains(" A"));
    }
}

#[test]
fn render_refuses_invalid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.svg");
    let out = run(&[
        "render",
        fixture("square.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_text(&out).contains("render refused"));
    assert!(!path.exists());
}

#[test]
fn reports_can_be_written_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "analyze",
        fixture("pentagon.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let report: AnalysisReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.n, 5);
}
