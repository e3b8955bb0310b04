//! Batch verification: generate seeded polygons across a range of
//! vertex counts, run the full analysis on each, and fold the results
//! into a deterministic summary. The JSON summary goes to stdout (the
//! machine artifact; byte-stable for a fixed invocation), the
//! human-readable table to stderr.

use crate::document::PolygonDocument;
use hypergon::analysis::{analyze, AnalysisReport, CheckStatus};
use hypergon::curvature::CurvatureGraph;
use hypergon::generator::{random_convex_polygon, GenSpec, SplitMix64, PRNG_ALGORITHM};
use hypergon::Tolerances;
use serde::Serialize;
use std::fmt::Write as _;

pub struct VerifyArgs {
    pub count: usize,
    pub n_lo: usize,
    pub n_hi: usize,
    pub seed: u64,
    pub inject_flip: bool,
}

const CHECK_NAMES: [&str; 8] = [
    "four_vertex",
    "density_identity",
    "evolute_density_bound",
    "cusp_extremal_agreement",
    "radii_ordering_agreement",
    "index_balance",
    "gauss_bonnet",
    "defect_area",
];

fn statuses(r: &AnalysisReport) -> [CheckStatus; 8] {
    let c = &r.checks;
    [
        c.four_vertex,
        c.density_identity,
        c.evolute_density_bound,
        c.cusp_extremal_agreement,
        c.radii_ordering_agreement,
        c.index_balance,
        c.gauss_bonnet,
        c.defect_area,
    ]
}

#[derive(Serialize)]
struct CheckCount {
    name: &'static str,
    pass: usize,
    fail: usize,
    not_evaluated: usize,
}

#[derive(Serialize, Default)]
struct MaxResiduals {
    density_identity: f64,
    rearranged_identity: f64,
    gauss_bonnet: f64,
    defect_area: f64,
    mediatrix: f64,
    gap_decomposition: f64,
}

#[derive(Serialize)]
struct FailureDump {
    n: usize,
    index: usize,
    seed: u64,
    failed_checks: Vec<String>,
    document: Option<PolygonDocument>,
}

#[derive(Serialize)]
pub struct VerifySummary {
    schema: u32,
    prng: &'static str,
    seed: u64,
    count_per_n: usize,
    n_range: [usize; 2],
    tolerances: Tolerances,
    polygons: usize,
    all_pass: bool,
    injected_failure: bool,
    /// Largest evolute density encountered; the theory demands <= -1.
    evolute_density_max: f64,
    checks: Vec<CheckCount>,
    max_residuals: MaxResiduals,
    /// Histogram of extremal vertex counts, pairs of (N, occurrences).
    extremal_counts: Vec<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<FailureDump>,
}

pub struct VerifyOutcome {
    pub json: String,
    pub table: String,
    pub all_pass: bool,
}

fn dump_document(
    p: &hypergon::HPolygon,
    n: usize,
    seed: u64,
    index: usize,
) -> PolygonDocument {
    PolygonDocument::from_poincare_vertices(
        p.poincare_vertices(),
        Some(serde_json::json!({
            "n": n,
            "seed": seed,
            "index": index,
            "prng": PRNG_ALGORITHM,
        })),
    )
}

pub fn run_verify(args: &VerifyArgs, tol: Tolerances) -> VerifyOutcome {
    let mut master = SplitMix64::new(args.seed);
    let mut pass_counts = [0usize; 8];
    let mut fail_counts = [0usize; 8];
    let mut skip_counts = [0usize; 8];
    let mut residuals = MaxResiduals::default();
    let mut evolute_density_max = f64::NEG_INFINITY;
    let mut histogram: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    let mut first_failure: Option<FailureDump> = None;
    let mut polygons = 0usize;

    for n in args.n_lo..=args.n_hi {
        for index in 0..args.count {
            let pseed = master.next_u64();
            let inject_here = args.inject_flip && n == args.n_lo && index == 0;
            let mut failed: Vec<String> = Vec::new();
            let mut document = None;

            match random_convex_polygon(&GenSpec::sized(n, pseed), tol) {
                Err(e) => failed.push(format!("generation ({e})")),
                Ok((p, _)) => {
                    document = Some(dump_document(&p, n, pseed, index));
                    match analyze(&p, false) {
                        Err(e) => failed.push(format!("analysis ({e})")),
                        Ok(report) => {
                            let mut st = statuses(&report);
                            if inject_here {
                                st[tamper(&p, &mut failed)] = CheckStatus::Fail;
                            }
                            for (k, s) in st.iter().enumerate() {
                                match s {
                                    CheckStatus::Pass => pass_counts[k] += 1,
                                    CheckStatus::Fail => {
                                        fail_counts[k] += 1;
                                        failed.push(CHECK_NAMES[k].to_string());
                                    }
                                    _ => {
                                        skip_counts[k] += 1;
                                        failed.push(format!("{} (not evaluated)", CHECK_NAMES[k]));
                                    }
                                }
                            }
                            fold_residuals(&report, &mut residuals, &mut evolute_density_max);
                            if let Some(count) = report.aggregates.extremal_count {
                                *histogram.entry(count as u64).or_insert(0) += 1;
                            }
                        }
                    }
                }
            }

            polygons += 1;
            if !failed.is_empty() && first_failure.is_none() {
                failed.sort();
                failed.dedup();
                first_failure = Some(FailureDump {
                    n,
                    index,
                    seed: pseed,
                    failed_checks: failed,
                    document,
                });
            }
        }
    }

    let all_pass = first_failure.is_none();
    let summary = VerifySummary {
        schema: hypergon::analysis::REPORT_SCHEMA,
        prng: PRNG_ALGORITHM,
        seed: args.seed,
        count_per_n: args.count,
        n_range: [args.n_lo, args.n_hi],
        tolerances: tol,
        polygons,
        all_pass,
        injected_failure: args.inject_flip,
        evolute_density_max,
        checks: (0..8)
            .map(|k| CheckCount {
                name: CHECK_NAMES[k],
                pass: pass_counts[k],
                fail: fail_counts[k],
                not_evaluated: skip_counts[k],
            })
            .collect(),
        max_residuals: residuals,
        extremal_counts: histogram.into_iter().map(|(k, v)| [k, v]).collect(),
        first_failure,
    };

    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    let table = render_table(&summary);
    VerifyOutcome {
        json,
        table,
        all_pass,
    }
}

/// Test-only failure injection: reverses the first edge direction of
/// the curvature graph and re-runs the cusp agreement on the tampered
/// labels. Both endpoint labels of the flipped edge change while the
/// evolute's cusps do not, so the agreement genuinely breaks; this
/// proves the failure path end to end. Returns the index of the check
/// the tampering falsifies.
fn tamper(p: &hypergon::HPolygon, failed: &mut Vec<String>) -> usize {
    let graph = hypergon::curvature::build_graph(p).expect("validated polygon has a graph");
    let evolute = hypergon::evolute::build_evolute(p).expect("validated polygon has an evolute");
    let mut dirs = graph.edge_dir.clone();
    dirs[0] = dirs[0].reversed();
    let tampered = CurvatureGraph::from_directions(dirs);
    let desynced = (0..p.n()).any(|i| {
        let extremal = tampered.extremal[i] != hypergon::curvature::Extremality::Regular;
        extremal != evolute.cusp[i]
    });
    assert!(desynced, "edge flip must desynchronize labels from cusps");
    failed.push("injected edge flip".to_string());
    CHECK_NAMES
        .iter()
        .position(|&n| n == "cusp_extremal_agreement")
        .unwrap()
}

fn fold_residuals(r: &AnalysisReport, m: &mut MaxResiduals, evolute_density_max: &mut f64) {
    let a = &r.aggregates;
    let take = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = slot.max(v);
        }
    };
    take(&mut m.density_identity, a.density_identity_residual);
    take(&mut m.rearranged_identity, a.rearranged_identity_residual);
    take(&mut m.gauss_bonnet, a.gauss_bonnet_residual);
    take(&mut m.defect_area, a.max_defect_area_residual);
    take(&mut m.mediatrix, a.max_mediatrix_residual);
    take(&mut m.gap_decomposition, a.max_decomposition_residual);
    if let Some(d) = a.evolute_density {
        *evolute_density_max = evolute_density_max.max(d);
    }
}

fn render_table(s: &VerifySummary) -> String {
    let mut t = String::new();
    writeln!(
        t,
        "verified {} polygons (n = {}..{}, {} per n, seed {})",
        s.polygons, s.n_range[0], s.n_range[1], s.count_per_n, s.seed
    )
    .unwrap();
    writeln!(t, "{:<28} {:>8} {:>8} {:>8}", "check", "pass", "fail", "n/e").unwrap();
    for c in &s.checks {
        writeln!(
            t,
            "{:<28} {:>8} {:>8} {:>8}",
            c.name, c.pass, c.fail, c.not_evaluated
        )
        .unwrap();
    }
    writeln!(
        t,
        "max residuals: identity {:.3e} | rearranged {:.3e} | gauss-bonnet {:.3e} | defect-area {:.3e} | mediatrix {:.3e} | gap {:.3e}",
        s.max_residuals.density_identity,
        s.max_residuals.rearranged_identity,
        s.max_residuals.gauss_bonnet,
        s.max_residuals.defect_area,
        s.max_residuals.mediatrix,
        s.max_residuals.gap_decomposition,
    )
    .unwrap();
    writeln!(t, "evolute density max: {:.9}", s.evolute_density_max).unwrap();
    let hist: Vec<String> = s
        .extremal_counts
        .iter()
        .map(|[k, v]| format!("N={k}: {v}"))
        .collect();
    writeln!(t, "extremal counts: {}", hist.join(", ")).unwrap();
    if let Some(f) = &s.first_failure {
        writeln!(
            t,
            "FIRST FAILURE: n={} index={} seed={} checks=[{}]",
            f.n,
            f.index,
            f.seed,
            f.failed_checks.join(", ")
        )
        .unwrap();
        if let Some(doc) = &f.document {
            writeln!(
                t,
                "reproduction document: {}",
                serde_json::to_string(doc).expect("document serializes")
            )
            .unwrap();
        }
    }
    t
}
