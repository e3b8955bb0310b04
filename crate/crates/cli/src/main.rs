//! `hypergon`: validate, analyze, batch-verify, generate, and render
//! polygons in the hyperbolic plane.
//!
//! Exit codes everywhere: 0 all checks passed, 1 a checked property
//! failed, 2 usage, parse, or I/O trouble. All randomness flows from
//! explicit `--seed` flags; nothing reads the clock or the environment.

mod document;
mod render;
mod verify;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use document::{load_tolerances, read_document, PolygonDocument};
use hypergon::analysis::{analyze, REPORT_SCHEMA};
use hypergon::generator::{
    perturbed_regular, random_convex_polygon, shrink, GenSpec, SplitMix64, PRNG_ALGORITHM,
};
use hypergon::polygon::ValidationReport;
use hypergon::Tolerances;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hypergon", version, about = "Discrete curvature and evolutes of hyperbolic polygons")]
struct Cli {
    /// JSON file overriding numerical tolerances (partial configs fill
    /// the rest from defaults).
    #[arg(long, global = true, value_name = "FILE")]
    tolerances: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a polygon document: simplicity, genericity, coherence,
    /// convexity. Exit 0 only if every flag passes.
    Validate {
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Full analysis report: angles, circumcircles, curvature labels,
    /// evolute, densities, defects, and theorem checks.
    Analyze {
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Analyze even if validation fails; checks are then reported
        /// as not asserted.
        #[arg(long)]
        force: bool,
    },
    /// Generate seeded polygons across a range of vertex counts and
    /// verify every check on each one. Summary JSON on stdout, table on
    /// stderr.
    Verify {
        /// Polygons per vertex count.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Inclusive range of vertex counts, e.g. 4..12.
        #[arg(long, value_name = "A..B", default_value = "4..8")]
        n_range: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Force one failure to exercise the reporting path (testing).
        #[arg(long, hide = true)]
        inject_flip: bool,
    },
    /// Sample polygon documents as JSON lines.
    Generate {
        /// Vertex count.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Family::ConvexRandom)]
        family: Family,
        /// Per-coordinate jitter for the perturbed-regular family.
        #[arg(long, default_value_t = 1e-2)]
        jitter: f64,
        /// Poincare radius band as LO..HI; default adapts to n.
        #[arg(long, value_name = "LO..HI")]
        radial_range: Option<String>,
        /// Scale factor for the shrink family.
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        /// Write JSON lines here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Draw the polygon, its evolute, and optionally the circumcircles
    /// into an SVG.
    Render {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Overlay the circumcircle of each consecutive vertex triple.
        #[arg(long)]
        circles: bool,
        /// Emit true circular arcs instead of sampled polylines.
        #[arg(long)]
        exact_arcs: bool,
        /// Points per sampled edge (values below 64 are raised to 64).
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ConvexRandom,
    PerturbedRegular,
    Shrink,
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    schema: u32,
    all_pass: bool,
    tolerances: &'a Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    build_error: Option<String>,
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .with_context(|| format!("cannot write {}", p.display())),
    }
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .with_context(|| format!("range {s:?} is not of the form A..B"))?;
    let lo: usize = a.trim().parse().with_context(|| format!("bad range start {a:?}"))?;
    let hi: usize = b.trim().parse().with_context(|| format!("bad range end {b:?}"))?;
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok((lo, hi))
}

fn parse_band(s: &str) -> anyhow::Result<[f64; 2]> {
    let (a, b) = s
        .split_once("..")
        .with_context(|| format!("band {s:?} is not of the form LO..HI"))?;
    let lo: f64 = a.trim().parse().with_context(|| format!("bad band start {a:?}"))?;
    let hi: f64 = b.trim().parse().with_context(|| format!("bad band end {b:?}"))?;
    Ok([lo, hi])
}

fn cmd_validate(input: &Path, out: Option<&Path>, tol: Tolerances) -> anyhow::Result<u8> {
    let doc = read_document(input)?;
    match doc.to_polygon(tol)? {
        Err(build_error) => {
            let report = ValidateOutput {
                schema: REPORT_SCHEMA,
                all_pass: false,
                tolerances: &tol,
                validation: None,
                build_error: Some(build_error.to_string()),
            };
            emit(&serde_json::to_string_pretty(&report)?, out)?;
            Ok(1)
        }
        Ok(p) => {
            let validation = p.validate();
            let all_pass = validation.all_pass();
            let report = ValidateOutput {
                schema: REPORT_SCHEMA,
                all_pass,
                tolerances: &tol,
                validation: Some(&validation),
                build_error: None,
            };
            emit(&serde_json::to_string_pretty(&report)?, out)?;
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn cmd_analyze(input: &Path, out: Option<&Path>, force: bool, tol: Tolerances) -> anyhow::Result<u8> {
    let doc = read_document(input)?;
    let p = match doc.to_polygon(tol)? {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cannot build polygon: {e}");
            return Ok(1);
        }
    };
    match analyze(&p, force) {
        Ok(report) => {
            emit(&serde_json::to_string_pretty(&report)?, out)?;
            Ok(0)
        }
        Err(e) => {
            eprintln!("analysis refused: {e} (use --force to explore anyway)");
            Ok(1)
        }
    }
}

fn cmd_verify(count: usize, n_range: &str, seed: u64, inject_flip: bool, tol: Tolerances) -> anyhow::Result<u8> {
    let (n_lo, n_hi) = parse_range(n_range)?;
    if count == 0 {
        bail!("--count must be positive");
    }
    if n_lo < 4 {
        bail!("vertex counts below 4 are out of scope: the extremal-vertex machinery needs at least four vertices (got {n_range})");
    }
    let outcome = verify::run_verify(
        &verify::VerifyArgs {
            count,
            n_lo,
            n_hi,
            seed,
            inject_flip,
        },
        tol,
    );
    eprint!("{}", outcome.table);
    println!("{}", outcome.json);
    Ok(if outcome.all_pass { 0 } else { 1 })
}

fn cmd_generate(
    n: usize,
    count: usize,
    seed: u64,
    family: Family,
    jitter: f64,
    radial_range: Option<&str>,
    lambda: f64,
    out: Option<&Path>,
    tol: Tolerances,
) -> anyhow::Result<u8> {
    let band = radial_range.map(parse_band).transpose()?;
    let mut master = SplitMix64::new(seed);
    let mut lines = String::new();
    for index in 0..count {
        let pseed = master.next_u64();
        let doc = generate_one(n, pseed, index, family, jitter, band, lambda, tol)?;
        lines.push_str(&serde_json::to_string(&doc)?);
        lines.push('\n');
    }
    match out {
        None => print!("{lines}"),
        Some(p) => std::fs::write(p, &lines)
            .with_context(|| format!("cannot write {}", p.display()))?,
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn generate_one(
    n: usize,
    pseed: u64,
    index: usize,
    family: Family,
    jitter: f64,
    band: Option<[f64; 2]>,
    lambda: f64,
    tol: Tolerances,
) -> anyhow::Result<PolygonDocument> {
    let spec_for = |pseed: u64| match band {
        Some(radial_range) => GenSpec {
            n,
            seed: pseed,
            radial_range,
            ..GenSpec::default()
        },
        None => GenSpec::sized(n, pseed),
    };
    let (polygon, meta) = match family {
        Family::ConvexRandom => {
            let spec = spec_for(pseed);
            let (p, stats) = random_convex_polygon(&spec, tol)
                .with_context(|| format!("generation failed (n={n}, seed={pseed})"))?;
            let meta = serde_json::json!({
                "family": "convex_random",
                "n": n,
                "seed": pseed,
                "index": index,
                "prng": PRNG_ALGORITHM,
                "radial_range": spec.radial_range,
                "attempts": stats.attempts,
            });
            (p, meta)
        }
        Family::PerturbedRegular => {
            let (p, stats) = perturbed_regular(n, jitter, pseed, tol)
                .with_context(|| format!("generation failed (n={n}, seed={pseed})"))?;
            let meta = serde_json::json!({
                "family": "perturbed_regular",
                "n": n,
                "seed": pseed,
                "index": index,
                "prng": PRNG_ALGORITHM,
                "jitter": jitter,
                "attempts": stats.attempts,
            });
            (p, meta)
        }
        Family::Shrink => {
            let spec = spec_for(pseed);
            let (base, _) = random_convex_polygon(&spec, tol)
                .with_context(|| format!("generation failed (n={n}, seed={pseed})"))?;
            let (p, report) = shrink(&base, lambda)?;
            if !report.all_pass() {
                bail!(
                    "shrink by {lambda} leaves the polygon invalid ({}); pick a milder factor",
                    report.failed_flags().join(", ")
                );
            }
            let meta = serde_json::json!({
                "family": "shrink",
                "n": n,
                "seed": pseed,
                "index": index,
                "prng": PRNG_ALGORITHM,
                "lambda": lambda,
                "radial_range": spec.radial_range,
            });
            (p, meta)
        }
    };
    Ok(PolygonDocument::from_poincare_vertices(
        polygon.poincare_vertices(),
        Some(meta),
    ))
}

fn cmd_render(
    input: &Path,
    out: &Path,
    opts: &render::RenderOptions,
    tol: Tolerances,
) -> anyhow::Result<u8> {
    let doc = read_document(input)?;
    let p = match doc.to_polygon(tol)? {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cannot build polygon: {e}");
            return Ok(1);
        }
    };
    match render::render_svg(&p, opts) {
        Ok(svg) => {
            std::fs::write(out, svg).with_context(|| format!("cannot write {}", out.display()))?;
            Ok(0)
        }
        Err(e) => {
            eprintln!("render refused: {e}");
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let tol = load_tolerances(cli.tolerances.as_deref())?;
    match &cli.cmd {
        Cmd::Validate { input, out } => cmd_validate(input, out.as_deref(), tol),
        Cmd::Analyze { input, out, force } => cmd_analyze(input, out.as_deref(), *force, tol),
        Cmd::Verify {
            count,
            n_range,
            seed,
            inject_flip,
        } => cmd_verify(*count, n_range, *seed, *inject_flip, tol),
        Cmd::Generate {
            n,
            count,
            seed,
            family,
            jitter,
            radial_range,
            lambda,
            out,
        } => cmd_generate(
            *n,
            *count,
            *seed,
            *family,
            *jitter,
            radial_range.as_deref(),
            *lambda,
            out.as_deref(),
            tol,
        ),
        Cmd::Render {
            input,
            out,
            circles,
            exact_arcs,
            samples,
        } => cmd_render(
            input,
            out,
            &render::RenderOptions {
                circles: *circles,
                exact_arcs: *exact_arcs,
                samples: *samples,
            },
            tol,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
