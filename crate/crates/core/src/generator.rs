//! Seeded random polygon generation by rejection sampling, plus the
//! perturbation and shrink utilities the batch suites are built on.
//!
//! Everything here is deterministic: one [`SplitMix64`] stream per call,
//! a fixed draw order, and no environment input, so a `(spec)` pair
//! reproduces the same polygon bit for bit on any platform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{HPolygon, ValidationReport};
use crate::tolerance::Tolerances;

/// Identifier of the PRNG written into corpus metadata.
pub const PRNG_ALGORITHM: &str = "splitmix64";

/// Attempt cap per returned polygon before giving up with
/// [`Error::Exhausted`].
pub const MAX_ATTEMPTS: u32 = 10_000;

/// 64-bit splitmix generator.
///
/// State advance: `state += 0x9E3779B97F4A7C15`; output: the new state
/// mixed by two xor-shift-multiply rounds (`>> 30` with
/// `0xBF58476D1CE4E5B9`, `>> 27` with `0x94D049BB133111EB`) and a final
/// `>> 31` xor. Small and fully specified so corpora can be regenerated
/// by independent implementations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Sampling family selector, recorded in corpus metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenFamily {
    ConvexRandom,
    PerturbedRegular,
    Shrink(f64),
}

/// Parameters of one generation stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    /// Poincare radius band `[r_min, r_max]` the vertices are drawn from.
    pub radial_range: [f64; 2],
    /// Per-coordinate perturbation bound for the perturbed-regular family.
    pub jitter: f64,
    pub family: GenFamily,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            n: 6,
            seed: 0,
            radial_range: [0.2, 0.45],
            jitter: 1e-2,
            family: GenFamily::ConvexRandom,
        }
    }
}

impl GenSpec {
    /// Spec with a radial band that narrows as `n` grows.
    ///
    /// Wide bands make reflex vertices overwhelmingly likely at large
    /// `n` (a vertex drawn much closer to the origin than its
    /// neighbours dents the boundary), so the band contracts roughly
    /// like `1/n^2`, which keeps the convexity acceptance rate of
    /// rejection sampling well away from the attempt cap.
    pub fn sized(n: usize, seed: u64) -> Self {
        let half = (2.0 / (n as f64 * n as f64)).min(0.125);
        GenSpec {
            n,
            seed,
            radial_range: [0.35 - half, 0.35 + half],
            ..GenSpec::default()
        }
    }

    pub fn check(&self, tol: &Tolerances) -> Result<()> {
        let [lo, hi] = self.radial_range;
        if self.n < 3 {
            return Err(Error::InvalidSpec { reason: "need at least three vertices" });
        }
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
            return Err(Error::InvalidSpec { reason: "radial range must satisfy 0 < r_min <= r_max" });
        }
        if hi >= 1.0 - tol.eps_boundary {
            return Err(Error::InvalidSpec { reason: "radial range reaches the ideal boundary" });
        }
        if !(self.jitter.is_finite() && self.jitter >= 0.0) {
            return Err(Error::InvalidSpec { reason: "jitter must be finite and non-negative" });
        }
        Ok(())
    }
}

/// Rejection counters for one generation stream.
///
/// Exactly one counter is bumped per failed attempt (the first failing
/// check in the order simple, generic, coherent, convex), so
/// `attempts = 1 + sum of rejections` whenever a polygon is returned.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenStats {
    pub attempts: u32,
    pub rejected_simple: u32,
    pub rejected_generic: u32,
    pub rejected_coherent: u32,
    pub rejected_convex: u32,
}

impl GenStats {
    pub fn rejections(&self) -> u32 {
        self.rejected_simple + self.rejected_generic + self.rejected_coherent + self.rejected_convex
    }

    fn bump(&mut self, reject: Reject) {
        match reject {
            Reject::Simple => self.rejected_simple += 1,
            Reject::Generic => self.rejected_generic += 1,
            Reject::Coherent => self.rejected_coherent += 1,
            Reject::Convex => self.rejected_convex += 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Reject {
    Simple,
    Generic,
    Coherent,
    Convex,
}

/// Checks one candidate with the cheap validation mode and classifies
/// the first failure; also enforces the adjacent circumradius margin
/// that keeps every later radius comparison strict.
fn screen(points: &[[f64; 2]], tol: Tolerances) -> std::result::Result<HPolygon, Reject> {
    let p = HPolygon::from_poincare(points, tol).map_err(|_| Reject::Simple)?;
    let report = p.validate_mode(true);
    if !report.simple.ok {
        return Err(Reject::Simple);
    }
    if !report.generic_line.ok || !report.generic_circle.ok || !report.all_non_ideal.ok {
        return Err(Reject::Generic);
    }
    if !report.coherent.ok {
        return Err(Reject::Coherent);
    }
    if !report.convex.ok {
        return Err(Reject::Convex);
    }
    for i in 0..p.n() {
        let r = p.circle_at(i).map_err(|_| Reject::Coherent)?.1;
        let r_next = p.circle_at((i + 1) % p.n()).map_err(|_| Reject::Coherent)?.1;
        if (r - r_next).abs() <= 10.0 * tol.eps_id {
            return Err(Reject::Generic);
        }
    }
    Ok(p)
}

/// Resamples `sample` until a candidate passes full validation.
fn rejection_loop<F>(tol: Tolerances, mut sample: F) -> Result<(HPolygon, GenStats)>
where
    F: FnMut() -> Vec<[f64; 2]>,
{
    let mut stats = GenStats::default();
    while stats.attempts < MAX_ATTEMPTS {
        stats.attempts += 1;
        let points = sample();
        match screen(&points, tol) {
            Ok(p) => {
                // The screen checks concyclicity only on consecutive
                // quadruples; confirm the full quantifier before
                // returning. A miss here is a genericity failure.
                if p.validate().all_pass() {
                    return Ok((p, stats));
                }
                stats.bump(Reject::Generic);
            }
            Err(reject) => stats.bump(reject),
        }
    }
    Err(Error::Exhausted { attempts: stats.attempts })
}

/// Draws a validated convex polygon.
///
/// Per attempt: `n` angles uniform in `[0, 2pi)` sorted ascending (a
/// star-shaped, counterclockwise candidate by construction), then `n`
/// Poincare radii uniform in the radial band, paired with the sorted
/// angles in order. Candidates are resampled until one passes all of
/// simple, generic, coherent, and convex, with adjacent circumradii
/// separated by more than `10 * eps_id`.
pub fn random_convex_polygon(spec: &GenSpec, tol: Tolerances) -> Result<(HPolygon, GenStats)> {
    spec.check(&tol)?;
    let mut rng = SplitMix64::new(spec.seed);
    let n = spec.n;
    let [lo, hi] = spec.radial_range;
    rejection_loop(tol, move || {
        let mut thetas: Vec<f64> = (0..n).map(|_| rng.uniform(0.0, std::f64::consts::TAU)).collect();
        thetas.sort_by(|a, b| a.total_cmp(b));
        thetas
            .iter()
            .map(|&t| {
                let r = rng.uniform(lo, hi);
                [r * t.cos(), r * t.sin()]
            })
            .collect()
    })
}

/// Poincare radius of the regular base polygon used by
/// [`perturbed_regular`].
pub const REGULAR_BASE_RADIUS: f64 = 0.35;

/// Draws a jittered regular polygon.
///
/// Vertex `k` starts at angle `2 pi k / n` and radius
/// [`REGULAR_BASE_RADIUS`], then each Poincare coordinate is offset
/// uniformly in `[-jitter, jitter]`. The exact regular polygon is
/// concyclic, so `jitter = 0` is rejected forever and exhausts.
pub fn perturbed_regular(
    n: usize,
    jitter: f64,
    seed: u64,
    tol: Tolerances,
) -> Result<(HPolygon, GenStats)> {
    let spec = GenSpec {
        n,
        seed,
        jitter,
        family: GenFamily::PerturbedRegular,
        ..GenSpec::default()
    };
    spec.check(&tol)?;
    let mut rng = SplitMix64::new(seed);
    rejection_loop(tol, move || {
        (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                let dx = rng.uniform(-jitter, jitter);
                let dy = rng.uniform(-jitter, jitter);
                [REGULAR_BASE_RADIUS * t.cos() + dx, REGULAR_BASE_RADIUS * t.sin() + dy]
            })
            .collect()
    })
}

/// Scales every vertex's Poincare coordinates by `lambda`, rebuilding
/// and revalidating the polygon with the same tolerances.
///
/// `lambda` near zero pushes the polygon into the nearly Euclidean
/// regime at the origin. The validation report is returned rather than
/// enforced; extreme scales can legitimately fail genericity and the
/// caller decides what that means.
pub fn shrink(p: &HPolygon, lambda: f64) -> Result<(HPolygon, ValidationReport)> {
    if !(lambda.is_finite() && 0.0 < lambda && lambda <= 1.0) {
        return Err(Error::InvalidSpec { reason: "shrink factor must lie in (0, 1]" });
    }
    // Scaling by one is the identity; skip the disk round trip so the
    // vertices come back bit for bit.
    let scaled = if lambda == 1.0 {
        p.clone()
    } else {
        let points: Vec<[f64; 2]> = p
            .poincare_vertices()
            .into_iter()
            .map(|[x, y]| [lambda * x, lambda * y])
            .collect();
        HPolygon::from_poincare(&points, *p.tolerances())?
    };
    let report = scaled.validate();
    Ok((scaled, report))
}
