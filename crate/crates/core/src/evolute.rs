//! Evolute construction and cusp detection.
//!
//! The evolute of a polygon is the closed curve through its circumcenters
//! `O_1..O_n`, traversed in the same index order as the vertices and with
//! no orientation normalization of its own: the density identities
//! downstream are sensitive to exactly this convention. Consecutive
//! centers share a perpendicular-bisector geodesic, which is what makes
//! the defect quadrilaterals of the identities module close up.

use serde::{Deserialize, Serialize};

use crate::curvature::{build_graph, Extremality};
use crate::error::{Error, Result};
use crate::geom::{left_angle, separation, HPoint};
use crate::polygon::HPolygon;
use crate::tolerance::Tolerances;

/// Closed curve of circumcenters, possibly non-simple.
#[derive(Debug, Clone)]
pub struct Evolute {
    /// `centers[i]` is the circumcenter of `(V_{i-1}, V_i, V_{i+1})`.
    pub centers: Vec<HPoint>,
    /// Circumradius at each index, kept for reports and radius oracles.
    pub radii: Vec<f64>,
    /// Left angle of the evolute at each center, same traversal order as
    /// the polygon.
    pub left_angles: Vec<f64>,
    /// Cusp flag per vertex: the angle gap exceeds pi in absolute value.
    pub cusp: Vec<bool>,
    /// Signed angle gap (evolute angle minus polygon angle) per vertex.
    pub gaps: Vec<f64>,
}

/// Cusp decision at one vertex with the signed gap behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspRecord {
    pub index: usize,
    pub cusp: bool,
    /// Evolute left angle minus polygon left angle. On convex polygons
    /// this lies in (0, pi) at ordinary vertices and above pi at cusps.
    pub gap: f64,
}

/// Builds the evolute of a validated polygon.
///
/// Fails if any consecutive triple has no circumcircle, if consecutive
/// centers collide (a non-generic quadruple), if the evolute itself
/// doubles back, or if any angle gap lands on the cusp boundary.
pub fn build_evolute(p: &HPolygon) -> Result<Evolute> {
    let n = p.n();
    let tol = *p.tolerances();
    let mut centers = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (c, r) = p.circle_at(i)?;
        centers.push(*c);
        radii.push(r);
    }
    for i in 0..n {
        let s = separation(centers[i].coords(), centers[(i + 1) % n].coords());
        if s <= tol.eps_sep {
            return Err(Error::CenterCollision { index: i });
        }
    }
    let left_angles = (0..n)
        .map(|i| {
            left_angle(
                &centers[(i + n - 1) % n],
                &centers[i],
                &centers[(i + 1) % n],
                &tol,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cusp = Vec::with_capacity(n);
    let mut gaps = Vec::with_capacity(n);
    for i in 0..n {
        let rec = cusp_record(i, p.left_angle_at(i)?, left_angles[i], &tol)?;
        cusp.push(rec.cusp);
        gaps.push(rec.gap);
    }
    Ok(Evolute { centers, radii, left_angles, cusp, gaps })
}

fn cusp_record(
    index: usize,
    polygon_angle: f64,
    evolute_angle: f64,
    tol: &Tolerances,
) -> Result<CuspRecord> {
    let gap = evolute_angle - polygon_angle;
    let excess = gap.abs() - std::f64::consts::PI;
    if excess.abs() < tol.eps_id {
        // The strict cusp inequality cannot be decided this close to the
        // boundary; the input is rejected rather than classified.
        return Err(Error::CuspBoundary { index, excess });
    }
    Ok(CuspRecord { index, cusp: excess > 0.0, gap })
}

/// Recomputes the cusp decision at every vertex from the two angle
/// sequences. `build_evolute` already stores the same answers; this is
/// the standalone form used by reports and cross-checks.
pub fn detect_cusps(p: &HPolygon, e: &Evolute) -> Result<Vec<CuspRecord>> {
    (0..p.n())
        .map(|i| cusp_record(i, p.left_angle_at(i)?, e.left_angles[i], p.tolerances()))
        .collect()
}

/// Per-vertex comparison of curvature extremality against evolute cusps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspAgreement {
    /// Indices where one of extremal/cusp holds and the other does not.
    pub mismatches: Vec<usize>,
    /// Whether the equivalence is asserted theory (convex input) or only
    /// observed (non-convex input).
    pub asserted: bool,
}

/// Checks `extremal[i] <=> cusp[i]` across the polygon. On convex inputs
/// the equivalence is a theorem and `mismatches` must come back empty;
/// on non-convex inputs the report is advisory.
pub fn extremal_cusp_agreement(p: &HPolygon) -> Result<CuspAgreement> {
    let graph = build_graph(p)?;
    let evolute = build_evolute(p)?;
    let mismatches = (0..p.n())
        .filter(|&i| (graph.extremal[i] != Extremality::Regular) != evolute.cusp[i])
        .collect();
    Ok(CuspAgreement { mismatches, asserted: p.is_convex()? })
}
