//! Density, defect, and area bookkeeping: the executable identities that
//! tie the polygon, its curvature graph, and its evolute together.
//!
//! The headline check couples everything: writing `den` for density, `N`
//! for the extremal-vertex count and `delta_i` for the defect of the
//! quadrilateral spanned by `V_i`, its two edge midpoints, and the
//! circumcenter `O_i`,
//!
//! ```text
//! 2 den(P) - 2 den(E(P)) = N + (1/pi) * sum(delta_i)
//! ```
//!
//! Each of the four terms comes from its own code path (angle sums for
//! the densities, the directed graph for `N`, quadrilateral geometry for
//! the defects), so a small residual genuinely cross-validates the whole
//! pipeline instead of restating one computation.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::curvature::build_graph;
use crate::error::{Error, Result};
use crate::evolute::{build_evolute, Evolute};
use crate::geom::{midpoint, separation, unsigned_angle, HPoint};
use crate::polygon::HPolygon;

/// Density value tagged with the curve it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub value: f64,
    pub source: DensitySource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensitySource {
    Polygon,
    Evolute,
}

/// `(1/2pi) * sum(pi - angle)` over a closed curve's left angles.
pub fn density_of_angles<I: IntoIterator<Item = f64>>(angles: I) -> f64 {
    angles.into_iter().map(|a| PI - a).sum::<f64>() / (2.0 * PI)
}

pub fn polygon_density(p: &HPolygon) -> Result<DensityValue> {
    Ok(DensityValue { value: p.density()?, source: DensitySource::Polygon })
}

pub fn evolute_density(e: &Evolute) -> DensityValue {
    DensityValue {
        value: density_of_angles(e.left_angles.iter().copied()),
        source: DensitySource::Evolute,
    }
}

/// Area of a convex polygon by fan triangulation from `V_0`: the sum of
/// the triangle defects `pi - (angle sum)`.
pub fn polygon_area(p: &HPolygon) -> Result<f64> {
    if !p.is_convex()? {
        return Err(Error::NonConvex);
    }
    let tol = p.tolerances();
    let mut area = 0.0;
    for i in 1..p.n() - 1 {
        let (a, b, c) = (p.vertex(0), p.vertex(i), p.vertex(i + 1));
        let sum = unsigned_angle(a, b, c, tol)?
            + unsigned_angle(b, c, a, tol)?
            + unsigned_angle(c, a, b, tol)?;
        area += PI - sum;
    }
    Ok(area)
}

/// Defect data of the quadrilateral `(M_{i-1}, V_i, M_i, O_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectRecord {
    pub index: usize,
    /// `pi - angle(V_i) - alpha_i`; equals the quadrilateral's area.
    pub delta: f64,
    /// Unsigned angle of the quadrilateral at the circumcenter.
    pub alpha: f64,
    /// Area recomputed independently by splitting along the diagonal
    /// `V_i O_i` and summing triangle defects.
    pub quad_area: f64,
    /// Measured angles at the two midpoints; the bisector geodesics make
    /// them right angles.
    pub mediatrix_angles: [f64; 2],
}

/// Builds the defect record at vertex `i` from an already-built evolute.
///
/// The bisector structure is verified on the spot: both midpoint angles
/// must be right angles and the defect must match the triangulated area
/// within `eps_id`, otherwise the input was degenerate in a way
/// validation cannot represent and an error is returned.
pub fn quadrilateral_defect(p: &HPolygon, e: &Evolute, i: usize) -> Result<DefectRecord> {
    let tol = p.tolerances();
    let v = p.vertex(i);
    let m_prev = midpoint(p.cyclic(i as isize - 1), v, tol)?;
    let m_next = midpoint(v, p.cyclic(i as isize + 1), tol)?;
    let o = &e.centers[i];
    for (a, b) in [(o, &m_prev), (o, &m_next), (o, v)] {
        let s = separation(a.coords(), b.coords());
        if s <= tol.eps_sep {
            return Err(Error::Coincident { separation: s });
        }
    }

    let alpha = unsigned_angle(o, &m_prev, &m_next, tol)?;
    let angle_v = p.left_angle_at(i)?;
    let delta = PI - angle_v - alpha;

    // Independent area: triangles (M_{i-1}, V_i, O_i) and (V_i, M_i, O_i).
    let tri_defect = |a: &HPoint, b: &HPoint, c: &HPoint| -> Result<f64> {
        Ok(PI - unsigned_angle(a, b, c, tol)?
            - unsigned_angle(b, c, a, tol)?
            - unsigned_angle(c, a, b, tol)?)
    };
    let quad_area = tri_defect(&m_prev, v, o)? + tri_defect(v, &m_next, o)?;

    let mediatrix_angles = [
        unsigned_angle(&m_prev, v, o, tol)?,
        unsigned_angle(&m_next, v, o, tol)?,
    ];
    for a in mediatrix_angles {
        let residual = (a - FRAC_PI_2).abs();
        if residual > tol.eps_id {
            return Err(Error::IdentityViolation { what: "bisector right angle", residual });
        }
    }
    let residual = (delta - quad_area).abs();
    if residual > tol.eps_id {
        return Err(Error::IdentityViolation { what: "defect equals quadrilateral area", residual });
    }

    Ok(DefectRecord { index: i, delta, alpha, quad_area, mediatrix_angles })
}

/// Defect records at every vertex.
pub fn defect_records(p: &HPolygon, e: &Evolute) -> Result<Vec<DefectRecord>> {
    (0..p.n()).map(|i| quadrilateral_defect(p, e, i)).collect()
}

/// All terms of the density identity, each from its own code path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityIdentity {
    pub polygon_density: f64,
    pub evolute_density: f64,
    pub extremal_count: usize,
    pub defect_sum: f64,
    pub alpha_sum: f64,
    /// `|2 den(P) - 2 den(E) - N - defect_sum / pi|`.
    pub residual: f64,
    /// Residual of the rearranged form `(1/pi) sum(alpha_i) - 2 den(E) = N`.
    pub rearranged_residual: f64,
}

/// Evaluates the density identity on a validated convex polygon with at
/// least four vertices.
pub fn density_identity(p: &HPolygon) -> Result<DensityIdentity> {
    if p.n() < 4 {
        return Err(Error::TooFewVertices { got: p.n(), need: 4 });
    }
    if !p.is_convex()? {
        return Err(Error::NonConvex);
    }
    let den_p = polygon_density(p)?.value;
    let evolute = build_evolute(p)?;
    let den_e = evolute_density(&evolute).value;
    let graph = build_graph(p)?;
    let n_ext = graph.extremal_count();
    let records = defect_records(p, &evolute)?;
    let defect_sum: f64 = records.iter().map(|r| r.delta).sum();
    let alpha_sum: f64 = records.iter().map(|r| r.alpha).sum();
    let residual = (2.0 * den_p - 2.0 * den_e - n_ext as f64 - defect_sum / PI).abs();
    let rearranged_residual = (alpha_sum / PI - 2.0 * den_e - n_ext as f64).abs();
    Ok(DensityIdentity {
        polygon_density: den_p,
        evolute_density: den_e,
        extremal_count: n_ext,
        defect_sum,
        alpha_sum,
        residual,
        rearranged_residual,
    })
}

/// Evolute density bound check: `den(E(P)) <= -1` up to `eps_id`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvoluteDensityBound {
    pub density: f64,
    pub pass: bool,
}

pub fn evolute_density_bound(p: &HPolygon) -> Result<EvoluteDensityBound> {
    let e = build_evolute(p)?;
    let density = evolute_density(&e).value;
    Ok(EvoluteDensityBound { density, pass: density <= -1.0 + p.tolerances().eps_id })
}

/// Four-vertex count check: at least four extremal vertices, evenly split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVertexCheck {
    pub extremal_count: usize,
    pub even: bool,
    pub pass: bool,
}

pub fn four_vertex_check(p: &HPolygon) -> Result<FourVertexCheck> {
    if p.n() < 4 {
        return Err(Error::TooFewVertices { got: p.n(), need: 4 });
    }
    if !p.is_convex()? {
        return Err(Error::NonConvex);
    }
    let graph = build_graph(p)?;
    let count = graph.extremal_count();
    let even = count % 2 == 0;
    Ok(FourVertexCheck { extremal_count: count, even, pass: count >= 4 && even })
}
