//! Classification of the constant-curvature curve through three points,
//! and circumcenters where that curve is a circle.
//!
//! The equidistant locus of two sheet points `a`, `b` is the plane
//! `<x, a-b> = 0`. Intersecting the bisector planes of two point pairs
//! gives a line through the origin spanned by a Minkowski cross product
//! `v`; the causal character of `v` decides everything. Timelike `v`
//! pierces the sheet at the unique equidistant point (a circle), null `v`
//! marks a horocycle, spacelike `v` a hypercycle. A collinear triple is
//! reported as its own case before the causal test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    det3, edot, geodesic_normal, hdist_raw, mink_cross, mink_dot, separation, side_of, sub,
    HPoint,
};
use crate::tolerance::Tolerances;

/// Constant-curvature curve through three pairwise-distinct points.
#[derive(Debug, Clone, PartialEq)]
pub enum Cycle {
    /// Proper hyperbolic circle with an on-sheet center.
    Circle { center: HPoint, radius: f64 },
    /// Limit curve centered at an ideal point; no on-sheet center exists.
    Horocycle,
    /// Equidistant curve of a geodesic; no on-sheet center exists.
    Hypercycle,
    /// The three points share a geodesic.
    Collinear,
}

/// Tag-only view of [`Cycle`], used in errors and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    Circle,
    Horocycle,
    Hypercycle,
    Collinear,
}

impl std::fmt::Display for CycleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CycleKind::Circle => "circle",
            CycleKind::Horocycle => "horocycle",
            CycleKind::Hypercycle => "hypercycle",
            CycleKind::Collinear => "collinear triple",
        })
    }
}

/// Position of a point relative to a circle, with an `On` deadband of
/// `eps_id` on the center distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CirclePosition {
    Inside,
    On,
    Outside,
}

impl Cycle {
    pub fn kind(&self) -> CycleKind {
        match self {
            Cycle::Circle { .. } => CycleKind::Circle,
            Cycle::Horocycle => CycleKind::Horocycle,
            Cycle::Hypercycle => CycleKind::Hypercycle,
            Cycle::Collinear => CycleKind::Collinear,
        }
    }

    pub fn as_circle(&self) -> Option<(&HPoint, f64)> {
        match self {
            Cycle::Circle { center, radius } => Some((center, *radius)),
            _ => None,
        }
    }

    /// Center and radius, or a [`Error::NotACircle`] naming the vertex
    /// index the caller was working on.
    pub fn require_circle(&self, index: usize) -> Result<(&HPoint, f64)> {
        self.as_circle().ok_or(Error::NotACircle {
            index,
            kind: self.kind(),
        })
    }
}

/// Classifies the curve through three pairwise-distinct points and, for a
/// circle, returns the on-sheet circumcenter and radius.
pub fn circumscribe(a: &HPoint, b: &HPoint, c: &HPoint, tol: &Tolerances) -> Result<Cycle> {
    for (p, q) in [(a, b), (b, c), (a, c)] {
        let s = separation(p.coords(), q.coords());
        if s <= tol.eps_sep {
            return Err(Error::Coincident { separation: s });
        }
    }

    // Collinear first: all three on one plane through the origin. The
    // determinant is scaled by the coordinate norms, which grow like
    // cosh(distance), to keep the test meaningful for far-out points.
    let det = det3(a.coords(), b.coords(), c.coords());
    let scale = edot(a.coords(), a.coords()).sqrt()
        * edot(b.coords(), b.coords()).sqrt()
        * edot(c.coords(), c.coords()).sqrt();
    if det.abs() <= tol.eps_side * scale {
        return Ok(Cycle::Collinear);
    }

    let v = mink_cross(sub(a.coords(), b.coords()), sub(b.coords(), c.coords()));
    let causal = mink_dot(v, v);
    let norm2 = edot(v, v);
    if norm2 == 0.0 {
        // Parallel bisector normals; only collinear triples get here and
        // the determinant test above already caught them.
        return Ok(Cycle::Collinear);
    }
    let band = tol.eps_class * norm2;
    if causal < -band {
        let center = HPoint::from_timelike(v);
        let radius = hdist_raw(&center, a);
        Ok(Cycle::Circle { center, radius })
    } else if causal <= band {
        Ok(Cycle::Horocycle)
    } else {
        Ok(Cycle::Hypercycle)
    }
}

/// Compares the center distance of `x` to the radius, with the `On` band
/// `eps_id` flagging genericity violations upstream.
pub fn point_vs_circle(
    center: &HPoint,
    radius: f64,
    x: &HPoint,
    tol: &Tolerances,
) -> CirclePosition {
    let d = hdist_raw(center, x);
    if (d - radius).abs() <= tol.eps_id {
        CirclePosition::On
    } else if d < radius {
        CirclePosition::Inside
    } else {
        CirclePosition::Outside
    }
}

/// Cone test: does the circumcenter `o` of the triple lie in the infinite
/// cone at `v` spanned toward `vprev` and `vnext`?
///
/// True iff `o` is on the `vnext` side of the geodesic through `v, vprev`
/// and on the `vprev` side of the geodesic through `v, vnext`, with both
/// side signs strict; landing on a cone boundary counts as incoherent.
pub fn is_coherent_at(
    vprev: &HPoint,
    v: &HPoint,
    vnext: &HPoint,
    o: &HPoint,
    tol: &Tolerances,
) -> Result<bool> {
    let n_prev = geodesic_normal(v, vprev, tol)?;
    let n_next = geodesic_normal(v, vnext, tol)?;
    let o_vs_prev = side_of(o, &n_prev, tol);
    let ref_vs_prev = side_of(vnext, &n_prev, tol);
    let o_vs_next = side_of(o, &n_next, tol);
    let ref_vs_next = side_of(vprev, &n_next, tol);
    Ok(o_vs_prev != 0
        && ref_vs_prev != 0
        && o_vs_prev == ref_vs_prev
        && o_vs_next != 0
        && ref_vs_next != 0
        && o_vs_next == ref_vs_next)
}
