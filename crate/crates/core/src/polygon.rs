//! Polygon data model and admissibility predicates: closed, simple,
//! generic, coherent, convex.
//!
//! Vertices are cyclically indexed (`V_{n} = V_0`); no closing vertex is
//! stored. Traversal order is normalized to counterclockwise at
//! construction, detected by the sign of the polygon density, because all
//! angle conventions downstream assume it. Left angles and the
//! three-point classification of every consecutive vertex triple are
//! cached at construction; validation and the curvature machinery read
//! the caches.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circumcircle::{circumscribe, is_coherent_at, point_vs_circle, CirclePosition, Cycle};
use crate::error::{Error, Result};
use crate::geom::{
    det3, edot, geodesic_normal, hdist_raw, left_angle, midpoint, mink_cross, mink_dot,
    separation, HPoint,
};
use crate::tolerance::Tolerances;

/// Vertex sign: positive when the left angle is at most pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// One validation flag with every witness found for its failure.
///
/// Witnesses are index tuples: edge index pairs for `simple`, vertex
/// triples for `generic_line`, vertex quadruples for `generic_circle`,
/// and single vertex indices for `coherent` and `convex`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub ok: bool,
    pub witnesses: Vec<Vec<usize>>,
}

impl Check {
    fn pass() -> Check {
        Check { ok: true, witnesses: Vec::new() }
    }

    fn from_witnesses(witnesses: Vec<Vec<usize>>) -> Check {
        Check { ok: witnesses.is_empty(), witnesses }
    }
}

/// Outcome of every admissibility predicate on one polygon.
///
/// `all_non_ideal` is always true here: point construction already
/// rejects ideal or off-model coordinates, so a constructed polygon
/// cannot contain them. The flag is kept so reports state it explicitly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub simple: Check,
    pub generic_circle: Check,
    pub generic_line: Check,
    pub coherent: Check,
    pub convex: Check,
    pub all_non_ideal: Check,
}

impl ValidationReport {
    /// Every flag, convexity included.
    pub fn all_pass(&self) -> bool {
        self.admissible() && self.convex.ok
    }

    /// The flags needed for circumcircles and evolutes to exist: simple,
    /// generic (both clauses), coherent. Convexity is reported separately
    /// since the non-convex theory is exploratory.
    pub fn admissible(&self) -> bool {
        self.simple.ok
            && self.generic_circle.ok
            && self.generic_line.ok
            && self.coherent.ok
            && self.all_non_ideal.ok
    }

    pub fn failed_flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, check) in [
            ("simple", &self.simple),
            ("generic_circle", &self.generic_circle),
            ("generic_line", &self.generic_line),
            ("coherent", &self.coherent),
            ("convex", &self.convex),
            ("all_non_ideal", &self.all_non_ideal),
        ] {
            if !check.ok {
                out.push(name);
            }
        }
        out
    }
}

/// Closed polygonal curve on the hyperboloid sheet.
#[derive(Debug, Clone)]
pub struct HPolygon {
    verts: Vec<HPoint>,
    /// Left angle at each vertex, or the degeneracy that prevented it.
    angles: Vec<Result<f64>>,
    /// Classification of the triple `(V_{i-1}, V_i, V_{i+1})` at each `i`.
    cycles: Vec<Result<Cycle>>,
    tol: Tolerances,
    flipped: bool,
}

impl HPolygon {
    /// Builds a polygon from sheet points: requires at least 3 vertices
    /// and consecutive vertices distinct, normalizes traversal to
    /// counterclockwise, and fills the angle and circumcircle caches.
    pub fn new(verts: Vec<HPoint>, tol: Tolerances) -> Result<HPolygon> {
        let n = verts.len();
        if n < 3 {
            return Err(Error::TooFewVertices { got: n, need: 3 });
        }
        for i in 0..n {
            let s = separation(verts[i].coords(), verts[(i + 1) % n].coords());
            if s <= tol.eps_sep {
                return Err(Error::Coincident { separation: s });
            }
        }

        let mut verts = verts;
        let mut angles = Self::angles_of(&verts, &tol);
        let mut flipped = false;
        // Clockwise input has negative density; reverse while keeping the
        // first vertex first. Degenerate angles leave the order alone and
        // surface through validation instead.
        if let Some(d) = density_of(&angles) {
            if d < 0.0 {
                verts[1..].reverse();
                flipped = true;
                angles = Self::angles_of(&verts, &tol);
            }
        }
        let cycles = Self::cycles_of(&verts, &tol);
        Ok(HPolygon { verts, angles, cycles, tol, flipped })
    }

    /// Convenience constructor from Poincare disk coordinates.
    pub fn from_poincare(points: &[[f64; 2]], tol: Tolerances) -> Result<HPolygon> {
        let verts = points
            .iter()
            .map(|u| HPoint::from_poincare(*u, &tol))
            .collect::<Result<Vec<_>>>()?;
        HPolygon::new(verts, tol)
    }

    fn angles_of(verts: &[HPoint], tol: &Tolerances) -> Vec<Result<f64>> {
        let n = verts.len();
        (0..n)
            .map(|i| left_angle(&verts[(i + n - 1) % n], &verts[i], &verts[(i + 1) % n], tol))
            .collect()
    }

    fn cycles_of(verts: &[HPoint], tol: &Tolerances) -> Vec<Result<Cycle>> {
        let n = verts.len();
        (0..n)
            .map(|i| circumscribe(&verts[(i + n - 1) % n], &verts[i], &verts[(i + 1) % n], tol))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn verts(&self) -> &[HPoint] {
        &self.verts
    }

    pub fn vertex(&self, i: usize) -> &HPoint {
        &self.verts[i]
    }

    /// Vertex by cyclic index: any integer maps into `0..n`.
    pub fn cyclic(&self, i: isize) -> &HPoint {
        let n = self.verts.len() as isize;
        &self.verts[i.rem_euclid(n) as usize]
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// True when construction reversed the input order to make the
    /// traversal counterclockwise.
    pub fn orientation_flipped(&self) -> bool {
        self.flipped
    }

    pub fn poincare_vertices(&self) -> Vec<[f64; 2]> {
        self.verts.iter().map(|v| v.to_poincare()).collect()
    }

    /// Cached left angle at vertex `i`.
    pub fn left_angle_at(&self, i: usize) -> Result<f64> {
        self.angles[i].clone()
    }

    /// Cached classification of the triple `(V_{i-1}, V_i, V_{i+1})`.
    pub fn cycle_at(&self, i: usize) -> Result<&Cycle> {
        self.cycles[i].as_ref().map_err(Clone::clone)
    }

    /// Circumcenter and radius at vertex `i`, or why there is none.
    pub fn circle_at(&self, i: usize) -> Result<(&HPoint, f64)> {
        self.cycle_at(i)?.require_circle(i)
    }

    /// Polygon density `(1/2pi) * sum(pi - angle)`; positive for the
    /// normalized counterclockwise traversal of a simple polygon.
    pub fn density(&self) -> Result<f64> {
        let mut sum = 0.0;
        for a in &self.angles {
            sum += PI - a.clone()?;
        }
        Ok(sum / (2.0 * PI))
    }

    /// Positive iff the left angle at `i` is at most pi.
    pub fn vertex_sign(&self, i: usize) -> Result<Sign> {
        let a = self.left_angle_at(i)?;
        Ok(if a <= PI { Sign::Positive } else { Sign::Negative })
    }

    /// True iff every vertex is positive.
    pub fn is_convex(&self) -> Result<bool> {
        for i in 0..self.n() {
            if self.vertex_sign(i)? == Sign::Negative {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Midpoint of every edge; `M_i` bisects `V_i V_{i+1}`.
    pub fn edge_midpoints(&self) -> Result<Vec<HPoint>> {
        (0..self.n())
            .map(|i| midpoint(&self.verts[i], self.cyclic(i as isize + 1), &self.tol))
            .collect()
    }

    /// Runs every admissibility predicate with the full quadruple scan
    /// for the concyclicity clause.
    pub fn validate(&self) -> ValidationReport {
        self.validate_mode(false)
    }

    /// Validation with a choice of concyclicity scan: the full check
    /// walks all vertex quadruples; the fast mode only the consecutive
    /// ones the curvature ordering consumes.
    pub fn validate_mode(&self, fast_generic: bool) -> ValidationReport {
        ValidationReport {
            simple: self.check_simple(),
            generic_circle: self.check_generic_circle(fast_generic),
            generic_line: self.check_generic_line(),
            coherent: self.check_coherent(),
            convex: self.check_convex(),
            all_non_ideal: Check::pass(),
        }
    }

    fn check_simple(&self) -> Check {
        let n = self.n();
        let mut witnesses = Vec::new();
        // Adjacent edges overlap exactly when the shared vertex doubles
        // back; the angle cache already knows.
        for j in 0..n {
            if matches!(self.angles[j], Err(Error::DoublesBack)) {
                witnesses.push(vec![(j + n - 1) % n, j]);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                if self.edges_cross(i, j) {
                    witnesses.push(vec![i, j]);
                }
            }
        }
        Check::from_witnesses(witnesses)
    }

    /// Intersection test for the closed segments of edges `i` and `j`.
    /// Touching configurations count as crossings: a valid simple polygon
    /// keeps non-adjacent edges strictly apart.
    fn edges_cross(&self, i: usize, j: usize) -> bool {
        let t = &self.tol;
        let (p1, q1) = (self.vertex(i), self.cyclic(i as isize + 1));
        let (p2, q2) = (self.vertex(j), self.cyclic(j as isize + 1));
        // Edge endpoints are distinct by construction.
        let n1 = geodesic_normal(p1, q1, t).expect("edge endpoints distinct");
        let n2 = geodesic_normal(p2, q2, t).expect("edge endpoints distinct");

        let between = |a: &HPoint, b: &HPoint, x: &HPoint| {
            hdist_raw(a, x) + hdist_raw(x, b) <= hdist_raw(a, b) + t.eps_id
        };

        let w = mink_cross(n1.n, n2.n);
        let wn = edot(w, w);
        let scale = edot(n1.n, n1.n) * edot(n2.n, n2.n);
        if wn <= t.eps_side * t.eps_side * scale {
            // Same geodesic: the segments overlap iff an endpoint of one
            // lies inside the other.
            return between(p1, q1, p2)
                || between(p1, q1, q2)
                || between(p2, q2, p1)
                || between(p2, q2, q1);
        }
        // Distinct geodesics meet at most once, where the plane
        // intersection line pierces the sheet; spacelike or null lines
        // miss it.
        if mink_dot(w, w) >= 0.0 {
            return false;
        }
        let x = HPoint::from_timelike(w);
        between(p1, q1, &x) && between(p2, q2, &x)
    }

    fn check_generic_circle(&self, fast: bool) -> Check {
        let n = self.n();
        let mut witnesses = Vec::new();
        if n < 4 {
            // No quadruple exists; the clause is vacuous.
            return Check::pass();
        }
        if fast {
            for i in 0..n {
                if let Ok(Cycle::Circle { center, radius }) = &self.cycles[i] {
                    let x = self.cyclic(i as isize + 2);
                    if point_vs_circle(center, *radius, x, &self.tol) == CirclePosition::On {
                        witnesses.push(vec![
                            (i + n - 1) % n,
                            i,
                            (i + 1) % n,
                            (i + 2) % n,
                        ]);
                    }
                }
            }
        } else {
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        let cycle = match circumscribe(
                            &self.verts[a],
                            &self.verts[b],
                            &self.verts[c],
                            &self.tol,
                        ) {
                            Ok(cy) => cy,
                            Err(_) => continue,
                        };
                        let (center, radius) = match cycle.as_circle() {
                            Some(cr) => cr,
                            // Three points off any circle cannot be part
                            // of a concyclic quadruple.
                            None => continue,
                        };
                        for d in (c + 1)..n {
                            if point_vs_circle(center, radius, &self.verts[d], &self.tol)
                                == CirclePosition::On
                            {
                                witnesses.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        Check::from_witnesses(witnesses)
    }

    fn check_generic_line(&self) -> Check {
        let n = self.n();
        let mut witnesses = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let (va, vb, vc) = (
                        self.verts[a].coords(),
                        self.verts[b].coords(),
                        self.verts[c].coords(),
                    );
                    let det = det3(va, vb, vc);
                    let scale =
                        edot(va, va).sqrt() * edot(vb, vb).sqrt() * edot(vc, vc).sqrt();
                    if det.abs() <= self.tol.eps_side * scale {
                        witnesses.push(vec![a, b, c]);
                    }
                }
            }
        }
        Check::from_witnesses(witnesses)
    }

    fn check_coherent(&self) -> Check {
        let n = self.n();
        let mut witnesses = Vec::new();
        for i in 0..n {
            let ok = match &self.cycles[i] {
                Ok(Cycle::Circle { center, .. }) => is_coherent_at(
                    self.cyclic(i as isize - 1),
                    &self.verts[i],
                    self.cyclic(i as isize + 1),
                    center,
                    &self.tol,
                )
                .unwrap_or(false),
                // No on-sheet center: the cone condition cannot hold.
                _ => false,
            };
            if !ok {
                witnesses.push(vec![i]);
            }
        }
        Check::from_witnesses(witnesses)
    }

    fn check_convex(&self) -> Check {
        let mut witnesses = Vec::new();
        for (i, a) in self.angles.iter().enumerate() {
            match a {
                Ok(angle) if *angle <= PI => {}
                _ => witnesses.push(vec![i]),
            }
        }
        Check::from_witnesses(witnesses)
    }
}

fn density_of(angles: &[Result<f64>]) -> Option<f64> {
    let mut sum = 0.0;
    for a in angles {
        match a {
            Ok(v) => sum += PI - v,
            Err(_) => return None,
        }
    }
    Some(sum / (2.0 * PI))
}
