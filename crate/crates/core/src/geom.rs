//! Minkowski-model primitives: points, distances, geodesics, tangents,
//! angles, and side tests.
//!
//! The hyperbolic plane is realized as the upper sheet of `<x,x> = -1` in
//! R^{2,1} with the bilinear form `<a,b> = -a0*b0 + a1*b1 + a2*b2`.
//! Geodesics are intersections of the sheet with planes through the
//! origin, each recorded by its unit spacelike normal, so incidence and
//! side tests are single inner products. Points are renormalized onto the
//! sheet after every constructive operation to bound floating-point drift.

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Raw coordinate triple in R^{2,1}.
pub type Vec3 = [f64; 3];

/// Minkowski inner product `-a0*b0 + a1*b1 + a2*b2`.
#[inline]
pub fn mink_dot(a: Vec3, b: Vec3) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Euclidean inner product on the raw coordinates.
#[inline]
pub fn edot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Euclidean cross product of the raw coordinates.
#[inline]
fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Minkowski cross product: the unique vector with `<mink_cross(a,b), a> =
/// <mink_cross(a,b), b> = 0`, obtained by flipping the metric sign of the
/// Euclidean cross product's first coordinate.
#[inline]
pub fn mink_cross(a: Vec3, b: Vec3) -> Vec3 {
    let c = cross(a, b);
    [-c[0], c[1], c[2]]
}

/// Determinant of the 3x3 matrix with rows `a`, `b`, `c`.
#[inline]
pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    edot(a, cross(b, c))
}

/// Clamp an inner product of unit vectors into arccos range. Values may
/// drift past 1 by machine-epsilon noise; drifting past `1 + window` means
/// the inputs were not unit vectors.
#[inline]
fn clamp_unit(x: f64, window: f64) -> f64 {
    debug_assert!(
        x.abs() <= 1.0 + window,
        "inner product {x} outside clamp window"
    );
    x.clamp(-1.0, 1.0)
}

/// Euclidean distance between raw coordinate triples. Used for coincidence
/// checks: near zero it keeps full resolution where the hyperbolic
/// distance (an acosh of something rounding to 1) loses it.
#[inline]
pub fn separation(a: Vec3, b: Vec3) -> f64 {
    let d = sub(a, b);
    edot(d, d).sqrt()
}

fn ensure_distinct(a: Vec3, b: Vec3, tol: &Tolerances) -> Result<()> {
    let s = separation(a, b);
    if s <= tol.eps_sep {
        return Err(Error::Coincident { separation: s });
    }
    Ok(())
}

/// A point of the hyperbolic plane: a unit timelike vector on the upper
/// sheet (`<p,p> = -1`, `p0 >= 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint(Vec3);

impl HPoint {
    /// Origin of the model, the bottom of the upper sheet.
    pub fn origin() -> HPoint {
        HPoint([1.0, 0.0, 0.0])
    }

    /// Validates raw coordinates: finite, upper sheet, on the hyperboloid
    /// within `eps_norm`. Accepted coordinates are renormalized exactly
    /// onto the sheet.
    pub fn new(c: Vec3, tol: &Tolerances) -> Result<HPoint> {
        if !c.iter().all(|x| x.is_finite()) {
            return Err(Error::OffModel { deviation: f64::INFINITY });
        }
        let q = mink_dot(c, c);
        let deviation = (q + 1.0).abs();
        if deviation > tol.eps_norm || c[0] <= 0.0 {
            return Err(Error::OffModel { deviation });
        }
        Ok(Self::from_timelike(c))
    }

    /// Renormalizes a timelike vector onto the upper sheet. Callers must
    /// guarantee `<v,v> < 0`; constructive operations on sheet points
    /// (sums, flows, bisector intersections classified as circles) do.
    pub(crate) fn from_timelike(v: Vec3) -> HPoint {
        let q = mink_dot(v, v);
        debug_assert!(q < 0.0, "renormalizing a non-timelike vector, <v,v> = {q}");
        let p = scale(v, 1.0 / (-q).sqrt());
        HPoint(if p[0] < 0.0 { scale(p, -1.0) } else { p })
    }

    /// Maps a Poincare disk point into the model:
    /// `u -> ((1 + |u|^2), 2u) / (1 - |u|^2)`.
    pub fn from_poincare(u: [f64; 2], tol: &Tolerances) -> Result<HPoint> {
        let s = u[0] * u[0] + u[1] * u[1];
        let norm = s.sqrt();
        if !norm.is_finite() || norm >= 1.0 - tol.eps_boundary {
            return Err(Error::IdealPoint { norm });
        }
        let d = 1.0 - s;
        Ok(HPoint::from_timelike([
            (1.0 + s) / d,
            2.0 * u[0] / d,
            2.0 * u[1] / d,
        ]))
    }

    /// Inverse of [`HPoint::from_poincare`]: central projection back to
    /// the unit disk, `p -> (p1, p2) / (1 + p0)`.
    pub fn to_poincare(&self) -> [f64; 2] {
        let d = 1.0 + self.0[0];
        [self.0[1] / d, self.0[2] / d]
    }

    #[inline]
    pub fn coords(&self) -> Vec3 {
        self.0
    }
}

/// Unit spacelike vector attached to a base point, with `<base, v> = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: HPoint,
    pub v: Vec3,
}

/// Unit spacelike normal of a plane through the origin; the geodesic it
/// cuts is `{x on the sheet : <x,n> = 0}`. The positive side of a normal
/// built by [`geodesic_normal`] is the left of the directed geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicNormal {
    pub n: Vec3,
}

impl GeodesicNormal {
    /// Normalizes a spacelike vector; callers guarantee `<v,v> > 0`.
    fn from_spacelike(v: Vec3) -> GeodesicNormal {
        let q = mink_dot(v, v);
        debug_assert!(q > 0.0, "normal is not spacelike, <v,v> = {q}");
        GeodesicNormal { n: scale(v, 1.0 / q.sqrt()) }
    }

    /// Same geodesic with the sides exchanged.
    pub fn flipped(&self) -> GeodesicNormal {
        GeodesicNormal { n: scale(self.n, -1.0) }
    }
}

/// Hyperbolic distance `arccosh(-<p,q>)`.
///
/// Arguments within `eps_norm` below 1 are clamped up to 1; anything
/// further below means an input was off the model sheet.
pub fn hdist(p: &HPoint, q: &HPoint, tol: &Tolerances) -> Result<f64> {
    let arg = -mink_dot(p.coords(), q.coords());
    if arg < 1.0 - tol.eps_norm {
        return Err(Error::OffModel { deviation: 1.0 - arg });
    }
    Ok(arg.max(1.0).acosh())
}

/// Distance for points already known to be on the sheet, where the
/// argument can only dip below 1 by rounding.
#[inline]
pub(crate) fn hdist_raw(p: &HPoint, q: &HPoint) -> f64 {
    (-mink_dot(p.coords(), q.coords())).max(1.0).acosh()
}

/// Normal of the geodesic through two distinct points, oriented so that
/// the positive side is the left of the traversal `p -> q`.
pub fn geodesic_normal(p: &HPoint, q: &HPoint, tol: &Tolerances) -> Result<GeodesicNormal> {
    ensure_distinct(p.coords(), q.coords(), tol)?;
    Ok(GeodesicNormal::from_spacelike(mink_cross(
        p.coords(),
        q.coords(),
    )))
}

/// Normal of the perpendicular bisector of the segment `pq`: the
/// equidistant locus `{x : <x, p - q> = 0}`.
pub fn bisector_normal(p: &HPoint, q: &HPoint, tol: &Tolerances) -> Result<GeodesicNormal> {
    ensure_distinct(p.coords(), q.coords(), tol)?;
    // <p-q, p-q> = 2(cosh d - 1) > 0 for distinct sheet points.
    Ok(GeodesicNormal::from_spacelike(sub(p.coords(), q.coords())))
}

/// Which side of a geodesic a point lies on: the sign of `<x,n>` with a
/// deadband of `eps_side` mapped to 0. `<x,n>` equals sinh of the signed
/// distance to the geodesic.
pub fn side_of(x: &HPoint, n: &GeodesicNormal, tol: &Tolerances) -> i8 {
    let v = mink_dot(x.coords(), n.n);
    if v.abs() <= tol.eps_side {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Midpoint of the geodesic segment `pq`, the renormalized Minkowski sum.
pub fn midpoint(p: &HPoint, q: &HPoint, tol: &Tolerances) -> Result<HPoint> {
    ensure_distinct(p.coords(), q.coords(), tol)?;
    Ok(HPoint::from_timelike(add(p.coords(), q.coords())))
}

/// Unit tangent at `at` pointing along the geodesic toward `toward`:
/// the component of `toward` orthogonal to `at`, normalized.
pub fn tangent_direction(at: &HPoint, toward: &HPoint, tol: &Tolerances) -> Result<TangentVector> {
    ensure_distinct(at.coords(), toward.coords(), tol)?;
    let a = at.coords();
    let t = toward.coords();
    // v = t + <t,a> a has <v,a> = 0 and <v,v> = sinh^2(dist) > 0.
    let v = add(t, scale(a, mink_dot(t, a)));
    let q = mink_dot(v, v);
    debug_assert!(q > 0.0, "tangent projection degenerate, <v,v> = {q}");
    Ok(TangentVector {
        base: *at,
        v: scale(v, 1.0 / q.sqrt()),
    })
}

/// Point reached by flowing distance `s` along a unit tangent:
/// `cosh(s) * base + sinh(s) * v`.
pub fn geodesic_point(t: &TangentVector, s: f64) -> HPoint {
    HPoint::from_timelike(add(
        scale(t.base.coords(), s.cosh()),
        scale(t.v, s.sinh()),
    ))
}

/// Unsigned angle at `at` between the geodesics toward `p` and toward `q`,
/// in `[0, pi]`.
pub fn unsigned_angle(at: &HPoint, p: &HPoint, q: &HPoint, tol: &Tolerances) -> Result<f64> {
    let tp = tangent_direction(at, p, tol)?;
    let tq = tangent_direction(at, q, tol)?;
    Ok(clamp_unit(mink_dot(tp.v, tq.v), tol.clamp_window).acos())
}

/// Angle at `B` measured on the left of the directed traversal
/// `A -> B -> C`, valued in `(0, 2*pi)`.
///
/// Equals the unsigned angle between the tangents toward `A` and `C` when
/// the path turns left, and its `2*pi` complement when it turns right; a
/// straight continuation returns exactly `pi`. Doubling back (turn angle
/// 0 or `2*pi`) is rejected, so returned values stay inside the open
/// interval.
pub fn left_angle(a: &HPoint, b: &HPoint, c: &HPoint, tol: &Tolerances) -> Result<f64> {
    let t_ba = tangent_direction(b, a, tol)?;
    let t_bc = tangent_direction(b, c, tol)?;
    let dot = clamp_unit(mink_dot(t_ba.v, t_bc.v), tol.clamp_window);
    // Orientation of the turn: t_in = -t_ba is the direction of travel at
    // B. In the tangent plane at B the form is Euclidean, so det and dot
    // of unit tangents satisfy det^2 + dot^2 = 1; a small det forces the
    // tangents (anti)parallel.
    let turn = det3(b.coords(), scale(t_ba.v, -1.0), t_bc.v);
    if turn.abs() <= tol.eps_side {
        if dot < 0.0 {
            // t_bc = -t_ba: straight continuation, zero turn.
            return Ok(std::f64::consts::PI);
        }
        return Err(Error::DoublesBack);
    }
    let theta = dot.acos();
    Ok(if turn > 0.0 {
        theta
    } else {
        2.0 * std::f64::consts::PI - theta
    })
}
