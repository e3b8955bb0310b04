//! Orientation-preserving isometries of the model, kept to the minimum the
//! test suites need: rotations about the origin, boosts along the x-axis,
//! their compositions, and point reflections.
//!
//! Every value here is a linear map preserving the Minkowski form with
//! determinant +1 and the upper sheet fixed, so geodesic normals and
//! circumcenters transform exactly equivariantly.

use crate::generator::SplitMix64;
use crate::geom::{HPoint, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    /// Row-major matrix acting on coordinate columns.
    m: [[f64; 3]; 3],
}

impl Isometry {
    pub fn identity() -> Isometry {
        Isometry {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Rotation by `phi` about the origin of the sheet.
    pub fn rotation(phi: f64) -> Isometry {
        let (s, c) = phi.sin_cos();
        Isometry {
            m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        }
    }

    /// Boost of rapidity `t` along the x1-axis; translates the origin to
    /// hyperbolic distance `t` along that geodesic.
    pub fn x_boost(t: f64) -> Isometry {
        let (s, c) = (t.sinh(), t.cosh());
        Isometry {
            m: [[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Half-turn about `center`: the geodesic symmetry `x -> -x - 2<x,c>c`,
    /// which in the plane is orientation-preserving.
    pub fn point_reflection(center: &HPoint) -> Isometry {
        let c = center.coords();
        let jc = [-c[0], c[1], c[2]];
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = -(if i == j { 1.0 } else { 0.0 }) - 2.0 * c[i] * jc[j];
            }
        }
        Isometry { m }
    }

    /// `self` after `other` (matrix product `self * other`).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Isometry { m }
    }

    /// Generic isometry for invariance tests: rotation, then a boost of
    /// rapidity up to `max_rapidity`, then another rotation.
    pub fn random(rng: &mut SplitMix64, max_rapidity: f64) -> Isometry {
        let tau = 2.0 * std::f64::consts::PI;
        let r1 = Isometry::rotation(rng.uniform(0.0, tau));
        let b = Isometry::x_boost(rng.uniform(-max_rapidity, max_rapidity));
        let r2 = Isometry::rotation(rng.uniform(0.0, tau));
        r1.compose(&b).compose(&r2)
    }

    pub fn apply_vec(&self, v: Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = self.m[i][0] * v[0] + self.m[i][1] * v[1] + self.m[i][2] * v[2];
        }
        out
    }

    /// Image of a sheet point, renormalized back onto the sheet.
    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint::from_timelike(self.apply_vec(p.coords()))
    }
}
