//! Centralized numerical tolerances.
//!
//! Every predicate in the crate reads its thresholds from a [`Tolerances`]
//! value instead of hardcoding them, so a pipeline can be tightened or
//! loosened in one place and reports can record exactly which thresholds
//! produced them.

use serde::{Deserialize, Serialize};

/// Threshold bundle for all tolerance-based predicates.
///
/// Deserialization fills missing fields from [`Tolerances::default`], so a
/// JSON config may override a single knob and leave the rest alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Allowed residual on unit-norm constraints such as `<p,p> = -1` for
    /// points and `<v,v> = 1` for tangents and normals.
    pub eps_norm: f64,
    /// Deadband for side-of-geodesic signs and for the scaled collinearity
    /// determinant.
    pub eps_side: f64,
    /// Coordinate separation below which two points count as coincident.
    /// Measured on the raw coordinate vectors; hyperbolic distance loses
    /// resolution near zero (acosh of an argument that rounds to 1).
    pub eps_sep: f64,
    /// Slack for derived identities: circumcenter equidistance, on-circle
    /// deadband, defect-equals-area checks, cusp boundary rejection.
    pub eps_id: f64,
    /// Margin kept from the ideal boundary of the Poincare disk.
    pub eps_boundary: f64,
    /// Relative threshold on the causal character of a bisector-plane
    /// intersection, scaled by the squared Euclidean norm of the direction
    /// vector so the circle/horocycle/hypercycle split is scale-free.
    pub eps_class: f64,
    /// Half-width of the clamp window applied to arccos arguments; inner
    /// products of unit vectors may drift past 1 by roughly machine epsilon.
    pub clamp_window: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_norm: 1e-10,
            eps_side: 1e-9,
            eps_sep: 1e-12,
            eps_id: 1e-7,
            eps_boundary: 1e-9,
            eps_class: 1e-10,
            clamp_window: 1e-12,
        }
    }
}
