//! Error type shared across the geometry, curvature, and analysis layers.

use crate::circumcircle::CycleKind;

/// Everything that can go wrong below the CLI.
///
/// Degeneracies are hard errors on purpose: ties and boundary cases mark
/// non-generic inputs, and breaking them silently would corrupt the
/// extremal-vertex counts downstream.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Coordinates do not satisfy `<x,x> = -1` on the upper sheet.
    #[error("coordinates are not on the upper model sheet (constraint residual {deviation:.3e})")]
    OffModel { deviation: f64 },
    /// A disk coordinate pair lies on or too near the unit circle.
    #[error("disk point with |u| = {norm} is ideal or too close to the boundary")]
    IdealPoint { norm: f64 },
    /// Two points that must be distinct coincide within tolerance.
    #[error("points coincide (coordinate separation {separation:.3e})")]
    Coincident { separation: f64 },
    /// A three-point turn folds back onto itself; the left angle would be
    /// 0 or 2*pi, which the angle range excludes.
    #[error("traversal doubles back on itself, so the turn angle is undefined")]
    DoublesBack,
    /// A circle was required but the triple spans some other
    /// constant-curvature curve.
    #[error("vertex triple at index {index} spans a {kind}, not a circle")]
    NotACircle { index: usize, kind: CycleKind },
    /// A strict comparison landed inside its deadband.
    #[error("curvature comparison at edge {index} is a tie; the input is not generic")]
    Tie { index: usize },
    /// Operation needs more vertices than the polygon has.
    #[error("operation needs at least {need} vertices, got {got}")]
    TooFewVertices { got: usize, need: usize },
    /// An angle gap sits on the cusp/no-cusp boundary, where the strict
    /// inequality defining cusps cannot be decided.
    #[error("angle gap at vertex {index} lies on the cusp boundary (|gap| - pi = {excess:.3e})")]
    CuspBoundary { index: usize, excess: f64 },
    /// Two consecutive circumcenters coincide, so the evolute degenerates.
    #[error("circumcenters at indices {index} and {index}+1 coincide")]
    CenterCollision { index: usize },
    /// Operation is only defined (or only proved) for convex polygons.
    #[error("operation requires a convex polygon")]
    NonConvex,
    /// The polygon failed validation and the caller did not force past it.
    #[error("polygon failed validation: {flags}")]
    Invalid { flags: String },
    /// A generation spec produced no valid polygon within the attempt cap.
    #[error("generator exhausted {attempts} attempts without a valid polygon")]
    Exhausted { attempts: u32 },
    /// A generation spec is malformed (empty range, radius out of bounds...).
    #[error("invalid generation spec: {reason}")]
    InvalidSpec { reason: &'static str },
    /// An internal cross-check failed; indicates a degenerate input that
    /// slipped past validation or an implementation bug.
    #[error("{what} violated (residual {residual:.3e})")]
    IdentityViolation { what: &'static str, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
