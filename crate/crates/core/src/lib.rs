//! Discrete curvature machinery for polygons in the hyperbolic plane.
//!
//! Everything is computed in the hyperboloid (Minkowski) model: a point of
//! the plane is a unit timelike vector in R^{2,1}, geodesics are cut out by
//! planes through the origin, and circumcenters fall out of linear algebra
//! on perpendicular-bisector planes. The Poincare disk appears only at the
//! edges of the crate, for input, output, and rendering.
//!
//! The crate builds up to a handful of executable geometric facts about
//! convex polygons whose vertices are generic (no four on a common circle,
//! no three on a common geodesic) and coherent (each circumcenter lies in
//! the vertex cone it belongs to):
//!
//! * consecutive circumradii order vertices by discrete curvature;
//! * the closed curve of circumcenters (the evolute) has a cusp exactly at
//!   the curvature-extremal vertices of the original polygon;
//! * twice the density drop from a polygon to its evolute equals the
//!   extremal-vertex count plus the scaled sum of quadrilateral defects;
//! * at least four vertices are curvature-extremal, a discrete hyperbolic
//!   analogue of the classical four-vertex theorem.
//!
//! Modules mirror that pipeline: [`geom`] holds model primitives,
//! [`circumcircle`] the three-point classification, [`polygon`] the data
//! model and admissibility predicates, [`curvature`] the ordering and
//! extremal counts, [`evolute`] and [`identities`] the derived curve and
//! the density bookkeeping, [`generator`] seeded random inputs, and
//! [`analysis`] one-stop reports. All types are immutable values and every
//! operation is a pure function, so the whole crate is thread-safe without
//! synchronization.

pub mod analysis;
pub mod circumcircle;
pub mod curvature;
pub mod error;
pub mod evolute;
pub mod generator;
pub mod geom;
pub mod identities;
pub mod isometry;
pub mod polygon;
pub mod tolerance;

pub use circumcircle::{Cycle, CycleKind, CirclePosition};
pub use error::{Error, Result};
pub use geom::HPoint;
pub use polygon::HPolygon;
pub use tolerance::Tolerances;
