//! Discrete curvature ordering of consecutive vertices and the directed
//! cycle graph it induces.
//!
//! The comparison at edge `i` relates `V_i` and `V_{i+1}` through the
//! circumcircle of `(V_{i-1}, V_i, V_{i+1})` and the position of
//! `V_{i+2}` relative to it, with the inside/outside reading flipped at
//! negative vertices. Arrows point from the greater-curvature vertex to
//! the lesser, so a curvature minimum has both incident edges entering
//! and a maximum has both exiting. On convex polygons the ordering
//! coincides with comparing circumradii (small radius = large curvature),
//! which the test suites exploit as an independent oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::circumcircle::{point_vs_circle, CirclePosition};
use crate::polygon::{HPolygon, Sign};

/// Direction of the comparison on edge `i`: `Up` means `V_i` precedes
/// `V_{i+1}` in curvature (the arrow enters `V_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeDir {
    Up,
    Down,
}

impl EdgeDir {
    pub fn reversed(self) -> EdgeDir {
        match self {
            EdgeDir::Up => EdgeDir::Down,
            EdgeDir::Down => EdgeDir::Up,
        }
    }
}

/// Extremality label of a vertex in the directed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremality {
    Max,
    Min,
    Regular,
}

/// Directed cycle over the polygon vertices with extremal labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureGraph {
    /// Edge `i` joins `V_i` and `V_{i+1}`.
    pub edge_dir: Vec<EdgeDir>,
    pub extremal: Vec<Extremality>,
    /// Count of local minima (all edges entering).
    pub l_plus: usize,
    /// Count of local maxima (all edges exiting).
    pub l_minus: usize,
}

impl CurvatureGraph {
    /// Labels a direction assignment; this is the whole combinatorial
    /// content, split out so synthetic assignments can be tested and
    /// perturbed without geometry.
    pub fn from_directions(edge_dir: Vec<EdgeDir>) -> CurvatureGraph {
        let n = edge_dir.len();
        let mut extremal = vec![Extremality::Regular; n];
        let mut l_plus = 0;
        let mut l_minus = 0;
        for i in 0..n {
            let before = edge_dir[(i + n - 1) % n];
            let after = edge_dir[i];
            extremal[i] = match (before, after) {
                (EdgeDir::Up, EdgeDir::Down) => {
                    l_minus += 1;
                    Extremality::Max
                }
                (EdgeDir::Down, EdgeDir::Up) => {
                    l_plus += 1;
                    Extremality::Min
                }
                _ => Extremality::Regular,
            };
        }
        CurvatureGraph { edge_dir, extremal, l_plus, l_minus }
    }

    pub fn n(&self) -> usize {
        self.edge_dir.len()
    }

    /// Total number of extremal vertices.
    pub fn extremal_count(&self) -> usize {
        self.l_plus + self.l_minus
    }

    /// `1 - (number of edges exiting vertex i)`, in `{-1, 0, 1}`:
    /// +1 at minima, -1 at maxima, 0 elsewhere.
    pub fn vertex_index(&self, i: usize) -> i32 {
        let n = self.n();
        let mut exiting = 0;
        // Edge i-1 exits V_i when V_{i-1} < V_i; edge i exits V_i when
        // V_i > V_{i+1}.
        if self.edge_dir[(i + n - 1) % n] == EdgeDir::Up {
            exiting += 1;
        }
        if self.edge_dir[i] == EdgeDir::Down {
            exiting += 1;
        }
        1 - exiting
    }

    /// Discrete Poincare-Hopf on the cycle: indices sum to the Euler
    /// characteristic 0, equivalently minima and maxima balance.
    pub fn poincare_hopf_check(&self) -> bool {
        let sum: i32 = (0..self.n()).map(|i| self.vertex_index(i)).sum();
        sum == 0 && self.l_plus == self.l_minus
    }
}

/// Pure form of the ordering table. `w_outside` is the position of
/// `V_{i+2}` relative to the circumcircle at `i` (`true` = outside).
///
/// At a positive `V_i`, `V_i` dominates (`Down`) iff the next vertex is
/// positive with `V_{i+2}` outside, or negative with `V_{i+2}` inside.
/// At a negative `V_i` the words greater/less and outside/inside are
/// both exchanged; spelled out, the two cases coincide.
pub fn direction_from_signs(sign_i: Sign, sign_next: Sign, w_outside: bool) -> EdgeDir {
    match sign_i {
        Sign::Positive => {
            let down = match sign_next {
                Sign::Positive => w_outside,
                Sign::Negative => !w_outside,
            };
            if down { EdgeDir::Down } else { EdgeDir::Up }
        }
        Sign::Negative => {
            let up = match sign_next {
                Sign::Positive => !w_outside,
                Sign::Negative => w_outside,
            };
            if up { EdgeDir::Up } else { EdgeDir::Down }
        }
    }
}

/// Curvature comparison across edge `i`, relating `V_i` and `V_{i+1}`.
///
/// Needs the circumcircle at `i` to exist and `V_{i+2}` to be strictly
/// inside or outside it; anything else is a genericity violation
/// surfaced as an error rather than broken silently.
pub fn compare(p: &HPolygon, i: usize) -> Result<EdgeDir> {
    let (center, radius) = p.circle_at(i)?;
    let x = p.cyclic(i as isize + 2);
    let pos = point_vs_circle(center, radius, x, p.tolerances());
    if pos == CirclePosition::On {
        return Err(Error::Tie { index: i });
    }
    let sign_i = p.vertex_sign(i)?;
    let sign_next = p.vertex_sign((i + 1) % p.n())?;
    Ok(direction_from_signs(
        sign_i,
        sign_next,
        pos == CirclePosition::Outside,
    ))
}

/// Radius comparison across edge `i`: `Up` iff `R_i > R_{i+1}` strictly.
/// Only meaningful on convex polygons, where it provably agrees with
/// [`compare`]; near-equal radii are a tie error.
pub fn radii_compare(p: &HPolygon, i: usize) -> Result<EdgeDir> {
    if !p.is_convex()? {
        return Err(Error::NonConvex);
    }
    let (_, r_here) = p.circle_at(i)?;
    let next = (i + 1) % p.n();
    let (_, r_next) = p.circle_at(next)?;
    if (r_here - r_next).abs() < p.tolerances().eps_id {
        return Err(Error::Tie { index: i });
    }
    Ok(if r_here > r_next { EdgeDir::Up } else { EdgeDir::Down })
}

/// Runs [`compare`] on every edge and labels the resulting cycle.
pub fn build_graph(p: &HPolygon) -> Result<CurvatureGraph> {
    let dirs = (0..p.n()).map(|i| compare(p, i)).collect::<Result<Vec<_>>>()?;
    Ok(CurvatureGraph::from_directions(dirs))
}
