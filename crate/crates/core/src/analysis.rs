//! Whole-polygon analysis: one pass that runs validation, the curvature
//! graph, the evolute, and every identity check, and assembles the
//! result into a serializable report.
//!
//! The report degrades gracefully. Checks that cannot be evaluated are
//! labeled rather than guessed: `not_applicable` when the input is out
//! of a check's scope (triangles have a single circumcenter, so no
//! evolute), `not_asserted` when the run is exploratory (a forced
//! non-convex polygon) or a degeneracy such as a radius tie blocks the
//! computation. `fail` is reserved for checks that genuinely evaluated
//! and came out false.

use serde::{Deserialize, Serialize};

use crate::curvature::{build_graph, compare, radii_compare, CurvatureGraph, Extremality};
use crate::error::{Error, Result};
use crate::evolute::{build_evolute, extremal_cusp_agreement, Evolute};
use crate::identities::{
    defect_records, density_identity, evolute_density, polygon_area, polygon_density,
    DefectRecord,
};
use crate::polygon::{HPolygon, Sign, ValidationReport};
use crate::tolerance::Tolerances;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Out of scope for this run (non-convex input, missing graph).
    NotAsserted,
    /// Out of scope for this input shape (for example `n = 3`).
    NotApplicable,
}

impl CheckStatus {
    pub fn is_pass(self) -> bool {
        self == CheckStatus::Pass
    }

    fn of(ok: bool) -> CheckStatus {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// Everything the analysis knows about one vertex.
///
/// Optional fields are absent when the quantity could not be computed
/// for this input; a note in the report says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub index: usize,
    pub poincare: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    /// Circumradius of the circle through this vertex and its neighbours.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_poincare: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolute_left_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<Extremality>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cusp: Option<bool>,
    /// Signed angle gap: evolute angle minus polygon angle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

/// Whole-polygon quantities; every one is recomputable from the
/// per-vertex records.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon_density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolute_density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_plus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_minus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_sum: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_identity_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rearranged_identity_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauss_bonnet_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_defect_area_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_mediatrix_residual: Option<f64>,
    /// Largest deviation from the per-vertex gap decomposition: the gap
    /// is `delta` at regular vertices and `pi + delta` at extremal ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_decomposition_residual: Option<f64>,
}

/// Pass/fail status of every named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// At least four extremal vertices, evenly many.
    pub four_vertex: CheckStatus,
    /// Density identity residuals within `eps_id`.
    pub density_identity: CheckStatus,
    /// Evolute density at most `-1`.
    pub evolute_density_bound: CheckStatus,
    /// Extremal vertices coincide with evolute cusps.
    pub cusp_extremal_agreement: CheckStatus,
    /// Circle-position comparison agrees with radius comparison.
    pub radii_ordering_agreement: CheckStatus,
    /// Equal count of maxima and minima; vertex indices sum to zero.
    pub index_balance: CheckStatus,
    /// Density equals one plus area over two pi.
    pub gauss_bonnet: CheckStatus,
    /// Each defect equals its quadrilateral's area, right angles at the
    /// midpoints.
    pub defect_area: CheckStatus,
}

impl Checks {
    fn all(status: CheckStatus) -> Checks {
        Checks {
            four_vertex: status,
            density_identity: status,
            evolute_density_bound: status,
            cusp_extremal_agreement: status,
            radii_ordering_agreement: status,
            index_balance: status,
            gauss_bonnet: status,
            defect_area: status,
        }
    }

    pub fn all_pass_or_out_of_scope(&self) -> bool {
        [
            self.four_vertex,
            self.density_identity,
            self.evolute_density_bound,
            self.cusp_extremal_agreement,
            self.radii_ordering_agreement,
            self.index_balance,
            self.gauss_bonnet,
            self.defect_area,
        ]
        .iter()
        .all(|s| *s != CheckStatus::Fail)
    }
}

/// Full analysis of one polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tolerances: Tolerances,
    pub n: usize,
    /// True when the input was clockwise and got reversed on ingestion.
    pub orientation_flipped: bool,
    pub validation: ValidationReport,
    pub vertices: Vec<VertexRecord>,
    pub aggregates: Aggregates,
    pub checks: Checks,
    /// Human-readable reasons for any absent field or unasserted check.
    pub notes: Vec<String>,
}

pub const REPORT_SCHEMA: u32 = 1;

/// Analyzes a polygon that passes full validation.
///
/// With `force`, validation failures are reported instead of fatal and
/// every check is downgraded to `not_asserted`; quantities that still
/// make sense (angles, any computable circumcircles) are filled in for
/// exploration.
pub fn analyze(p: &HPolygon, force: bool) -> Result<AnalysisReport> {
    let validation = p.validate();
    if !validation.all_pass() && !force {
        return Err(Error::Invalid { flags: validation.failed_flags().join(", ") });
    }

    let tol = *p.tolerances();
    let n = p.n();
    let mut notes = Vec::new();
    let admissible = validation.admissible();
    let convex = validation.convex.ok;

    let mut vertices: Vec<VertexRecord> = (0..n)
        .map(|i| {
            let left_angle = p.left_angle_at(i).ok();
            VertexRecord {
                index: i,
                poincare: p.vertex(i).to_poincare(),
                left_angle,
                sign: p.vertex_sign(i).ok(),
                radius: None,
                center_poincare: None,
                evolute_left_angle: None,
                extremal: None,
                cusp: None,
                gap: None,
                delta: None,
                alpha: None,
            }
        })
        .collect();
    for i in 0..n {
        if let Ok((center, radius)) = p.circle_at(i) {
            vertices[i].radius = Some(radius);
            vertices[i].center_poincare = Some(center.to_poincare());
        }
    }

    let graph: Option<CurvatureGraph> = if n >= 4 {
        match build_graph(p) {
            Ok(g) => Some(g),
            Err(e) => {
                notes.push(format!("curvature graph unavailable: {e}"));
                None
            }
        }
    } else {
        notes.push("curvature graph skipped: every vertex of a triangle ties".into());
        None
    };
    if let Some(g) = &graph {
        for i in 0..n {
            vertices[i].extremal = Some(g.extremal[i]);
        }
    }

    let evolute: Option<Evolute> = if n >= 4 {
        match build_evolute(p) {
            Ok(e) => Some(e),
            Err(e) => {
                notes.push(format!("evolute unavailable: {e}"));
                None
            }
        }
    } else {
        notes.push("evolute skipped: a triangle's circumcenters coincide".into());
        None
    };
    if let Some(e) = &evolute {
        for i in 0..n {
            vertices[i].evolute_left_angle = Some(e.left_angles[i]);
            vertices[i].cusp = Some(e.cusp[i]);
            vertices[i].gap = Some(e.gaps[i]);
        }
    }

    let defects: Option<Vec<DefectRecord>> = match &evolute {
        Some(e) => match defect_records(p, e) {
            Ok(r) => Some(r),
            Err(err) => {
                notes.push(format!("defect records unavailable: {err}"));
                None
            }
        },
        None => None,
    };
    if let Some(records) = &defects {
        for r in records {
            vertices[r.index].delta = Some(r.delta);
            vertices[r.index].alpha = Some(r.alpha);
        }
    }

    let mut agg = Aggregates::default();
    agg.polygon_density = polygon_density(p).ok().map(|d| d.value);
    agg.evolute_density = evolute.as_ref().map(|e| evolute_density(e).value);
    agg.area = if convex {
        match polygon_area(p) {
            Ok(a) => Some(a),
            Err(e) => {
                notes.push(format!("area unavailable: {e}"));
                None
            }
        }
    } else {
        None
    };
    if let Some(g) = &graph {
        agg.extremal_count = Some(g.extremal_count());
        agg.l_plus = Some(g.l_plus);
        agg.l_minus = Some(g.l_minus);
        agg.index_sum = Some((0..n).map(|i| g.vertex_index(i) as i64).sum());
    }
    if let Some(records) = &defects {
        agg.defect_sum = Some(records.iter().map(|r| r.delta).sum());
        agg.alpha_sum = Some(records.iter().map(|r| r.alpha).sum());
        agg.max_defect_area_residual = records
            .iter()
            .map(|r| (r.delta - r.quad_area).abs())
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        agg.max_mediatrix_residual = records
            .iter()
            .flat_map(|r| r.mediatrix_angles)
            .map(|a| (a - std::f64::consts::FRAC_PI_2).abs())
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    }
    if let (Some(g), Some(e), Some(records)) = (&graph, &evolute, &defects) {
        let mut worst: f64 = 0.0;
        for r in records {
            let expected = match g.extremal[r.index] {
                Extremality::Regular => r.delta,
                Extremality::Max | Extremality::Min => std::f64::consts::PI + r.delta,
            };
            worst = worst.max((e.gaps[r.index] - expected).abs());
        }
        agg.max_decomposition_residual = Some(worst);
    }
    if let (Some(den), Some(area)) = (agg.polygon_density, agg.area) {
        agg.gauss_bonnet_residual = Some((den - 1.0 - area / std::f64::consts::TAU).abs());
    }

    let checks = if !validation.all_pass() {
        let misses: Vec<String> = validation
            .failed_flags()
            .iter()
            .map(|f| format!("non-{f}"))
            .collect();
        notes.push(format!("checks not asserted ({})", misses.join(", ")));
        Checks::all(CheckStatus::NotAsserted)
    } else {
        build_checks(p, n, convex, admissible, &graph, &evolute, &mut agg, &mut notes)
    };

    Ok(AnalysisReport {
        schema: REPORT_SCHEMA,
        tolerances: tol,
        n,
        orientation_flipped: p.orientation_flipped(),
        validation,
        vertices,
        aggregates: agg,
        checks,
        notes,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_checks(
    p: &HPolygon,
    n: usize,
    convex: bool,
    admissible: bool,
    graph: &Option<CurvatureGraph>,
    evolute: &Option<Evolute>,
    agg: &mut Aggregates,
    notes: &mut Vec<String>,
) -> Checks {
    debug_assert!(admissible && convex);
    let tol = p.tolerances();
    let mut checks = Checks::all(CheckStatus::NotApplicable);

    if let (Some(den), Some(area)) = (agg.polygon_density, agg.area) {
        let residual = (den - 1.0 - area / std::f64::consts::TAU).abs();
        checks.gauss_bonnet = CheckStatus::of(residual <= tol.eps_id);
    }

    if n < 4 {
        return checks;
    }

    checks.four_vertex = match crate::identities::four_vertex_check(p) {
        Ok(c) => CheckStatus::of(c.pass),
        Err(e) => {
            notes.push(format!("four-vertex count not asserted: {e}"));
            CheckStatus::NotAsserted
        }
    };

    checks.density_identity = match density_identity(p) {
        Ok(report) => {
            agg.density_identity_residual = Some(report.residual);
            agg.rearranged_identity_residual = Some(report.rearranged_residual);
            CheckStatus::of(report.residual <= tol.eps_id && report.rearranged_residual <= tol.eps_id)
        }
        Err(e) => {
            notes.push(format!("density identity not asserted: {e}"));
            CheckStatus::NotAsserted
        }
    };

    checks.evolute_density_bound = match agg.evolute_density {
        Some(d) => CheckStatus::of(d <= -1.0 + tol.eps_id),
        None => CheckStatus::NotAsserted,
    };

    checks.cusp_extremal_agreement = match extremal_cusp_agreement(p) {
        Ok(agreement) => CheckStatus::of(agreement.mismatches.is_empty()),
        Err(e) => {
            notes.push(format!("cusp agreement not asserted: {e}"));
            CheckStatus::NotAsserted
        }
    };

    checks.radii_ordering_agreement = radii_agreement(p, notes);

    checks.index_balance = match graph {
        Some(g) => CheckStatus::of(
            g.l_plus == g.l_minus && (0..n).map(|i| g.vertex_index(i) as i64).sum::<i64>() == 0,
        ),
        None => CheckStatus::NotAsserted,
    };

    checks.defect_area = match (evolute, agg.max_defect_area_residual, agg.max_mediatrix_residual) {
        (Some(_), Some(da), Some(ma)) => CheckStatus::of(da <= tol.eps_id && ma <= tol.eps_id),
        _ => CheckStatus::NotAsserted,
    };

    checks
}

fn radii_agreement(p: &HPolygon, notes: &mut Vec<String>) -> CheckStatus {
    for i in 0..p.n() {
        let by_position = match compare(p, i) {
            Ok(d) => d,
            Err(e) => {
                notes.push(format!("radius ordering not asserted at edge {i}: {e}"));
                return CheckStatus::NotAsserted;
            }
        };
        let by_radius = match radii_compare(p, i) {
            Ok(d) => d,
            Err(e) => {
                notes.push(format!("radius ordering not asserted at edge {i}: {e}"));
                return CheckStatus::NotAsserted;
            }
        };
        if by_position != by_radius {
            return CheckStatus::Fail;
        }
    }
    CheckStatus::Pass
}
