//! Static SVG scenes: the unit disk, polygon edges as geodesic arcs,
//! the evolute, optional circumcircles, and glyphs distinguishing
//! extremal vertices and cusps. All numbers are printed with fixed
//! precision so the same input and flags always produce the same bytes.

use anyhow::{anyhow, bail};
use hypergon::curvature::{build_graph, CurvatureGraph, Extremality};
use hypergon::evolute::{build_evolute, Evolute};
use hypergon::geom::{geodesic_point, separation, tangent_direction};
use hypergon::{HPoint, HPolygon};
use std::fmt::Write as _;

pub struct RenderOptions {
    pub circles: bool,
    pub exact_arcs: bool,
    pub samples: usize,
}

fn fmt(x: f64) -> String {
    // Avoid the two zero representations reaching the output.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

/// Polyline along the geodesic from `a` to `b`.
fn arc_polyline(a: &HPoint, b: &HPoint, samples: usize, p: &HPolygon) -> anyhow::Result<String> {
    let tol = p.tolerances();
    let dir = tangent_direction(a, b, tol).map_err(|e| anyhow!("edge direction: {e}"))?;
    let total = hypergon::geom::hdist(a, b, tol).map_err(|e| anyhow!("edge length: {e}"))?;
    let mut d = String::new();
    for k in 0..=samples {
        let s = total * k as f64 / samples as f64;
        let [x, y] = geodesic_point(&dir, s).to_poincare();
        let cmd = if k == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{} {} ", fmt(x), fmt(y)).unwrap();
    }
    Ok(d.trim_end().to_string())
}

/// Exact representation: the geodesic through two disk points is a
/// circular arc orthogonal to the unit circle (or a diameter).
fn arc_exact(a: &HPoint, b: &HPoint) -> String {
    let [ax, ay] = a.to_poincare();
    let [bx, by] = b.to_poincare();
    // Orthogonality to the unit circle pins the arc's Euclidean center:
    // 2 o.u = 1 + |u|^2 for both endpoints.
    let det = 2.0 * (ax * by - ay * bx);
    if det.abs() < 1e-12 {
        return format!("M{} {} L{} {}", fmt(ax), fmt(ay), fmt(bx), fmt(by));
    }
    let ka = 0.5 * (1.0 + ax * ax + ay * ay);
    let kb = 0.5 * (1.0 + bx * bx + by * by);
    let ox = (ka * by - kb * ay) / (0.5 * det);
    let oy = (kb * ax - ka * bx) / (0.5 * det);
    let r = (ox * ox + oy * oy - 1.0).max(0.0).sqrt();
    // The in-disk arc always subtends less than a half turn, so the
    // large-arc flag stays 0 and only the sweep depends on the data.
    let cross = (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
    let sweep = if cross > 0.0 { 1 } else { 0 };
    format!(
        "M{} {} A{} {} 0 0 {sweep} {} {}",
        fmt(ax),
        fmt(ay),
        fmt(r),
        fmt(r),
        fmt(bx),
        fmt(by)
    )
}

fn edge_path(
    a: &HPoint,
    b: &HPoint,
    p: &HPolygon,
    opts: &RenderOptions,
) -> anyhow::Result<String> {
    if opts.exact_arcs {
        Ok(arc_exact(a, b))
    } else {
        arc_polyline(a, b, opts.samples.max(64), p)
    }
}

/// Euclidean circle drawn by a hyperbolic circle of radius `rad`
/// centered at the disk point `u`.
fn disk_circle(u: [f64; 2], rad: f64) -> ([f64; 2], f64) {
    let t = (rad / 2.0).tanh();
    let s2 = u[0] * u[0] + u[1] * u[1];
    let denom = 1.0 - t * t * s2;
    let f = (1.0 - t * t) / denom;
    ([u[0] * f, u[1] * f], t * (1.0 - s2) / denom)
}

fn glyph_square(out: &mut String, [x, y]: [f64; 2], half: f64, class: &str) {
    writeln!(
        out,
        "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        fmt(x - half),
        fmt(y - half),
        fmt(2.0 * half),
        fmt(2.0 * half)
    )
    .unwrap();
}

fn glyph_diamond(out: &mut String, [x, y]: [f64; 2], half: f64, class: &str) {
    writeln!(
        out,
        "<path class=\"{class}\" d=\"M{} {} L{} {} L{} {} L{} {} Z\"/>",
        fmt(x - half),
        fmt(y),
        fmt(x),
        fmt(y + half),
        fmt(x + half),
        fmt(y),
        fmt(x),
        fmt(y - half)
    )
    .unwrap();
}

fn glyph_dot(out: &mut String, [x, y]: [f64; 2], r: f64, class: &str) {
    writeln!(
        out,
        "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
        fmt(x),
        fmt(y),
        fmt(r)
    )
    .unwrap();
}

fn glyph_cross(out: &mut String, [x, y]: [f64; 2], half: f64, class: &str) {
    writeln!(
        out,
        "<path class=\"{class}\" d=\"M{} {} L{} {} M{} {} L{} {}\"/>",
        fmt(x - half),
        fmt(y - half),
        fmt(x + half),
        fmt(y + half),
        fmt(x - half),
        fmt(y + half),
        fmt(x + half),
        fmt(y - half)
    )
    .unwrap();
}

const STYLE: &str = "\
.disk{fill:none;stroke:#444;stroke-width:0.005}\
.edge{fill:none;stroke:#1f6fb4;stroke-width:0.007}\
.evolute{fill:none;stroke:#c2442d;stroke-width:0.005}\
.circumcircle{fill:none;stroke:#8a8a8a;stroke-width:0.002;stroke-dasharray:0.02 0.012}\
.vertex{fill:#1f6fb4}\
.vertex-max{fill:#c2442d}\
.vertex-min{fill:#2d8a4e}\
.center{fill:#c2442d}\
.cusp{fill:none;stroke:#1a1a1a;stroke-width:0.006}";

pub fn render_svg(p: &HPolygon, opts: &RenderOptions) -> anyhow::Result<String> {
    let report = p.validate();
    if !report.all_pass() {
        bail!(
            "document fails validation ({}); nothing to draw",
            report.failed_flags().join(", ")
        );
    }
    let n = p.n();
    let decorated: Option<(CurvatureGraph, Evolute)> = if n >= 4 {
        let g = build_graph(p).map_err(|e| anyhow!("curvature labels: {e}"))?;
        let e = build_evolute(p).map_err(|e| anyhow!("evolute: {e}"))?;
        Some((g, e))
    } else {
        None
    };

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.1 -1.1 2.2 2.2\" width=\"720\" height=\"720\">"
    )
    .unwrap();
    writeln!(out, "<style>{STYLE}</style>").unwrap();
    // Flip to the mathematical orientation: y grows upward.
    writeln!(out, "<g transform=\"scale(1,-1)\">").unwrap();
    writeln!(out, "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\"/>").unwrap();

    for i in 0..n {
        let d = edge_path(p.vertex(i), p.cyclic(i as isize + 1), p, opts)?;
        writeln!(out, "<path class=\"edge\" d=\"{d}\"/>").unwrap();
    }

    if let Some((graph, evolute)) = &decorated {
        if opts.circles {
            for i in 0..n {
                let (center, radius) = p.circle_at(i).map_err(|e| anyhow!("circle {i}: {e}"))?;
                let (c, r) = disk_circle(center.to_poincare(), radius);
                writeln!(
                    out,
                    "<circle class=\"circumcircle\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    fmt(c[0]),
                    fmt(c[1]),
                    fmt(r)
                )
                .unwrap();
            }
        }

        for i in 0..n {
            let a = &evolute.centers[i];
            let b = &evolute.centers[(i + 1) % n];
            // Coincident consecutive centers have no arc to draw; the
            // validated generic inputs this tool accepts never produce
            // them, but stay graceful.
            if separation(a.coords(), b.coords()) < p.tolerances().eps_sep {
                continue;
            }
            let d = edge_path(a, b, p, opts)?;
            writeln!(out, "<path class=\"evolute\" d=\"{d}\"/>").unwrap();
        }

        for i in 0..n {
            let u = p.vertex(i).to_poincare();
            match graph.extremal[i] {
                Extremality::Max => glyph_square(&mut out, u, 0.018, "vertex-max"),
                Extremality::Min => glyph_diamond(&mut out, u, 0.022, "vertex-min"),
                Extremality::Regular => glyph_dot(&mut out, u, 0.011, "vertex"),
            }
        }
        for i in 0..n {
            let c = evolute.centers[i].to_poincare();
            if evolute.cusp[i] {
                glyph_cross(&mut out, c, 0.014, "cusp");
            } else {
                glyph_dot(&mut out, c, 0.008, "center");
            }
        }
    } else {
        for i in 0..n {
            glyph_dot(&mut out, p.vertex(i).to_poincare(), 0.011, "vertex");
        }
    }

    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
