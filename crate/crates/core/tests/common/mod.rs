//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here reaches results by a different route than the
//! library: distances through the disk closed form or quadrature,
//! areas through a distance-only formula, circle classification through
//! exact rational arithmetic or brute-force equidistant search. The
//! suites assert agreement, so a shared bug would have to be shared
//! across unrelated derivations.
#![allow(dead_code)]

use hypergon::generator::{random_convex_polygon, GenSpec, SplitMix64};
use hypergon::{CycleKind, HPoint, HPolygon, Tolerances};
use num::{BigRational, Signed, Zero};

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn pd(x: f64, y: f64) -> HPoint {
    HPoint::from_poincare([x, y], &tol()).unwrap()
}

/// Distance from the disk closed form
/// `arccosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2)))`.
pub fn disk_distance(u: [f64; 2], v: [f64; 2]) -> f64 {
    let du = [u[0] - v[0], u[1] - v[1]];
    let d2 = du[0] * du[0] + du[1] * du[1];
    let arg = 1.0 + 2.0 * d2 / ((1.0 - u[0] * u[0] - u[1] * u[1]) * (1.0 - v[0] * v[0] - v[1] * v[1]));
    arg.max(1.0).acosh()
}

/// Radial distance by Simpson quadrature of the line element
/// `2 dt / (1 - t^2)` along the straight ray from the origin.
pub fn radial_quadrature(r: f64) -> f64 {
    let n = 2000usize;
    let h = r / n as f64;
    let f = |t: f64| 2.0 / (1.0 - t * t);
    let mut acc = f(0.0) + f(r);
    for k in 1..n {
        let t = k as f64 * h;
        acc += f(t) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Triangle area from side lengths only (hyperbolic analogue of
/// Heron via L'Huilier): `4 atan sqrt(tanh(s/2) tanh((s-a)/2)
/// tanh((s-b)/2) tanh((s-c)/2))` with `s` the semiperimeter.
pub fn side_length_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let la = disk_distance(b, c);
    let lb = disk_distance(c, a);
    let lc = disk_distance(a, b);
    let s = 0.5 * (la + lb + lc);
    let t = (0.5 * s).tanh()
        * (0.5 * (s - la)).tanh()
        * (0.5 * (s - lb)).tanh()
        * (0.5 * (s - lc)).tanh();
    4.0 * t.max(0.0).sqrt().atan()
}

/// Euclidean circumcenter of three disk points.
pub fn euclid_circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<[f64; 2]> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-14 {
        return None;
    }
    let na = a[0] * a[0] + a[1] * a[1];
    let nb = b[0] * b[0] + b[1] * b[1];
    let nc = c[0] * c[0] + c[1] * c[1];
    Some([
        (na * (b[1] - c[1]) + nb * (c[1] - a[1]) + nc * (a[1] - b[1])) / d,
        (na * (c[0] - b[0]) + nb * (a[0] - c[0]) + nc * (b[0] - a[0])) / d,
    ])
}

fn spread(o: [f64; 2], t: &[[f64; 2]; 3]) -> f64 {
    let d = t.map(|p| disk_distance(o, p));
    let hi = d[0].max(d[1]).max(d[2]);
    let lo = d[0].min(d[1]).min(d[2]);
    hi - lo
}

/// Smooth stand-in for `spread`: zero at the same points, but free of
/// the max/min creases that stall a direct pattern search.
fn sq_spread(o: [f64; 2], t: &[[f64; 2]; 3]) -> f64 {
    let d = t.map(|p| disk_distance(o, p));
    let (u, v, w) = (d[0] - d[1], d[0] - d[2], d[1] - d[2]);
    u * u + v * v + w * w
}

/// Möbius translation: the point a hyperbolic distance `h` from `o` in
/// compass direction `theta` (directions read in the chart carried to
/// `o`, which is all a pattern search needs).
fn mobius_step(o: [f64; 2], h: f64, theta: f64) -> [f64; 2] {
    let r = (h / 2.0).tanh();
    let (wr, wi) = (r * theta.cos(), r * theta.sin());
    let (nr, ni) = (wr + o[0], wi + o[1]);
    let (dr, di) = (1.0 + o[0] * wr + o[1] * wi, o[0] * wi - o[1] * wr);
    let d2 = dr * dr + di * di;
    [(nr * dr + ni * di) / d2, (ni * dr - nr * di) / d2]
}

// Beyond this rim band (hyperbolic radius about 19) the metric itself
// loses digits, so the search never leaves it.
fn inside_rim(o: [f64; 2]) -> bool {
    1.0 - (o[0] * o[0] + o[1] * o[1]) >= 3e-8
}

/// Brute-force equidistant-point search: the spread of the three
/// distances at the best point the search can find. Three stages, all
/// driven by the smooth squared objective: a coarse grid of starts
/// (plus rings deep in the disk for far-out centers), a pattern search
/// whose steps have fixed hyperbolic length so convergence does not
/// degrade near the rim, and a guarded Newton solve of the two
/// equidistance equations to push a genuine root to machine precision.
/// A triple has a circumcircle exactly when the result reaches zero.
pub fn spread_min(t: &[[f64; 2]; 3]) -> f64 {
    let mut best_o = [0.0, 0.0];
    let mut best = sq_spread(best_o, t);
    let consider = |o: [f64; 2], best: &mut f64, best_o: &mut [f64; 2]| {
        if !inside_rim(o) {
            return;
        }
        let s = sq_spread(o, t);
        if s < *best {
            *best = s;
            *best_o = o;
        }
    };
    let mut k = -24i32;
    while k <= 24 {
        let mut j = -24i32;
        while j <= 24 {
            consider([k as f64 * 0.04, j as f64 * 0.04], &mut best, &mut best_o);
            j += 1;
        }
        k += 1;
    }
    for s in [3.0f64, 4.0, 5.0, 6.0, 8.0, 10.0] {
        let rho = (s / 2.0).tanh();
        let mut a = 0;
        while a < 48 {
            let th = a as f64 * (2.0 * std::f64::consts::PI / 48.0);
            consider([rho * th.cos(), rho * th.sin()], &mut best, &mut best_o);
            a += 1;
        }
    }
    let mut step = 1.0f64;
    while step > 1e-8 {
        let mut moved = false;
        let mut d = 0;
        while d < 8 {
            let cand = mobius_step(best_o, step, d as f64 * std::f64::consts::FRAC_PI_4);
            let before = best;
            consider(cand, &mut best, &mut best_o);
            if best < before {
                moved = true;
            }
            d += 1;
        }
        if !moved {
            step *= 0.5;
        }
    }

    // Newton on F(x) = (d0 - d1, d0 - d2) with a finite-difference
    // Jacobian. Steps are only accepted when they reduce the squared
    // objective, so a triple with no equidistant point simply stops
    // improving instead of diverging.
    let residual = |o: [f64; 2]| -> [f64; 2] {
        let d = t.map(|p| disk_distance(o, p));
        [d[0] - d[1], d[0] - d[2]]
    };
    for _ in 0..40 {
        let f = residual(best_o);
        if f[0].abs().max(f[1].abs()) < 1e-14 {
            break;
        }
        let h = 1e-6 * (1.0 - (best_o[0] * best_o[0] + best_o[1] * best_o[1]));
        let fx = residual([best_o[0] + h, best_o[1]]);
        let fy = residual([best_o[0], best_o[1] + h]);
        let j = [
            [(fx[0] - f[0]) / h, (fy[0] - f[0]) / h],
            [(fx[1] - f[1]) / h, (fy[1] - f[1]) / h],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-18 {
            break;
        }
        let mut sx = -(j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let mut sy = -(-j[1][0] * f[0] + j[0][0] * f[1]) / det;
        let mut accepted = false;
        for _ in 0..12 {
            let cand = [best_o[0] + sx, best_o[1] + sy];
            if inside_rim(cand) {
                let s = sq_spread(cand, t);
                if s < best {
                    best = s;
                    best_o = cand;
                    accepted = true;
                    break;
                }
            }
            sx *= 0.5;
            sy *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    spread(best_o, t)
}

fn big(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

type R3 = [BigRational; 3];

fn lift_exact(u: [f64; 2]) -> R3 {
    let (x, y) = (big(u[0]), big(u[1]));
    let n = &x * &x + &y * &y;
    let s = BigRational::from_float(1.0).unwrap() - &n;
    let two = BigRational::from_float(2.0).unwrap();
    [
        (BigRational::from_float(1.0).unwrap() + &n) / &s,
        &two * &x / &s,
        &two * &y / &s,
    ]
}

fn sub3(a: &R3, b: &R3) -> R3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

/// Exact classification of the curve through three dyadic disk points:
/// every intermediate value is rational, so the causal sign that
/// separates circle, horocycle, and hypercycle is computed without
/// rounding.
pub fn exact_cycle_kind(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> CycleKind {
    let (pa, pb, pc) = (lift_exact(a), lift_exact(b), lift_exact(c));
    let det = &pa[0] * (&pb[1] * &pc[2] - &pb[2] * &pc[1])
        - &pa[1] * (&pb[0] * &pc[2] - &pb[2] * &pc[0])
        + &pa[2] * (&pb[0] * &pc[1] - &pb[1] * &pc[0]);
    if det.is_zero() {
        return CycleKind::Collinear;
    }
    let u = sub3(&pa, &pb);
    let w = sub3(&pb, &pc);
    // Minkowski cross: Euclidean cross with the time component negated.
    let v = [
        -(&u[1] * &w[2] - &u[2] * &w[1]),
        &u[2] * &w[0] - &u[0] * &w[2],
        &u[0] * &w[1] - &u[1] * &w[0],
    ];
    let causal = -(&v[0] * &v[0]) + &v[1] * &v[1] + &v[2] * &v[2];
    if causal.is_negative() {
        CycleKind::Circle
    } else if causal.is_zero() {
        CycleKind::Horocycle
    } else {
        CycleKind::Hypercycle
    }
}

/// Dyadic rational in `[-0.5, 0.5]` with denominator `2^20`, so the
/// exact lift above is cheap and the value is reproducible.
pub fn dyadic(rng: &mut SplitMix64) -> f64 {
    let num = (rng.next_u64() % (1 << 21)) as i64 - (1 << 20);
    num as f64 / (1u64 << 21) as f64
}

/// Seed-derived corpus of validated convex polygons.
pub fn build_corpus(n: usize, count: usize, master: &mut SplitMix64) -> Vec<HPolygon> {
    (0..count)
        .map(|_| {
            let spec = GenSpec::sized(n, master.next_u64());
            random_convex_polygon(&spec, tol())
                .unwrap_or_else(|e| panic!("generation failed for n={n}: {e}"))
                .0
        })
        .collect()
}
