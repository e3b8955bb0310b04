//! Randomized invariants of the point, distance, angle, and isometry
//! layer. Failures here would undermine everything downstream, so the
//! properties are deliberately broad: metric axioms, model round trips,
//! equivariance under random isometries, and internal consistency
//! between the angle conventions.

mod common;

use common::tol;
use hypergon::generator::SplitMix64;
use hypergon::geom::{
    geodesic_point, hdist, left_angle, midpoint, mink_dot, separation, side_of, tangent_direction,
    unsigned_angle, bisector_normal,
};
use hypergon::isometry::Isometry;
use hypergon::HPoint;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn disk_point() -> impl Strategy<Value = HPoint> {
    (0.0..0.8f64, 0.0..TAU).prop_map(|(r, phi)| {
        HPoint::from_poincare([r * phi.cos(), r * phi.sin()], &tol()).unwrap()
    })
}

fn random_isometry() -> impl Strategy<Value = Isometry> {
    any::<u64>().prop_map(|seed| Isometry::random(&mut SplitMix64::new(seed), 1.5))
}

proptest! {
    #[test]
    fn distance_is_a_metric(a in disk_point(), b in disk_point(), c in disk_point()) {
        let t = tol();
        let ab = hdist(&a, &b, &t).unwrap();
        let ba = hdist(&b, &a, &t).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab >= 0.0);
        let ac = hdist(&a, &c, &t).unwrap();
        let bc = hdist(&b, &c, &t).unwrap();
        prop_assert!(ac <= ab + bc + 1e-10);
    }

    #[test]
    fn isometries_preserve_distance_and_the_sheet(
        a in disk_point(),
        b in disk_point(),
        g in random_isometry(),
    ) {
        let t = tol();
        let (ga, gb) = (g.apply(&a), g.apply(&b));
        prop_assert!((mink_dot(ga.coords(), ga.coords()) + 1.0).abs() < 1e-9);
        let before = hdist(&a, &b, &t).unwrap();
        let after = hdist(&ga, &gb, &t).unwrap();
        prop_assert!((before - after).abs() < 1e-9, "drift {}", (before - after).abs());
    }

    #[test]
    fn composed_isometries_stay_on_model(a in disk_point(), seeds in proptest::collection::vec(any::<u64>(), 1..20)) {
        let mut g = Isometry::identity();
        for s in &seeds {
            g = Isometry::random(&mut SplitMix64::new(*s), 0.7).compose(&g);
        }
        let ga = g.apply(&a);
        prop_assert!((mink_dot(ga.coords(), ga.coords()) + 1.0).abs() < 1e-8);
    }

    #[test]
    fn disk_round_trip_is_tight(a in disk_point()) {
        let u = a.to_poincare();
        let back = HPoint::from_poincare(u, &tol()).unwrap();
        prop_assert!(separation(a.coords(), back.coords()) < 1e-12);
    }

    #[test]
    fn reversing_a_corner_complements_its_left_angle(
        a in disk_point(), b in disk_point(), c in disk_point()
    ) {
        let t = tol();
        let fwd = left_angle(&a, &b, &c, &t);
        let rev = left_angle(&c, &b, &a, &t);
        if let (Ok(f), Ok(r)) = (fwd, rev) {
            // Straight corners read pi from both sides; any other corner
            // splits 2 pi between the two readings.
            if (f - PI).abs() > 1e-9 {
                prop_assert!((f + r - TAU).abs() < 1e-9, "f {f} r {r}");
            } else {
                prop_assert!((r - PI).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn unsigned_angle_is_the_smaller_reading(
        a in disk_point(), b in disk_point(), c in disk_point()
    ) {
        let t = tol();
        if let (Ok(u), Ok(l)) = (unsigned_angle(&b, &a, &c, &t), left_angle(&a, &b, &c, &t)) {
            prop_assert!((u - l.min(TAU - l)).abs() < 1e-9);
        }
    }

    #[test]
    fn left_angles_are_isometry_invariant(
        a in disk_point(), b in disk_point(), c in disk_point(), g in random_isometry()
    ) {
        let t = tol();
        let before = left_angle(&a, &b, &c, &t);
        let after = left_angle(&g.apply(&a), &g.apply(&b), &g.apply(&c), &t);
        if let (Ok(x), Ok(y)) = (before, after) {
            // Skip corners within numerical reach of straight, where the
            // left/reflex branch may legitimately flip under isometry.
            if (x - PI).abs() > 1e-7 {
                prop_assert!((x - y).abs() < 1e-7, "x {x} y {y}");
            }
        }
    }

    #[test]
    fn midpoints_bisect_and_ride_the_bisector(a in disk_point(), b in disk_point()) {
        let t = tol();
        prop_assume!(separation(a.coords(), b.coords()) > 1e-6);
        let m = midpoint(&a, &b, &t).unwrap();
        let da = hdist(&m, &a, &t).unwrap();
        let db = hdist(&m, &b, &t).unwrap();
        prop_assert!((da - db).abs() < 1e-11);
        let n = bisector_normal(&a, &b, &t).unwrap();
        prop_assert_eq!(side_of(&m, &n, &t), 0);
        prop_assert_eq!(side_of(&a, &n, &t), -side_of(&b, &n, &t));
        prop_assert!(side_of(&a, &n, &t) != 0);
        // Flipping the normal flips every strict side.
        prop_assert_eq!(side_of(&a, &n.flipped(), &t), -side_of(&a, &n, &t));
    }

    #[test]
    fn geodesic_flow_travels_the_requested_distance(
        a in disk_point(), b in disk_point(), s in -1.5..1.5f64
    ) {
        let t = tol();
        prop_assume!(separation(a.coords(), b.coords()) > 1e-6);
        let dir = tangent_direction(&a, &b, &t).unwrap();
        let x = geodesic_point(&dir, s);
        prop_assert!((mink_dot(x.coords(), x.coords()) + 1.0).abs() < 1e-9);
        let d = hdist(&a, &x, &t).unwrap();
        prop_assert!((d - s.abs()).abs() < 1e-10, "wanted {} got {d}", s.abs());
    }

    #[test]
    fn flow_composes_additively(a in disk_point(), b in disk_point(), s in 0.1..1.0f64) {
        let t = tol();
        prop_assume!(separation(a.coords(), b.coords()) > 1e-6);
        let dir = tangent_direction(&a, &b, &t).unwrap();
        let half = geodesic_point(&dir, s / 2.0);
        let full = geodesic_point(&dir, s);
        let via = hdist(&a, &half, &t).unwrap() + hdist(&half, &full, &t).unwrap();
        let direct = hdist(&a, &full, &t).unwrap();
        prop_assert!((via - direct).abs() < 1e-10);
    }
}
