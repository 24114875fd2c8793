use std::f64::consts::PI;

use proptest::prelude::*;
use spectral_core::polygeom::{
    hausdorff_distance, hausdorff_distance_grid, holes_from_chi, inscribed_regular_ngon,
    staircase_polygon, CellComplex, PointCloud, Polygon,
};

fn cloud() -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::array::uniform2(-5.0f64..5.0), 1..40)
        .prop_map(|p| PointCloud::new(p).unwrap())
}

/// Star-shaped polygon from sorted angles and radii, which is always simple.
fn star() -> impl Strategy<Value = Polygon> {
    prop::collection::vec((0.0f64..1.0, 0.5f64..2.0), 3..12).prop_filter_map(
        "degenerate",
        |mut pts| {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let n = pts.len() as f64;
            let vertices = pts
                .iter()
                .enumerate()
                .map(|(i, (jitter, r))| {
                    let a = 2.0 * PI * (i as f64 + 0.8 * jitter) / n;
                    [r * a.cos(), r * a.sin()]
                })
                .collect();
            Polygon::new(vertices).ok()
        },
    )
}

proptest! {
    #[test]
    fn hausdorff_is_a_metric(a in cloud(), b in cloud(), c in cloud()) {
        let ab = hausdorff_distance(&a, &b);
        prop_assert_eq!(ab, hausdorff_distance(&b, &a));
        let bc = hausdorff_distance(&b, &c);
        let ac = hausdorff_distance(&a, &c);
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert_eq!(hausdorff_distance(&a, &a), 0.0);
    }

    #[test]
    fn grid_search_matches_scan(a in cloud(), b in cloud()) {
        prop_assert_eq!(hausdorff_distance(&a, &b), hausdorff_distance_grid(&a, &b));
    }

    #[test]
    fn translation_bound(a in cloud(), v in prop::array::uniform2(-1.0f64..1.0)) {
        let moved = a.translate(v);
        prop_assert!(hausdorff_distance(&a, &moved) <= v[0].hypot(v[1]) + 1e-12);
    }

    #[test]
    fn area_is_invariant(p in star(), shift in 0usize..12, angle in 0.0f64..6.3, t in prop::array::uniform2(-3.0f64..3.0)) {
        let v = p.vertices();
        let rotated: Vec<[f64; 2]> = (0..v.len()).map(|i| v[(i + shift) % v.len()]).collect();
        let (s, c) = angle.sin_cos();
        let moved: Vec<[f64; 2]> = v.iter().map(|q| [c * q[0] - s * q[1] + t[0], s * q[0] + c * q[1] + t[1]]).collect();
        let mut reversed = v.to_vec();
        reversed.reverse();
        let area = p.area();
        prop_assert!((Polygon::new(rotated).unwrap().area() - area).abs() <= 1e-12 * area.max(1.0));
        prop_assert!((Polygon::new(moved).unwrap().area() - area).abs() <= 1e-12 * area.max(1.0));
        prop_assert!((Polygon::new(reversed).unwrap().area() - area).abs() <= 1e-12 * area.max(1.0));
    }

    #[test]
    fn angle_sum(p in star()) {
        if let Ok(angles) = p.interior_angles() {
            let sum: f64 = angles.iter().sum();
            prop_assert!((sum - PI * (p.len() as f64 - 2.0)).abs() <= 1e-9);
        }
    }
}

#[test]
fn regular_ngons_approach_the_disk() {
    let mut last = (0.0, 0.0, 0.0);
    for n in [8, 16, 32, 64, 128] {
        let p = inscribed_regular_ngon(n).unwrap();
        let (area, perimeter) = (p.area(), p.perimeter());
        assert!((perimeter - 2.0 * n as f64 * (PI / n as f64).sin()).abs() < 1e-12);
        let min_angle = p.min_interior_angle().unwrap();
        assert!(area > last.0 && area < PI);
        assert!(perimeter > last.1 && perimeter < 2.0 * PI);
        assert!(min_angle > last.2 && min_angle < PI);
        let sum: f64 = p.interior_angles().unwrap().iter().sum();
        assert!((sum - PI * (n as f64 - 2.0)).abs() < 1e-9);
        last = (area, perimeter, min_angle);
    }
}

#[test]
fn staircase_sequence() {
    let mut last_tip = f64::INFINITY;
    for k in 7..=10u32 {
        let s = staircase_polygon(k).unwrap();
        let sides = 1usize << k;
        assert_eq!(s.polygon.len(), sides);
        let expected = sides as f64 / k as f64;
        assert!((s.polygon.perimeter() - expected).abs() < 1e-9, "k={k}");
        let d = s.hausdorff_to_disk(0.01).unwrap();
        assert!(d <= 1.0 / k as f64, "k={k}: {d}");
        let tip = s.max_tip_angle().unwrap();
        assert!(tip < last_tip);
        last_tip = tip;
        let sum: f64 = s.polygon.interior_angles().unwrap().iter().sum();
        assert!((sum - PI * (sides as f64 - 2.0)).abs() < 1e-8);
    }
}

#[test]
fn fixture_complexes() {
    for (c, holes) in [
        (CellComplex::polygon(5), 0),
        (CellComplex::annulus(), 1),
        (CellComplex::two_holes(), 2),
    ] {
        assert_eq!(holes_from_chi(c.euler_characteristic()).unwrap(), holes);
    }
}
