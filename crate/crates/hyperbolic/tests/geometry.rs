use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use cxdim_hyperbolic::*;
use proptest::prelude::*;

fn pt() -> impl Strategy<Value = (f64, f64)> {
    (-5.0..5.0f64, 0.05..5.0f64)
}

proptest! {
    #[test]
    fn triangle_inequality(a in pt(), b in pt(), c in pt()) {
        let ab = dist_h2(a, b).unwrap();
        let bc = dist_h2(b, c).unwrap();
        let ac = dist_h2(a, c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-9);
        prop_assert!((ab - dist_h2(b, a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn vertical_additivity(x in -3.0..3.0f64, a in 0.01..1.0f64, b in 1.0..3.0f64, c in 3.0..50.0f64) {
        let ab = dist_h2((x, a), (x, b)).unwrap();
        let bc = dist_h2((x, b), (x, c)).unwrap();
        let ac = dist_h2((x, a), (x, c)).unwrap();
        prop_assert!((ab + bc - ac).abs() < 1e-9);
    }

    #[test]
    fn boundary_angle_oracle(h in 0.05..20.0f64, d in 0.05..20.0f64) {
        let a = boundary_angle(h, d).unwrap();
        prop_assert!(a > PI / 2.0 && a < PI);
        prop_assert!((a - boundary_angle_by_triangles(h, d).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn sigma_matches_vector_solver_on_grid() {
    for i in 0..=40 {
        let theta = PI / 2.0 + (PI / 2.0 - 1e-3) * i as f64 / 40.0;
        for k in 1..=30 {
            let alpha = 2.0 * PI / 3.0 * k as f64 / 30.0;
            let s = link_sigma(theta, alpha).unwrap();
            let v = link_sigma_by_vectors(theta, alpha).unwrap();
            assert!((s - v).abs() < 1e-9, "theta {theta} alpha {alpha}: {s} vs {v}");
        }
    }
}

#[test]
fn monotone_slopes() {
    let h = 1e-4;
    for k in 1..60 {
        let y = 0.1 * k as f64;
        assert!(prism_gap(y + h).unwrap() < prism_gap(y).unwrap());
        assert!(boundary_angle(y + h, 1.0).unwrap() < boundary_angle(y, 1.0).unwrap());
        for kind in CapKind::ALL {
            assert!(cap_height(kind, y + h).unwrap() > cap_height(kind, y).unwrap());
        }
    }
}

#[test]
fn kite_and_tetrahedron() {
    let k = kite_leg_length().unwrap();
    assert_abs_diff_eq!(k.law_of_cosines, 2f64.ln() / 2.0, epsilon = 1e-9);
    assert_abs_diff_eq!(k.coordinate, 2f64.ln() / 2.0, epsilon = 1e-9);
    assert_abs_diff_eq!(k.law_of_cosines, 0.346_573_59, epsilon = 1e-8);
    assert_abs_diff_eq!(k.angle_x0, 1.910_633, epsilon = 1e-6);

    let g = BlockGeometry::new().unwrap();
    // The horoball at 1.5 misses the face opposite infinity.
    assert!(g.face_top_height() < 1.5);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let xij = g.x_pair(i, j).unwrap();
                let d = g.distances_to_faces(&xij);
                assert!(d[i].abs() < 1e-9 && d[j].abs() < 1e-9, "x_{i}{j} not on E({i}{j})");
            }
        }
    }
}

#[test]
fn y0_table() {
    let r = solve_y0(Some(1.5)).unwrap();
    assert_eq!(r.cases.len(), 3);
    assert_abs_diff_eq!(r.cases[0].closed_form, 1.0298, epsilon = 1e-3);
    assert_abs_diff_eq!(r.cases[2].closed_form, 0.5946, epsilon = 1e-3);
    for c in &r.cases {
        assert_abs_diff_eq!(c.closed_form, c.bisection, epsilon = 1e-6);
    }
    assert!(r.minimum_feasible < 1.5);
    assert_eq!(r.pass_at_y0, Some(true));
    let low = solve_y0(Some(0.5)).unwrap();
    assert_eq!(low.pass_at_y0, Some(false));
}
