//! The regular ideal tetrahedron with vertices `(0,0)`, `(1,0)`, `(1/2, sqrt3/2)`
//! and `infinity`, and the special points `x0`, `x_i`, `x_ij` of its blocks.
//!
//! Vertex `k` is opposite face `F(k)`. The edge `E(ij) = F(i) ∩ F(j)` joins the
//! two ideal vertices other than `i` and `j`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::minkowski::{self as mk, V4};
use crate::{HypError, Result};

#[derive(Clone, Debug)]
pub struct BlockGeometry {
    pub ideal: [V4; 4],
    /// Inward unit normals; `normals[k]` cuts out face `F(k)`.
    pub normals: [V4; 4],
    pub x0: V4,
    pub x: [V4; 4],
}

impl BlockGeometry {
    pub fn new() -> Result<Self> {
        let s3 = 3f64.sqrt();
        let ideal = [mk::ideal(0.0, 0.0), mk::ideal(1.0, 0.0), mk::ideal(0.5, s3 / 2.0), mk::IDEAL_INFINITY];
        let inside = mk::from_upper([0.5, 0.2887, 1.0]);
        let mut normals = [[0.0; 4]; 4];
        for k in 0..4 {
            let o: Vec<&V4> = (0..4).filter(|&i| i != k).map(|i| &ideal[i]).collect();
            let n = mk::plane_normal(o[0], o[1], o[2]);
            normals[k] = if mk::dot(&inside, &n) > 0.0 { n } else { mk::scale(&n, -1.0) };
        }
        let x0 = equidistant_point(&normals, [0.5, 0.2887, 1.0])?;
        let x = [0, 1, 2, 3].map(|k| mk::project(&x0, &normals[k]));
        Ok(Self { ideal, normals, x0, x })
    }

    /// `x_ij`: where the plane through `x0, x_i, x_j` meets `E(ij)`.
    pub fn x_pair(&self, i: usize, j: usize) -> Result<V4> {
        let plane = mk::plane_normal(&self.x0, &self.x[i], &self.x[j]);
        let ends: Vec<&V4> = (0..4).filter(|&k| k != i && k != j).map(|k| &self.ideal[k]).collect();
        mk::ideal_line_meets_plane(ends[0], ends[1], &plane)
            .ok_or_else(|| HypError::Numerical(format!("plane through x0, x{i}, x{j} misses E({i}{j})")))
    }

    /// Interior dihedral angle along `E(ij)`.
    pub fn dihedral(&self, i: usize, j: usize) -> f64 {
        (-mk::dot(&self.normals[i], &self.normals[j])).clamp(-1.0, 1.0).acos()
    }

    /// Euclidean height of the top of face `F(3)`, the face opposite infinity.
    pub fn face_top_height(&self) -> f64 {
        let high = mk::from_upper([0.5, 3f64.sqrt() / 6.0, 10.0]);
        mk::to_upper(&mk::project(&high, &self.normals[3]))[2]
    }

    pub fn distances_to_faces(&self, p: &V4) -> [f64; 4] {
        self.normals.map(|n| mk::signed_sinh_dist(p, &n).asinh())
    }
}

/// Newton iteration in upper half space coordinates for the point at equal
/// signed distance from the four faces.
fn equidistant_point(normals: &[V4; 4], start: [f64; 3]) -> Result<V4> {
    let f = |w: [f64; 3]| -> [f64; 3] {
        let p = mk::from_upper(w);
        let d3 = mk::dot(&p, &normals[3]);
        [0, 1, 2].map(|k| mk::dot(&p, &normals[k]) - d3)
    };
    let mut w = start;
    for _ in 0..50 {
        let r = f(w);
        if r.iter().all(|v| v.abs() < 1e-15) {
            break;
        }
        let h = 1e-7;
        let mut jac = [[0.0; 3]; 3];
        for c in 0..3 {
            let mut wp = w;
            let mut wm = w;
            wp[c] += h;
            wm[c] -= h;
            let (fp, fm) = (f(wp), f(wm));
            for row in 0..3 {
                jac[row][c] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        let step = solve3(jac, r).ok_or_else(|| HypError::Numerical("singular Jacobian".into()))?;
        for c in 0..3 {
            w[c] -= step[c];
        }
        if w[2] <= 0.0 {
            return Err(HypError::Numerical("Newton left upper half space".into()));
        }
    }
    let r = f(w);
    if r.iter().any(|v| v.abs() > 1e-12) {
        return Err(HypError::Numerical(format!("Newton did not converge, residual {r:?}")));
    }
    Ok(mk::from_upper(w))
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&a);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for c in 0..3 {
        let mut m = a;
        for row in 0..3 {
            m[row][c] = b[row];
        }
        out[c] = det(&m) / d;
    }
    Some(out)
}

/// `d(x0, x_i)` two ways, plus the angles that feed the law of cosines.
#[derive(Clone, Debug, Serialize)]
pub struct KiteLeg {
    pub law_of_cosines: f64,
    pub coordinate: f64,
    /// `∠_{x0}(x_i, x_j)` measured in coordinates.
    pub angle_x0: f64,
    /// `∠_{x_ij}(x_i, x0)` measured in coordinates.
    pub angle_xij: f64,
    /// `∠_{x_i}(x0, x_ij)` measured in coordinates.
    pub angle_xi: f64,
}

pub fn kite_leg_length() -> Result<KiteLeg> {
    let theta = (-1.0f64 / 3.0).acos();
    // Angles pi/6 at x_ij, theta/2 at x0, right angle at x_i; the side
    // opposite pi/6 is x0 x_i.
    let (a, b, c) = (theta / 2.0, PI / 2.0, PI / 6.0);
    let law_of_cosines = ((c.cos() + a.cos() * b.cos()) / (a.sin() * b.sin())).acosh();

    let g = BlockGeometry::new()?;
    let (i, j) = (0, 1);
    let xij = g.x_pair(i, j)?;
    Ok(KiteLeg {
        law_of_cosines,
        coordinate: mk::distance(&g.x0, &g.x[i]),
        angle_x0: mk::angle(&g.x0, &g.x[i], &g.x[j]),
        angle_xij: mk::angle(&xij, &g.x[i], &g.x0),
        angle_xi: mk::angle(&g.x[i], &g.x0, &xij),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_is_regular() {
        let g = BlockGeometry::new().unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!((g.dihedral(i, j) - PI / 3.0).abs() < 1e-9, "{i}{j}");
            }
        }
        let d = g.distances_to_faces(&g.x0);
        for k in 1..4 {
            assert!((d[k] - d[0]).abs() < 1e-12);
        }
        assert!(d[0] > 0.0);
        assert!((g.face_top_height() - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn x_pair_is_symmetric() {
        let g = BlockGeometry::new().unwrap();
        let a = g.x_pair(0, 1).unwrap();
        let b = g.x_pair(1, 0).unwrap();
        assert!(mk::distance(&a, &b) < 1e-7);
        // On the inscribed circle of F(i): equal distance from x_i and x_j.
        let (di, dj) = (mk::distance(&a, &g.x[0]), mk::distance(&a, &g.x[1]));
        assert!((di - dj).abs() < 1e-9);
    }

    #[test]
    fn kite_leg_two_routes() {
        let k = kite_leg_length().unwrap();
        let target = 2f64.ln() / 2.0;
        assert!((k.law_of_cosines - target).abs() < 1e-9);
        assert!((k.coordinate - target).abs() < 1e-9);
        assert!((k.angle_x0 - (-1.0f64 / 3.0).acos()).abs() < 1e-9);
        assert!((k.angle_xij - PI / 6.0).abs() < 1e-9);
        assert!((k.angle_xi - PI / 2.0).abs() < 1e-9);
    }
}
