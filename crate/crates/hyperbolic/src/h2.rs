//! The upper half plane.

use std::f64::consts::PI;

use crate::{require, Result};

/// Hyperbolic distance between `z = (x, y)` and `w`, both with `y > 0`.
///
/// `sinh(d/2) = |z - w| / (2 sqrt(Im z Im w))`.
pub fn dist_h2(z: (f64, f64), w: (f64, f64)) -> Result<f64> {
    require(z.1 > 0.0 && w.1 > 0.0, || format!("heights must be positive, got {} and {}", z.1, w.1))?;
    let e = (z.0 - w.0).hypot(z.1 - w.1);
    Ok(2.0 * (e / (2.0 * (z.1 * w.1).sqrt())).asinh())
}

/// Angle at `ih` between the downward vertical ray and the geodesic to `D + ih`.
pub fn boundary_angle(h: f64, d: f64) -> Result<f64> {
    require(h > 0.0 && d > 0.0, || format!("h and D must be positive, got {h}, {d}"))?;
    Ok(PI - (2.0 * h / d).atan())
}

/// The same angle read off finite triangles `(ih, D + ih, i t)` with `t -> 0`.
///
/// The vertical segment from `ih` down to `it` lies on the ray for every
/// `t < h`, so the law of cosines is exact up to rounding at each `t`; the
/// returned value is taken at the smallest `t` after checking the sequence
/// has settled.
pub fn boundary_angle_by_triangles(h: f64, d: f64) -> Result<f64> {
    require(h > 0.0 && d > 0.0, || format!("h and D must be positive, got {h}, {d}"))?;
    let p = (0.0, h);
    let q = (d, h);
    let mut last = f64::NAN;
    for k in 1..=6 {
        let t = h * 0.5f64.powi(k);
        let r = (0.0, t);
        let a = dist_h2(p, q)?;
        let b = dist_h2(p, r)?;
        let c = dist_h2(q, r)?;
        let cos = (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh());
        last = cos.clamp(-1.0, 1.0).acos();
    }
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertical_distance() {
        let d = dist_h2((0.0, 1.0), (0.0, 2.0)).unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-12);
        assert_eq!(dist_h2((0.3, 0.7), (0.3, 0.7)).unwrap(), 0.0);
        let d = dist_h2((0.0, 1.0), (1.0, 1.0)).unwrap();
        assert!((d - 2.0 * 0.5f64.asinh()).abs() < 1e-12);
        assert!(dist_h2((0.0, 0.0), (0.0, 1.0)).is_err());
    }

    #[test]
    fn angle_examples() {
        assert!((boundary_angle(1.0, 2.0).unwrap() - 3.0 * PI / 4.0).abs() < 1e-12);
        assert!((boundary_angle(1.5, 3f64.sqrt()).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!(boundary_angle(1e9, 1.0).unwrap() > PI / 2.0);
        assert!(boundary_angle(-1.0, 1.0).is_err());
    }

    #[test]
    fn triangle_oracle_agrees() {
        for &(h, d) in &[(0.5, 1.0), (1.5, 3f64.sqrt()), (3.0, 0.2), (0.1, 4.0)] {
            let a = boundary_angle(h, d).unwrap();
            let b = boundary_angle_by_triangles(h, d).unwrap();
            assert!((a - b).abs() < 1e-9, "{h} {d}: {a} vs {b}");
        }
    }
}
