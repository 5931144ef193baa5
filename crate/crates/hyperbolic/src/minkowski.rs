//! Hyperboloid model of H^3 in R^{1,3}, with conversions from upper half space.

pub type V4 = [f64; 4];

/// Minkowski form `-x0 y0 + x1 y1 + x2 y2 + x3 y3`.
pub fn dot(a: &V4, b: &V4) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub fn scale(a: &V4, t: f64) -> V4 {
    [a[0] * t, a[1] * t, a[2] * t, a[3] * t]
}

pub fn add(a: &V4, b: &V4) -> V4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Point of upper half space `(w1, w2, w3)`, `w3 > 0`.
pub fn from_upper(w: [f64; 3]) -> V4 {
    let s = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    [(1.0 + s) / (2.0 * w[2]), w[0] / w[2], w[1] / w[2], (s - 1.0) / (2.0 * w[2])]
}

pub fn to_upper(p: &V4) -> [f64; 3] {
    let w3 = 1.0 / (p[0] - p[3]);
    [p[1] * w3, p[2] * w3, w3]
}

/// Null vector representing the ideal point `(x, y, 0)`.
pub fn ideal(x: f64, y: f64) -> V4 {
    let s = x * x + y * y;
    [(1.0 + s) / 2.0, x, y, (s - 1.0) / 2.0]
}

pub const IDEAL_INFINITY: V4 = [1.0, 0.0, 0.0, 1.0];

/// Rescale a timelike vector onto the upper sheet.
pub fn normalize_point(p: &V4) -> V4 {
    let n = (-dot(p, p)).sqrt();
    scale(p, p[0].signum() / n)
}

/// Rescale a spacelike vector to unit length.
pub fn normalize_space(n: &V4) -> V4 {
    scale(n, 1.0 / dot(n, n).sqrt())
}

pub fn distance(p: &V4, q: &V4) -> f64 {
    (-dot(p, q)).max(1.0).acosh()
}

/// Unit spacelike normal of the plane spanned by three vectors.
pub fn plane_normal(a: &V4, b: &V4, c: &V4) -> V4 {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let m = |r: &V4, k: usize| r[cols[k]];
        m(a, 0) * (m(b, 1) * m(c, 2) - m(b, 2) * m(c, 1)) - m(a, 1) * (m(b, 0) * m(c, 2) - m(b, 2) * m(c, 0))
            + m(a, 2) * (m(b, 0) * m(c, 1) - m(b, 1) * m(c, 0))
    };
    // Euclidean-orthogonal vector, then flip the time coordinate.
    let e = [-minor(0), minor(1), -minor(2), minor(3)];
    normalize_space(&[-e[0], e[1], e[2], e[3]])
}

/// Signed `sinh` of the distance from `p` to the plane with unit normal `n`.
pub fn signed_sinh_dist(p: &V4, n: &V4) -> f64 {
    dot(p, n)
}

/// Foot of the perpendicular from `p` to the plane with unit normal `n`.
pub fn project(p: &V4, n: &V4) -> V4 {
    normalize_point(&add(p, &scale(n, -dot(p, n))))
}

/// Unit tangent at `p` pointing towards `q`.
pub fn tangent(p: &V4, q: &V4) -> V4 {
    normalize_space(&add(q, &scale(p, dot(p, q))))
}

/// Angle at `p` between the geodesics to `q` and `r`.
pub fn angle(p: &V4, q: &V4, r: &V4) -> f64 {
    dot(&tangent(p, q), &tangent(p, r)).clamp(-1.0, 1.0).acos()
}

/// Point where the geodesic between ideal points `u`, `v` meets the plane `n`.
pub fn ideal_line_meets_plane(u: &V4, v: &V4, n: &V4) -> Option<V4> {
    let (a, b) = (dot(u, n), dot(v, n));
    if a * b >= 0.0 {
        return None;
    }
    // alpha a + beta b = 0 with alpha, beta > 0
    let p = add(&scale(u, b.abs()), &scale(v, a.abs()));
    Some(normalize_point(&p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_distance() {
        let w = [0.3, -0.2, 1.7];
        let p = from_upper(w);
        assert!((dot(&p, &p) + 1.0).abs() < 1e-12);
        let back = to_upper(&p);
        for k in 0..3 {
            assert!((back[k] - w[k]).abs() < 1e-12);
        }
        let q = from_upper([0.3, -0.2, 3.4]);
        assert!((distance(&p, &q) - 2f64.ln()).abs() < 1e-12);
        assert!(dot(&ideal(0.4, 0.1), &ideal(0.4, 0.1)).abs() < 1e-15);
    }

    #[test]
    fn normal_is_orthogonal() {
        let (a, b, c) = (ideal(0.0, 0.0), ideal(1.0, 0.0), IDEAL_INFINITY);
        let n = plane_normal(&a, &b, &c);
        for v in [a, b, c] {
            assert!(dot(&v, &n).abs() < 1e-12);
        }
        assert!((dot(&n, &n) - 1.0).abs() < 1e-12);
    }
}
