//! Spherical link complexes at cap vertices, and the 2-skeleton of the simplex.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{boundary_angle, require, CapKind, HypError, Result, TOL};

/// Third side of the isosceles spherical triangle with legs `theta` and apex angle `alpha`.
pub fn link_sigma(theta: f64, alpha: f64) -> Result<f64> {
    check_link_args(theta, alpha)?;
    let (c, s) = (theta.cos(), theta.sin());
    Ok((c * c + alpha.cos() * s * s).clamp(-1.0, 1.0).acos())
}

/// Same quantity from explicit unit vectors: apex at the north pole, the two
/// other vertices at colatitude `theta` and longitudes `0` and `alpha`.
pub fn link_sigma_by_vectors(theta: f64, alpha: f64) -> Result<f64> {
    check_link_args(theta, alpha)?;
    let b = [theta.sin(), 0.0, theta.cos()];
    let c = [theta.sin() * alpha.cos(), theta.sin() * alpha.sin(), theta.cos()];
    let cross = [b[1] * c[2] - b[2] * c[1], b[2] * c[0] - b[0] * c[2], b[0] * c[1] - b[1] * c[0]];
    let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let cos = b[0] * c[0] + b[1] * c[1] + b[2] * c[2];
    Ok(sin.atan2(cos))
}

fn check_link_args(theta: f64, alpha: f64) -> Result<()> {
    require((PI / 2.0..PI).contains(&theta), || format!("theta {theta} outside [pi/2, pi)"))?;
    require(alpha > 0.0 && alpha <= 2.0 * PI / 3.0 + TOL, || format!("alpha {alpha} outside (0, 2pi/3]"))
}

/// One link complex `L(theta, alpha, n)` checked at a cap vertex.
#[derive(Clone, Debug, Serialize)]
pub struct LinkRow {
    pub case: usize,
    pub cap: CapKind,
    pub n: u32,
    pub theta: f64,
    pub alpha: f64,
    pub sigma: f64,
    /// Length of the boundary loop, `n sigma`.
    pub loop_length: f64,
    pub pass: bool,
}

/// Link test at the cap vertices coming from the triangle group `Δ(p,q,r)`.
///
/// The loop of `n` copies must be longer than `2 pi`. Copy counts: `2r` for
/// `(3,3,r)`; `q` and `r` for `(3,q,r)`; `2p`, `2q`, `2r` otherwise.
pub fn cat1_link_test(labels: (u32, u32, u32), y0: f64) -> Result<Vec<LinkRow>> {
    let mut l = [labels.0, labels.1, labels.2];
    l.sort_unstable();
    let [p, q, r] = l;
    require(p >= 3, || format!("labels must be >= 3, got {l:?}"))?;
    require(y0 > 0.0, || format!("y0 must be positive, got {y0}"))?;
    let (cap, counts) = match (p, q) {
        (3, 3) if r == 3 => {
            return Err(HypError::NotApplicable("(3,3,3) is Euclidean; it carries a horoball, not caps".into()))
        }
        (3, 3) => (CapKind::TriangleSqrt3, vec![2 * r]),
        (3, _) => (CapKind::Hexagon1, vec![q, r]),
        _ => (CapKind::Triangle1, vec![2 * p, 2 * q, 2 * r]),
    };
    let theta = boundary_angle(y0, cap.side())?;
    let alpha = cap.alpha();
    let sigma = link_sigma(theta, alpha)?;
    let mut counts = counts;
    counts.dedup();
    Ok(counts
        .into_iter()
        .map(|n| {
            let loop_length = n as f64 * sigma;
            LinkRow { case: cap.case(), cap, n, theta, alpha, sigma, loop_length, pass: loop_length > 2.0 * PI }
        })
        .collect())
}

/// Numeric checks behind the CAT(1) metric on the 2-skeleton of the
/// `m`-simplex with every edge of length `ell0`.
#[derive(Clone, Debug, Serialize)]
pub struct LmCertificate {
    pub m: usize,
    pub ell0: f64,
    pub edges_at_least_half_pi: bool,
    pub triangle_angle: f64,
    pub triangle_angle_ok: bool,
    pub gram_determinant: f64,
    pub gram_singular: bool,
    pub pass: bool,
}

pub fn lm_flag_check(m: usize) -> Result<LmCertificate> {
    require(m >= 3, || format!("m must be >= 3, got {m}"))?;
    let ell0 = (-1.0f64 / 3.0).acos();
    let (c, s) = (ell0.cos(), ell0.sin());
    let triangle_angle = ((c - c * c) / (s * s)).clamp(-1.0, 1.0).acos();
    let mut gram = [[-1.0 / 3.0; 4]; 4];
    for (k, row) in gram.iter_mut().enumerate() {
        row[k] = 1.0;
    }
    let gram_determinant = det4(gram);
    let edges_at_least_half_pi = ell0 >= PI / 2.0;
    let triangle_angle_ok = (triangle_angle - 2.0 * PI / 3.0).abs() < TOL;
    let gram_singular = gram_determinant.abs() < TOL;
    Ok(LmCertificate {
        m,
        ell0,
        edges_at_least_half_pi,
        triangle_angle,
        triangle_angle_ok,
        gram_determinant,
        gram_singular,
        pass: edges_at_least_half_pi && triangle_angle_ok && gram_singular,
    })
}

fn det4(mut a: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}
