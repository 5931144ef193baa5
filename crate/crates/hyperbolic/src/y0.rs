//! Thresholds on the horoball height `y0` for the cap-vertex link conditions.
//!
//! Write `x = 2 y0 / D` and `y = arctan x`, so that `theta = pi - y`. Then
//! `cos sigma = 1 - (1 - cos alpha) sin^2 y` with `sin^2 y = x^2 / (1 + x^2)`.
//!
//! * `alpha = pi/3`, need `sigma >= pi/4`: `(2 + x^2)/(2 + 2x^2) <= 1/sqrt2`,
//!   i.e. `x >= 2^(1/4)`.
//! * `alpha = 2pi/3`, need `sigma >= pi/2`: `(2 - x^2)/(2 + 2x^2) <= 0`,
//!   i.e. `x >= sqrt2`, so `y0 >= sqrt2 / 2` with `D = 1`.

use serde::Serialize;

use crate::{cat1_link_test, CapKind, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Y0Case {
    pub case: usize,
    pub cap: CapKind,
    /// Smallest labels exercising this case.
    pub labels: (u32, u32, u32),
    pub closed_form: f64,
    pub bisection: f64,
    /// Decimal quoted alongside the derivation.
    pub stated: f64,
    /// Whether the test `y0` clears this case.
    pub pass_at_y0: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Y0Report {
    pub cases: Vec<Y0Case>,
    /// Largest of the case thresholds: every case passes strictly above it.
    pub minimum_feasible: f64,
    pub y0: Option<f64>,
    pub pass_at_y0: Option<bool>,
}

pub fn closed_form_threshold(cap: CapKind) -> f64 {
    let x = match cap {
        CapKind::Hexagon1 => 2f64.sqrt(),
        _ => 2f64.powf(0.25),
    };
    x * cap.side() / 2.0
}

fn representative(cap: CapKind) -> (u32, u32, u32) {
    match cap {
        CapKind::TriangleSqrt3 => (3, 3, 4),
        CapKind::Hexagon1 => (3, 4, 4),
        CapKind::Triangle1 => (4, 4, 4),
    }
}

fn stated(cap: CapKind) -> f64 {
    match cap {
        CapKind::TriangleSqrt3 => 1.0298,
        CapKind::Hexagon1 => 0.86,
        CapKind::Triangle1 => 0.5946,
    }
}

fn passes(labels: (u32, u32, u32), y0: f64) -> Result<bool> {
    Ok(cat1_link_test(labels, y0)?.iter().all(|r| r.pass))
}

/// Bisection on the link test for the given labels.
pub fn bisect_threshold(labels: (u32, u32, u32)) -> Result<f64> {
    let (mut lo, mut hi) = (1e-6, 10.0);
    debug_assert!(!passes(labels, lo)? && passes(labels, hi)?);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if passes(labels, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Per-case thresholds, computed in closed form and by bisection, and the
/// verdict at `y0` if one is given.
pub fn solve_y0(y0: Option<f64>) -> Result<Y0Report> {
    let mut cases = Vec::new();
    for cap in CapKind::ALL {
        let labels = representative(cap);
        let pass_at_y0 = y0.map(|y| passes(labels, y)).transpose()?;
        cases.push(Y0Case {
            case: cap.case(),
            cap,
            labels,
            closed_form: closed_form_threshold(cap),
            bisection: bisect_threshold(labels)?,
            stated: stated(cap),
            pass_at_y0,
        });
    }
    let minimum_feasible = cases.iter().map(|c| c.closed_form).fold(0.0, f64::max);
    let pass_at_y0 = y0.map(|_| cases.iter().all(|c| c.pass_at_y0 == Some(true)));
    Ok(Y0Report { cases, minimum_feasible, y0, pass_at_y0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_bisection() {
        let r = solve_y0(Some(1.5)).unwrap();
        for c in &r.cases {
            assert!((c.closed_form - c.bisection).abs() < 1e-6, "{c:?}");
        }
        assert_eq!(r.pass_at_y0, Some(true));
        assert!((r.cases[0].closed_form - 3f64.sqrt() * 2f64.powf(0.25) / 2.0).abs() < 1e-12);
        assert!((r.cases[1].closed_form - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((r.cases[2].closed_form - 2f64.powf(0.25) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn either_side_of_case_one() {
        assert!(!passes((3, 3, 4), 1.029).unwrap());
        assert!(passes((3, 3, 4), 1.031).unwrap());
        assert!(passes((3, 3, 4), 1.05).unwrap());
    }
}
