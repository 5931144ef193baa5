//! Caps over horospherical polygons at height `y0`, and the prism gap `D(y0)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{require, Result};

/// The three cap shapes, indexed by the triangle group they come from:
/// `Δ(3,3,r)`, `Δ(3,q,r)` and `Δ(p,q,r)` with `p >= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapKind {
    TriangleSqrt3,
    Hexagon1,
    Triangle1,
}

impl CapKind {
    pub const ALL: [CapKind; 3] = [CapKind::TriangleSqrt3, CapKind::Hexagon1, CapKind::Triangle1];

    /// Case number 1, 2, 3.
    pub fn case(self) -> usize {
        match self {
            CapKind::TriangleSqrt3 => 1,
            CapKind::Hexagon1 => 2,
            CapKind::Triangle1 => 3,
        }
    }

    pub fn sides(self) -> usize {
        match self {
            CapKind::Hexagon1 => 6,
            _ => 3,
        }
    }

    /// Euclidean side length on the horosphere; also the `D` fed to
    /// [`crate::boundary_angle`].
    pub fn side(self) -> f64 {
        match self {
            CapKind::TriangleSqrt3 => 3f64.sqrt(),
            _ => 1.0,
        }
    }

    /// Angle between the two equal sides of the link triangle.
    pub fn alpha(self) -> f64 {
        match self {
            CapKind::Hexagon1 => 2.0 * PI / 3.0,
            _ => PI / 3.0,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "triangle-sqrt3" | "1" => Some(CapKind::TriangleSqrt3),
            "hexagon-1" | "2" => Some(CapKind::Hexagon1),
            "triangle-1" | "3" => Some(CapKind::Triangle1),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CapKind::TriangleSqrt3 => "triangle-sqrt3",
            CapKind::Hexagon1 => "hexagon-1",
            CapKind::Triangle1 => "triangle-1",
        }
    }
}

/// Cap height as stated case by case in the height lemma:
/// `sqrt(y0^2 + 1)`, `sqrt(y0^2 + 1/3)`, `sqrt(y0^2 + 1)`.
pub fn cap_height(kind: CapKind, y0: f64) -> Result<f64> {
    require(y0 > 0.0, || format!("y0 must be positive, got {y0}"))?;
    let g2 = match kind {
        CapKind::Hexagon1 => 1.0 / 3.0,
        _ => 1.0,
    };
    Ok((y0 * y0 + g2).sqrt())
}

/// Cap height from the polygon itself: the hemisphere through the vertices
/// has radius `sqrt(y0^2 + R^2)`, `R` the circumradius.
///
/// For the side-1 hexagon and side-1 triangle this differs from
/// [`cap_height`], which pairs the two circumradii the other way round.
/// The maximum over kinds is `sqrt(y0^2 + 1)` either way.
pub fn geometric_cap_height(kind: CapKind, y0: f64) -> Result<f64> {
    require(y0 > 0.0, || format!("y0 must be positive, got {y0}"))?;
    let r = kind.side() / (2.0 * (PI / kind.sides() as f64).sin());
    Ok(y0.hypot(r))
}

/// `D(y0) = 4 asinh(1 / (4 sqrt3 sqrt(y0^2 + 1)))`.
pub fn prism_gap(y0: f64) -> Result<f64> {
    require(y0 > 0.0, || format!("y0 must be positive, got {y0}"))?;
    Ok(4.0 * (1.0 / (4.0 * 3f64.sqrt() * (y0 * y0 + 1.0).sqrt())).asinh())
}
