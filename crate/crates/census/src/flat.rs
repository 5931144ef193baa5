//! Hexagons of a flat near a given one, in the horosphere picture: a
//! hexagonal tiling of side `y/√2` and a disk of radius `2√2 y e^{ℓ/2}`
//! about the centre of `H`.

use serde::Serialize;

use crate::{CensusError, Result};

/// `32π / (3√3)`: disk area over hexagon area at `ℓ = 0`.
pub fn b0() -> f64 {
    32.0 * std::f64::consts::PI / (3.0 * 3f64.sqrt())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HexCount {
    pub count: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatHexagonCensus {
    pub ell: u32,
    pub y: f64,
    pub bound: f64,
    /// Hexagons whose centre lies in the disk.
    pub centres: HexCount,
    /// Hexagons lying entirely in the disk.
    pub contained: HexCount,
}

pub fn census_flat_hexagons(ell: u32, y: f64) -> Result<FlatHexagonCensus> {
    if !(1..=6).contains(&ell) {
        return Err(CensusError::Domain(format!("ell = {ell} outside 1..=6")));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(CensusError::Domain(format!("y = {y} must be positive")));
    }
    let side = y / 2f64.sqrt();
    let radius = 2.0 * 2f64.sqrt() * y * (ell as f64 / 2.0).exp();
    let spacing = 3f64.sqrt() * side;
    let span = (radius / (spacing * 0.8)).ceil() as i64 + 2;
    let corners: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let t = std::f64::consts::FRAC_PI_6 + k as f64 * std::f64::consts::FRAC_PI_3;
            (side * t.cos(), side * t.sin())
        })
        .collect();
    let (mut centres, mut contained) = (0, 0);
    for a in -span..=span {
        for b in -span..=span {
            let cx = spacing * (a as f64 + b as f64 / 2.0);
            let cy = spacing * b as f64 * 3f64.sqrt() / 2.0;
            if cx.hypot(cy) <= radius {
                centres += 1;
            }
            if corners.iter().all(|(dx, dy)| (cx + dx).hypot(cy + dy) <= radius) {
                contained += 1;
            }
        }
    }
    let bound = b0() * (ell as f64).exp();
    Ok(FlatHexagonCensus {
        ell,
        y,
        bound,
        centres: HexCount { count: centres, pass: centres as f64 <= bound },
        contained: HexCount { count: contained, pass: contained as f64 <= bound },
    })
}
