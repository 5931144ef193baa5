//! Exact polygon counts in Davis complexes, compared against the closed-form
//! bounds used in the orbit-point estimate.

pub mod complex;
pub mod flat;
pub mod shells;
pub mod triangle;

pub use complex::{PolyId, PolygonComplex};
pub use cxdim_bounds::{enumerate_itineraries, ItineraryCounts};
pub use flat::{census_flat_hexagons, FlatHexagonCensus, HexCount};
pub use shells::{
    ball_shells, census_s1, census_s2, shells, Fault, PolygonCensus, S1Census, S2Census,
};
pub use triangle::{census_triangle_ball, TriangleBallCensus};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CensusError {
    #[error("shell {shell} needs ball radius {required}, ball has {radius}")]
    Margin { shell: usize, required: usize, radius: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polygon {0} is not in the ball")]
    MissingPolygon(String),
    #[error(transparent)]
    Core(#[from] cxdim_core::CoreError),
    #[error(transparent)]
    Bounds(#[from] cxdim_bounds::BoundError),
}

pub type Result<T> = std::result::Result<T, CensusError>;
