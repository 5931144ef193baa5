//! Numerics for the hyperbolic side of the construction: distances in the
//! upper half plane, the regular ideal tetrahedron and its kites, caps over
//! horospherical polygons, spherical link complexes, and the `y0` solver.

pub mod block;
pub mod caps;
pub mod h2;
pub mod links;
pub mod minkowski;
pub mod y0;

pub use block::{kite_leg_length, BlockGeometry, KiteLeg};
pub use caps::{cap_height, geometric_cap_height, prism_gap, CapKind};
pub use h2::{boundary_angle, boundary_angle_by_triangles, dist_h2};
pub use links::{cat1_link_test, link_sigma, link_sigma_by_vectors, lm_flag_check, LinkRow, LmCertificate};
pub use y0::{solve_y0, Y0Case, Y0Report};

/// Default tolerance for closed-form comparisons.
pub const TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum HypError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, HypError>;

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HypError::Domain(msg()))
    }
}
