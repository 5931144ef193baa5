//! Constants and bounds on the conformal dimension of the Bowditch boundary
//! for Coxeter groups on `K_m` with maximal label `M`.

pub mod constants;
pub mod itinerary;
pub mod orbit;
pub mod report;

pub use constants::{
    bourdon_kleiner_upper, constant_a, constant_b, constant_c1, constant_c2, constant_s1, cor_chain, cor_upper,
    dense_set_table, hausdorff_upper, lower_bound, lower_bound_with_v, root_test_log_ratio, CorChain, DenseRow,
    LowerBound, Variant,
};
pub use itinerary::{admissible, closed_form_count, enumerate_itineraries, eq1_count, Constraint, ItineraryCounts, Step};
pub use orbit::{chain_terms, chain_terms_for, log_orbit_bound, ChainTerms};
pub use report::{BoundReport, DEFAULT_Y0};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BoundError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("y0 = {y0} is below the link-condition threshold {threshold} (see the y0 solver)")]
    Infeasible { y0: f64, threshold: f64 },
    #[error(transparent)]
    Hyperbolic(#[from] cxdim_hyperbolic::HypError),
}

pub type Result<T> = std::result::Result<T, BoundError>;

/// `ln C(n, k)`; `-inf` outside `0 <= k <= n`.
pub fn ln_binom(n: i64, k: i64) -> f64 {
    if k < 0 || n < 0 || k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// Exact `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}
