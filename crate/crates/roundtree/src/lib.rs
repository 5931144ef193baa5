//! Round trees `A_n` inside the Davis complex `X_Γ`: construction by strips
//! glued along outer edge paths, audits of the inductive hypotheses, and the
//! angled-complex certificate for hyperbolicity.

pub mod audit;
pub mod build;
pub mod mutate;
pub mod systolic;
pub mod topology;

pub use audit::{audit_inductive_hypotheses, Check, MeetCounts, RoundTreeReport, StageAudit};
pub use build::{build_round_tree, Branch, RoundTree, RoundTreeStage, Strip, StripPolygon};
pub use mutate::Mutation;
pub use systolic::{check_strictly_systolic, SystolicCertificate};

use cxdim_bounds::LowerBound;

#[derive(Debug, thiserror::Error)]
pub enum RoundTreeError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("construction failed at stage {stage}, vertex {vertex}: {reason}")]
    Construction { stage: usize, vertex: String, reason: String },
    #[error(transparent)]
    Core(#[from] cxdim_core::CoreError),
    #[error(transparent)]
    Bounds(#[from] cxdim_bounds::BoundError),
}

pub type Result<T> = std::result::Result<T, RoundTreeError>;

/// `1 + log V / log H` with `H = 2M - 1`; `V` defaults to `⌊(m - 5)/3⌋`.
pub fn lower_bound(m: u64, big_m: u64, v: Option<u64>) -> Result<LowerBound> {
    Ok(match v {
        Some(v) => cxdim_bounds::lower_bound_with_v(m, big_m, v)?,
        None => cxdim_bounds::lower_bound(m, big_m)?,
    })
}
