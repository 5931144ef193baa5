//! Combinatorics of large-type Coxeter groups whose defining graph is a
//! complete graph, together with finite portions of the Davis complex.
//!
//! Generator indices are 0-based everywhere in the Rust API. Text formats,
//! `Display` impls and JSON use the 1-based labels `1..=m`.

pub mod coxeter;
pub mod davis;
pub mod graph;
pub mod walls;

pub use coxeter::{Ball, CoxeterGroup, GroupElement, Word};

pub use davis::{DavisBall, Edge, FlatKind, PeriodicSubcomplex, Polygon, Wall};
pub use graph::DefiningGraph;
pub use walls::ReflectionTable;


/// Errors raised by the group and complex layers.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("graph parse error: {0}")]
    Parse(String),
    #[error("invalid label m_{{{i},{j}}} = {label}: large type needs every label >= 3")]
    Label { i: usize, j: usize, label: u32 },
    #[error("labels are not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("defining graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("letter {letter} out of range 1..={m}")]
    LetterOutOfRange { letter: usize, m: usize },
    #[error("ball cap of {cap} elements exceeded")]
    BallCap { cap: usize },
    #[error("braid class exceeded {cap} words during rewriting")]
    ClassTooLarge { cap: usize },
    #[error("path is disconnected at step {step}")]
    Disconnected { step: usize },
    #[error("query needs radius {required} but the ball has radius {radius}")]
    Margin { required: usize, radius: usize },
}

pub type Result<T> = std::result::Result<T, CoreError>;
