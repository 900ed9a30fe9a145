//! Whitehead graphs over the standard meridian system.

mod algo;
mod analysis;
mod dot;
mod graph;
mod sampled;

pub use analysis::{is_certificate, is_strongly_connected, strong_cutpoints, Connectivity, Cutpoints, Cycle};
pub use dot::{component_dot, to_dot};
pub use graph::{
    standard_meridian_model, whitehead_graph_combinatorial, whitehead_graph_of_word, Component, ComponentKind,
    DiscVertex, LabeledEdge, Side, WhiteheadGraph,
};
pub use sampled::{sample_axes, whitehead_graph_sampled, AxisSampler, MuSpec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WhiteheadError {
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Hyperbolic(#[from] crate::hyperbolic::HyperbolicError),
    #[error("ping-pong disks have not been verified")]
    UnverifiedDisks,
    #[error("endpoints of a sampled axis coincide")]
    DegenerateAxis,
}
