//! Maximal independent set maintenance under graph updates.

pub(crate) mod implicit;
mod incremental;
mod simple;
mod twolevel;

pub use implicit::ImplicitMis;
pub use incremental::IncrementalMis;
pub use simple::{RemovalPolicy, SimpleMis};
pub use twolevel::TwoLevelMis;

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("deletions are not supported by an incremental structure")]
    NotIncremental,
    #[error("unsupported event: {0}")]
    UnsupportedEvent(&'static str),
    #[error("vertex updates with incident edges are not supported")]
    VertexUpdateUnsupported,
}
