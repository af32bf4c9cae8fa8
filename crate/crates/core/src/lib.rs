//! Dynamic graph algorithms with work and adjustment metering.
//!
//! The crate maintains maximal independent sets, unit-capacity maximum flows
//! and maximum cardinality matchings under streams of graph updates. Every
//! structure charges its algorithmic work to a [`CostMeter`], and every
//! structure has a full-rescan auditor plus an independent brute-force
//! oracle in [`oracles`] to check it against.
//!
//! ```
//! use dynamis_core::{parse_stream, SimpleMis, DynGraph, RemovalPolicy};
//! use dynamis_core::oracles::is_mis;
//!
//! let stream = parse_stream("n 3\n+e 0 1\n+e 1 2\n").unwrap();
//! let mut mis = SimpleMis::new(DynGraph::new(3), RemovalPolicy::FirstEndpoint);
//! for ev in &stream.events {
//!     mis.apply(ev).unwrap();
//! }
//! assert!(is_mis(mis.graph(), &mis.members()).ok);
//! // 0 leaves on the first edge, 1 on the second, and 0 comes back
//! assert_eq!(mis.members(), vec![0, 2]);
//! ```

pub mod flow;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod meter;
pub mod mis;
pub mod oracles;
pub mod replay;
pub mod scaling;
pub mod stream;

pub use flow::{FlowDelta, FlowError, FlowNetwork, FullyDynamicFlow, IncrementalFlow};
pub use generators::{Family, GenError, GenSpec};
pub use graph::{DynGraph, GraphError, VertexId};
pub use matching::{FullyDynamicMatching, IncrementalMatching, MatchDelta, MatchError};
pub use meter::{AdjustmentLog, CostMeter};
pub use mis::{ImplicitMis, IncrementalMis, MisError, RemovalPolicy, SimpleMis, TwoLevelMis};
pub use oracles::OracleReport;
pub use replay::{Algorithm, ReplayError, RunReport};
pub use stream::{parse_stream, serialize_stream, ParseError, UpdateEvent, UpdateStream};
