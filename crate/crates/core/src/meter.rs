//! Work and adjustment counters shared by every maintained structure.

use serde::Serialize;

use crate::graph::VertexId;

/// Cumulative cost counters.
///
/// `edges_touched` counts adjacency entries read or written by algorithm
/// logic (raw graph mutation is not charged), plus one unit per processed
/// update. `potential` is only maintained by the count-based MIS structures,
/// where it tracks the sum of degrees of vertices outside the set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CostMeter {
    pub edges_touched: u64,
    pub adjustments: u64,
    pub updates: u64,
    pub queries: u64,
    pub potential: i64,
}

impl CostMeter {
    #[inline]
    pub fn touch(&mut self, k: usize) {
        self.edges_touched += k as u64;
    }
}

/// Vertices that left and entered the maintained set during one operation,
/// each in processing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdjustmentLog {
    pub left: Vec<VertexId>,
    pub entered: Vec<VertexId>,
}

impl AdjustmentLog {
    pub fn len(&self) -> usize {
        self.left.len() + self.entered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.entered.is_empty()
    }
}
