//! Count-based fully dynamic MIS.
//!
//! Every vertex keeps `count(v) = |N(v) ∩ M|`. A vertex enters `M` exactly
//! when its count is zero and leaves only when an inserted edge joins two
//! members (or when it is deleted), so at most one vertex leaves per update.

use serde::Serialize;

use super::MisError;
use crate::graph::{DynGraph, VertexId};
use crate::meter::{AdjustmentLog, CostMeter};
use crate::stream::UpdateEvent;

/// Which endpoint leaves `M` when an inserted edge joins two members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RemovalPolicy {
    /// The endpoint listed first in the event.
    FirstEndpoint,
    HigherId,
    /// Strictly lower degree (after insertion) leaves; ties evict the higher id.
    LowerDegree,
}

impl RemovalPolicy {
    fn victim(self, g: &DynGraph, u: VertexId, v: VertexId) -> VertexId {
        match self {
            RemovalPolicy::FirstEndpoint => u,
            RemovalPolicy::HigherId => u.max(v),
            RemovalPolicy::LowerDegree => match g.degree(u).cmp(&g.degree(v)) {
                std::cmp::Ordering::Less => u,
                std::cmp::Ordering::Greater => v,
                std::cmp::Ordering::Equal => u.max(v),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimpleMis {
    g: DynGraph,
    in_mis: Vec<bool>,
    count: Vec<usize>,
    policy: RemovalPolicy,
    meter: CostMeter,
}

impl SimpleMis {
    /// Greedy initialization in ascending id order.
    pub fn new(g: DynGraph, policy: RemovalPolicy) -> Self {
        let bound = g.id_bound();
        let potential = g.vertices().map(|v| g.degree(v) as i64).sum();
        let mut s = SimpleMis {
            g,
            in_mis: vec![false; bound],
            count: vec![0; bound],
            policy,
            meter: CostMeter {
                potential,
                ..CostMeter::default()
            },
        };
        let order: Vec<_> = s.g.vertices().collect();
        for v in order {
            if s.count[v] == 0 {
                s.enter(v);
            }
        }
        // the initial build is not an adjustment of a previous solution
        s.meter.adjustments = 0;
        s
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn policy(&self) -> RemovalPolicy {
        self.policy
    }

    pub fn in_mis(&self, v: VertexId) -> bool {
        self.in_mis.get(v).copied().unwrap_or(false)
    }

    pub fn count(&self, v: VertexId) -> usize {
        self.count[v]
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.g.vertices().filter(|&v| self.in_mis[v]).collect()
    }

    fn not_in(&self, v: VertexId) -> i64 {
        i64::from(!self.in_mis[v])
    }

    fn enter(&mut self, v: VertexId) {
        self.in_mis[v] = true;
        self.meter.adjustments += 1;
        let deg = self.g.degree(v);
        self.meter.potential -= deg as i64;
        self.meter.touch(deg);
        for w in self.g.neighbors(v) {
            self.count[w] += 1;
        }
    }

    /// Removes `v` from `M`, pushing neighbors whose count dropped to zero.
    fn leave(&mut self, v: VertexId, candidates: &mut Vec<VertexId>) {
        self.in_mis[v] = false;
        self.meter.adjustments += 1;
        let deg = self.g.degree(v);
        self.meter.potential += deg as i64;
        self.meter.touch(deg);
        for w in self.g.neighbors(v) {
            self.count[w] -= 1;
            if self.count[w] == 0 && !self.in_mis[w] {
                candidates.push(w);
            }
        }
    }

    fn admit(&mut self, mut candidates: Vec<VertexId>, log: &mut AdjustmentLog) {
        candidates.sort_unstable();
        candidates.dedup();
        for w in candidates {
            if self.g.is_live(w) && !self.in_mis[w] && self.count[w] == 0 {
                self.enter(w);
                log.entered.push(w);
            }
        }
    }

    fn grow(&mut self) {
        let bound = self.g.id_bound();
        self.in_mis.resize(bound, false);
        self.count.resize(bound, 0);
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<AdjustmentLog, MisError> {
        let mut log = AdjustmentLog::default();
        let mut candidates = Vec::new();
        match *event {
            UpdateEvent::InsertEdge(u, v) => {
                self.g.insert_edge(u, v)?;
                self.meter.touch(1);
                self.meter.potential += self.not_in(u) + self.not_in(v);
                if self.in_mis[u] {
                    self.count[v] += 1;
                }
                if self.in_mis[v] {
                    self.count[u] += 1;
                }
                if self.in_mis[u] && self.in_mis[v] {
                    let victim = self.policy.victim(&self.g, u, v);
                    self.leave(victim, &mut candidates);
                    log.left.push(victim);
                }
            }
            UpdateEvent::DeleteEdge(u, v) => {
                self.g.delete_edge(u, v)?;
                self.meter.touch(1);
                self.meter.potential -= self.not_in(u) + self.not_in(v);
                for (a, b) in [(u, v), (v, u)] {
                    if self.in_mis[a] {
                        self.count[b] -= 1;
                        if self.count[b] == 0 {
                            candidates.push(b);
                        }
                    }
                }
            }
            UpdateEvent::InsertVertex(ref neighbors) => {
                let v = self.g.insert_vertex(neighbors)?;
                self.grow();
                self.meter.touch(1 + neighbors.len());
                let outside = neighbors.iter().filter(|&&w| !self.in_mis[w]).count();
                self.meter.potential += (neighbors.len() + outside) as i64;
                self.count[v] = neighbors.iter().filter(|&&w| self.in_mis[w]).count();
                if self.count[v] == 0 {
                    candidates.push(v);
                }
            }
            UpdateEvent::DeleteVertex(v) => {
                if !self.g.is_live(v) {
                    return Err(crate::graph::GraphError::UnknownVertex(v).into());
                }
                self.meter.touch(1);
                if self.in_mis[v] {
                    self.leave(v, &mut candidates);
                    log.left.push(v);
                }
                let former = self.g.delete_vertex(v)?;
                let outside = former.iter().filter(|&&w| !self.in_mis[w]).count();
                self.meter.potential -= (former.len() + outside) as i64;
                self.count[v] = 0;
            }
            UpdateEvent::QueryInMis(_) => return Err(MisError::UnsupportedEvent("query")),
        }
        self.admit(candidates, &mut log);
        self.meter.updates += 1;
        Ok(log)
    }

    /// Full rescan of independence, maximality, count exactness and the
    /// potential.
    pub fn audit(&self) -> Result<(), String> {
        let mut phi = 0i64;
        for v in self.g.vertices() {
            let c = self.g.neighbors(v).filter(|&w| self.in_mis[w]).count();
            if c != self.count[v] {
                return Err(format!(
                    "count({v}) = {} but {c} neighbors in M",
                    self.count[v]
                ));
            }
            if self.in_mis[v] && c != 0 {
                return Err(format!("member {v} has a neighbor in M"));
            }
            if !self.in_mis[v] {
                if c == 0 {
                    return Err(format!("vertex {v} outside M has no neighbor in M"));
                }
                phi += self.g.degree(v) as i64;
            }
        }
        if phi != self.meter.potential {
            return Err(format!(
                "potential {} != recomputed {phi}",
                self.meter.potential
            ));
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }

    #[cfg(test)]
    pub(crate) fn force_membership(&mut self, v: VertexId, member: bool) {
        self.in_mis[v] = member;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::is_mis;
    use UpdateEvent::*;

    fn build(n: usize, edges: &[(usize, usize)], policy: RemovalPolicy) -> SimpleMis {
        SimpleMis::new(DynGraph::from_edges(n, edges).unwrap(), policy)
    }

    #[test]
    fn init_examples() {
        let tri = build(3, &[(0, 1), (1, 2), (0, 2)], RemovalPolicy::HigherId);
        assert_eq!(tri.members(), vec![0]);
        let path = build(3, &[(0, 1), (1, 2)], RemovalPolicy::HigherId);
        assert_eq!(path.members(), vec![0, 2]);
        let empty = build(5, &[], RemovalPolicy::HigherId);
        assert_eq!(empty.members(), vec![0, 1, 2, 3, 4]);
        assert!(tri.verify() && path.verify() && empty.verify());
        assert_eq!(tri.meter().adjustments, 0);
    }

    #[test]
    fn closing_path_into_triangle_evicts_higher_id() {
        let mut s = build(3, &[(0, 1), (1, 2)], RemovalPolicy::HigherId);
        let log = s.apply(&InsertEdge(0, 2)).unwrap();
        assert_eq!(log.left, vec![2]);
        assert!(log.entered.is_empty());
        assert_eq!(s.count(1), 1);
        assert_eq!(s.members(), vec![0]);
        assert!(is_mis(s.graph(), &s.members()).ok);
        assert!(s.verify());
    }

    #[test]
    fn deleting_star_center_admits_leaves() {
        let mut s = build(4, &[(0, 1), (0, 2), (0, 3)], RemovalPolicy::HigherId);
        assert_eq!(s.members(), vec![0]);
        let log = s.apply(&DeleteVertex(0)).unwrap();
        assert_eq!(log.left, vec![0]);
        assert_eq!(log.entered, vec![1, 2, 3]);
        assert_eq!(s.members(), vec![1, 2, 3]);
        assert!(s.verify());
    }

    #[test]
    fn deleting_edge_to_covered_vertex_is_silent() {
        let mut s = build(3, &[(0, 1), (1, 2)], RemovalPolicy::HigherId);
        assert_eq!(s.count(1), 2);
        let log = s.apply(&DeleteEdge(0, 1)).unwrap();
        assert!(log.is_empty());
        assert_eq!(s.count(1), 1);
        assert!(is_mis(s.graph(), &s.members()).ok);
    }

    #[test]
    fn first_endpoint_policy_follows_listing_order() {
        let mut s = build(2, &[], RemovalPolicy::FirstEndpoint);
        let log = s.apply(&InsertEdge(0, 1)).unwrap();
        assert_eq!(log.left, vec![0]);
        let mut s = build(2, &[], RemovalPolicy::FirstEndpoint);
        let log = s.apply(&InsertEdge(1, 0)).unwrap();
        assert_eq!(log.left, vec![1]);
    }

    #[test]
    fn vertex_insertion_joins_only_when_uncovered() {
        let mut s = build(2, &[(0, 1)], RemovalPolicy::HigherId);
        let log = s.apply(&InsertVertex(vec![0])).unwrap();
        assert!(log.is_empty());
        let log = s.apply(&InsertVertex(vec![1])).unwrap();
        assert_eq!(log.entered, vec![3]);
        assert!(s.verify());
    }

    #[test]
    fn verify_rejects_corruption() {
        let mut s = build(3, &[(0, 1), (1, 2)], RemovalPolicy::HigherId);
        s.force_membership(1, true);
        assert!(!s.verify());

        let mut s = build(3, &[(0, 1), (1, 2)], RemovalPolicy::HigherId);
        s.force_membership(2, false);
        s.count[2] = 0;
        assert!(!s.verify());
    }

    #[test]
    fn errors_leave_state_untouched() {
        let mut s = build(2, &[(0, 1)], RemovalPolicy::HigherId);
        assert!(s.apply(&InsertEdge(0, 1)).is_err());
        assert!(s.apply(&DeleteVertex(9)).is_err());
        assert!(s.apply(&QueryInMis(0)).is_err());
        assert!(s.verify());
        assert_eq!(s.meter().updates, 0);
    }
}
