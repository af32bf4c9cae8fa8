//! Unit-capacity s–t maximum flow under edge updates.
//!
//! [`FullyDynamicFlow`] handles insertions and deletions with at most one
//! residual search per update. [`IncrementalFlow`] handles insertions only
//! and keeps a reachability tree from `s` in the residual graph, so each
//! stage (interval between two augmentations) scans every residual arc O(1)
//! times.

use std::collections::{HashMap, VecDeque};

use indexmap::IndexSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::VertexId;
use crate::meter::CostMeter;
use crate::oracles::OracleReport;
use crate::stream::UpdateEvent;

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}->{1} already present")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge {0}->{1} not present")]
    MissingEdge(VertexId, VertexId),
    #[error("source and sink must differ (both {0})")]
    InvalidTerminals(VertexId),
    #[error("deletions are not supported by the incremental structure")]
    NotIncremental,
    #[error("unsupported event: {0}")]
    UnsupportedEvent(&'static str),
}

/// Outcome of one flow update.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FlowDelta {
    /// Change of the flow value: +1, 0 or -1.
    pub delta: i64,
    /// Vertex sequence of the residual path whose arcs were toggled, if any.
    pub path: Option<Vec<VertexId>>,
}

/// A residual arc: a real edge in its current orientation, or the auxiliary
/// s→t arc used while cancelling a unit of flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arc {
    Real(EdgeId),
    Aux,
}

/// Directed unit-capacity network with flow flags and materialized
/// residual out-lists.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    s: VertexId,
    t: VertexId,
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
    flow: Vec<bool>,
    alive: Vec<bool>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
    /// edges whose residual arc currently leaves each vertex
    res_out: Vec<IndexSet<EdgeId>>,
    value: usize,
    m: usize,
}

impl FlowNetwork {
    pub fn new(n: usize, s: VertexId, t: VertexId) -> Result<Self, FlowError> {
        if s == t {
            return Err(FlowError::InvalidTerminals(s));
        }
        let n = n.max(s + 1).max(t + 1);
        Ok(FlowNetwork {
            n,
            s,
            t,
            tail: Vec::new(),
            head: Vec::new(),
            flow: Vec::new(),
            alive: Vec::new(),
            index: HashMap::new(),
            res_out: vec![IndexSet::new(); n],
            value: 0,
            m: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn source(&self) -> VertexId {
        self.s
    }

    pub fn sink(&self) -> VertexId {
        self.t
    }

    /// Current flow value F.
    pub fn value(&self) -> usize {
        self.value
    }

    /// Live edges as (tail, head) pairs in insertion order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.tail.len())
            .filter(|&e| self.alive[e])
            .map(|e| (self.tail[e], self.head[e]))
            .collect()
    }

    pub fn has_flow(&self, u: VertexId, v: VertexId) -> Option<bool> {
        self.index.get(&(u, v)).map(|&e| self.flow[e])
    }

    fn res_tail(&self, e: EdgeId) -> VertexId {
        if self.flow[e] {
            self.head[e]
        } else {
            self.tail[e]
        }
    }

    fn res_head(&self, e: EdgeId) -> VertexId {
        if self.flow[e] {
            self.tail[e]
        } else {
            self.head[e]
        }
    }

    fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, FlowError> {
        if u == v {
            return Err(FlowError::SelfLoop(u));
        }
        if self.index.contains_key(&(u, v)) {
            return Err(FlowError::ParallelEdge(u, v));
        }
        let top = u.max(v) + 1;
        if top > self.n {
            self.n = top;
            self.res_out.resize_with(top, IndexSet::new);
        }
        let e = self.tail.len();
        self.tail.push(u);
        self.head.push(v);
        self.flow.push(false);
        self.alive.push(true);
        self.index.insert((u, v), e);
        self.res_out[u].insert(e);
        self.m += 1;
        Ok(e)
    }

    fn remove_edge(&mut self, e: EdgeId) {
        let x = self.res_tail(e);
        self.res_out[x].swap_remove(&e);
        self.index.remove(&(self.tail[e], self.head[e]));
        self.alive[e] = false;
        self.m -= 1;
    }

    fn toggle(&mut self, e: EdgeId) {
        let x = self.res_tail(e);
        self.res_out[x].swap_remove(&e);
        self.flow[e] = !self.flow[e];
        let y = self.res_tail(e);
        self.res_out[y].insert(e);
    }

    /// Breadth-first residual search from `from` to `to`, expanding arcs in
    /// ascending head id (edge id breaks ties). With `aux`, the residual
    /// graph additionally holds an s→t arc.
    fn search(
        &self,
        from: VertexId,
        to: VertexId,
        aux: bool,
        meter: &mut CostMeter,
    ) -> Option<Vec<Arc>> {
        let mut via: Vec<Option<(VertexId, Arc)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            let mut arcs: Vec<(VertexId, usize, Arc)> = self.res_out[x]
                .iter()
                .map(|&e| (self.res_head(e), e, Arc::Real(e)))
                .collect();
            if aux && x == self.s {
                arcs.push((self.t, usize::MAX, Arc::Aux));
            }
            meter.touch(arcs.len());
            arcs.sort_unstable_by_key(|&(y, e, _)| (y, e));
            for (y, _, a) in arcs {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, a));
                    queue.push_back(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut y = to;
        while y != from {
            let (x, a) = via[y].expect("reached vertex has a parent");
            path.push(a);
            y = x;
        }
        path.reverse();
        Some(path)
    }

    /// Toggles every real arc of `path` (which starts at `from`) and returns
    /// its vertex sequence.
    fn apply_path(&mut self, from: VertexId, path: &[Arc]) -> Vec<VertexId> {
        let mut vs = vec![from];
        for &a in path {
            match a {
                Arc::Real(e) => {
                    vs.push(self.res_head(e));
                    self.toggle(e);
                }
                Arc::Aux => vs.push(self.t),
            }
        }
        vs
    }

    /// Capacity, conservation, value consistency, residual-list consistency
    /// and maximality (no s→t residual path), by full rescan.
    pub fn audit(&self) -> Result<(), String> {
        let mut balance = vec![0i64; self.n];
        for e in 0..self.tail.len() {
            if !self.alive[e] {
                continue;
            }
            if !self.res_out[self.res_tail(e)].contains(&e) {
                return Err(format!("residual list misses edge {e}"));
            }
            if self.flow[e] {
                balance[self.tail[e]] -= 1;
                balance[self.head[e]] += 1;
            }
        }
        let listed: usize = self.res_out.iter().map(|l| l.len()).sum();
        if listed != self.m {
            return Err(format!("{listed} residual arcs for {} edges", self.m));
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != self.s && v != self.t && b != 0 {
                return Err(format!("conservation violated at {v} (net inflow {b})"));
            }
        }
        if -balance[self.s] != self.value as i64 || balance[self.t] != self.value as i64 {
            return Err(format!(
                "value {} but source net outflow {} and sink net inflow {}",
                self.value, -balance[self.s], balance[self.t]
            ));
        }
        if self
            .search(self.s, self.t, false, &mut CostMeter::default())
            .is_some()
        {
            return Err("an augmenting s-t path remains".into());
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn set_flow_unchecked(&mut self, u: VertexId, v: VertexId, on: bool) {
        let e = self.index[&(u, v)];
        if self.flow[e] != on {
            self.toggle(e);
        }
    }

    #[cfg(test)]
    pub(crate) fn set_value_unchecked(&mut self, value: usize) {
        self.value = value;
    }
}

/// True iff the network carries a valid maximum flow.
pub fn flow_verify(net: &FlowNetwork) -> bool {
    net.audit().is_ok()
}

/// Compares the maintained value against a from-scratch max-flow run.
pub fn flow_oracle_check(net: &FlowNetwork) -> OracleReport {
    let want = crate::oracles::static_max_flow(net.n(), net.source(), net.sink(), &net.edges());
    if want == net.value() {
        OracleReport::pass()
    } else {
        OracleReport::fail(format!("flow value {} but maximum is {want}", net.value()))
    }
}

/// Folklore fully dynamic flow: one residual search per update.
#[derive(Debug, Clone)]
pub struct FullyDynamicFlow {
    net: FlowNetwork,
    meter: CostMeter,
}

impl FullyDynamicFlow {
    pub fn new(n: usize, s: VertexId, t: VertexId) -> Result<Self, FlowError> {
        Ok(FullyDynamicFlow {
            net: FlowNetwork::new(n, s, t)?,
            meter: CostMeter::default(),
        })
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.net
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn value(&self) -> usize {
        self.net.value
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<FlowDelta, FlowError> {
        self.net.add_edge(u, v)?;
        self.meter.touch(1);
        self.meter.updates += 1;
        let (s, t) = (self.net.s, self.net.t);
        match self.net.search(s, t, false, &mut self.meter) {
            Some(path) => {
                self.meter.adjustments += path.len() as u64;
                let vs = self.net.apply_path(s, &path);
                self.net.value += 1;
                Ok(FlowDelta {
                    delta: 1,
                    path: Some(vs),
                })
            }
            None => Ok(FlowDelta::default()),
        }
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<FlowDelta, FlowError> {
        let e = *self
            .net
            .index
            .get(&(u, v))
            .ok_or(FlowError::MissingEdge(u, v))?;
        self.meter.touch(1);
        self.meter.updates += 1;
        let carried = self.net.flow[e];
        self.net.remove_edge(e);
        if !carried {
            return Ok(FlowDelta::default());
        }
        self.meter.adjustments += 1;
        // u now has one unit too many and v one too few: push it u→v,
        // falling back to an s→t arc that cancels one unit of value
        if let Some(path) = self.net.search(u, v, false, &mut self.meter) {
            self.meter.adjustments += path.len() as u64;
            let vs = self.net.apply_path(u, &path);
            return Ok(FlowDelta {
                delta: 0,
                path: Some(vs),
            });
        }
        let path = self
            .net
            .search(u, v, true, &mut self.meter)
            .expect("a u-v path through the auxiliary arc always exists");
        self.meter.adjustments += path.len() as u64 - 1;
        let vs = self.net.apply_path(u, &path);
        self.net.value -= 1;
        Ok(FlowDelta {
            delta: -1,
            path: Some(vs),
        })
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<FlowDelta, FlowError> {
        match *event {
            UpdateEvent::InsertEdge(u, v) => self.insert_edge(u, v),
            UpdateEvent::DeleteEdge(u, v) => self.delete_edge(u, v),
            _ => Err(FlowError::UnsupportedEvent(
                "flow streams carry edge events only",
            )),
        }
    }

    pub fn verify(&self) -> bool {
        flow_verify(&self.net)
    }
}

/// Vertices reachable from `s` in the residual graph, with the arc that
/// first reached each of them.
#[derive(Debug, Clone, Default)]
pub struct ReachTree {
    parent: Vec<Option<EdgeId>>,
    in_tree: Vec<bool>,
}

impl ReachTree {
    pub fn contains(&self, v: VertexId) -> bool {
        self.in_tree.get(v).copied().unwrap_or(false)
    }

    fn grow(&mut self, n: usize) {
        self.parent.resize(n, None);
        self.in_tree.resize(n, false);
    }
}

/// Work spent by the reachability tree during one stage, with the edge
/// count when the stage closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageWork {
    pub touched: u64,
    pub m_at_end: usize,
}

/// Insertion-only flow with a reachability tree rebuilt at every
/// augmentation.
#[derive(Debug, Clone)]
pub struct IncrementalFlow {
    net: FlowNetwork,
    tree: ReachTree,
    meter: CostMeter,
    stage_touched: u64,
    stages: Vec<StageWork>,
}

impl IncrementalFlow {
    pub fn new(n: usize, s: VertexId, t: VertexId) -> Result<Self, FlowError> {
        let mut f = IncrementalFlow {
            net: FlowNetwork::new(n, s, t)?,
            tree: ReachTree::default(),
            meter: CostMeter::default(),
            stage_touched: 0,
            stages: Vec::new(),
        };
        f.rebuild();
        Ok(f)
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.net
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn value(&self) -> usize {
        self.net.value
    }

    pub fn tree(&self) -> &ReachTree {
        &self.tree
    }

    /// Closed stages followed by the stage in progress.
    pub fn stages(&self) -> Vec<StageWork> {
        let mut all = self.stages.clone();
        all.push(StageWork {
            touched: self.stage_touched,
            m_at_end: self.net.m,
        });
        all
    }

    fn charge(&mut self, k: usize) {
        self.meter.touch(k);
        self.stage_touched += k as u64;
    }

    fn explore(&mut self, from: VertexId) {
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            let arcs: Vec<EdgeId> = self.net.res_out[x].iter().copied().collect();
            self.charge(arcs.len());
            for e in arcs {
                let y = self.net.res_head(e);
                if !self.tree.in_tree[y] {
                    self.tree.in_tree[y] = true;
                    self.tree.parent[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
    }

    fn rebuild(&mut self) {
        self.tree.parent.clear();
        self.tree.in_tree.clear();
        self.tree.grow(self.net.n);
        self.tree.in_tree[self.net.s] = true;
        self.explore(self.net.s);
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<FlowDelta, FlowError> {
        let e = self.net.add_edge(u, v)?;
        self.tree.grow(self.net.n);
        self.meter.updates += 1;
        self.charge(1);
        if self.tree.in_tree[u] && !self.tree.in_tree[v] {
            self.tree.in_tree[v] = true;
            self.tree.parent[v] = Some(e);
            self.explore(v);
        }
        let mut delta = FlowDelta::default();
        while self.tree.in_tree[self.net.t] {
            let mut arcs = Vec::new();
            let mut y = self.net.t;
            while y != self.net.s {
                let e = self.tree.parent[y].expect("tree vertex has a parent arc");
                arcs.push(Arc::Real(e));
                y = self.net.res_tail(e);
            }
            arcs.reverse();
            self.meter.adjustments += arcs.len() as u64;
            let s = self.net.s;
            let vs = self.net.apply_path(s, &arcs);
            self.net.value += 1;
            delta.delta += 1;
            delta.path = Some(vs);
            self.stages.push(StageWork {
                touched: self.stage_touched,
                m_at_end: self.net.m,
            });
            self.stage_touched = 0;
            self.rebuild();
        }
        Ok(delta)
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<FlowDelta, FlowError> {
        match *event {
            UpdateEvent::InsertEdge(u, v) => self.insert_edge(u, v),
            UpdateEvent::DeleteEdge(..) => Err(FlowError::NotIncremental),
            _ => Err(FlowError::UnsupportedEvent(
                "flow streams carry edge events only",
            )),
        }
    }

    /// Network audit plus agreement of the tree with residual reachability.
    pub fn audit(&self) -> Result<(), String> {
        self.net.audit()?;
        let mut seen = vec![false; self.net.n];
        seen[self.net.s] = true;
        let mut queue = VecDeque::from([self.net.s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.net.res_out[x] {
                let y = self.net.res_head(e);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        for (v, &reached) in seen.iter().enumerate().take(self.net.n) {
            if reached != self.tree.contains(v) {
                return Err(format!(
                    "tree membership of {v} disagrees with residual reachability"
                ));
            }
            if let Some(e) = self.tree.parent[v] {
                if !self.net.alive[e]
                    || self.net.res_head(e) != v
                    || !self.tree.contains(self.net.res_tail(e))
                {
                    return Err(format!("stale tree arc into {v}"));
                }
            }
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }
}
