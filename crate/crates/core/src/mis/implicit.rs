//! Implicit MIS with worst-case O(min{Δ, √m}) work per edge update and per
//! `In-MIS(v)` query.
//!
//! The structure keeps an independent set `S` that is not necessarily
//! maximal. Queries grow `S` lazily: a vertex joins when it has no neighbor
//! in `S` at query time, so querying every vertex (with no updates in
//! between) reveals an MIS.
//!
//! Vertices of degree above `tau = ⌈√m_c⌉` are always *tracked*: they keep
//! an exact count of neighbors in `S` and a list of tracked neighbors, so a
//! high-degree vertex can enter or leave `S` by informing only tracked
//! neighbors. Untracked vertices answer queries by scanning their (short)
//! adjacency. Tracking status changes at degree crossings, and threshold
//! shifts between epochs are absorbed lazily, a couple of vertices per
//! update, so no single update pays for a whole epoch change.

use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::MisError;
use crate::graph::{DynGraph, GraphError, VertexId};
use crate::meter::{AdjustmentLog, CostMeter};
use crate::stream::UpdateEvent;

/// Threshold changes handled per update by lazy promotion and demotion.
const LAZY_PACE: usize = 2;

pub(crate) fn ceil_sqrt(x: usize) -> usize {
    let r = x.isqrt();
    if r * r < x {
        r + 1
    } else {
        r
    }
}

#[derive(Debug, Clone)]
pub struct ImplicitMis {
    g: DynGraph,
    m_c: usize,
    in_set: Vec<bool>,
    tracked: Vec<bool>,
    hcount: Vec<usize>,
    /// tracked neighbors of each tracked vertex
    heavy_adj: Vec<IndexSet<VertexId>>,
    untracked_by_deg: BTreeSet<(usize, VertexId)>,
    tracked_by_deg: BTreeSet<(usize, VertexId)>,
    meter: CostMeter,
    last_op_touches: u64,
    epochs: u64,
    forced_promotions: u64,
}

impl ImplicitMis {
    /// Starts with `S` empty and every vertex above the promotion threshold
    /// tracked.
    pub fn new(g: DynGraph) -> Self {
        let b = g.id_bound();
        let mut s = ImplicitMis {
            m_c: g.m().max(1),
            in_set: vec![false; b],
            tracked: vec![false; b],
            hcount: vec![0; b],
            heavy_adj: vec![IndexSet::new(); b],
            untracked_by_deg: g.vertices().map(|v| (g.degree(v), v)).collect(),
            tracked_by_deg: BTreeSet::new(),
            g,
            meter: CostMeter::default(),
            last_op_touches: 0,
            epochs: 0,
            forced_promotions: 0,
        };
        let p = s.promote_above();
        let eager: Vec<_> = s
            .untracked_by_deg
            .range((p + 1, 0)..)
            .map(|&(_, v)| v)
            .collect();
        for v in eager {
            s.promote(v);
        }
        s
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn m_c(&self) -> usize {
        self.m_c
    }

    /// Degree above which a vertex must be tracked.
    pub fn tau(&self) -> usize {
        ceil_sqrt(self.m_c)
    }

    fn promote_above(&self) -> usize {
        ceil_sqrt(self.m_c / 2)
    }

    fn demote_at(&self) -> usize {
        ceil_sqrt(self.m_c / 4)
    }

    /// Every tracked vertex has degree above this, even mid-way through a
    /// lazy demotion backlog.
    fn tracked_floor(&self) -> usize {
        ceil_sqrt(self.m_c / 8)
    }

    /// Adjacency entries touched by the most recent update or query.
    pub fn last_op_touches(&self) -> u64 {
        self.last_op_touches
    }

    pub fn epochs(&self) -> u64 {
        self.epochs
    }

    /// Halving epochs that found untracked vertices above the new `tau`
    /// and had to promote them on the spot.
    pub fn forced_promotions(&self) -> u64 {
        self.forced_promotions
    }

    pub fn is_tracked(&self, v: VertexId) -> bool {
        self.tracked[v]
    }

    pub fn hcount(&self, v: VertexId) -> Option<usize> {
        self.tracked[v].then_some(self.hcount[v])
    }

    pub fn tracked_count(&self) -> usize {
        self.tracked_by_deg.len()
    }

    /// Membership in the current independent set, without growing it.
    pub fn in_set(&self, v: VertexId) -> bool {
        self.in_set.get(v).copied().unwrap_or(false)
    }

    pub fn set_members(&self) -> Vec<VertexId> {
        self.g.vertices().filter(|&v| self.in_set[v]).collect()
    }

    fn grow(&mut self) {
        let b = self.g.id_bound();
        self.in_set.resize(b, false);
        self.tracked.resize(b, false);
        self.hcount.resize(b, 0);
        self.heavy_adj.resize_with(b, IndexSet::new);
    }

    fn key_set(&mut self, v: VertexId) -> &mut BTreeSet<(usize, VertexId)> {
        if self.tracked[v] {
            &mut self.tracked_by_deg
        } else {
            &mut self.untracked_by_deg
        }
    }

    fn promote(&mut self, v: VertexId) {
        let d = self.g.degree(v);
        self.untracked_by_deg.remove(&(d, v));
        self.tracked_by_deg.insert((d, v));
        self.tracked[v] = true;
        self.meter.touch(d);
        let mut c = 0;
        let nbrs: Vec<_> = self.g.neighbors(v).collect();
        for w in nbrs {
            c += usize::from(self.in_set[w]);
            if self.tracked[w] {
                self.heavy_adj[w].insert(v);
                self.heavy_adj[v].insert(w);
            }
        }
        self.hcount[v] = c;
    }

    fn demote(&mut self, v: VertexId) {
        let d = self.g.degree(v);
        self.tracked_by_deg.remove(&(d, v));
        self.untracked_by_deg.insert((d, v));
        self.tracked[v] = false;
        self.hcount[v] = 0;
        let hs = std::mem::take(&mut self.heavy_adj[v]);
        self.meter.touch(hs.len());
        for w in hs {
            self.heavy_adj[w].swap_remove(&v);
        }
    }

    /// Adds `delta` to the count of every tracked neighbor of `v`.
    fn inform(&mut self, v: VertexId, entering: bool) {
        let hs: Vec<_> = if self.tracked[v] {
            self.meter.touch(self.heavy_adj[v].len());
            self.heavy_adj[v].iter().copied().collect()
        } else {
            self.meter.touch(self.g.degree(v));
            self.g.neighbors(v).filter(|&w| self.tracked[w]).collect()
        };
        for w in hs {
            if entering {
                self.hcount[w] += 1;
            } else {
                self.hcount[w] -= 1;
            }
        }
    }

    fn leave(&mut self, v: VertexId, log: &mut AdjustmentLog) {
        self.in_set[v] = false;
        self.inform(v, false);
        self.meter.adjustments += 1;
        log.left.push(v);
    }

    /// Background work: promote high-degree untracked vertices and demote
    /// low-degree tracked ones, a bounded number per update.
    fn lazy_step(&mut self) {
        let p = self.promote_above();
        for _ in 0..LAZY_PACE {
            match self.untracked_by_deg.last() {
                Some(&(d, v)) if d > p => self.promote(v),
                _ => break,
            }
        }
        let q = self.demote_at();
        for _ in 0..LAZY_PACE {
            match self.tracked_by_deg.first() {
                Some(&(d, v)) if d <= q => self.demote(v),
                _ => break,
            }
        }
    }

    fn epoch_check(&mut self) {
        let m = self.g.m();
        if m >= 2 * self.m_c {
            self.m_c *= 2;
            self.epochs += 1;
        } else if 2 * m <= self.m_c && self.m_c > 1 {
            self.m_c /= 2;
            self.epochs += 1;
            // vertices above the lowered tau must be tracked now; the lazy
            // pace normally leaves nothing here
            let tau = self.tau();
            let late: Vec<_> = self
                .untracked_by_deg
                .range((tau + 1, 0)..)
                .map(|&(_, v)| v)
                .collect();
            self.forced_promotions += late.len() as u64;
            for v in late {
                self.promote(v);
            }
        }
    }

    fn edge_update(
        &mut self,
        u: VertexId,
        v: VertexId,
        insert: bool,
        log: &mut AdjustmentLog,
    ) -> Result<(), MisError> {
        let (du, dv) = (self.g.degree(u), self.g.degree(v));
        if insert {
            self.g.insert_edge(u, v)?;
        } else {
            self.g.delete_edge(u, v)?;
        }
        self.meter.touch(1);
        for (x, d) in [(u, du), (v, dv)] {
            let nd = self.g.degree(x);
            let set = self.key_set(x);
            set.remove(&(d, x));
            set.insert((nd, x));
        }
        if self.tracked[u] && self.tracked[v] {
            if insert {
                self.heavy_adj[u].insert(v);
                self.heavy_adj[v].insert(u);
            } else {
                self.heavy_adj[u].swap_remove(&v);
                self.heavy_adj[v].swap_remove(&u);
            }
        }
        for (a, b) in [(u, v), (v, u)] {
            if self.in_set[a] && self.tracked[b] {
                if insert {
                    self.hcount[b] += 1;
                } else {
                    self.hcount[b] -= 1;
                }
            }
        }
        if insert && self.in_set[u] && self.in_set[v] {
            self.leave(u.max(v), log);
        }
        let (p, q) = (self.promote_above(), self.demote_at());
        for x in [u, v] {
            let d = self.g.degree(x);
            if insert && !self.tracked[x] && d > p {
                self.promote(x);
            } else if !insert && self.tracked[x] && d <= q {
                self.demote(x);
            }
        }
        self.lazy_step();
        self.epoch_check();
        Ok(())
    }

    /// Answers `In-MIS(v)`, adding `v` to `S` when nothing blocks it.
    pub fn query(&mut self, v: VertexId) -> Result<bool, MisError> {
        let log = self.apply(&UpdateEvent::QueryInMis(v))?;
        Ok(!log.entered.is_empty() || self.in_set[v])
    }

    fn answer(&mut self, v: VertexId, log: &mut AdjustmentLog) -> Result<(), MisError> {
        if !self.g.is_live(v) {
            return Err(GraphError::UnknownVertex(v).into());
        }
        self.meter.queries += 1;
        if self.in_set[v] {
            return Ok(());
        }
        let free = if self.tracked[v] {
            self.hcount[v] == 0
        } else {
            self.meter.touch(self.g.degree(v));
            !self.g.neighbors(v).any(|w| self.in_set[w])
        };
        if free {
            self.in_set[v] = true;
            self.inform(v, true);
            self.meter.adjustments += 1;
            log.entered.push(v);
        }
        Ok(())
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<AdjustmentLog, MisError> {
        let before = self.meter.edges_touched;
        let mut log = AdjustmentLog::default();
        match *event {
            UpdateEvent::InsertEdge(u, v) => self.edge_update(u, v, true, &mut log)?,
            UpdateEvent::DeleteEdge(u, v) => self.edge_update(u, v, false, &mut log)?,
            UpdateEvent::InsertVertex(ref ns) => {
                if !ns.is_empty() {
                    return Err(MisError::VertexUpdateUnsupported);
                }
                let v = self.g.insert_vertex(&[])?;
                self.grow();
                self.untracked_by_deg.insert((0, v));
                self.meter.touch(1);
            }
            UpdateEvent::DeleteVertex(v) => {
                if !self.g.is_live(v) {
                    return Err(GraphError::UnknownVertex(v).into());
                }
                // one edge deletion at a time, each with its own bookkeeping
                for w in self.g.sorted_neighbors(v) {
                    self.edge_update(v, w, false, &mut log)?;
                }
                if self.in_set[v] {
                    self.leave(v, &mut log);
                }
                if self.tracked[v] {
                    self.demote(v);
                }
                self.untracked_by_deg.remove(&(0, v));
                self.g.delete_vertex(v)?;
                self.meter.touch(1);
            }
            UpdateEvent::QueryInMis(v) => {
                self.answer(v, &mut log)?;
                self.last_op_touches = self.meter.edges_touched - before;
                return Ok(log);
            }
        }
        self.meter.updates += 1;
        self.last_op_touches = self.meter.edges_touched - before;
        Ok(log)
    }

    /// Full rescan of the structural invariants.
    pub fn audit(&self) -> Result<(), String> {
        let m = self.g.m();
        let in_epoch = (2 * m > self.m_c && m < 2 * self.m_c) || (m == 0 && self.m_c == 1);
        if !in_epoch {
            return Err(format!(
                "m = {m} outside epoch window of m_c = {}",
                self.m_c
            ));
        }
        let tau = self.tau();
        let floor = self.tracked_floor();
        let mut tracked = 0;
        for v in self.g.vertices() {
            let d = self.g.degree(v);
            if self.in_set[v] {
                if let Some(w) = self.g.neighbors(v).find(|&w| self.in_set[w]) {
                    return Err(format!("edge ({v}, {w}) inside S"));
                }
            }
            let keyed = if self.tracked[v] {
                &self.tracked_by_deg
            } else {
                &self.untracked_by_deg
            };
            if !keyed.contains(&(d, v)) {
                return Err(format!("degree index stale at {v}"));
            }
            if self.tracked[v] {
                tracked += 1;
                if d <= floor {
                    return Err(format!("tracked {v} has degree {d} <= {floor}"));
                }
                let c = self.g.neighbors(v).filter(|&w| self.in_set[w]).count();
                if c != self.hcount[v] {
                    return Err(format!("hcount({v}) = {} but {c}", self.hcount[v]));
                }
                let mut want: Vec<_> = self.g.neighbors(v).filter(|&w| self.tracked[w]).collect();
                let mut have: Vec<_> = self.heavy_adj[v].iter().copied().collect();
                want.sort_unstable();
                have.sort_unstable();
                if want != have {
                    return Err(format!("tracked adjacency of {v} is stale"));
                }
            } else {
                if d > tau {
                    return Err(format!("vertex {v} of degree {d} > tau = {tau} untracked"));
                }
                if !self.heavy_adj[v].is_empty() {
                    return Err(format!("untracked {v} carries tracked adjacency"));
                }
            }
        }
        if tracked != self.tracked_by_deg.len()
            || self.g.n() != tracked + self.untracked_by_deg.len()
        {
            return Err("degree index size mismatch".into());
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }

    /// Queries every live vertex in ascending order on a copy and returns
    /// the resulting true-set.
    pub fn sweep(&self) -> Vec<VertexId> {
        let mut probe = self.clone();
        let vs: Vec<_> = probe.g.vertices().collect();
        vs.into_iter()
            .filter(|&v| probe.query(v).expect("live vertex"))
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn corrupt_hcount(&mut self, v: VertexId) {
        self.hcount[v] += 1;
    }

    #[cfg(test)]
    pub(crate) fn force_into_set(&mut self, v: VertexId) {
        self.in_set[v] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::is_mis;
    use UpdateEvent::*;

    #[test]
    fn integer_square_roots() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
    }

    #[test]
    fn isolated_vertex_joins() {
        let mut s = ImplicitMis::new(DynGraph::new(3));
        assert!(s.query(1).unwrap());
        assert!(s.in_set(1));
        assert!(s.query(1).unwrap());
        assert_eq!(s.meter().adjustments, 1);
    }

    #[test]
    fn neighbor_in_set_blocks() {
        let mut s = ImplicitMis::new(DynGraph::from_edges(2, &[(0, 1)]).unwrap());
        assert!(s.query(0).unwrap());
        assert!(!s.query(1).unwrap());
        assert!(!s.query(1).unwrap());
        s.audit().unwrap();
    }

    #[test]
    fn tracked_query_informs_tracked_neighbors() {
        // K4 plus pendant edges: m = 10 so promotion threshold is ceil(sqrt(5)) = 3
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(0, 4), (1, 5), (2, 6), (3, 7)]);
        let mut s = ImplicitMis::new(DynGraph::from_edges(8, &edges).unwrap());
        assert!((0..4).all(|v| s.is_tracked(v)));
        assert_eq!(s.hcount(0), Some(0));
        assert!(s.query(0).unwrap());
        for w in 1..4 {
            assert!(s.hcount(w).unwrap() >= 1);
        }
        s.audit().unwrap();
    }

    #[test]
    fn insertion_inside_set_removes_one() {
        let mut s = ImplicitMis::new(DynGraph::new(4));
        s.query(0).unwrap();
        s.query(3).unwrap();
        let log = s.apply(&InsertEdge(0, 3)).unwrap();
        assert_eq!(log.left, vec![3]);
        assert!(log.entered.is_empty());
        s.audit().unwrap();
    }

    #[test]
    fn mixed_insertion_only_adjusts_counts() {
        let mut s = ImplicitMis::new(DynGraph::new(3));
        s.query(0).unwrap();
        let log = s.apply(&InsertEdge(0, 1)).unwrap();
        assert!(log.is_empty());
        assert!(s.in_set(0) && !s.in_set(1));
    }

    #[test]
    fn doubling_fires_once() {
        let mut g = DynGraph::new(40);
        for i in 0..8 {
            g.insert_edge(2 * i, 2 * i + 1).unwrap();
        }
        let mut s = ImplicitMis::new(g);
        assert_eq!(s.m_c(), 8);
        // 2·m_c − m = 8 insertions reach m = 16
        for i in 0..8 {
            s.apply(&InsertEdge(16 + 2 * i, 17 + 2 * i)).unwrap();
            s.audit().unwrap();
        }
        assert_eq!(s.m_c(), 16);
        assert_eq!(s.epochs(), 1);
    }

    #[test]
    fn sweep_reveals_mis() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)];
        let s = ImplicitMis::new(DynGraph::from_edges(7, &edges).unwrap());
        let set = s.sweep();
        assert!(is_mis(s.graph(), &set).ok);
    }

    #[test]
    fn vertex_events() {
        let mut s = ImplicitMis::new(DynGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(
            s.apply(&InsertVertex(vec![0])),
            Err(MisError::VertexUpdateUnsupported)
        );
        s.apply(&InsertVertex(vec![])).unwrap();
        s.query(1).unwrap();
        let log = s.apply(&DeleteVertex(1)).unwrap();
        assert_eq!(log.left, vec![1]);
        s.audit().unwrap();
        assert!(is_mis(s.graph(), &s.sweep()).ok);
    }

    #[test]
    fn audit_rejects_corruption() {
        let edges = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ];
        let mut s = ImplicitMis::new(DynGraph::from_edges(8, &edges).unwrap());
        s.corrupt_hcount(0);
        assert!(!s.verify());
        let mut s = ImplicitMis::new(DynGraph::from_edges(8, &edges).unwrap());
        s.force_into_set(4);
        s.force_into_set(0);
        assert!(!s.verify());
    }
}
