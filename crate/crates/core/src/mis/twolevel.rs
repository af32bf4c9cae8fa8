//! Two-level fully dynamic MIS with amortized O(min{Δ, m^{2/3}}) update time.
//!
//! Vertices of degree at least `delta_c = ⌈m_c^{2/3}⌉` are heavy. Light
//! vertices run the count-based algorithm among themselves; every light
//! vertex entering or leaving `M` informs all of its neighbors, so each
//! vertex (heavy or light) knows how many light neighbors are in `M`. After
//! every update the heavy part of `M` is discarded and rebuilt greedily over
//! heavy vertices with no light neighbor in `M`. Heavy vertices never inform
//! light neighbors.
//!
//! Classification follows the current degree: a vertex crossing `delta_c`
//! migrates immediately, at O(delta_c) cost. When `m` drifts to `m_c/2` or
//! `2·m_c` a new phase starts and everything is rebuilt with the new
//! threshold.

use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::MisError;
use crate::graph::{DynGraph, GraphError, VertexId};
use crate::meter::{AdjustmentLog, CostMeter};
use crate::stream::UpdateEvent;

/// `⌈m^{2/3}⌉` computed exactly.
pub(crate) fn ceil_pow_two_thirds(m: usize) -> usize {
    let target = (m as u128) * (m as u128);
    let mut d = (m as f64).powf(2.0 / 3.0).ceil() as u128;
    while d > 0 && (d - 1).pow(3) >= target {
        d -= 1;
    }
    while d.pow(3) < target {
        d += 1;
    }
    d as usize
}

#[derive(Debug, Clone)]
pub struct TwoLevelMis {
    g: DynGraph,
    m_c: usize,
    delta_c: usize,
    is_heavy: Vec<bool>,
    heavy: BTreeSet<VertexId>,
    /// heavy neighbors of each heavy vertex
    heavy_adj: Vec<IndexSet<VertexId>>,
    in_light: Vec<bool>,
    light_count: Vec<usize>,
    in_heavy: Vec<bool>,
    heavy_members: Vec<VertexId>,
    block: Vec<u64>,
    block_stamp: u64,
    // per-update adjustment diffing
    seen: Vec<u64>,
    was_member: Vec<bool>,
    dirty: Vec<VertexId>,
    op: u64,
    meter: CostMeter,
    last_heavy_rebuild: u64,
    phases: u64,
}

impl TwoLevelMis {
    pub fn new(g: DynGraph) -> Self {
        let mut s = TwoLevelMis {
            g,
            m_c: 1,
            delta_c: 1,
            is_heavy: Vec::new(),
            heavy: BTreeSet::new(),
            heavy_adj: Vec::new(),
            in_light: Vec::new(),
            light_count: Vec::new(),
            in_heavy: Vec::new(),
            heavy_members: Vec::new(),
            block: Vec::new(),
            block_stamp: 0,
            seen: Vec::new(),
            was_member: Vec::new(),
            dirty: Vec::new(),
            op: 1,
            meter: CostMeter::default(),
            last_heavy_rebuild: 0,
            phases: 0,
        };
        s.rebuild();
        s.dirty.clear();
        s.meter.adjustments = 0;
        s.phases = 0;
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

    pub fn delta_c(&self) -> usize {
        self.delta_c
    }

    pub fn is_heavy(&self, v: VertexId) -> bool {
        self.is_heavy.get(v).copied().unwrap_or(false)
    }

    pub fn light_count(&self, v: VertexId) -> usize {
        self.light_count[v]
    }

    /// Edges touched by the most recent heavy-side rebuild.
    pub fn last_heavy_rebuild(&self) -> u64 {
        self.last_heavy_rebuild
    }

    /// Phase restarts since construction.
    pub fn phases(&self) -> u64 {
        self.phases
    }

    pub fn in_mis(&self, v: VertexId) -> bool {
        self.in_light.get(v).copied().unwrap_or(false)
            || self.in_heavy.get(v).copied().unwrap_or(false)
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.g.vertices().filter(|&v| self.in_mis(v)).collect()
    }

    fn grow(&mut self) {
        let b = self.g.id_bound();
        self.is_heavy.resize(b, false);
        self.heavy_adj.resize_with(b, IndexSet::new);
        self.in_light.resize(b, false);
        self.light_count.resize(b, 0);
        self.in_heavy.resize(b, false);
        self.block.resize(b, 0);
        self.seen.resize(b, 0);
        self.was_member.resize(b, false);
    }

    /// Records `v`'s membership before its first change in this operation.
    fn mark(&mut self, v: VertexId) {
        if self.seen[v] != self.op {
            self.seen[v] = self.op;
            self.was_member[v] = self.in_mis(v);
            self.dirty.push(v);
        }
    }

    fn enter_light(&mut self, v: VertexId) {
        self.mark(v);
        self.in_light[v] = true;
        self.meter.touch(self.g.degree(v));
        for w in self.g.neighbors(v) {
            self.light_count[w] += 1;
        }
    }

    fn leave_light(&mut self, v: VertexId, cands: &mut Vec<VertexId>) {
        self.mark(v);
        self.in_light[v] = false;
        self.meter.touch(self.g.degree(v));
        for w in self.g.neighbors(v) {
            self.light_count[w] -= 1;
            if self.light_count[w] == 0 && !self.is_heavy[w] && !self.in_light[w] {
                cands.push(w);
            }
        }
    }

    fn admit(&mut self, mut cands: Vec<VertexId>) {
        cands.sort_unstable();
        cands.dedup();
        for w in cands {
            if self.g.is_live(w)
                && !self.is_heavy[w]
                && !self.in_light[w]
                && self.light_count[w] == 0
            {
                self.enter_light(w);
            }
        }
    }

    fn link_heavy(&mut self, v: VertexId) {
        self.meter.touch(self.g.degree(v));
        let hs: Vec<_> = self.g.neighbors(v).filter(|&w| self.is_heavy[w]).collect();
        for w in hs {
            self.heavy_adj[w].insert(v);
            self.heavy_adj[v].insert(w);
        }
    }

    fn unlink_heavy(&mut self, v: VertexId) {
        let hs = std::mem::take(&mut self.heavy_adj[v]);
        self.meter.touch(hs.len());
        for w in hs {
            self.heavy_adj[w].swap_remove(&v);
        }
    }

    /// Moves `v` across the heavy/light boundary if its degree now says so.
    fn reclassify(&mut self, v: VertexId, cands: &mut Vec<VertexId>) {
        let want = self.g.degree(v) >= self.delta_c;
        if want == self.is_heavy[v] {
            return;
        }
        if want {
            if self.in_light[v] {
                self.leave_light(v, cands);
            }
            self.is_heavy[v] = true;
            self.heavy.insert(v);
            self.link_heavy(v);
        } else {
            if self.in_heavy[v] {
                self.mark(v);
                self.in_heavy[v] = false;
            }
            self.unlink_heavy(v);
            self.is_heavy[v] = false;
            self.heavy.remove(&v);
            cands.push(v);
        }
    }

    /// Greedy MIS over heavy vertices with no light neighbor in `M`,
    /// reading only heavy-heavy adjacency.
    fn rebuild_heavy(&mut self) {
        for v in std::mem::take(&mut self.heavy_members) {
            if v < self.in_heavy.len() && self.in_heavy[v] {
                self.mark(v);
                self.in_heavy[v] = false;
            }
        }
        self.block_stamp += 1;
        let mut touched = 0u64;
        let heavy: Vec<_> = self.heavy.iter().copied().collect();
        for v in heavy {
            touched += 1;
            if self.light_count[v] != 0 || self.block[v] == self.block_stamp {
                continue;
            }
            self.mark(v);
            self.in_heavy[v] = true;
            self.heavy_members.push(v);
            touched += self.heavy_adj[v].len() as u64;
            for i in 0..self.heavy_adj[v].len() {
                let w = self.heavy_adj[v][i];
                self.block[w] = self.block_stamp;
            }
        }
        self.last_heavy_rebuild = touched;
        self.meter.edges_touched += touched;
    }

    /// Starts a new phase: threshold, classification, light MIS and heavy
    /// MIS all from scratch.
    fn rebuild(&mut self) {
        self.grow();
        let live: Vec<_> = self.g.vertices().collect();
        for &v in &live {
            self.mark(v);
        }
        for v in std::mem::take(&mut self.heavy) {
            self.heavy_adj[v].clear();
        }
        self.m_c = self.g.m().max(1);
        self.delta_c = ceil_pow_two_thirds(self.m_c);
        self.in_light.iter_mut().for_each(|x| *x = false);
        self.in_heavy.iter_mut().for_each(|x| *x = false);
        self.light_count.iter_mut().for_each(|x| *x = 0);
        self.is_heavy.iter_mut().for_each(|x| *x = false);
        self.heavy_members.clear();
        for &v in &live {
            if self.g.degree(v) >= self.delta_c {
                self.is_heavy[v] = true;
                self.heavy.insert(v);
            }
        }
        let heavy: Vec<_> = self.heavy.iter().copied().collect();
        for v in heavy {
            self.meter.touch(self.g.degree(v));
            let hs: IndexSet<_> = self.g.neighbors(v).filter(|&w| self.is_heavy[w]).collect();
            self.heavy_adj[v] = hs;
        }
        for &v in &live {
            if !self.is_heavy[v] && self.light_count[v] == 0 {
                self.enter_light(v);
            }
        }
        self.rebuild_heavy();
        self.phases += 1;
    }

    fn finish(&mut self) -> AdjustmentLog {
        let mut log = AdjustmentLog::default();
        for v in std::mem::take(&mut self.dirty) {
            let now = self.g.is_live(v) && self.in_mis(v);
            match (self.was_member[v], now) {
                (true, false) => log.left.push(v),
                (false, true) => log.entered.push(v),
                _ => {}
            }
        }
        self.meter.adjustments += log.len() as u64;
        self.meter.updates += 1;
        self.op += 1;
        log
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<AdjustmentLog, MisError> {
        let mut cands = Vec::new();
        match *event {
            UpdateEvent::InsertEdge(u, v) => {
                self.g.insert_edge(u, v)?;
                self.meter.touch(1);
                for (a, b) in [(u, v), (v, u)] {
                    if !self.is_heavy[a] && self.in_light[a] {
                        self.light_count[b] += 1;
                    }
                }
                if self.is_heavy[u] && self.is_heavy[v] {
                    self.heavy_adj[u].insert(v);
                    self.heavy_adj[v].insert(u);
                }
                self.reclassify(u, &mut cands);
                self.reclassify(v, &mut cands);
                if self.in_light[u] && self.in_light[v] {
                    self.leave_light(u.max(v), &mut cands);
                }
            }
            UpdateEvent::DeleteEdge(u, v) => {
                self.g.delete_edge(u, v)?;
                self.meter.touch(1);
                for (a, b) in [(u, v), (v, u)] {
                    if self.in_light[a] {
                        self.light_count[b] -= 1;
                        if self.light_count[b] == 0 && !self.is_heavy[b] {
                            cands.push(b);
                        }
                    }
                }
                if self.is_heavy[u] && self.is_heavy[v] {
                    self.heavy_adj[u].swap_remove(&v);
                    self.heavy_adj[v].swap_remove(&u);
                }
                self.reclassify(u, &mut cands);
                self.reclassify(v, &mut cands);
            }
            UpdateEvent::InsertVertex(ref ns) => {
                let v = self.g.insert_vertex(ns)?;
                self.grow();
                self.meter.touch(1 + ns.len());
                self.light_count[v] = ns.iter().filter(|&&w| self.in_light[w]).count();
                if self.g.degree(v) >= self.delta_c {
                    self.is_heavy[v] = true;
                    self.heavy.insert(v);
                    self.link_heavy(v);
                } else {
                    cands.push(v);
                }
                let mut sorted = ns.clone();
                sorted.sort_unstable();
                for w in sorted {
                    self.reclassify(w, &mut cands);
                }
            }
            UpdateEvent::DeleteVertex(v) => {
                if !self.g.is_live(v) {
                    return Err(GraphError::UnknownVertex(v).into());
                }
                self.meter.touch(1);
                if self.in_light[v] {
                    self.leave_light(v, &mut cands);
                }
                if self.is_heavy[v] {
                    if self.in_heavy[v] {
                        self.mark(v);
                        self.in_heavy[v] = false;
                    }
                    self.unlink_heavy(v);
                    self.is_heavy[v] = false;
                    self.heavy.remove(&v);
                }
                let mut former = self.g.delete_vertex(v)?;
                self.light_count[v] = 0;
                former.sort_unstable();
                for w in former {
                    self.reclassify(w, &mut cands);
                }
            }
            UpdateEvent::QueryInMis(_) => return Err(MisError::UnsupportedEvent("query")),
        }
        self.admit(cands);
        self.rebuild_heavy();
        let m = self.g.m();
        let drifted = m >= 2 * self.m_c || 2 * m <= self.m_c;
        if drifted && m.max(1) != self.m_c {
            self.rebuild();
        }
        Ok(self.finish())
    }

    /// Full rescan of every structural invariant plus MIS validity of the
    /// combined set.
    pub fn audit(&self) -> Result<(), String> {
        let m = self.g.m();
        let in_phase = (2 * m > self.m_c && m < 2 * self.m_c) || (m == 0 && self.m_c == 1);
        if !in_phase {
            return Err(format!(
                "m = {m} outside phase window of m_c = {}",
                self.m_c
            ));
        }
        if self.delta_c != ceil_pow_two_thirds(self.m_c) {
            return Err("delta_c does not match m_c".into());
        }
        for v in self.g.vertices() {
            let heavy = self.g.degree(v) >= self.delta_c;
            if heavy != self.is_heavy[v] || heavy != self.heavy.contains(&v) {
                return Err(format!("vertex {v} misclassified"));
            }
            let lc = self.g.neighbors(v).filter(|&w| self.in_light[w]).count();
            if lc != self.light_count[v] {
                return Err(format!(
                    "light_count({v}) = {} but {lc}",
                    self.light_count[v]
                ));
            }
            if heavy {
                let mut hs: Vec<_> = self.g.neighbors(v).filter(|&w| self.is_heavy[w]).collect();
                let mut stored: Vec<_> = self.heavy_adj[v].iter().copied().collect();
                hs.sort_unstable();
                stored.sort_unstable();
                if hs != stored {
                    return Err(format!("heavy adjacency of {v} is stale"));
                }
                if self.in_light[v] {
                    return Err(format!("heavy {v} in light MIS"));
                }
                if self.in_heavy[v] && lc != 0 {
                    return Err(format!("heavy {v} in M despite a light neighbor in M"));
                }
                if lc == 0 {
                    let hm = self.heavy_adj[v]
                        .iter()
                        .filter(|&&w| self.in_heavy[w])
                        .count();
                    if self.in_heavy[v] && hm != 0 {
                        return Err(format!("heavy {v} adjacent to a heavy member"));
                    }
                    if !self.in_heavy[v] && hm == 0 {
                        return Err(format!("eligible heavy {v} uncovered"));
                    }
                }
            } else {
                if !self.heavy_adj[v].is_empty() || self.in_heavy[v] {
                    return Err(format!("light {v} carries heavy state"));
                }
                if self.in_light[v] != (lc == 0) {
                    return Err(format!("light MIS invalid at {v}"));
                }
            }
        }
        let report = crate::oracles::is_mis(&self.g, &self.members());
        if !report.ok {
            return Err(report.detail);
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }

    #[cfg(test)]
    pub(crate) fn corrupt_heavy_membership(&mut self, v: VertexId) {
        self.in_heavy[v] = true;
    }

    #[cfg(test)]
    pub(crate) fn corrupt_light_membership(&mut self, v: VertexId) {
        self.in_light[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::is_mis;
    use UpdateEvent::*;

    fn check(s: &TwoLevelMis) {
        s.audit().unwrap();
        assert!(is_mis(s.graph(), &s.members()).ok);
    }

    #[test]
    fn threshold_arithmetic() {
        assert_eq!(ceil_pow_two_thirds(1000), 100);
        assert_eq!(ceil_pow_two_thirds(1), 1);
        assert_eq!(ceil_pow_two_thirds(8), 4);
        assert_eq!(ceil_pow_two_thirds(9), 5); // 9^(2/3) = 4.33
        assert_eq!(ceil_pow_two_thirds(1_000_000), 10_000);
    }

    #[test]
    fn all_light_matches_count_based_greedy() {
        let g = DynGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = TwoLevelMis::new(g);
        // m_c = 3, delta_c = 3, max degree 2
        assert_eq!(s.delta_c(), 3);
        assert!((0..4).all(|v| !s.is_heavy(v)));
        assert_eq!(s.members(), vec![0, 2]);
        check(&s);
    }

    #[test]
    fn hub_joins_only_without_light_member_neighbor() {
        // hub 0 with leaves 1..=5, plus 6-7 and 8-9 to raise m to 7, delta_c = 4
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (6, 7), (8, 9)];
        let s = TwoLevelMis::new(DynGraph::from_edges(10, &edges).unwrap());
        assert_eq!(s.delta_c(), 4);
        assert!(s.is_heavy(0));
        // all leaves are light and uncovered by lights, so they join and the hub stays out
        assert!(!s.in_mis(0));
        assert!((1..=5).all(|v| s.in_mis(v)));
        check(&s);
    }

    #[test]
    fn light_conflict_then_heavy_rebuild() {
        // m = 8 edges so delta_c = 4; hub 0 is heavy with leaves 1..=4
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
        ];
        let mut s = TwoLevelMis::new(DynGraph::from_edges(10, &edges).unwrap());
        check(&s);
        assert!(s.is_heavy(0) && !s.in_mis(0));
        for v in [2, 3, 4] {
            s.apply(&DeleteEdge(0, v)).unwrap();
            check(&s);
        }
        // hub has dropped to degree 1: it migrated to light
        assert!(!s.is_heavy(0));
        let log = s.apply(&InsertEdge(1, 5)).unwrap();
        check(&s);
        assert!(log.left.len() <= 2);
    }

    #[test]
    fn light_member_meeting_heavy_bumps_count_and_evicts() {
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
        ];
        let mut s = TwoLevelMis::new(DynGraph::from_edges(11, &edges).unwrap());
        // heavy hub 0 is out (leaves are members); detach all leaves except 1
        assert!(s.in_mis(10));
        let before = s.light_count(0);
        s.apply(&InsertEdge(10, 0)).unwrap();
        check(&s);
        assert_eq!(s.light_count(0), before + 1);
        assert!(!s.in_mis(0));
    }

    #[test]
    fn migration_to_heavy_readmits_neighbors() {
        // m_c = 6 gives delta_c = 4; vertex 0 is light with degree 3 and in M
        let edges = [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7)];
        let mut s = TwoLevelMis::new(DynGraph::from_edges(9, &edges).unwrap());
        assert_eq!(s.delta_c(), 4);
        assert!(s.in_mis(0) && !s.is_heavy(0));
        s.apply(&InsertEdge(0, 8)).unwrap();
        // degree 4 reaches delta_c: 0 left light M, leaves 1..3 admitted
        assert!(s.is_heavy(0));
        assert!((1..=3).all(|v| s.in_mis(v)));
        check(&s);
    }

    #[test]
    fn migration_to_light_enters_when_uncovered() {
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
            (4, 8),
        ];
        let mut s = TwoLevelMis::new(DynGraph::from_edges(9, &edges).unwrap());
        assert_eq!(s.delta_c(), 4);
        assert!(s.is_heavy(0));
        // leaves 1..4 in light M, so hub is out
        assert!(!s.in_mis(0));
        s.apply(&DeleteEdge(0, 4)).unwrap();
        check(&s);
        assert!(!s.is_heavy(0));
    }

    #[test]
    fn phase_rebuild_on_doubling() {
        let mut s =
            TwoLevelMis::new(DynGraph::from_edges(10, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap());
        assert_eq!(s.m_c(), 4);
        for (u, v) in [(0, 2), (1, 3), (4, 6)] {
            s.apply(&InsertEdge(u, v)).unwrap();
            assert_eq!(s.m_c(), 4);
        }
        s.apply(&InsertEdge(5, 7)).unwrap();
        assert_eq!(s.m_c(), 8);
        assert_eq!(s.phases(), 1);
        check(&s);
    }

    #[test]
    fn heavy_rebuild_within_budget() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        let s = TwoLevelMis::new(DynGraph::from_edges(6, &edges).unwrap());
        let h = (2 * s.graph().m()).div_ceil(s.delta_c()) as u64;
        assert!(s.last_heavy_rebuild() <= h * h);
        check(&s);
    }

    #[test]
    fn verify_rejects_corruption() {
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (6, 7), (8, 9)];
        let mut s = TwoLevelMis::new(DynGraph::from_edges(10, &edges).unwrap());
        s.corrupt_heavy_membership(0);
        assert!(!s.verify());
        let mut s = TwoLevelMis::new(DynGraph::from_edges(10, &edges).unwrap());
        s.corrupt_light_membership(6);
        assert!(!s.verify());
    }

    #[test]
    fn vertex_events() {
        let mut s = TwoLevelMis::new(DynGraph::new(3));
        s.apply(&InsertVertex(vec![0, 1, 2])).unwrap();
        check(&s);
        s.apply(&DeleteVertex(0)).unwrap();
        check(&s);
        s.apply(&DeleteVertex(3)).unwrap();
        check(&s);
        assert_eq!(s.members(), vec![1, 2]);
    }
}
