//! Maximum cardinality matching in general graphs under updates.
//!
//! Both structures share one blossom-forest engine: alternating trees whose
//! odd cycles are contracted into their base with a disjoint-set structure.
//! Each even vertex remembers how it became even (tree root, mate of an odd
//! vertex, or absorbed into a blossom through a bridge edge), which is
//! enough to unwind contracted blossoms into an explicit augmenting path.
//!
//! [`FullyDynamicMatching`] runs single-root searches after each update.
//! [`IncrementalMatching`] keeps a forest rooted at every free vertex across
//! insertions and rebuilds it only after an augmentation.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DynGraph, GraphError, VertexId};
use crate::meter::CostMeter;
use crate::oracles::{static_max_matching, OracleReport};
use crate::stream::UpdateEvent;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is already matched")]
    NotFree(VertexId),
    #[error("deletions are not supported by the incremental structure")]
    NotIncremental,
    #[error("unsupported event: {0}")]
    UnsupportedEvent(&'static str),
}

/// Outcome of one matching update.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatchDelta {
    /// Change of the matching cardinality.
    pub delta: i64,
    /// Matched pair dissolved by the update, if any.
    pub unmatched: Option<(VertexId, VertexId)>,
    /// Augmenting paths flipped, in order.
    pub paths: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Label {
    #[default]
    Unvisited,
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Origin {
    #[default]
    Root,
    /// mate of an odd tree vertex
    Natural,
    /// odd vertex absorbed into a blossom closed by edge (x, y), x on its side
    Bridge(VertexId, VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Found {
    /// even x adjacent to a free vertex outside the forest
    ToFree(VertexId, VertexId),
    /// even x and even y in different trees
    Across(VertexId, VertexId),
}

/// Alternating forest with disjoint-set blossom contraction. Only vertices
/// touched since the last reset are restored, so a small search costs only
/// what it explores.
#[derive(Debug, Clone, Default)]
pub struct BlossomForest {
    label: Vec<Label>,
    parent: Vec<VertexId>,
    root: Vec<VertexId>,
    origin: Vec<Origin>,
    dsu: Vec<usize>,
    size: Vec<usize>,
    base: Vec<VertexId>,
    mark: Vec<u64>,
    stamp: u64,
    queue: VecDeque<VertexId>,
    dirty: Vec<VertexId>,
    is_dirty: Vec<bool>,
}

impl BlossomForest {
    fn grow(&mut self, n: usize) {
        let old = self.label.len();
        if n <= old {
            return;
        }
        self.label.resize(n, Label::Unvisited);
        self.parent.resize(n, NIL);
        self.root.resize(n, NIL);
        self.origin.resize(n, Origin::Root);
        self.dsu.extend(old..n);
        self.size.resize(n, 1);
        self.base.extend(old..n);
        self.mark.resize(n, 0);
        self.is_dirty.resize(n, false);
    }

    fn reset(&mut self) {
        for v in self.dirty.drain(..) {
            self.label[v] = Label::Unvisited;
            self.parent[v] = NIL;
            self.root[v] = NIL;
            self.origin[v] = Origin::Root;
            self.dsu[v] = v;
            self.size[v] = 1;
            self.base[v] = v;
            self.is_dirty[v] = false;
        }
        self.queue.clear();
    }

    fn enlist(&mut self, v: VertexId) {
        if !self.is_dirty[v] {
            self.is_dirty[v] = true;
            self.dirty.push(v);
        }
    }

    fn make_root(&mut self, v: VertexId) {
        self.enlist(v);
        self.label[v] = Label::Even;
        self.root[v] = v;
        self.origin[v] = Origin::Root;
        self.queue.push_back(v);
    }

    fn find(&mut self, v: VertexId) -> usize {
        let mut r = v;
        while self.dsu[r] != r {
            r = self.dsu[r];
        }
        let mut x = v;
        while self.dsu[x] != r {
            let next = self.dsu[x];
            self.dsu[x] = r;
            x = next;
        }
        r
    }

    fn base_of(&mut self, v: VertexId) -> VertexId {
        let r = self.find(v);
        self.base[r]
    }

    /// Merges the blossom holding `v` into the one based at `b`.
    fn link(&mut self, v: VertexId, b: VertexId) {
        let (rv, rb) = (self.find(v), self.find(b));
        if rv == rb {
            return;
        }
        let (big, small) = if self.size[rv] >= self.size[rb] {
            (rv, rb)
        } else {
            (rb, rv)
        };
        self.dsu[small] = big;
        self.size[big] += self.size[small];
        self.base[big] = b;
    }

    /// Next base up the tree from base `u`, or NIL at the root.
    fn step_up(&mut self, u: VertexId, mate: &[usize]) -> usize {
        if mate[u] == NIL {
            NIL
        } else {
            let p = self.parent[mate[u]];
            self.base_of(p)
        }
    }

    fn lca(&mut self, mut a: VertexId, mut b: VertexId, mate: &[usize]) -> VertexId {
        self.stamp += 1;
        loop {
            if a != NIL {
                if self.mark[a] == self.stamp {
                    return a;
                }
                self.mark[a] = self.stamp;
                a = self.step_up(a, mate);
            }
            std::mem::swap(&mut a, &mut b);
        }
    }

    fn contract(&mut self, x: VertexId, y: VertexId, mate: &[usize]) {
        let (bx, by) = (self.base_of(x), self.base_of(y));
        let b = self.lca(bx, by, mate);
        for (from, to) in [(x, y), (y, x)] {
            let mut v = self.base_of(from);
            while v != b {
                let o = mate[v];
                self.label[o] = Label::Even;
                self.origin[o] = Origin::Bridge(from, to);
                self.queue.push_back(o);
                self.link(v, b);
                self.link(o, b);
                let p = self.parent[o];
                v = self.base_of(p);
            }
        }
    }

    /// Processes edge (x, y) with x even.
    fn consider(&mut self, x: VertexId, y: VertexId, mate: &[usize]) -> Option<Found> {
        if self.find(x) == self.find(y) {
            return None;
        }
        match self.label[y] {
            Label::Odd => None,
            Label::Unvisited if mate[y] == NIL => Some(Found::ToFree(x, y)),
            Label::Unvisited => {
                let z = mate[y];
                let r = self.root[x];
                self.enlist(y);
                self.enlist(z);
                self.label[y] = Label::Odd;
                self.parent[y] = x;
                self.root[y] = r;
                self.label[z] = Label::Even;
                self.origin[z] = Origin::Natural;
                self.root[z] = r;
                self.queue.push_back(z);
                None
            }
            Label::Even if self.root[x] != self.root[y] => Some(Found::Across(x, y)),
            Label::Even => {
                self.contract(x, y, mate);
                None
            }
        }
    }

    /// Scans queued even vertices (neighbors ascending) until an
    /// augmenting path appears or the queue drains.
    fn scan(&mut self, g: &DynGraph, mate: &[usize], meter: &mut CostMeter) -> Option<Found> {
        while let Some(x) = self.queue.pop_front() {
            let ns = g.sorted_neighbors(x);
            meter.touch(ns.len());
            for y in ns {
                if let Some(f) = self.consider(x, y, mate) {
                    return Some(f);
                }
            }
        }
        None
    }

    /// Even-length alternating path from even `v` down to `w`, starting
    /// with v's matched edge.
    fn trace(&self, mut v: VertexId, w: VertexId, mate: &[usize], out: &mut Vec<VertexId>) {
        loop {
            out.push(v);
            if v == w {
                return;
            }
            match self.origin[v] {
                Origin::Root => unreachable!("trace left its tree at {v}"),
                Origin::Natural => {
                    let u = mate[v];
                    out.push(u);
                    v = self.parent[u];
                }
                Origin::Bridge(x, y) => {
                    let mut inner = Vec::new();
                    self.trace(x, mate[v], mate, &mut inner);
                    inner.reverse();
                    out.extend(inner);
                    v = y;
                }
            }
        }
    }

    fn augmenting_path(&self, found: Found, mate: &[usize]) -> Vec<VertexId> {
        let mut path = Vec::new();
        let (x, y) = match found {
            Found::ToFree(x, y) | Found::Across(x, y) => (x, y),
        };
        self.trace(x, self.root[x], mate, &mut path);
        path.reverse();
        match found {
            Found::ToFree(..) => path.push(y),
            Found::Across(..) => self.trace(y, self.root[y], mate, &mut path),
        }
        path
    }
}

fn flip(path: &[VertexId], mate: &mut [usize]) {
    debug_assert!(path.len().is_multiple_of(2));
    for pair in path.chunks(2) {
        mate[pair[0]] = pair[1];
        mate[pair[1]] = pair[0];
    }
}

/// Mate symmetry, matched pairs being edges, and cardinality against the
/// static oracle.
fn audit_matching(g: &DynGraph, mate: &[usize], size: usize) -> Result<(), String> {
    let mut pairs = 0;
    for v in 0..mate.len() {
        let u = mate[v];
        if u == NIL {
            continue;
        }
        if !g.is_live(v) {
            return Err(format!("dead vertex {v} is matched"));
        }
        if u >= mate.len() || mate[u] != v {
            return Err(format!("mate of {v} is {u} but not symmetric"));
        }
        if !g.has_edge(u, v) {
            return Err(format!("matched pair ({v}, {u}) is not an edge"));
        }
        pairs += 1;
    }
    if pairs != 2 * size {
        return Err(format!("recorded size {size} but {} pairs", pairs / 2));
    }
    let best = static_max_matching(g);
    if best != size {
        return Err(format!("matching has {size} edges but maximum is {best}"));
    }
    Ok(())
}

fn mate_pairs(mate: &[usize]) -> Vec<(VertexId, VertexId)> {
    (0..mate.len())
        .filter(|&v| mate[v] != NIL && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect()
}

/// Maximum matching under all four update types, repaired by single-root
/// blossom searches.
#[derive(Debug, Clone)]
pub struct FullyDynamicMatching {
    g: DynGraph,
    mate: Vec<usize>,
    forest: BlossomForest,
    size: usize,
    meter: CostMeter,
}

impl FullyDynamicMatching {
    /// Builds a maximum matching of `g` by searching from each free vertex.
    pub fn new(g: DynGraph) -> Self {
        let mut s = FullyDynamicMatching {
            mate: vec![NIL; g.id_bound()],
            g,
            forest: BlossomForest::default(),
            size: 0,
            meter: CostMeter::default(),
        };
        let vs: Vec<_> = s.g.vertices().collect();
        for v in vs {
            if s.mate[v] == NIL {
                s.search_from(v);
            }
        }
        s.meter.adjustments = 0;
        s
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate.get(v).copied().filter(|&u| u != NIL)
    }

    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        mate_pairs(&self.mate)
    }

    fn grow(&mut self) {
        self.mate.resize(self.g.id_bound(), NIL);
        self.forest.grow(self.g.id_bound());
    }

    fn commit(&mut self, path: Vec<VertexId>) -> Vec<VertexId> {
        flip(&path, &mut self.mate);
        self.size += 1;
        self.meter.adjustments += path.len() as u64 - 1;
        path
    }

    fn search_from(&mut self, v: VertexId) -> Option<Vec<VertexId>> {
        self.grow();
        self.forest.reset();
        self.forest.make_root(v);
        let found = self.forest.scan(&self.g, &self.mate, &mut self.meter)?;
        let path = self.forest.augmenting_path(found, &self.mate);
        Some(self.commit(path))
    }

    /// One forest rooted at every free vertex; returns the first
    /// augmenting path found.
    fn search_all(&mut self) -> Option<Vec<VertexId>> {
        self.grow();
        self.forest.reset();
        let free: Vec<_> = self.g.vertices().filter(|&v| self.mate[v] == NIL).collect();
        for v in free {
            self.forest.make_root(v);
        }
        let found = self.forest.scan(&self.g, &self.mate, &mut self.meter)?;
        let path = self.forest.augmenting_path(found, &self.mate);
        Some(self.commit(path))
    }

    /// Searches for an augmenting path starting at free vertex `v` and
    /// applies it if found.
    pub fn augment_from(&mut self, v: VertexId) -> Result<Option<Vec<VertexId>>, MatchError> {
        if !self.g.is_live(v) {
            return Err(GraphError::UnknownVertex(v).into());
        }
        if self.mate[v] != NIL {
            return Err(MatchError::NotFree(v));
        }
        Ok(self.search_from(v))
    }

    fn unmatch(&mut self, x: VertexId, y: VertexId) {
        self.mate[x] = NIL;
        self.mate[y] = NIL;
        self.size -= 1;
        self.meter.adjustments += 1;
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<MatchDelta, MatchError> {
        let before = self.size as i64;
        let mut d = MatchDelta::default();
        match *event {
            UpdateEvent::InsertEdge(x, y) => {
                self.g.insert_edge(x, y)?;
                self.meter.touch(1);
                let (fx, fy) = (self.mate[x] == NIL, self.mate[y] == NIL);
                if fx && fy {
                    d.paths.push(self.commit(vec![x, y]));
                } else if fx || fy {
                    let v = if fx { x } else { y };
                    d.paths.extend(self.search_from(v));
                } else {
                    // both endpoints matched: the new edge can still sit in
                    // the middle of an augmenting path between two free
                    // vertices elsewhere, so search from all of them
                    d.paths.extend(self.search_all());
                }
            }
            UpdateEvent::DeleteEdge(x, y) => {
                self.g.delete_edge(x, y)?;
                self.meter.touch(1);
                if self.mate[x] == y {
                    self.unmatch(x, y);
                    d.unmatched = Some((x, y));
                    d.paths.extend(self.search_from(x));
                    if self.mate[y] == NIL {
                        d.paths.extend(self.search_from(y));
                    }
                }
            }
            UpdateEvent::InsertVertex(ref ns) => {
                let v = self.g.insert_vertex(ns)?;
                self.grow();
                self.meter.touch(1 + ns.len());
                d.paths.extend(self.search_from(v));
            }
            UpdateEvent::DeleteVertex(x) => {
                if !self.g.is_live(x) {
                    return Err(GraphError::UnknownVertex(x).into());
                }
                self.meter.touch(1);
                let y = self.mate[x];
                if y != NIL {
                    self.unmatch(x, y);
                    d.unmatched = Some((x.min(y), x.max(y)));
                }
                self.g.delete_vertex(x)?;
                if y != NIL {
                    d.paths.extend(self.search_from(y));
                }
            }
            UpdateEvent::QueryInMis(_) => return Err(MatchError::UnsupportedEvent("query")),
        }
        self.meter.updates += 1;
        d.delta = self.size as i64 - before;
        Ok(d)
    }

    pub fn audit(&self) -> Result<(), String> {
        audit_matching(&self.g, &self.mate, self.size)
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }

    #[cfg(test)]
    pub(crate) fn set_mate_unchecked(&mut self, v: VertexId, u: Option<VertexId>) {
        self.mate[v] = u.unwrap_or(NIL);
    }
}

/// Work spent during one stage (between augmentations) with the edge count
/// when it closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchStage {
    pub touched: u64,
    pub m_at_end: usize,
}

/// Insertion-only maximum matching with a persistent blossom forest rooted
/// at every free vertex.
#[derive(Debug, Clone)]
pub struct IncrementalMatching {
    g: DynGraph,
    mate: Vec<usize>,
    forest: BlossomForest,
    size: usize,
    meter: CostMeter,
    stage_touched: u64,
    stages: Vec<MatchStage>,
}

impl IncrementalMatching {
    pub fn new(g: DynGraph) -> Self {
        let mut s = IncrementalMatching {
            mate: vec![NIL; g.id_bound()],
            g,
            forest: BlossomForest::default(),
            size: 0,
            meter: CostMeter::default(),
            stage_touched: 0,
            stages: Vec::new(),
        };
        let mut d = MatchDelta::default();
        s.rebuild(&mut d);
        s.meter.adjustments = 0;
        s
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn meter(&self) -> &CostMeter {
        &self.meter
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate.get(v).copied().filter(|&u| u != NIL)
    }

    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        mate_pairs(&self.mate)
    }

    /// Closed stages followed by the one in progress.
    pub fn stages(&self) -> Vec<MatchStage> {
        let mut all = self.stages.clone();
        all.push(MatchStage {
            touched: self.stage_touched,
            m_at_end: self.g.m(),
        });
        all
    }

    fn grow(&mut self) {
        self.mate.resize(self.g.id_bound(), NIL);
        self.forest.grow(self.g.id_bound());
    }

    fn scan(&mut self) -> Option<Found> {
        let before = self.meter.edges_touched;
        let f = self.forest.scan(&self.g, &self.mate, &mut self.meter);
        self.stage_touched += self.meter.edges_touched - before;
        f
    }

    /// Flips the path for `found`, then rebuilds the forest, repeating
    /// while the rebuilt forest still finds a path.
    fn settle(&mut self, mut found: Option<Found>, d: &mut MatchDelta) {
        while let Some(f) = found {
            let path = self.forest.augmenting_path(f, &self.mate);
            flip(&path, &mut self.mate);
            self.size += 1;
            self.meter.adjustments += path.len() as u64 - 1;
            d.paths.push(path);
            self.stages.push(MatchStage {
                touched: self.stage_touched,
                m_at_end: self.g.m(),
            });
            self.stage_touched = 0;
            found = self.rebuild_forest();
        }
    }

    fn rebuild_forest(&mut self) -> Option<Found> {
        self.grow();
        self.forest.reset();
        let free: Vec<_> = self.g.vertices().filter(|&v| self.mate[v] == NIL).collect();
        for v in free {
            self.forest.make_root(v);
        }
        self.scan()
    }

    fn rebuild(&mut self, d: &mut MatchDelta) {
        let f = self.rebuild_forest();
        self.settle(f, d);
    }

    fn feed(&mut self, x: VertexId, y: VertexId, d: &mut MatchDelta) -> Result<(), MatchError> {
        self.g.insert_edge(x, y)?;
        self.meter.touch(1);
        self.stage_touched += 1;
        let mut found = match (self.forest.label[x], self.forest.label[y]) {
            (Label::Even, _) => self.forest.consider(x, y, &self.mate),
            (_, Label::Even) => self.forest.consider(y, x, &self.mate),
            _ => None,
        };
        if found.is_none() {
            found = self.scan();
        }
        self.settle(found, d);
        Ok(())
    }

    pub fn blossom_feed(&mut self, event: &UpdateEvent) -> Result<MatchDelta, MatchError> {
        let before = self.size as i64;
        let mut d = MatchDelta::default();
        match *event {
            UpdateEvent::InsertEdge(x, y) => self.feed(x, y, &mut d)?,
            UpdateEvent::InsertVertex(ref ns) => {
                self.g.validate_neighbors(ns)?;
                let v = self.g.insert_vertex(&[])?;
                self.grow();
                self.forest.make_root(v);
                self.meter.touch(1);
                for &w in ns {
                    self.feed(v, w, &mut d)?;
                }
            }
            UpdateEvent::DeleteEdge(..) | UpdateEvent::DeleteVertex(_) => {
                return Err(MatchError::NotIncremental)
            }
            UpdateEvent::QueryInMis(_) => return Err(MatchError::UnsupportedEvent("query")),
        }
        self.meter.updates += 1;
        d.delta = self.size as i64 - before;
        Ok(d)
    }

    pub fn apply(&mut self, event: &UpdateEvent) -> Result<MatchDelta, MatchError> {
        self.blossom_feed(event)
    }

    pub fn audit(&self) -> Result<(), String> {
        audit_matching(&self.g, &self.mate, self.size)
    }

    pub fn verify(&self) -> bool {
        self.audit().is_ok()
    }
}

/// Cardinality check of an arbitrary matching against the oracle.
pub fn match_oracle_check(g: &DynGraph, size: usize) -> OracleReport {
    let best = static_max_matching(g);
    if best == size {
        OracleReport::pass()
    } else {
        OracleReport::fail(format!("matching has {size} edges but maximum is {best}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use UpdateEvent::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DynGraph {
        DynGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn single_edge_matches() {
        let mut s = FullyDynamicMatching::new(DynGraph::new(2));
        let d = s.apply(&InsertEdge(0, 1)).unwrap();
        assert_eq!(d.paths, vec![vec![0, 1]]);
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn path_of_four_augments_through_middle() {
        let mut s = FullyDynamicMatching::new(DynGraph::new(4));
        for (u, v) in [(1, 2), (0, 1), (2, 3)] {
            s.apply(&InsertEdge(u, v)).unwrap();
        }
        assert_eq!(s.size(), 2);
        assert!(s.verify());

        let mut t = FullyDynamicMatching::new(graph(4, &[(0, 1), (1, 2), (2, 3)]));
        t.set_mate_unchecked(0, None);
        t.set_mate_unchecked(1, Some(2));
        t.set_mate_unchecked(2, Some(1));
        t.set_mate_unchecked(3, None);
        t.size = 1;
        let p = t.augment_from(0).unwrap().unwrap();
        assert_eq!(p, vec![0, 1, 2, 3]);
        assert_eq!(t.size(), 2);
    }

    #[test]
    fn blossom_with_stem() {
        // triangle 0-1-2 with (1,2) matched, pendant 3 on 2
        let mut s = FullyDynamicMatching::new(graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]));
        s.set_mate_unchecked(0, None);
        s.set_mate_unchecked(3, None);
        s.set_mate_unchecked(1, Some(2));
        s.set_mate_unchecked(2, Some(1));
        s.size = 1;
        let p = s.augment_from(0).unwrap().unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(s.size(), 2);
        assert!(s.verify());
        assert_eq!(s.augment_from(1), Err(MatchError::NotFree(1)));
    }

    #[test]
    fn both_matched_endpoints_can_open_a_path() {
        // a-p x-y q-b with (p,x) and (y,q) matched; joining x-y frees a path
        let mut s = FullyDynamicMatching::new(graph(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]));
        for v in 0..6 {
            s.set_mate_unchecked(v, None);
        }
        for (a, b) in [(1, 2), (3, 4)] {
            s.set_mate_unchecked(a, Some(b));
            s.set_mate_unchecked(b, Some(a));
        }
        assert!(s.verify());
        let d = s.apply(&InsertEdge(2, 3)).unwrap();
        assert_eq!(d.delta, 1);
        assert_eq!(s.size(), 3);
        assert!(s.verify());
    }

    #[test]
    fn deleting_matched_edge_two_searches() {
        // 4-path 0-1-2-3 plus 1-4 and 2-5: after losing (0,1), 1 finds 4
        let mut s = FullyDynamicMatching::new(graph(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]));
        assert_eq!(s.size(), 2);
        let (a, b) = s.pairs()[0];
        let d = s.apply(&DeleteEdge(a, b)).unwrap();
        assert_eq!(d.delta, 0);
        assert!(s.verify());
    }

    #[test]
    fn deleting_irreplaceable_edge_loses_one() {
        let mut s = FullyDynamicMatching::new(graph(2, &[(0, 1)]));
        let d = s.apply(&DeleteEdge(0, 1)).unwrap();
        assert_eq!(d.delta, -1);
        assert_eq!(d.unmatched, Some((0, 1)));
        assert!(s.verify());
    }

    #[test]
    fn vertex_updates() {
        let mut s = FullyDynamicMatching::new(graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(s.size(), 1);
        s.apply(&InsertVertex(vec![0, 2])).unwrap();
        assert_eq!(s.size(), 2);
        s.apply(&DeleteVertex(1)).unwrap();
        assert!(s.verify());
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn verify_rejects_bad_states() {
        let mut s = FullyDynamicMatching::new(graph(3, &[(0, 1), (1, 2)]));
        s.set_mate_unchecked(2, Some(1));
        assert!(!s.verify());
        let mut t = FullyDynamicMatching::new(graph(4, &[(0, 1), (1, 2), (2, 3)]));
        for v in 0..4 {
            t.set_mate_unchecked(v, None);
        }
        t.set_mate_unchecked(1, Some(2));
        t.set_mate_unchecked(2, Some(1));
        t.size = 1;
        assert!(!t.verify());
    }

    #[test]
    fn incremental_first_edge_and_odd_ignore() {
        let mut s = IncrementalMatching::new(DynGraph::new(6));
        assert_eq!(s.apply(&InsertEdge(0, 1)).unwrap().delta, 1);
        s.apply(&InsertEdge(2, 3)).unwrap();
        // 0-1 and 2-3 matched, no free roots nearby; edge between matched
        // vertices outside the forest is ignored
        let d = s.apply(&InsertEdge(1, 2)).unwrap();
        assert_eq!(d.delta, 0);
        assert_eq!(s.apply(&DeleteEdge(0, 1)), Err(MatchError::NotIncremental));
        assert!(s.verify());
    }

    #[test]
    fn incremental_five_cycle() {
        let mut s = IncrementalMatching::new(DynGraph::new(5));
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
            s.apply(&InsertEdge(u, v)).unwrap();
            assert!(s.verify());
        }
        assert_eq!(s.size(), 2);
    }

    #[test]
    fn incremental_flower() {
        // blossom 0-1-2-3-4 (odd cycle) with stem 4-5 and later 2-6
        let mut s = IncrementalMatching::new(DynGraph::new(8));
        for (u, v) in [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 6),
            (3, 5),
            (1, 7),
        ] {
            s.apply(&InsertEdge(u, v)).unwrap();
            assert!(s.verify());
        }
        assert_eq!(s.size(), 4);
    }
}
