//! Dynamic undirected simple graph.
//!
//! Vertex ids are dense and never recycled: a deleted id stays retired for
//! the rest of the run so update streams replay identically. Adjacency is an
//! insertion-ordered hash set per vertex, which gives O(1) expected
//! membership/insert/delete and iteration proportional to degree. Iteration
//! order depends only on the sequence of mutations, never on hasher state.

use indexmap::IndexSet;
use thiserror::Error;

/// Dense vertex identifier.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) already present")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(VertexId, VertexId),
    #[error("vertex {0} is not live")]
    UnknownVertex(VertexId),
    #[error("neighbor {0} listed twice")]
    DuplicateNeighbor(VertexId),
}

#[derive(Debug, Clone, Default)]
pub struct DynGraph {
    adj: Vec<Option<IndexSet<VertexId>>>,
    n: usize,
    m: usize,
}

impl DynGraph {
    /// Graph with `n` live isolated vertices `0..n`.
    pub fn new(n: usize) -> Self {
        DynGraph {
            adj: (0..n).map(|_| Some(IndexSet::new())).collect(),
            n,
            m: 0,
        }
    }

    /// Builds a graph from an edge list, validating every edge.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = DynGraph::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// One past the largest id ever issued. Per-vertex arrays are sized by this.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        matches!(self.adj.get(v), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(|(v, a)| a.as_ref().map(|_| v))
    }

    /// Degree of `v`; zero for retired ids.
    pub fn degree(&self, v: VertexId) -> usize {
        match self.adj.get(v) {
            Some(Some(a)) => a.len(),
            _ => 0,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj
            .iter()
            .flatten()
            .map(|a| a.len())
            .max()
            .unwrap_or(0)
    }

    /// Neighbors of `v` in deterministic (mutation-history) order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .get(v)
            .and_then(|a| a.as_ref())
            .into_iter()
            .flat_map(|a| a.iter().copied())
    }

    /// Neighbors of `v` in ascending id order.
    pub fn sorted_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<_> = self.neighbors(v).collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match self.adj.get(u) {
            Some(Some(a)) => a.contains(&v),
            _ => false,
        }
    }

    /// All edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for w in self.neighbors(u) {
                if u < w {
                    out.push((u, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn live(&self, v: VertexId) -> Result<(), GraphError> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn set_mut(&mut self, v: VertexId) -> &mut IndexSet<VertexId> {
        self.adj[v].as_mut().expect("live vertex")
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.live(u)?;
        self.live(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u, v));
        }
        self.set_mut(u).insert(v);
        self.set_mut(v).insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.set_mut(u).swap_remove(&v);
        self.set_mut(v).swap_remove(&u);
        self.m -= 1;
        Ok(())
    }

    /// Appends a fresh vertex adjacent to `neighbors` and returns its id.
    /// Nothing is mutated if validation fails.
    pub fn insert_vertex(&mut self, neighbors: &[VertexId]) -> Result<VertexId, GraphError> {
        let set = self.neighbor_set(neighbors)?;
        let id = self.adj.len();
        for &w in neighbors {
            self.set_mut(w).insert(id);
        }
        self.m += set.len();
        self.adj.push(Some(set));
        self.n += 1;
        Ok(id)
    }

    /// Checks that `neighbors` are live and distinct, as required for a
    /// vertex insertion.
    pub fn validate_neighbors(&self, neighbors: &[VertexId]) -> Result<(), GraphError> {
        self.neighbor_set(neighbors).map(|_| ())
    }

    fn neighbor_set(&self, neighbors: &[VertexId]) -> Result<IndexSet<VertexId>, GraphError> {
        let mut set = IndexSet::with_capacity(neighbors.len());
        for &w in neighbors {
            self.live(w)?;
            if !set.insert(w) {
                return Err(GraphError::DuplicateNeighbor(w));
            }
        }
        Ok(set)
    }

    /// Appends `count` isolated vertices.
    pub fn add_isolated(&mut self, count: usize) {
        self.adj.extend((0..count).map(|_| Some(IndexSet::new())));
        self.n += count;
    }

    /// Removes `v` and all incident edges; returns its former neighbors.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.live(v)?;
        let set = self.adj[v].take().expect("live vertex");
        for &w in &set {
            self.set_mut(w).swap_remove(&v);
        }
        self.m -= set.len();
        self.n -= 1;
        Ok(set.into_iter().collect())
    }

    /// Full-scan consistency check: symmetry, no loops, degree sum = 2m, n count.
    pub fn audit(&self) -> Result<(), String> {
        let mut deg_sum = 0;
        let mut live = 0;
        for (v, a) in self.adj.iter().enumerate() {
            let Some(a) = a else { continue };
            live += 1;
            deg_sum += a.len();
            for &w in a {
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.has_edge(w, v) {
                    return Err(format!("asymmetric adjacency {v}->{w}"));
                }
            }
        }
        if live != self.n {
            return Err(format!("live count {live} != n {}", self.n));
        }
        if deg_sum != 2 * self.m {
            return Err(format!("degree sum {deg_sum} != 2m = {}", 2 * self.m));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_edge_updates_degree_and_m() {
        let mut g = DynGraph::new(2);
        g.insert_edge(0, 1).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn duplicate_and_loop_rejected() {
        let mut g = DynGraph::new(2);
        g.insert_edge(0, 1).unwrap();
        assert_eq!(g.insert_edge(0, 1), Err(GraphError::ParallelEdge(0, 1)));
        assert_eq!(g.insert_edge(1, 0), Err(GraphError::ParallelEdge(1, 0)));
        assert_eq!(g.insert_edge(0, 0), Err(GraphError::SelfLoop(0)));
        assert_eq!(g.insert_edge(0, 7), Err(GraphError::UnknownVertex(7)));
    }

    #[test]
    fn delete_edge_cases() {
        let mut g = DynGraph::from_edges(2, &[(0, 1)]).unwrap();
        g.delete_edge(0, 1).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g.delete_edge(0, 1), Err(GraphError::MissingEdge(0, 1)));

        let mut tri = DynGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        tri.delete_edge(1, 2).unwrap();
        assert_eq!((tri.degree(0), tri.degree(1), tri.degree(2)), (2, 1, 1));
    }

    #[test]
    fn insert_vertex_cases() {
        let mut g = DynGraph::new(0);
        assert_eq!(g.insert_vertex(&[]).unwrap(), 0);
        assert_eq!(g.degree(0), 0);

        let mut g = DynGraph::new(2);
        let id = g.insert_vertex(&[0, 1]).unwrap();
        assert_eq!((id, g.degree(id), g.m()), (2, 2, 2));
        assert_eq!(
            g.insert_vertex(&[0, 0]),
            Err(GraphError::DuplicateNeighbor(0))
        );
        assert_eq!(g.n(), 3);
        g.audit().unwrap();
    }

    #[test]
    fn delete_vertex_cases() {
        let mut star = DynGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        star.delete_vertex(0).unwrap();
        assert_eq!((star.m(), star.n()), (0, 3));
        assert_eq!(star.delete_vertex(0), Err(GraphError::UnknownVertex(0)));

        let mut g = DynGraph::new(2);
        g.delete_vertex(1).unwrap();
        assert_eq!(g.n(), 1);
        // retired ids are not reused
        assert_eq!(g.insert_vertex(&[]).unwrap(), 2);
        g.audit().unwrap();
    }
}
