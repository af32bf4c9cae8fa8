//! Update-stream generators: the two adversarial insertion sequences that
//! make the count-based algorithms pay their worst case, and seeded random
//! streams for property tests.

use indexmap::IndexSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DynGraph, VertexId};
use crate::stream::{StreamHeader, UpdateEvent, UpdateStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    SpecViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Arbitrary-removal worst case: Θ(mΔ) total work under first-endpoint removal.
    ArbitraryRemoval,
    /// Degree-biased worst case: Θ(m√m) total work under lower-degree removal.
    DegreeBiased,
    /// Undirected mixed stream for the MIS structures.
    RandomEdges,
    /// Directed edge stream with terminals 0 and n-1.
    RandomFlow,
    /// Undirected mixed stream for matching.
    RandomMatching,
}

/// Parameters for every family. Fields a family does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    pub family: Family,
    /// Edge budget (adversarial families).
    pub m: usize,
    /// Degree cap (arbitrary-removal only).
    pub delta: usize,
    /// Vertex count at stream start (random families).
    pub n: usize,
    pub seed: u64,
    /// Number of events (random families).
    pub events: usize,
    /// Probability that an edge event is an insertion.
    pub p_insert: f64,
    /// Probability of a vertex insertion or deletion instead of an edge event.
    pub p_vertex: f64,
    /// Probability of an `In-MIS` query after each update.
    pub p_query: f64,
}

impl GenSpec {
    pub fn arbitrary_removal(m: usize, delta: usize) -> Self {
        GenSpec {
            family: Family::ArbitraryRemoval,
            m,
            delta,
            ..Self::random(Family::ArbitraryRemoval, 0, 0, 0)
        }
    }

    pub fn degree_biased(m: usize) -> Self {
        GenSpec {
            m,
            ..Self::random(Family::DegreeBiased, 0, 0, 0)
        }
    }

    /// Random stream of `events` edge events on `n` vertices, with
    /// insertions twice as likely as deletions and no vertex events or
    /// queries; adjust the probability fields to taste.
    pub fn random(family: Family, n: usize, events: usize, seed: u64) -> Self {
        GenSpec {
            family,
            m: 0,
            delta: 0,
            n,
            seed,
            events,
            p_insert: 2.0 / 3.0,
            p_vertex: 0.0,
            p_query: 0.0,
        }
    }

    pub fn generate(&self) -> Result<UpdateStream, GenError> {
        match self.family {
            Family::ArbitraryRemoval => gen_arbitrary_removal(self.m, self.delta),
            Family::DegreeBiased => gen_degree_biased(self.m),
            _ => gen_random(self),
        }
    }
}

fn violation(msg: impl Into<String>) -> GenError {
    GenError::SpecViolation(msg.into())
}

/// Sequence where first-endpoint removal keeps evicting the same k
/// low-degree vertices: A = {0..k}, hub b_0 = k, b_j = k + j. Phase j joins
/// every a_i to b_j (a_i listed first), then b_j to b_0, which evicts b_j
/// and readmits all of A. The hub never leaves M, so no earlier b_j can
/// re-enter and shield A.
pub fn gen_arbitrary_removal(m: usize, delta: usize) -> Result<UpdateStream, GenError> {
    if delta < 2 {
        return Err(violation(format!("delta = {delta} must be at least 2")));
    }
    if m > delta * delta {
        return Err(violation(format!(
            "m = {m} exceeds delta^2 = {}",
            delta * delta
        )));
    }
    let k = m / delta;
    if k == 0 {
        return Err(violation(format!(
            "m = {m} below delta = {delta} leaves A empty"
        )));
    }
    let hub = k;
    let mut events = Vec::with_capacity(k * delta + delta);
    for j in 1..=delta {
        let b = k + j;
        for a in 0..k {
            events.push(UpdateEvent::InsertEdge(a, b));
        }
        events.push(UpdateEvent::InsertEdge(b, hub));
    }
    Ok(UpdateStream::new(Some(k + delta + 1), events))
}

/// Sequence where lower-degree removal still evicts all of A in every
/// phase. Ids: A = {0..k}, b_0 = k, b_1..b_t = k+1..=k+t, then C in t
/// blocks of s vertices. Setup joins each b_i to its block and b_0 to all
/// of C; phase j joins every a_i to b_j, then b_j to b_0.
pub fn gen_degree_biased(m: usize) -> Result<UpdateStream, GenError> {
    if m < 64 {
        return Err(violation(format!("m = {m} below 64")));
    }
    let r = m.isqrt();
    let (k, t, s) = (r / 4, r / 4, r + 1);
    let b0 = k;
    let b = |i: usize| k + i;
    let c0 = k + t + 1;
    let n = c0 + t * s;
    let mut events = Vec::with_capacity(2 * t * s + k * t + t);
    for i in 1..=t {
        let block = c0 + (i - 1) * s;
        for c in block..block + s {
            events.push(UpdateEvent::InsertEdge(b(i), c));
        }
    }
    for c in c0..n {
        events.push(UpdateEvent::InsertEdge(b0, c));
    }
    for j in 1..=t {
        for a in 0..k {
            events.push(UpdateEvent::InsertEdge(a, b(j)));
        }
        events.push(UpdateEvent::InsertEdge(b(j), b0));
    }
    Ok(UpdateStream::new(Some(n), events))
}

/// Live-state simulator shared by the random families.
struct Sim {
    rng: ChaCha8Rng,
    directed: bool,
    live: IndexSet<VertexId>,
    next_id: VertexId,
    edges: IndexSet<(VertexId, VertexId)>,
    g: DynGraph,
}

impl Sim {
    fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if self.directed {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        }
    }

    fn pick_live(&mut self) -> VertexId {
        let i = self.rng.gen_range(0..self.live.len());
        self.live[i]
    }

    fn try_insert(&mut self) -> Option<UpdateEvent> {
        if self.live.len() < 2 {
            return None;
        }
        for _ in 0..32 {
            let (u, v) = (self.pick_live(), self.pick_live());
            if u != v && !self.edges.contains(&self.key(u, v)) {
                self.edges.insert(self.key(u, v));
                if !self.directed {
                    self.g.insert_edge(u, v).expect("simulated edge is fresh");
                }
                return Some(UpdateEvent::InsertEdge(u, v));
            }
        }
        None
    }

    fn try_delete(&mut self) -> Option<UpdateEvent> {
        if self.edges.is_empty() {
            return None;
        }
        let i = self.rng.gen_range(0..self.edges.len());
        let (u, v) = self.edges.swap_remove_index(i).expect("index in range");
        if !self.directed {
            self.g.delete_edge(u, v).expect("simulated edge exists");
        }
        Some(UpdateEvent::DeleteEdge(u, v))
    }

    fn vertex_event(&mut self, allow_delete: bool) -> UpdateEvent {
        if allow_delete && self.live.len() > 2 && self.rng.gen_bool(0.5) {
            let v = self.pick_live();
            self.live.swap_remove(&v);
            for w in self.g.delete_vertex(v).expect("live vertex") {
                self.edges.swap_remove(&self.key(v, w));
            }
            UpdateEvent::DeleteVertex(v)
        } else {
            let d = self.rng.gen_range(0..=3.min(self.live.len()));
            let mut pool: Vec<_> = self.live.iter().copied().collect();
            pool.sort_unstable();
            let ns: Vec<_> = pool.choose_multiple(&mut self.rng, d).copied().collect();
            let v = self.next_id;
            self.next_id += 1;
            let id = self.g.insert_vertex(&ns).expect("validated neighbors");
            debug_assert_eq!(id, v);
            for &w in &ns {
                self.edges.insert(self.key(v, w));
            }
            self.live.insert(v);
            UpdateEvent::InsertVertex(ns)
        }
    }
}

/// Seeded random stream; identical specs give identical streams.
pub fn gen_random(spec: &GenSpec) -> Result<UpdateStream, GenError> {
    if spec.n < 2 {
        return Err(violation(format!("n = {} below 2", spec.n)));
    }
    for (name, p) in [
        ("p_insert", spec.p_insert),
        ("p_vertex", spec.p_vertex),
        ("p_query", spec.p_query),
    ] {
        if !(0.0..=1.0).contains(&p) {
            return Err(violation(format!("{name} = {p} outside [0, 1]")));
        }
    }
    let directed = spec.family == Family::RandomFlow;
    if directed && spec.p_vertex > 0.0 {
        return Err(violation("flow streams carry edge events only"));
    }
    let mut sim = Sim {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        directed,
        live: (0..spec.n).collect(),
        next_id: spec.n,
        edges: IndexSet::new(),
        g: DynGraph::new(spec.n),
    };
    let queries = spec.family == Family::RandomEdges && spec.p_query > 0.0;
    let mut events = Vec::with_capacity(spec.events);
    while events.len() < spec.events {
        let ev = if spec.p_vertex > 0.0 && sim.rng.gen_bool(spec.p_vertex) {
            Some(sim.vertex_event(spec.p_insert < 1.0))
        } else if spec.p_insert >= 1.0 {
            // pure insertion streams end once the graph saturates
            sim.try_insert()
        } else if sim.rng.gen_bool(spec.p_insert) {
            sim.try_insert().or_else(|| sim.try_delete())
        } else {
            sim.try_delete().or_else(|| sim.try_insert())
        };
        let Some(ev) = ev else {
            break;
        };
        events.push(ev);
        if queries && events.len() < spec.events && sim.rng.gen_bool(spec.p_query) {
            let v = sim.pick_live();
            events.push(UpdateEvent::QueryInMis(v));
        }
    }
    let mut stream = UpdateStream::new(Some(spec.n), events);
    if directed {
        stream.header = StreamHeader {
            n: Some(spec.n),
            flow: Some((0, spec.n - 1)),
        };
    }
    Ok(stream)
}
