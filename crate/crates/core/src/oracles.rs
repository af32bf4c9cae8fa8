//! Brute-force reference implementations used as ground truth in tests.
//!
//! Nothing here shares code with the dynamic structures it validates: the
//! matching oracle is a separate array-based Edmonds search and the flow
//! oracle runs Edmonds-Karp on its own paired-arc residual representation.

use std::collections::VecDeque;

use crate::graph::{DynGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub ok: bool,
    pub detail: String,
}

impl OracleReport {
    pub fn pass() -> Self {
        OracleReport {
            ok: true,
            detail: String::new(),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        let detail = detail.into();
        debug_assert!(!detail.is_empty());
        OracleReport { ok: false, detail }
    }
}

/// Checks that `set` is independent and dominating in `g` by a full scan.
pub fn is_mis(g: &DynGraph, set: &[VertexId]) -> OracleReport {
    let mut member = vec![false; g.id_bound()];
    for &v in set {
        if !g.is_live(v) {
            return OracleReport::fail(format!("vertex {v} in set is not live"));
        }
        member[v] = true;
    }
    for u in g.vertices() {
        let mut covered = member[u];
        for w in g.neighbors(u) {
            if member[u] && member[w] {
                return OracleReport::fail(format!("edge ({u}, {w}) inside the set"));
            }
            covered |= member[w];
        }
        if !covered {
            return OracleReport::fail(format!("vertex {u} has no neighbor in the set"));
        }
    }
    OracleReport::pass()
}

/// Greedy MIS visiting `order`; returns members in ascending order.
pub fn static_mis(g: &DynGraph, order: &[VertexId]) -> Vec<VertexId> {
    let mut member = vec![false; g.id_bound()];
    for &v in order {
        if !g.neighbors(v).any(|w| member[w]) {
            member[v] = true;
        }
    }
    (0..member.len()).filter(|&v| member[v]).collect()
}

/// Unit-capacity maximum flow value by repeated shortest augmenting paths.
pub fn static_max_flow(
    n: usize,
    s: VertexId,
    t: VertexId,
    edges: &[(VertexId, VertexId)],
) -> usize {
    if s == t {
        return 0;
    }
    // arc i and arc i^1 are mutual reverses
    let mut head = Vec::with_capacity(2 * edges.len());
    let mut cap = Vec::with_capacity(2 * edges.len());
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        out[u].push(head.len());
        head.push(v);
        cap.push(1u8);
        out[v].push(head.len());
        head.push(u);
        cap.push(0u8);
    }
    let mut value = 0;
    loop {
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &a in &out[x] {
                let y = head[a];
                if cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return value;
        }
        let mut y = t;
        while y != s {
            let a = via[y];
            cap[a] -= 1;
            cap[a ^ 1] += 1;
            y = head[a ^ 1];
        }
        value += 1;
    }
}

const NIL: usize = usize::MAX;

/// Maximum matching cardinality via a from-scratch Edmonds blossom search
/// rooted at each free vertex in turn.
pub fn static_max_matching(g: &DynGraph) -> usize {
    let n = g.id_bound();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.sorted_neighbors(v)).collect();
    let mut mate = vec![NIL; n];
    let mut size = 0;
    for root in 0..n {
        if !g.is_live(root) || mate[root] != NIL {
            continue;
        }
        if let Some((end, parent)) = edmonds_search(&adj, &mate, root) {
            let mut v = end;
            while v != NIL {
                let pv = parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
            size += 1;
        }
    }
    size
}

fn edmonds_search(adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<(usize, Vec<usize>)> {
    let n = adj.len();
    let mut used = vec![false; n];
    let mut parent = vec![NIL; n];
    let mut base: Vec<usize> = (0..n).collect();
    used[root] = true;
    let mut queue = VecDeque::from([root]);

    let lca = |base: &[usize], parent: &[usize], mut a: usize, mut b: usize| -> usize {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NIL {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NIL && parent[mate[to]] != NIL) {
                let cur = lca(&base, &parent, v, to);
                let mut in_blossom = vec![false; n];
                for (mut x, mut child) in [(v, to), (to, v)] {
                    while base[x] != cur {
                        in_blossom[base[x]] = true;
                        in_blossom[base[mate[x]]] = true;
                        parent[x] = child;
                        child = mate[x];
                        x = parent[mate[x]];
                    }
                }
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NIL {
                parent[to] = v;
                if mate[to] == NIL {
                    return Some((to, parent));
                }
                let next = mate[to];
                used[next] = true;
                queue.push_back(next);
            }
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod brute {
    //! Exhaustive enumerators, usable only at tiny sizes.
    use super::*;

    pub fn max_matching_exhaustive(g: &DynGraph) -> usize {
        fn go(edges: &[(usize, usize)], i: usize, used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(edges, i + 1, used);
            let (u, v) = edges[i];
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + go(edges, i + 1, used);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        let edges = g.edges();
        go(&edges, 0, &mut vec![false; g.id_bound()])
    }

    pub fn min_cut_exhaustive(n: usize, s: usize, t: usize, edges: &[(usize, usize)]) -> usize {
        assert!(n <= 16);
        let mut best = usize::MAX;
        for mask in 0u32..(1 << n) {
            if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
                continue;
            }
            let cut = edges
                .iter()
                .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 0)
                .count();
            best = best.min(cut);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::brute::*;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DynGraph {
        DynGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn is_mis_examples() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(is_mis(&tri, &[0]).ok);
        let r = is_mis(&tri, &[0, 1]);
        assert!(!r.ok && !r.detail.is_empty());
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert!(is_mis(&path, &[1]).ok);
        assert!(!is_mis(&path, &[0]).ok);
    }

    #[test]
    fn static_mis_examples() {
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(static_mis(&star, &[0, 1, 2, 3]), vec![0]);
        assert_eq!(static_mis(&star, &[1, 2, 3, 0]), vec![1, 2, 3]);
        let empty = graph(4, &[]);
        assert_eq!(static_mis(&empty, &[3, 1, 0, 2]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn static_max_flow_examples() {
        assert_eq!(static_max_flow(2, 0, 1, &[(0, 1)]), 1);
        // three disjoint s-t paths through 2, 3, 4
        let k3 = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)];
        assert_eq!(static_max_flow(5, 0, 1, &k3), 3);
        // diamond s=0, a=1, b=2, t=3 plus crossing a->b
        let diamond = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)];
        assert_eq!(min_cut_exhaustive(4, 0, 3, &diamond), 2);
        assert_eq!(static_max_flow(4, 0, 3, &diamond), 2);
    }

    #[test]
    fn static_max_matching_examples() {
        assert_eq!(static_max_matching(&graph(2, &[(0, 1)])), 1);
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(max_matching_exhaustive(&c5), 2);
        assert_eq!(static_max_matching(&c5), 2);
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(max_matching_exhaustive(&c6), 3);
        assert_eq!(static_max_matching(&c6), 3);
    }

    #[test]
    fn matching_oracle_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=8);
            let p: f64 = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = graph(n, &edges);
            assert_eq!(
                static_max_matching(&g),
                max_matching_exhaustive(&g),
                "edges {edges:?}"
            );
        }
    }

    #[test]
    fn matching_oracle_agrees_up_to_twelve_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let n = rng.gen_range(9..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.25) {
                        edges.push((u, v));
                    }
                }
            }
            let g = graph(n, &edges);
            assert_eq!(static_max_matching(&g), max_matching_exhaustive(&g));
        }
    }

    #[test]
    fn flow_oracle_agrees_with_min_cut() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2_000 {
            let n = rng.gen_range(2..=10);
            let s = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n);
            if t == s {
                t = (s + 1) % n;
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            assert_eq!(
                static_max_flow(n, s, t, &edges),
                min_cut_exhaustive(n, s, t, &edges),
                "n={n} s={s} t={t} edges={edges:?}"
            );
        }
    }
}
