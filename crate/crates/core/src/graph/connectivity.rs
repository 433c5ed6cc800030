use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Graphs up to this order use exhaustive separator enumeration.
const BRUTE_FORCE_LIMIT: usize = 12;

/// Vertex connectivity `v(G)`; `n − 1` for complete graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if g.n() < 2 {
        return Err(Error::TooSmall { needed: 2, have: g.n() });
    }
    if g.n() > BRUTE_FORCE_LIMIT {
        return vertex_connectivity_maxflow(g);
    }
    if g.is_complete() {
        return Ok(g.n() - 1);
    }
    let n = g.n();
    // smallest k such that removing some k-set leaves a disconnected graph
    for k in 0..n - 1 {
        let mut found = false;
        for_each_subset(n, k, &mut |set| {
            let mut removed = vec![false; n];
            for &v in set {
                removed[v] = true;
            }
            if !g.is_connected_without(&removed) {
                found = true;
            }
            found
        });
        if found {
            return Ok(k);
        }
    }
    Ok(n - 1)
}

/// Edge connectivity `e(G)`.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, have: n });
    }
    if n > BRUTE_FORCE_LIMIT {
        return edge_connectivity_maxflow(g);
    }
    // minimum cut over all vertex bipartitions with vertex 0 on the left
    let mut best = usize::MAX;
    for mask in 0u32..(1 << (n - 1)) {
        let side = |v: usize| v == 0 || (mask >> (v - 1)) & 1 == 0;
        if (1..n).all(side) {
            continue;
        }
        let cut = g.edges().iter().filter(|&&(u, v)| side(u) != side(v)).count();
        best = best.min(cut);
    }
    Ok(best)
}

/// Vertex connectivity via Menger's theorem and unit-capacity max flow.
pub fn vertex_connectivity_maxflow(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, have: n });
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            // split each vertex x into x_in = 2x, x_out = 2x + 1
            let mut net = FlowNetwork::new(2 * n);
            for x in 0..n {
                let cap = if x == s || x == t { n as i64 } else { 1 };
                net.add_edge(2 * x, 2 * x + 1, cap);
            }
            for &(u, v) in g.edges() {
                net.add_edge(2 * u + 1, 2 * v, n as i64);
                net.add_edge(2 * v + 1, 2 * u, n as i64);
            }
            let f = net.max_flow(2 * s + 1, 2 * t, best as i64) as usize;
            best = best.min(f);
        }
    }
    Ok(best)
}

/// Edge connectivity via unit-capacity max flow from vertex 0.
pub fn edge_connectivity_maxflow(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, have: n });
    }
    let mut best = usize::MAX;
    for t in 1..n {
        let mut net = FlowNetwork::new(n);
        for &(u, v) in g.edges() {
            net.add_edge(u, v, 1);
            net.add_edge(v, u, 1);
        }
        best = best.min(net.max_flow(0, t, i64::MAX) as usize);
    }
    Ok(best)
}

/// Vertices whose deletion disconnects a connected graph.
pub fn cut_vertices(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    Ok((0..n)
        .filter(|&v| {
            let mut removed = vec![false; n];
            removed[v] = true;
            n > 2 && !g.is_connected_without(&removed)
        })
        .collect())
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if rec(v + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Residual network for Edmonds–Karp.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Max flow from `s` to `t`, stopping early once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.head.len();
        let mut flow = 0;
        while flow < limit {
            let mut prev = vec![usize::MAX; n];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && prev[w] == usize::MAX && w != s {
                        prev[w] = e;
                        if w == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(w);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = prev[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            flow += push;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(vertex_connectivity(&k5).unwrap(), 4);
        assert_eq!(edge_connectivity(&k5).unwrap(), 4);
        let p4 = Graph::path(4);
        assert_eq!(vertex_connectivity(&p4).unwrap(), 1);
        assert_eq!(edge_connectivity(&p4).unwrap(), 1);
        let c6 = Graph::cycle(6);
        assert_eq!(vertex_connectivity(&c6).unwrap(), 2);
        assert_eq!(edge_connectivity(&c6).unwrap(), 2);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&two).unwrap(), 0);
        assert_eq!(edge_connectivity(&two).unwrap(), 0);
        assert!(matches!(vertex_connectivity(&Graph::empty(1)), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn maxflow_agrees_with_enumeration() {
        let graphs = [
            Graph::complete(5),
            Graph::path(5),
            Graph::cycle(7),
            Graph::bull(),
            Graph::octahedral(),
            Graph::wheel(6),
            Graph::complete_multipartite(&[2, 3]),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(vertex_connectivity(g).unwrap(), vertex_connectivity_maxflow(g).unwrap(), "{g:?}");
            assert_eq!(edge_connectivity(g).unwrap(), edge_connectivity_maxflow(g).unwrap(), "{g:?}");
        }
    }

    #[test]
    fn large_graph_uses_maxflow() {
        let c = Graph::cycle(15);
        assert_eq!(vertex_connectivity(&c).unwrap(), 2);
        assert_eq!(edge_connectivity(&c).unwrap(), 2);
        assert_eq!(vertex_connectivity(&Graph::complete(13)).unwrap(), 12);
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&Graph::path(3)).unwrap(), vec![1]);
        assert!(cut_vertices(&Graph::cycle(4)).unwrap().is_empty());
        assert_eq!(cut_vertices(&Graph::bull()).unwrap(), vec![1, 2]);
        assert_eq!(cut_vertices(&Graph::empty(2)), Err(Error::Disconnected));
    }
}
