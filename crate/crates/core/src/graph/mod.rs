//! Finite simple graphs and their Laplacians.

mod connectivity;
mod holes;
mod iso;
mod trees;

pub use connectivity::{
    cut_vertices, edge_connectivity, edge_connectivity_maxflow, vertex_connectivity,
    vertex_connectivity_maxflow,
};
pub use holes::{find_odd_antihole, find_odd_hole, is_perfect_small};
pub use iso::{are_isomorphic, ISO_LIMIT};
pub use trees::{spanning_tree_pairs, spanning_trees, SpanningTreePairs};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::tolerance::eps;

/// Unordered edge stored with its smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalises an unordered pair to `(min, max)`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v { (u, v) } else { (v, u) }
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted lexicographically, so edge indices are stable for a
/// given edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_sorted(n, edges)
    }

    /// Cycle `C_n`; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Self::path(n);
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn star(leaves: usize) -> Self {
        Self::from_sorted(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    /// Complete multipartite graph with the given part sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut label = Vec::with_capacity(n);
        for (i, &s) in parts.iter().enumerate() {
            label.extend(std::iter::repeat(i).take(s));
        }
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| label[u] != label[v])
            .collect();
        Self::from_sorted(n, edges)
    }

    /// The octahedral graph `K_{2,2,2}`; vertex pairs `{0,1}`, `{2,3}`, `{4,5}` are the non-edges.
    pub fn octahedral() -> Self {
        Self::complete_multipartite(&[2, 2, 2])
    }

    /// Bull graph: triangle `0,1,2` with pendant vertices `3` on `1` and `4` on `2`.
    pub fn bull() -> Self {
        Self::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]).expect("bull is simple")
    }

    /// Wheel: hub `0` joined to every vertex of the rim cycle `1..n`.
    pub fn wheel(n: usize) -> Self {
        let rim = n - 1;
        let mut e: Vec<Edge> = (1..n).map(|v| (0, v)).collect();
        e.extend((0..rim).map(|i| edge(1 + i, 1 + (i + 1) % rim)));
        Self::new(n, e).expect("wheel is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Spanning subgraph on the same vertex set with the listed edges.
    pub fn spanning_subgraph(&self, edges: &[Edge]) -> Result<Graph> {
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::UnknownEdge(edge(u, v)));
            }
        }
        Graph::new(self.n, edges.iter().copied())
    }

    /// Spanning subgraph selected by a bitmask over edge indices (at most 64 edges).
    pub fn spanning_subgraph_mask(&self, mask: u64) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| edge(pos[u], pos[v]))
            .collect();
        edges.sort_unstable();
        Self::from_sorted(vertices.len(), edges)
    }

    /// Deletes vertex `v` and its edges; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != v).collect();
        self.induced(&keep)
    }

    /// Graph with edge `e` removed (no-op if absent).
    pub fn without_edge(&self, e: Edge) -> Graph {
        let e = edge(e.0, e.1);
        Self::from_sorted(self.n, self.edges.iter().copied().filter(|&x| x != e).collect())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut e = self.edges.clone();
        e.push((u, v));
        Graph::new(self.n.max(u.max(v) + 1), e)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Connectivity of the graph with the vertices flagged in `removed` deleted.
    pub(crate) fn is_connected_without(&self, removed: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| !removed[v]) else {
            return true;
        };
        let mut seen = removed.to_vec();
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == removed.iter().filter(|r| !**r).count()
    }

    /// Cartesian (box) product; vertex `(a, b)` is numbered `a · other.n + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut edges = Vec::new();
        for a in 0..self.n {
            for &(u, v) in &other.edges {
                edges.push((a * m + u, a * m + v));
            }
        }
        for &(u, v) in &self.edges {
            for b in 0..m {
                edges.push((u * m + b, v * m + b));
            }
        }
        Graph::new(self.n * m, edges).expect("box product of simple graphs is simple")
    }

    /// Vertex relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling preserves simplicity")
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

/// The graph Laplacian `L(G)`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    let mut l = SymMatrix::zeros(g.n);
    for &(u, v) in &g.edges {
        l.add_sym(u, u, 1.0);
        l.add_sym(v, v, 1.0);
        l.add_sym(u, v, -1.0);
    }
    l
}

/// Oriented incidence matrix: `+1` at the source and `-1` at the range of each
/// edge. `orientation[e]` gives `(source, range)` for edge index `e`.
pub fn oriented_incidence(g: &Graph, orientation: &[(usize, usize)]) -> Result<Matrix> {
    if orientation.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), got: orientation.len() });
    }
    let mut c = Matrix::zeros(g.edge_count(), g.n);
    for (i, (&e, &(s, r))) in g.edges.iter().zip(orientation).enumerate() {
        if edge(s, r) != e || s == r {
            return Err(Error::UnknownEdge(edge(s, r)));
        }
        c.set(i, s, 1.0);
        c.set(i, r, -1.0);
    }
    Ok(c)
}

/// Orientation pointing each edge from its smaller endpoint to its larger one.
pub fn default_orientation(g: &Graph) -> Vec<(usize, usize)> {
    g.edges.clone()
}

/// Algebraic connectivity `a(G) = λ₂(L(G))`.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.n < 2 {
        return Err(Error::TooSmall { needed: 2, have: g.n });
    }
    let a = laplacian(g).eigenvalues()?.get(2)?;
    Ok(if a.abs() < eps() { 0.0 } else { a })
}

/// Non-negative scalar edge weights, aligned with `Graph::edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarWeights {
    values: Vec<f64>,
}

impl ScalarWeights {
    pub fn new(g: &Graph, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::DimensionMismatch { expected: g.edge_count(), got: values.len() });
        }
        for (e, &w) in g.edges.iter().zip(&values) {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { edge: *e, weight: w });
            }
        }
        Ok(Self { values })
    }

    /// Weights from an explicit edge map; absent edges get weight zero.
    pub fn from_pairs(g: &Graph, pairs: impl IntoIterator<Item = (Edge, f64)>) -> Result<Self> {
        let mut values = vec![0.0; g.edge_count()];
        for ((u, v), w) in pairs {
            let i = g.edge_index(u, v).ok_or(Error::UnknownEdge(edge(u, v)))?;
            values[i] = w;
        }
        Self::new(g, values)
    }

    pub fn constant(g: &Graph, w: f64) -> Result<Self> {
        Self::new(g, vec![w; g.edge_count()])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `L(G, ω)`.
pub fn weighted_laplacian(g: &Graph, w: &ScalarWeights) -> Result<SymMatrix> {
    if w.values.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), got: w.values.len() });
    }
    let mut l = SymMatrix::zeros(g.n);
    for (&(u, v), &x) in g.edges.iter().zip(&w.values) {
        if x < 0.0 {
            return Err(Error::NegativeWeight { edge: (u, v), weight: x });
        }
        l.add_sym(u, u, x);
        l.add_sym(v, v, x);
        l.add_sym(u, v, -x);
    }
    Ok(l)
}

/// Positive semidefinite `d × d` edge weights, aligned with `Graph::edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixWeights {
    d: usize,
    values: Vec<SymMatrix>,
}

impl MatrixWeights {
    pub fn new(g: &Graph, d: usize, values: Vec<SymMatrix>) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::DimensionMismatch { expected: g.edge_count(), got: values.len() });
        }
        for (e, w) in g.edges.iter().zip(&values) {
            if w.order() != d {
                return Err(Error::DimensionMismatch { expected: d, got: w.order() });
            }
            let min = w.eigenvalues()?.min();
            if min < -eps() {
                return Err(Error::NonPsdWeight { edge: *e, min_eigenvalue: min });
            }
        }
        Ok(Self { d, values })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[SymMatrix] {
        &self.values
    }

    /// Trace weighting `ω(e) = tr W(e)`.
    pub fn trace_weights(&self) -> ScalarWeights {
        ScalarWeights { values: self.values.iter().map(|w| w.trace().max(0.0)).collect() }
    }
}

/// `L(G, W)`: the `dn × dn` block Laplacian with vertex blocks of size `d`.
pub fn matrix_weighted_laplacian(g: &Graph, w: &MatrixWeights) -> Result<SymMatrix> {
    if w.values.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), got: w.values.len() });
    }
    let d = w.d;
    let mut l = SymMatrix::zeros(d * g.n);
    for (&(u, v), wm) in g.edges.iter().zip(&w.values) {
        for a in 0..d {
            for b in 0..d {
                let x = wm.get(a, b);
                if x == 0.0 {
                    continue;
                }
                // only the (a, b) entry of each block; the symmetric (b, a) is visited separately
                l_add(&mut l, u * d + a, u * d + b, x);
                l_add(&mut l, v * d + a, v * d + b, x);
                l_add(&mut l, u * d + a, v * d + b, -x);
                l_add(&mut l, v * d + a, u * d + b, -x);
            }
        }
    }
    Ok(l)
}

#[inline]
fn l_add(l: &mut SymMatrix, i: usize, j: usize, x: f64) {
    // add_sym mirrors off-diagonal entries; halve to avoid double counting
    if i == j {
        l.add_sym(i, i, x);
    } else {
        l.add_sym(i, j, 0.5 * x);
    }
}
