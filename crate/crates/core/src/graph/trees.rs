//! Spanning trees and complementary spanning-tree pairs.

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by the enumerators here.
pub const TREE_LIMIT: usize = 10;

/// All spanning trees of `g`, each as a sorted edge list.
///
/// Include/exclude recursion over the sorted edge list with union-find cycle
/// checks and connectivity pruning; the order is deterministic (trees using
/// earlier edges come first).
pub fn spanning_trees(g: &Graph) -> Result<Vec<Vec<Edge>>> {
    if g.n() > TREE_LIMIT {
        return Err(Error::TooLarge { limit: TREE_LIMIT, have: g.n() });
    }
    let mut out = Vec::new();
    if g.n() == 0 || !g.is_connected() {
        return Ok(out);
    }
    let mut chosen = Vec::with_capacity(g.n().saturating_sub(1));
    let mut excluded = vec![false; g.edge_count()];
    recurse(g, 0, &mut chosen, &mut excluded, &mut out);
    Ok(out)
}

fn recurse(g: &Graph, i: usize, chosen: &mut Vec<usize>, excluded: &mut [bool], out: &mut Vec<Vec<Edge>>) {
    let n = g.n();
    if chosen.len() == n - 1 {
        out.push(chosen.iter().map(|&k| g.edges()[k]).collect());
        return;
    }
    if i == g.edge_count() || g.edge_count() - i < n - 1 - chosen.len() {
        return;
    }
    let (u, v) = g.edges()[i];
    if !connects(g, chosen, u, v) {
        chosen.push(i);
        recurse(g, i + 1, chosen, excluded, out);
        chosen.pop();
    }
    excluded[i] = true;
    if still_connected(g, excluded) {
        recurse(g, i + 1, chosen, excluded, out);
    }
    excluded[i] = false;
}

/// Whether `u` and `v` are already joined by the chosen edges.
fn connects(g: &Graph, chosen: &[usize], u: usize, v: usize) -> bool {
    let mut uf = UnionFind::new(g.n());
    for &k in chosen {
        let (a, b) = g.edges()[k];
        uf.union(a, b);
    }
    uf.find(u) == uf.find(v)
}

fn still_connected(g: &Graph, excluded: &[bool]) -> bool {
    let mut uf = UnionFind::new(g.n());
    let mut parts = g.n();
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        if !excluded[k] && uf.union(a, b) {
            parts -= 1;
        }
    }
    parts == 1
}

/// Spanning trees `T` whose complement `G ∖ T` is also a spanning tree.
#[derive(Debug, Clone)]
pub struct SpanningTreePairs {
    inner: std::vec::IntoIter<(Vec<Edge>, Vec<Edge>)>,
}

impl Iterator for SpanningTreePairs {
    type Item = (Vec<Edge>, Vec<Edge>);

    fn next(&mut self) -> Option<Self::Item> {
        self.inner.next()
    }
}

/// Enumerates every `(T, G ∖ T)` with both sides spanning trees; requires `|E| = 2(n − 1)`.
pub fn spanning_tree_pairs(g: &Graph) -> Result<SpanningTreePairs> {
    let need = 2 * g.n().saturating_sub(1);
    if g.edge_count() != need {
        return Err(Error::WrongEdgeCount { expected: need, got: g.edge_count() });
    }
    let pairs: Vec<_> = spanning_trees(g)?
        .into_iter()
        .filter_map(|t| {
            let rest: Vec<Edge> = g.edges().iter().copied().filter(|e| t.binary_search(e).is_err()).collect();
            let comp = Graph::new(g.n(), rest.iter().copied()).ok()?;
            comp.is_connected().then_some((t, rest))
        })
        .collect();
    Ok(SpanningTreePairs { inner: pairs.into_iter() })
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
