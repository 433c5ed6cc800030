//! Exhaustive enumeration of edge partitions into `d` spanning parts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{find_odd_hole, Graph};

/// Largest graph order accepted by the enumerator.
pub const ENUM_VERTEX_LIMIT: usize = 10;

/// Default cap on search-tree nodes visited.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Necessary conditions a partition must meet to be worth realising.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FilterSet {
    /// Every part connected and spanning (else its algebraic connectivity is 0).
    pub connected_spanning: bool,
    /// Every part free of odd holes; only applied when the graph is complete.
    pub odd_hole_free: bool,
    /// Enumerate one representative per orbit under part permutation.
    pub symmetry_reduction: bool,
}

impl FilterSet {
    pub const fn all() -> Self {
        Self { connected_spanning: true, odd_hole_free: true, symmetry_reduction: true }
    }

    pub const fn none() -> Self {
        Self { connected_spanning: false, odd_hole_free: false, symmetry_reduction: false }
    }
}

impl Default for FilterSet {
    fn default() -> Self {
        Self::all()
    }
}

/// Partitions of `E(g)` into `d` parts passing `filters`, as per-part bitmasks
/// over `g.edges()` indices.
///
/// Edges are coloured in colex order (by larger endpoint), so once every edge
/// inside `{0..=t}` is coloured the induced part graphs on that set are final
/// and can be screened for odd holes. Part connectivity is pruned with a
/// deficit count: the parts still need `Σ (components − 1)` edges, which must
/// not exceed the number of edges left. With symmetry reduction, colours are
/// assigned as a restricted-growth string, which picks the lexicographically
/// least tuple in each part-permutation orbit.
pub fn enumerate_candidates(g: &Graph, d: usize, filters: FilterSet, node_cap: u64) -> Result<Vec<Vec<u64>>> {
    let n = g.n();
    if n > ENUM_VERTEX_LIMIT {
        return Err(Error::TooLarge { limit: ENUM_VERTEX_LIMIT, have: n });
    }
    if d == 0 {
        return Err(Error::InvalidSpace("dimension must be positive".into()));
    }
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&i| {
        let (u, v) = g.edges()[i];
        (v, u)
    });
    // checkpoint[k]: after colouring order[k], all edges inside {0..=t} are done
    let checkpoint: Vec<Option<usize>> = (0..order.len())
        .map(|k| {
            let t = g.edges()[order[k]].1;
            let next = order.get(k + 1).map(|&j| g.edges()[j].1);
            (next != Some(t)).then_some(t)
        })
        .collect();
    let mut e = Enumerator {
        g,
        d,
        filters,
        holes: filters.odd_hole_free && g.is_complete(),
        order,
        checkpoint,
        masks: vec![0; d],
        comps: vec![(0..n as u8).collect(); d],
        ncomp: vec![n; d],
        visited: 0,
        cap: node_cap,
        out: Vec::new(),
    };
    e.recurse(0, 0)?;
    Ok(e.out)
}

struct Enumerator<'a> {
    g: &'a Graph,
    d: usize,
    filters: FilterSet,
    holes: bool,
    order: Vec<usize>,
    checkpoint: Vec<Option<usize>>,
    masks: Vec<u64>,
    comps: Vec<Vec<u8>>,
    ncomp: Vec<usize>,
    visited: u64,
    cap: u64,
    out: Vec<Vec<u64>>,
}

impl Enumerator<'_> {
    fn deficit_ok(&self, k: usize) -> bool {
        if !self.filters.connected_spanning {
            return true;
        }
        let need: usize = self.ncomp.iter().map(|c| c - 1).sum();
        need <= self.order.len() - k
    }

    fn recurse(&mut self, k: usize, used: usize) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::BudgetExceeded { visited: self.visited });
        }
        if k == self.order.len() {
            if !self.filters.connected_spanning || self.ncomp.iter().all(|&c| c <= 1) {
                self.out.push(self.masks.clone());
            }
            return Ok(());
        }
        let idx = self.order[k];
        let (u, v) = self.g.edges()[idx];
        let limit = if self.filters.symmetry_reduction { (used + 1).min(self.d) } else { self.d };
        for c in 0..limit {
            let saved = self.comps[c].clone();
            let saved_n = self.ncomp[c];
            let (cu, cv) = (self.comps[c][u], self.comps[c][v]);
            if cu != cv {
                for x in self.comps[c].iter_mut() {
                    if *x == cv {
                        *x = cu;
                    }
                }
                self.ncomp[c] -= 1;
            }
            self.masks[c] |= 1 << idx;
            if self.deficit_ok(k + 1) && self.holes_ok(k) {
                self.recurse(k + 1, used.max(c + 1))?;
            }
            self.masks[c] &= !(1 << idx);
            self.comps[c] = saved;
            self.ncomp[c] = saved_n;
        }
        Ok(())
    }

    fn holes_ok(&self, k: usize) -> bool {
        let Some(t) = self.checkpoint[k].filter(|_| self.holes) else {
            return true;
        };
        if t < 4 {
            return true;
        }
        let verts: Vec<usize> = (0..=t).collect();
        self.masks.iter().all(|&m| {
            let part = self.g.spanning_subgraph_mask(m).induced(&verts);
            find_odd_hole(&part).is_none()
        })
    }
}
