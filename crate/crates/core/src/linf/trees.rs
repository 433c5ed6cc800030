//! The double-star trees `T_d`, their Grone polynomial, and searches for
//! decompositions of a graph into copies of a fixed spanning tree.

use std::collections::HashSet;

use serde::Serialize;

use super::{orbit, realize_decomposition, Decomposition};
use crate::error::{Error, Result};
use crate::framework::{make_framework, Framework, SearchBudget};
use crate::graph::Graph;
use crate::space::NormedSpace;

/// Default cap on tree decompositions collected before realisation starts.
pub const DEFAULT_DECOMPOSITION_CAP: usize = 100_000;

/// `T_d`: centres 0 and 1 joined by an edge, each with `d − 1` leaves.
pub fn t_d_tree(d: usize) -> Graph {
    assert!(d >= 2, "T_d needs d >= 2");
    let mut edges = vec![(0, 1)];
    edges.extend((2..=d).map(|v| (0, v)));
    edges.extend((d + 1..2 * d).map(|v| (1, v)));
    Graph::new(2 * d, edges).expect("valid tree")
}

const H_TREES: [[(usize, usize); 7]; 8] = [
    [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 6), (3, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6), (6, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (1, 6), (3, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 6), (3, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (2, 6), (6, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 6), (2, 7)],
    [(0, 1), (1, 5), (1, 6), (1, 3), (2, 3), (3, 4), (3, 7)],
    [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (2, 6), (6, 7)],
];

/// Eight 8-vertex trees `H_1, …, H_8` of maximum degree at most 4, the
/// candidate part shapes for `K_8` in ℓ∞^4 (`H_7 ≅ T_4`). `i` is 1-based.
pub fn h_tree(i: usize) -> Option<Graph> {
    let edges = H_TREES.get(i.checked_sub(1)?)?;
    Some(Graph::new(8, edges.iter().copied()).expect("valid tree"))
}

/// `H_8`: a degree-4 centre (vertex 2) whose neighbours 1, 3, 6 each carry
/// one pendant vertex (0, 4, 7) and whose neighbour 5 is a leaf.
pub fn h8_tree() -> Graph {
    h_tree(8).expect("eight trees")
}

/// `p_d(x) = x³ − (2d+2)x² + (d²+2d+2)x − 2d`.
pub fn grone_polynomial(d: usize, x: f64) -> f64 {
    let d = d as f64;
    ((x - (2.0 * d + 2.0)) * x + (d * d + 2.0 * d + 2.0)) * x - 2.0 * d
}

/// Smallest root of [`grone_polynomial`], which equals `a(T_d)`.
///
/// `p_d(0) = −2d < 0` and `p_d(1) = (d−1)² > 0`, so bisection on `[0, 1]`
/// brackets it.
pub fn grone_root(d: usize) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if grone_polynomial(d, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Report from [`tree_decomposition_search`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeSearchOutcome {
    /// Decompositions into tree copies found by the enumeration.
    pub decompositions: usize,
    /// Distinct decompositions up to vertex and part relabelling.
    pub orbits: usize,
    pub orbits_tried: usize,
    /// Whether the enumeration stopped at the cap before finishing.
    pub truncated: bool,
    pub realized: Option<Decomposition>,
}

/// Edge masks (over `g.edges()`) of spanning copies of `tree` inside `avail`
/// that use edge `must`.
fn embeddings(g: &Graph, avail: u64, tree: &Graph, must: usize) -> Vec<u64> {
    let n = g.n();
    // BFS order of the tree from vertex 0, with parents
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut found = HashSet::new();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        ctx: (&Graph, u64, &[usize], &[usize]),
        phi: &mut [usize],
        used: &mut [bool],
        mask: u64,
        found: &mut HashSet<u64>,
    ) {
        let (g, avail, order, parent) = ctx;
        if k == order.len() {
            found.insert(mask);
            return;
        }
        let t = order[k];
        let cands: Vec<usize> = if k == 0 { (0..g.n()).collect() } else { g.neighbors(phi[parent[t]]).to_vec() };
        for x in cands {
            if used[x] {
                continue;
            }
            let mut m = mask;
            if k > 0 {
                let e = g.edge_index(phi[parent[t]], x).expect("neighbour edge");
                if avail >> e & 1 == 0 {
                    continue;
                }
                m |= 1 << e;
            }
            used[x] = true;
            phi[t] = x;
            rec(k + 1, ctx, phi, used, m, found);
            used[x] = false;
        }
    }
    rec(0, (g, avail, &order, &parent), &mut phi, &mut used, 0, &mut found);
    let mut out: Vec<u64> = found.into_iter().filter(|m| m >> must & 1 == 1).collect();
    out.sort_unstable();
    out
}

/// Searches for a placement of `g` in ℓ∞^d whose monochrome parts are all
/// copies of the spanning tree `tree`.
///
/// Decompositions are enumerated by always covering the lowest uncovered
/// edge next; for complete graphs the first part is fixed to one copy, which
/// loses nothing up to vertex relabelling. Each orbit is then handed to
/// [`realize_decomposition`] until one succeeds. A missing result is not a
/// proof that no such placement exists.
pub fn tree_decomposition_search(
    g: &Graph,
    tree: &Graph,
    d: usize,
    budget: SearchBudget,
    seed: u64,
    cap: usize,
) -> Result<TreeSearchOutcome> {
    let n = g.n();
    if tree.n() != n || tree.edge_count() != n.saturating_sub(1) || !tree.is_connected() {
        return Err(Error::InvalidSpace("pattern must be a spanning tree of the host graph".into()));
    }
    if d * (n - 1) != g.edge_count() {
        return Err(Error::WrongEdgeCount { expected: d * (n - 1), got: g.edge_count() });
    }
    if g.edge_count() > 64 {
        return Err(Error::TooLarge { limit: 64, have: g.edge_count() });
    }
    let full = if g.edge_count() == 64 { u64::MAX } else { (1u64 << g.edge_count()) - 1 };
    let mut decomps: Vec<Vec<u64>> = Vec::new();
    let mut truncated = false;
    let mut stack = Vec::new();
    if g.is_complete() {
        if let Some(&first) = embeddings(g, full, tree, 0).first() {
            stack.push(first);
            collect(g, tree, full & !first, &mut stack, &mut decomps, cap, &mut truncated);
        }
    } else {
        collect(g, tree, full, &mut stack, &mut decomps, cap, &mut truncated);
    }

    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for masks in &decomps {
        let dec = Decomposition::from_masks(g, masks);
        if seen.insert(orbit::canonical_form(n, &dec.parts)) {
            orbits.push(dec);
        }
    }
    let mut tried = 0;
    let mut realized = None;
    for mut dec in orbits.iter().cloned() {
        tried += 1;
        if let Some(p) = realize_decomposition(g, &dec.parts, budget, seed ^ tried as u64) {
            dec.certificate = Some(p);
            realized = Some(dec);
            break;
        }
    }
    Ok(TreeSearchOutcome { decompositions: decomps.len(), orbits: orbits.len(), orbits_tried: tried, truncated, realized })
}

fn collect(
    g: &Graph,
    tree: &Graph,
    avail: u64,
    stack: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    cap: usize,
    truncated: &mut bool,
) {
    if out.len() >= cap {
        *truncated = true;
        return;
    }
    if avail == 0 {
        out.push(stack.clone());
        return;
    }
    let low = avail.trailing_zeros() as usize;
    for m in embeddings(g, avail, tree, low) {
        stack.push(m);
        collect(g, tree, avail & !m, stack, out, cap, truncated);
        stack.pop();
    }
}

/// A framework `(K_{2d}, p)` in ℓ∞^d whose monochrome parts are all copies of `T_d`.
pub fn k2d_decomposition_placement(d: usize, budget: SearchBudget, seed: u64) -> Result<Framework> {
    if d < 2 {
        return Err(Error::TooSmall { needed: 2, have: d });
    }
    let g = Graph::complete(2 * d);
    let out = tree_decomposition_search(&g, &t_d_tree(d), d, budget, seed, DEFAULT_DECOMPOSITION_CAP)?;
    match out.realized.and_then(|dec| dec.certificate) {
        Some(p) => make_framework(&g, &NormedSpace::linf(d)?, &p),
        None => Err(Error::BudgetExceeded { visited: out.orbits_tried as u64 }),
    }
}
