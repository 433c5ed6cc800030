use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`are_isomorphic`].
pub const ISO_LIMIT: usize = 8;

/// Isomorphism test by backtracking over vertex bijections.
///
/// Only used for reporting ("both parts are bulls"), so exhaustive search on
/// tiny graphs is enough.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let n = a.n();
    if n > ISO_LIMIT || b.n() > ISO_LIMIT {
        return Err(Error::TooLarge { limit: ISO_LIMIT, have: n.max(b.n()) });
    }
    if n != b.n() || a.edge_count() != b.edge_count() || a.degree_sequence() != b.degree_sequence() {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, 0, &mut map, &mut used))
}

fn extend(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n() {
        return true;
    }
    for w in 0..b.n() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
