//! Odd hole and odd antihole detection by exhaustive chordless-path search.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`is_perfect_small`].
pub const PERFECT_LIMIT: usize = 12;

/// An induced (chordless) cycle of odd length at least 5, as a vertex sequence.
///
/// Every candidate cycle is grown from its smallest vertex along chordless
/// paths, so the search is exhaustive.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for s in 0..n {
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        if let Some(c) = extend(g, s, &mut path, &mut on_path) {
            return Some(c);
        }
    }
    None
}

fn extend(g: &Graph, s: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> Option<Vec<usize>> {
    let last = *path.last().expect("path starts non-empty");
    for &v in g.neighbors(last) {
        if v <= s || on_path[v] {
            continue;
        }
        // v may touch only `last` among the interior vertices path[1..len-1]
        let interior: &[usize] = if path.len() > 2 { &path[1..path.len() - 1] } else { &[] };
        if interior.iter().any(|&x| g.has_edge(x, v)) {
            continue;
        }
        let closes = path.len() >= 2 && g.has_edge(s, v);
        if closes {
            let len = path.len() + 1;
            if len >= 5 && len % 2 == 1 {
                let mut cycle = path.clone();
                cycle.push(v);
                return Some(cycle);
            }
            continue;
        }
        path.push(v);
        on_path[v] = true;
        let found = extend(g, s, path, on_path);
        on_path[v] = false;
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Vertex set inducing an odd antihole (complement of an odd hole), if any.
pub fn find_odd_antihole(g: &Graph) -> Option<Vec<usize>> {
    find_odd_hole(&g.complement()).map(|mut c| {
        c.sort_unstable();
        c
    })
}

/// Perfection test via the odd hole / odd antihole characterisation.
pub fn is_perfect_small(g: &Graph) -> Result<bool> {
    if g.n() > PERFECT_LIMIT {
        return Err(Error::TooLarge { limit: PERFECT_LIMIT, have: g.n() });
    }
    Ok(find_odd_hole(g).is_none() && find_odd_antihole(g).is_none())
}
