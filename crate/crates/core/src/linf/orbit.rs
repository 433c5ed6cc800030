//! Canonical forms of edge-coloured graphs under vertex and colour relabelling.

use crate::graph::Edge;

/// Above this many class-respecting vertex permutations the canonical form
/// falls back to the sorted input, which never merges distinct orbits but
/// may split one.
const PERM_LIMIT: usize = 50_000;

/// A key equal for two decompositions only if they differ by a vertex
/// permutation and a reordering of parts.
pub(crate) fn canonical_form(n: usize, parts: &[Vec<Edge>]) -> Vec<Vec<Edge>> {
    // vertex invariant: sorted per-part degree profile
    let mut profile: Vec<Vec<usize>> = vec![Vec::new(); n];
    for part in parts {
        let mut deg = vec![0; n];
        for &(u, v) in part {
            deg[u] += 1;
            deg[v] += 1;
        }
        for v in 0..n {
            profile[v].push(deg[v]);
        }
    }
    profile.iter_mut().for_each(|p| p.sort_unstable());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| profile[a].cmp(&profile[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if profile[c[0]] == profile[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let count = classes.iter().try_fold(1usize, |acc, c| acc.checked_mul((1..=c.len()).product()));
    if count.is_none_or(|c| c > PERM_LIMIT) {
        return relabelled(parts, &(0..n).collect::<Vec<_>>());
    }

    // perm[v] = new label; class k occupies a fixed block of labels
    let mut perm = vec![0; n];
    let mut best: Option<Vec<Vec<Edge>>> = None;
    let mut offsets = Vec::with_capacity(classes.len());
    let mut off = 0;
    for c in &classes {
        offsets.push(off);
        off += c.len();
    }
    search(0, &classes, &offsets, &mut perm, parts, &mut best);
    best.expect("at least one permutation")
}

fn search(
    k: usize,
    classes: &[Vec<usize>],
    offsets: &[usize],
    perm: &mut [usize],
    parts: &[Vec<Edge>],
    best: &mut Option<Vec<Vec<Edge>>>,
) {
    if k == classes.len() {
        let form = relabelled(parts, perm);
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    }
    let mut a = classes[k].clone();
    heap_permutations(a.len(), &mut a, &mut |a| {
        for (i, &v) in a.iter().enumerate() {
            perm[v] = offsets[k] + i;
        }
        search(k + 1, classes, offsets, perm, parts, best);
    });
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, a, f);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, a, f);
}

fn relabelled(parts: &[Vec<Edge>], perm: &[usize]) -> Vec<Vec<Edge>> {
    let mut out: Vec<Vec<Edge>> = parts
        .iter()
        .map(|p| {
            let mut q: Vec<Edge> = p
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u], perm[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            q.sort_unstable();
            q
        })
        .collect();
    out.sort();
    out
}
