//! Randomised search for placements with a prescribed monochrome decomposition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::monochrome_labels;
use crate::framework::{make_framework, Placement, SearchBudget};
use crate::graph::Graph;
use crate::space::NormedSpace;

/// Target gap between the assigned coordinate and the runner-up, in
/// placement units. Far above the smoothness margin so results survive
/// rounding when written to text.
const GAP: f64 = 1e-3;
/// Probability of taking a random repair move instead of the best one.
const NOISE: f64 = 0.1;

struct Problem {
    n: usize,
    d: usize,
    edges: Vec<(usize, usize, usize)>,
    incident: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
struct Score {
    violated: usize,
    hinge: f64,
}

impl Problem {
    fn margin(&self, x: &[f64], e: usize) -> (f64, usize) {
        let (v, w, t) = self.edges[e];
        let d = self.d;
        let dt = (x[v * d + t] - x[w * d + t]).abs();
        let (mut other, mut arg) = (0.0, t);
        for i in (0..d).filter(|&i| i != t) {
            let di = (x[v * d + i] - x[w * d + i]).abs();
            if di > other || arg == t {
                other = di;
                arg = i;
            }
        }
        (dt - other, arg)
    }

    fn edge_score(&self, x: &[f64], e: usize) -> (usize, f64) {
        let m = self.margin(x, e).0;
        if m < GAP {
            (1, GAP - m)
        } else {
            (0, 0.0)
        }
    }

    fn score(&self, x: &[f64]) -> Score {
        let mut s = Score { violated: 0, hinge: 0.0 };
        for e in 0..self.edges.len() {
            let (c, h) = self.edge_score(x, e);
            s.violated += c;
            s.hinge += h;
        }
        s
    }

    /// Change in score if vertex `u` moves to `y`.
    fn delta(&self, x: &mut [f64], u: usize, y: &[f64]) -> (isize, f64) {
        let d = self.d;
        let old: Vec<f64> = x[u * d..(u + 1) * d].to_vec();
        let (mut dc, mut dh) = (0isize, 0.0);
        for &e in &self.incident[u] {
            let (c, h) = self.edge_score(x, e);
            dc -= c as isize;
            dh -= h;
        }
        x[u * d..(u + 1) * d].copy_from_slice(y);
        for &e in &self.incident[u] {
            let (c, h) = self.edge_score(x, e);
            dc += c as isize;
            dh += h;
        }
        x[u * d..(u + 1) * d].copy_from_slice(&old);
        (dc, dh)
    }

    fn candidate_moves(&self, x: &[f64], e: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, Vec<f64>)> {
        let (v, w, t) = self.edges[e];
        let d = self.d;
        let (m, i) = self.margin(x, e);
        let mut moves = Vec::with_capacity(8);
        for (u, o) in [(v, w), (w, v)] {
            let pu = &x[u * d..(u + 1) * d];
            let po = &x[o * d..(o + 1) * d];
            let dt = (pu[t] - po[t]).abs();
            let other = dt - m;
            // push the assigned coordinate past the runner-up
            for s in [1.0, -1.0] {
                let mut y = pu.to_vec();
                y[t] = po[t] + s * (other + GAP + rng.gen_range(0.0..0.3));
                moves.push((u, y));
            }
            // pull the competing coordinates inside the assigned one
            if dt > 2.0 * GAP && i != t {
                let mut y = pu.to_vec();
                let r = dt - GAP;
                for j in (0..d).filter(|&j| j != t) {
                    if (y[j] - po[j]).abs() >= r {
                        y[j] = po[j] + rng.gen_range(-r..r) * 0.9;
                    }
                }
                moves.push((u, y));
            }
            let mut y = pu.to_vec();
            for c in y.iter_mut() {
                *c += rng.gen_range(-0.1..0.1);
            }
            moves.push((u, y));
        }
        moves
    }

    fn run(&self, steps: usize, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
        let mut x: Vec<f64> = (0..self.n * self.d).map(|_| rng.gen::<f64>()).collect();
        let mut score = self.score(&x);
        let mut violated: Vec<usize> = Vec::new();
        for _ in 0..steps {
            if score.violated == 0 {
                return Some(x);
            }
            violated.clear();
            violated.extend((0..self.edges.len()).filter(|&e| self.edge_score(&x, e).0 == 1));
            let e = *violated.choose(rng)?;
            let moves = self.candidate_moves(&x, e, rng);
            let pick = if rng.gen::<f64>() < NOISE {
                rng.gen_range(0..moves.len())
            } else {
                let mut best = (isize::MAX, f64::INFINITY, 0);
                for (k, (u, y)) in moves.iter().enumerate() {
                    let (dc, dh) = self.delta(&mut x, *u, y);
                    if (dc, dh) < (best.0, best.1) {
                        best = (dc, dh, k);
                    }
                }
                best.2
            };
            let (u, y) = &moves[pick];
            x[u * self.d..(u + 1) * self.d].copy_from_slice(y);
            score = self.score(&x);
        }
        (score.violated == 0).then_some(x)
    }
}

/// A placement in ℓ∞^d whose monochrome classification puts edge `k` of `g`
/// into part `labels[k]`, or `None` if the budget runs out.
///
/// Each restart starts from a uniform sample in `[0,1]^{nd}` and performs
/// min-conflicts repair: pick a misclassified edge, try moves of either
/// endpoint that enlarge the assigned coordinate difference or shrink the
/// competitors, and take the move that most reduces (misclassified edges,
/// total hinge deficit), with occasional random moves. `None` does not prove
/// the decomposition is unrealisable.
pub fn realize_labels(g: &Graph, d: usize, labels: &[usize], budget: SearchBudget, seed: u64) -> Option<Placement> {
    if labels.len() != g.edge_count() || labels.iter().any(|&l| l >= d) || d == 0 {
        return None;
    }
    let n = g.n();
    let mut incident = vec![Vec::new(); n];
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(k, (&(v, w), &t))| {
            incident[v].push(k);
            incident[w].push(k);
            (v, w, t)
        })
        .collect();
    let problem = Problem { n, d, edges, incident };
    let space = NormedSpace::linf(d).ok()?;
    (0..budget.restarts).into_par_iter().find_map_first(|r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let x = problem.run(budget.steps, &mut rng)?;
        let p = Placement::from_flat(d, x).ok()?;
        let fw = make_framework(g, &space, &p).ok()?;
        (monochrome_labels(&fw).ok()?.iter().map(|l| l.0).collect::<Vec<_>>() == labels).then_some(p)
    })
}

/// [`realize_labels`] for a decomposition given as per-part edge lists.
pub fn realize_decomposition(
    g: &Graph,
    parts: &[Vec<crate::graph::Edge>],
    budget: SearchBudget,
    seed: u64,
) -> Option<Placement> {
    let labels = super::labels_from_parts(g, parts).ok()?;
    realize_labels(g, parts.len(), &labels, budget, seed)
}
