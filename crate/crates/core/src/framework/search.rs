//! Randomised lower bounds for `a(G, X)` by placement hill-climbing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{affine_span_dim, make_framework, Placement};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::space::NormedSpace;

/// Restart and step counts for randomised searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub restarts: usize,
    pub steps: usize,
}

impl SearchBudget {
    pub const fn new(restarts: usize, steps: usize) -> Self {
        Self { restarts, steps }
    }

    /// Defaults for [`estimate_alg_connectivity`].
    pub const fn estimate() -> Self {
        Self::new(64, 200)
    }

    /// Defaults for decomposition realisation.
    pub const fn realize() -> Self {
        Self::new(256, 500)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::estimate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub lower_bound: f64,
    pub witness: Placement,
    /// Index of the restart that produced the witness.
    pub restart: usize,
}

const INITIAL_STEP: f64 = 0.25;
const SCALES: usize = 10;
const ATTEMPTS_PER_RESTART: usize = 10;

/// Rigidity eigenvalue at `p`, or `None` if `p` is not a valid full-span placement.
fn objective(g: &Graph, space: &NormedSpace, p: &Placement) -> Option<f64> {
    if affine_span_dim(p) < space.dim() {
        return None;
    }
    make_framework(g, space, p).ok()?.rigidity_eigenvalue().ok()
}

pub(crate) fn random_placement(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Placement {
    let coords = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    Placement::from_flat(d, coords).expect("finite coordinates")
}

/// Best rigidity eigenvalue found over seeded random restarts, each refined
/// by coordinate-wise hill-climbing. The result is a lower bound on `a(G, X)`.
///
/// Restart `r` draws from `ChaCha8(seed)` on stream `r`, and the reduction
/// keeps the lowest restart index among ties, so the output does not depend
/// on thread scheduling.
pub fn estimate_alg_connectivity(
    g: &Graph,
    space: &NormedSpace,
    budget: SearchBudget,
    seed: u64,
) -> Result<Estimate> {
    let d = space.dim();
    if g.n() < d + 1 {
        return Err(Error::TooSmall { needed: d + 1, have: g.n() });
    }
    let runs: Vec<Option<(f64, Placement)>> = (0..budget.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            climb(g, space, budget.steps, &mut rng)
        })
        .collect();
    let mut best: Option<Estimate> = None;
    for (restart, run) in runs.into_iter().enumerate() {
        if let Some((value, witness)) = run {
            if best.as_ref().is_none_or(|b| value > b.lower_bound) {
                best = Some(Estimate { lower_bound: value, witness, restart });
            }
        }
    }
    best.ok_or(Error::Unsatisfiable { attempts: ATTEMPTS_PER_RESTART * budget.restarts })
}

fn climb(g: &Graph, space: &NormedSpace, steps: usize, rng: &mut ChaCha8Rng) -> Option<(f64, Placement)> {
    let (n, d) = (g.n(), space.dim());
    let (mut p, mut value) = (0..ATTEMPTS_PER_RESTART).find_map(|_| {
        let p = random_placement(rng, n, d);
        objective(g, space, &p).map(|v| (p, v))
    })?;
    let mut step = INITIAL_STEP;
    let mut level = 0;
    let mut order: Vec<usize> = (0..n * d).collect();
    for _ in 0..steps {
        let mut improved = false;
        order.shuffle(rng);
        for &c in &order {
            let old = p.as_flat()[c];
            let first = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            for sign in [first, -first] {
                p.coords_mut()[c] = old + sign * step;
                match objective(g, space, &p) {
                    Some(v) if v >= value => {
                        improved |= v > value;
                        value = v;
                        break;
                    }
                    _ => p.coords_mut()[c] = old,
                }
            }
        }
        if !improved {
            level += 1;
            step *= 0.5;
            if level == SCALES {
                level = 0;
                step = INITIAL_STEP;
            }
        }
    }
    Some((value, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disconnected_graph_estimates_zero() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let est = estimate_alg_connectivity(&g, &NormedSpace::linf(2).unwrap(), SearchBudget::new(4, 10), 1).unwrap();
        assert_eq!(est.lower_bound, 0.0);
    }

    #[test]
    fn too_few_vertices() {
        let g = Graph::path(2);
        assert!(matches!(
            estimate_alg_connectivity(&g, &NormedSpace::linf(2).unwrap(), SearchBudget::new(1, 1), 0),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn estimate_is_deterministic() {
        let g = Graph::complete(4);
        let s = NormedSpace::linf(2).unwrap();
        let b = SearchBudget::new(6, 20);
        assert_eq!(estimate_alg_connectivity(&g, &s, b, 9).unwrap(), estimate_alg_connectivity(&g, &s, b, 9).unwrap());
    }
}
