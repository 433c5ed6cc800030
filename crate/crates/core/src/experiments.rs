//! Constructions and exploration harnesses built on the ℓ∞ engine.
//!
//! Harness results are reported as found / not found within budget; a
//! negative outcome is never a proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{edge_redundant_test, sample_frameworks};
use crate::error::{Error, Result};
use crate::framework::{make_framework, Framework, Placement, SearchBudget};
use crate::graph::{are_isomorphic, Graph};
use crate::linf::{
    enumerate_candidates, grone_root, h8_tree, monochrome_decompose, realize_decomposition, t_d_tree,
    tree_decomposition_search, Decomposition, FilterSet, TreeSearchOutcome, DEFAULT_NODE_CAP,
};
use crate::space::NormedSpace;

/// A framework of `K_{2,2,2}` in the ℓ∞ plane whose two monochrome parts are 6-cycles.
pub fn octahedral_two_cycles(budget: SearchBudget, seed: u64) -> Result<Framework> {
    let g = Graph::octahedral();
    let c6 = Graph::cycle(6);
    let space = NormedSpace::linf(2)?;
    let mut tried = 0;
    for masks in enumerate_candidates(&g, 2, FilterSet::all(), DEFAULT_NODE_CAP)? {
        let dec = Decomposition::from_masks(&g, &masks);
        let parts = dec.part_graphs(6)?;
        if !parts.iter().all(|p| are_isomorphic(p, &c6).unwrap_or(false)) {
            continue;
        }
        tried += 1;
        if let Some(p) = realize_decomposition(&g, &dec.parts, budget, seed ^ tried) {
            return make_framework(&g, &space, &normalised(&p));
        }
    }
    Err(Error::Unsatisfiable { attempts: tried as usize })
}

/// Uniformly rescales and translates a planar placement into `[0,1]²`.
/// Uniform scaling and translation preserve every ℓ∞ edge classification.
pub fn normalised(p: &Placement) -> Placement {
    let d = p.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for v in 0..p.n() {
        for (i, &x) in p.point(v).iter().enumerate() {
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    let span = (0..d).map(|i| hi[i] - lo[i]).fold(0.0, f64::max);
    if span <= 0.0 {
        return p.clone();
    }
    let pts = (0..p.n()).map(|v| p.point(v).iter().enumerate().map(|(i, x)| (x - lo[i]) / span).collect()).collect();
    Placement::new(pts).expect("finite")
}

/// Joins a new vertex to every existing vertex of a complete-graph framework,
/// trying `target` first and then seeded points at growing distance from it,
/// until the result is edge-redundantly rigid.
pub fn extend_edge_redundant(fw: &Framework, target: &[f64], seed: u64, attempts: usize) -> Result<Framework> {
    let n = fw.graph().n();
    let g = Graph::complete(n + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..attempts {
        let radius = 0.02 * (k as f64).sqrt();
        let q: Vec<f64> = target.iter().map(|t| t + if k == 0 { 0.0 } else { rng.gen_range(-radius..radius) }).collect();
        let Ok(p) = fw.placement().with_point(&q) else { continue };
        let Ok(ext) = make_framework(&g, fw.space(), &p) else { continue };
        if edge_redundant_test(&ext)?.redundant {
            return Ok(ext);
        }
    }
    Err(Error::Unsatisfiable { attempts })
}

/// Outcome of the edge-redundancy exploration for `K_n` in ℓ∞^d.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyOutcome {
    pub d: usize,
    pub n: usize,
    pub witness: Option<Placement>,
    pub method: String,
    pub samples: usize,
}

/// Looks for an edge-redundantly rigid framework `(K_n, p)` in ℓ∞^d.
///
/// In the plane the octahedral two-cycle placement is used for `n = 6` and
/// extended one vertex at a time near `(0.5, 0.9)`; otherwise placements are
/// sampled.
pub fn explore_edge_redundancy(d: usize, n: usize, budget: SearchBudget, seed: u64) -> Result<RedundancyOutcome> {
    if n < d + 2 {
        return Err(Error::TooSmall { needed: d + 2, have: n });
    }
    if d == 2 && n >= 6 {
        if let Ok(oct) = octahedral_two_cycles(budget, seed) {
            let space = NormedSpace::linf(2)?;
            let mut fw = make_framework(&Graph::complete(6), &space, oct.placement())?;
            if edge_redundant_test(&fw)?.redundant {
                let mut ok = true;
                for m in 7..=n {
                    match extend_edge_redundant(&fw, &[0.5, 0.9], seed ^ m as u64, 2000) {
                        Ok(ext) => fw = ext,
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    return Ok(RedundancyOutcome {
                        d,
                        n,
                        witness: Some(fw.placement().clone()),
                        method: "octahedral two-cycle placement, extended near (0.5, 0.9)".into(),
                        samples: 0,
                    });
                }
            }
        }
    }
    let g = Graph::complete(n);
    let space = NormedSpace::linf(d)?;
    let samples = sample_frameworks(&g, &space, seed, budget.restarts.max(1));
    let count = samples.len();
    for fw in samples {
        if edge_redundant_test(&fw)?.redundant {
            return Ok(RedundancyOutcome {
                d,
                n,
                witness: Some(fw.placement().clone()),
                method: "random sampling".into(),
                samples: count,
            });
        }
    }
    Ok(RedundancyOutcome { d, n, witness: None, method: "random sampling".into(), samples: count })
}

/// Outcome of a tree-decomposition harness on `K_{2d}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeHarnessOutcome {
    pub tree: String,
    pub d: usize,
    pub search: TreeSearchOutcome,
    /// `min_i a(G_i)` of the realised decomposition, when one was found.
    pub realized_value: Option<f64>,
    /// `a(T_d)`, the known lower bound on `a(K_{2d}, ℓ∞^d)`.
    pub t_d_value: f64,
    pub verdict: String,
}

fn harness(tree: &Graph, name: &str, d: usize, budget: SearchBudget, seed: u64, cap: usize) -> Result<TreeHarnessOutcome> {
    let g = Graph::complete(2 * d);
    let search = tree_decomposition_search(&g, tree, d, budget, seed, cap)?;
    let realized_value = match &search.realized {
        Some(dec) => {
            let p = dec.certificate.as_ref().expect("realised decompositions carry a certificate");
            let fw = make_framework(&g, &NormedSpace::linf(d)?, p)?;
            debug_assert_eq!(monochrome_decompose(&fw)?.labels(&g)?, dec.labels(&g)?);
            Some(fw.rigidity_eigenvalue()?)
        }
        None => None,
    };
    let verdict = match (&realized_value, search.truncated) {
        (Some(_), _) => "realized".to_string(),
        (None, _) => "not found within budget".to_string(),
    };
    Ok(TreeHarnessOutcome { tree: name.into(), d, search, realized_value, t_d_value: grone_root(d), verdict })
}

/// Searches for a placement of `K_{2d}` in ℓ∞^d with every part a copy of `T_d`.
pub fn explore_k2d(d: usize, budget: SearchBudget, seed: u64, cap: usize) -> Result<TreeHarnessOutcome> {
    if d < 2 {
        return Err(Error::TooSmall { needed: 2, have: d });
    }
    harness(&t_d_tree(d), "T_d", d, budget, seed, cap)
}

/// Searches for a placement of `K_8` in ℓ∞^4 with every part a copy of `H_8`.
pub fn explore_h8(budget: SearchBudget, seed: u64, cap: usize) -> Result<TreeHarnessOutcome> {
    harness(&h8_tree(), "H_8", 4, budget, seed, cap)
}
