//! Checkable inequalities for `a(G, X)` and redundant-rigidity tests.
//!
//! Each check returns a [`BoundCheck`] carrying both sides, the signed slack
//! and a short provenance string; nothing here panics on a violated bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{
    affine_span_dim, estimate_alg_connectivity, make_framework, search::random_placement, Framework, SearchBudget,
};
use crate::graph::{algebraic_connectivity, are_isomorphic, weighted_laplacian, Edge, Graph, MatrixWeights};
use crate::graph::{matrix_weighted_laplacian, ScalarWeights};
use crate::linalg::SymMatrix;
use crate::linf::{exact_linf_connectivity_with, LinfConfig};
use crate::space::{Exponent, NormedSpace};
use crate::tolerance::eps;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
        })
    }
}

/// One inequality `lhs relation rhs`, evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// `rhs − lhs` for `≤`, `lhs − rhs` for `≥`, `−|lhs − rhs|` for `=`.
    pub slack: f64,
    pub holds: bool,
    pub provenance: String,
    /// Set when a side is a search lower bound rather than an exact value.
    pub estimates_used: bool,
    /// For bounds with an equality characterisation: whether equality is attained.
    pub equality: Option<bool>,
}

impl BoundCheck {
    pub fn new(name: &str, lhs: f64, relation: Relation, rhs: f64, provenance: &str) -> Self {
        let slack = match relation {
            Relation::Le => rhs - lhs,
            Relation::Ge => lhs - rhs,
            Relation::Eq => -(lhs - rhs).abs(),
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            relation,
            slack,
            holds: slack >= -eps(),
            provenance: provenance.into(),
            estimates_used: false,
            equality: None,
        }
    }

    fn with_estimates(mut self, used: bool) -> Self {
        self.estimates_used = used;
        self
    }
}

/// How a value of `a(G, X)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Connectivity {
    pub value: f64,
    pub kind: ValueKind,
    pub source: String,
}

impl Connectivity {
    pub fn exact(value: f64, source: &str) -> Self {
        Self { value, kind: ValueKind::Exact, source: source.into() }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == ValueKind::Exact
    }
}

/// Settings for [`connectivity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValueConfig {
    pub budget: SearchBudget,
    pub seed: u64,
    pub node_cap: u64,
    pub max_attempts: usize,
}

impl ValueConfig {
    pub fn new(budget: SearchBudget, seed: u64) -> Self {
        Self { budget, seed, node_cap: crate::linf::DEFAULT_NODE_CAP, max_attempts: usize::MAX }
    }

    fn linf(&self) -> LinfConfig {
        LinfConfig {
            budget: SearchBudget::realize(),
            seed: self.seed,
            node_cap: self.node_cap,
            max_attempts: self.max_attempts,
        }
    }
}

/// Best available value of `a(G, X)`: exactly 0 for graphs too sparse or
/// disconnected to be rigid, exact via the ℓ∞ engine (also for ℓ_1², which
/// is ℓ∞² up to a factor 2), otherwise a search lower bound.
pub fn connectivity(g: &Graph, space: &NormedSpace, cfg: &ValueConfig) -> Result<Connectivity> {
    let d = space.dim();
    if g.n() < d + 1 {
        return Err(Error::TooSmall { needed: d + 1, have: g.n() });
    }
    // rank R(G,p) ≤ |E| and a disconnected framework flexes componentwise
    if g.edge_count() < d * g.n() - space.k_dimension().min(d * g.n()) || !g.is_connected() {
        return Ok(Connectivity::exact(0.0, "not rigid at any placement"));
    }
    let plane_l1 = d == 2 && space.exponent() == Some(Exponent::Finite(1.0));
    let mut best_lower = 0.0;
    if (space.is_linf() || plane_l1) && g.n() <= crate::linf::ENUM_VERTEX_LIMIT && g.edge_count() <= 64 {
        let scale = if plane_l1 { 2.0 } else { 1.0 };
        match exact_linf_connectivity_with(g, d, &cfg.linf()) {
            Ok(r) if r.exact => {
                let src = if plane_l1 { "exact linf^2 value doubled (linear isometry l1^2 -> linf^2)" } else { "exact linf engine" };
                return Ok(Connectivity::exact(scale * r.upper, src));
            }
            Ok(r) => best_lower = scale * r.lower,
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let est = match estimate_alg_connectivity(g, space, cfg.budget, cfg.seed) {
        Ok(e) => e.lower_bound,
        Err(Error::Unsatisfiable { .. }) => 0.0,
        Err(e) => return Err(e),
    };
    Ok(Connectivity { value: est.max(best_lower), kind: ValueKind::LowerBound, source: "placement search".into() })
}

/// `a(G,X) ≤ γ(X)/(2d − k(X)) · a(G)`, valid when `k(X) ≤ 2d − 1`.
pub fn general_upper_bound(g: &Graph, space: &NormedSpace, known: &Connectivity) -> Result<BoundCheck> {
    let (d, k) = (space.dim(), space.k_dimension());
    if k > 2 * d - 1 {
        return Err(Error::HypothesisViolated(format!("k(X) = {k} exceeds 2d - 1 = {}", 2 * d - 1)));
    }
    if g.n() < d + 1 {
        return Err(Error::TooSmall { needed: d + 1, have: g.n() });
    }
    let rhs = space.gamma() * algebraic_connectivity(g)? / (2 * d - k) as f64;
    Ok(BoundCheck::new(
        "general_upper_bound",
        known.value,
        Relation::Le,
        rhs,
        "trace-weighted Laplacian comparison: a(G,X) <= gamma(X) a(G) / (2d - k(X))",
    ))
}

/// The ℓ_p specialisation: `a(G,ℓ_p^d) ≤ a(G)/d^{2−2/p}` for `p < 2` and `a(G)/d` for `p > 2`.
pub fn lp_upper_bound(g: &Graph, space: &NormedSpace, known: &Connectivity) -> Result<BoundCheck> {
    let d = space.dim() as f64;
    let p = space.exponent().ok_or(Error::InvalidSpace("not an lp space".into()))?;
    let factor = match p {
        Exponent::Finite(p) if p < 2.0 => d.powf(2.0 - 2.0 / p),
        Exponent::Finite(p) if p == 2.0 => {
            return Err(Error::HypothesisViolated("p = 2 is outside the lp specialisation".into()))
        }
        _ => d,
    };
    Ok(BoundCheck::new(
        "lp_upper_bound",
        known.value,
        Relation::Le,
        algebraic_connectivity(g)? / factor,
        "lp specialisation of the trace bound",
    ))
}

/// `a(G, ℓ∞^d) ≤ n/(n−1) · ⌊min deg / d⌋`.
pub fn linf_degree_bound(g: &Graph, d: usize, known: &Connectivity) -> Result<BoundCheck> {
    let n = g.n();
    if n < d + 1 || d == 0 {
        return Err(Error::TooSmall { needed: d + 1, have: n });
    }
    let rhs = n as f64 / (n - 1) as f64 * (g.min_degree() / d) as f64;
    Ok(BoundCheck::new(
        "linf_degree_bound",
        known.value,
        Relation::Le,
        rhs,
        "diagonal bound on the block Laplacian: n/(n-1) floor(min deg / d)",
    ))
}

/// `λ_{d+1}(M) ≤ n/(n−1) · min_i m_ii` for PSD `M` of order `dn` vanishing on
/// the vectors `b_i ⊗ 1`.
pub fn min_eigen_row_bound(m: &SymMatrix, d: usize, n: usize) -> Result<BoundCheck> {
    if m.order() != d * n {
        return Err(Error::DimensionMismatch { expected: d * n, got: m.order() });
    }
    if n < 2 {
        return Err(Error::TooSmall { needed: 2, have: n });
    }
    // block-diagonal layout: coordinate i occupies rows i·n .. (i+1)·n
    let scale = m.as_slice().iter().fold(1.0f64, |a, b| a.max(b.abs()));
    for i in 0..d {
        let z: Vec<f64> = (0..d * n).map(|r| if r / n == i { 1.0 } else { 0.0 }).collect();
        let mz = m.mul_vec(&z)?;
        let residual = mz.iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual > eps() * scale * (n as f64) {
            return Err(Error::KernelMismatch { index: i, residual });
        }
    }
    let lam = crate::linalg::eigenvalue_k(m, d + 1)?;
    let min_diag = (0..d * n).map(|r| m.get(r, r)).fold(f64::INFINITY, f64::min);
    Ok(BoundCheck::new(
        "min_eigen_row_bound",
        lam,
        Relation::Le,
        n as f64 / (n - 1) as f64 * min_diag,
        "Courant-Fischer on the complement of the block-constant vectors",
    ))
}

/// `a(G, ℓ∞^d) ≤ 1` when `|E| ≤ dn`, with equality only for the octahedral graph in the plane.
pub fn sparse_bound(g: &Graph, d: usize, known: &Connectivity) -> Result<BoundCheck> {
    let n = g.n();
    if g.edge_count() > d * n {
        return Err(Error::TooDense { edges: g.edge_count(), limit: d * n });
    }
    if n < d + 1 {
        return Err(Error::TooSmall { needed: d + 1, have: n });
    }
    let mut c = BoundCheck::new(
        "sparse_bound",
        known.value,
        Relation::Le,
        1.0,
        "sparse graphs (|E| <= dn) in linf^d: a <= 1, equality only for K_{2,2,2} in the plane",
    )
    .with_estimates(!known.is_exact());
    let attained = (known.value - 1.0).abs() <= eps();
    let octahedral = d == 2 && n == 6 && are_isomorphic(g, &Graph::octahedral())?;
    c.equality = Some(attained);
    if attained && !octahedral {
        c.holds = false;
    }
    Ok(c)
}

/// `a(G, ℓ∞^d) ≤ a(G, ℓ∞^{d−1})`.
pub fn linf_dimension_monotone(value_d: &Connectivity, value_prev: &Connectivity) -> BoundCheck {
    BoundCheck::new(
        "linf_dimension_monotone",
        value_d.value,
        Relation::Le,
        value_prev.value,
        "projection onto the first d-1 coordinates merges monochrome parts",
    )
    .with_estimates(!(value_d.is_exact() && value_prev.is_exact()))
}

/// `a(G, ℓ∞^d) ≤ a(G)/d`.
pub fn linf_fiedler_fraction(g: &Graph, d: usize, known: &Connectivity) -> Result<BoundCheck> {
    Ok(BoundCheck::new(
        "linf_fiedler_fraction",
        known.value,
        Relation::Le,
        algebraic_connectivity(g)? / d as f64,
        "superadditivity of a(.) over the monochrome parts",
    ))
}

/// `a(G, ℓ∞^d)` is 0 or at least `a(P_n) = 2(1 − cos(π/n))`.
pub fn linf_path_floor(n: usize, known: &Connectivity) -> BoundCheck {
    let floor = if known.value <= eps() { 0.0 } else { 2.0 * (1.0 - (std::f64::consts::PI / n as f64).cos()) };
    BoundCheck::new(
        "linf_path_floor",
        known.value,
        Relation::Ge,
        floor,
        "connected spanning parts have a >= a(P_n)",
    )
    .with_estimates(!known.is_exact())
}

/// `a(G_1 □ G_2) = min{a(G_1), a(G_2)}` for the two parts of a plane decomposition.
pub fn linf_product_formula(n: usize, parts: &[Vec<Edge>]) -> Result<BoundCheck> {
    if parts.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: parts.len() });
    }
    let g1 = Graph::new(n, parts[0].iter().copied())?;
    let g2 = Graph::new(n, parts[1].iter().copied())?;
    let prod = algebraic_connectivity(&g1.cartesian_product(&g2))?;
    let min = algebraic_connectivity(&g1)?.min(algebraic_connectivity(&g2)?);
    Ok(BoundCheck::new(
        "linf_product_formula",
        prod,
        Relation::Eq,
        min,
        "algebraic connectivity of a Cartesian product is the smaller factor value",
    ))
}

/// Per-placement vertex deletion: `λ_{k+1}(L(H,p_H)) ≥ λ_{k+1}(L(G,p)) − γ(X)`.
pub fn vertex_deletion_placement(fw: &Framework, v: usize) -> Result<BoundCheck> {
    let d = fw.dim();
    let n = fw.graph().n();
    if n < d + 2 {
        return Err(Error::TooSmall { needed: d + 2, have: n });
    }
    let h = fw.delete_vertex(v)?;
    if !h.full_affine_span() {
        return Err(Error::HypothesisViolated("remaining points do not affinely span".into()));
    }
    Ok(BoundCheck::new(
        "vertex_deletion_placement",
        h.rigidity_eigenvalue()?,
        Relation::Ge,
        fw.rigidity_eigenvalue()? - fw.space().gamma(),
        "Schur-complement style deletion bound at a fixed placement",
    ))
}

/// `a(G∖v, X) ≥ a(G, X) − γ(X)` from the best available values.
pub fn vertex_deletion_bound(
    g: &Graph,
    space: &NormedSpace,
    v: usize,
    known_g: &Connectivity,
    known_h: &Connectivity,
) -> Result<BoundCheck> {
    let d = space.dim();
    if g.n() < d + 2 {
        return Err(Error::TooSmall { needed: d + 2, have: g.n() });
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(BoundCheck::new(
        "vertex_deletion_bound",
        known_h.value,
        Relation::Ge,
        known_g.value - space.gamma(),
        "deleting a vertex lowers a(G,X) by at most gamma(X)",
    )
    .with_estimates(!(known_g.is_exact() && known_h.is_exact())))
}

/// `λ_2(L(G,ω_1)) ≤ λ_2(L(G,ω_2))` when `ω_1 ≤ ω_2` edgewise.
pub fn weight_monotonicity(g: &Graph, w1: &ScalarWeights, w2: &ScalarWeights) -> Result<BoundCheck> {
    if let Some(k) = w1.values().iter().zip(w2.values()).position(|(a, b)| a > b) {
        return Err(Error::HypothesisViolated(format!("weight of edge {:?} decreases", g.edges()[k])));
    }
    let l1 = crate::linalg::eigenvalue_k(&weighted_laplacian(g, w1)?, 2)?;
    let l2 = crate::linalg::eigenvalue_k(&weighted_laplacian(g, w2)?, 2)?;
    Ok(BoundCheck::new(
        "weight_monotonicity",
        l1,
        Relation::Le,
        l2,
        "increasing edge weights does not decrease lambda_2",
    ))
}

/// `Σ_{i=1}^d λ_{d+i}(L(G,W)) ≤ λ_2(L(G, tr W))`.
pub fn trace_bound(g: &Graph, w: &MatrixWeights) -> Result<BoundCheck> {
    let d = w.dim();
    if g.n() < 2 {
        return Err(Error::TooSmall { needed: 2, have: g.n() });
    }
    let spec = matrix_weighted_laplacian(g, w)?.eigenvalues()?;
    let lhs: f64 = (1..=d).map(|i| spec.get(d + i)).sum::<Result<f64>>()?;
    let rhs = crate::linalg::eigenvalue_k(&weighted_laplacian(g, &w.trace_weights())?, 2)?;
    Ok(BoundCheck::new(
        "trace_bound",
        lhs,
        Relation::Le,
        rhs,
        "matrix-weighted Laplacian versus its trace weighting",
    ))
}

/// Whether `g` has exactly `dn − k(X)` edges and is rigid at a sampled placement.
pub fn is_minimally_rigid(g: &Graph, space: &NormedSpace, seed: u64) -> Result<bool> {
    let (n, d, k) = (g.n(), space.dim(), space.k_dimension());
    if d * n < k || g.edge_count() != d * n - k {
        return Ok(false);
    }
    Ok(sample_frameworks(g, space, seed, 200).iter().any(|f| f.is_infinitesimally_rigid().unwrap_or(false)))
}

/// `a(G, X) ≤ γ(X)` for minimally rigid `G`.
pub fn minimally_rigid_bound(g: &Graph, space: &NormedSpace, known: &Connectivity, seed: u64) -> Result<BoundCheck> {
    if g.n() < space.dim() + 1 {
        return Err(Error::TooSmall { needed: space.dim() + 1, have: g.n() });
    }
    if !is_minimally_rigid(g, space, seed)? {
        return Err(Error::HypothesisViolated("graph is not minimally rigid".into()));
    }
    Ok(BoundCheck::new(
        "minimally_rigid_bound",
        known.value,
        Relation::Le,
        space.gamma(),
        "minimally rigid graphs are not vertex-redundantly rigid, so a <= gamma",
    ))
}

/// Every graph-level bound whose hypotheses `g` and `space` satisfy, evaluated
/// against `known`. Bounds whose hypotheses fail are skipped, as are lower
/// bounds when `known` is itself only a lower bound.
pub fn graph_bounds(g: &Graph, space: &NormedSpace, known: &Connectivity, seed: u64) -> Result<Vec<BoundCheck>> {
    let d = space.dim();
    let mut out = Vec::new();
    let mut keep = |r: Result<BoundCheck>| -> Result<()> {
        match r {
            Ok(c) => out.push(c.with_estimates(!known.is_exact())),
            Err(Error::HypothesisViolated(_) | Error::TooDense { .. } | Error::TooSmall { .. }) => {}
            Err(e) => return Err(e),
        }
        Ok(())
    };
    keep(general_upper_bound(g, space, known))?;
    if space.exponent().is_some() {
        keep(lp_upper_bound(g, space, known))?;
    }
    if space.is_linf() {
        keep(linf_degree_bound(g, d, known))?;
        keep(linf_fiedler_fraction(g, d, known))?;
        // a lower bound on a(G) says nothing against a floor
        if known.is_exact() {
            keep(Ok(linf_path_floor(g.n(), known)))?;
        }
        keep(sparse_bound(g, d, known))?;
    }
    keep(minimally_rigid_bound(g, space, known, seed))?;
    Ok(out)
}

/// Seeded valid frameworks with full affine span; fewer than `count` if sampling keeps failing.
pub fn sample_frameworks(g: &Graph, space: &NormedSpace, seed: u64, count: usize) -> Vec<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * 20 {
        if out.len() == count {
            break;
        }
        let p = random_placement(&mut rng, g.n(), space.dim());
        if affine_span_dim(&p) < space.dim().min(g.n().saturating_sub(1)) {
            continue;
        }
        if let Ok(f) = make_framework(g, space, &p) {
            out.push(f);
        }
    }
    out
}

/// What broke redundancy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Failure {
    Vertex(usize),
    Edge(Edge),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyReport {
    pub rigid: bool,
    /// Deletions after which the framework is no longer rigid.
    pub failures: Vec<Failure>,
    /// Reason the verdict holds without a witness search, if any.
    pub certified_by: Option<String>,
    pub redundant: bool,
}

/// Whether `fw` is infinitesimally rigid and stays so after deleting any single edge.
pub fn edge_redundant_test(fw: &Framework) -> Result<RedundancyReport> {
    let rigid = fw.is_infinitesimally_rigid()?;
    let edges = fw.graph().edges().to_vec();
    let results: Vec<Result<bool>> =
        edges.par_iter().map(|&e| fw.without_edge(e)?.is_infinitesimally_rigid()).collect();
    let mut failures = Vec::new();
    for (e, r) in edges.into_iter().zip(results) {
        if !r? {
            failures.push(Failure::Edge(e));
        }
    }
    Ok(RedundancyReport { rigid, redundant: rigid && failures.is_empty(), failures, certified_by: None })
}

/// Rigid, and rigid after deleting any single vertex, all at `fw`'s placement.
pub fn vertex_redundant_at(fw: &Framework) -> Result<RedundancyReport> {
    let rigid = fw.is_infinitesimally_rigid()?;
    let n = fw.graph().n();
    let results: Vec<Result<bool>> =
        (0..n).into_par_iter().map(|v| fw.delete_vertex(v)?.is_infinitesimally_rigid()).collect();
    let mut failures = Vec::new();
    for (v, r) in results.into_iter().enumerate() {
        if !r? {
            failures.push(Failure::Vertex(v));
        }
    }
    Ok(RedundancyReport { rigid, redundant: rigid && failures.is_empty(), failures, certified_by: None })
}

/// Vertex-redundant rigidity of `g` in `X`: a witness search over sampled
/// placements, plus the sufficient condition `a(G,X) > γ(X)` and the
/// minimal-rigidity obstruction.
///
/// A negative search result is reported as such, never as a proof, unless
/// `g` is minimally rigid.
pub fn vertex_redundant_test(
    g: &Graph,
    space: &NormedSpace,
    budget: SearchBudget,
    seed: u64,
) -> Result<RedundancyReport> {
    let d = space.dim();
    if g.n() < d + 2 {
        return Err(Error::TooSmall { needed: d + 2, have: g.n() });
    }
    if is_minimally_rigid(g, space, seed)? {
        let fw = sample_frameworks(g, space, seed, 1);
        let mut report = match fw.first() {
            Some(f) => vertex_redundant_at(f)?,
            None => RedundancyReport { rigid: false, failures: vec![], certified_by: None, redundant: false },
        };
        report.redundant = false;
        report.certified_by = Some("minimally rigid: deleting a vertex leaves too few edges".into());
        return Ok(report);
    }
    let mut last = None;
    for fw in sample_frameworks(g, space, seed, budget.restarts.max(1)) {
        let rep = vertex_redundant_at(&fw)?;
        if rep.redundant {
            return Ok(rep);
        }
        last = Some(rep);
    }
    let value = connectivity(g, space, &ValueConfig::new(budget, seed))?;
    let mut report =
        last.unwrap_or(RedundancyReport { rigid: false, failures: vec![], certified_by: None, redundant: false });
    if value.value > space.gamma() + eps() {
        report.redundant = true;
        report.certified_by = Some(format!("a(G,X) >= {:.12} > gamma(X) = {}", value.value, space.gamma()));
    }
    Ok(report)
}
