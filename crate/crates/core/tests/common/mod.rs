//! Shared oracles, corpora and the per-criterion checks used by the
//! acceptance target. Oracles here are deliberately naive and independent
//! of the library code paths they check.
#![allow(dead_code)]

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use normrig::bounds::{
    connectivity, edge_redundant_test, graph_bounds, linf_dimension_monotone, min_eigen_row_bound,
    sample_frameworks, trace_bound, vertex_deletion_bound, vertex_deletion_placement, weight_monotonicity,
    BoundCheck, Connectivity, ValueConfig,
};
use normrig::experiments::{extend_edge_redundant, octahedral_two_cycles};
use normrig::graph::{algebraic_connectivity, find_odd_hole, is_perfect_small, MatrixWeights, ScalarWeights};
use normrig::linalg::{congruence, kron, perfect_shuffle};
use normrig::linf::{exact_linf_connectivity, h_tree, t_d_tree, verify_block_similarity};
use normrig::space::plane_l1_to_linf;
use normrig::{make_framework, monochrome_decompose, Error, Framework, Graph, Matrix, NormedSpace, Placement, SearchBudget, SymMatrix};

pub type Outcome = std::result::Result<String, String>;

// ---------------------------------------------------------------- oracles

/// Laplacian built entry by entry.
pub fn oracle_laplacian(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut l = vec![vec![0.0; n]; n];
    for &(u, v) in edges {
        l[u][u] += 1.0;
        l[v][v] += 1.0;
        l[u][v] -= 1.0;
        l[v][u] -= 1.0;
    }
    l
}

/// Smallest real root of `x³ + b x² + c x + d` with three real roots, by the
/// trigonometric formula.
pub fn cubic_smallest_root(b: f64, c: f64, d: f64) -> f64 {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let r = 2.0 * (-p / 3.0).sqrt();
    let phi = (3.0 * q / (p * r)).acos() / 3.0;
    (0..3)
        .map(|k| r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - b / 3.0)
        .fold(f64::INFINITY, f64::min)
}

/// Whether a spanning subgraph on `n` vertices is a single `n`-cycle.
pub fn is_hamilton_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() != n {
        return false;
    }
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&x| x == 2) && connected(n, edges)
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Bull: a triangle with two pendant edges at distinct corners, recognised
/// from its degree sequence and triangle count.
pub fn is_bull(n: usize, edges: &[(usize, usize)]) -> bool {
    if n != 5 || edges.len() != 5 || !connected(n, edges) {
        return false;
    }
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.sort();
    let has = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut triangles = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if has(a, b) && has(b, c) && has(a, c) {
                    triangles += 1;
                }
            }
        }
    }
    deg == [1, 1, 2, 3, 3] && triangles == 1
}

// ---------------------------------------------------------------- corpora

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_placement(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Placement {
    Placement::new((0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()).unwrap()
}

/// A valid framework of `g` at a random placement (resampling the measure-zero failures).
pub fn random_framework(rng: &mut ChaCha8Rng, g: &Graph, space: &NormedSpace) -> Framework {
    loop {
        let p = random_placement(rng, g.n(), space.dim());
        if let Ok(f) = make_framework(g, space, &p) {
            return f;
        }
    }
}

pub fn property_spaces() -> Vec<NormedSpace> {
    vec![
        NormedSpace::linf(2).unwrap(),
        NormedSpace::linf(3).unwrap(),
        NormedSpace::lp(1.0, 2).unwrap(),
        NormedSpace::lp(2.0, 2).unwrap(),
        NormedSpace::lp(1.5, 3).unwrap(),
    ]
}

pub fn sweep_spaces() -> Vec<NormedSpace> {
    vec![
        NormedSpace::linf(2).unwrap(),
        NormedSpace::linf(3).unwrap(),
        NormedSpace::lp(1.0, 2).unwrap(),
        NormedSpace::lp(1.5, 3).unwrap(),
    ]
}

/// Named graphs that appear as worked examples.
pub fn named_graphs() -> Vec<(String, Graph)> {
    let mut v = vec![
        ("K_4".to_string(), Graph::complete(4)),
        ("K_5".into(), Graph::complete(5)),
        ("K_6".into(), Graph::complete(6)),
        ("K_7".into(), Graph::complete(7)),
        ("K_2,2,2".into(), Graph::octahedral()),
        ("P_4".into(), Graph::path(4)),
        ("C_5".into(), Graph::cycle(5)),
        ("bull".into(), Graph::bull()),
        ("W_5".into(), Graph::wheel(5)),
        ("T_3".into(), t_d_tree(3)),
        ("T_4".into(), t_d_tree(4)),
    ];
    for i in 1..=8 {
        v.push((format!("H_{i}"), h_tree(i).unwrap()));
    }
    v
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

// ---------------------------------------------------------------- criterion 1

pub fn closed_form_spectra() -> Outcome {
    let (res, t) = timed(|| -> std::result::Result<usize, String> {
        let pi = std::f64::consts::PI;
        let mut checked = 0;
        for n in 2..=12usize {
            let nf = n as f64;
            let mut cases = vec![
                ("P", Graph::path(n), 2.0 * (1.0 - (pi / nf).cos())),
                ("K", Graph::complete(n), nf),
            ];
            if n >= 3 {
                cases.push(("C", Graph::cycle(n), 2.0 * (1.0 - (2.0 * pi / nf).cos())));
            }
            for (name, g, expected) in cases {
                let a = algebraic_connectivity(&g).map_err(|e| e.to_string())?;
                ensure((a - expected).abs() <= 1e-9, || format!("a({name}_{n}) = {a}, expected {expected}"))?;
                checked += 1;
            }
        }
        Ok(checked)
    });
    let checked = res?;
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{checked} closed forms within 1e-9 in {t:.2?}"))
}

// ---------------------------------------------------------------- criterion 2

pub fn exact_linf_values() -> Outcome {
    let s2 = 2f64.sqrt();
    let t3 = cubic_smallest_root(-8.0, 17.0, -6.0);
    let cases: [(&str, Graph, usize, f64, Duration); 4] = [
        ("K_4/d=2", Graph::complete(4), 2, 2.0 - s2, Duration::from_secs(600)),
        ("K_5/d=2", Graph::complete(5), 2, (5.0 - 13f64.sqrt()) / 2.0, Duration::from_secs(600)),
        ("K_6/d=2", Graph::complete(6), 2, 1.0, Duration::from_secs(10)),
        ("K_6/d=3", Graph::complete(6), 3, t3, Duration::from_secs(600)),
    ];
    let mut notes = Vec::new();
    for (name, g, d, expected, limit) in cases {
        let (r, t) = timed(|| exact_linf_connectivity(&g, d, SearchBudget::realize(), 0));
        let r = r.map_err(|e| format!("{name}: {e}"))?;
        ensure(r.exact, || format!("{name}: not exact (lower {}, upper {})", r.lower, r.upper))?;
        ensure((r.upper - expected).abs() <= 1e-6, || format!("{name}: {} vs {expected}", r.upper))?;
        ensure(t < limit, || format!("{name}: took {t:?}"))?;
        let dec = r.best_decomposition.as_ref().ok_or(format!("{name}: no decomposition"))?;
        let p = dec.certificate.as_ref().ok_or(format!("{name}: no certificate"))?;
        let fw = make_framework(&g, &NormedSpace::linf(d).unwrap(), p).map_err(|e| format!("{name}: {e}"))?;
        let again = monochrome_decompose(&fw).map_err(|e| format!("{name}: {e}"))?;
        ensure(again.parts == dec.parts, || format!("{name}: certificate does not reproduce the parts"))?;
        let lam = fw.rigidity_eigenvalue().unwrap();
        ensure((lam - r.upper).abs() <= 1e-9, || format!("{name}: certificate eigenvalue {lam} vs {}", r.upper))?;
        notes.push(format!("{name}={:.6} ({t:.0?})", r.upper));
    }
    Ok(notes.join(", "))
}

// ---------------------------------------------------------------- criterion 3

pub fn k5_integer_points(lift: f64) -> Placement {
    Placement::new(vec![vec![1.0, -2.0], vec![-2.0, 0.0], vec![0.0, 1.0], vec![2.0, 0.0], vec![-1.0, 2.0 + lift]]).unwrap()
}

pub fn k5_example() -> Outcome {
    let g = Graph::complete(5);
    let s = NormedSpace::linf(2).unwrap();
    match make_framework(&g, &s, &k5_integer_points(0.0)) {
        Err(Error::NonSmoothEdge((2, 4))) => {}
        other => return Err(format!("integer placement: expected a tie on (2,4), got {other:?}")),
    }
    let fw = make_framework(&g, &s, &k5_integer_points(1e-6)).map_err(|e| e.to_string())?;
    let dec = monochrome_decompose(&fw).map_err(|e| e.to_string())?;
    for part in &dec.parts {
        ensure(is_bull(5, part), || format!("part {part:?} is not a bull"))?;
    }
    let expected = (5.0 - 13f64.sqrt()) / 2.0;
    let lam = fw.rigidity_eigenvalue().unwrap();
    ensure((lam - expected).abs() <= 1e-9, || format!("eigenvalue {lam} vs {expected}"))?;

    // entrywise: L[(v,i),(w,j)] = δ_ij · L_{G_i}[v][w]
    let l = fw.laplacian();
    let mut worst = 0.0f64;
    for (i, part) in dec.parts.iter().enumerate() {
        let li = oracle_laplacian(5, part);
        for v in 0..5 {
            for w in 0..5 {
                for j in 0..2 {
                    let want = if i == j { li[v][w] } else { 0.0 };
                    worst = worst.max((l.get(v * 2 + i, w * 2 + j) - want).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-9, || format!("block similarity off by {worst:e}"))?;
    let bs = verify_block_similarity(&fw).map_err(|e| e.to_string())?;
    ensure(bs.holds && bs.max_entry_diff <= 1e-9, || format!("library block similarity {bs:?}"))?;
    Ok(format!("bull/bull, eigenvalue {lam:.12}, max block deviation {worst:.1e}"))
}

// ---------------------------------------------------------------- criterion 4

#[derive(Default)]
pub struct Tally {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(what());
        }
    }
}

/// Structural checks on one framework; used by both the proptests and the acceptance run.
pub fn framework_invariants(fw: &Framework, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let (n, d) = (fw.graph().n(), fw.dim());
    let k = fw.space().k_dimension();
    let tag = format!("{} n={n} m={}", fw.space(), fw.graph().edge_count());
    let l = fw.laplacian();
    let spec = l.eigenvalues().unwrap().values;
    let scale = 1.0f64.max(spec.last().copied().unwrap_or(0.0));
    t.check(spec[0] >= -1e-9 * scale, || format!("{tag}: not PSD, λ_1 = {:e}", spec[0]));
    t.check(spec[..k.min(spec.len())].iter().all(|x| x.abs() < 1e-9), || format!("{tag}: trivial eigenvalues {:?}", &spec[..k]));
    let diff = l.max_abs_diff(&fw.laplacian_from_rigidity_matrix());
    t.check(diff <= 1e-9, || format!("{tag}: RᵀR differs by {diff:e}"));

    // random 2-colouring of the edges
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for &e in fw.graph().edges() {
        if rng.gen_bool(0.5) { a.push(e) } else { b.push(e) }
    }
    let la = fw.spanning_subframework(&a).unwrap().laplacian();
    let lb = fw.spanning_subframework(&b).unwrap().laplacian();
    let sum = la.add(&lb).unwrap();
    let diff = l.max_abs_diff(&sum);
    t.check(diff <= 1e-12, || format!("{tag}: Laplacian sum off by {diff:e}"));

    if fw.space().is_linf() {
        let dec = monochrome_decompose(fw).unwrap();
        let min = dec.part_connectivities(n).unwrap().into_iter().fold(f64::INFINITY, f64::min);
        let lam = spec[d];
        t.check((min - lam).abs() <= 1e-9, || format!("{tag}: min a(G_i) = {min} vs λ_(d+1) = {lam}"));
        if fw.graph().is_complete() {
            for part in dec.part_graphs(n).unwrap() {
                t.check(find_odd_hole(&part).is_none(), || format!("{tag}: odd hole in {:?}", part.edges()));
                if d == 2 {
                    t.check(is_perfect_small(&part).unwrap(), || format!("{tag}: imperfect part {:?}", part.edges()));
                }
            }
        }
    }
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    SymMatrix::from_upper(n, |_, _| rng.gen_range(-1.0..1.0))
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
    Matrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..1.0))
}

/// Weyl, Ostrowski and permutation-congruence checks on one random instance.
pub fn matrix_invariants(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let n = rng.gen_range(2..=12);
    let a = random_symmetric(rng, n);
    let e = random_symmetric(rng, n).scaled(rng.gen_range(0.0..0.5));
    let b = a.add(&e).unwrap();
    let (sa, sb) = (a.eigenvalues().unwrap().values, b.eigenvalues().unwrap().values);
    let norm = e.to_matrix().spectral_norm().unwrap();
    for j in 0..n {
        t.check((sa[j] - sb[j]).abs() <= norm + 1e-11, || format!("Weyl: j={j} |Δλ| = {} > {norm}", (sa[j] - sb[j]).abs()));
    }

    // Ostrowski on a PSD A
    let g = random_matrix(rng, n, n);
    let psd = g.gram();
    let s = random_matrix(rng, n, n).add(&Matrix::identity(n).scaled(2.0)).unwrap();
    let sts = s.gram();
    let (lo, hi) = {
        let v = sts.eigenvalues().unwrap();
        (v.min(), v.max())
    };
    let lp = psd.eigenvalues().unwrap().values;
    let lc = congruence(&psd, &s).unwrap().eigenvalues().unwrap().values;
    for j in 0..n {
        let tol = 1e-11 * (1.0 + lc[j].abs());
        t.check(lc[j] >= lo * lp[j] - tol && lc[j] <= hi * lp[j] + tol, || {
            format!("Ostrowski: j={j} {} not in [{}, {}]", lc[j], lo * lp[j], hi * lp[j])
        });
    }

    // permutation congruence
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = Matrix::from_fn(n, n, |i, j| if perm[i] == j { 1.0 } else { 0.0 });
    let sp = congruence(&a, &p).unwrap().eigenvalues().unwrap().values;
    let worst = sa.iter().zip(&sp).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    t.check(worst <= 1e-10, || format!("permutation congruence moved a spectrum by {worst:e}"));
}

pub fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut t = Tally::default();
    let spaces = property_spaces();
    let mut frameworks = 0;
    for space in &spaces {
        for i in 0..100 {
            let n = rng.gen_range(space.dim() + 1..=8);
            let g = if space.is_linf() && i % 2 == 0 { Graph::complete(n) } else { random_graph(&mut rng, n, 0.6) };
            let fw = random_framework(&mut rng, &g, space);
            framework_invariants(&fw, &mut rng, &mut t);
            frameworks += 1;
        }
    }
    for _ in 0..100 {
        matrix_invariants(&mut rng, &mut t);
    }
    if t.violations.is_empty() {
        Ok(format!("{frameworks} frameworks, {} checks, 0 violations", t.checks))
    } else {
        Err(format!("{} violations, first: {}", t.violations.len(), t.violations.join("; ")))
    }
}

// ---------------------------------------------------------------- criterion 5

/// Upper bounds stay meaningful with any lower bound on the left, so the
/// sweep trades search effort for corpus size.
pub fn sweep_config(seed: u64) -> ValueConfig {
    let mut cfg = ValueConfig::new(SearchBudget::new(4, 15), seed);
    cfg.max_attempts = 24;
    cfg.node_cap = 500_000;
    cfg
}

fn known_value(g: &Graph, s: &NormedSpace, seed: u64) -> std::result::Result<Connectivity, String> {
    connectivity(g, s, &sweep_config(seed)).map_err(|e| format!("a(G,{s}) on {:?}: {e}", g.edges()))
}

fn record(out: &mut Vec<(String, BoundCheck)>, tag: &str, r: normrig::Result<BoundCheck>) -> std::result::Result<(), String> {
    match r {
        Ok(c) => {
            out.push((tag.to_string(), c));
            Ok(())
        }
        Err(Error::HypothesisViolated(_) | Error::TooSmall { .. } | Error::TooDense { .. }) => Ok(()),
        Err(e) => Err(format!("{tag}: {e}")),
    }
}

/// Every bound check for one graph across the sweep spaces.
pub fn sweep_graph(tag: &str, g: &Graph, seed: u64) -> std::result::Result<Vec<(String, BoundCheck)>, String> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut linf_values = Vec::new();
    for s in sweep_spaces() {
        if g.n() < s.dim() + 1 {
            continue;
        }
        let t = format!("{tag} in {s}");
        let known = known_value(g, &s, seed)?;
        for c in graph_bounds(g, &s, &known, seed).map_err(|e| format!("{t}: {e}"))? {
            out.push((t.clone(), c));
        }
        if s.is_linf() {
            linf_values.push(known.clone());
        }
        // vertex deletion against the best values of G∖v
        if g.n() >= s.dim() + 2 {
            let v = rng.gen_range(0..g.n());
            let h = g.delete_vertex(v);
            let known_h = known_value(&h, &s, seed)?;
            if known_h.is_exact() {
                record(&mut out, &t, vertex_deletion_bound(g, &s, v, &known, &known_h))?;
            }
        }
        // per-placement forms
        for fw in sample_frameworks(g, &s, seed, 2) {
            if g.n() >= s.dim() + 2 {
                for v in 0..g.n() {
                    record(&mut out, &t, vertex_deletion_placement(&fw, v))?;
                }
            }
            if s.is_linf() {
                let (n, d) = (g.n(), s.dim());
                let m = congruence(&fw.laplacian(), &perfect_shuffle(d, n)).unwrap();
                record(&mut out, &t, min_eigen_row_bound(&m, d, n))?;
            }
        }
    }
    if let [d2, d3] = &linf_values[..] {
        if d2.is_exact() {
            out.push((format!("{tag} linf^3 vs linf^2"), linf_dimension_monotone(d3, d2)));
        }
    }
    // weighted Laplacians
    if g.edge_count() > 0 {
        let w1: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(0.0..2.0)).collect();
        let w2: Vec<f64> = w1.iter().map(|w| w + rng.gen_range(0.0..1.0)).collect();
        let w1 = ScalarWeights::new(g, w1).unwrap();
        let w2 = ScalarWeights::new(g, w2).unwrap();
        record(&mut out, &format!("{tag} weights"), weight_monotonicity(g, &w1, &w2))?;
        for d in [2, 3] {
            let ws = (0..g.edge_count()).map(|_| random_matrix(&mut rng, d, d).gram()).collect();
            let w = MatrixWeights::new(g, d, ws).unwrap();
            record(&mut out, &format!("{tag} matrix weights d={d}"), trace_bound(g, &w))?;
        }
    }
    Ok(out)
}

pub fn bound_sweep() -> Outcome {
    let start = Instant::now();
    let mut corpus = named_graphs();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let n = rng.gen_range(4..=8);
        let p = rng.gen_range(0.3..0.8);
        corpus.push((format!("random #{i}"), random_graph(&mut rng, n, p)));
    }
    let mut total = 0;
    let mut names = std::collections::BTreeSet::new();
    for (i, (tag, g)) in corpus.iter().enumerate() {
        for (where_, c) in sweep_graph(tag, g, i as u64)? {
            total += 1;
            names.insert(c.name.clone());
            if !c.holds || c.slack < -1e-9 {
                return Err(format!("{} violated on {where_}: {} {} {} (slack {:e}; {})", c.name, c.lhs, c.relation, c.rhs, c.slack, c.provenance));
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{} graphs, {total} checks across {} bound families, all hold ({t:.1?})", corpus.len(), names.len()))
}

// ---------------------------------------------------------------- criterion 6

pub const OCTAHEDRAL_SEED: u64 = 7;

pub fn octahedral_and_k7() -> Outcome {
    let oct = octahedral_two_cycles(SearchBudget::realize(), OCTAHEDRAL_SEED).map_err(|e| e.to_string())?;
    let dec = monochrome_decompose(&oct).map_err(|e| e.to_string())?;
    ensure(dec.parts.len() == 2 && dec.parts.iter().all(|p| is_hamilton_cycle(6, p)), || format!("parts {:?}", dec.parts))?;
    let lam = oct.rigidity_eigenvalue().unwrap();
    ensure((lam - 1.0).abs() <= 1e-9, || format!("eigenvalue {lam}"))?;

    let k6 = make_framework(&Graph::complete(6), oct.space(), oct.placement()).map_err(|e| e.to_string())?;
    let k7 = extend_edge_redundant(&k6, &[0.5, 0.9], 1, 2000).map_err(|e| e.to_string())?;
    let q = k7.placement().point(6).to_vec();
    let dist = ((q[0] - 0.5).powi(2) + (q[1] - 0.9).powi(2)).sqrt();
    ensure(dist <= 0.1, || format!("extra vertex at {q:?} is {dist} from (0.5, 0.9)"))?;
    ensure(edge_redundant_test(&k7).unwrap().redundant, || "K_7 fails edge_redundant_test".into())?;
    // direct: rigid, and rigid after every single edge deletion
    ensure(k7.rigidity_eigenvalue().unwrap() > 1e-9, || "K_7 not rigid".into())?;
    for &e in k7.graph().edges() {
        let lam = k7.without_edge(e).unwrap().rigidity_eigenvalue().unwrap();
        ensure(lam > 1e-9, || format!("K_7 minus {e:?} has eigenvalue {lam}"))?;
    }
    Ok(format!("two 6-cycles, eigenvalue {lam:.12}; K_7 vertex at ({:.4}, {:.4}) edge-redundant", q[0], q[1]))
}

// ---------------------------------------------------------------- criterion 7

pub fn isometry_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let l1 = NormedSpace::lp(1.0, 2).unwrap();
    let linf = NormedSpace::linf(2).unwrap();
    let phi = plane_l1_to_linf();
    let mut worst_eig = 0.0f64;
    let mut worst_entry = 0.0f64;
    let mut count = 0;
    while count < 100 {
        let n = rng.gen_range(3..=8);
        let g = random_graph(&mut rng, n, 0.7);
        let fw1 = random_framework(&mut rng, &g, &l1);
        let q = fw1.placement().mapped(&phi).unwrap();
        let Ok(fwi) = make_framework(&g, &linf, &q) else { continue };
        count += 1;
        let (a, b) = (fw1.laplacian(), fwi.laplacian());
        let s = kron(&Matrix::identity(n), &phi).unwrap();
        let back = congruence(&b, &s).unwrap();
        worst_entry = worst_entry.max(a.max_abs_diff(&back));
        let (sa, sb) = (a.eigenvalues().unwrap().values, b.eigenvalues().unwrap().values);
        for (x, y) in sa.iter().zip(&sb) {
            worst_eig = worst_eig.max((0.5 * x - y).abs());
        }
        let (ra, rb) = (fw1.rigidity_eigenvalue().unwrap(), fwi.rigidity_eigenvalue().unwrap());
        worst_eig = worst_eig.max((0.5 * ra - rb).abs());
    }
    ensure(worst_entry <= 1e-9, || format!("congruence off by {worst_entry:e}"))?;
    ensure(worst_eig <= 1e-9, || format!("half-scaling off by {worst_eig:e}"))?;
    Ok(format!("100 frameworks, max |½λ(ℓ1) − λ(ℓ∞)| = {worst_eig:.1e}"))
}

// ---------------------------------------------------------------- criterion 8

pub fn negative_results() -> Outcome {
    let mut notes = Vec::new();
    for d in [2usize, 3] {
        let n = 2 * d + 1;
        let g = Graph::complete(n);
        let s = NormedSpace::linf(d).unwrap();
        let samples = sample_frameworks(&g, &s, 11 + d as u64, 100);
        ensure(samples.len() == 100, || format!("only {} samples", samples.len()))?;
        for fw in &samples {
            ensure(!edge_redundant_test(fw).unwrap().redundant, || format!("edge-redundant K_{n} at {:?}", fw.placement()))?;
            for part in monochrome_decompose(fw).unwrap().parts {
                ensure(!is_hamilton_cycle(n, &part), || format!("spanning cycle part {part:?}"))?;
                if n == 5 {
                    ensure(!(part.len() == 5 && is_hamilton_cycle(5, &part)), || "C_5 part".into())?;
                }
            }
        }
        notes.push(format!("100 K_{n} in linf^{d}"));
    }
    Ok(format!("{}: none edge-redundant, no spanning-cycle (C_5) part", notes.join(", ")))
}
