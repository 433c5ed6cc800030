//! Bar-joint frameworks in normed spaces: rigidity matrices, framework
//! Laplacians and rigidity eigenvalues.

pub(crate) mod search;

pub use search::{estimate_alg_connectivity, Estimate, SearchBudget};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::linalg::{orthonormalize, Matrix, SymMatrix};
use crate::space::{NormedSpace, SupportFunctional};
use crate::tolerance::eps;

/// Points `p_v ∈ ℝ^d`, stored flat with vertex `v` at `v·d .. v·d + d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Placement {
    d: usize,
    coords: Vec<f64>,
}

impl Placement {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        let mut coords = Vec::with_capacity(points.len() * d);
        for p in &points {
            if p.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.len() });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(d, coords)
    }

    pub fn from_flat(d: usize, coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if d == 0 && !coords.is_empty() || d > 0 && coords.len() % d != 0 {
            return Err(Error::DimensionMismatch { expected: d, got: coords.len() });
        }
        Ok(Self { d, coords })
    }

    pub fn n(&self) -> usize {
        if self.d == 0 { 0 } else { self.coords.len() / self.d }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, v: usize) -> &[f64] {
        &self.coords[v * self.d..(v + 1) * self.d]
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|v| self.point(v).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    /// `p_v − p_w`.
    pub fn diff(&self, v: usize, w: usize) -> Vec<f64> {
        self.point(v).iter().zip(self.point(w)).map(|(a, b)| a - b).collect()
    }

    /// Applies a linear map to every point.
    pub fn mapped(&self, m: &Matrix) -> Result<Placement> {
        let pts = (0..self.n()).map(|v| m.mul_vec(self.point(v))).collect::<Result<Vec<_>>>()?;
        Placement::new(pts)
    }

    /// Placement with vertex `v` moved to `perm[v]` and coordinate `i` moved to `coord_perm[i]`.
    pub fn permuted(&self, perm: &[usize], coord_perm: &[usize]) -> Placement {
        let mut coords = vec![0.0; self.coords.len()];
        for v in 0..self.n() {
            for i in 0..self.d {
                coords[perm[v] * self.d + coord_perm[i]] = self.coords[v * self.d + i];
            }
        }
        Placement { d: self.d, coords }
    }

    /// Placement without vertex `v`; later vertices shift down.
    pub fn without_vertex(&self, v: usize) -> Placement {
        let mut coords = self.coords.clone();
        coords.drain(v * self.d..(v + 1) * self.d);
        Placement { d: self.d, coords }
    }

    /// Appends a point as a new last vertex.
    pub fn with_point(&self, p: &[f64]) -> Result<Placement> {
        if p.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: p.len() });
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(p);
        Placement::from_flat(self.d, coords)
    }
}

/// Dimension of the affine span of the points.
pub fn affine_span_dim(pts: &Placement) -> usize {
    let n = pts.n();
    if n < 2 {
        return 0;
    }
    let diffs = Matrix::from_fn(n - 1, pts.dim(), |r, c| pts.point(r + 1)[c] - pts.point(0)[c]);
    let scale = diffs.max_abs();
    if scale == 0.0 {
        return 0;
    }
    diffs.rank(eps() * scale)
}

/// A validated framework `(G, p)` in a normed space, with cached edge functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework {
    graph: Graph,
    space: NormedSpace,
    placement: Placement,
    functionals: Vec<SupportFunctional>,
}

/// Validates `(G, p)`: every edge must join distinct points along a smooth direction.
pub fn make_framework(g: &Graph, space: &NormedSpace, pts: &Placement) -> Result<Framework> {
    if pts.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: pts.n() });
    }
    if pts.dim() != space.dim() && g.n() > 0 {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: pts.dim() });
    }
    let mut functionals = Vec::with_capacity(g.edge_count());
    for &(v, w) in g.edges() {
        let x = pts.diff(v, w);
        if x.iter().all(|&c| c == 0.0) {
            return Err(Error::CoincidentEndpoints((v, w)));
        }
        match space.support_functional(&x) {
            Ok(phi) => functionals.push(phi),
            Err(Error::NotSmooth) => return Err(Error::NonSmoothEdge((v, w))),
            Err(e) => return Err(e),
        }
    }
    Ok(Framework { graph: g.clone(), space: space.clone(), placement: pts.clone(), functionals })
}

/// Spectral summary of a framework.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityReport {
    /// `λ_{k(X)+1}(L(G,p))`.
    pub rigidity_eigenvalue: f64,
    pub kernel_dim: usize,
    pub rank: usize,
    pub infinitesimally_rigid: bool,
    pub full_affine_span: bool,
    pub k: usize,
    pub trivial_dim: usize,
    pub spectrum: Vec<f64>,
}

impl Framework {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `φ_{v,w}` for each edge, computed on `p_v − p_w` with `v < w`.
    pub fn functionals(&self) -> &[SupportFunctional] {
        &self.functionals
    }

    pub fn functional(&self, u: usize, v: usize) -> Option<&SupportFunctional> {
        self.graph.edge_index(u, v).map(|i| &self.functionals[i])
    }

    /// `R(G,p)`: row `vw` carries `φ_{v,w}` in `v`'s block and `−φ_{v,w}` in `w`'s.
    pub fn rigidity_matrix(&self) -> Matrix {
        let d = self.dim();
        let mut r = Matrix::zeros(self.graph.edge_count(), d * self.graph.n());
        for (row, (&(v, w), phi)) in self.graph.edges().iter().zip(&self.functionals).enumerate() {
            for (i, &x) in phi.row().iter().enumerate() {
                r.set(row, v * d + i, x);
                r.set(row, w * d + i, -x);
            }
        }
        r
    }

    /// `L(G,p)` from the block formula `Σ φᵀφ` on the diagonal, `−φᵀφ` off it.
    pub fn laplacian(&self) -> SymMatrix {
        let d = self.dim();
        let n = self.graph.n();
        let mut m = Matrix::zeros(d * n, d * n);
        for (&(v, w), phi) in self.graph.edges().iter().zip(&self.functionals) {
            let f = phi.row();
            for a in 0..d {
                for b in 0..d {
                    let t = f[a] * f[b];
                    if t == 0.0 {
                        continue;
                    }
                    m.add_at(v * d + a, v * d + b, t);
                    m.add_at(w * d + a, w * d + b, t);
                    m.add_at(v * d + a, w * d + b, -t);
                    m.add_at(w * d + a, v * d + b, -t);
                }
            }
        }
        SymMatrix::try_from_matrix(&m).expect("block formula is symmetric term by term")
    }

    /// `R(G,p)ᵀ R(G,p)`, the other route to the framework Laplacian.
    pub fn laplacian_from_rigidity_matrix(&self) -> SymMatrix {
        self.rigidity_matrix().gram()
    }

    /// Spanning trivial flexes: translations, plus rotations `u_v = A p_v` in
    /// Euclidean spaces, orthonormalised.
    pub fn trivial_flex_basis(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let n = self.graph.n();
        let mut gens = Vec::new();
        for i in 0..d {
            let mut u = vec![0.0; d * n];
            for v in 0..n {
                u[v * d + i] = 1.0;
            }
            gens.push(u);
        }
        if self.space.is_euclidean() {
            for a in 0..d {
                for b in a + 1..d {
                    // A = e_a e_bᵀ − e_b e_aᵀ
                    let mut u = vec![0.0; d * n];
                    for v in 0..n {
                        let p = self.placement.point(v);
                        u[v * d + a] = p[b];
                        u[v * d + b] = -p[a];
                    }
                    gens.push(u);
                }
            }
        }
        orthonormalize(&gens, 1e-8)
    }

    pub fn full_affine_span(&self) -> bool {
        affine_span_dim(&self.placement) == self.dim()
    }

    /// `λ_{k(X)+1}(L(G,p))`, snapped to zero below the global tolerance.
    pub fn rigidity_eigenvalue(&self) -> Result<f64> {
        let k = self.space.k_dimension();
        let lam = self.laplacian().eigenvalues()?.get(k + 1).map_err(|_| self.too_small(k))?;
        Ok(snap(lam))
    }

    fn too_small(&self, k: usize) -> Error {
        Error::TooSmall { needed: (k + 1).div_ceil(self.dim()), have: self.graph.n() }
    }

    pub fn rigidity_report(&self) -> Result<RigidityReport> {
        let k = self.space.k_dimension();
        let spec = self.laplacian().eigenvalues()?;
        let lam = spec.get(k + 1).map_err(|_| self.too_small(k))?;
        let dn = spec.values.len();
        let kernel_dim = spec.count_below(eps());
        let full = self.full_affine_span();
        let trivial_dim = self.trivial_flex_basis().len();
        let infinitesimally_rigid = if full { kernel_dim == k } else { kernel_dim == trivial_dim };
        Ok(RigidityReport {
            rigidity_eigenvalue: snap(lam),
            kernel_dim,
            rank: dn - kernel_dim,
            infinitesimally_rigid,
            full_affine_span: full,
            k,
            trivial_dim,
            spectrum: spec.values,
        })
    }

    pub fn is_infinitesimally_rigid(&self) -> Result<bool> {
        Ok(self.rigidity_report()?.infinitesimally_rigid)
    }

    /// The induced subframework on `V ∖ {v}`.
    pub fn delete_vertex(&self, v: usize) -> Result<Framework> {
        let n = self.graph.n();
        if n < 2 {
            return Err(Error::TooSmall { needed: 2, have: n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        make_framework(&self.graph.delete_vertex(v), &self.space, &self.placement.without_vertex(v))
    }

    /// The same placement with one edge removed.
    pub fn without_edge(&self, e: Edge) -> Result<Framework> {
        let e = edge(e.0, e.1);
        let i = self.graph.edge_index(e.0, e.1).ok_or(Error::UnknownEdge(e))?;
        let mut f = self.clone();
        f.graph = self.graph.without_edge(e);
        f.functionals.remove(i);
        Ok(f)
    }

    /// `(H, p)` for a spanning subgraph `H` given by its edges.
    pub fn spanning_subframework(&self, edges: &[Edge]) -> Result<Framework> {
        let h = self.graph.spanning_subgraph(edges)?;
        let functionals = h
            .edges()
            .iter()
            .map(|&(u, v)| self.functional(u, v).cloned().expect("subgraph edge"))
            .collect();
        Ok(Framework { graph: h, space: self.space.clone(), placement: self.placement.clone(), functionals })
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < eps() { 0.0 } else { x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_points(nudge: f64) -> Placement {
        Placement::new(vec![
            vec![1.0, -2.0],
            vec![-2.0, 0.0],
            vec![0.0, 1.0],
            vec![2.0, 0.0],
            vec![-1.0, 2.0 + nudge],
        ])
        .unwrap()
    }

    fn k5_example() -> Framework {
        make_framework(&Graph::complete(5), &NormedSpace::linf(2).unwrap(), &k5_points(1e-6)).unwrap()
    }

    #[test]
    fn integer_k5_placement_has_a_tie() {
        // p_2 − p_4 = (1, −1) sits on a cone wall
        let linf = NormedSpace::linf(2).unwrap();
        assert_eq!(
            make_framework(&Graph::complete(5), &linf, &k5_points(0.0)),
            Err(Error::NonSmoothEdge((2, 4)))
        );
    }

    #[test]
    fn validation_errors() {
        let linf = NormedSpace::linf(2).unwrap();
        let g = Graph::path(2);
        let same = Placement::new(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(make_framework(&g, &linf, &same), Err(Error::CoincidentEndpoints((0, 1))));
        let tie = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(make_framework(&g, &linf, &tie), Err(Error::NonSmoothEdge((0, 1))));
        assert!(k5_example().graph().is_complete());
    }

    #[test]
    fn rigidity_matrix_rows() {
        let linf = NormedSpace::linf(2).unwrap();
        let g = Graph::path(2);
        let p = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.2]]).unwrap();
        let r = make_framework(&g, &linf, &p).unwrap().rigidity_matrix();
        // φ is taken on p_0 − p_1 = (−1, −0.2)
        assert_eq!(r.row(0), &[-1.0, 0.0, 1.0, 0.0]);

        let l2 = NormedSpace::lp(2.0, 2).unwrap();
        let p = Placement::new(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let r = make_framework(&g, &l2, &p).unwrap().rigidity_matrix();
        let want = [-0.6, -0.8, 0.6, 0.8];
        for (a, b) in r.row(0).iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn translations_are_in_the_kernel() {
        let f = k5_example();
        let r = f.rigidity_matrix();
        for i in 0..2 {
            let mut u = vec![0.0; 10];
            for v in 0..5 {
                u[v * 2 + i] = 1.0;
            }
            assert!(r.mul_vec(&u).unwrap().iter().all(|x| *x == 0.0));
        }
    }

    #[test]
    fn laplacian_routes_agree() {
        let f = k5_example();
        assert_eq!(f.laplacian(), f.laplacian_from_rigidity_matrix());
        let empty = make_framework(&Graph::empty(3), &NormedSpace::linf(2).unwrap(), &Placement::new(vec![vec![0.0; 2]; 3]).unwrap()).unwrap();
        assert_eq!(empty.laplacian(), SymMatrix::zeros(6));
    }

    #[test]
    fn single_edge_linf_laplacian() {
        let linf = NormedSpace::linf(2).unwrap();
        let p = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.2]]).unwrap();
        let l = make_framework(&Graph::path(2), &linf, &p).unwrap().laplacian();
        let want = SymMatrix::from_rows(&[
            vec![1.0, 0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![-1.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(l, want);
    }

    #[test]
    fn k5_example_eigenvalue() {
        let rep = k5_example().rigidity_report().unwrap();
        assert!((rep.rigidity_eigenvalue - (5.0 - 13f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(rep.infinitesimally_rigid && rep.full_affine_span);
        assert_eq!(rep.kernel_dim, 2);
        assert_eq!(rep.rank + rep.kernel_dim, 10);
    }

    #[test]
    fn edgeless_is_not_rigid() {
        let pts = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.3], vec![0.2, 1.0]]).unwrap();
        let f = make_framework(&Graph::empty(3), &NormedSpace::linf(2).unwrap(), &pts).unwrap();
        let rep = f.rigidity_report().unwrap();
        assert_eq!(rep.rigidity_eigenvalue, 0.0);
        assert!(!rep.infinitesimally_rigid);
    }

    #[test]
    fn euclidean_flexes() {
        let l2 = NormedSpace::lp(2.0, 2).unwrap();
        let tri = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.1], vec![0.3, 0.9]]).unwrap();
        let f = make_framework(&Graph::complete(3), &l2, &tri).unwrap();
        let basis = f.trivial_flex_basis();
        assert_eq!(basis.len(), 3);
        let l = f.laplacian();
        for u in &basis {
            assert!(l.quadratic_form(u).unwrap().abs() < 1e-12);
        }
        let line = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        let f = make_framework(&Graph::path(3), &l2, &line).unwrap();
        assert_eq!(f.trivial_flex_basis().len(), 3);
        assert!(!f.full_affine_span());
    }

    #[test]
    fn k4_generic_euclidean_is_rigid() {
        let l2 = NormedSpace::lp(2.0, 2).unwrap();
        let pts = Placement::new(vec![vec![0.1, 0.2], vec![0.9, 0.15], vec![0.7, 0.8], vec![0.2, 0.65]]).unwrap();
        let rep = make_framework(&Graph::complete(4), &l2, &pts).unwrap().rigidity_report().unwrap();
        assert!(rep.infinitesimally_rigid);
        assert_eq!(rep.kernel_dim, 3);
        assert_eq!(rep.rank, 5);
    }

    #[test]
    fn affine_span_examples() {
        let tri = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(affine_span_dim(&tri), 2);
        assert_eq!(affine_span_dim(&Placement::new(vec![vec![3.0, 3.0]; 4]).unwrap()), 0);
        let planar = Placement::new(vec![
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(affine_span_dim(&planar), 2);
    }

    #[test]
    fn vertex_deletion_gives_k4() {
        let f = k5_example().delete_vertex(0).unwrap();
        assert!(f.graph().is_complete());
        assert_eq!(f.graph().n(), 4);
        assert_eq!(f.placement().point(0), &[-2.0, 0.0]);
    }

    #[test]
    fn isolated_vertex_deletion_keeps_laplacian() {
        let linf = NormedSpace::linf(2).unwrap();
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let pts = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.3], vec![5.0, 5.0]]).unwrap();
        let f = make_framework(&g, &linf, &pts).unwrap();
        let h = f.delete_vertex(2).unwrap();
        let (lf, lh) = (f.laplacian(), h.laplacian());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(lf.get(i, j), lh.get(i, j));
            }
        }
    }
}
