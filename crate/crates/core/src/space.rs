//! Finite-dimensional normed spaces: ℓ_p and polyhedral norms.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::tolerance::{eps, SMOOTHNESS_MARGIN};

/// Exponent of an ℓ_p norm. `∞` is its own variant so no float infinity ever
/// enters the conjugate-exponent arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => f.write_str("inf"),
            Exponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    Lp(Exponent),
    /// One facet functional per antipodal pair `±F̂_j`.
    Polyhedral(Vec<Vec<f64>>),
}

/// `ℝ^d` with an ℓ_p or polyhedral norm.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedSpace {
    d: usize,
    kind: SpaceKind,
}

/// The standard matrix of a support functional, a `1 × d` row.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportFunctional {
    row: Vec<f64>,
}

impl SupportFunctional {
    pub fn row(&self) -> &[f64] {
        &self.row
    }

    pub fn apply(&self, x: &[f64]) -> f64 {
        dot(&self.row, x)
    }

    pub fn into_row(self) -> Vec<f64> {
        self.row
    }
}

impl NormedSpace {
    /// ℓ_p^d for finite `p ≥ 1`.
    pub fn lp(p: f64, d: usize) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidSpace(format!("exponent {p} is not in [1, ∞)")));
        }
        Self::with_exponent(Exponent::Finite(p), d)
    }

    pub fn linf(d: usize) -> Result<Self> {
        Self::with_exponent(Exponent::Infinity, d)
    }

    pub fn with_exponent(p: Exponent, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        if let Exponent::Finite(x) = p {
            if !(x.is_finite() && x >= 1.0) {
                return Err(Error::InvalidSpace(format!("exponent {x} is not in [1, ∞)")));
            }
        }
        Ok(Self { d, kind: SpaceKind::Lp(p) })
    }

    /// Polyhedral norm `max_j |F̂_j · x|`.
    ///
    /// The facet functionals must span `ℝ^d` (otherwise the "norm" vanishes on
    /// a nonzero vector); this is checked by a rank computation.
    pub fn polyhedral(facets: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = facets.first() else {
            return Err(Error::InvalidSpace("polyhedral norm needs at least one facet".into()));
        };
        let d = first.len();
        if d == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        for f in &facets {
            if f.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: f.len() });
            }
            if f.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
            if f.iter().all(|&x| x == 0.0) {
                return Err(Error::InvalidSpace("zero facet functional".into()));
            }
        }
        let m = Matrix::from_rows(&facets)?;
        let scale = m.max_abs();
        if m.rank(eps() * scale) < d {
            return Err(Error::InvalidSpace("facet functionals do not span the space".into()));
        }
        Ok(Self { d, kind: SpaceKind::Polyhedral(facets) })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn exponent(&self) -> Option<Exponent> {
        match self.kind {
            SpaceKind::Lp(p) => Some(p),
            SpaceKind::Polyhedral(_) => None,
        }
    }

    pub fn is_linf(&self) -> bool {
        matches!(self.kind, SpaceKind::Lp(Exponent::Infinity))
    }

    /// Facet functionals of a polyhedral unit ball, one per antipodal pair.
    ///
    /// ℓ∞ yields the coordinate functionals and ℓ_1 the `2^(d−1)` sign
    /// vectors with first entry `+1`; other ℓ_p spaces are not polyhedral.
    pub fn facets(&self) -> Option<Vec<Vec<f64>>> {
        match &self.kind {
            SpaceKind::Polyhedral(f) => Some(f.clone()),
            SpaceKind::Lp(Exponent::Infinity) => Some(
                (0..self.d)
                    .map(|i| (0..self.d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                    .collect(),
            ),
            SpaceKind::Lp(Exponent::Finite(p)) if *p == 1.0 && self.d <= 16 => Some(
                (0..1usize << (self.d - 1))
                    .map(|mask| {
                        (0..self.d)
                            .map(|j| if j > 0 && mask >> (j - 1) & 1 == 1 { -1.0 } else { 1.0 })
                            .collect()
                    })
                    .collect(),
            ),
            SpaceKind::Lp(_) => None,
        }
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_vector(x)?;
        Ok(match &self.kind {
            SpaceKind::Lp(p) => lp_norm(x, *p),
            SpaceKind::Polyhedral(f) => f.iter().map(|fj| dot(fj, x).abs()).fold(0.0, f64::max),
        })
    }

    /// Dual norm `‖f‖* = max { f·x : ‖x‖ ≤ 1 }`.
    ///
    /// For polyhedral norms the maximum is taken over the vertices of the
    /// primal unit ball, found by solving every `d × d` active facet system.
    pub fn dual_norm(&self, f: &[f64]) -> Result<f64> {
        self.check_vector(f)?;
        match &self.kind {
            SpaceKind::Lp(p) => Ok(lp_norm(f, p.conjugate())),
            SpaceKind::Polyhedral(facets) => {
                let mut best: f64 = 0.0;
                for v in polytope_vertices(facets, self.d)? {
                    best = best.max(dot(f, &v).abs());
                }
                Ok(best)
            }
        }
    }

    fn normalise(&self, x: &[f64]) -> Result<Vec<f64>> {
        let nx = self.norm(x)?;
        if nx == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(x.iter().map(|v| v / nx).collect())
    }

    /// Whether the norm is smooth at `x / ‖x‖`, with ties inside the
    /// relative margin declared non-smooth.
    pub fn is_smooth_point(&self, x: &[f64]) -> Result<bool> {
        let xh = self.normalise(x)?;
        let delta = SMOOTHNESS_MARGIN;
        Ok(match &self.kind {
            SpaceKind::Lp(Exponent::Finite(p)) if *p > 1.0 => true,
            SpaceKind::Lp(Exponent::Finite(_)) => xh.iter().all(|v| v.abs() > delta),
            SpaceKind::Lp(Exponent::Infinity) => top_gap(xh.iter().map(|v| v.abs())) > delta,
            SpaceKind::Polyhedral(f) => top_gap(f.iter().map(|fj| dot(fj, &xh).abs())) > delta,
        })
    }

    /// The unique support functional at `x / ‖x‖`.
    pub fn support_functional(&self, x: &[f64]) -> Result<SupportFunctional> {
        if !self.is_smooth_point(x)? {
            return Err(Error::NotSmooth);
        }
        let xh = self.normalise(x)?;
        let row = match &self.kind {
            SpaceKind::Lp(Exponent::Finite(p)) if *p == 2.0 => xh,
            SpaceKind::Lp(Exponent::Finite(p)) if *p == 1.0 => xh.iter().map(|v| v.signum()).collect(),
            SpaceKind::Lp(Exponent::Finite(p)) => {
                xh.iter().map(|v| v.signum() * v.abs().powf(p - 1.0)).collect()
            }
            SpaceKind::Lp(Exponent::Infinity) => {
                let i = argmax(xh.iter().map(|v| v.abs()));
                let mut row = vec![0.0; self.d];
                row[i] = xh[i].signum();
                row
            }
            SpaceKind::Polyhedral(f) => {
                let j = argmax(f.iter().map(|fj| dot(fj, &xh).abs()));
                let s = dot(&f[j], &xh).signum();
                f[j].iter().map(|v| v * s).collect()
            }
        };
        Ok(SupportFunctional { row })
    }

    /// `γ(X)`, the largest squared Euclidean length of a dual-unit functional.
    pub fn gamma(&self) -> f64 {
        match &self.kind {
            SpaceKind::Lp(Exponent::Finite(p)) if *p < 2.0 => (self.d as f64).powf(2.0 / p - 1.0),
            SpaceKind::Lp(_) => 1.0,
            // the dual ball is conv(±F̂_j), and ‖·‖₂² is convex
            SpaceKind::Polyhedral(f) => f.iter().map(|fj| dot(fj, fj)).fold(0.0, f64::max),
        }
    }

    /// `k(X)`, the dimension of the space of infinitesimal rigid motions.
    pub fn k_dimension(&self) -> usize {
        match self.kind {
            SpaceKind::Lp(Exponent::Finite(p)) if p == 2.0 => self.d * (self.d + 1) / 2,
            _ => self.d,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, SpaceKind::Lp(Exponent::Finite(p)) if p == 2.0)
    }
}

impl fmt::Display for NormedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpaceKind::Lp(Exponent::Infinity) => write!(f, "linf:{}", self.d),
            SpaceKind::Lp(p) => write!(f, "lp:{p}:{}", self.d),
            SpaceKind::Polyhedral(facets) => write!(f, "poly(d={}, m={})", self.d, facets.len()),
        }
    }
}

fn lp_norm(x: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => x.iter().map(|v| v.abs()).fold(0.0, f64::max),
        Exponent::Finite(p) if p == 1.0 => x.iter().map(|v| v.abs()).sum(),
        Exponent::Finite(p) => {
            // scale first so large exponents do not overflow
            let m = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
            if m == 0.0 {
                return 0.0;
            }
            if p == 2.0 {
                return m * x.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt();
            }
            m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// Difference between the largest and second-largest values; `∞` for one value.
fn top_gap(values: impl Iterator<Item = f64>) -> f64 {
    let (mut a, mut b) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in values {
        if v > a {
            b = a;
            a = v;
        } else if v > b {
            b = v;
        }
    }
    a - b
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Vertices of `{x : |F̂_j·x| ≤ 1 for all j}`.
fn polytope_vertices(facets: &[Vec<f64>], d: usize) -> Result<Vec<Vec<f64>>> {
    let m = facets.len();
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    if m < d {
        return Ok(out);
    }
    loop {
        let a = Matrix::from_rows(&subset.iter().map(|&j| facets[j].clone()).collect::<Vec<_>>())?;
        for signs in 0u32..(1 << d) {
            let b: Vec<f64> = (0..d).map(|i| if signs >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
            let Ok(x) = a.solve(&b, 1e-12) else { break };
            let feasible = facets.iter().all(|f| dot(f, &x).abs() <= 1.0 + 1e-9);
            if feasible {
                out.push(x);
            }
        }
        // next d-subset in lexicographic order
        let mut i = d;
        while i > 0 && subset[i - 1] == m - d + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for k in i..d {
            subset[k] = subset[k - 1] + 1;
        }
    }
    Ok(out)
}

/// A linear map `Ψ` validated as norm-preserving between two spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearIsometry {
    matrix: Matrix,
    source: NormedSpace,
    target: NormedSpace,
}

impl LinearIsometry {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &NormedSpace {
        &self.source
    }

    pub fn target(&self) -> &NormedSpace {
        &self.target
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.matrix.mul_vec(x)
    }
}

/// Checks `‖Ψx‖_target = ‖x‖_source` on `samples` seeded random unit vectors
/// and reports the worst violation.
pub fn check_isometry(
    psi: &Matrix,
    source: &NormedSpace,
    target: &NormedSpace,
    samples: usize,
    seed: u64,
) -> Result<LinearIsometry> {
    let d = source.dim();
    if target.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: target.dim() });
    }
    if psi.rows() != d || psi.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: psi.rows().max(psi.cols()) });
    }
    if !psi.is_finite() {
        return Err(Error::NonFinite);
    }
    if psi.determinant()?.abs() <= eps() {
        return Err(Error::Singular);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, Vec::new());
    for _ in 0..samples {
        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let nx = source.norm(&x)?;
        if nx == 0.0 {
            continue;
        }
        let x: Vec<f64> = x.iter().map(|v| v / nx).collect();
        let dev = (target.norm(&psi.mul_vec(&x)?)? - 1.0).abs();
        if dev > worst.0 {
            worst = (dev, x);
        }
    }
    if worst.0 > eps() {
        return Err(Error::NotIsometry { witness: worst.1, deviation: worst.0 });
    }
    Ok(LinearIsometry { matrix: psi.clone(), source: source.clone(), target: target.clone() })
}

/// `Φ(x, y) = (x − y, x + y)`, an isometry from ℓ_1² onto ℓ∞² with `ΦᵀΦ = 2I`.
///
/// The half-scaled map `½(x − y, x + y)` is sometimes quoted for this; it
/// sends the ℓ_1 unit sphere onto the ℓ∞ sphere of radius ½, so it is a
/// similarity rather than an isometry. Support functionals are invariant
/// under positive scaling, so both maps induce the same ℓ∞ framework.
pub fn plane_l1_to_linf() -> Matrix {
    Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).expect("2x2")
}
