//! Dense real linear algebra: general and symmetric matrices, a cyclic
//! Jacobi eigensolver, Kronecker products, congruence transforms and the
//! perfect-shuffle permutation.

use crate::error::{Error, Result};
use crate::tolerance::DEFAULT_SOLVER_TOL;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Single-row matrix.
    pub fn row_vector(v: &[f64]) -> Self {
        Self { rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Gram matrix `AᵀA`.
    pub fn gram(&self) -> SymMatrix {
        let n = self.cols;
        let mut s = SymMatrix::zeros(n);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..n {
                if row[i] == 0.0 {
                    continue;
                }
                for j in i..n {
                    s.data[i * n + j] += row[i] * row[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                s.data[i * n + j] = s.data[j * n + i];
            }
        }
        s
    }

    /// Numerical rank by Gaussian elimination with complete pivoting;
    /// pivots below `threshold` count as zero.
    pub fn rank(&self, threshold: f64) -> usize {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut rank = 0;
        let mut col_used = vec![false; n];
        let mut row_used = vec![false; m];
        for _ in 0..m.min(n) {
            let mut best = (0.0, 0, 0);
            for i in (0..m).filter(|&i| !row_used[i]) {
                for j in (0..n).filter(|&j| !col_used[j]) {
                    let v = a.get(i, j).abs();
                    if v > best.0 {
                        best = (v, i, j);
                    }
                }
            }
            let (piv, pi, pj) = best;
            if piv <= threshold {
                break;
            }
            row_used[pi] = true;
            col_used[pj] = true;
            rank += 1;
            let p = a.get(pi, pj);
            for i in (0..m).filter(|&i| !row_used[i]) {
                let f = a.get(i, pj) / p;
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - f * a.get(pi, j);
                    a.set(i, j, v);
                }
            }
        }
        rank
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for k in 0..n {
            let (pivot_row, pivot) = (k..n)
                .map(|i| (i, a.get(i, k)))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("non-empty range");
            if pivot == 0.0 {
                return Ok(0.0);
            }
            if pivot_row != k {
                for j in 0..n {
                    let t = a.get(k, j);
                    a.set(k, j, a.get(pivot_row, j));
                    a.set(pivot_row, j, t);
                }
                det = -det;
            }
            det *= pivot;
            for i in k + 1..n {
                let f = a.get(i, k) / pivot;
                for j in k..n {
                    let v = a.get(i, j) - f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `A x = b` by Gaussian elimination with partial pivoting.
    /// Pivots at or below `threshold` are treated as singular.
    pub fn solve(&self, b: &[f64], threshold: f64) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        let mut a = self.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let pr = (k..n)
                .max_by(|&i, &j| a.get(i, k).abs().total_cmp(&a.get(j, k).abs()))
                .expect("non-empty range");
            if a.get(pr, k).abs() <= threshold {
                return Err(Error::Singular);
            }
            if pr != k {
                for j in 0..n {
                    let t = a.get(k, j);
                    a.set(k, j, a.get(pr, j));
                    a.set(pr, j, t);
                }
                x.swap(k, pr);
            }
            let p = a.get(k, k);
            for i in k + 1..n {
                let f = a.get(i, k) / p;
                if f == 0.0 {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - f * a.get(k, j);
                    a.set(i, j, v);
                }
                x[i] -= f * x[k];
            }
        }
        for k in (0..n).rev() {
            let s: f64 = (k + 1..n).map(|j| a.get(k, j) * x[j]).sum();
            x[k] = (x[k] - s) / a.get(k, k);
        }
        Ok(x)
    }

    /// Spectral norm `‖A‖₂`, the square root of the largest eigenvalue of `AᵀA`.
    pub fn spectral_norm(&self) -> Result<f64> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.cols == 0 {
            return Ok(0.0);
        }
        let spec = sym_eigenvalues(&self.gram(), DEFAULT_SOLVER_TOL)?;
        Ok(spec.max().max(0.0).sqrt())
    }
}

/// Dense real symmetric matrix. Both triangles are stored and kept bitwise equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    /// Builds from the upper triangle produced by `f(i, j)` with `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Accepts a square matrix whose entries are exactly symmetric.
    pub fn try_from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        let n = m.rows();
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data: m.as_slice().to_vec() })
    }

    /// Symmetrises a square matrix by averaging it with its transpose.
    pub fn symmetrize(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        Ok(Self::from_upper(m.rows(), |i, j| 0.5 * (m.get(i, j) + m.get(j, i))))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::try_from_matrix(&Matrix::from_rows(rows)?)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Adds `value` at `(i, j)` and, when off-diagonal, at `(j, i)`.
    #[inline]
    pub fn add_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] += value;
        if i != j {
            self.data[j * self.n + i] += value;
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix { rows: self.n, cols: self.n, data: self.data.clone() }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scaled(&self, factor: f64) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(|x| x * factor).collect() }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(SymMatrix { n: self.n, data })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.add(&other.scaled(-1.0))
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok((0..self.n).map(|i| dot(&self.data[i * self.n..(i + 1) * self.n], x)).collect())
    }

    /// Quadratic form `xᵀMx`.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        Ok(dot(&self.mul_vec(x)?, x))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[SymMatrix]) -> SymMatrix {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = SymMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.data[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        out
    }

    pub fn eigenvalues(&self) -> Result<Spectrum> {
        sym_eigenvalues(self, DEFAULT_SOLVER_TOL)
    }
}

/// Sorted eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Largest off-diagonal magnitude left when the solver stopped.
    pub residual: f64,
}

impl Spectrum {
    /// The `k`-th smallest eigenvalue, 1-based.
    pub fn get(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.values.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.values.len() });
        }
        Ok(self.values[k - 1])
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Number of eigenvalues with absolute value below `threshold`.
    pub fn count_below(&self, threshold: f64) -> usize {
        self.values.iter().filter(|v| v.abs() < threshold).count()
    }
}

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of `m`, ascending, by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius mass falls below
/// `tol · max(1, ‖M‖_F)`.
pub fn sym_eigenvalues(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.n;
    let mut a = m.data.clone();
    let scale = m.data.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let threshold = tol * scale;
    let off_mass = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off = off_mass(&a);
    while off >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { residual: off, sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                if t == 0.0 {
                    // |a_pq| negligible against the diagonal gap
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        off = off_mass(&a);
    }

    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                residual = residual.max(a[i * n + j].abs());
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(Spectrum { values, residual })
}

/// The `k`-th smallest eigenvalue (1-based).
pub fn eigenvalue_k(m: &SymMatrix, k: usize) -> Result<f64> {
    if k == 0 || k > m.n {
        return Err(Error::IndexOutOfRange { index: k, len: m.n });
    }
    m.eigenvalues()?.get(k)
}

/// `SᵀMS`, symmetrised afterwards.
pub fn congruence(m: &SymMatrix, s: &Matrix) -> Result<SymMatrix> {
    if !s.is_square() || s.rows() != m.n {
        return Err(Error::DimensionMismatch { expected: m.n, got: s.rows() });
    }
    if !s.is_finite() || !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let ms = m.to_matrix().matmul(s)?;
    let out = s.transpose().matmul(&ms)?;
    SymMatrix::symmetrize(&out)
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite);
    }
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    Ok(Matrix::from_fn(ar * br, ac * bc, |i, j| a.get(i / br, j / bc) * b.get(i % br, j % bc)))
}

/// Index map of the perfect shuffle: position `i·n + v` (0-based) goes to `v·d + i`.
#[inline]
pub fn shuffle_index(d: usize, n: usize, idx: usize) -> usize {
    let (i, v) = (idx / n, idx % n);
    v * d + i
}

/// The `dn × dn` permutation `P` with `P (B_i ⊗ L) Pᵀ = L ⊗ B_i`.
pub fn perfect_shuffle(d: usize, n: usize) -> Matrix {
    let mut p = Matrix::zeros(d * n, d * n);
    for idx in 0..d * n {
        p.set(shuffle_index(d, n, idx), idx, 1.0);
    }
    p
}

/// `P A Pᵀ` for the perfect shuffle, computed by index permutation.
pub fn shuffle_similarity(a: &SymMatrix, d: usize, n: usize) -> Result<SymMatrix> {
    if a.n != d * n {
        return Err(Error::DimensionMismatch { expected: d * n, got: a.n });
    }
    let mut out = SymMatrix::zeros(a.n);
    for r in 0..a.n {
        let pr = shuffle_index(d, n, r);
        for c in 0..a.n {
            out.data[pr * a.n + shuffle_index(d, n, c)] = a.get(r, c);
        }
    }
    Ok(out)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormalises `vectors` by modified Gram–Schmidt, dropping any whose
/// residual norm falls below `threshold`.
pub fn orthonormalize(vectors: &[Vec<f64>], threshold: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let nw = norm2(&w);
        if nw > threshold {
            basis.push(w.into_iter().map(|x| x / nw).collect());
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lk3() -> SymMatrix {
        SymMatrix::from_rows(&[
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 2.0, -1.0],
            vec![-1.0, -1.0, 2.0],
        ])
        .unwrap()
    }

    fn path_laplacian(n: usize) -> SymMatrix {
        SymMatrix::from_upper(n, |i, j| {
            if i == j {
                if i == 0 || i == n - 1 { 1.0 } else { 2.0 }
            } else if j == i + 1 {
                -1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn solve_small_system() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        let x = a.solve(&[4.0, 3.0], 1e-12).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
        let sing = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(sing.solve(&[1.0, 1.0], 1e-12), Err(Error::Singular));
    }

    #[test]
    fn identity_spectrum() {
        let s = sym_eigenvalues(&SymMatrix::identity(3), 1e-12).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.residual, 0.0);
    }

    #[test]
    fn triangle_laplacian_spectrum() {
        let s = lk3().eigenvalues().unwrap();
        for (got, want) in s.values.iter().zip([0.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(s.residual <= 1e-12);
    }

    #[test]
    fn path4_fiedler_value() {
        let a = eigenvalue_k(&path_laplacian(4), 2).unwrap();
        assert!((a - (2.0 - 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn cycle5_fiedler_value() {
        let n = 5;
        let c5 = SymMatrix::from_upper(n, |i, j| {
            if i == j {
                2.0
            } else if j == i + 1 || (i == 0 && j == n - 1) {
                -1.0
            } else {
                0.0
            }
        });
        let want = 2.0 * (1.0 - (2.0 * std::f64::consts::PI / 5.0).cos());
        assert!((eigenvalue_k(&c5, 2).unwrap() - want).abs() < 1e-12);
        assert!((eigenvalue_k(&lk3(), 2).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(eigenvalue_k(&SymMatrix::zeros(2), 2).unwrap(), 0.0);
    }

    #[test]
    fn eigenvalue_index_errors() {
        assert!(matches!(eigenvalue_k(&lk3(), 4), Err(Error::IndexOutOfRange { index: 4, len: 3 })));
        assert!(matches!(eigenvalue_k(&lk3(), 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        let m = SymMatrix::diagonal(&[1.0, f64::NAN]);
        assert_eq!(sym_eigenvalues(&m, 1e-12), Err(Error::NonFinite));
    }

    #[test]
    fn trace_is_preserved() {
        let m = SymMatrix::from_upper(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let s = m.eigenvalues().unwrap();
        let sum: f64 = s.values.iter().sum();
        assert!((sum - m.trace()).abs() < 6.0 * 1e-12 * 10.0);
        assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn congruence_examples() {
        let m = lk3();
        assert_eq!(congruence(&m, &Matrix::identity(3)).unwrap(), m);
        let twice = congruence(&m, &Matrix::identity(3).scaled(2.0)).unwrap();
        assert_eq!(twice, m.scaled(4.0));
        let swap = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d = congruence(&SymMatrix::diagonal(&[1.0, 2.0]), &swap).unwrap();
        assert_eq!(d, SymMatrix::diagonal(&[2.0, 1.0]));
        assert!(matches!(
            congruence(&m, &Matrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_shapes_and_blocks() {
        let b = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let k = kron(&Matrix::identity(2), &b).unwrap();
        let want = Matrix::from_rows(&[
            vec![1.0, 2.0, 0.0, 0.0],
            vec![3.0, 4.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 2.0],
            vec![0.0, 0.0, 3.0, 4.0],
        ])
        .unwrap();
        assert_eq!(k, want);
        let big = kron(&b, &Matrix::identity(3)).unwrap();
        assert_eq!((big.rows(), big.cols()), (6, 6));
    }

    #[test]
    fn kron_coordinate_projection_with_edge_laplacian() {
        // B_1 = b_1 b_1ᵀ for d = 2, L(P_2) = [[1,-1],[-1,1]]
        let b1 = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let lp2 = Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let k = kron(&b1, &lp2).unwrap();
        let want = Matrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(k, want);
    }

    #[test]
    fn perfect_shuffle_examples() {
        assert_eq!(perfect_shuffle(1, 4), Matrix::identity(4));
        let p = perfect_shuffle(2, 2);
        let want = Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn shuffle_maps_b_kron_l_to_l_kron_b() {
        let l = path_laplacian(3).to_matrix();
        for d in 1..=3 {
            for i in 0..d {
                let bi = Matrix::from_fn(d, d, |r, c| if r == i && c == i { 1.0 } else { 0.0 });
                let p = perfect_shuffle(d, 3);
                let lhs = p.matmul(&kron(&bi, &l).unwrap()).unwrap().matmul(&p.transpose()).unwrap();
                let rhs = kron(&l, &bi).unwrap();
                assert_eq!(lhs, rhs);
                let fast = shuffle_similarity(&SymMatrix::try_from_matrix(&kron(&bi, &l).unwrap()).unwrap(), d, 3)
                    .unwrap();
                assert_eq!(fast.to_matrix(), rhs);
            }
        }
    }

    #[test]
    fn rank_and_determinant() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(m.rank(1e-12), 1);
        assert_eq!(m.determinant().unwrap(), 0.0);
        let psi = Matrix::from_rows(&[vec![0.5, -0.5], vec![0.5, 0.5]]).unwrap();
        assert!((psi.determinant().unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(Matrix::identity(4).rank(1e-12), 4);
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, -4.0]]).unwrap();
        assert!((m.spectral_norm().unwrap() - 4.0).abs() < 1e-12);
    }
}
