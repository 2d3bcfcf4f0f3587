//! Dense symmetric linear algebra sized for small problems.
//!
//! Matrices are stored row-major with both triangles kept in sync on every write.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense symmetric matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = v;
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from rows; fails unless the input is square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!("row {i} has length {} (expected {n})", r.len())));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Precondition(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let data = rows.iter().flatten().copied().collect::<Vec<_>>();
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("non-finite entry".into()));
        }
        Ok(SymMatrix { n, data })
    }

    /// Outer product vvᵀ.
    pub fn outer(v: &[f64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Writes both (i,j) and (j,i).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Frobenius inner product.
    pub fn dot(&self, other: &SymMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// vᵀ A v.
    pub fn quad_form(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    /// Entrywise map, applied symmetrically.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Embeds `self` into an order-`n` zero matrix at positions `idx`.
    pub fn embed(&self, n: usize, idx: &[usize]) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for a in 0..self.n {
            for b in a..self.n {
                m.set(idx[a], idx[b], self.get(a, b));
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Dense rectangular matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// BᵀB as a symmetric matrix.
    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.cols, |i, j| (0..self.rows).map(|k| self.get(k, i) * self.get(k, j)).sum())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

/// Eigenvalues sorted descending with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    /// QΛQᵀ.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.values.len();
        SymMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| self.vectors.get(i, k) * self.values[k] * self.vectors.get(j, k)).sum()
        })
    }
}

const MAX_ORDER: usize = 64;
const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver with threshold sweeps.
pub fn eigen_sym(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.order();
    crate::error::guard("eigen_sym", n, MAX_ORDER)?;
    if !a.is_finite() {
        return Err(Error::Precondition("non-finite entry".into()));
    }
    let mut m = a.data.clone();
    let mut v = Matrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += m[i * n + j] * m[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = n < 2;
    for sweep in 0..MAX_SWEEPS {
        let o = off(&m);
        if o <= 1e-15 * scale {
            converged = true;
            break;
        }
        // Early sweeps skip rotations that would barely move the off-diagonal mass.
        let thresh = if sweep < 3 { 0.2 * o / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= thresh || apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged {
        let o = off(&m);
        if o > 1e-12 * scale {
            return Err(Error::Numerical { msg: "Jacobi did not converge".into(), residual: o });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, col, v.get(k, src));
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Largest eigenvalue.
pub fn lambda_max(a: &SymMatrix) -> Result<f64> {
    Ok(eigen_sym(a)?.max())
}

/// Smallest eigenvalue.
pub fn lambda_min(a: &SymMatrix) -> Result<f64> {
    Ok(eigen_sym(a)?.min())
}

/// True iff λ_min(a) ≥ −tol.
pub fn is_psd(a: &SymMatrix, tol: f64) -> bool {
    if a.order() == 0 {
        return true;
    }
    match eigen_sym(a) {
        Ok(e) => e.min() >= -tol,
        Err(_) => false,
    }
}

/// Returns B with BᵀB ≈ a, built as B = Λ^{1/2}Qᵀ after clamping eigenvalues in [−tol, 0).
pub fn psd_factor(a: &SymMatrix, tol: f64) -> Result<Matrix> {
    let e = eigen_sym(a)?;
    if e.min() < -tol {
        return Err(Error::Precondition(format!("matrix not PSD: λ_min = {:e}", e.min())));
    }
    let n = a.order();
    let mut b = Matrix::zeros(n, n);
    for k in 0..n {
        let s = e.values[k].max(0.0).sqrt();
        for j in 0..n {
            b.set(k, j, s * e.vectors.get(j, k));
        }
    }
    Ok(b)
}

/// Projection onto the PSD cone by clamping negative eigenvalues.
pub fn project_psd(a: &SymMatrix) -> Result<SymMatrix> {
    let mut e = eigen_sym(a)?;
    for v in e.values.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(e.reconstruct())
}

/// Moore–Penrose pseudoinverse of Diag(d).
pub fn pinv_diag(d: &[f64]) -> Vec<f64> {
    d.iter().map(|&v| if v > 0.0 { 1.0 / v } else { 0.0 }).collect()
}

/// D_h(X) = Diag(h) X Diag(h).
pub fn diag_scale(h: &[f64], x: &SymMatrix) -> SymMatrix {
    assert_eq!(h.len(), x.order(), "diag_scale: length mismatch");
    SymMatrix::from_fn(x.order(), |i, j| h[i] * h[j] * x.get(i, j))
}

/// (X + Xᵀ)/2.
pub fn symmetrize(x: &Matrix) -> Result<SymMatrix> {
    if x.rows != x.cols {
        return Err(Error::Dimension(format!("{}x{} is not square", x.rows, x.cols)));
    }
    Ok(SymMatrix::from_fn(x.rows, |i, j| 0.5 * (x.get(i, j) + x.get(j, i))))
}

/// Checks X̂[V] − x xᵀ / X̂₀₀ ⪰ 0 (within 1e-9) for a lifted matrix of order n+1.
pub fn schur_complement_psd(xhat: &SymMatrix) -> Result<bool> {
    let x00 = xhat.get(0, 0);
    if x00 <= 0.0 {
        return Err(Error::Precondition(format!("xhat[0][0] = {x00} must be positive")));
    }
    let n = xhat.order() - 1;
    let s = SymMatrix::from_fn(n, |i, j| xhat.get(i + 1, j + 1) - xhat.get(0, i + 1) * xhat.get(0, j + 1) / x00);
    Ok(is_psd(&s, 1e-9))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
