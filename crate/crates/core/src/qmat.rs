//! Dense complex matrices for the 2×2 and 4×4 cases that occur with two qubits.
//!
//! Everything here is deliberately small: row-major storage, naive products,
//! and a cyclic Jacobi eigensolver for Hermitian input.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Maximum entrywise `|m - m†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as zero.
pub const PSD_CLAMP: f64 = 1e-10;

/// Hard cap on Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Default relative off-diagonal tolerance used by [`hermitian_eigen`].
pub const DEFAULT_EIG_TOL: f64 = 1e-14;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} entries"),
                found: format!("{} entries", data.len()),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Row-major construction from nested real/imaginary pairs.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: format!("{c} columns per row"),
                found: format!("{} columns", bad.len()),
            });
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn require_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols}"),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Determinant of a 2×2 matrix.
    pub fn det2(&self) -> Result<C64> {
        self.require_shape(2, 2)?;
        Ok(self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)])
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows on the right", self.cols),
                found: format!("{}", rhs.rows),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "elementwise operation on mismatched shapes"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Panics on inner-dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix `σ_index`, with index 0 the identity and 1, 2, 3 the x, y, z matrices.
pub fn pauli(index: usize) -> ComplexMatrix {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let data = match index {
        0 => vec![one, o, o, one],
        1 => vec![o, one, one, o],
        2 => vec![o, -i, i, o],
        3 => vec![one, o, o, -one],
        _ => panic!("Pauli index {index} out of range 0..=3"),
    };
    ComplexMatrix {
        rows: 2,
        cols: 2,
        data,
    }
}

/// Kronecker product of two 2×2 matrices.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_shape(2, 2)?;
    b.require_shape(2, 2)?;
    Ok(ComplexMatrix::from_fn(4, 4, |r, c| {
        a[(r / 2, c / 2)] * b[(r % 2, c % 2)]
    }))
}

#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Iterates sweeps over all `(p, q)` pairs until the off-diagonal Frobenius
/// norm drops below `tol`. Fails loudly after [`MAX_SWEEPS`] sweeps.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    hermitian_eig_capped(m, tol, MAX_SWEEPS)
}

pub(crate) fn hermitian_eig_capped(
    m: &ComplexMatrix,
    tol: f64,
    max_sweeps: usize,
) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows();
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < tol {
            break;
        }
        if sweep == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps: max_sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the original index order among ties.
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Convenience wrapper with a tolerance scaled to the input norm.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEig> {
    hermitian_eig(m, DEFAULT_EIG_TOL * m.frobenius_norm().max(1.0))
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if mag <= 1e-3 * f64::EPSILON * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }

    // Phase that makes the (p, q) entry real, then a real symmetric rotation.
    let phase = (apq / mag).conj();
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = phase * (-s);
    let j_qq = phase * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    let lowest = eig.min();
    if lowest < -PSD_CLAMP {
        return Err(Error::NotPsd { eigenvalue: lowest });
    }
    Ok(eig.map_spectrum(|x| x.max(0.0).sqrt()))
}
