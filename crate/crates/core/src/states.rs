//! Two-qubit state representations: Pauli-tensor coordinates, the three-parameter
//! standard (Bell-diagonal) form, partial transposition and local filtering.
//!
//! Basis ordering is always |00⟩, |01⟩, |10⟩, |11⟩ and the partial transpose acts
//! on the second qubit.

use std::fmt;

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eigen, kron, pauli, ComplexMatrix, C64, HERMITIAN_TOL, PSD_CLAMP};

/// Trace tolerance for [`DensityMatrix::new`].
pub const TRACE_TOL: f64 = 1e-12;

/// Minimum `|det|` of each filter factor.
pub const FILTER_DET_MIN: f64 = 1e-12;

/// Coordinates `(r_x, r_y, r_z)` of `ρ = (1 + Σ r_i σ_i⊗σ_i)/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandardState {
    pub r: [f64; 3],
}

impl StandardState {
    pub const fn new(rx: f64, ry: f64, rz: f64) -> Self {
        StandardState { r: [rx, ry, rz] }
    }

    pub fn x(&self) -> f64 {
        self.r[0]
    }

    pub fn y(&self) -> f64 {
        self.r[1]
    }

    pub fn z(&self) -> f64 {
        self.r[2]
    }

    pub fn dot(&self, v: &[f64; 3]) -> f64 {
        self.r[0] * v[0] + self.r[1] * v[1] + self.r[2] * v[2]
    }

    pub fn l1_norm(&self) -> f64 {
        self.r.iter().map(|x| x.abs()).sum()
    }

    pub fn distance(&self, other: &StandardState) -> f64 {
        self.r
            .iter()
            .zip(&other.r)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// All four spectrum values are at least `-PSD_CLAMP`.
    pub fn is_physical(&self) -> bool {
        standard_eigenvalues(self).iter().all(|&x| x >= -PSD_CLAMP)
    }
}

impl fmt::Display for StandardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r[0], self.r[1], self.r[2])
    }
}

/// Real coefficients `r_{μν}` of `ρ = (1/4) Σ r_{μν} σ_μ⊗σ_ν`, index 0 being the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTensor {
    pub r: [[f64; 4]; 4],
}

impl PauliTensor {
    pub fn identity() -> Self {
        let mut r = [[0.0; 4]; 4];
        r[0][0] = 1.0;
        PauliTensor { r }
    }

    pub fn diagonal(rx: f64, ry: f64, rz: f64) -> Self {
        let mut t = Self::identity();
        t.r[1][1] = rx;
        t.r[2][2] = ry;
        t.r[3][3] = rz;
        t
    }

    pub fn max_abs_diff(&self, other: &PauliTensor) -> f64 {
        self.r
            .iter()
            .flatten()
            .zip(other.r.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A 4×4 two-qubit density matrix.
///
/// [`DensityMatrix::new`] enforces Hermiticity, unit trace and positivity.
/// [`DensityMatrix::unchecked`] skips positivity so non-physical points of the
/// standard-form cube can still be represented.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, TRACE_TOL)
    }

    /// Validates with a caller-chosen trace tolerance (Hermiticity uses the
    /// larger of this and the default).
    pub fn with_tolerance(m: ComplexMatrix, trace_tol: f64) -> Result<Self> {
        m.require_shape(4, 4)?;
        let deviation = m.hermiticity_error();
        if deviation > HERMITIAN_TOL.max(trace_tol) {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > trace_tol || tr.im.abs() > trace_tol {
            return Err(Error::NotUnitTrace { trace: tr.re });
        }
        let lowest = hermitian_eigen(&m)?.min();
        if lowest < -PSD_CLAMP {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
        Ok(DensityMatrix { m })
    }

    /// Wraps a 4×4 matrix without checking it.
    pub fn unchecked(m: ComplexMatrix) -> Self {
        debug_assert_eq!((m.rows(), m.cols()), (4, 4));
        DensityMatrix { m }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    /// Pure state `|ψ⟩⟨ψ|` from a normalized or unnormalized amplitude vector.
    pub fn from_pure(psi: &[C64; 4]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !norm2.is_finite() || norm2 <= 0.0 {
            return Err(Error::InvalidArgument("state vector has zero norm".into()));
        }
        let m = ComplexMatrix::from_fn(4, 4, |i, j| psi[i] * psi[j].conj() / norm2);
        Ok(DensityMatrix { m })
    }

    /// `|u⟩⟨u| ⊗ |v⟩⟨v|` for single-qubit amplitude vectors.
    pub fn product(u: &[C64; 2], v: &[C64; 2]) -> Result<Self> {
        Self::from_pure(&[u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]])
    }
}

/// Local filtering operation `(A, B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFilter {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl LocalFilter {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        for m in [&a, &b] {
            let det = m.det2()?.norm();
            if det.is_nan() || det <= FILTER_DET_MIN {
                return Err(Error::FilterNotInvertible { det });
            }
        }
        Ok(LocalFilter { a, b })
    }

    pub fn identity() -> Self {
        LocalFilter {
            a: ComplexMatrix::identity(2),
            b: ComplexMatrix::identity(2),
        }
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    /// `A ⊗ B`.
    pub fn operator(&self) -> ComplexMatrix {
        kron(&self.a, &self.b).expect("filter factors are 2x2")
    }

    /// `|det A| |det B|`.
    pub fn det_product(&self) -> f64 {
        self.a.det2().expect("2x2").norm() * self.b.det2().expect("2x2").norm()
    }
}

fn pauli_products() -> [[ComplexMatrix; 4]; 4] {
    std::array::from_fn(|mu| std::array::from_fn(|nu| kron(&pauli(mu), &pauli(nu)).expect("2x2")))
}

/// `ρ = (1/4) Σ r_{μν} σ_μ⊗σ_ν`. Positivity is not enforced.
pub fn from_pauli(t: &PauliTensor) -> Result<DensityMatrix> {
    if let Some((mu, nu)) = (0..16)
        .map(|k| (k / 4, k % 4))
        .find(|&(mu, nu)| !t.r[mu][nu].is_finite())
    {
        return Err(Error::NonFinite { row: mu, col: nu });
    }
    if (t.r[0][0] - 1.0).abs() > TRACE_TOL {
        return Err(Error::Normalization { r00: t.r[0][0] });
    }
    let basis = pauli_products();
    let mut m = ComplexMatrix::zeros(4, 4);
    for (mu, row) in basis.iter().enumerate() {
        for (nu, s) in row.iter().enumerate() {
            let w = t.r[mu][nu];
            if w != 0.0 {
                m = &m + &s.scale_real(0.25 * w);
            }
        }
    }
    Ok(DensityMatrix::unchecked(m))
}

/// `r_{μν} = Tr[ρ σ_μ⊗σ_ν]`.
pub fn to_pauli(d: &DensityMatrix) -> Result<PauliTensor> {
    let basis = pauli_products();
    let rho = d.matrix();
    let mut r = [[0.0; 4]; 4];
    for (mu, row) in basis.iter().enumerate() {
        for (nu, s) in row.iter().enumerate() {
            // Tr[ρ S] = Σ_ij ρ_ij S_ji
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    acc += rho[(i, j)] * s[(j, i)];
                }
            }
            if acc.im.abs() > HERMITIAN_TOL {
                return Err(Error::NotHermitian {
                    deviation: acc.im.abs(),
                });
            }
            r[mu][nu] = acc.re;
        }
    }
    Ok(PauliTensor { r })
}

/// Bell-diagonal state with correlation vector `s`.
pub fn from_standard(s: &StandardState) -> DensityMatrix {
    let [x, y, z] = s.r;
    let q = 0.25;
    let zero = C64::new(0.0, 0.0);
    let re = |v: f64| C64::new(v, 0.0);
    // (1/4)(I + x XX + y YY + z ZZ) written out; XX and YY only touch the
    // anti-diagonal, ZZ only the diagonal.
    let m = ComplexMatrix::new(
        4,
        4,
        vec![
            re(q * (1.0 + z)),
            zero,
            zero,
            re(q * (x - y)),
            zero,
            re(q * (1.0 - z)),
            re(q * (x + y)),
            zero,
            zero,
            re(q * (x + y)),
            re(q * (1.0 - z)),
            zero,
            re(q * (x - y)),
            zero,
            zero,
            re(q * (1.0 + z)),
        ],
    )
    .expect("finite 4x4");
    DensityMatrix::unchecked(m)
}

/// Closed-form spectrum of the standard form, one value per Bell state:
/// `(1 + v·r)/4` for the vertices (1,−1,1), (−1,1,1), (1,1,−1), (−1,−1,−1).
pub fn standard_eigenvalues(s: &StandardState) -> [f64; 4] {
    let [x, y, z] = s.r;
    [
        (1.0 + x - y + z) / 4.0,
        (1.0 - x + y + z) / 4.0,
        (1.0 + x + y - z) / 4.0,
        (1.0 - x - y - z) / 4.0,
    ]
}

/// Closed-form spectrum of the partial transpose of the standard form.
pub fn pt_eigenvalues(s: &StandardState) -> [f64; 4] {
    let [x, y, z] = s.r;
    [
        (1.0 + x + y + z) / 4.0,
        (1.0 - x - y + z) / 4.0,
        (1.0 + x - y - z) / 4.0,
        (1.0 - x + y - z) / 4.0,
    ]
}

/// Transpose on the second qubit: `((i,j),(k,l)) ↦ ((i,l),(k,j))`.
pub fn partial_transpose(d: &DensityMatrix) -> ComplexMatrix {
    pt_matrix(d.matrix())
}

pub(crate) fn pt_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

/// `ρ' = (A⊗B) ρ (A⊗B)† / Tr[(A⊗B) ρ (A⊗B)†]`.
pub fn apply_filter(d: &DensityMatrix, f: &LocalFilter) -> Result<DensityMatrix> {
    let k = f.operator();
    let out = &(&k * d.matrix()) * &k.adjoint();
    let tr = out.trace().re;
    if tr.is_nan() || tr <= FILTER_DET_MIN {
        return Err(Error::FilterAnnihilates { trace: tr });
    }
    let mut normalized = out.scale_real(1.0 / tr);
    // Restore exact Hermiticity lost to round-off.
    normalized = (&normalized + &normalized.adjoint()).scale_real(0.5);
    Ok(DensityMatrix::unchecked(normalized))
}

/// `Tr[(A†A ⊗ B†B) ρ]`, the normalization of [`apply_filter`].
pub fn filter_weight(d: &DensityMatrix, f: &LocalFilter) -> f64 {
    let ata = &f.a.adjoint() * &f.a;
    let btb = &f.b.adjoint() * &f.b;
    let g = kron(&ata, &btb).expect("2x2");
    (&g * d.matrix()).trace().re
}

/// Returns the correlation vector when every Pauli coefficient outside
/// `r_{00}, r_{11}, r_{22}, r_{33}` is within `tol` of zero.
pub fn is_standard_form(d: &DensityMatrix, tol: f64) -> Result<Option<StandardState>> {
    let t = to_pauli(d)?;
    for mu in 0..4 {
        for nu in 0..4 {
            if mu != nu && t.r[mu][nu].abs() > tol {
                return Ok(None);
            }
        }
    }
    Ok(Some(StandardState::new(t.r[1][1], t.r[2][2], t.r[3][3])))
}
