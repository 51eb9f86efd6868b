//! Entanglement measures for two qubits.
//!
//! Each measure has a closed-form path for standard-form states and, where it
//! makes sense, a general matrix path that works on any density matrix. The
//! two are kept independent so they can check one another.

use crate::error::{Error, Result};
use crate::geometry::{classify, distance_to_separable, Classification};
use crate::qmat::{hermitian_eigen, kron, pauli, psd_sqrt, ComplexMatrix};
use crate::states::{
    apply_filter, filter_weight, partial_transpose, pt_eigenvalues, standard_eigenvalues,
    DensityMatrix, LocalFilter, StandardState,
};

/// Values below this magnitude are reported as exactly zero.
pub const ZERO_CLIP: f64 = 1e-12;

/// Contract tolerance for the filtering law.
pub const FILTER_LAW_TOL: f64 = 1e-8;

fn clip(x: f64) -> f64 {
    if x < ZERO_CLIP {
        0.0
    } else {
        x
    }
}

fn require_physical(s: &StandardState) -> Result<Classification> {
    match classify(s) {
        Classification::NonPhysical => Err(Error::NonPhysical(s.x(), s.y(), s.z())),
        c => Ok(c),
    }
}

/// `max(0, 2ρ_max − 1)` from the closed-form spectrum.
pub fn concurrence_standard(s: &StandardState) -> Result<f64> {
    require_physical(s)?;
    let top = standard_eigenvalues(s)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(clip(2.0 * top - 1.0))
}

/// The spin-flipped state `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip(d: &DensityMatrix) -> ComplexMatrix {
    let yy = kron(&pauli(2), &pauli(2)).expect("2x2");
    &(&yy * &d.matrix().conj()) * &yy
}

/// Square roots of the eigenvalues of `ρ ρ̃`, sorted descending.
///
/// Computed as the spectrum of the Hermitian `√ρ ρ̃ √ρ`, which is similar to
/// `ρ ρ̃`.
pub fn spin_flip_roots(d: &DensityMatrix) -> Result<[f64; 4]> {
    let root = psd_sqrt(d.matrix())?;
    let h = &(&root * &spin_flip(d)) * &root;
    let h = (&h + &h.adjoint()).scale_real(0.5);
    let eig = hermitian_eigen(&h)?;
    let mut out = [0.0; 4];
    for (o, &l) in out.iter_mut().zip(&eig.eigenvalues) {
        *o = l.max(0.0).sqrt();
    }
    Ok(out)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
pub fn concurrence_general(d: &DensityMatrix) -> Result<f64> {
    let roots = spin_flip_roots(d)?;
    let total: f64 = roots.iter().sum();
    Ok(clip(2.0 * roots[0] - total))
}

/// `2 max(0, −min ρ^PT)` from the closed-form partial-transpose spectrum.
pub fn negativity_standard(s: &StandardState) -> Result<f64> {
    require_physical(s)?;
    let lowest = pt_eigenvalues(s).into_iter().fold(f64::INFINITY, f64::min);
    Ok(clip(-2.0 * lowest))
}

pub fn negativity_general(d: &DensityMatrix) -> Result<f64> {
    let lowest = hermitian_eigen(&partial_transpose(d))?.min();
    Ok(clip(-2.0 * lowest))
}

/// Hilbert-Schmidt distance to the separable set for a standard-form state.
///
/// Two standard-form states differ in Frobenius norm by half the Euclidean
/// distance of their correlation vectors, and the closest separable point is
/// the octahedron projection.
pub fn hs_distance_standard(s: &StandardState) -> Result<f64> {
    Ok(clip(distance_to_separable(s)? / 2.0))
}

/// Frobenius distance `‖ω − ρ‖₂ = sqrt(Tr[(ω − ρ)†(ω − ρ)])`.
pub fn hs_norm(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    (a.matrix() - b.matrix()).frobenius_norm()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub state: StandardState,
    pub classification: Classification,
    /// `None` for non-physical states, as are the other measures.
    pub concurrence: Option<f64>,
    pub negativity: Option<f64>,
    pub euclidean_distance: Option<f64>,
    pub hs_distance: Option<f64>,
}

/// All closed-form measures of a standard-form state.
pub fn measure(s: &StandardState) -> MeasureReport {
    let classification = classify(s);
    let mut report = MeasureReport {
        state: *s,
        classification,
        concurrence: None,
        negativity: None,
        euclidean_distance: None,
        hs_distance: None,
    };
    if classification.is_physical() {
        report.concurrence = concurrence_standard(s).ok();
        report.negativity = negativity_standard(s).ok();
        report.euclidean_distance = distance_to_separable(s).ok().map(clip);
        report.hs_distance = hs_distance_standard(s).ok();
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterLaw {
    /// Concurrence before filtering.
    pub initial: f64,
    /// `C |det A| |det B| / Tr[(A†A ⊗ B†B) ρ]`, unclipped.
    pub predicted: f64,
    /// Concurrence of the filtered state.
    pub actual: f64,
}

impl FilterLaw {
    pub fn deviation(&self) -> f64 {
        (self.predicted - self.actual).abs()
    }

    /// The prediction leaves the range of a concurrence.
    pub fn exceeds_unity(&self) -> bool {
        self.predicted > 1.0
    }

    pub fn holds(&self) -> bool {
        self.deviation() <= FILTER_LAW_TOL
    }
}

/// Evaluates both sides of the concurrence transformation law under `f`.
pub fn filter_concurrence_law(d: &DensityMatrix, f: &LocalFilter) -> Result<FilterLaw> {
    let filtered = apply_filter(d, f)?;
    let initial = concurrence_general(d)?;
    let predicted = initial * f.det_product() / filter_weight(d, f);
    let actual = concurrence_general(&filtered)?;
    Ok(FilterLaw {
        initial,
        predicted,
        actual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::C64;
    use crate::states::from_standard;

    const SQRT3: f64 = 1.7320508075688772;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn concurrence_standard_examples() {
        assert_eq!(
            concurrence_standard(&StandardState::new(1.0, -1.0, 1.0)).unwrap(),
            1.0
        );
        assert_eq!(
            concurrence_standard(&StandardState::new(0.0, 0.0, 0.0)).unwrap(),
            0.0
        );
        let s = StandardState::new(0.5, -0.5, 0.5);
        assert!((concurrence_standard(&s).unwrap() - 0.25).abs() < 1e-15);
        assert!((concurrence_general(&from_standard(&s)).unwrap() - 0.25).abs() < 1e-12);
        assert!(matches!(
            concurrence_standard(&StandardState::new(0.5, 0.5, 0.5)),
            Err(Error::NonPhysical(..))
        ));
    }

    #[test]
    fn concurrence_general_examples() {
        let bell = from_standard(&StandardState::new(1.0, -1.0, 1.0));
        assert!((concurrence_general(&bell).unwrap() - 1.0).abs() < 1e-12);

        let zero = [c(1.0, 0.0), c(0.0, 0.0)];
        let d = DensityMatrix::product(&zero, &zero).unwrap();
        assert_eq!(concurrence_general(&d).unwrap(), 0.0);
    }

    #[test]
    fn concurrence_of_pure_state_is_twice_abs_det() {
        // |ψ⟩ = a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩ has C = 2|ad − bc|
        let psi = [c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0), c(0.1, -0.6)];
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let expected = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm() / norm2;
        let d = DensityMatrix::from_pure(&psi).unwrap();
        assert!((concurrence_general(&d).unwrap() - expected).abs() < 1e-7);
    }

    #[test]
    fn negativity_examples() {
        assert_eq!(
            negativity_standard(&StandardState::new(1.0, -1.0, 1.0)).unwrap(),
            1.0
        );
        assert_eq!(
            negativity_standard(&StandardState::new(0.0, 0.0, 0.0)).unwrap(),
            0.0
        );
        let w = -2.0 / 3.0;
        let werner = StandardState::new(w, w, w);
        assert!((negativity_standard(&werner).unwrap() - 0.5).abs() < 1e-15);
        assert!((negativity_general(&from_standard(&werner)).unwrap() - 0.5).abs() < 1e-12);

        let bell = from_standard(&StandardState::new(1.0, -1.0, 1.0));
        assert!((negativity_general(&bell).unwrap() - 1.0).abs() < 1e-12);

        let u = [c(0.6, 0.0), c(0.0, 0.8)];
        let v = [c(1.0, 0.0), c(1.0, 1.0)];
        assert_eq!(
            negativity_general(&DensityMatrix::product(&u, &v).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn hs_distance_examples() {
        let d = hs_distance_standard(&StandardState::new(1.0, -1.0, 1.0)).unwrap();
        assert!((d - 1.0 / SQRT3).abs() < 1e-15);
        assert_eq!(
            hs_distance_standard(&StandardState::new(0.0, 0.0, 0.0)).unwrap(),
            0.0
        );
        let d = hs_distance_standard(&StandardState::new(0.5, -0.5, 0.5)).unwrap();
        assert!((d - 0.25 / SQRT3).abs() < 1e-15);
    }

    #[test]
    fn hs_norm_is_half_euclidean_between_standard_states() {
        let a = StandardState::new(0.3, -0.7, 0.1);
        let b = StandardState::new(-0.2, 0.4, 0.5);
        let got = hs_norm(&from_standard(&a), &from_standard(&b));
        assert!((got - a.distance(&b) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn measure_examples() {
        let r = measure(&StandardState::new(1.0, -1.0, 1.0));
        assert_eq!(
            r.classification,
            Classification::Entangled(crate::geometry::Vertex::PHI_PLUS)
        );
        assert_eq!(r.concurrence, Some(1.0));
        assert_eq!(r.negativity, Some(1.0));
        assert!((r.euclidean_distance.unwrap() - 2.0 / SQRT3).abs() < 1e-15);
        assert!((r.hs_distance.unwrap() - 1.0 / SQRT3).abs() < 1e-15);

        let r = measure(&StandardState::new(0.2, 0.3, -0.4));
        assert_eq!(r.classification, Classification::Separable);
        assert_eq!(
            (
                r.concurrence,
                r.negativity,
                r.euclidean_distance,
                r.hs_distance
            ),
            (Some(0.0), Some(0.0), Some(0.0), Some(0.0))
        );

        let r = measure(&StandardState::new(0.5, 0.5, 0.5));
        assert_eq!(r.classification, Classification::NonPhysical);
        assert_eq!(r.concurrence, None);
        assert_eq!(r.hs_distance, None);
    }

    #[test]
    fn filter_law_identity_and_separable() {
        let d = from_standard(&StandardState::new(0.6, -0.7, 0.5));
        let law = filter_concurrence_law(&d, &LocalFilter::identity()).unwrap();
        assert_eq!(law.predicted, law.actual);
        assert_eq!(law.initial, law.actual);

        let sep = from_standard(&StandardState::new(0.2, 0.1, 0.3));
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.5, 0.2), c(0.3, 0.0), c(-0.1, 0.4), c(0.8, 0.0)],
        )
        .unwrap();
        let f = LocalFilter::new(a, ComplexMatrix::from_real_diag(&[0.5, 2.0])).unwrap();
        let law = filter_concurrence_law(&sep, &f).unwrap();
        assert_eq!(law.predicted, 0.0);
        assert_eq!(law.actual, 0.0);
    }

    #[test]
    fn filter_law_on_werner_state() {
        let w = -2.0 / 3.0;
        let d = from_standard(&StandardState::new(w, w, w));
        let a = ComplexMatrix::from_real_diag(&[2f64.sqrt(), 1.0 / 2f64.sqrt()]);
        let f = LocalFilter::new(a, ComplexMatrix::identity(2)).unwrap();
        let law = filter_concurrence_law(&d, &f).unwrap();
        assert!(!law.exceeds_unity());
        assert!(law.holds(), "deviation {:e}", law.deviation());
    }
}
