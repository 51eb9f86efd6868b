//! C ABI over `bellgeom`.
//!
//! Every fallible function returns a `BgStatus`; on failure a description is
//! available from `bg_last_error_message` on the same thread. Handles are
//! opaque, created by `*_new`/`*_from_*` functions and released with the
//! matching `*_free`. Matrices cross the boundary as row-major arrays of
//! interleaved `(re, im)` doubles: 32 for a 4×4 state, 8 for a 2×2 filter factor.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bellgeom::geometry::{self, Classification, Region};
use bellgeom::measures::{self, MeasureReport};
use bellgeom::qmat::{ComplexMatrix, C64};
use bellgeom::states::{self, DensityMatrix, LocalFilter, StandardState};
use bellgeom::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonFinite = 4,
    NotHermitian = 5,
    NotPsd = 6,
    NotUnitTrace = 7,
    NonPhysical = 8,
    NoConvergence = 9,
    FilterNotInvertible = 10,
    FilterAnnihilates = 11,
    SamplingStalled = 12,
    Internal = 13,
}

/// Classification of a standard-form state.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgClassification {
    Separable = 0,
    Entangled = 1,
    NonPhysical = 2,
}

/// Sampling region, matching the CLI's `--region` values.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgRegion {
    Cube = 0,
    Physical = 1,
    Entangled = 2,
    Separable = 3,
}

/// Closed-form measures of a standard-form state. Measures are NaN when the
/// state is non-physical; `corner` is all zeros unless the state is entangled.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BgMeasureReport {
    pub r: [f64; 3],
    pub classification: BgClassification,
    pub corner: [i8; 3],
    pub concurrence: f64,
    pub negativity: f64,
    pub euclid_distance: f64,
    pub hs_distance: f64,
}

/// Concurrence before filtering, the determinant-law prediction after, and the
/// value measured on the filtered state.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BgFilterLaw {
    pub initial: f64,
    pub predicted: f64,
    pub actual: f64,
}

/// Opaque validated two-qubit density matrix.
pub struct BgDensityMatrix(DensityMatrix);

/// Opaque seeded generator of standard-form states.
pub struct BgSampler {
    rng: ChaCha8Rng,
    region: Region,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BgStatus {
    match e {
        Error::DimensionMismatch { .. } => BgStatus::DimensionMismatch,
        Error::NonFinite { .. } => BgStatus::NonFinite,
        Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::Io(_)
        | Error::Normalization { .. } => BgStatus::InvalidArgument,
        Error::NotHermitian { .. } => BgStatus::NotHermitian,
        Error::NoConvergence { .. } => BgStatus::NoConvergence,
        Error::NotPsd { .. } => BgStatus::NotPsd,
        Error::NotUnitTrace { .. } => BgStatus::NotUnitTrace,
        Error::NonPhysical(..) => BgStatus::NonPhysical,
        Error::FilterNotInvertible { .. } => BgStatus::FilterNotInvertible,
        Error::FilterAnnihilates { .. } => BgStatus::FilterAnnihilates,
        Error::SamplingStalled { .. } => BgStatus::SamplingStalled,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BgStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("null pointer passed as `{name}`"));
            BgStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal error: panic inside bellgeom".into());
            BgStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn deref_mut<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn read_matrix(
    p: *const f64,
    n: usize,
    name: &'static str,
) -> Result<ComplexMatrix, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    let raw = std::slice::from_raw_parts(p, 2 * n * n);
    let data = raw.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect();
    Ok(ComplexMatrix::new(n, n, data)?)
}

unsafe fn write3(out: *mut f64, v: [f64; 3]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&v);
    Ok(())
}

fn boxed<T>(out: &mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn report_to_c(r: &MeasureReport) -> BgMeasureReport {
    let (classification, corner) = match r.classification {
        Classification::Separable => (BgClassification::Separable, [0; 3]),
        Classification::Entangled(v) => (BgClassification::Entangled, v.signs()),
        Classification::NonPhysical => (BgClassification::NonPhysical, [0; 3]),
    };
    BgMeasureReport {
        r: r.state.r,
        classification,
        corner,
        concurrence: r.concurrence.unwrap_or(f64::NAN),
        negativity: r.negativity.unwrap_or(f64::NAN),
        euclid_distance: r.euclidean_distance.unwrap_or(f64::NAN),
        hs_distance: r.hs_distance.unwrap_or(f64::NAN),
    }
}

fn finite_state(rx: f64, ry: f64, rz: f64) -> Result<StandardState, Failure> {
    if !(rx.is_finite() && ry.is_finite() && rz.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "coordinates ({rx}, {ry}, {rz}) must be finite"
        ))
        .into());
    }
    Ok(StandardState::new(rx, ry, rz))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static NUL-terminated name of a `BgStatus` value, or "unknown status".
#[no_mangle]
pub extern "C" fn bg_status_name(status: i32) -> *const c_char {
    const ALL: [BgStatus; 14] = [
        BgStatus::Ok,
        BgStatus::NullPointer,
        BgStatus::InvalidArgument,
        BgStatus::DimensionMismatch,
        BgStatus::NonFinite,
        BgStatus::NotHermitian,
        BgStatus::NotPsd,
        BgStatus::NotUnitTrace,
        BgStatus::NonPhysical,
        BgStatus::NoConvergence,
        BgStatus::FilterNotInvertible,
        BgStatus::FilterAnnihilates,
        BgStatus::SamplingStalled,
        BgStatus::Internal,
    ];
    let Some(&status) = ALL.iter().find(|s| **s as i32 == status) else {
        return c"unknown status".as_ptr();
    };
    let name: &'static CStr = match status {
        BgStatus::Ok => c"ok",
        BgStatus::NullPointer => c"null pointer",
        BgStatus::InvalidArgument => c"invalid argument",
        BgStatus::DimensionMismatch => c"dimension mismatch",
        BgStatus::NonFinite => c"non-finite entry",
        BgStatus::NotHermitian => c"not Hermitian",
        BgStatus::NotPsd => c"not positive semidefinite",
        BgStatus::NotUnitTrace => c"trace is not 1",
        BgStatus::NonPhysical => c"non-physical state",
        BgStatus::NoConvergence => c"eigensolver did not converge",
        BgStatus::FilterNotInvertible => c"filter not invertible",
        BgStatus::FilterAnnihilates => c"filter annihilates the state",
        BgStatus::SamplingStalled => c"sampling stalled",
        BgStatus::Internal => c"internal error",
    };
    name.as_ptr()
}

/// Message describing the last failure on this thread, or NULL if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Classifies the standard-form state `(rx, ry, rz)`.
///
/// # Safety
/// `out` must be NULL or point to writable storage for one `BgClassification`.
#[no_mangle]
pub unsafe extern "C" fn bg_classify(
    rx: f64,
    ry: f64,
    rz: f64,
    out: *mut BgClassification,
) -> BgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let s = finite_state(rx, ry, rz)?;
        *out = match geometry::classify(&s) {
            Classification::Separable => BgClassification::Separable,
            Classification::Entangled(_) => BgClassification::Entangled,
            Classification::NonPhysical => BgClassification::NonPhysical,
        };
        Ok(())
    })
}

/// Closed-form measures of `(rx, ry, rz)`.
///
/// The report is filled for every finite input. Returns the non-physical
/// status, with NaN measures, when the point lies outside the physical
/// tetrahedron.
///
/// # Safety
/// `out` must be NULL or point to writable storage for one `BgMeasureReport`.
#[no_mangle]
pub unsafe extern "C" fn bg_measure(
    rx: f64,
    ry: f64,
    rz: f64,
    out: *mut BgMeasureReport,
) -> BgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let s = finite_state(rx, ry, rz)?;
        let report = measures::measure(&s);
        *out = report_to_c(&report);
        if report.classification.is_physical() {
            Ok(())
        } else {
            Err(Error::NonPhysical(rx, ry, rz).into())
        }
    })
}

/// Nearest point of the separable octahedron to `(rx, ry, rz)`.
///
/// # Safety
/// `out` must be NULL or point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bg_project_onto_separable(
    rx: f64,
    ry: f64,
    rz: f64,
    out: *mut f64,
) -> BgStatus {
    guard(|| {
        let p = geometry::project_onto_separable(&finite_state(rx, ry, rz)?);
        write3(out, p.r)
    })
}

/// Validates a 4×4 density matrix given as 32 interleaved doubles.
///
/// # Safety
/// `entries` must be NULL or point to 32 readable doubles; `out` must be NULL
/// or point to a writable handle pointer. On success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn bg_density_new(
    entries: *const f64,
    out: *mut *mut BgDensityMatrix,
) -> BgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let m = read_matrix(entries, 4, "entries")?;
        boxed(out, BgDensityMatrix(DensityMatrix::new(m)?));
        Ok(())
    })
}

/// Density matrix of the physical standard-form state `(rx, ry, rz)`.
///
/// # Safety
/// `out` must be NULL or point to a writable handle pointer.
#[no_mangle]
pub unsafe extern "C" fn bg_density_from_standard(
    rx: f64,
    ry: f64,
    rz: f64,
    out: *mut *mut BgDensityMatrix,
) -> BgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let s = finite_state(rx, ry, rz)?;
        if !s.is_physical() {
            return Err(Error::NonPhysical(rx, ry, rz).into());
        }
        boxed(out, BgDensityMatrix(states::from_standard(&s)));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `d` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bg_density_free(d: *mut BgDensityMatrix) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Copies the matrix out as 32 interleaved doubles.
///
/// # Safety
/// `d` must be NULL or a live handle; `out` must be NULL or point to 32
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bg_density_entries(d: *const BgDensityMatrix, out: *mut f64) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let dst = std::slice::from_raw_parts_mut(out, 32);
        for (k, z) in d.0.matrix().as_slice().iter().enumerate() {
            dst[2 * k] = z.re;
            dst[2 * k + 1] = z.im;
        }
        Ok(())
    })
}

/// Concurrence via the spin-flip construction.
///
/// # Safety
/// `d` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bg_density_concurrence(
    d: *const BgDensityMatrix,
    out: *mut f64,
) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = deref_mut(out, "out")?;
        *out = measures::concurrence_general(&d.0)?;
        Ok(())
    })
}

/// Negativity from the partial-transpose spectrum.
///
/// # Safety
/// `d` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bg_density_negativity(
    d: *const BgDensityMatrix,
    out: *mut f64,
) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = deref_mut(out, "out")?;
        *out = measures::negativity_general(&d.0)?;
        Ok(())
    })
}

/// Standard-form coordinates if the matrix is Bell-diagonal within `tol`.
/// `*found` is set to 1 and `out` filled when it is, else `*found` is 0.
///
/// # Safety
/// `d` must be NULL or a live handle; `out` must be NULL or point to three
/// writable doubles; `found` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bg_density_standard_form(
    d: *const BgDensityMatrix,
    tol: f64,
    out: *mut f64,
    found: *mut i32,
) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let found = deref_mut(found, "found")?;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {tol} must be finite and non-negative"
            ))
            .into());
        }
        match states::is_standard_form(&d.0, tol)? {
            Some(s) => {
                write3(out, s.r)?;
                *found = 1;
            }
            None => *found = 0,
        }
        Ok(())
    })
}

unsafe fn read_filter(a: *const f64, b: *const f64) -> Result<LocalFilter, Failure> {
    Ok(LocalFilter::new(
        read_matrix(a, 2, "a")?,
        read_matrix(b, 2, "b")?,
    )?)
}

/// Applies the local filter `A⊗B` and renormalizes. `a` and `b` are 2×2
/// factors given as 8 interleaved doubles each.
///
/// # Safety
/// `d` must be NULL or a live handle; `a` and `b` must be NULL or point to 8
/// readable doubles; `out` must be NULL or a writable handle pointer. On
/// success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn bg_density_apply_filter(
    d: *const BgDensityMatrix,
    a: *const f64,
    b: *const f64,
    out: *mut *mut BgDensityMatrix,
) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = deref_mut(out, "out")?;
        let f = read_filter(a, b)?;
        boxed(out, BgDensityMatrix(states::apply_filter(&d.0, &f)?));
        Ok(())
    })
}

/// Concurrence before and after filtering, with the determinant-law prediction.
///
/// # Safety
/// As for `bg_density_apply_filter`, with `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bg_density_filter_law(
    d: *const BgDensityMatrix,
    a: *const f64,
    b: *const f64,
    out: *mut BgFilterLaw,
) -> BgStatus {
    guard(|| {
        let d = deref(d, "d")?;
        let out = deref_mut(out, "out")?;
        let law = measures::filter_concurrence_law(&d.0, &read_filter(a, b)?)?;
        *out = BgFilterLaw {
            initial: law.initial,
            predicted: law.predicted,
            actual: law.actual,
        };
        Ok(())
    })
}

/// Seeded sampler over `region`, one of the `BgRegion` values. Drawing `n`
/// states reproduces the CLI's `sample` output for the same seed and region.
///
/// # Safety
/// `out` must be NULL or a writable handle pointer.
#[no_mangle]
pub unsafe extern "C" fn bg_sampler_new(
    seed: u64,
    region: i32,
    out: *mut *mut BgSampler,
) -> BgStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let region = match region {
            r if r == BgRegion::Cube as i32 => Region::Cube,
            r if r == BgRegion::Physical as i32 => Region::Physical,
            r if r == BgRegion::Entangled as i32 => Region::Entangled,
            r if r == BgRegion::Separable as i32 => Region::Separable,
            other => return Err(Error::InvalidArgument(format!("unknown region {other}")).into()),
        };
        boxed(
            out,
            BgSampler {
                rng: ChaCha8Rng::seed_from_u64(seed),
                region,
            },
        );
        Ok(())
    })
}

/// Draws the next state.
///
/// # Safety
/// `s` must be NULL or a live sampler; `out` must be NULL or point to three
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bg_sampler_next(s: *mut BgSampler, out: *mut f64) -> BgStatus {
    guard(|| {
        let s = deref_mut(s, "s")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let drawn = geometry::sample_with(&mut s.rng, 1, s.region)?;
        write3(out, drawn[0].r)
    })
}

/// Releases a sampler. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a sampler from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bg_sampler_free(s: *mut BgSampler) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
