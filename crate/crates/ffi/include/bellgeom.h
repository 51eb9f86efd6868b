#ifndef BELLGEOM_H
#define BELLGEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdint.h>

// Result code of every fallible call.
typedef enum BgStatus {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_POINTER = 1,
  BG_STATUS_INVALID_ARGUMENT = 2,
  BG_STATUS_DIMENSION_MISMATCH = 3,
  BG_STATUS_NON_FINITE = 4,
  BG_STATUS_NOT_HERMITIAN = 5,
  BG_STATUS_NOT_PSD = 6,
  BG_STATUS_NOT_UNIT_TRACE = 7,
  BG_STATUS_NON_PHYSICAL = 8,
  BG_STATUS_NO_CONVERGENCE = 9,
  BG_STATUS_FILTER_NOT_INVERTIBLE = 10,
  BG_STATUS_FILTER_ANNIHILATES = 11,
  BG_STATUS_SAMPLING_STALLED = 12,
  BG_STATUS_INTERNAL = 13,
} BgStatus;

// Classification of a standard-form state.
typedef enum BgClassification {
  BG_CLASSIFICATION_SEPARABLE = 0,
  BG_CLASSIFICATION_ENTANGLED = 1,
  BG_CLASSIFICATION_NON_PHYSICAL = 2,
} BgClassification;

// Sampling region, matching the CLI's `--region` values.
typedef enum BgRegion {
  BG_REGION_CUBE = 0,
  BG_REGION_PHYSICAL = 1,
  BG_REGION_ENTANGLED = 2,
  BG_REGION_SEPARABLE = 3,
} BgRegion;

// Opaque validated two-qubit density matrix.
typedef struct BgDensityMatrix BgDensityMatrix;

// Opaque seeded generator of standard-form states.
typedef struct BgSampler BgSampler;

// Closed-form measures of a standard-form state. Measures are NaN when the
// state is non-physical; `corner` is all zeros unless the state is entangled.
typedef struct BgMeasureReport {
  double r[3];
  enum BgClassification classification;
  int8_t corner[3];
  double concurrence;
  double negativity;
  double euclid_distance;
  double hs_distance;
} BgMeasureReport;

// Concurrence before filtering, the determinant-law prediction after, and the
// value measured on the filtered state.
typedef struct BgFilterLaw {
  double initial;
  double predicted;
  double actual;
} BgFilterLaw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *bg_version(void);

// Static NUL-terminated name of a `BgStatus` value, or "unknown status".
const char *bg_status_name(int32_t status);

// Message describing the last failure on this thread, or NULL if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *bg_last_error_message(void);

// Classifies the standard-form state `(rx, ry, rz)`.
//
// # Safety
// `out` must be NULL or point to writable storage for one `BgClassification`.
enum BgStatus bg_classify(double rx, double ry, double rz, enum BgClassification *out);

// Closed-form measures of `(rx, ry, rz)`.
//
// The report is filled for every finite input. Returns the non-physical
// status, with NaN measures, when the point lies outside the physical
// tetrahedron.
//
// # Safety
// `out` must be NULL or point to writable storage for one `BgMeasureReport`.
enum BgStatus bg_measure(double rx, double ry, double rz, struct BgMeasureReport *out);

// Nearest point of the separable octahedron to `(rx, ry, rz)`.
//
// # Safety
// `out` must be NULL or point to three writable doubles.
enum BgStatus bg_project_onto_separable(double rx, double ry, double rz, double *out);

// Validates a 4×4 density matrix given as 32 interleaved doubles.
//
// # Safety
// `entries` must be NULL or point to 32 readable doubles; `out` must be NULL
// or point to a writable handle pointer. On success `*out` owns a new handle.
enum BgStatus bg_density_new(const double *entries, struct BgDensityMatrix **out);

// Density matrix of the physical standard-form state `(rx, ry, rz)`.
//
// # Safety
// `out` must be NULL or point to a writable handle pointer.
enum BgStatus bg_density_from_standard(double rx,
                                       double ry,
                                       double rz,
                                       struct BgDensityMatrix **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `d` must be NULL or a handle from this library that has not been freed.
void bg_density_free(struct BgDensityMatrix *d);

// Copies the matrix out as 32 interleaved doubles.
//
// # Safety
// `d` must be NULL or a live handle; `out` must be NULL or point to 32
// writable doubles.
enum BgStatus bg_density_entries(const struct BgDensityMatrix *d, double *out);

// Concurrence via the spin-flip construction.
//
// # Safety
// `d` must be NULL or a live handle; `out` must be NULL or writable.
enum BgStatus bg_density_concurrence(const struct BgDensityMatrix *d, double *out);

// Negativity from the partial-transpose spectrum.
//
// # Safety
// `d` must be NULL or a live handle; `out` must be NULL or writable.
enum BgStatus bg_density_negativity(const struct BgDensityMatrix *d, double *out);

// Standard-form coordinates if the matrix is Bell-diagonal within `tol`.
// `*found` is set to 1 and `out` filled when it is, else `*found` is 0.
//
// # Safety
// `d` must be NULL or a live handle; `out` must be NULL or point to three
// writable doubles; `found` must be NULL or writable.
enum BgStatus bg_density_standard_form(const struct BgDensityMatrix *d,
                                       double tol,
                                       double *out,
                                       int32_t *found);

// Applies the local filter `A⊗B` and renormalizes. `a` and `b` are 2×2
// factors given as 8 interleaved doubles each.
//
// # Safety
// `d` must be NULL or a live handle; `a` and `b` must be NULL or point to 8
// readable doubles; `out` must be NULL or a writable handle pointer. On
// success `*out` owns a new handle.
enum BgStatus bg_density_apply_filter(const struct BgDensityMatrix *d,
                                      const double *a,
                                      const double *b,
                                      struct BgDensityMatrix **out);

// Concurrence before and after filtering, with the determinant-law prediction.
//
// # Safety
// As for `bg_density_apply_filter`, with `out` NULL or writable.
enum BgStatus bg_density_filter_law(const struct BgDensityMatrix *d,
                                    const double *a,
                                    const double *b,
                                    struct BgFilterLaw *out);

// Seeded sampler over `region`, one of the `BgRegion` values. Drawing `n`
// states reproduces the CLI's `sample` output for the same seed and region.
//
// # Safety
// `out` must be NULL or a writable handle pointer.
enum BgStatus bg_sampler_new(uint64_t seed, int32_t region, struct BgSampler **out);

// Draws the next state.
//
// # Safety
// `s` must be NULL or a live sampler; `out` must be NULL or point to three
// writable doubles.
enum BgStatus bg_sampler_next(struct BgSampler *s, double *out);

// Releases a sampler. NULL is ignored.
//
// # Safety
// `s` must be NULL or a sampler from this library that has not been freed.
void bg_sampler_free(struct BgSampler *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BELLGEOM_H */
