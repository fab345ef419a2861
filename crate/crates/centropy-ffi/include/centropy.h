#ifndef CENTROPY_H
#define CENTROPY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Call succeeded.
#define CENTROPY_STATUS_OK 0

// A required pointer argument was null.
#define CENTROPY_STATUS_NULL_POINTER 1

// An argument was rejected (unknown code, bad level, bad dimensions).
#define CENTROPY_STATUS_INVALID_ARGUMENT 2

// The probability table is not a valid distribution.
#define CENTROPY_STATUS_INVALID_PMF 3

// The order parameter is not usable for the requested family.
#define CENTROPY_STATUS_INVALID_ALPHA 4

// The sample is empty or contains out-of-range outcomes.
#define CENTROPY_STATUS_INVALID_SAMPLE 5

// The requested quantity degenerates on this input.
#define CENTROPY_STATUS_DEGENERATE 6

// An operating system error was reported.
#define CENTROPY_STATUS_IO 7

// Shannon entropy, the limit of both deformed families at order 1.
#define CENTROPY_FAMILY_SHANNON 0

// Renyi entropy of the order passed alongside the family code.
#define CENTROPY_FAMILY_RENYI 1

// Tsallis entropy of the order passed alongside the family code.
#define CENTROPY_FAMILY_TSALLIS 2

// Entropy of the joint pair (X, Y).
#define CENTROPY_DIRECTION_JOINT 0

// Entropy of the row marginal X.
#define CENTROPY_DIRECTION_MARGINAL_X 1

// Entropy of the column marginal Y.
#define CENTROPY_DIRECTION_MARGINAL_Y 2

// Conditional entropy of Y given X.
#define CENTROPY_DIRECTION_Y_GIVEN_X 3

// Conditional entropy of X given Y.
#define CENTROPY_DIRECTION_X_GIVEN_Y 4

// Variance transcribed from the stated closed forms.
#define CENTROPY_VARIANCE_LITERAL 0

// Variance from the delta-method contraction of the multinomial covariance.
#define CENTROPY_VARIANCE_DELTA 1

// Joint distribution handle. Construct with [`centropy_pmf_new`] or
// [`centropy_pmf_zipf`], release with [`centropy_pmf_free`].
typedef struct CentropyPmf CentropyPmf;

// Paired-sample handle. Construct with [`centropy_samples_new`], release
// with [`centropy_samples_free`].
typedef struct CentropySamples CentropySamples;

// Result of a plug-in estimate with an attached variance request.
//
// `has_variance` is false when the requested route does not yield a usable
// nonnegative variance on this sample; `variance`, `ci_low`, and `ci_high`
// are NaN in that case.
typedef struct CentropyEstimate {
  // Estimated entropy in nats.
  double value;
  // Estimated asymptotic variance, or NaN.
  double variance;
  // Lower confidence bound in nats, or NaN.
  double ci_low;
  // Upper confidence bound in nats, or NaN.
  double ci_high;
  // Number of samples the estimate was computed from.
  uint64_t n;
  // Whether `variance`, `ci_low`, and `ci_high` carry values.
  bool has_variance;
} CentropyEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the library version as a static NUL-terminated string.
const char *centropy_version(void);

// Returns the message of the last failure on this thread, or null if the
// most recent fallible call succeeded.
//
// The pointer stays valid until the next fallible `centropy_*` call on the
// same thread; copy the string before calling anything else.
const char *centropy_last_error_message(void);

// Builds a strict r x s joint distribution from `len` probabilities in the
// flat encoding. Every entry must be strictly positive and the table must
// sum to 1 within the library's tolerance. On success writes a handle to
// `out`; the caller owns it and must release it with [`centropy_pmf_free`].
//
// # Safety
// The caller must ensure that:
// - `probs` points to at least `len` readable doubles.
// - `out` points to writable storage for one pointer.
// - Both pointers remain valid for the duration of the call.
uint32_t centropy_pmf_new(size_t r,
                          size_t s,
                          const double *probs,
                          size_t len,
                          struct CentropyPmf **out);

// Builds the r x s joint distribution whose flat cell probabilities follow
// a Zipf power law of exponent `beta` over the m = r s cells. On success
// writes a handle to `out`; release it with [`centropy_pmf_free`].
//
// # Safety
// The caller must ensure that `out` points to writable storage for one
// pointer and remains valid for the duration of the call.
uint32_t centropy_pmf_zipf(double beta, size_t r, size_t s, struct CentropyPmf **out);

// Releases a distribution handle. Passing null is a no-op.
//
// # Safety
// `pmf` must be null or a pointer returned by [`centropy_pmf_new`] or
// [`centropy_pmf_zipf`] that has not been freed yet.
void centropy_pmf_free(struct CentropyPmf *pmf);

// Writes the support dimensions of `pmf` to `r` and `s`.
//
// # Safety
// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `r` and
// `s` must point to writable `size_t` storage.
uint32_t centropy_pmf_dims(const struct CentropyPmf *pmf, size_t *r, size_t *s);

// Evaluates the exact entropy of `pmf` for the given family, order, and
// direction and writes it to `out` in nats. `alpha` is ignored for the
// Shannon family; for the Renyi and Tsallis families it must be a positive
// order different from 1 (request the Shannon family for the limit).
//
// # Safety
// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
// must point to writable storage for one double.
uint32_t centropy_entropy(const struct CentropyPmf *pmf,
                          uint32_t family,
                          double alpha,
                          uint32_t direction,
                          double *out);

// Writes the almost-sure deviation bound constant of the plug-in estimator
// to `out`. Only the two conditional directions are meaningful here.
//
// # Safety
// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
// must point to writable storage for one double.
uint32_t centropy_bound_constant(const struct CentropyPmf *pmf,
                                 uint32_t family,
                                 double alpha,
                                 uint32_t direction,
                                 double *out);

// Writes an asymptotic variance of the plug-in estimator at `pmf` to `out`.
// `source` selects the route: the literal transcription of the stated
// closed forms or the delta-method contraction. The routes disagree for the
// Renyi and Tsallis families and are never averaged; the literal route can
// return a negative number, which is reported as computed.
//
// # Safety
// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
// must point to writable storage for one double.
uint32_t centropy_variance(const struct CentropyPmf *pmf,
                           uint32_t family,
                           double alpha,
                           uint32_t direction,
                           uint32_t source,
                           double *out);

// Builds a sample set over an r x s support from `len` outcomes in the
// 1-based flat encoding. On success writes a handle to `out`; the caller
// owns it and must release it with [`centropy_samples_free`].
//
// # Safety
// The caller must ensure that:
// - `outcomes` points to at least `len` readable `size_t` values.
// - `out` points to writable storage for one pointer.
// - Both pointers remain valid for the duration of the call.
uint32_t centropy_samples_new(size_t r,
                              size_t s,
                              const size_t *outcomes,
                              size_t len,
                              struct CentropySamples **out);

// Releases a sample-set handle. Passing null is a no-op.
//
// # Safety
// `samples` must be null or a pointer returned by [`centropy_samples_new`]
// that has not been freed yet.
void centropy_samples_free(struct CentropySamples *samples);

// Writes the plug-in entropy estimate for `samples` to `out` in nats,
// without a variance.
//
// # Safety
// `samples` must be a live handle from [`centropy_samples_new`]; `out` must
// point to writable storage for one double.
uint32_t centropy_estimate(const struct CentropySamples *samples,
                           uint32_t family,
                           double alpha,
                           uint32_t direction,
                           double *out);

// Writes the plug-in estimate together with a plug-in variance and a normal
// confidence interval at `level` (for example 0.95) to `out`. When the
// selected variance route is unusable on this sample the estimate is still
// written with `has_variance` false and NaN variance fields.
//
// # Safety
// `samples` must be a live handle from [`centropy_samples_new`]; `out` must
// point to writable storage for one [`CentropyEstimate`].
uint32_t centropy_estimate_with_variance(const struct CentropySamples *samples,
                                         uint32_t family,
                                         double alpha,
                                         uint32_t direction,
                                         uint32_t source,
                                         double level,
                                         struct CentropyEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CENTROPY_H */
