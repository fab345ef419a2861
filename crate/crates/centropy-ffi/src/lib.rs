//! C bindings for the conditional entropy library.
//!
//! Handles are opaque pointers produced by the `*_new` constructors and
//! released by the paired `*_free` functions. Fallible calls return a status
//! code from the `CENTROPY_STATUS_*` family; on failure a thread-local
//! message describing the problem is available through
//! [`centropy_last_error_message`] until the next fallible call on the same
//! thread. Family, direction, and variance-source arguments are plain `u32`
//! codes so that an out-of-range value is a reported error instead of
//! undefined behavior at the boundary.
//!
//! All entropies are in nats. Outcome indices use the 1-based flat encoding
//! `k = s (i - 1) + j` of the pair `(i, j)`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use centropy::asymptotics;
use centropy::entropy;
use centropy::estimation::{self, SampleSet, VarianceSource};
use centropy::simulation;
use centropy::{Direction, EntropyFamily, Error, JointPmf};

/// Call succeeded.
pub const CENTROPY_STATUS_OK: u32 = 0;
/// A required pointer argument was null.
pub const CENTROPY_STATUS_NULL_POINTER: u32 = 1;
/// An argument was rejected (unknown code, bad level, bad dimensions).
pub const CENTROPY_STATUS_INVALID_ARGUMENT: u32 = 2;
/// The probability table is not a valid distribution.
pub const CENTROPY_STATUS_INVALID_PMF: u32 = 3;
/// The order parameter is not usable for the requested family.
pub const CENTROPY_STATUS_INVALID_ALPHA: u32 = 4;
/// The sample is empty or contains out-of-range outcomes.
pub const CENTROPY_STATUS_INVALID_SAMPLE: u32 = 5;
/// The requested quantity degenerates on this input.
pub const CENTROPY_STATUS_DEGENERATE: u32 = 6;
/// An operating system error was reported.
pub const CENTROPY_STATUS_IO: u32 = 7;

/// Shannon entropy, the limit of both deformed families at order 1.
pub const CENTROPY_FAMILY_SHANNON: u32 = 0;
/// Renyi entropy of the order passed alongside the family code.
pub const CENTROPY_FAMILY_RENYI: u32 = 1;
/// Tsallis entropy of the order passed alongside the family code.
pub const CENTROPY_FAMILY_TSALLIS: u32 = 2;

/// Entropy of the joint pair (X, Y).
pub const CENTROPY_DIRECTION_JOINT: u32 = 0;
/// Entropy of the row marginal X.
pub const CENTROPY_DIRECTION_MARGINAL_X: u32 = 1;
/// Entropy of the column marginal Y.
pub const CENTROPY_DIRECTION_MARGINAL_Y: u32 = 2;
/// Conditional entropy of Y given X.
pub const CENTROPY_DIRECTION_Y_GIVEN_X: u32 = 3;
/// Conditional entropy of X given Y.
pub const CENTROPY_DIRECTION_X_GIVEN_Y: u32 = 4;

/// Variance transcribed from the stated closed forms.
pub const CENTROPY_VARIANCE_LITERAL: u32 = 0;
/// Variance from the delta-method contraction of the multinomial covariance.
pub const CENTROPY_VARIANCE_DELTA: u32 = 1;

/// Joint distribution handle. Construct with [`centropy_pmf_new`] or
/// [`centropy_pmf_zipf`], release with [`centropy_pmf_free`].
pub struct CentropyPmf(JointPmf);

/// Paired-sample handle. Construct with [`centropy_samples_new`], release
/// with [`centropy_samples_free`].
pub struct CentropySamples(SampleSet);

/// Result of a plug-in estimate with an attached variance request.
///
/// `has_variance` is false when the requested route does not yield a usable
/// nonnegative variance on this sample; `variance`, `ci_low`, and `ci_high`
/// are NaN in that case.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CentropyEstimate {
    /// Estimated entropy in nats.
    pub value: f64,
    /// Estimated asymptotic variance, or NaN.
    pub variance: f64,
    /// Lower confidence bound in nats, or NaN.
    pub ci_low: f64,
    /// Upper confidence bound in nats, or NaN.
    pub ci_high: f64,
    /// Number of samples the estimate was computed from.
    pub n: u64,
    /// Whether `variance`, `ci_low`, and `ci_high` carry values.
    pub has_variance: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn fail(err: &Error) -> u32 {
    let message = CString::new(err.to_string())
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    match err {
        Error::InvalidPmf(_) => CENTROPY_STATUS_INVALID_PMF,
        Error::InvalidAlpha(_) => CENTROPY_STATUS_INVALID_ALPHA,
        Error::InvalidSample(_) => CENTROPY_STATUS_INVALID_SAMPLE,
        Error::Degenerate(_) => CENTROPY_STATUS_DEGENERATE,
        Error::Io(_) => CENTROPY_STATUS_IO,
        _ => CENTROPY_STATUS_INVALID_ARGUMENT,
    }
}

fn fail_argument(message: String) -> u32 {
    fail(&Error::InvalidConfig(message))
}

fn family_of(code: u32, alpha: f64) -> Result<(EntropyFamily, Option<f64>), u32> {
    match code {
        CENTROPY_FAMILY_SHANNON => Ok((EntropyFamily::Shannon, None)),
        CENTROPY_FAMILY_RENYI => Ok((EntropyFamily::Renyi, Some(alpha))),
        CENTROPY_FAMILY_TSALLIS => Ok((EntropyFamily::Tsallis, Some(alpha))),
        _ => Err(fail_argument(format!("unknown family code {code}"))),
    }
}

fn direction_of(code: u32) -> Result<Direction, u32> {
    match code {
        CENTROPY_DIRECTION_JOINT => Ok(Direction::Joint),
        CENTROPY_DIRECTION_MARGINAL_X => Ok(Direction::MarginalX),
        CENTROPY_DIRECTION_MARGINAL_Y => Ok(Direction::MarginalY),
        CENTROPY_DIRECTION_Y_GIVEN_X => Ok(Direction::YgivenX),
        CENTROPY_DIRECTION_X_GIVEN_Y => Ok(Direction::XgivenY),
        _ => Err(fail_argument(format!("unknown direction code {code}"))),
    }
}

fn source_of(code: u32) -> Result<VarianceSource, u32> {
    match code {
        CENTROPY_VARIANCE_LITERAL => Ok(VarianceSource::Literal),
        CENTROPY_VARIANCE_DELTA => Ok(VarianceSource::Delta),
        _ => Err(fail_argument(format!("unknown variance source code {code}"))),
    }
}

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn centropy_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the message of the last failure on this thread, or null if the
/// most recent fallible call succeeded.
///
/// The pointer stays valid until the next fallible `centropy_*` call on the
/// same thread; copy the string before calling anything else.
#[no_mangle]
pub extern "C" fn centropy_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |message| message.as_ptr())
    })
}

/// Builds a strict r x s joint distribution from `len` probabilities in the
/// flat encoding. Every entry must be strictly positive and the table must
/// sum to 1 within the library's tolerance. On success writes a handle to
/// `out`; the caller owns it and must release it with [`centropy_pmf_free`].
///
/// # Safety
/// The caller must ensure that:
/// - `probs` points to at least `len` readable doubles.
/// - `out` points to writable storage for one pointer.
/// - Both pointers remain valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn centropy_pmf_new(
    r: usize,
    s: usize,
    probs: *const f64,
    len: usize,
    out: *mut *mut CentropyPmf,
) -> u32 {
    if probs.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    // SAFETY: caller guarantees `probs` covers `len` doubles.
    let table = std::slice::from_raw_parts(probs, len).to_vec();
    match JointPmf::strict(r, s, table) {
        Ok(pmf) => {
            clear_error();
            // SAFETY: caller guarantees `out` is writable.
            *out = Box::into_raw(Box::new(CentropyPmf(pmf)));
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Builds the r x s joint distribution whose flat cell probabilities follow
/// a Zipf power law of exponent `beta` over the m = r s cells. On success
/// writes a handle to `out`; release it with [`centropy_pmf_free`].
///
/// # Safety
/// The caller must ensure that `out` points to writable storage for one
/// pointer and remains valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn centropy_pmf_zipf(
    beta: f64,
    r: usize,
    s: usize,
    out: *mut *mut CentropyPmf,
) -> u32 {
    if out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    match simulation::zipf_joint_pmf(beta, r, s) {
        Ok(pmf) => {
            clear_error();
            // SAFETY: caller guarantees `out` is writable.
            *out = Box::into_raw(Box::new(CentropyPmf(pmf)));
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Releases a distribution handle. Passing null is a no-op.
///
/// # Safety
/// `pmf` must be null or a pointer returned by [`centropy_pmf_new`] or
/// [`centropy_pmf_zipf`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn centropy_pmf_free(pmf: *mut CentropyPmf) {
    if pmf.is_null() {
        return;
    }
    // SAFETY: caller guarantees `pmf` came from a constructor above.
    drop(Box::from_raw(pmf));
}

/// Writes the support dimensions of `pmf` to `r` and `s`.
///
/// # Safety
/// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `r` and
/// `s` must point to writable `size_t` storage.
#[no_mangle]
pub unsafe extern "C" fn centropy_pmf_dims(
    pmf: *const CentropyPmf,
    r: *mut usize,
    s: *mut usize,
) -> u32 {
    if pmf.is_null() || r.is_null() || s.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    // SAFETY: caller guarantees all three pointers are valid.
    let handle = &*pmf;
    *r = handle.0.r();
    *s = handle.0.s();
    CENTROPY_STATUS_OK
}

/// Evaluates the exact entropy of `pmf` for the given family, order, and
/// direction and writes it to `out` in nats. `alpha` is ignored for the
/// Shannon family; for the Renyi and Tsallis families it must be a positive
/// order different from 1 (request the Shannon family for the limit).
///
/// # Safety
/// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
/// must point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn centropy_entropy(
    pmf: *const CentropyPmf,
    family: u32,
    alpha: f64,
    direction: u32,
    out: *mut f64,
) -> u32 {
    if pmf.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    let (family, alpha) = match family_of(family, alpha) {
        Ok(pair) => pair,
        Err(status) => return status,
    };
    let direction = match direction_of(direction) {
        Ok(direction) => direction,
        Err(status) => return status,
    };
    // SAFETY: caller guarantees `pmf` is live and `out` is writable.
    match entropy::evaluate(&(*pmf).0, family, alpha, direction) {
        Ok(value) => {
            clear_error();
            *out = value.value;
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Writes the almost-sure deviation bound constant of the plug-in estimator
/// to `out`. Only the two conditional directions are meaningful here.
///
/// # Safety
/// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
/// must point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn centropy_bound_constant(
    pmf: *const CentropyPmf,
    family: u32,
    alpha: f64,
    direction: u32,
    out: *mut f64,
) -> u32 {
    if pmf.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    let (family, alpha) = match family_of(family, alpha) {
        Ok(pair) => pair,
        Err(status) => return status,
    };
    let direction = match direction_of(direction) {
        Ok(direction) => direction,
        Err(status) => return status,
    };
    // SAFETY: caller guarantees `pmf` is live and `out` is writable.
    match asymptotics::bound_constant(&(*pmf).0, family, alpha, direction) {
        Ok(constant) => {
            clear_error();
            *out = constant;
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Writes an asymptotic variance of the plug-in estimator at `pmf` to `out`.
/// `source` selects the route: the literal transcription of the stated
/// closed forms or the delta-method contraction. The routes disagree for the
/// Renyi and Tsallis families and are never averaged; the literal route can
/// return a negative number, which is reported as computed.
///
/// # Safety
/// `pmf` must be a live handle from a `centropy_pmf_*` constructor; `out`
/// must point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn centropy_variance(
    pmf: *const CentropyPmf,
    family: u32,
    alpha: f64,
    direction: u32,
    source: u32,
    out: *mut f64,
) -> u32 {
    if pmf.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    let (family, alpha) = match family_of(family, alpha) {
        Ok(pair) => pair,
        Err(status) => return status,
    };
    let direction = match direction_of(direction) {
        Ok(direction) => direction,
        Err(status) => return status,
    };
    let source = match source_of(source) {
        Ok(source) => source,
        Err(status) => return status,
    };
    // SAFETY: caller guarantees `pmf` is live and `out` is writable.
    let result = match source {
        VarianceSource::Literal => {
            asymptotics::variance_literal(&(*pmf).0, family, alpha, direction)
                .map(|variance| variance.total)
        }
        VarianceSource::Delta => asymptotics::variance_delta(&(*pmf).0, family, alpha, direction),
        VarianceSource::None => unreachable!("source_of never yields None"),
    };
    match result {
        Ok(variance) => {
            clear_error();
            *out = variance;
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Builds a sample set over an r x s support from `len` outcomes in the
/// 1-based flat encoding. On success writes a handle to `out`; the caller
/// owns it and must release it with [`centropy_samples_free`].
///
/// # Safety
/// The caller must ensure that:
/// - `outcomes` points to at least `len` readable `size_t` values.
/// - `out` points to writable storage for one pointer.
/// - Both pointers remain valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn centropy_samples_new(
    r: usize,
    s: usize,
    outcomes: *const usize,
    len: usize,
    out: *mut *mut CentropySamples,
) -> u32 {
    if outcomes.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    // SAFETY: caller guarantees `outcomes` covers `len` values.
    let drawn = std::slice::from_raw_parts(outcomes, len).to_vec();
    match SampleSet::from_outcomes(r, s, drawn) {
        Ok(samples) => {
            clear_error();
            // SAFETY: caller guarantees `out` is writable.
            *out = Box::into_raw(Box::new(CentropySamples(samples)));
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Releases a sample-set handle. Passing null is a no-op.
///
/// # Safety
/// `samples` must be null or a pointer returned by [`centropy_samples_new`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn centropy_samples_free(samples: *mut CentropySamples) {
    if samples.is_null() {
        return;
    }
    // SAFETY: caller guarantees `samples` came from the constructor.
    drop(Box::from_raw(samples));
}

/// Writes the plug-in entropy estimate for `samples` to `out` in nats,
/// without a variance.
///
/// # Safety
/// `samples` must be a live handle from [`centropy_samples_new`]; `out` must
/// point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn centropy_estimate(
    samples: *const CentropySamples,
    family: u32,
    alpha: f64,
    direction: u32,
    out: *mut f64,
) -> u32 {
    if samples.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    let (family, alpha) = match family_of(family, alpha) {
        Ok(pair) => pair,
        Err(status) => return status,
    };
    let direction = match direction_of(direction) {
        Ok(direction) => direction,
        Err(status) => return status,
    };
    // SAFETY: caller guarantees `samples` is live and `out` is writable.
    match estimation::estimate_entropy(&(*samples).0, family, alpha, direction) {
        Ok(estimate) => {
            clear_error();
            *out = estimate.value;
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}

/// Writes the plug-in estimate together with a plug-in variance and a normal
/// confidence interval at `level` (for example 0.95) to `out`. When the
/// selected variance route is unusable on this sample the estimate is still
/// written with `has_variance` false and NaN variance fields.
///
/// # Safety
/// `samples` must be a live handle from [`centropy_samples_new`]; `out` must
/// point to writable storage for one [`CentropyEstimate`].
#[no_mangle]
pub unsafe extern "C" fn centropy_estimate_with_variance(
    samples: *const CentropySamples,
    family: u32,
    alpha: f64,
    direction: u32,
    source: u32,
    level: f64,
    out: *mut CentropyEstimate,
) -> u32 {
    if samples.is_null() || out.is_null() {
        return CENTROPY_STATUS_NULL_POINTER;
    }
    let (family, alpha) = match family_of(family, alpha) {
        Ok(pair) => pair,
        Err(status) => return status,
    };
    let direction = match direction_of(direction) {
        Ok(direction) => direction,
        Err(status) => return status,
    };
    let source = match source_of(source) {
        Ok(source) => source,
        Err(status) => return status,
    };
    let result = estimation::estimate_entropy_with_variance(
        &(*samples).0,
        family,
        alpha,
        direction,
        source,
        Some(level),
    );
    // SAFETY: caller guarantees `samples` is live and `out` is writable.
    match result {
        Ok(estimate) => {
            clear_error();
            *out = CentropyEstimate {
                value: estimate.value,
                variance: estimate.variance.unwrap_or(f64::NAN),
                ci_low: estimate.ci_low.unwrap_or(f64::NAN),
                ci_high: estimate.ci_high.unwrap_or(f64::NAN),
                n: estimate.n as u64,
                has_variance: estimate.variance.is_some(),
            };
            CENTROPY_STATUS_OK
        }
        Err(err) => fail(&err),
    }
}
