//! Plug-in estimation from i.i.d. paired categorical samples.
//!
//! A sample of n flat outcomes yields the empirical pmf p̂_k = c_k / n, and
//! every estimator is the exact functional from [`crate::entropy`] applied
//! to that empirical pmf. Nothing here approximates: the estimators are
//! definitional compositions, so the exactness and chain-rule identities of
//! the exact layer transfer verbatim to estimates.

use serde::{Deserialize, Serialize};

use crate::entropy::{self, Direction, EntropyFamily, PowerSum};
use crate::error::{Error, Result};
use crate::pmf::{JointPmf, MarginalPmf};

/// Which asymptotic variance expression, if any, backs an estimate.
///
/// `Literal` evaluates the stated component-variance expressions term by
/// term; `Delta` is the independent gradient-times-multinomial-covariance
/// oracle. The two are reported side by side and never substituted for one
/// another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceSource {
    Literal,
    Delta,
    None,
}

/// An ordered i.i.d. sample of flat outcomes k ∈ {1..rs} with its counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    r: usize,
    s: usize,
    outcomes: Vec<usize>,
    counts: Vec<u64>,
    n: usize,
}

impl SampleSet {
    /// Builds a sample set from ordered flat outcomes, counting in one pass.
    pub fn from_outcomes(r: usize, s: usize, outcomes: Vec<usize>) -> Result<Self> {
        if r <= 1 || s <= 1 {
            return Err(Error::InvalidSample(format!(
                "support must be at least 2 x 2, got {r} x {s}"
            )));
        }
        if outcomes.is_empty() {
            return Err(Error::InvalidSample(
                "sample must contain at least one outcome".to_string(),
            ));
        }
        let mut counts = vec![0u64; r * s];
        for (pos, &k) in outcomes.iter().enumerate() {
            if k == 0 || k > r * s {
                return Err(Error::InvalidSample(format!(
                    "outcome {} at position {} is outside 1..={}",
                    k,
                    pos + 1,
                    r * s
                )));
            }
            counts[k - 1] += 1;
        }
        let n = outcomes.len();
        Ok(SampleSet {
            r,
            s,
            outcomes,
            counts,
            n,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The ordered outcomes, flat 1-based indices.
    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    /// Occurrence counts per flat outcome, indexed by k−1.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// A plug-in entropy estimate with optional asymptotic variance and
/// confidence interval. `variance` is present only when the requested
/// source produced a finite nonnegative value at the empirical pmf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub family: EntropyFamily,
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
    pub variance_source: VarianceSource,
}

/// The empirical joint pmf p̂_k = c_k / n, in empirical mode. Counts are
/// exact integers and the division by n happens exactly once per cell.
pub fn empirical_joint(samples: &SampleSet) -> JointPmf {
    let n = samples.n as f64;
    let probs: Vec<f64> = samples.counts.iter().map(|&c| c as f64 / n).collect();
    JointPmf::empirical(samples.r, samples.s, probs)
        .expect("counts over a validated support always form an empirical pmf")
}

/// Empirical marginals, defined as the marginals of [`empirical_joint`] so
/// the row-sum identity holds exactly, not merely within rounding.
pub fn empirical_marginals(samples: &SampleSet) -> (MarginalPmf, MarginalPmf) {
    empirical_joint(samples).marginals()
}

/// Plug-in estimate: the exact functional applied to the empirical pmf.
/// No variance is attached; see [`estimate_entropy_with_variance`].
pub fn estimate_entropy(
    samples: &SampleSet,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<EntropyEstimate> {
    let pmf = empirical_joint(samples);
    let exact = entropy::evaluate(&pmf, family, alpha, direction)?;
    Ok(EntropyEstimate {
        value: exact.value,
        family,
        alpha,
        direction,
        n: samples.n,
        variance: None,
        ci_low: None,
        ci_high: None,
        variance_source: VarianceSource::None,
    })
}

/// Plug-in estimate with an opt-in plug-in variance: the requested
/// variance expression is evaluated at the empirical pmf (not at any true
/// pmf, which the estimator does not know). A confidence interval at
/// `ci_level` is attached when the variance is finite and nonnegative; a
/// negative literal evaluation leaves `variance` empty while
/// `variance_source` still records what was requested.
pub fn estimate_entropy_with_variance(
    samples: &SampleSet,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
    source: VarianceSource,
    ci_level: Option<f64>,
) -> Result<EntropyEstimate> {
    let mut estimate = estimate_entropy(samples, family, alpha, direction)?;
    estimate.variance_source = source;
    if source == VarianceSource::None {
        return Ok(estimate);
    }
    let pmf = empirical_joint(samples);
    let raw = match source {
        VarianceSource::Literal => {
            crate::asymptotics::variance_literal(&pmf, family, alpha, direction)?.total
        }
        VarianceSource::Delta => {
            crate::asymptotics::variance_delta(&pmf, family, alpha, direction)?
        }
        VarianceSource::None => unreachable!(),
    };
    // A value within rounding distance below zero is a zero variance, not a
    // negative one; anything clearly negative is left unattached.
    if raw.is_finite() && raw >= -1e-12 {
        estimate.variance = Some(raw.max(0.0));
        if let Some(level) = ci_level {
            let (low, high) = crate::asymptotics::confidence_interval(&estimate, raw, level)?;
            estimate.ci_low = Some(low);
            estimate.ci_high = Some(high);
        }
    }
    Ok(estimate)
}

/// Power sums of the empirical joint pmf and both empirical marginals.
pub fn estimate_power_sums(
    samples: &SampleSet,
    alpha: f64,
) -> Result<(PowerSum, PowerSum, PowerSum)> {
    let pmf = empirical_joint(samples);
    let (px, py) = pmf.marginals();
    Ok((
        entropy::power_sum(pmf.probs(), alpha)?,
        entropy::power_sum(px.probs(), alpha)?,
        entropy::power_sum(py.probs(), alpha)?,
    ))
}
