//! Seeded sampling from finite pmfs and Monte Carlo campaigns: convergence
//! traces over a sample-size grid and normality evidence (KS distance,
//! Q-Q pairs, histograms) for standardized estimator statistics.
//!
//! Determinism: the trial at sample size n uses the substream seed
//! `seed ⊕ mix64(n ⊕ mix64(trial))`, so every (n, trial) cell draws an
//! independent, platform-identical stream and a campaign's output is
//! bit-identical for a fixed config no matter how trials are scheduled.

use serde::Serialize;

use crate::asymptotics;
use crate::entropy::{self, Direction, EntropyFamily};
use crate::error::{Error, Result};
use crate::estimation::{self, SampleSet, VarianceSource};
use crate::normal::{normal_cdf, normal_quantile};
use crate::pmf::JointPmf;
use crate::rng::{mix64, Xoshiro256StarStar};

/// A Zipf law k^(−β)/Σ_{i≤m} i^(−β) on {1..m}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfSpec {
    pub beta: f64,
    pub m: usize,
}

/// Monte Carlo campaign description. `variance_source` selects the σ used
/// to standardize statistics in normality mode.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub truth: JointPmf,
    pub family: EntropyFamily,
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub sample_sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub variance_source: VarianceSource,
}

impl CampaignConfig {
    fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() {
            return Err(Error::InvalidConfig(
                "sample_sizes must contain at least one size".to_string(),
            ));
        }
        for w in self.sample_sizes.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidConfig(format!(
                    "sample_sizes must be strictly ascending, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        if self.sample_sizes[0] < 2 {
            return Err(Error::InvalidConfig(format!(
                "sample sizes must be at least 2, got {}",
                self.sample_sizes[0]
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".to_string()));
        }
        Ok(())
    }
}

/// One (sample size, trial) cell of a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub estimate: f64,
    pub error: f64,
    pub a_z: f64,
    pub a_x: f64,
    pub a_y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standardized: Option<f64>,
}

/// Per-sample-size aggregate: mean and sample variance of the estimates,
/// plus the KS distance of the standardized statistics in normality mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryRecord {
    pub n: usize,
    pub mean_estimate: f64,
    pub variance_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_distance: Option<f64>,
}

/// One Q-Q point: an observed standardized value against the standard
/// normal quantile at the same (t − 0.5)/T plotting position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QqPair {
    pub empirical: f64,
    pub normal: f64,
}

/// A histogram as bin edges (length bins + 1) and counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Output of a campaign. `sigma`, `qq`, and `histogram` are present in
/// normality mode only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationTrace {
    pub truth_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<SummaryRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qq: Option<Vec<QqPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Histogram>,
}

/// The normalized Zipf pmf for `spec`. β = 0 gives the uniform law;
/// integer β is computed by repeated multiplication so the vector is
/// identical across platforms.
pub fn zipf_pmf(spec: &ZipfSpec) -> Result<Vec<f64>> {
    if spec.m == 0 {
        return Err(Error::InvalidConfig(
            "zipf support size m must be at least 1".to_string(),
        ));
    }
    if !spec.beta.is_finite() || spec.beta < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "zipf exponent beta must be a finite nonnegative real, got {}",
            spec.beta
        )));
    }
    let integral = spec.beta.fract() == 0.0 && spec.beta <= 64.0;
    let weight = |k: usize| -> f64 {
        if integral {
            1.0 / (k as f64).powi(spec.beta as i32)
        } else {
            (k as f64).powf(-spec.beta)
        }
    };
    let weights: Vec<f64> = (1..=spec.m).map(weight).collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// The Zipf(β, r·s) law arranged as an r x s joint pmf in flat order.
pub fn zipf_joint_pmf(beta: f64, r: usize, s: usize) -> Result<JointPmf> {
    let probs = zipf_pmf(&ZipfSpec { beta, m: r * s })?;
    JointPmf::strict(r, s, probs)
}

/// The substream seed for one (n, trial) cell.
pub fn substream_seed(seed: u64, n: u64, trial: u64) -> u64 {
    seed ^ mix64(n ^ mix64(trial))
}

/// Draws n i.i.d. flat outcomes from `probs` by inverse CDF over the
/// cumulative vector (O(log rs) per draw), deterministically from `seed`.
pub fn sample(probs: &[f64], r: usize, s: usize, n: usize, seed: u64) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::InvalidSample(
            "sample size must be at least 1".to_string(),
        ));
    }
    let pmf = JointPmf::empirical(r, s, probs.to_vec())?;
    let mut cumulative = Vec::with_capacity(pmf.probs().len());
    let mut acc = 0.0;
    for &p in pmf.probs() {
        acc += p;
        cumulative.push(acc);
    }
    // The last entry is exactly 1 so every u in [0, 1) lands in a cell;
    // zero-probability cells are unreachable because their cumulative value
    // equals their predecessor's.
    *cumulative.last_mut().expect("validated nonempty") = 1.0;
    let mut rng = Xoshiro256StarStar::from_seed(seed);
    let outcomes: Vec<usize> = (0..n)
        .map(|_| {
            let u = rng.next_f64();
            cumulative.partition_point(|&c| c <= u) + 1
        })
        .collect();
    SampleSet::from_outcomes(r, s, outcomes)
}

fn summarize(n: usize, estimates: &[f64], ks: Option<f64>) -> SummaryRecord {
    let t = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / t;
    let variance = if estimates.len() < 2 {
        0.0
    } else {
        estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (t - 1.0)
    };
    SummaryRecord {
        n,
        mean_estimate: mean,
        variance_estimate: variance,
        ks_distance: ks,
    }
}

fn run_cells(config: &CampaignConfig, truth_value: f64) -> Result<Vec<TrialRecord>> {
    let truth = &config.truth;
    let mut records = Vec::with_capacity(config.sample_sizes.len() * config.trials);
    for &n in &config.sample_sizes {
        for trial in 0..config.trials {
            let cell_seed = substream_seed(config.seed, n as u64, trial as u64);
            let set = sample(truth.probs(), truth.r(), truth.s(), n, cell_seed)?;
            // Estimator failures are recorded as NaN rather than aborting
            // the campaign; they cannot occur for the functionals here on
            // nonempty samples but the trace stays well formed if they do.
            let estimate =
                estimation::estimate_entropy(&set, config.family, config.alpha, config.direction)
                    .map(|e| e.value)
                    .unwrap_or(f64::NAN);
            let empirical = estimation::empirical_joint(&set);
            let (a_z, a_x, a_y) = asymptotics::sup_deviation(&empirical, truth)?;
            records.push(TrialRecord {
                n,
                trial,
                estimate,
                error: estimate - truth_value,
                a_z,
                a_x,
                a_y,
                standardized: None,
            });
        }
    }
    Ok(records)
}

/// Runs the convergence campaign: estimates at every (n, trial) cell plus
/// per-n mean/variance summaries.
pub fn run_convergence(config: &CampaignConfig) -> Result<SimulationTrace> {
    config.validate()?;
    let truth_value =
        entropy::evaluate(&config.truth, config.family, config.alpha, config.direction)?.value;
    let records = run_cells(config, truth_value)?;
    let summaries = config
        .sample_sizes
        .iter()
        .map(|&n| {
            let estimates: Vec<f64> = records
                .iter()
                .filter(|rec| rec.n == n)
                .map(|rec| rec.estimate)
                .collect();
            summarize(n, &estimates, None)
        })
        .collect();
    Ok(SimulationTrace {
        truth_value,
        sigma: None,
        records,
        summaries,
        qq: None,
        histogram: None,
    })
}

/// Runs the normality campaign at a single sample size: standardized
/// statistics √n·(estimate − truth)/σ with σ² taken from the configured
/// variance source at the truth, their KS distance to the standard normal,
/// Q-Q pairs at the (t − 0.5)/T positions, and a histogram.
pub fn run_normality(config: &CampaignConfig) -> Result<SimulationTrace> {
    config.validate()?;
    if config.sample_sizes.len() != 1 {
        return Err(Error::InvalidConfig(format!(
            "normality mode takes exactly one sample size, got {}",
            config.sample_sizes.len()
        )));
    }
    let n = config.sample_sizes[0];
    let truth_value =
        entropy::evaluate(&config.truth, config.family, config.alpha, config.direction)?.value;
    let variance = match config.variance_source {
        VarianceSource::Literal => {
            asymptotics::variance_literal(
                &config.truth,
                config.family,
                config.alpha,
                config.direction,
            )?
            .total
        }
        VarianceSource::Delta => asymptotics::variance_delta(
            &config.truth,
            config.family,
            config.alpha,
            config.direction,
        )?,
        VarianceSource::None => {
            return Err(Error::InvalidConfig(
                "variance source 'none' provides no standardization; \
                 configure 'literal' or 'delta'"
                    .to_string(),
            ));
        }
    };
    if !variance.is_finite() || variance <= 0.0 {
        return Err(Error::Degenerate(format!(
            "standardizing variance is {variance:?} under the {:?} source at this truth; \
             switch the variance source (the delta source is positive whenever the \
             functional's gradient is not constant)",
            config.variance_source
        )));
    }
    let sigma = variance.sqrt();
    let mut records = run_cells(config, truth_value)?;
    for rec in &mut records {
        rec.standardized = Some((rec.n as f64).sqrt() * rec.error / sigma);
    }
    let mut standardized: Vec<f64> = records
        .iter()
        .map(|rec| rec.standardized.expect("set above"))
        .collect();
    standardized.sort_by(|a, b| a.partial_cmp(b).expect("standardized values are finite"));
    let ks = ks_distance(&standardized)?;
    let t_total = standardized.len();
    let qq: Vec<QqPair> = standardized
        .iter()
        .enumerate()
        .map(|(idx, &value)| {
            let position = (idx as f64 + 0.5) / t_total as f64;
            Ok(QqPair {
                empirical: value,
                normal: normal_quantile(position)?,
            })
        })
        .collect::<Result<_>>()?;
    let histogram = freedman_diaconis(&standardized);
    let estimates: Vec<f64> = records.iter().map(|rec| rec.estimate).collect();
    let summaries = vec![summarize(n, &estimates, Some(ks))];
    Ok(SimulationTrace {
        truth_value,
        sigma: Some(sigma),
        records,
        summaries,
        qq: Some(qq),
        histogram: Some(histogram),
    })
}

/// Kolmogorov-Smirnov distance of an ascending sample to the standard
/// normal: sup_t max(t/T − Φ(x_t), Φ(x_t) − (t−1)/T).
pub fn ks_distance(sorted: &[f64]) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::InvalidSample(
            "KS distance requires at least one value".to_string(),
        ));
    }
    if sorted.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSample(
            "KS distance requires finite values".to_string(),
        ));
    }
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidSample(
            "KS distance requires ascending input".to_string(),
        ));
    }
    let t_total = sorted.len() as f64;
    let mut distance = 0.0f64;
    for (idx, &x) in sorted.iter().enumerate() {
        let phi = normal_cdf(x);
        let above = (idx as f64 + 1.0) / t_total - phi;
        let below = phi - idx as f64 / t_total;
        distance = distance.max(above).max(below);
    }
    Ok(distance)
}

/// Histogram of an ascending sample with the Freedman-Diaconis bin width
/// 2·IQR·T^(−1/3), falling back to Scott's 3.5·sd·T^(−1/3) when the IQR
/// vanishes, and to a single unit-width bin when the sample is constant.
pub fn freedman_diaconis(sorted: &[f64]) -> Histogram {
    let t_total = sorted.len();
    if t_total == 0 {
        return Histogram {
            edges: Vec::new(),
            counts: Vec::new(),
        };
    }
    let quantile = |q: f64| -> f64 {
        let position = q * (t_total - 1) as f64;
        let lo = position.floor() as usize;
        let hi = position.ceil() as usize;
        let frac = position - lo as f64;
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    };
    let scale = (t_total as f64).powf(-1.0 / 3.0);
    let mut width = 2.0 * (quantile(0.75) - quantile(0.25)) * scale;
    if width <= 0.0 {
        let mean = sorted.iter().sum::<f64>() / t_total as f64;
        let sd = (sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / t_total as f64)
            .sqrt();
        width = 3.5 * sd * scale;
    }
    let lo = sorted[0];
    let hi = sorted[t_total - 1];
    if width <= 0.0 || hi <= lo {
        return Histogram {
            edges: vec![lo - 0.5, hi + 0.5],
            counts: vec![t_total as u64],
        };
    }
    let bins = (((hi - lo) / width).ceil() as usize).clamp(1, 10_000);
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
    let mut counts = vec![0u64; bins];
    for &v in sorted {
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Histogram { edges, counts }
}
