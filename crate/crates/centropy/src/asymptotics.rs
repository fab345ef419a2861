//! Almost-sure error bound constants, asymptotic variances, and confidence
//! intervals for the conditional entropy estimators.
//!
//! Two variance routes are first-class and never substituted for each
//! other:
//!
//! * `variance_literal` evaluates the stated component-variance expressions
//!   term by term, exactly as written, including the factor-2 cross sums
//!   and the (p_k p_k')^{3/2} cross terms. The one piece those expressions
//!   leave symbolic, the cross covariance Cov(G_marg, G_joint), is computed
//!   by the delta-method contraction, the only construction consistent with
//!   the G-variables' definitions.
//! * `variance_delta` is an independent oracle: the analytic gradient g of
//!   the chosen functional with respect to the flat pmf, contracted against
//!   the multinomial covariance of √n·(p̂ − p), i.e. gᵀCg = Σ p g² − (Σ p g)².
//!
//! The two routes disagree for these estimators (for a uniform pmf the
//! literal Shannon value is ≈ 0.348 while the delta value is 0, and the
//! literal Rényi and Tsallis totals can be negative); both are reported so
//! the disagreement is visible, and only the delta route is a variance in
//! the CLT sense. Zero cells of empirical pmfs are excluded from every sum.

use serde::Serialize;

use crate::entropy::{self, Direction, EntropyFamily};
use crate::error::{Error, Result};
use crate::estimation::EntropyEstimate;
use crate::normal::normal_quantile;
use crate::pmf::{Axis, JointPmf};

/// The marginal, joint, and cross-covariance pieces of a literal variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceComponents {
    pub marginal: f64,
    pub joint: f64,
    pub cross_covariance: f64,
}

/// Result of the literal variance route. Components exist for the Rényi
/// and Tsallis families, whose stated expressions are sums of a marginal
/// piece, a joint piece, and twice a cross covariance; the Shannon
/// expression is a single direction-free formula over the flat pmf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiteralVariance {
    pub total: f64,
    pub components: Option<VarianceComponents>,
}

/// Bound constant and both variance routes for one family, order, and
/// conditional direction at a given pmf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticProfile {
    pub family: EntropyFamily,
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub bound_constant: f64,
    pub variance_literal: f64,
    pub variance_delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<VarianceComponents>,
}

/// The normalized multinomial covariance matrix with diagonal 1 − p_k and
/// off-diagonal −√(p_k p_k').
///
/// Materializes a dense dimension² matrix, so it is meant for verification
/// at small supports; [`variance_delta`] uses the O(rs) contraction
/// identity instead. The plain covariance of √n·(p̂ − p) is recovered by
/// scaling with √p on both sides, which [`CovarianceMatrix::contract_plain`]
/// does.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    dimension: usize,
    entries: Vec<f64>,
}

impl CovarianceMatrix {
    pub fn from_pmf(pmf: &JointPmf) -> Self {
        let p = pmf.probs();
        let dimension = p.len();
        let mut entries = vec![0.0; dimension * dimension];
        for k in 0..dimension {
            for kp in 0..dimension {
                entries[k * dimension + kp] = if k == kp {
                    1.0 - p[k]
                } else {
                    -(p[k] * p[kp]).sqrt()
                };
            }
        }
        CovarianceMatrix { dimension, entries }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Entry (k, k'), 1-based.
    pub fn entry(&self, k: usize, kp: usize) -> Result<f64> {
        for (name, v) in [("k", k), ("k'", kp)] {
            if v == 0 || v > self.dimension {
                return Err(Error::IndexOutOfRange {
                    name,
                    value: v,
                    max: self.dimension,
                });
            }
        }
        Ok(self.entries[(k - 1) * self.dimension + (kp - 1)])
    }

    /// gᵀ C_plain g where C_plain = diag(√p) · Σ_norm · diag(√p): the
    /// quadratic form against the plain multinomial covariance, computed
    /// through this normalized matrix.
    pub fn contract_plain(&self, gradient: &[f64], probs: &[f64]) -> Result<f64> {
        if gradient.len() != self.dimension || probs.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", self.dimension),
                found: format!("{} and {}", gradient.len(), probs.len()),
            });
        }
        let scaled: Vec<f64> = gradient
            .iter()
            .zip(probs)
            .map(|(g, p)| g * p.sqrt())
            .collect();
        let mut acc = 0.0;
        for k in 0..self.dimension {
            for kp in 0..self.dimension {
                acc += scaled[k] * self.entries[k * self.dimension + kp] * scaled[kp];
            }
        }
        Ok(acc)
    }
}

fn check_family_alpha(family: EntropyFamily, alpha: Option<f64>) -> Result<f64> {
    match (family, alpha) {
        (EntropyFamily::Shannon, None) => Ok(f64::NAN),
        (EntropyFamily::Shannon, Some(a)) => Err(Error::InvalidAlpha(format!(
            "Shannon entropy takes no order parameter, got alpha = {a}"
        ))),
        (_, None) => Err(Error::InvalidAlpha(
            "Renyi and Tsallis entropies require an order alpha".to_string(),
        )),
        (_, Some(a)) => {
            entropy::check_alpha_not_one(a)?;
            Ok(a)
        }
    }
}

fn check_conditional(direction: Direction) -> Result<()> {
    if !direction.is_conditional() {
        return Err(Error::InvalidDirection(format!(
            "asymptotic constants are defined for conditional directions only, got {direction:?}"
        )));
    }
    Ok(())
}

/// Power sum Σ p^e over positive cells, for any real exponent.
fn raw_power_sum(probs: &[f64], exponent: f64) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(exponent))
        .sum()
}

/// The bracketed variance kernel Σ(1−p)p^{2α−1} − 2·Σ_{k≠k'}(p_k p_k')^{α−1/2}
/// shared by the literal Rényi and Tsallis component variances; the pair
/// sum runs over ordered pairs.
fn bracket(probs: &[f64], alpha: f64) -> f64 {
    let mut direct = 0.0;
    let mut w_sum = 0.0;
    let mut w_sq = 0.0;
    for &p in probs {
        if p > 0.0 {
            direct += (1.0 - p) * p.powf(2.0 * alpha - 1.0);
            let w = p.powf(alpha - 0.5);
            w_sum += w;
            w_sq += w * w;
        }
    }
    direct - 2.0 * (w_sum * w_sum - w_sq)
}

/// The literal Shannon expression Σ p(1−p)(1+ln p)² −
/// 2·Σ_{k≠k'} (p_k p_k')^{3/2} (1+ln p_k)(1+ln p_k'), ordered pairs.
fn shannon_literal(probs: &[f64]) -> f64 {
    let mut direct = 0.0;
    let mut w_sum = 0.0;
    let mut w_sq = 0.0;
    for &p in probs {
        if p > 0.0 {
            let g = 1.0 + p.ln();
            direct += p * (1.0 - p) * g * g;
            let w = p.powf(1.5) * g;
            w_sum += w;
            w_sq += w * w;
        }
    }
    direct - 2.0 * (w_sum * w_sum - w_sq)
}

/// E_p[g_a·g_b] − E_p[g_a]·E_p[g_b] over the flat cells.
fn covariance(probs: &[f64], ga: &[f64], gb: &[f64]) -> f64 {
    let mut e_ab = 0.0;
    let mut e_a = 0.0;
    let mut e_b = 0.0;
    for ((&p, &a), &b) in probs.iter().zip(ga).zip(gb) {
        e_ab += p * a * b;
        e_a += p * a;
        e_b += p * b;
    }
    e_ab - e_a * e_b
}

/// gᵀCg against the plain multinomial covariance, via the identity
/// gᵀCg = Σ p g² − (Σ p g)².
fn quadratic_form(probs: &[f64], g: &[f64]) -> f64 {
    let mut second = 0.0;
    let mut first = 0.0;
    for (&p, &gv) in probs.iter().zip(g) {
        second += p * gv * gv;
        first += p * gv;
    }
    second - first * first
}

/// The almost-sure bound constant for a conditional entropy estimator:
/// Shannon A_H = Σ_k |1 + ln p_{Z,k}| (direction-free); Rényi A_{R,α} =
/// (α/|α−1|)·[S_{α−1}(joint)/S_α(joint) + S_{α−1}(marg)/S_α(marg)];
/// Tsallis A_{T,α} = (α/(|1−α|·S_α(marg)))·[(S_α(joint)/S_α(marg))·
/// S_{α−1}(marg) + S_{α−1}(joint)], where "marg" is the conditioning
/// marginal. The X-given-Y direction evaluates on the transposed pmf.
pub fn bound_constant(
    pmf: &JointPmf,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<f64> {
    check_conditional(direction)?;
    let a = check_family_alpha(family, alpha)?;
    if direction == Direction::XgivenY {
        return bound_constant(&pmf.transpose(), family, alpha, Direction::YgivenX);
    }
    let flat = pmf.probs();
    Ok(match family {
        EntropyFamily::Shannon => flat
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| (1.0 + p.ln()).abs())
            .sum(),
        EntropyFamily::Renyi => {
            let marg = pmf.marginal(Axis::X);
            let sj = raw_power_sum(flat, a);
            let sm = raw_power_sum(marg.probs(), a);
            a / (a - 1.0).abs()
                * (raw_power_sum(flat, a - 1.0) / sj + raw_power_sum(marg.probs(), a - 1.0) / sm)
        }
        EntropyFamily::Tsallis => {
            let marg = pmf.marginal(Axis::X);
            let sj = raw_power_sum(flat, a);
            let sm = raw_power_sum(marg.probs(), a);
            a / ((1.0 - a).abs() * sm)
                * (sj / sm * raw_power_sum(marg.probs(), a - 1.0) + raw_power_sum(flat, a - 1.0))
        }
    })
}

/// The literal variance route. Shannon yields a single direction-free
/// total with no components; Rényi and Tsallis yield
/// marginal + joint + 2·cross_covariance with the stated prefactors:
/// Rényi marginal (α/((α−1)S_α(marg)))²·bracket(marg), joint
/// (α/((1−α)S_α(joint)))²·bracket(joint); Tsallis marginal
/// (α/(1−α))²·(S_α(joint)/S_α(marg)²)²·bracket(marg), joint
/// (α/(1−α))²·(1/S_α(marg)²)²·bracket(joint).
pub fn variance_literal(
    pmf: &JointPmf,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<LiteralVariance> {
    check_conditional(direction)?;
    let a = check_family_alpha(family, alpha)?;
    if direction == Direction::XgivenY {
        return variance_literal(&pmf.transpose(), family, alpha, Direction::YgivenX);
    }
    let flat = pmf.probs();
    if family == EntropyFamily::Shannon {
        return Ok(LiteralVariance {
            total: shannon_literal(flat),
            components: None,
        });
    }
    let marg = pmf.marginal(Axis::X);
    let s = pmf.s();
    let sj = raw_power_sum(flat, a);
    let sm = raw_power_sum(marg.probs(), a);
    let (marginal, joint, gm_of, gj_of): (f64, f64, Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>) =
        match family {
            EntropyFamily::Renyi => (
                (a / ((a - 1.0) * sm)).powi(2) * bracket(marg.probs(), a),
                (a / ((1.0 - a) * sj)).powi(2) * bracket(flat, a),
                Box::new(move |pm: f64| -(a / (1.0 - a)) * pm.powf(a - 1.0) / sm),
                Box::new(move |pk: f64| (a / (1.0 - a)) * pk.powf(a - 1.0) / sj),
            ),
            EntropyFamily::Tsallis => (
                (a / (1.0 - a)).powi(2) * (sj / (sm * sm)).powi(2) * bracket(marg.probs(), a),
                (a / (1.0 - a)).powi(2) * (1.0 / (sm * sm)).powi(2) * bracket(flat, a),
                Box::new(move |pm: f64| -(1.0 / (1.0 - a)) * (sj / (sm * sm)) * a * pm.powf(a - 1.0)),
                Box::new(move |pk: f64| (1.0 / (1.0 - a)) * (1.0 / sm) * a * pk.powf(a - 1.0)),
            ),
            EntropyFamily::Shannon => unreachable!("handled above"),
        };
    let mut gm = vec![0.0; flat.len()];
    let mut gj = vec![0.0; flat.len()];
    for (idx, &p) in flat.iter().enumerate() {
        if p > 0.0 {
            gm[idx] = gm_of(marg.probs()[idx / s]);
            gj[idx] = gj_of(p);
        }
    }
    let cross = covariance(flat, &gm, &gj);
    Ok(LiteralVariance {
        total: marginal + joint + 2.0 * cross,
        components: Some(VarianceComponents {
            marginal,
            joint,
            cross_covariance: cross,
        }),
    })
}

/// Builds the gradient of the requested functional with respect to the
/// flat pmf; entries at zero cells are zero (they carry zero weight in the
/// contraction).
fn gradient(
    pmf: &JointPmf,
    family: EntropyFamily,
    a: f64,
    direction: Direction,
) -> Vec<f64> {
    let flat = pmf.probs();
    let s = pmf.s();
    let marg = pmf.marginal(Axis::X);
    let mut g = vec![0.0; flat.len()];
    match family {
        EntropyFamily::Shannon => {
            for (idx, &p) in flat.iter().enumerate() {
                if p > 0.0 {
                    g[idx] = match direction {
                        Direction::Joint => -(1.0 + p.ln()),
                        Direction::MarginalX => -(1.0 + marg.probs()[idx / s].ln()),
                        Direction::YgivenX => {
                            -(1.0 + p.ln()) + (1.0 + marg.probs()[idx / s].ln())
                        }
                        _ => unreachable!("normalized before dispatch"),
                    };
                }
            }
        }
        EntropyFamily::Renyi => {
            let c = a / (1.0 - a);
            let sj = raw_power_sum(flat, a);
            let sm = raw_power_sum(marg.probs(), a);
            for (idx, &p) in flat.iter().enumerate() {
                if p > 0.0 {
                    let pm = marg.probs()[idx / s];
                    g[idx] = match direction {
                        Direction::Joint => c * p.powf(a - 1.0) / sj,
                        Direction::MarginalX => c * pm.powf(a - 1.0) / sm,
                        Direction::YgivenX => {
                            c * p.powf(a - 1.0) / sj - c * pm.powf(a - 1.0) / sm
                        }
                        _ => unreachable!("normalized before dispatch"),
                    };
                }
            }
        }
        EntropyFamily::Tsallis => {
            let c = 1.0 / (1.0 - a);
            let sj = raw_power_sum(flat, a);
            let sm = raw_power_sum(marg.probs(), a);
            for (idx, &p) in flat.iter().enumerate() {
                if p > 0.0 {
                    let pm = marg.probs()[idx / s];
                    g[idx] = match direction {
                        Direction::Joint => c * a * p.powf(a - 1.0),
                        Direction::MarginalX => c * a * pm.powf(a - 1.0),
                        Direction::YgivenX => {
                            c * (a * p.powf(a - 1.0) / sm - (sj / (sm * sm)) * a * pm.powf(a - 1.0))
                        }
                        _ => unreachable!("normalized before dispatch"),
                    };
                }
            }
        }
    }
    g
}

/// The delta-method variance oracle gᵀCg for any family and any direction;
/// for Shannon joint this reduces to Σ p (ln p)² − H². Directions involving
/// Y (x_given_y, marginal_y) are evaluated on the transposed pmf.
pub fn variance_delta(
    pmf: &JointPmf,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<f64> {
    let a = check_family_alpha(family, alpha)?;
    let (pmf_t, canonical) = match direction {
        Direction::XgivenY => (Some(pmf.transpose()), Direction::YgivenX),
        Direction::MarginalY => (Some(pmf.transpose()), Direction::MarginalX),
        d => (None, d),
    };
    let target = pmf_t.as_ref().unwrap_or(pmf);
    let g = gradient(target, family, a, canonical);
    Ok(quadratic_form(target.probs(), &g))
}

/// Bound constant plus both variance routes for one conditional direction.
pub fn profile(
    pmf: &JointPmf,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<AsymptoticProfile> {
    let bound = bound_constant(pmf, family, alpha, direction)?;
    let literal = variance_literal(pmf, family, alpha, direction)?;
    let delta = variance_delta(pmf, family, alpha, direction)?;
    Ok(AsymptoticProfile {
        family,
        alpha,
        direction,
        bound_constant: bound,
        variance_literal: literal.total,
        variance_delta: delta,
        components: literal.components,
    })
}

/// estimate ± z_{(1+level)/2}·√(variance/n).
pub fn confidence_interval(
    estimate: &EntropyEstimate,
    variance: f64,
    level: f64,
) -> Result<(f64, f64)> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    if !variance.is_finite() || variance < 0.0 {
        return Err(Error::Degenerate(format!(
            "confidence intervals require a finite nonnegative variance, got {variance}"
        )));
    }
    let z = normal_quantile((1.0 + level) / 2.0)?;
    let half = z * (variance / estimate.n as f64).sqrt();
    Ok((estimate.value - half, estimate.value + half))
}

/// The three sup-norm deviations (a_Z, a_X, a_Y) between an empirical pmf
/// and the truth: over flat cells, the X marginal, and the Y marginal.
pub fn sup_deviation(empirical: &JointPmf, truth: &JointPmf) -> Result<(f64, f64, f64)> {
    if empirical.r() != truth.r() || empirical.s() != truth.s() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} x {}", truth.r(), truth.s()),
            found: format!("{} x {}", empirical.r(), empirical.s()),
        });
    }
    let sup = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max)
    };
    let (ex, ey) = empirical.marginals();
    let (tx, ty) = truth.marginals();
    Ok((
        sup(empirical.probs(), truth.probs()),
        sup(ex.probs(), tx.probs()),
        sup(ey.probs(), ty.probs()),
    ))
}
