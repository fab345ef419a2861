//! Exact entropy functionals in nats: Shannon, Rényi of order α, and
//! Tsallis of order α, for joint, marginal, and conditional directions,
//! together with power sums and the algebraic identities relating them.
//!
//! Conditional quantities follow the chain-rule definitions
//!   H(Y|X)   = Σ_{i,j} p_{i,j} ln(p_{X,i}/p_{i,j}),
//!   R_α(Y|X) = (1/(1−α)) ln( S_α(p_{(X,Y)}) / S_α(p_X) ),
//!   T_α(Y|X) = (1/(1−α)) ( S_α(p_{(X,Y)}) / S_α(p_X) − 1 ),
//! where S_α(p) = Σ_k p_k^α. The X-given-Y direction is evaluated by
//! applying the same formulas to the transposed joint pmf, which keeps the
//! two directions exactly symmetric.
//!
//! Empirical conventions: 0·ln 0 = 0 and 0^α = 0, so zero cells and
//! zero-mass conditioning rows drop out of every sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pmf::{Axis, JointPmf};

/// Entropy family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyFamily {
    Shannon,
    Renyi,
    Tsallis,
}

/// Which functional of the joint law is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Joint,
    MarginalX,
    MarginalY,
    #[serde(rename = "y_given_x")]
    YgivenX,
    #[serde(rename = "x_given_y")]
    XgivenY,
}

impl Direction {
    /// True for the two conditional directions.
    pub fn is_conditional(self) -> bool {
        matches!(self, Direction::YgivenX | Direction::XgivenY)
    }

    /// The variable being conditioned on, for conditional directions.
    pub fn conditioning_axis(self) -> Option<Axis> {
        match self {
            Direction::YgivenX => Some(Axis::X),
            Direction::XgivenY => Some(Axis::Y),
            _ => None,
        }
    }
}

/// An entropy value in nats. `alpha` is `None` exactly when the family is
/// Shannon (the α → 1 limit of both other families).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    pub value: f64,
    pub family: EntropyFamily,
    pub alpha: Option<f64>,
    pub direction: Direction,
}

/// A power sum S_α(p) = Σ_k p_k^α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSum {
    pub value: f64,
    pub alpha: f64,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(format!(
            "alpha must be a positive real, got {alpha}"
        )));
    }
    Ok(())
}

pub(crate) fn check_alpha_not_one(alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Err(Error::InvalidAlpha(
            "alpha = 1 is not admitted here; caller must request the Shannon limit".to_string(),
        ));
    }
    Ok(())
}

fn check_conditional_direction(direction: Direction) -> Result<Axis> {
    direction.conditioning_axis().ok_or_else(|| {
        Error::InvalidDirection(format!(
            "expected a conditional direction (y_given_x or x_given_y), got {direction:?}"
        ))
    })
}

/// Shannon entropy −Σ_k p_k ln p_k of a probability vector, in nats, with
/// the convention 0·ln 0 = 0.
pub fn shannon(probs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &p in probs {
        if p > 0.0 {
            acc -= p * p.ln();
        }
    }
    acc
}

/// Power sum S_α(p) = Σ_k p_k^α with 0^α = 0. Requires α > 0.
pub fn power_sum(probs: &[f64], alpha: f64) -> Result<PowerSum> {
    check_alpha(alpha)?;
    let mut value = 0.0;
    for &p in probs {
        if p > 0.0 {
            value += p.powf(alpha);
        }
    }
    Ok(PowerSum { value, alpha })
}

/// Rényi entropy (1/(1−α)) ln S_α(p) of a probability vector, in nats.
pub fn renyi(probs: &[f64], alpha: f64) -> Result<f64> {
    check_alpha_not_one(alpha)?;
    let s = power_sum(probs, alpha)?.value;
    if s <= 0.0 {
        return Err(Error::Degenerate(
            "power sum vanished; Renyi entropy undefined".to_string(),
        ));
    }
    Ok(s.ln() / (1.0 - alpha))
}

/// Tsallis entropy (1/(1−α)) (S_α(p) − 1) of a probability vector, in nats.
pub fn tsallis(probs: &[f64], alpha: f64) -> Result<f64> {
    check_alpha_not_one(alpha)?;
    let s = power_sum(probs, alpha)?.value;
    Ok((s - 1.0) / (1.0 - alpha))
}

/// Conditional Shannon entropy by the direct sum
/// H(Y|X) = Σ_{i,j} p_{i,j} ln(p_{X,i}/p_{i,j}); the X-given-Y direction
/// runs the same sum on the transposed pmf. Zero cells carry zero weight.
pub fn conditional_shannon(pmf: &JointPmf, direction: Direction) -> Result<EntropyValue> {
    let axis = check_conditional_direction(direction)?;
    let value = match axis {
        Axis::X => conditional_shannon_sum(pmf),
        Axis::Y => conditional_shannon_sum(&pmf.transpose()),
    };
    Ok(EntropyValue {
        value,
        family: EntropyFamily::Shannon,
        alpha: None,
        direction,
    })
}

fn conditional_shannon_sum(pmf: &JointPmf) -> f64 {
    let marg = pmf.marginal(Axis::X);
    let s = pmf.s();
    let mut acc = 0.0;
    for (idx, &p) in pmf.probs().iter().enumerate() {
        if p > 0.0 {
            acc += p * (marg.probs()[idx / s] / p).ln();
        }
    }
    acc
}

/// Conditional Rényi entropy (1/(1−α)) ln(S_α(joint)/S_α(conditioning
/// marginal)). Requires α > 0, α ≠ 1.
pub fn conditional_renyi(pmf: &JointPmf, alpha: f64, direction: Direction) -> Result<EntropyValue> {
    check_alpha_not_one(alpha)?;
    let axis = check_conditional_direction(direction)?;
    let value = match axis {
        Axis::X => conditional_renyi_value(pmf, alpha)?,
        Axis::Y => conditional_renyi_value(&pmf.transpose(), alpha)?,
    };
    Ok(EntropyValue {
        value,
        family: EntropyFamily::Renyi,
        alpha: Some(alpha),
        direction,
    })
}

fn conditional_renyi_value(pmf: &JointPmf, alpha: f64) -> Result<f64> {
    let sj = power_sum(pmf.probs(), alpha)?.value;
    let sm = power_sum(pmf.marginal(Axis::X).probs(), alpha)?.value;
    if sm <= 0.0 || sj <= 0.0 {
        return Err(Error::Degenerate(
            "conditioning power sum vanished; conditional Renyi entropy undefined".to_string(),
        ));
    }
    Ok((sj / sm).ln() / (1.0 - alpha))
}

/// Conditional Tsallis entropy (1/(1−α))(S_α(joint)/S_α(conditioning
/// marginal) − 1). Requires α > 0, α ≠ 1.
pub fn conditional_tsallis(
    pmf: &JointPmf,
    alpha: f64,
    direction: Direction,
) -> Result<EntropyValue> {
    check_alpha_not_one(alpha)?;
    let axis = check_conditional_direction(direction)?;
    let value = match axis {
        Axis::X => conditional_tsallis_value(pmf, alpha)?,
        Axis::Y => conditional_tsallis_value(&pmf.transpose(), alpha)?,
    };
    Ok(EntropyValue {
        value,
        family: EntropyFamily::Tsallis,
        alpha: Some(alpha),
        direction,
    })
}

fn conditional_tsallis_value(pmf: &JointPmf, alpha: f64) -> Result<f64> {
    let sj = power_sum(pmf.probs(), alpha)?.value;
    let sm = power_sum(pmf.marginal(Axis::X).probs(), alpha)?.value;
    if sm <= 0.0 {
        return Err(Error::Degenerate(
            "conditioning power sum vanished; conditional Tsallis entropy undefined".to_string(),
        ));
    }
    Ok((sj / sm - 1.0) / (1.0 - alpha))
}

/// Evaluates any family in any direction. `alpha` must be `None` for
/// Shannon and `Some(α)` with α > 0, α ≠ 1 otherwise.
pub fn evaluate(
    pmf: &JointPmf,
    family: EntropyFamily,
    alpha: Option<f64>,
    direction: Direction,
) -> Result<EntropyValue> {
    match (family, alpha) {
        (EntropyFamily::Shannon, Some(a)) => {
            return Err(Error::InvalidAlpha(format!(
                "Shannon entropy takes no order parameter, got alpha = {a}"
            )));
        }
        (EntropyFamily::Renyi | EntropyFamily::Tsallis, None) => {
            return Err(Error::InvalidAlpha(
                "Renyi and Tsallis entropies require an order alpha".to_string(),
            ));
        }
        _ => {}
    }
    if direction.is_conditional() {
        return match family {
            EntropyFamily::Shannon => conditional_shannon(pmf, direction),
            EntropyFamily::Renyi => conditional_renyi(pmf, alpha.unwrap(), direction),
            EntropyFamily::Tsallis => conditional_tsallis(pmf, alpha.unwrap(), direction),
        };
    }
    let probs: Vec<f64> = match direction {
        Direction::Joint => pmf.probs().to_vec(),
        Direction::MarginalX => pmf.marginal(Axis::X).probs().to_vec(),
        Direction::MarginalY => pmf.marginal(Axis::Y).probs().to_vec(),
        _ => unreachable!("conditional directions handled above"),
    };
    let value = match family {
        EntropyFamily::Shannon => shannon(&probs),
        EntropyFamily::Renyi => renyi(&probs, alpha.unwrap())?,
        EntropyFamily::Tsallis => tsallis(&probs, alpha.unwrap())?,
    };
    Ok(EntropyValue {
        value,
        family,
        alpha,
        direction,
    })
}

/// Residuals of the identities tying conditional entropies to joint and
/// marginal ones, all in nats. Signed residuals; a correct implementation
/// keeps each within 1e-12 of zero and both slacks ≥ −1e-12.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    /// H(Y|X) − [H(XY) − H(X)].
    pub chain_shannon: f64,
    /// R_α(Y|X) − [R_α(XY) − R_α(X)].
    pub chain_renyi: f64,
    /// T_α(XY) − [T_α(X) + T_α(Y|X) + (1−α)·T_α(X)·T_α(Y|X)].
    pub pseudo_additivity: f64,
    /// H(X) − H(X|Y); nonnegative by monotonicity.
    pub monotonicity_slack_x: f64,
    /// H(Y) − H(Y|X); nonnegative by monotonicity.
    pub monotonicity_slack_y: f64,
}

/// Evaluates the identity residuals for a strict pmf and one order α.
pub fn check_identities(pmf: &JointPmf, alpha: f64) -> Result<IdentityReport> {
    check_alpha_not_one(alpha)?;
    let (px, py) = pmf.marginals();
    let h_joint = shannon(pmf.probs());
    let h_x = shannon(px.probs());
    let h_y = shannon(py.probs());
    let h_ygx = conditional_shannon(pmf, Direction::YgivenX)?.value;
    let h_xgy = conditional_shannon(pmf, Direction::XgivenY)?.value;
    let r_joint = renyi(pmf.probs(), alpha)?;
    let r_x = renyi(px.probs(), alpha)?;
    let r_ygx = conditional_renyi(pmf, alpha, Direction::YgivenX)?.value;
    let t_joint = tsallis(pmf.probs(), alpha)?;
    let t_x = tsallis(px.probs(), alpha)?;
    let t_ygx = conditional_tsallis(pmf, alpha, Direction::YgivenX)?.value;
    Ok(IdentityReport {
        chain_shannon: h_ygx - (h_joint - h_x),
        chain_renyi: r_ygx - (r_joint - r_x),
        pseudo_additivity: t_joint - (t_x + t_ygx + (1.0 - alpha) * t_x * t_ygx),
        monotonicity_slack_x: h_x - h_xgy,
        monotonicity_slack_y: h_y - h_ygx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const ALPHA_GRID: [f64; 5] = [0.25, 0.5, 2.0, 3.0, 10.0];

    fn zipf_joint() -> JointPmf {
        let d = 5369.0;
        JointPmf::strict(
            3,
            2,
            vec![
                3600.0 / d,
                900.0 / d,
                400.0 / d,
                225.0 / d,
                144.0 / d,
                100.0 / d,
            ],
        )
        .unwrap()
    }

    #[test]
    fn shannon_of_reference_vectors() {
        assert_abs_diff_eq!(shannon(&[1.0 / 6.0; 6]), 6f64.ln(), epsilon = 1e-15);
        assert_eq!(shannon(&[1.0, 0.0, 0.0]), 0.0);
        assert_abs_diff_eq!(
            shannon(zipf_joint().probs()),
            1.0650565372976031,
            epsilon = 1e-14
        );
    }

    #[test]
    fn power_sum_reference_values() {
        let zipf = zipf_joint();
        assert_abs_diff_eq!(power_sum(zipf.probs(), 1.0).unwrap().value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            power_sum(&[0.25; 4], 3.0).unwrap().value,
            4f64.powf(-2.0),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            power_sum(zipf.probs(), 2.0).unwrap().value,
            0.48606406520798934,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            power_sum(zipf.probs(), 0.5).unwrap().value,
            2.0061834009708983,
            epsilon = 1e-14
        );
        assert_eq!(power_sum(&[0.5, 0.5, 0.0, 0.0], 2.0).unwrap().value, 0.5);
        assert!(power_sum(&[0.5, 0.5], 0.0).is_err());
        assert!(power_sum(&[0.5, 0.5], -1.0).is_err());
    }

    #[test]
    fn conditional_shannon_of_the_zipf_example() {
        let pmf = zipf_joint();
        let ygx = conditional_shannon(&pmf, Direction::YgivenX).unwrap();
        let xgy = conditional_shannon(&pmf, Direction::XgivenY).unwrap();
        assert_abs_diff_eq!(ygx.value, 0.52623136355032551, epsilon = 1e-14);
        assert_abs_diff_eq!(ygx.value, 0.52623, epsilon = 1e-4);
        assert_abs_diff_eq!(xgy.value, 0.52801103096026392, epsilon = 1e-14);
        assert!(ygx.alpha.is_none());
        assert_eq!(ygx.direction, Direction::YgivenX);
    }

    #[test]
    fn conditional_shannon_under_independence_is_the_other_marginal_entropy() {
        let px = [0.3, 0.7];
        let py = [0.2, 0.5, 0.3];
        let probs: Vec<f64> = px.iter().flat_map(|a| py.iter().map(move |b| a * b)).collect();
        let pmf = JointPmf::strict(2, 3, probs).unwrap();
        let ygx = conditional_shannon(&pmf, Direction::YgivenX).unwrap();
        assert_abs_diff_eq!(ygx.value, shannon(&py), epsilon = 1e-14);
    }

    #[test]
    fn conditional_renyi_of_the_zipf_example() {
        let pmf = zipf_joint();
        let ygx = conditional_renyi(&pmf, 2.0, Direction::YgivenX).unwrap();
        let xgy = conditional_renyi(&pmf, 2.0, Direction::XgivenY).unwrap();
        assert_abs_diff_eq!(ygx.value, 0.39027297749169609, epsilon = 1e-14);
        assert_abs_diff_eq!(ygx.value, 0.39027, epsilon = 1e-4);
        assert_abs_diff_eq!(xgy.value, 0.28722946224930657, epsilon = 1e-14);
        assert_abs_diff_eq!(xgy.value, 0.28723, epsilon = 1e-4);
        let half = conditional_renyi(&pmf, 0.5, Direction::YgivenX).unwrap();
        assert_abs_diff_eq!(half.value, 0.62211886230081004, epsilon = 1e-14);
    }

    #[test]
    fn conditional_tsallis_of_the_zipf_example() {
        let pmf = zipf_joint();
        let ygx = conditional_tsallis(&pmf, 2.0, Direction::YgivenX).unwrap();
        let xgy = conditional_tsallis(&pmf, 2.0, Direction::XgivenY).unwrap();
        assert_abs_diff_eq!(ygx.value, 0.3231279215654409, epsilon = 1e-14);
        assert_abs_diff_eq!(ygx.value, 0.32312, epsilon = 1e-4);
        assert_abs_diff_eq!(xgy.value, 0.24966046551555465, epsilon = 1e-14);
        assert_abs_diff_eq!(xgy.value, 0.24966, epsilon = 1e-4);
    }

    #[test]
    fn alpha_one_is_rejected_not_redirected() {
        let pmf = zipf_joint();
        let err = conditional_renyi(&pmf, 1.0, Direction::YgivenX).unwrap_err();
        assert!(err.to_string().contains("Shannon limit"));
        assert!(conditional_tsallis(&pmf, 1.0, Direction::YgivenX).is_err());
        assert!(conditional_renyi(&pmf, 0.0, Direction::YgivenX).is_err());
        assert!(conditional_renyi(&pmf, -2.0, Direction::YgivenX).is_err());
    }

    #[test]
    fn non_conditional_directions_are_rejected_by_conditional_ops() {
        let pmf = zipf_joint();
        assert!(conditional_shannon(&pmf, Direction::Joint).is_err());
        assert!(conditional_renyi(&pmf, 2.0, Direction::MarginalX).is_err());
        assert!(conditional_tsallis(&pmf, 2.0, Direction::MarginalY).is_err());
    }

    #[test]
    fn alpha_near_one_approaches_the_shannon_value() {
        let pmf = zipf_joint();
        let h = conditional_shannon(&pmf, Direction::YgivenX).unwrap().value;
        for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
            let r = conditional_renyi(&pmf, alpha, Direction::YgivenX).unwrap().value;
            assert!((r - h).abs() <= 1e-3, "alpha {alpha}: |{r} - {h}| > 1e-3");
        }
    }

    #[test]
    fn evaluate_covers_all_directions() {
        let pmf = zipf_joint();
        let joint = evaluate(&pmf, EntropyFamily::Shannon, None, Direction::Joint).unwrap();
        assert_abs_diff_eq!(joint.value, 1.0650565372976031, epsilon = 1e-14);
        let mx = evaluate(&pmf, EntropyFamily::Shannon, None, Direction::MarginalX).unwrap();
        assert_abs_diff_eq!(mx.value, 0.53882517374727756, epsilon = 1e-14);
        let my = evaluate(&pmf, EntropyFamily::Shannon, None, Direction::MarginalY).unwrap();
        assert_abs_diff_eq!(my.value, 0.53704550633733916, epsilon = 1e-14);
        let r = evaluate(&pmf, EntropyFamily::Renyi, Some(2.0), Direction::YgivenX).unwrap();
        assert_abs_diff_eq!(r.value, 0.39027297749169609, epsilon = 1e-14);
        assert!(evaluate(&pmf, EntropyFamily::Shannon, Some(2.0), Direction::Joint).is_err());
        assert!(evaluate(&pmf, EntropyFamily::Renyi, None, Direction::Joint).is_err());
    }

    #[test]
    fn identities_hold_on_reference_pmfs() {
        for (pmf, alpha) in [
            (zipf_joint(), 2.0),
            (JointPmf::strict(2, 2, vec![0.25; 4]).unwrap(), 0.5),
        ] {
            let report = check_identities(&pmf, alpha).unwrap();
            assert!(report.chain_shannon.abs() <= 1e-12);
            assert!(report.chain_renyi.abs() <= 1e-12);
            assert!(report.pseudo_additivity.abs() <= 1e-12);
            assert!(report.monotonicity_slack_x >= -1e-12);
            assert!(report.monotonicity_slack_y >= -1e-12);
        }
    }

    #[test]
    fn empirical_zero_cells_drop_out() {
        let pmf = JointPmf::empirical(3, 2, vec![0.5, 0.0, 0.25, 0.25, 0.0, 0.0]).unwrap();
        let ygx = conditional_shannon(&pmf, Direction::YgivenX).unwrap().value;
        // Row 1 is deterministic, row 2 is a coin flip with mass 1/2, row 3 empty.
        assert_abs_diff_eq!(ygx, 0.5 * 2f64.ln(), epsilon = 1e-15);
        let xgy = conditional_shannon(&pmf, Direction::XgivenY).unwrap();
        assert!(xgy.value.is_finite());
        let r = conditional_renyi(&pmf, 2.0, Direction::YgivenX).unwrap();
        assert!(r.value.is_finite());
    }

    fn arb_strict(r: usize, s: usize) -> impl Strategy<Value = JointPmf> {
        prop::collection::vec(0.05..1.0f64, r * s).prop_map(move |raw| {
            let total: f64 = raw.iter().sum();
            JointPmf::strict(r, s, raw.iter().map(|v| v / total).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn chain_rules_and_pseudo_additivity(pmf in arb_strict(4, 5)) {
            for alpha in ALPHA_GRID {
                let report = check_identities(&pmf, alpha).unwrap();
                prop_assert!(report.chain_shannon.abs() <= 1e-12);
                prop_assert!(report.chain_renyi.abs() <= 1e-12);
                prop_assert!(report.pseudo_additivity.abs() <= 1e-12);
                prop_assert!(report.monotonicity_slack_x >= -1e-12);
                prop_assert!(report.monotonicity_slack_y >= -1e-12);
            }
        }

        #[test]
        fn tsallis_matches_the_renyi_transform(pmf in arb_strict(3, 4)) {
            for alpha in ALPHA_GRID {
                let r = conditional_renyi(&pmf, alpha, Direction::YgivenX).unwrap().value;
                let t = conditional_tsallis(&pmf, alpha, Direction::YgivenX).unwrap().value;
                let from_r = (((1.0 - alpha) * r).exp() - 1.0) / (1.0 - alpha);
                prop_assert!((t - from_r).abs() <= 1e-12);
            }
        }

        #[test]
        fn conditional_entropies_stay_in_range(pmf in arb_strict(3, 5)) {
            let ygx = conditional_shannon(&pmf, Direction::YgivenX).unwrap().value;
            let xgy = conditional_shannon(&pmf, Direction::XgivenY).unwrap().value;
            prop_assert!(ygx >= 0.0 && ygx <= (pmf.s() as f64).ln() + 1e-12);
            prop_assert!(xgy >= 0.0 && xgy <= (pmf.r() as f64).ln() + 1e-12);
            for alpha in ALPHA_GRID {
                let r = conditional_renyi(&pmf, alpha, Direction::YgivenX).unwrap().value;
                let t = conditional_tsallis(&pmf, alpha, Direction::YgivenX).unwrap().value;
                prop_assert!(r >= 0.0);
                prop_assert!(t >= 0.0);
            }
        }

        #[test]
        fn permuting_x_outcomes_changes_nothing(pmf in arb_strict(4, 3)) {
            // Rotate the rows by one.
            let mut probs = pmf.probs()[3..].to_vec();
            probs.extend_from_slice(&pmf.probs()[..3]);
            let rotated = JointPmf::strict(4, 3, probs).unwrap();
            let pairs = [
                (conditional_shannon(&pmf, Direction::YgivenX).unwrap().value,
                 conditional_shannon(&rotated, Direction::YgivenX).unwrap().value),
                (conditional_shannon(&pmf, Direction::XgivenY).unwrap().value,
                 conditional_shannon(&rotated, Direction::XgivenY).unwrap().value),
                (conditional_renyi(&pmf, 2.0, Direction::YgivenX).unwrap().value,
                 conditional_renyi(&rotated, 2.0, Direction::YgivenX).unwrap().value),
                (conditional_tsallis(&pmf, 0.5, Direction::XgivenY).unwrap().value,
                 conditional_tsallis(&rotated, 0.5, Direction::XgivenY).unwrap().value),
            ];
            for (a, b) in pairs {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn power_sum_sides_of_one(pmf in arb_strict(3, 3)) {
            let probs = pmf.probs();
            prop_assert!((power_sum(probs, 1.0).unwrap().value - 1.0).abs() <= 1e-12);
            prop_assert!(power_sum(probs, 2.0).unwrap().value <= 1.0 + 1e-12);
            prop_assert!(power_sum(probs, 0.5).unwrap().value >= 1.0 - 1e-12);
        }
    }
}
