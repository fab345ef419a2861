//! Joint probability mass functions over an r x s support, the bijection
//! between pair indices and flat indices, and marginal / conditional tables.
//!
//! A pair (i, j) with 1 ≤ i ≤ r and 1 ≤ j ≤ s is identified with the flat
//! index k = s·(i−1) + j, so the joint law of (X, Y) is stored as a single
//! length-rs vector in row-major, X-major order. All public indices are
//! 1-based; conversion happens exactly once at this boundary.

use crate::error::{Error, Result};

/// Absolute tolerance for probability-vector normalization checks.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Which variable a marginal or conditioning table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Validation mode for joint pmfs.
///
/// `Strict` requires every cell probability to be positive, the regime in
/// which every conditional distribution and every asymptotic constant is
/// well defined. `Empirical` admits zero cells, as produced by finite
/// samples, and downstream functionals apply the conventions 0·ln 0 = 0 and
/// 0^α = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfMode {
    Strict,
    Empirical,
}

/// A validated joint pmf on {1..r} x {1..s} stored as a flat vector.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    r: usize,
    s: usize,
    probs: Vec<f64>,
    mode: PmfMode,
}

/// A marginal pmf together with the axis it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalPmf {
    axis: Axis,
    probs: Vec<f64>,
}

/// Conditional distributions of one variable given each outcome of the
/// other. Row i is the distribution of the dependent variable given the
/// i-th conditioning outcome; a row is `None` when the conditioning outcome
/// has zero mass (possible only in empirical mode).
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPmfTable {
    given_axis: Axis,
    rows: Vec<Option<Vec<f64>>>,
}

/// Maps a pair index (i, j) to the flat index k = s·(i−1) + j.
///
/// Only the constraints expressible without r are checked here (i ≥ 1 and
/// 1 ≤ j ≤ s); [`JointPmf::flatten`] additionally enforces i ≤ r.
pub fn flatten_index(i: usize, j: usize, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(Error::IndexOutOfRange {
            name: "s",
            value: 0,
            max: usize::MAX,
        });
    }
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            name: "i",
            value: 0,
            max: usize::MAX,
        });
    }
    if j == 0 || j > s {
        return Err(Error::IndexOutOfRange {
            name: "j",
            value: j,
            max: s,
        });
    }
    Ok(s * (i - 1) + j)
}

/// Inverts [`flatten_index`]: k = s·(i−1) + j becomes
/// (i, j) = (1 + ⌊(k−1)/s⌋, k − s·⌊(k−1)/s⌋).
pub fn unflatten_index(k: usize, s: usize) -> Result<(usize, usize)> {
    if s == 0 {
        return Err(Error::IndexOutOfRange {
            name: "s",
            value: 0,
            max: usize::MAX,
        });
    }
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            name: "k",
            value: 0,
            max: usize::MAX,
        });
    }
    let q = (k - 1) / s;
    Ok((1 + q, k - s * q))
}

/// Validates a flat probability vector as an r x s joint pmf.
///
/// Rejects r ≤ 1 or s ≤ 1, a length different from r·s, non-finite or
/// negative entries, a zero entry in strict mode, and a total mass farther
/// than [`SUM_TOLERANCE`] from 1.
pub fn validate(probs: Vec<f64>, r: usize, s: usize, mode: PmfMode) -> Result<JointPmf> {
    if r <= 1 || s <= 1 {
        return Err(Error::InvalidPmf(format!(
            "support must be at least 2 x 2, got {r} x {s}"
        )));
    }
    if probs.len() != r * s {
        return Err(Error::InvalidPmf(format!(
            "expected {} probabilities for a {r} x {s} support, got {}",
            r * s,
            probs.len()
        )));
    }
    // Neumaier-compensated sum so the tolerance check stays meaningful for
    // supports with thousands of cells.
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (idx, &p) in probs.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::InvalidPmf(format!(
                "entry {} is not finite: {p}",
                idx + 1
            )));
        }
        if p < 0.0 {
            return Err(Error::InvalidPmf(format!(
                "entry {} is negative: {p}",
                idx + 1
            )));
        }
        if mode == PmfMode::Strict && p == 0.0 {
            return Err(Error::InvalidPmf(format!(
                "entry {} is zero; strict mode requires every cell probability to be positive",
                idx + 1
            )));
        }
        let t = sum + p;
        comp += if sum.abs() >= p.abs() {
            (sum - t) + p
        } else {
            (p - t) + sum
        };
        sum = t;
    }
    let sum = sum + comp;
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidPmf(format!(
            "probabilities sum to {sum:.17}, expected 1 within {SUM_TOLERANCE:e}"
        )));
    }
    Ok(JointPmf { r, s, probs, mode })
}

impl JointPmf {
    /// Builds a strict-mode pmf: every cell must be positive.
    pub fn strict(r: usize, s: usize, probs: Vec<f64>) -> Result<Self> {
        validate(probs, r, s, PmfMode::Strict)
    }

    /// Builds an empirical-mode pmf: zero cells are allowed.
    pub fn empirical(r: usize, s: usize, probs: Vec<f64>) -> Result<Self> {
        validate(probs, r, s, PmfMode::Empirical)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn mode(&self) -> PmfMode {
        self.mode
    }

    /// The flat probability vector, indexed by k−1 for k = s·(i−1) + j.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the flat outcome k (1-based).
    pub fn flat(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.probs.len() {
            return Err(Error::IndexOutOfRange {
                name: "k",
                value: k,
                max: self.probs.len(),
            });
        }
        Ok(self.probs[k - 1])
    }

    /// Probability of the pair (i, j) (1-based).
    pub fn prob(&self, i: usize, j: usize) -> Result<f64> {
        let k = self.flatten(i, j)?;
        Ok(self.probs[k - 1])
    }

    /// [`flatten_index`] with the full bounds 1 ≤ i ≤ r, 1 ≤ j ≤ s.
    pub fn flatten(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > self.r {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: i,
                max: self.r,
            });
        }
        flatten_index(i, j, self.s)
    }

    /// [`unflatten_index`] with the full bound 1 ≤ k ≤ rs.
    pub fn unflatten(&self, k: usize) -> Result<(usize, usize)> {
        if k == 0 || k > self.probs.len() {
            return Err(Error::IndexOutOfRange {
                name: "k",
                value: k,
                max: self.probs.len(),
            });
        }
        unflatten_index(k, self.s)
    }

    /// Both marginals: p_{X,i} = Σ_j p_{i,j} and p_{Y,j} = Σ_i p_{i,j}.
    pub fn marginals(&self) -> (MarginalPmf, MarginalPmf) {
        (self.marginal(Axis::X), self.marginal(Axis::Y))
    }

    /// One marginal; X sums rows, Y sums columns, in flat index order.
    pub fn marginal(&self, axis: Axis) -> MarginalPmf {
        let (size, stride) = match axis {
            Axis::X => (self.r, self.s),
            Axis::Y => (self.s, self.r),
        };
        let mut probs = vec![0.0; size];
        for (idx, &p) in self.probs.iter().enumerate() {
            let which = match axis {
                Axis::X => idx / stride,
                Axis::Y => idx % self.s,
            };
            probs[which] += p;
        }
        MarginalPmf { axis, probs }
    }

    /// Conditional distributions given each outcome of `given_axis`:
    /// row i of the Y-given-X table is (p_{i,1}/p_{X,i}, …, p_{i,s}/p_{X,i}).
    /// Rows whose conditioning outcome has zero mass are `None`; strict-mode
    /// pmfs never produce such rows.
    pub fn conditionals(&self, given_axis: Axis) -> ConditionalPmfTable {
        let marg = self.marginal(given_axis);
        let (outer, inner) = match given_axis {
            Axis::X => (self.r, self.s),
            Axis::Y => (self.s, self.r),
        };
        let mut rows = Vec::with_capacity(outer);
        for i in 1..=outer {
            let mass = marg.probs[i - 1];
            if mass == 0.0 {
                rows.push(None);
                continue;
            }
            let mut row = Vec::with_capacity(inner);
            for j in 1..=inner {
                let p = match given_axis {
                    Axis::X => self.prob(i, j),
                    Axis::Y => self.prob(j, i),
                }
                .expect("indices in range by construction");
                row.push(p / mass);
            }
            rows.push(Some(row));
        }
        ConditionalPmfTable { given_axis, rows }
    }

    /// The same joint law with the roles of X and Y swapped: an s x r pmf
    /// with cell (j, i) equal to this pmf's cell (i, j).
    pub fn transpose(&self) -> JointPmf {
        let mut probs = vec![0.0; self.probs.len()];
        for i in 1..=self.r {
            for j in 1..=self.s {
                probs[self.r * (j - 1) + (i - 1)] = self.probs[self.s * (i - 1) + (j - 1)];
            }
        }
        JointPmf {
            r: self.s,
            s: self.r,
            probs,
            mode: self.mode,
        }
    }
}

impl MarginalPmf {
    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of outcome `idx` (1-based).
    pub fn prob(&self, idx: usize) -> Result<f64> {
        if idx == 0 || idx > self.probs.len() {
            return Err(Error::IndexOutOfRange {
                name: "idx",
                value: idx,
                max: self.probs.len(),
            });
        }
        Ok(self.probs[idx - 1])
    }
}

impl ConditionalPmfTable {
    pub fn given_axis(&self) -> Axis {
        self.given_axis
    }

    /// Conditional distribution given the `idx`-th conditioning outcome
    /// (1-based); `None` marks a zero-mass conditioning outcome.
    pub fn row(&self, idx: usize) -> Result<Option<&[f64]>> {
        if idx == 0 || idx > self.rows.len() {
            return Err(Error::IndexOutOfRange {
                name: "idx",
                value: idx,
                max: self.rows.len(),
            });
        }
        Ok(self.rows[idx - 1].as_deref())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

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
    fn flatten_matches_row_major_layout() {
        assert_eq!(flatten_index(1, 1, 2).unwrap(), 1);
        assert_eq!(flatten_index(2, 1, 2).unwrap(), 3);
        assert_eq!(flatten_index(3, 2, 2).unwrap(), 6);
    }

    #[test]
    fn unflatten_inverts_the_layout() {
        assert_eq!(unflatten_index(1, 2).unwrap(), (1, 1));
        assert_eq!(unflatten_index(6, 2).unwrap(), (3, 2));
        assert_eq!(unflatten_index(4, 3).unwrap(), (2, 1));
    }

    #[test]
    fn index_bounds_are_enforced() {
        assert!(flatten_index(0, 1, 2).is_err());
        assert!(flatten_index(1, 3, 2).is_err());
        assert!(flatten_index(1, 0, 2).is_err());
        assert!(unflatten_index(0, 2).is_err());
        let pmf = zipf_joint();
        assert!(pmf.flatten(4, 1).is_err());
        assert!(pmf.unflatten(7).is_err());
    }

    #[test]
    fn bijection_round_trips_exhaustively_to_64() {
        for r in 2..=64usize {
            for s in 2..=64usize {
                for i in 1..=r {
                    for j in 1..=s {
                        let k = flatten_index(i, j, s).unwrap();
                        assert!(k >= 1 && k <= r * s);
                        assert_eq!(unflatten_index(k, s).unwrap(), (i, j));
                    }
                }
                for k in 1..=r * s {
                    let (i, j) = unflatten_index(k, s).unwrap();
                    assert_eq!(flatten_index(i, j, s).unwrap(), k);
                }
            }
        }
    }

    #[test]
    fn marginals_of_the_zipf_example() {
        let (px, py) = zipf_joint().marginals();
        let d = 5369.0;
        assert_abs_diff_eq!(px.probs()[0], 4500.0 / d, epsilon = 1e-15);
        assert_abs_diff_eq!(px.probs()[1], 625.0 / d, epsilon = 1e-15);
        assert_abs_diff_eq!(px.probs()[2], 244.0 / d, epsilon = 1e-15);
        assert_abs_diff_eq!(py.probs()[0], 4144.0 / d, epsilon = 1e-15);
        assert_abs_diff_eq!(py.probs()[1], 1225.0 / d, epsilon = 1e-15);
    }

    #[test]
    fn uniform_marginals_are_uniform() {
        let pmf = JointPmf::strict(2, 2, vec![0.25; 4]).unwrap();
        let (px, py) = pmf.marginals();
        assert_eq!(px.probs(), &[0.5, 0.5]);
        assert_eq!(py.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn conditional_rows_renormalize_cells() {
        let table = zipf_joint().conditionals(Axis::X);
        let row = table.row(1).unwrap().unwrap();
        assert_abs_diff_eq!(row[0], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(row[1], 0.2, epsilon = 1e-15);
    }

    #[test]
    fn conditionals_of_a_product_pmf_equal_the_other_marginal() {
        let px = [0.3, 0.7];
        let py = [0.2, 0.5, 0.3];
        let probs: Vec<f64> = px.iter().flat_map(|a| py.iter().map(move |b| a * b)).collect();
        let pmf = JointPmf::strict(2, 3, probs).unwrap();
        let table = pmf.conditionals(Axis::X);
        for i in 1..=2 {
            let row = table.row(i).unwrap().unwrap();
            for (got, want) in row.iter().zip(py.iter()) {
                assert_abs_diff_eq!(got, want, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn empirical_zero_row_is_marked_undefined() {
        let pmf = JointPmf::empirical(2, 2, vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        let table = pmf.conditionals(Axis::X);
        assert!(table.row(1).unwrap().is_some());
        assert!(table.row(2).unwrap().is_none());
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(JointPmf::strict(2, 2, vec![0.5, 0.5, 0.0, 0.0]).is_err());
        assert!(JointPmf::strict(2, 2, vec![0.6, 0.6, -0.1, -0.1]).is_err());
        assert!(JointPmf::strict(1, 4, vec![0.25; 4]).is_err());
        assert!(JointPmf::strict(2, 2, vec![0.25; 6]).is_err());
        assert!(JointPmf::strict(2, 2, vec![0.3, 0.3, 0.3, 0.3]).is_err());
        assert!(JointPmf::strict(2, 2, vec![0.25; 4]).is_ok());
        assert!(JointPmf::empirical(2, 2, vec![0.5, 0.5, 0.0, 0.0]).is_ok());
    }

    #[test]
    fn transpose_swaps_cells() {
        let pmf = zipf_joint();
        let t = pmf.transpose();
        assert_eq!(t.r(), 2);
        assert_eq!(t.s(), 3);
        for i in 1..=3 {
            for j in 1..=2 {
                assert_eq!(pmf.prob(i, j).unwrap(), t.prob(j, i).unwrap());
            }
        }
    }

    fn arb_joint(r: usize, s: usize) -> impl Strategy<Value = JointPmf> {
        prop::collection::vec(0.05..1.0f64, r * s).prop_map(move |raw| {
            let total: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
            JointPmf::strict(r, s, probs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn marginals_are_normalized_and_consistent(pmf in arb_joint(4, 5)) {
            let (px, py) = pmf.marginals();
            let sx: f64 = px.probs().iter().sum();
            let sy: f64 = py.probs().iter().sum();
            prop_assert!((sx - 1.0).abs() <= SUM_TOLERANCE, "X marginal sums to {sx}");
            prop_assert!((sy - 1.0).abs() <= SUM_TOLERANCE, "Y marginal sums to {sy}");
            for i in 1..=pmf.r() {
                let row: f64 = (1..=pmf.s()).map(|j| pmf.prob(i, j).unwrap()).sum();
                prop_assert!((row - px.prob(i).unwrap()).abs() <= 1e-15);
            }
        }

        #[test]
        fn conditional_rows_reconstruct_cells(pmf in arb_joint(3, 4)) {
            let (px, _) = pmf.marginals();
            let table = pmf.conditionals(Axis::X);
            for i in 1..=pmf.r() {
                let row = table.row(i).unwrap().unwrap();
                let sum: f64 = row.iter().sum();
                prop_assert!((sum - 1.0).abs() <= SUM_TOLERANCE);
                for j in 1..=pmf.s() {
                    let rebuilt = px.prob(i).unwrap() * row[j - 1];
                    prop_assert!((rebuilt - pmf.prob(i, j).unwrap()).abs() <= 1e-12);
                }
            }
        }
    }
}
