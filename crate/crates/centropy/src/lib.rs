//! Conditional entropy toolkit for finite joint distributions on an
//! r x s support: exact Shannon, Rényi, and Tsallis functionals, plug-in
//! estimation from samples, asymptotic error bounds and variances, and a
//! seeded Monte Carlo harness that checks the asymptotics empirically.
//!
//! # Layout and conventions
//!
//! A joint pmf lives on pairs (i, j) with 1 ≤ i ≤ r and 1 ≤ j ≤ s, stored
//! flat in X-major order under the bijection k = s·(i−1) + j. All entropy
//! values are in nats; the `0·ln 0 = 0` and `0^α = 0` conventions apply
//! throughout. The order α must be positive and different from 1; callers
//! wanting α = 1 must request the Shannon functional, which is the limit
//! of both families.
//!
//! Five directions exist per functional: the joint table, both marginals,
//! and the two conditionals. The X-given-Y conditionals are evaluated on
//! the transposed table, which makes the two directions symmetric by
//! construction.
//!
//! # Estimation and asymptotics
//!
//! Estimates are plug-in: the exact functional applied to empirical cell
//! frequencies. [`asymptotics`] supplies two variance routes for each
//! conditional functional, a direct transcription of the stated closed
//! forms (`literal`) and an independent delta-method contraction against
//! the multinomial covariance (`delta`). The two routes are reported side
//! by side and are never merged; they disagree for the Rényi and Tsallis
//! families, which is observable in any [`asymptotics::AsymptoticProfile`].
//! Almost-sure error bounds use the constant A from [`asymptotics::bound_constant`]
//! together with the sup deviation normalizers a_{Z,n}, a_{X,n}, a_{Y,n}
//! from [`asymptotics::sup_deviation`].
//!
//! # Reproducibility
//!
//! All randomness flows through [`rng`]: xoshiro256** seeded via
//! SplitMix64. A campaign cell at sample size n and trial t draws from the
//! substream seed `seed ⊕ mix64(n ⊕ mix64(t))` (see
//! [`simulation::substream_seed`]), so any (n, trial) cell can be
//! reproduced in isolation, bit-identically, on any platform.

pub mod asymptotics;
pub mod commands;
pub mod entropy;
pub mod error;
pub mod estimation;
pub mod ingest;
pub mod normal;
pub mod pmf;
pub mod report;
pub mod rng;
pub mod simulation;

pub use entropy::{Direction, EntropyFamily};
pub use error::{Error, Result};
pub use pmf::JointPmf;
