//! Machine-readable reports emitted by the command layer: tool identity,
//! input digest, label mapping, exact values, estimates with confidence
//! intervals, asymptotic profiles, and simulation summaries.
//!
//! Floats are serialized with shortest round-trip formatting, so a value
//! written to JSON parses back to the identical bit pattern.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::asymptotics::AsymptoticProfile;
use crate::entropy::{Direction, EntropyFamily, EntropyValue, IdentityReport};
use crate::error::{Error, Result};
use crate::estimation::{EntropyEstimate, VarianceSource};
use crate::simulation::SummaryRecord;

pub const TOOL_NAME: &str = "centropy";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Presentation unit. Values are computed in nats and multiplied by the
/// unit factor on output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Nats,
    Bits,
    Hartley,
}

impl Unit {
    /// Multiplier applied to values in nats: 1, 1/ln 2, or 1/ln 10.
    pub fn factor(self) -> f64 {
        match self {
            Unit::Nats => 1.0,
            Unit::Bits => 1.0 / std::f64::consts::LN_2,
            Unit::Hartley => 1.0 / std::f64::consts::LN_10,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
            Unit::Hartley => "hartley",
        })
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Unit> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nats" => Ok(Unit::Nats),
            "bits" => Ok(Unit::Bits),
            "hartley" => Ok(Unit::Hartley),
            other => Err(Error::InvalidConfig(format!(
                "unknown unit '{other}'; expected nats, bits, or hartley"
            ))),
        }
    }
}

/// The file a report was computed from, pinned by content digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDescriptor {
    pub path: String,
    pub sha256: String,
}

/// Label vocabularies in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelMapping {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

/// Identity residuals at one order α. Residuals are evaluated in nats;
/// the pseudo-additivity form is not invariant under unit rescaling, so
/// no unit factor is applied to them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityEntry {
    pub alpha: f64,
    pub residuals: IdentityReport,
}

/// Summary of a simulation campaign; per-trial records go to sidecar files
/// listed in `files`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub mode: String,
    pub family: EntropyFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub variance_source: VarianceSource,
    pub seed: u64,
    pub trials: usize,
    pub sample_sizes: Vec<usize>,
    pub truth_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub summaries: Vec<SummaryRecord>,
    pub files: Vec<String>,
}

/// Top-level report. Sections absent from a run are omitted from the JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub unit: Unit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelMapping>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<EntropyValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<IdentityEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimates: Option<Vec<EntropyEstimate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<AsymptoticProfile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
}

impl Report {
    /// A report shell carrying only tool identity and the unit.
    pub fn new(unit: Unit) -> Report {
        Report {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            unit,
            input: None,
            labels: None,
            exact: None,
            identities: None,
            estimates: None,
            profiles: None,
            simulation: None,
            notes: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        out.push('\n');
        out
    }
}

/// Applies the unit factor to an exact value.
pub fn scaled_value(value: EntropyValue, unit: Unit) -> EntropyValue {
    EntropyValue {
        value: value.value * unit.factor(),
        ..value
    }
}

/// Applies the unit factor to an estimate: the value and interval ends
/// scale by the factor, the variance by its square.
pub fn scaled_estimate(estimate: EntropyEstimate, unit: Unit) -> EntropyEstimate {
    let f = unit.factor();
    EntropyEstimate {
        value: estimate.value * f,
        variance: estimate.variance.map(|v| v * f * f),
        ci_low: estimate.ci_low.map(|v| v * f),
        ci_high: estimate.ci_high.map(|v| v * f),
        ..estimate
    }
}

/// Renders an error as the JSON object printed on stderr.
pub fn error_json(err: &Error) -> String {
    let body = serde_json::json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
        }
    });
    let mut out = serde_json::to_string(&body).expect("error serialization cannot fail");
    out.push('\n');
    out
}
