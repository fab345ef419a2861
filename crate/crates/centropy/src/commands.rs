//! Command implementations behind the CLI binary: exact evaluation of a
//! pmf document, estimation from labeled pair data, and simulation
//! campaigns driven by a JSON config.
//!
//! Asymptotic profiles and simulation outputs are always in nats; the
//! presentation unit applies to exact values and estimates only.

use std::fs::File;
use std::io::{BufWriter, Write as IoWrite};
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::asymptotics;
use crate::entropy::{self, Direction, EntropyFamily};
use crate::error::{Error, Result};
use crate::estimation::{self, VarianceSource};
use crate::ingest::{self, PairFormat, PmfDocument};
use crate::pmf::JointPmf;
use crate::report::{
    self, IdentityEntry, InputDescriptor, LabelMapping, Report, SimulationReport, Unit,
};
use crate::simulation::{self, CampaignConfig, SimulationTrace};

/// Simulation campaign kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulateMode {
    Convergence,
    Normality,
}

impl FromStr for SimulateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SimulateMode> {
        match s.trim().to_ascii_lowercase().as_str() {
            "convergence" => Ok(SimulateMode::Convergence),
            "normality" => Ok(SimulateMode::Normality),
            other => Err(Error::InvalidConfig(format!(
                "unknown simulation mode '{other}'; expected convergence or normality"
            ))),
        }
    }
}

fn input_descriptor(path: &Path) -> Result<InputDescriptor> {
    Ok(InputDescriptor {
        path: path.display().to_string(),
        sha256: ingest::sha256_hex(path)?,
    })
}

fn check_directions(directions: &[Direction]) -> Result<()> {
    if directions.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one direction is required".to_string(),
        ));
    }
    Ok(())
}

/// Exact entropies of a pmf document for every family at the requested
/// orders and directions, with identity residuals per order.
pub fn cmd_exact(
    pmf_path: &Path,
    alphas: &[f64],
    directions: &[Direction],
    unit: Unit,
) -> Result<Report> {
    check_directions(directions)?;
    let pmf = ingest::read_pmf_json(pmf_path)?;
    let mut exact = Vec::new();
    for &direction in directions {
        exact.push(entropy::evaluate(&pmf, EntropyFamily::Shannon, None, direction)?);
        for &alpha in alphas {
            for family in [EntropyFamily::Renyi, EntropyFamily::Tsallis] {
                exact.push(entropy::evaluate(&pmf, family, Some(alpha), direction)?);
            }
        }
    }
    let identities: Vec<IdentityEntry> = alphas
        .iter()
        .map(|&alpha| {
            Ok(IdentityEntry {
                alpha,
                residuals: entropy::check_identities(&pmf, alpha)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut out = Report::new(unit);
    out.input = Some(input_descriptor(pmf_path)?);
    out.exact = Some(
        exact
            .into_iter()
            .map(|v| report::scaled_value(v, unit))
            .collect(),
    );
    if !identities.is_empty() {
        out.identities = Some(identities);
    }
    if directions.contains(&Direction::XgivenY) {
        out.notes = Some(vec![
            "x_given_y values are evaluated on the transposed table, so the chain \
             rule H(XY) = H(Y) + H(X|Y) holds to rounding; see the identity \
             residuals and the numerical notes in the README."
                .to_string(),
        ]);
    }
    Ok(out)
}

/// Plug-in estimates from a labeled pair file. Each family, order, and
/// direction is reported under both variance routes with a confidence
/// interval at `ci_level` wherever the route yields a usable variance.
pub fn cmd_estimate(
    data_path: &Path,
    families: &[EntropyFamily],
    alphas: &[f64],
    directions: &[Direction],
    ci_level: f64,
    unit: Unit,
) -> Result<Report> {
    check_directions(directions)?;
    if families.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one family is required".to_string(),
        ));
    }
    if !(ci_level > 0.0 && ci_level < 1.0) {
        return Err(Error::InvalidLevel(ci_level));
    }
    let format = PairFormat::from_path(data_path)?;
    let file = ingest::ingest_pairs(data_path, format)?;
    let samples = file.samples();
    let empirical = estimation::empirical_joint(samples);
    let mut estimates = Vec::new();
    let mut profiles = Vec::new();
    for &family in families {
        let family_alphas: Vec<Option<f64>> = match family {
            EntropyFamily::Shannon => vec![None],
            _ => {
                if alphas.is_empty() {
                    return Err(Error::InvalidConfig(format!(
                        "family {family:?} requires at least one --alpha"
                    )));
                }
                alphas.iter().map(|&a| Some(a)).collect()
            }
        };
        for &alpha in &family_alphas {
            for &direction in directions {
                for source in [VarianceSource::Literal, VarianceSource::Delta] {
                    let estimate = estimation::estimate_entropy_with_variance(
                        samples,
                        family,
                        alpha,
                        direction,
                        source,
                        Some(ci_level),
                    )?;
                    estimates.push(report::scaled_estimate(estimate, unit));
                }
                profiles.push(asymptotics::profile(&empirical, family, alpha, direction)?);
            }
        }
    }
    let mut out = Report::new(unit);
    out.input = Some(input_descriptor(data_path)?);
    out.labels = Some(LabelMapping {
        x: file.x_labels().to_vec(),
        y: file.y_labels().to_vec(),
    });
    out.estimates = Some(estimates);
    out.profiles = Some(profiles);
    Ok(out)
}

/// JSON mirror of [`CampaignConfig`]; the truth is either an inline pmf
/// document or a Zipf law arranged on an r x s support.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignDocument {
    pub truth: TruthDocument,
    pub family: EntropyFamily,
    #[serde(default)]
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub sample_sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_variance_source")]
    pub variance_source: VarianceSource,
}

fn default_variance_source() -> VarianceSource {
    VarianceSource::Delta
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthDocument {
    #[serde(default)]
    pub pmf: Option<PmfDocument>,
    #[serde(default)]
    pub zipf: Option<ZipfDocument>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZipfDocument {
    pub beta: f64,
    pub r: usize,
    pub s: usize,
}

impl CampaignDocument {
    fn truth_pmf(&self) -> Result<JointPmf> {
        match (&self.truth.pmf, &self.truth.zipf) {
            (Some(doc), None) => JointPmf::empirical(doc.r, doc.s, doc.probs.clone()),
            (None, Some(z)) => simulation::zipf_joint_pmf(z.beta, z.r, z.s),
            _ => Err(Error::InvalidConfig(
                "truth must give exactly one of 'pmf' or 'zipf'".to_string(),
            )),
        }
    }

    fn into_config(self, seed_override: Option<u64>) -> Result<CampaignConfig> {
        let truth = self.truth_pmf()?;
        Ok(CampaignConfig {
            truth,
            family: self.family,
            alpha: self.alpha,
            direction: self.direction,
            sample_sizes: self.sample_sizes,
            trials: self.trials,
            seed: seed_override.unwrap_or(self.seed),
            variance_source: self.variance_source,
        })
    }
}

fn read_campaign(path: &Path) -> Result<CampaignDocument> {
    let reader = std::io::BufReader::new(File::open(path)?);
    serde_json::from_reader(reader).map_err(|err| {
        if let Some(kind) = err.io_error_kind() {
            Error::Io(std::io::Error::new(kind, err.to_string()))
        } else {
            Error::Parse {
                line: err.line(),
                message: err.to_string(),
            }
        }
    })
}

fn write_trace_csv(path: &Path, trace: &SimulationTrace) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let with_standardized = trace
        .records
        .first()
        .is_some_and(|rec| rec.standardized.is_some());
    if with_standardized {
        writeln!(w, "n,trial,estimate,error,a_z,a_x,a_y,standardized")?;
    } else {
        writeln!(w, "n,trial,estimate,error,a_z,a_x,a_y")?;
    }
    for rec in &trace.records {
        write!(
            w,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            rec.n, rec.trial, rec.estimate, rec.error, rec.a_z, rec.a_x, rec.a_y
        )?;
        if let Some(z) = rec.standardized {
            write!(w, ",{z:.16e}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

fn write_histogram_csv(path: &Path, trace: &SimulationTrace) -> Result<()> {
    let hist = trace.histogram.as_ref().expect("normality trace");
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "bin_low,bin_high,count")?;
    for (idx, &count) in hist.counts.iter().enumerate() {
        writeln!(
            w,
            "{:.16e},{:.16e},{count}",
            hist.edges[idx],
            hist.edges[idx + 1]
        )?;
    }
    w.flush()?;
    Ok(())
}

fn write_qq_csv(path: &Path, trace: &SimulationTrace) -> Result<()> {
    let qq = trace.qq.as_ref().expect("normality trace");
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "empirical,normal")?;
    for pair in qq {
        writeln!(w, "{:.16e},{:.16e}", pair.empirical, pair.normal)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a campaign from a config file and writes its outputs into
/// `out_dir`: `trace.csv` and `summary.json` always, plus `histogram.csv`
/// and `qq.csv` in normality mode. Returns the summary report.
pub fn cmd_simulate(
    mode: SimulateMode,
    config_path: &Path,
    out_dir: &Path,
    seed_override: Option<u64>,
    unit: Unit,
) -> Result<Report> {
    if unit != Unit::Nats {
        return Err(Error::InvalidConfig(
            "simulation traces are always in nats; drop the unit override".to_string(),
        ));
    }
    let document = read_campaign(config_path)?;
    let config = document.into_config(seed_override)?;
    let trace = match mode {
        SimulateMode::Convergence => simulation::run_convergence(&config)?,
        SimulateMode::Normality => simulation::run_normality(&config)?,
    };
    std::fs::create_dir_all(out_dir)?;
    let mut files = vec!["trace.csv".to_string(), "summary.json".to_string()];
    write_trace_csv(&out_dir.join("trace.csv"), &trace)?;
    if mode == SimulateMode::Normality {
        write_histogram_csv(&out_dir.join("histogram.csv"), &trace)?;
        write_qq_csv(&out_dir.join("qq.csv"), &trace)?;
        files.push("histogram.csv".to_string());
        files.push("qq.csv".to_string());
    }
    let mut out = Report::new(unit);
    out.input = Some(input_descriptor(config_path)?);
    out.simulation = Some(SimulationReport {
        mode: match mode {
            SimulateMode::Convergence => "convergence".to_string(),
            SimulateMode::Normality => "normality".to_string(),
        },
        family: config.family,
        alpha: config.alpha,
        direction: config.direction,
        variance_source: config.variance_source,
        seed: config.seed,
        trials: config.trials,
        sample_sizes: config.sample_sizes.clone(),
        truth_value: trace.truth_value,
        sigma: trace.sigma,
        summaries: trace.summaries.clone(),
        files,
    });
    let summary_path = out_dir.join("summary.json");
    std::fs::write(&summary_path, out.to_json_string())?;
    Ok(out)
}
