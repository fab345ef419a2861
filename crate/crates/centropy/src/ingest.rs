//! File ingestion: labeled pair data (CSV or JSON lines) mapped onto flat
//! outcomes through a stable lexicographic label order, and pmf documents
//! as JSON.
//!
//! The label mapping depends only on the set of labels present, never on
//! row order: X labels sorted ascending get indices 1..r, Y labels 1..s,
//! and a pair maps to the flat outcome s·(i−1)+j.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write as IoWrite};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::estimation::SampleSet;
use crate::pmf::{self, JointPmf};

/// Wire format of a labeled pair file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFormat {
    Csv,
    Jsonl,
}

impl PairFormat {
    /// Infers the format from the file extension (.csv, .jsonl, .ndjson).
    pub fn from_path(path: &Path) -> Result<PairFormat> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        match ext.as_deref() {
            Some("csv") => Ok(PairFormat::Csv),
            Some("jsonl") | Some("ndjson") => Ok(PairFormat::Jsonl),
            _ => Err(Error::InvalidConfig(format!(
                "cannot infer pair format of '{}'; expected a .csv or .jsonl extension",
                path.display()
            ))),
        }
    }
}

/// Ingested pair data: sorted label vocabularies plus the flat sample.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPairFile {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    samples: SampleSet,
}

impl LabeledPairFile {
    /// X labels in index order (label at position i−1 has index i).
    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    /// Y labels in index order.
    pub fn y_labels(&self) -> &[String] {
        &self.y_labels
    }

    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    /// The label pair behind a flat outcome.
    pub fn label_pair(&self, outcome: usize) -> Result<(&str, &str)> {
        let (i, j) = pmf::unflatten_index(outcome, self.samples.s())?;
        if i > self.x_labels.len() {
            return Err(Error::IndexOutOfRange {
                name: "outcome",
                value: outcome,
                max: self.x_labels.len() * self.y_labels.len(),
            });
        }
        Ok((&self.x_labels[i - 1], &self.y_labels[j - 1]))
    }
}

fn from_csv_error(err: csv::Error) -> Error {
    let line = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or_default();
    match err.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

fn from_json_error(err: serde_json::Error) -> Error {
    if let Some(kind) = err.io_error_kind() {
        Error::Io(std::io::Error::new(kind, err.to_string()))
    } else {
        Error::Parse {
            line: err.line(),
            message: err.to_string(),
        }
    }
}

fn checked_label(raw: &str, coordinate: &str, line: usize) -> Result<String> {
    let label = raw.trim();
    if label.is_empty() {
        return Err(Error::Parse {
            line,
            message: format!("empty {coordinate} label"),
        });
    }
    Ok(label.to_string())
}

fn read_csv_rows(path: &Path) -> Result<Vec<(usize, String, String)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(from_csv_error)?;
    let mut rows = Vec::new();
    for result in reader.records() {
        let record = result.map_err(from_csv_error)?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or_default();
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 comma separated fields, found {}", record.len()),
            });
        }
        rows.push((
            line,
            checked_label(&record[0], "x", line)?,
            checked_label(&record[1], "y", line)?,
        ));
    }
    // A leading row is a header only when it names the columns themselves;
    // any other label row, numeric or not, is data.
    if let Some(first) = rows.first() {
        if first.1.eq_ignore_ascii_case("x") && first.2.eq_ignore_ascii_case("y") {
            rows.remove(0);
        }
    }
    Ok(rows)
}

fn json_label(value: &serde_json::Value, key: &str, line: usize) -> Result<String> {
    match value.get(key) {
        Some(serde_json::Value::String(s)) => checked_label(s, key, line),
        Some(serde_json::Value::Number(n)) => Ok(n.to_string()),
        Some(other) => Err(Error::Parse {
            line,
            message: format!("field '{key}' must be a string or number, found {other}"),
        }),
        None => Err(Error::Parse {
            line,
            message: format!("missing field '{key}'"),
        }),
    }
}

fn read_jsonl_rows(path: &Path) -> Result<Vec<(usize, String, String)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let text = line?;
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        rows.push((
            line_no,
            json_label(&value, "x", line_no)?,
            json_label(&value, "y", line_no)?,
        ));
    }
    Ok(rows)
}

/// Reads a labeled pair file and maps it onto flat outcomes.
pub fn ingest_pairs(path: &Path, format: PairFormat) -> Result<LabeledPairFile> {
    let rows = match format {
        PairFormat::Csv => read_csv_rows(path)?,
        PairFormat::Jsonl => read_jsonl_rows(path)?,
    };
    if rows.is_empty() {
        return Err(Error::InvalidSample(format!(
            "'{}' contains no data rows",
            path.display()
        )));
    }
    let x_labels: Vec<String> = rows
        .iter()
        .map(|(_, x, _)| x.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let y_labels: Vec<String> = rows
        .iter()
        .map(|(_, _, y)| y.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (r, s) = (x_labels.len(), y_labels.len());
    if r < 2 || s < 2 {
        return Err(Error::InvalidSample(format!(
            "need at least two distinct labels on each coordinate, found {r} x and {s} y"
        )));
    }
    let outcomes: Vec<usize> = rows
        .iter()
        .map(|(_, x, y)| {
            let i = x_labels.binary_search(x).expect("label present") + 1;
            let j = y_labels.binary_search(y).expect("label present") + 1;
            pmf::flatten_index(i, j, s).expect("indices in range")
        })
        .collect();
    let samples = SampleSet::from_outcomes(r, s, outcomes)?;
    Ok(LabeledPairFile {
        x_labels,
        y_labels,
        samples,
    })
}

/// Writes a sample as a labeled pair CSV with an `x,y` header row.
pub fn write_pairs_csv(
    path: &Path,
    samples: &SampleSet,
    x_labels: &[String],
    y_labels: &[String],
) -> Result<()> {
    if x_labels.len() != samples.r() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} x labels", samples.r()),
            found: format!("{}", x_labels.len()),
        });
    }
    if y_labels.len() != samples.s() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} y labels", samples.s()),
            found: format!("{}", y_labels.len()),
        });
    }
    let mut writer = csv::Writer::from_path(path).map_err(from_csv_error)?;
    writer.write_record(["x", "y"]).map_err(from_csv_error)?;
    for &k in samples.outcomes() {
        let (i, j) = pmf::unflatten_index(k, samples.s())?;
        writer
            .write_record([x_labels[i - 1].as_str(), y_labels[j - 1].as_str()])
            .map_err(from_csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// JSON document describing a joint pmf in flat order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfDocument {
    pub r: usize,
    pub s: usize,
    pub probs: Vec<f64>,
}

/// Reads a pmf document; zero cells are allowed.
pub fn read_pmf_json(path: &Path) -> Result<JointPmf> {
    let reader = BufReader::new(File::open(path)?);
    let doc: PmfDocument = serde_json::from_reader(reader).map_err(from_json_error)?;
    JointPmf::empirical(doc.r, doc.s, doc.probs)
}

/// Writes a pmf document. Probabilities are serialized with enough digits
/// to round-trip bit-exactly.
pub fn write_pmf_json(path: &Path, pmf: &JointPmf) -> Result<()> {
    let doc = PmfDocument {
        r: pmf.r(),
        s: pmf.s(),
        probs: pmf.probs().to_vec(),
    };
    let mut writer = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut writer, &doc).map_err(from_json_error)?;
    writeln!(writer)?;
    writer.flush()?;
    Ok(())
}

/// Hex SHA-256 digest of a file's bytes.
pub fn sha256_hex(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let digest = Sha256::digest(&bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    Ok(hex)
}
