//! Result records and their export formats.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use clifford_qecc::Boundary;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Observable {
    /// `S(Q) = k` at every sampled step.
    TotalEntropy,
    /// Window mean over offsets of `S(A)` per segment length.
    RegionEntropyScan,
    /// Window mean over offsets of `I(A:R)` per segment length.
    MIWithReference,
    /// `I(A:Ā)` for the two halves at every sampled step.
    HalfcutMI,
    /// Contiguous code distance at every sampled step.
    DistanceScan,
    /// `S(A)` snapshots at a few offsets, for sample-to-sample variance.
    EntropyVariance,
}

impl Observable {
    pub const ALL: [Observable; 6] = [
        Observable::TotalEntropy,
        Observable::RegionEntropyScan,
        Observable::MIWithReference,
        Observable::HalfcutMI,
        Observable::DistanceScan,
        Observable::EntropyVariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::TotalEntropy => "TotalEntropy",
            Observable::RegionEntropyScan => "RegionEntropyScan",
            Observable::MIWithReference => "MIWithReference",
            Observable::HalfcutMI => "HalfcutMI",
            Observable::DistanceScan => "DistanceScan",
            Observable::EntropyVariance => "EntropyVariance",
        }
    }

    /// Whether evaluating it needs the per-segment profile of the state.
    pub fn needs_profile(self) -> bool {
        !matches!(self, Observable::TotalEntropy)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Spec(format!("unknown observable {s:?}")))
    }
}

fn ser_bc<S: Serializer>(bc: &Boundary, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&bc.to_string())
}

fn de_bc<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Boundary, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

/// One observable sample. Values are in units of ln 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub experiment_id: String,
    pub seed: u64,
    #[serde(rename = "L")]
    pub l: usize,
    pub p: f64,
    #[serde(serialize_with = "ser_bc", deserialize_with = "de_bc")]
    pub bc: Boundary,
    pub t: usize,
    pub observable: Observable,
    pub region_start: Option<usize>,
    pub region_length: Option<usize>,
    pub value: f64,
    pub sample_count: usize,
}

impl ResultRecord {
    fn sort_key(&self) -> (usize, u64, u64, usize, Observable, Option<usize>, Option<usize>, u8) {
        let bc = match self.bc {
            Boundary::Open => 0,
            Boundary::Periodic => 1,
        };
        (
            self.l,
            self.p.to_bits(),
            self.seed,
            self.t,
            self.observable,
            self.region_length,
            self.region_start,
            bc,
        )
    }
}

/// Canonical order: `(L, p, seed, t, observable, region)`.
pub fn sort_records(records: &mut [ResultRecord]) {
    records.sort_by(|a, b| {
        a.sort_key()
            .cmp(&b.sort_key())
            .then_with(|| a.experiment_id.cmp(&b.experiment_id))
    });
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

impl FromStr for Format {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" | "json-lines" => Ok(Format::JsonLines),
            _ => Err(HarnessError::Spec(format!("unknown format {s:?}"))),
        }
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "experiment_id",
    "seed",
    "L",
    "p",
    "bc",
    "t",
    "observable",
    "region_start",
    "region_length",
    "value",
    "sample_count",
];

pub fn write_records<W: Write>(records: &[ResultRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::JsonLines => {
            let mut out = std::io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn read_records<R: std::io::Read>(input: R, format: Format) -> Result<Vec<ResultRecord>> {
    match format {
        Format::Csv => {
            let mut rdr = csv::Reader::from_reader(input);
            rdr.deserialize().map(|r| r.map_err(Into::into)).collect()
        }
        Format::JsonLines => std::io::BufReader::new(input)
            .lines()
            .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()))
            .map(|l| Ok(serde_json::from_str(&l?)?))
            .collect(),
    }
}

pub fn export(records: &[ResultRecord], format: Format, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_records(records, format, file)
}

pub fn import(path: &Path, format: Format) -> Result<Vec<ResultRecord>> {
    read_records(std::fs::File::open(path)?, format)
}
