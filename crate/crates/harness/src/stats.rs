//! Window and ensemble averages.

use std::collections::BTreeMap;

use clifford_qecc::Boundary;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::record::{Observable, ResultRecord};

/// Mean, unbiased variance and standard error of a sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub n: usize,
}

impl Moments {
    pub fn of(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(HarnessError::EmptyGroup("no values".into()));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Ok(Self {
            mean,
            variance,
            stderr: (variance / n as f64).sqrt(),
            n,
        })
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupKey {
    pub experiment_id: String,
    pub l: usize,
    p_bits: u64,
    pub bc: u8,
    pub observable: Observable,
    pub region_length: Option<usize>,
    pub region_start: Option<usize>,
}

impl GroupKey {
    pub fn p(&self) -> f64 {
        f64::from_bits(self.p_bits)
    }

    pub fn boundary(&self) -> Boundary {
        if self.bc == 0 {
            Boundary::Open
        } else {
            Boundary::Periodic
        }
    }
}

/// How records within a group are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Averaging {
    /// Mean per trajectory first, then moments across trajectories.
    /// The standard error then accounts for autocorrelation in time.
    PerTrajectory,
    /// Moments over all records of the group.
    Pooled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub key: GroupKey,
    pub moments: Moments,
    pub trajectories: usize,
}

/// Groups records by `(experiment, L, p, bc, observable, region length)`, and
/// by region start when `by_start` is set, then averages each group.
pub fn average_window(records: &[ResultRecord], averaging: Averaging, by_start: bool) -> Result<Vec<Aggregate>> {
    if records.is_empty() {
        return Err(HarnessError::EmptyGroup("no records".into()));
    }
    let mut groups: BTreeMap<GroupKey, BTreeMap<u64, Vec<f64>>> = BTreeMap::new();
    for r in records {
        let key = GroupKey {
            experiment_id: r.experiment_id.clone(),
            l: r.l,
            p_bits: r.p.to_bits(),
            bc: match r.bc {
                Boundary::Open => 0,
                Boundary::Periodic => 1,
            },
            observable: r.observable,
            region_length: r.region_length,
            region_start: if by_start { r.region_start } else { None },
        };
        groups.entry(key).or_default().entry(r.seed).or_default().push(r.value);
    }
    groups
        .into_iter()
        .map(|(key, per_seed)| {
            let trajectories = per_seed.len();
            let values: Vec<f64> = match averaging {
                Averaging::PerTrajectory => per_seed
                    .values()
                    .map(|v| v.iter().sum::<f64>() / v.len() as f64)
                    .collect(),
                Averaging::Pooled => per_seed.into_values().flatten().collect(),
            };
            Ok(Aggregate {
                key,
                moments: Moments::of(&values)?,
                trajectories,
            })
        })
        .collect()
}

/// Aggregates of one observable, in key order.
pub fn select(aggs: &[Aggregate], observable: Observable) -> impl Iterator<Item = &Aggregate> {
    aggs.iter().filter(move |a| a.key.observable == observable)
}
