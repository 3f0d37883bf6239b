//! Ready-made ensemble recipes and their analyses.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use clifford_qecc::Boundary;

use crate::error::{HarnessError, Result};
use crate::fit::{fit_log_linear, fit_power_law, FitResult};
use crate::pc::{estimate_pc, Curve, PcEstimate};
use crate::record::{Observable, ResultRecord};
use crate::spec::{ExperimentSpec, Lengths, Stride};
use crate::stats::{average_window, select, Averaging, Moments};

/// Problem sizes of a recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Small sizes that finish in minutes.
    Smoke,
    Full,
}

impl Tier {
    fn scaling_sizes(self) -> Vec<usize> {
        match self {
            Tier::Smoke => vec![32, 64, 128],
            Tier::Full => vec![64, 128, 256, 512],
        }
    }
}

pub const SCALING_P: f64 = 0.08;
pub const SAMPLES: usize = 100;

/// Periodic run at `p = 0.08` feeding the distance, half-cut and total
/// entropy analyses.
pub fn scaling_spec(tier: Tier) -> ExperimentSpec {
    let sweep = tier.scaling_sizes().into_iter().map(|l| (l, SCALING_P)).collect();
    let mut spec = ExperimentSpec::new(
        "scaling-pbc",
        sweep,
        SAMPLES,
        &[
            Observable::TotalEntropy,
            Observable::HalfcutMI,
            Observable::DistanceScan,
            Observable::MIWithReference,
        ],
    );
    spec.config.bc = Boundary::Periodic;
    spec.stride = Stride::PerSize(32);
    spec
}

/// Open-boundary counterpart of [`scaling_spec`] with total entropy only.
pub fn open_spec(tier: Tier) -> ExperimentSpec {
    let sweep = tier.scaling_sizes().into_iter().map(|l| (l, SCALING_P)).collect();
    let mut spec = ExperimentSpec::new("scaling-obc", sweep, SAMPLES, &[Observable::TotalEntropy]);
    spec.config.bc = Boundary::Open;
    spec
}

pub const VARIANCE_PS: [f64; 3] = [0.04, 0.08, 0.12];

/// Entropy snapshots at `L = 256` for segment lengths `4, 8, ..., L/2`.
pub fn variance_spec(tier: Tier) -> ExperimentSpec {
    let l = match tier {
        Tier::Smoke => 64,
        Tier::Full => 256,
    };
    let sweep = VARIANCE_PS.iter().map(|&p| (l, p)).collect();
    let mut spec = ExperimentSpec::new("variance", sweep, SAMPLES, &[Observable::EntropyVariance]);
    spec.config.bc = Boundary::Periodic;
    spec.stride = Stride::PerSize(32);
    spec.lengths = Lengths::List(std::iter::successors(Some(4), |&x| Some(2 * x)).take_while(|&x| x <= l / 2).collect());
    spec
}

pub fn pc_grid() -> Vec<f64> {
    (0..7).map(|i| ((10 + 2 * i) as f64) / 100.0).collect()
}

/// Mean `k` over `p ∈ [0.10, 0.22]` for three sizes.
pub fn pc_spec(tier: Tier) -> ExperimentSpec {
    let sizes: &[usize] = match tier {
        Tier::Smoke => &[16, 32, 64],
        Tier::Full => &[64, 128, 256],
    };
    let sweep = sizes
        .iter()
        .flat_map(|&l| pc_grid().into_iter().map(move |p| (l, p)))
        .collect();
    let mut spec = ExperimentSpec::new("pc", sweep, SAMPLES, &[Observable::TotalEntropy]);
    spec.config.bc = Boundary::Periodic;
    spec
}

/// Per-size ensemble moments of one observable (trajectory means first).
pub fn by_size(records: &[ResultRecord], observable: Observable) -> Result<Vec<(usize, Moments)>> {
    let recs: Vec<ResultRecord> = records.iter().filter(|r| r.observable == observable).cloned().collect();
    if recs.is_empty() {
        return Err(HarnessError::EmptyGroup(format!("no {observable} records")));
    }
    let aggs = average_window(&recs, Averaging::PerTrajectory, false)?;
    Ok(select(&aggs, observable).map(|a| (a.key.l, a.moments)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingAnalysis {
    pub points: Vec<(usize, f64)>,
    pub fit: FitResult,
}

/// Smallest length at which the interpolated mean curve first reaches
/// `epsilon`.
pub fn threshold_crossing(curve: &[(usize, f64)], epsilon: f64) -> Option<f64> {
    let mut prev = (0.0, 0.0);
    for &(len, v) in curve {
        let x = len as f64;
        if v >= epsilon {
            let (x0, v0) = prev;
            return Some(if v > v0 { x0 + (x - x0) * (epsilon - v0) / (v - v0) } else { x });
        }
        prev = (x, v);
    }
    None
}

/// Distance from the ensemble- and offset-averaged `I(A:R)` curve: the
/// length at which it reaches `epsilon` bits.
pub fn distance_from_mean_curve(records: &[ResultRecord], epsilon: f64) -> Result<ScalingAnalysis> {
    let recs: Vec<ResultRecord> = records
        .iter()
        .filter(|r| r.observable == Observable::MIWithReference)
        .cloned()
        .collect();
    if recs.is_empty() {
        return Err(HarnessError::EmptyGroup("no MIWithReference records".into()));
    }
    let aggs = average_window(&recs, Averaging::PerTrajectory, false)?;
    let mut curves: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for a in &aggs {
        if let Some(len) = a.key.region_length {
            curves.entry(a.key.l).or_default().push((len, a.moments.mean));
        }
    }
    let points = curves
        .into_iter()
        .map(|(l, mut c)| {
            c.sort_by_key(|x| x.0);
            threshold_crossing(&c, epsilon)
                .map(|d| (l, d))
                .ok_or_else(|| HarnessError::Fit(format!("mean curve at L={l} never reaches {epsilon}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_power_law(&points.iter().map(|&(l, d)| (l as f64, d)).collect::<Vec<_>>())?;
    Ok(ScalingAnalysis { points, fit })
}

/// Power law of the per-sample distance (minimum over offsets).
pub fn distance_per_sample(records: &[ResultRecord]) -> Result<ScalingAnalysis> {
    power_law_of(records, Observable::DistanceScan)
}

pub fn halfcut_scaling(records: &[ResultRecord]) -> Result<ScalingAnalysis> {
    power_law_of(records, Observable::HalfcutMI)
}

fn power_law_of(records: &[ResultRecord], o: Observable) -> Result<ScalingAnalysis> {
    let points: Vec<(usize, f64)> = by_size(records, o)?.into_iter().map(|(l, m)| (l, m.mean)).collect();
    let fit = fit_power_law(&points.iter().map(|&(l, v)| (l as f64, v)).collect::<Vec<_>>())?;
    Ok(ScalingAnalysis { points, fit })
}

/// `S_pbc - S_obc` in nats against `ln L`.
pub fn boundary_difference(periodic: &[ResultRecord], open: &[ResultRecord]) -> Result<ScalingAnalysis> {
    let pbc: BTreeMap<usize, Moments> = by_size(periodic, Observable::TotalEntropy)?.into_iter().collect();
    let obc: BTreeMap<usize, Moments> = by_size(open, Observable::TotalEntropy)?.into_iter().collect();
    let points: Vec<(usize, f64)> = pbc
        .iter()
        .filter_map(|(l, m)| obc.get(l).map(|o| (*l, (m.mean - o.mean) * LN_2)))
        .collect();
    let fit = fit_log_linear(&points.iter().map(|&(l, v)| (l as f64, v)).collect::<Vec<_>>())?;
    Ok(ScalingAnalysis { points, fit })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarianceAnalysis {
    pub p: f64,
    /// `(|A|, std dev of S(A))` in bits.
    pub points: Vec<(usize, f64)>,
    pub fit: FitResult,
}

/// Standard deviation of `S(A)` over circuits, times and offsets, per `p`.
pub fn entropy_fluctuations(records: &[ResultRecord]) -> Result<Vec<VarianceAnalysis>> {
    let recs: Vec<ResultRecord> = records
        .iter()
        .filter(|r| r.observable == Observable::EntropyVariance)
        .cloned()
        .collect();
    if recs.is_empty() {
        return Err(HarnessError::EmptyGroup("no EntropyVariance records".into()));
    }
    let aggs = average_window(&recs, Averaging::Pooled, false)?;
    let mut by_p: BTreeMap<u64, Vec<(usize, f64)>> = BTreeMap::new();
    for a in &aggs {
        if let Some(len) = a.key.region_length {
            by_p.entry(a.key.p().to_bits()).or_default().push((len, a.moments.std_dev()));
        }
    }
    by_p.into_iter()
        .map(|(p, points)| {
            let fit = fit_power_law(&points.iter().map(|&(x, s)| (x as f64, s)).collect::<Vec<_>>())?;
            Ok(VarianceAnalysis {
                p: f64::from_bits(p),
                points,
                fit,
            })
        })
        .collect()
}

/// Crossing of the mean-`k` curves of consecutive sizes.
pub fn critical_point(records: &[ResultRecord]) -> Result<PcEstimate> {
    let recs: Vec<ResultRecord> = records
        .iter()
        .filter(|r| r.observable == Observable::TotalEntropy)
        .cloned()
        .collect();
    if recs.is_empty() {
        return Err(HarnessError::EmptyGroup("no TotalEntropy records".into()));
    }
    let aggs = average_window(&recs, Averaging::PerTrajectory, false)?;
    let mut curves: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for a in &aggs {
        curves.entry(a.key.l).or_default().push((a.key.p(), a.moments.mean));
    }
    let curves: Vec<Curve> = curves.into_iter().map(|(l, points)| Curve { l, points }).collect();
    estimate_pc(&curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_are_valid() {
        for tier in [Tier::Smoke, Tier::Full] {
            for spec in [scaling_spec(tier), open_spec(tier), variance_spec(tier), pc_spec(tier)] {
                spec.validate().unwrap();
            }
        }
        assert_eq!(
            variance_spec(Tier::Full).lengths,
            Lengths::List(vec![4, 8, 16, 32, 64, 128])
        );
        assert_eq!(pc_spec(Tier::Full).sweep.len(), 21);
    }

    #[test]
    fn crossing_interpolates() {
        let curve = [(1, 0.2), (2, 0.6), (3, 1.4), (4, 2.0)];
        assert!((threshold_crossing(&curve, 1.0).unwrap() - 2.5).abs() < 1e-12);
        assert_eq!(threshold_crossing(&curve, 0.1), Some(0.5));
        assert_eq!(threshold_crossing(&curve, 3.0), None);
    }
}
