//! Parallel ensemble runs.

use clifford_qecc::circuit::{run_trajectory, trajectory_seed};
use clifford_qecc::qecc::distance_from_profile;
use clifford_qecc::{Boundary, Error as CoreError, SegmentProfile, StabilizerState};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::record::{sort_records, Observable, ResultRecord};
use crate::spec::ExperimentSpec;

/// Seed-stream id of a sweep point. Depends on `(L, p)` only, so runs that
/// differ only in boundary condition share their random numbers.
pub fn point_id(l: usize, p: f64) -> u64 {
    (l as u64).rotate_left(32) ^ p.to_bits()
}

/// Runs every trajectory of `spec` on `workers` threads and returns the
/// records in canonical order. The result does not depend on `workers`.
pub fn run_ensemble(spec: &ExperimentSpec, master_seed: u64, workers: usize) -> Result<Vec<ResultRecord>> {
    spec.validate()?;
    let jobs: Vec<(usize, f64, u64)> = spec
        .sweep
        .iter()
        .flat_map(|&(l, p)| {
            (0..spec.n_samples as u64).map(move |id| (l, p, trajectory_seed(master_seed, point_id(l, p), id)))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Spec(format!("thread pool: {e}")))?;
    let batches: Vec<Result<Vec<ResultRecord>>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(l, p, seed)| run_one(spec, l, p, seed))
            .collect()
    });
    let mut records = Vec::new();
    for b in batches {
        records.extend(b?);
    }
    sort_records(&mut records);
    Ok(records)
}

/// Records of a single trajectory.
pub fn run_one(spec: &ExperimentSpec, l: usize, p: f64, seed: u64) -> Result<Vec<ResultRecord>> {
    let cfg = spec.point_config(l, p, seed);
    let mut acc = Accumulator::new(spec, l, p, seed, cfg.bc);
    let mut failure: Option<CoreError> = None;
    run_trajectory(&cfg, |state, t| {
        if failure.is_none() {
            if let Err(e) = acc.observe(state, t) {
                failure = Some(e);
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(acc.finish())
}

struct Accumulator<'a> {
    spec: &'a ExperimentSpec,
    l: usize,
    p: f64,
    seed: u64,
    bc: Boundary,
    lengths: Vec<usize>,
    records: Vec<ResultRecord>,
    entropy_sums: Vec<f64>,
    mi_sums: Vec<f64>,
    snapshots: usize,
    last_t: usize,
}

impl<'a> Accumulator<'a> {
    fn new(spec: &'a ExperimentSpec, l: usize, p: f64, seed: u64, bc: Boundary) -> Self {
        let lengths = spec.lengths.for_size(l);
        let n = lengths.len();
        Self {
            spec,
            l,
            p,
            seed,
            bc,
            lengths,
            records: Vec::new(),
            entropy_sums: vec![0.0; n],
            mi_sums: vec![0.0; n],
            snapshots: 0,
            last_t: 0,
        }
    }

    fn has(&self, o: Observable) -> bool {
        self.spec.observables.contains(&o)
    }

    fn push(&mut self, t: usize, observable: Observable, region: Option<(usize, usize)>, value: f64, n: usize) {
        self.records.push(ResultRecord {
            experiment_id: self.spec.id.clone(),
            seed: self.seed,
            l: self.l,
            p: self.p,
            bc: self.bc,
            t,
            observable,
            region_start: region.map(|r| r.0),
            region_length: region.map(|r| r.1),
            value,
            sample_count: n,
        });
    }

    fn offsets(&self, len: usize) -> usize {
        match self.bc {
            Boundary::Open => self.l - len + 1,
            Boundary::Periodic => self.l,
        }
    }

    fn observe(&mut self, state: &StabilizerState, t: usize) -> std::result::Result<(), CoreError> {
        let (t0, t1) = self.spec.window_steps(self.l);
        if t <= t0 || t > t1 {
            return Ok(());
        }
        if self.has(Observable::TotalEntropy) {
            self.push(t, Observable::TotalEntropy, None, state.total_entropy() as f64, 1);
        }
        let needs_profile = self.spec.observables.iter().any(|o| o.needs_profile());
        if !needs_profile || !self.spec.is_snapshot(self.l, t) {
            return Ok(());
        }
        let profile = SegmentProfile::new(state, self.bc);
        self.snapshots += 1;
        self.last_t = t;

        if self.has(Observable::HalfcutMI) {
            let v = profile.mutual_information_with_complement(0, self.l / 2)?;
            self.push(t, Observable::HalfcutMI, None, v as f64, 1);
        }
        if self.has(Observable::DistanceScan) && profile.total_entropy() > 0 {
            match distance_from_profile(&profile, self.spec.epsilon, self.l / 2, 1) {
                Ok(d) => self.push(t, Observable::DistanceScan, None, d.d_cont as f64, 1),
                // no segment up to L/2 carries a logical operator: not recorded
                Err(CoreError::Regime(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let scan_entropy = self.has(Observable::RegionEntropyScan);
        let scan_mi = self.has(Observable::MIWithReference);
        let variance = self.has(Observable::EntropyVariance);
        for i in 0..self.lengths.len() {
            let len = self.lengths[i];
            let offsets = self.offsets(len);
            if scan_entropy || scan_mi {
                let (mut s, mut m) = (0usize, 0usize);
                for start in 0..offsets {
                    if scan_entropy {
                        s += profile.entropy(start, len)?;
                    }
                    if scan_mi {
                        m += profile.logical_count(start, len)?;
                    }
                }
                self.entropy_sums[i] += s as f64 / offsets as f64;
                self.mi_sums[i] += m as f64 / offsets as f64;
            }
            if variance {
                let step = (offsets / self.spec.variance_offsets).max(1);
                for start in (0..offsets).step_by(step).take(self.spec.variance_offsets) {
                    let v = profile.entropy(start, len)?;
                    self.push(t, Observable::EntropyVariance, Some((start, len)), v as f64, 1);
                }
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Vec<ResultRecord> {
        if self.snapshots > 0 {
            let n = self.snapshots;
            let t = self.last_t;
            for i in 0..self.lengths.len() {
                let len = self.lengths[i];
                if self.has(Observable::RegionEntropyScan) {
                    let v = self.entropy_sums[i] / n as f64;
                    self.push(t, Observable::RegionEntropyScan, Some((0, len)), v, n);
                }
                if self.has(Observable::MIWithReference) {
                    let v = self.mi_sums[i] / n as f64;
                    self.push(t, Observable::MIWithReference, Some((0, len)), v, n);
                }
            }
        }
        self.records
    }
}
