//! Experiment specifications and their flat text format.
//!
//! ```text
//! id = dcont
//! bc = periodic
//! samples = 100
//! window = 6,8
//! observables = TotalEntropy, DistanceScan
//! stride = L/32
//! sweep = L=64 p=0.08
//! sweep = L=128 p=0.08
//! ```

use std::fmt;
use std::str::FromStr;

use clifford_qecc::CircuitConfig;

use crate::error::{HarnessError, Result};
use crate::record::Observable;

/// Steps between sampled snapshots inside the window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stride {
    Fixed(usize),
    /// `max(1, L / d)`.
    PerSize(usize),
}

impl Stride {
    pub fn steps(self, l: usize) -> usize {
        match self {
            Stride::Fixed(n) => n.max(1),
            Stride::PerSize(d) => (l / d.max(1)).max(1),
        }
    }
}

impl FromStr for Stride {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || HarnessError::Spec(format!("bad stride {s:?}"));
        if let Some(d) = s.strip_prefix("L/") {
            let d: usize = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Stride::PerSize(d))
        } else {
            let n: usize = s.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(Stride::Fixed(n))
        }
    }
}

impl fmt::Display for Stride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stride::Fixed(n) => write!(f, "{n}"),
            Stride::PerSize(d) => write!(f, "L/{d}"),
        }
    }
}

/// Segment lengths used by the region scans.
#[derive(Clone, Debug, PartialEq)]
pub enum Lengths {
    /// Every length `1..=L/2`.
    UpToHalf,
    List(Vec<usize>),
}

impl Lengths {
    pub fn for_size(&self, l: usize) -> Vec<usize> {
        match self {
            Lengths::UpToHalf => (1..=l / 2).collect(),
            Lengths::List(v) => v.iter().copied().filter(|&x| x >= 1 && x <= l).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub id: String,
    /// Template for every point. `l`, `p`, `t` and `seed` are overwritten.
    pub config: CircuitConfig,
    pub sweep: Vec<(usize, f64)>,
    pub n_samples: usize,
    /// `(t_min, t_max)` in units of `L`; steps `t_min·L < t ≤ t_max·L` are sampled.
    pub window: (f64, f64),
    pub observables: Vec<Observable>,
    pub lengths: Lengths,
    pub stride: Stride,
    /// `d_cont` threshold in bits.
    pub epsilon: f64,
    /// Offsets per length recorded for `EntropyVariance`.
    pub variance_offsets: usize,
}

impl ExperimentSpec {
    pub fn new(id: &str, sweep: Vec<(usize, f64)>, n_samples: usize, observables: &[Observable]) -> Self {
        let mut obs = observables.to_vec();
        obs.sort();
        obs.dedup();
        Self {
            id: id.to_string(),
            config: CircuitConfig::new(2, 0.0),
            sweep,
            n_samples,
            window: (6.0, 8.0),
            observables: obs,
            lengths: Lengths::UpToHalf,
            stride: Stride::Fixed(1),
            epsilon: clifford_qecc::qecc::DEFAULT_EPSILON,
            variance_offsets: 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(HarnessError::Spec(m));
        if self.n_samples == 0 {
            return err("samples must be at least 1".into());
        }
        if self.sweep.is_empty() {
            return err("sweep is empty".into());
        }
        let (lo, hi) = self.window;
        if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
            return err(format!("window {lo},{hi} needs 0 <= t_min < t_max"));
        }
        if self.observables.is_empty() {
            return err("no observables".into());
        }
        if !(self.epsilon > 0.0) {
            return err(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.variance_offsets == 0 {
            return err("variance_offsets must be at least 1".into());
        }
        for &(l, p) in &self.sweep {
            self.point_config(l, p, 0).validate()?;
            if self.observables.contains(&Observable::HalfcutMI) && l % 2 != 0 {
                return err(format!("HalfcutMI needs even L, got {l}"));
            }
            let (t0, t1) = self.window_steps(l);
            if t1 <= t0 {
                return err(format!("window is empty at L={l}"));
            }
        }
        Ok(())
    }

    /// Circuit configuration of one trajectory.
    pub fn point_config(&self, l: usize, p: f64, seed: u64) -> CircuitConfig {
        let mut cfg = self.config.clone();
        cfg.l = l;
        cfg.p = p;
        cfg.seed = seed;
        cfg.t = self.window_steps(l).1;
        cfg
    }

    /// `(t0, t1)`: steps `t0 < t ≤ t1` lie in the window.
    pub fn window_steps(&self, l: usize) -> (usize, usize) {
        let t0 = (self.window.0 * l as f64).floor() as usize;
        let t1 = (self.window.1 * l as f64).floor() as usize;
        (t0, t1)
    }

    /// Whether step `t` (completed steps) is a profile snapshot.
    pub fn is_snapshot(&self, l: usize, t: usize) -> bool {
        let (t0, t1) = self.window_steps(l);
        if t <= t0 || t > t1 {
            return false;
        }
        (t1 - t) % self.stride.steps(l) == 0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = Self::new("experiment", Vec::new(), 1, &[]);
        let mut single: (Option<usize>, Option<f64>) = (None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::Spec(format!("line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || HarnessError::Spec(format!("line {}: bad value for {key}", lineno + 1));
            match key {
                "id" => spec.id = value.to_string(),
                "sweep" => spec.sweep.push(parse_point(value)?),
                "samples" | "n_samples" => spec.n_samples = value.parse().map_err(|_| bad())?,
                "window" => {
                    let (a, b) = value.split_once(',').ok_or_else(bad)?;
                    spec.window = (
                        a.trim().parse().map_err(|_| bad())?,
                        b.trim().parse().map_err(|_| bad())?,
                    );
                }
                "observables" => {
                    let mut obs = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(str::parse)
                        .collect::<Result<Vec<Observable>>>()?;
                    obs.sort();
                    obs.dedup();
                    spec.observables = obs;
                }
                "lengths" => {
                    spec.lengths = if value == "half" {
                        Lengths::UpToHalf
                    } else {
                        Lengths::List(
                            value
                                .split(',')
                                .map(|s| s.trim().parse().map_err(|_| bad()))
                                .collect::<Result<_>>()?,
                        )
                    }
                }
                "stride" => spec.stride = value.parse()?,
                "epsilon" => spec.epsilon = value.parse().map_err(|_| bad())?,
                "variance_offsets" => spec.variance_offsets = value.parse().map_err(|_| bad())?,
                "L" => single.0 = Some(value.parse().map_err(|_| bad())?),
                "p" => single.1 = Some(value.parse().map_err(|_| bad())?),
                "T" | "seed" => {
                    return Err(HarnessError::Spec(format!(
                        "line {}: {key} is set by the window and the master seed",
                        lineno + 1
                    )))
                }
                _ => spec.config.set(key, value).map_err(|e| HarnessError::Spec(e.to_string()))?,
            }
        }
        match single {
            (Some(l), Some(p)) => spec.sweep.push((l, p)),
            (None, None) => {}
            _ => return Err(HarnessError::Spec("L and p must be given together".into())),
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "id={}\nbc={}\ninitial={}\nbasis={}\nsamples={}\nwindow={},{}\nobservables={}\nstride={}\nepsilon={}\nvariance_offsets={}\n",
            self.id,
            self.config.bc,
            self.config.initial,
            self.config.basis,
            self.n_samples,
            self.window.0,
            self.window.1,
            self.observables.iter().map(|o| o.name()).collect::<Vec<_>>().join(","),
            self.stride,
            self.epsilon,
            self.variance_offsets,
        );
        match &self.lengths {
            Lengths::UpToHalf => out.push_str("lengths=half\n"),
            Lengths::List(v) => {
                let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("lengths={}\n", v.join(",")));
            }
        }
        for (l, p) in &self.sweep {
            out.push_str(&format!("sweep=L={l} p={p}\n"));
        }
        out
    }
}

fn parse_point(value: &str) -> Result<(usize, f64)> {
    let bad = || HarnessError::Spec(format!("bad sweep point {value:?}, expected \"L=<n> p=<x>\""));
    let (mut l, mut p) = (None, None);
    for tok in value.split_whitespace() {
        match tok.split_once('=').ok_or_else(bad)? {
            ("L", v) => l = Some(v.parse().map_err(|_| bad())?),
            ("p", v) => p = Some(v.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    Ok((l.ok_or_else(bad)?, p.ok_or_else(bad)?))
}
