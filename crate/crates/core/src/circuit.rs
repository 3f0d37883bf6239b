//! Brickwork hybrid circuits: random two-qubit Clifford layers alternating
//! with random single-site Pauli measurements.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::region::Boundary;
use crate::stabilizer::{MeasurementCase, StabilizerState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitialState {
    MaximallyMixed,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasuredBasis {
    ZOnly,
    UniformXyz,
}

impl FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "open" | "obc" => Ok(Boundary::Open),
            "periodic" | "pbc" => Ok(Boundary::Periodic),
            _ => Err(Error::Config(format!("unknown boundary {s:?}"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for InitialState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mixed" | "maximally_mixed" => Ok(InitialState::MaximallyMixed),
            "product" => Ok(InitialState::Product),
            _ => Err(Error::Config(format!("unknown initial state {s:?}"))),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialState::MaximallyMixed => "mixed",
            InitialState::Product => "product",
        })
    }
}

impl FromStr for MeasuredBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(MeasuredBasis::ZOnly),
            "xyz" => Ok(MeasuredBasis::UniformXyz),
            _ => Err(Error::Config(format!("unknown basis {s:?}"))),
        }
    }
}

impl fmt::Display for MeasuredBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasuredBasis::ZOnly => "z",
            MeasuredBasis::UniformXyz => "xyz",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitConfig {
    pub l: usize,
    pub p: f64,
    /// Number of time steps (unitary layer + measurement layer).
    pub t: usize,
    pub bc: Boundary,
    pub initial: InitialState,
    pub seed: u64,
    pub basis: MeasuredBasis,
}

impl CircuitConfig {
    /// Mixed initial state, periodic boundary, Z measurements, `T = 8L`.
    pub fn new(l: usize, p: f64) -> Self {
        Self {
            l,
            p,
            t: 8 * l,
            bc: Boundary::Periodic,
            initial: InitialState::MaximallyMixed,
            seed: 0,
            basis: MeasuredBasis::ZOnly,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 2 {
            return Err(Error::Config(format!("L must be at least 2, got {}", self.l)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Config(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if self.t < 1 {
            return Err(Error::Config("T must be at least 1".into()));
        }
        Ok(())
    }

    /// Sets one key of the flat key-value format.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Config(format!("bad value {value:?} for key {key}"));
        match key {
            "L" => self.l = value.parse().map_err(|_| bad())?,
            "p" => self.p = value.parse().map_err(|_| bad())?,
            "T" => self.t = value.parse().map_err(|_| bad())?,
            "bc" => self.bc = value.parse()?,
            "initial" => self.initial = value.parse()?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "basis" => self.basis = value.parse()?,
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parses `key=value` lines; blank lines and `#` comments are ignored.
    /// Keys `L` and `p` are required, the rest default as in [`new`](Self::new).
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::new(0, f64::NAN);
        let mut t_given = false;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got {line:?}")))?;
            let key = key.trim();
            cfg.set(key, value.trim())?;
            t_given |= key == "T";
        }
        if cfg.l == 0 || cfg.p.is_nan() {
            return Err(Error::Config("keys L and p are required".into()));
        }
        if !t_given {
            cfg.t = 8 * cfg.l;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_kv(&self) -> String {
        format!(
            "L={}\np={}\nT={}\nbc={}\ninitial={}\nseed={}\nbasis={}\n",
            self.l, self.p, self.t, self.bc, self.initial, self.seed, self.basis
        )
    }

    pub fn initial_state(&self) -> StabilizerState {
        match self.initial {
            InitialState::MaximallyMixed => StabilizerState::new_maximally_mixed(self.l),
            InitialState::Product => StabilizerState::new_product_state(self.l),
        }
    }
}

/// Gate sites of layer `t`: `(2i, 2i+1)` on even layers, `(2i+1, 2i+2)` on
/// odd layers. Under periodic boundaries the pair `(L-1, 0)` is added when
/// both of its sites are otherwise idle in that layer.
pub fn brickwork_pairs(l: usize, bc: Boundary, t: usize) -> Vec<(usize, usize)> {
    let first = t % 2;
    let mut pairs: Vec<(usize, usize)> = (first..l.saturating_sub(1))
        .step_by(2)
        .map(|a| (a, a + 1))
        .collect();
    if bc == Boundary::Periodic && l > 2 {
        let used = |q: usize| pairs.iter().any(|&(a, b)| a == q || b == q);
        if !used(l - 1) && !used(0) {
            pairs.push((l - 1, 0));
        }
    }
    pairs
}

/// One time step: a layer of uniformly random two-qubit Cliffords, then a
/// measurement of each site with probability `p`. Returns the number of
/// measurements that purified the state.
pub fn step<R: Rng + ?Sized>(
    state: &mut StabilizerState,
    config: &CircuitConfig,
    rng: &mut R,
    t: usize,
) -> Result<usize> {
    if state.n_qubits() != config.l {
        return Err(Error::DimensionMismatch {
            expected: config.l,
            found: state.n_qubits(),
        });
    }
    let pairs = brickwork_pairs(config.l, config.bc, t);
    let gates: Vec<CliffordGate> = pairs.iter().map(|_| CliffordGate::random(rng)).collect();
    let layer: Vec<(&CliffordGate, usize, usize)> = gates
        .iter()
        .zip(&pairs)
        .map(|(g, &(a, b))| (g, a, b))
        .collect();
    state.apply_cliffords(&layer)?;

    let mut purified = 0;
    for q in 0..config.l {
        if !rng.gen_bool(config.p) {
            continue;
        }
        let letter = match config.basis {
            MeasuredBasis::ZOnly => Pauli::Z,
            MeasuredBasis::UniformXyz => [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)],
        };
        let out = state.measure_site(q, letter, rng)?;
        if out.case == MeasurementCase::NontrivialLogical {
            purified += 1;
        }
    }
    Ok(purified)
}

/// Runs `config.t` steps from the configured initial state with an RNG
/// seeded by `config.seed`. `observer` sees the state after every step
/// together with the number of completed steps (`1..=T`).
pub fn run_trajectory<F>(config: &CircuitConfig, mut observer: F) -> Result<StabilizerState>
where
    F: FnMut(&StabilizerState, usize),
{
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = config.initial_state();
    for t in 0..config.t {
        step(&mut state, config, &mut rng, t)?;
        observer(&state, t + 1);
    }
    Ok(state)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of trajectory `id` at sweep point `point`, independent of the order
/// in which trajectories are run.
pub fn trajectory_seed(master: u64, point: u64, id: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ point) ^ id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_brickwork_leaves_edge_idle() {
        assert_eq!(brickwork_pairs(5, Boundary::Open, 0), vec![(0, 1), (2, 3)]);
        assert_eq!(brickwork_pairs(5, Boundary::Open, 1), vec![(1, 2), (3, 4)]);
        assert_eq!(brickwork_pairs(6, Boundary::Open, 1), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn periodic_brickwork_wraps_on_odd_layers() {
        assert_eq!(
            brickwork_pairs(6, Boundary::Periodic, 1),
            vec![(1, 2), (3, 4), (5, 0)]
        );
        assert_eq!(
            brickwork_pairs(6, Boundary::Periodic, 0),
            vec![(0, 1), (2, 3), (4, 5)]
        );
        assert_eq!(brickwork_pairs(2, Boundary::Periodic, 1), vec![]);
        // odd L never has both wrap sites idle
        assert_eq!(brickwork_pairs(5, Boundary::Periodic, 1), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn config_round_trip_and_validation() {
        let mut cfg = CircuitConfig::new(32, 0.125);
        cfg.bc = Boundary::Open;
        cfg.basis = MeasuredBasis::UniformXyz;
        cfg.seed = 99;
        cfg.t = 17;
        assert_eq!(CircuitConfig::parse(&cfg.to_kv()).unwrap(), cfg);
        let d = CircuitConfig::parse("L=8\np=0.1 # comment\n").unwrap();
        assert_eq!(d.t, 64);
        assert!(CircuitConfig::parse("L=8\np=1.5\n").is_err());
        assert!(CircuitConfig::parse("L=1\np=0.5\n").is_err());
        assert!(CircuitConfig::parse("p=0.5\n").is_err());
        assert!(CircuitConfig::parse("L=4\np=0.5\nfoo=1\n").is_err());
    }

    #[test]
    fn unitary_dynamics_preserves_entropy() {
        let mut cfg = CircuitConfig::new(10, 0.0);
        cfg.t = 30;
        run_trajectory(&cfg, |s, _| {
            assert_eq!(s.total_entropy(), 10);
        })
        .unwrap();
    }

    #[test]
    fn full_measurement_purifies_two_qubits() {
        let mut cfg = CircuitConfig::new(2, 1.0);
        cfg.t = 1;
        for seed in 0..20 {
            cfg.seed = seed;
            let s = run_trajectory(&cfg, |_, _| {}).unwrap();
            assert_eq!(s.total_entropy(), 0);
        }
    }

    #[test]
    fn trajectories_are_reproducible() {
        let mut cfg = CircuitConfig::new(12, 0.2);
        cfg.seed = 5;
        let mut a = Vec::new();
        let sa = run_trajectory(&cfg, |s, _| a.push(s.total_entropy())).unwrap();
        let mut b = Vec::new();
        let sb = run_trajectory(&cfg, |s, _| b.push(s.total_entropy())).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa.to_snapshot(), sb.to_snapshot());
    }

    #[test]
    fn invariants_hold_along_trajectory() {
        for (bc, basis) in [
            (Boundary::Open, MeasuredBasis::ZOnly),
            (Boundary::Periodic, MeasuredBasis::UniformXyz),
        ] {
            let mut cfg = CircuitConfig::new(9, 0.15);
            cfg.bc = bc;
            cfg.basis = basis;
            cfg.t = 40;
            run_trajectory(&cfg, |s, _| s.check_invariants().unwrap()).unwrap();
        }
    }

    #[test]
    fn trajectory_seeds_differ() {
        let a = trajectory_seed(1, 0, 0);
        assert_ne!(a, trajectory_seed(1, 0, 1));
        assert_ne!(a, trajectory_seed(1, 1, 0));
        assert_ne!(a, trajectory_seed(2, 0, 0));
        assert_eq!(a, trajectory_seed(1, 0, 0));
    }
}
