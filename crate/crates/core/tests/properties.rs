use clifford_qecc::circuit::{run_trajectory, step};
use clifford_qecc::qecc::{ell_algebraic, ell_bruteforce, ell_mutual_information};
use clifford_qecc::{
    Boundary, CircuitConfig, CliffordGate, MeasurementCase, MeasuredBasis, Pauli, PauliString,
    QubitSet, Region, SegmentProfile, Sign, StabilizerState,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(n: usize, p: f64, bc: Boundary, seed: u64) -> StabilizerState {
    let mut cfg = CircuitConfig::new(n, p);
    cfg.bc = bc;
    cfg.seed = seed;
    cfg.t = 4 * n;
    run_trajectory(&cfg, |_, _| {}).unwrap()
}

fn arb_state() -> impl Strategy<Value = StabilizerState> {
    (
        4usize..=12,
        prop::sample::select(vec![0.05, 0.1, 0.2, 0.3]),
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(n, p, periodic, seed)| {
            let bc = if periodic { Boundary::Periodic } else { Boundary::Open };
            random_state(n, p, bc, seed)
        })
}

fn random_subset(n: usize, rng: &mut ChaCha8Rng) -> QubitSet {
    QubitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_stay_valid(state in arb_state()) {
        prop_assert!(state.check_invariants().is_ok());
    }

    #[test]
    fn araki_lieb_and_subadditivity(state in arb_state(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = state.n_qubits();
        let a = random_subset(n, &mut rng);
        let sa = state.entropy(&a).unwrap();
        let sc = state.entropy(&a.complement()).unwrap();
        let k = state.total_entropy();
        prop_assert!(sa + sc >= k);
        prop_assert!(sa <= sc + k);
    }

    #[test]
    fn entropy_is_gauge_invariant(state in arb_state(), seed in any::<u64>()) {
        let n = state.n_qubits();
        let m = state.num_generators();
        prop_assume!(m >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
        prop_assume!(i != j);
        let mut gens = state.generators().to_vec();
        gens[j] = gens[j].multiply(&gens[i]).unwrap();
        let other = StabilizerState::from_generators(n, gens).unwrap();
        for _ in 0..5 {
            let a = random_subset(n, &mut rng);
            prop_assert_eq!(state.entropy(&a).unwrap(), other.entropy(&a).unwrap());
        }
    }

    #[test]
    fn strong_subadditivity(state in arb_state(), seed in any::<u64>()) {
        let n = state.n_qubits();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let a = QubitSet::from_indices(n, (0..n).filter(|&q| labels[q] == 0)).unwrap();
        let b = QubitSet::from_indices(n, (0..n).filter(|&q| labels[q] == 1)).unwrap();
        let ab = a.union(&b);
        prop_assert!(
            state.mutual_information_with_reference(&a).unwrap()
                <= state.mutual_information_with_reference(&ab).unwrap()
        );
    }

    #[test]
    fn three_way_agreement_and_cleaning(state in arb_state(), start in 0usize..12, len in 1usize..=6) {
        let n = state.n_qubits();
        let start = start % n;
        let len = len.min(n);
        let a = Region::periodic(start, len).to_set(n).unwrap();
        let t1 = ell_mutual_information(&state, &a).unwrap().ell;
        prop_assert_eq!(t1, ell_algebraic(&state, &a).unwrap().ell);
        prop_assert_eq!(t1, ell_bruteforce(&state, &a).unwrap().ell);
        let rest = ell_mutual_information(&state, &a.complement()).unwrap().ell;
        prop_assert_eq!(t1 + rest, 2 * state.num_logical());
    }

    #[test]
    fn ell_is_monotone(state in arb_state(), seed in any::<u64>()) {
        let n = state.n_qubits();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_subset(n, &mut rng);
        let b = a.union(&random_subset(n, &mut rng));
        prop_assert!(ell_mutual_information(&state, &a).unwrap().ell <= ell_mutual_information(&state, &b).unwrap().ell);
    }

    #[test]
    fn measurement_entropy_rule(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = StabilizerState::new_maximally_mixed(n);
        for _ in 0..40 {
            let a = rng.gen_range(0..n - 1);
            state.apply_clifford(&CliffordGate::random(&mut rng), a, a + 1).unwrap();
            let q = rng.gen_range(0..n);
            let letter = [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)];
            let before = state.total_entropy();
            let out = state.measure_site(q, letter, &mut rng).unwrap();
            let drop = before - state.total_entropy();
            prop_assert_eq!(drop as u32, out.entropy_drop);
            prop_assert_eq!(drop == 1, out.case == MeasurementCase::NontrivialLogical);
        }
        prop_assert!(state.check_invariants().is_ok());
    }

    #[test]
    fn deterministic_outcome_is_reproduced(seed in any::<u64>(), n in 2usize..8) {
        // a signed element of S has eigenvalue +1, its negative -1
        let state = random_state(n, 0.3, Boundary::Open, seed);
        prop_assume!(state.num_generators() >= 2);
        let g = state.generators()[0].multiply(&state.generators()[1]).unwrap();
        prop_assume!(g.is_hermitian());
        let mut copy = state.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let out = copy.measure(&g, &mut rng).unwrap();
        prop_assert_eq!(out.case, MeasurementCase::TrivialLogical);
        prop_assert_eq!(out.sign, Sign::Plus);
        let mut neg = g.clone();
        neg.set_phase((g.phase() + 2) % 4);
        prop_assert_eq!(copy.measure(&neg, &mut rng).unwrap().sign, Sign::Minus);
        prop_assert_eq!(copy, state);
    }

    #[test]
    fn gates_preserve_k(state in arb_state(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = state.n_qubits();
        let mut s = state.clone();
        for _ in 0..20 {
            let a = rng.gen_range(0..n);
            let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
            s.apply_clifford(&CliffordGate::random(&mut rng), a, b).unwrap();
        }
        prop_assert_eq!(s.total_entropy(), state.total_entropy());
        prop_assert!(s.check_invariants().is_ok());
    }
}

#[test]
fn segment_profile_matches_rank_on_xyz_circuits() {
    for seed in 0..6 {
        let mut cfg = CircuitConfig::new(14, 0.12);
        cfg.basis = MeasuredBasis::UniformXyz;
        cfg.seed = seed;
        cfg.t = 40;
        let state = run_trajectory(&cfg, |_, _| {}).unwrap();
        let prof = SegmentProfile::new(&state, Boundary::Periodic);
        for start in 0..14 {
            for len in 1..=14 {
                let r = Region::periodic(start, len);
                assert_eq!(prof.entropy(start, len).unwrap(), state.entropy(&r).unwrap());
            }
        }
    }
}

#[test]
fn purification_in_pure_phase() {
    // L = 16, p = 0.3, T = 8L: the state purifies in almost every run
    let mut pure = 0;
    for seed in 0..200 {
        let mut cfg = CircuitConfig::new(16, 0.3);
        cfg.seed = seed;
        if run_trajectory(&cfg, |_, _| {}).unwrap().total_entropy() == 0 {
            pure += 1;
        }
    }
    assert!(pure >= 190, "only {pure} of 200 purified");
}

#[test]
fn measurement_count_matches_rate() {
    let mut cfg = CircuitConfig::new(64, 0.25);
    cfg.t = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut state = cfg.initial_state();
    let mut purified = 0;
    for t in 0..cfg.t {
        purified += step(&mut state, &cfg, &mut rng, t).unwrap();
    }
    assert_eq!(64 - state.total_entropy(), purified);
}

#[test]
fn sign_bits_are_balanced() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let samples = 200_000;
    let mut minus = [0usize; 4];
    for _ in 0..samples {
        let g = CliffordGate::random(&mut rng);
        for (i, c) in minus.iter_mut().enumerate() {
            if g.image(i).phase() == 2 {
                *c += 1;
            }
        }
    }
    let sigma = (samples as f64 * 0.25).sqrt();
    for c in minus {
        assert!((c as f64 - samples as f64 / 2.0).abs() < 3.0 * sigma, "{c}");
    }
}

#[test]
fn translation_invariance_under_periodic_bc() {
    let (n, len) = (24, 6);
    let mut sums = [0usize; 2];
    let runs = 150;
    for seed in 0..runs {
        let s = random_state(n, 0.1, Boundary::Periodic, 1000 + seed);
        sums[0] += s.entropy(&Region::periodic(0, len)).unwrap();
        sums[1] += s.entropy(&Region::periodic(13, len)).unwrap();
    }
    let (a, b) = (sums[0] as f64 / runs as f64, sums[1] as f64 / runs as f64);
    // entropies of a 6-site segment lie in [0, 6]; the standard error is well below 0.3
    assert!((a - b).abs() < 0.6, "{a} vs {b}");
}

#[test]
fn pauli_text_round_trip_via_state() {
    let g: PauliString = "-XIZY".parse().unwrap();
    assert_eq!(g.to_string(), "-XIZY");
}
