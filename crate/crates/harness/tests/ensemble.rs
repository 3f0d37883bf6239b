use clifford_qecc_harness::experiments::by_size;
use clifford_qecc_harness::{
    run_ensemble, write_records, ExperimentSpec, Format, Observable, Stride,
};

#[test]
fn no_measurements_keep_full_entropy() {
    let spec = ExperimentSpec::new(
        "p0",
        vec![(8, 0.0), (12, 0.0), (16, 0.0)],
        3,
        &[Observable::TotalEntropy],
    );
    let recs = run_ensemble(&spec, 11, 1).unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.value == r.l as f64));
}

#[test]
fn worker_count_does_not_change_records() {
    let mut spec = ExperimentSpec::new(
        "det",
        vec![(12, 0.1), (16, 0.08)],
        6,
        &[
            Observable::TotalEntropy,
            Observable::DistanceScan,
            Observable::HalfcutMI,
            Observable::EntropyVariance,
        ],
    );
    spec.stride = Stride::PerSize(4);
    let bytes = |workers| {
        let mut buf = Vec::new();
        write_records(&run_ensemble(&spec, 99, workers).unwrap(), Format::Csv, &mut buf).unwrap();
        buf
    };
    assert_eq!(bytes(1), bytes(8));
}

#[test]
fn mixed_phase_keeps_finite_entropy() {
    let spec = ExperimentSpec::new("mixed", vec![(16, 0.08)], 50, &[Observable::TotalEntropy]);
    let recs = run_ensemble(&spec, 2024, 2).unwrap();
    let m = by_size(&recs, Observable::TotalEntropy).unwrap();
    assert_eq!(m.len(), 1);
    let mean = m[0].1.mean;
    assert!(mean > 0.0 && mean < 16.0, "{mean}");
}

#[test]
fn different_master_seeds_differ() {
    let spec = ExperimentSpec::new("s", vec![(16, 0.1)], 4, &[Observable::TotalEntropy]);
    let a = run_ensemble(&spec, 1, 1).unwrap();
    let b = run_ensemble(&spec, 2, 1).unwrap();
    assert_ne!(a, b);
}

#[test]
fn window_means_have_expected_denominators() {
    let mut spec = ExperimentSpec::new(
        "den",
        vec![(10, 0.1)],
        5,
        &[Observable::TotalEntropy, Observable::RegionEntropyScan],
    );
    spec.stride = Stride::Fixed(5);
    let recs = run_ensemble(&spec, 3, 1).unwrap();
    // window mean of k over 5 samples x 20 steps
    let m = by_size(&recs, Observable::TotalEntropy).unwrap()[0].1.mean * 100.0;
    assert!((m - m.round()).abs() < 1e-9);
    for r in recs.iter().filter(|r| r.observable == Observable::RegionEntropyScan) {
        let scaled = r.value * (r.sample_count * 10) as f64;
        assert!((scaled - scaled.round()).abs() < 1e-9);
        assert!(r.value >= 0.0);
    }
}

#[test]
fn open_boundary_records_carry_bc() {
    let mut spec = ExperimentSpec::new("obc", vec![(12, 0.1)], 2, &[Observable::HalfcutMI]);
    spec.config.bc = clifford_qecc::Boundary::Open;
    let recs = run_ensemble(&spec, 0, 1).unwrap();
    assert!(recs.iter().all(|r| r.bc == clifford_qecc::Boundary::Open && r.value >= 0.0));
}
