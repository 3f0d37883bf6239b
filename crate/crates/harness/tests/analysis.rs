use clifford_qecc::Boundary;
use clifford_qecc_harness::{
    average_window, estimate_pc, fit_log_linear, fit_power_law, Averaging, Curve, HarnessError,
    Observable, ResultRecord,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn record(seed: u64, value: f64) -> ResultRecord {
    ResultRecord {
        experiment_id: "g".into(),
        seed,
        l: 32,
        p: 0.1,
        bc: Boundary::Periodic,
        t: 0,
        observable: Observable::HalfcutMI,
        region_start: None,
        region_length: None,
        value,
        sample_count: 1,
    }
}

#[test]
fn gaussian_mean_within_three_sigma() {
    let (mu, sigma, n) = (3.0, 1.5, 4000);
    let dist = Normal::new(mu, sigma).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let recs: Vec<_> = (0..n).map(|i| record(i, dist.sample(&mut rng))).collect();
    let agg = &average_window(&recs, Averaging::PerTrajectory, false).unwrap()[0];
    assert!((agg.moments.mean - mu).abs() < 3.0 * sigma / (n as f64).sqrt());
    assert!((agg.moments.std_dev() - sigma).abs() < 0.1);
    assert!((agg.moments.stderr - sigma / (n as f64).sqrt()).abs() < 0.01);
}

#[test]
fn planted_exponents_are_recovered() {
    let xs = [64.0, 128.0, 256.0, 512.0];
    let pl: Vec<_> = xs.iter().map(|&x: &f64| (x, 0.9 * x.powf(0.36))).collect();
    assert!((fit_power_law(&pl).unwrap().value - 0.36).abs() < 1e-10);
    let ll: Vec<_> = xs.iter().map(|&x: &f64| (x, 0.5 * x.ln() + 1.0)).collect();
    let f = fit_log_linear(&ll).unwrap();
    assert!((f.value - 0.5).abs() < 1e-10);
    assert!((f.intercept - 1.0).abs() < 1e-10);
}

#[test]
fn fits_need_three_positive_points() {
    assert!(matches!(fit_power_law(&[(1.0, 1.0), (2.0, 2.0)]), Err(HarnessError::Fit(_))));
    assert!(matches!(
        fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (3.0, 2.0)]),
        Err(HarnessError::Fit(_))
    ));
}

#[test]
fn pc_from_synthetic_curves() {
    let grid: Vec<f64> = (0..7).map(|i| 0.10 + 0.02 * i as f64).collect();
    let curves: Vec<Curve> = [64usize, 128, 256]
        .iter()
        .map(|&l| Curve {
            l,
            points: grid.iter().map(|&p| (p, (l as f64).sqrt() * (0.16 - p).tanh() + 2.0)).collect(),
        })
        .collect();
    assert!((estimate_pc(&curves).unwrap().pc - 0.16).abs() < 1e-9);

    let flat: Vec<Curve> = [64usize, 128]
        .iter()
        .map(|&l| Curve {
            l,
            points: grid.iter().map(|&p| (p, l as f64 * (1.0 - p))).collect(),
        })
        .collect();
    assert!(matches!(estimate_pc(&flat), Err(HarnessError::NoCrossing(_))));
}
