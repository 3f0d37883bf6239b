//! Critical-point estimate from crossings of finite-size curves.

use serde::Serialize;

use crate::error::{HarnessError, Result};

/// One curve `y(p)` at system size `l`, sorted by `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub l: usize,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PcEstimate {
    pub pc: f64,
    /// `(L1, L2, p)` for each consecutive pair of sizes.
    pub crossings: Vec<(usize, usize, f64)>,
}

/// Crossing of two curves on a shared grid: the first `p` where
/// `y_big - y_small` changes sign from positive to non-positive,
/// linearly interpolated.
fn crossing(small: &Curve, big: &Curve) -> Result<f64> {
    let no = || HarnessError::NoCrossing(format!("L={} and L={}", small.l, big.l));
    if small.points.len() != big.points.len()
        || small.points.iter().zip(&big.points).any(|(a, b)| a.0 != b.0)
    {
        return Err(HarnessError::Spec(format!(
            "curves for L={} and L={} use different p grids",
            small.l, big.l
        )));
    }
    let diff: Vec<(f64, f64)> = small
        .points
        .iter()
        .zip(&big.points)
        .map(|(a, b)| (a.0, b.1 - a.1))
        .collect();
    for w in diff.windows(2) {
        let ((p0, d0), (p1, d1)) = (w[0], w[1]);
        if d0 > 0.0 && d1 <= 0.0 {
            return Ok(p0 + (p1 - p0) * d0 / (d0 - d1));
        }
    }
    Err(no())
}

/// Mean of the crossing points of consecutive sizes. Curves must share one
/// `p` grid; larger sizes must lie above smaller ones at small `p`.
pub fn estimate_pc(curves: &[Curve]) -> Result<PcEstimate> {
    let mut curves = curves.to_vec();
    curves.sort_by_key(|c| c.l);
    if curves.len() < 2 {
        return Err(HarnessError::Spec("need at least two system sizes".into()));
    }
    for c in &mut curves {
        c.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    let crossings = curves
        .windows(2)
        .map(|w| Ok((w[0].l, w[1].l, crossing(&w[0], &w[1])?)))
        .collect::<Result<Vec<_>>>()?;
    let pc = crossings.iter().map(|c| c.2).sum::<f64>() / crossings.len() as f64;
    Ok(PcEstimate { pc, crossings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(l: usize, f: impl Fn(f64) -> f64) -> Curve {
        let points = (0..7).map(|i| 0.10 + 0.02 * i as f64).map(|p| (p, f(p))).collect();
        Curve { l, points }
    }

    #[test]
    fn synthetic_crossing() {
        let curves: Vec<_> = [64usize, 128, 256]
            .iter()
            .map(|&l| curve(l, move |p| (l as f64).ln() * (0.16 - p) + 1.0))
            .collect();
        let est = estimate_pc(&curves).unwrap();
        assert!((est.pc - 0.16).abs() < 1e-12);
        assert_eq!(est.crossings.len(), 2);
    }

    #[test]
    fn interpolates_between_grid_points() {
        let a = curve(32, |p| 1.0 - p);
        let b = curve(64, |p| 1.0 - 3.0 * p + 0.31);
        // the difference 0.31 - 2p vanishes at p = 0.155
        let est = estimate_pc(&[b, a]).unwrap();
        assert!((est.pc - 0.155).abs() < 1e-12);
    }

    #[test]
    fn monotone_curves_do_not_cross() {
        let a = curve(64, |p| 1.0 - p);
        let b = curve(128, |p| 2.0 - p);
        assert!(matches!(estimate_pc(&[a, b]), Err(HarnessError::NoCrossing(_))));
    }
}
