//! Least-squares fits for scaling laws.

use serde::Serialize;

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FitModel {
    /// `y = c·x^a`, fitted as `ln y = a ln x + ln c`.
    PowerLaw,
    /// `y = a ln x + b`.
    LogLinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub model: FitModel,
    /// Exponent for power laws, coefficient of `ln x` otherwise.
    pub value: f64,
    pub stderr: f64,
    /// `ln c` for power laws, `b` otherwise.
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = if xs.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let r2 = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    (slope, intercept, stderr, r2.clamp(0.0, 1.0))
}

fn check(points: &[(f64, f64)]) -> Result<()> {
    if points.len() < 3 {
        return Err(HarnessError::Fit(format!("need at least 3 points, got {}", points.len())));
    }
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(HarnessError::Fit("non-finite data".into()));
    }
    if points.iter().any(|&(x, _)| x <= 0.0) {
        return Err(HarnessError::Fit("x must be positive".into()));
    }
    let x0 = points[0].0;
    if points.iter().all(|&(x, _)| x == x0) {
        return Err(HarnessError::Fit("all x values coincide".into()));
    }
    Ok(())
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitResult> {
    check(points)?;
    if points.iter().any(|&(_, y)| y <= 0.0) {
        return Err(HarnessError::Fit("power law needs positive y".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (value, intercept, stderr, r_squared) = ols(&xs, &ys);
    Ok(FitResult {
        model: FitModel::PowerLaw,
        value,
        stderr,
        intercept,
        r_squared,
        n_points: points.len(),
    })
}

pub fn fit_log_linear(points: &[(f64, f64)]) -> Result<FitResult> {
    check(points)?;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let (value, intercept, stderr, r_squared) = ols(&xs, &ys);
    Ok(FitResult {
        model: FitModel::LogLinear,
        value,
        stderr,
        intercept,
        r_squared,
        n_points: points.len(),
    })
}
