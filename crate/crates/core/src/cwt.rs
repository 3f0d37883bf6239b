//! Capillary-wave free energies of entanglement domain walls.
//!
//! All free energies and entropies here are in nats. Additive constants are
//! dropped, so only differences and slopes are meaningful.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::region::Boundary;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Variant {
    /// `βσ a + (3/2) ln a` for pinned walls, `ζ = 1/2`.
    Capillary,
    /// `βσ a + χ a^γ` for pinned walls.
    Generalized { chi: f64, gamma: f64, zeta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeEnergyModel {
    pub variant: Variant,
    /// Line tension times inverse temperature, nats per site.
    pub beta_sigma: f64,
    pub l: f64,
    /// Circuit depth; may be `f64::INFINITY`.
    pub t: f64,
    pub bc: Boundary,
}

/// Crossover length `|A|*` from the exact root and the leading-order formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AStar {
    pub bisection: f64,
    pub closed_form: f64,
}

const A_STAR_TOL: f64 = 1e-6;

/// `-ln(e^{-x} + e^{-y})`.
pub fn neg_log_sum_exp(x: f64, y: f64) -> f64 {
    let lo = x.min(y);
    let hi = x.max(y);
    if hi == f64::INFINITY {
        return lo;
    }
    lo - (-(hi - lo)).exp().ln_1p()
}

/// `ln(1 + e^x)`.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

impl FreeEnergyModel {
    pub fn capillary(beta_sigma: f64, l: f64, t: f64, bc: Boundary) -> Self {
        Self {
            variant: Variant::Capillary,
            beta_sigma,
            l,
            t,
            bc,
        }
    }

    pub fn generalized(
        beta_sigma: f64,
        chi: f64,
        gamma: f64,
        zeta: f64,
        l: f64,
        t: f64,
        bc: Boundary,
    ) -> Self {
        Self {
            variant: Variant::Generalized { chi, gamma, zeta },
            beta_sigma,
            l,
            t,
            bc,
        }
    }

    /// Checks `0 < βσ ≤ ln 2` (the entropy density cannot exceed one bit
    /// per site), `L ≥ 1`, `T > 0` and the GCW exponent ranges.
    pub fn validate(&self) -> Result<()> {
        if !(self.beta_sigma > 0.0 && self.beta_sigma <= LN_2) {
            return Err(Error::Config(format!(
                "beta_sigma must lie in (0, ln 2], got {}",
                self.beta_sigma
            )));
        }
        if !(self.l >= 1.0) || !(self.t > 0.0) {
            return Err(Error::Config(format!("need L >= 1 and T > 0, got L={} T={}", self.l, self.t)));
        }
        if let Variant::Generalized { chi, gamma, zeta } = self.variant {
            if !(chi.is_finite() && (0.0..1.0).contains(&gamma) && zeta > 0.0 && zeta < 1.0) {
                return Err(Error::Config(format!(
                    "need finite chi, gamma in [0,1), zeta in (0,1); got {chi}, {gamma}, {zeta}"
                )));
            }
        }
        Ok(())
    }

    pub fn zeta(&self) -> f64 {
        match self.variant {
            Variant::Capillary => 0.5,
            Variant::Generalized { zeta, .. } => zeta,
        }
    }

    /// Free energy of a wall pinned at both ends of a segment of length `a`.
    pub fn f_pinned(&self, a: f64) -> Result<f64> {
        if !(a >= 1.0) {
            return Err(Error::Config(format!("segment length must be at least 1, got {a}")));
        }
        Ok(self.beta_sigma * a
            + match self.variant {
                Variant::Capillary => 1.5 * a.ln(),
                Variant::Generalized { chi, gamma, .. } => chi * a.powf(gamma),
            })
    }

    /// `f_pinned` extended by `f(0) = 0`.
    fn f_segment(&self, a: f64) -> Result<f64> {
        if a == 0.0 {
            Ok(0.0)
        } else {
            self.f_pinned(a)
        }
    }

    /// Free energy of the waist wall spanning the whole system.
    pub fn f_waist(&self) -> f64 {
        let bulk = self.beta_sigma * self.l;
        match self.bc {
            Boundary::Open => bulk - self.t.ln(),
            Boundary::Periodic => bulk - (self.t.ln() - self.zeta() * self.l.ln()),
        }
    }

    fn check_a(&self, a: f64) -> Result<()> {
        if (0.0..=self.l).contains(&a) {
            Ok(())
        } else {
            Err(Error::Config(format!("a = {a} outside [0, {}]", self.l)))
        }
    }

    /// `S(Ā)` from the two wall configurations.
    pub fn entropy_complement(&self, a: f64) -> Result<f64> {
        self.check_a(a)?;
        let single = self.f_segment(self.l - a)?;
        let split = self.f_segment(a)? + self.f_waist();
        Ok(neg_log_sum_exp(single, split))
    }

    /// `I(A:R) = ln(1 + e^{F(A) + F_w - F(Ā)})`.
    pub fn mutual_info_ar(&self, a: f64) -> Result<f64> {
        self.check_a(a)?;
        Ok(softplus(
            self.f_segment(a)? + self.f_waist() - self.f_segment(self.l - a)?,
        ))
    }

    /// Leading-order `I(A:R)`: `e^{-2βσ(a*-a)}` below `a*`, `2βσ(a-a*)` above.
    pub fn mutual_info_ar_asymptotic(&self, a: f64, a_star: f64) -> f64 {
        let x = 2.0 * self.beta_sigma * (a - a_star);
        if a < a_star {
            x.exp()
        } else {
            x
        }
    }

    /// Root of `F(L-x) = F(x) + F_w` on `[1, L/2]` by bisection, with the
    /// leading-order closed form alongside.
    pub fn a_star(&self) -> Result<AStar> {
        if !(self.beta_sigma > 0.0) {
            return Err(Error::Regime("a_star needs beta_sigma > 0".into()));
        }
        let fw = self.f_waist();
        let g = |x: f64| -> Result<f64> {
            Ok(self.f_pinned(self.l - x)? - self.f_pinned(x)? - fw)
        };
        let (mut lo, mut hi) = (1.0, self.l / 2.0);
        if hi < lo {
            return Err(Error::Regime(format!("L = {} too small", self.l)));
        }
        let (g_lo, g_hi) = (g(lo)?, g(hi)?);
        if !(g_lo > 0.0 && g_hi <= 0.0) {
            return Err(Error::Regime(format!(
                "no root of F(L-x) - F(x) - F_waist in [1, L/2] (values {g_lo:.4}, {g_hi:.4})"
            )));
        }
        while hi - lo > A_STAR_TOL {
            let mid = 0.5 * (lo + hi);
            if g(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let closed_form = match self.variant {
            Variant::Capillary => {
                let depth = match self.bc {
                    Boundary::Open => self.t.ln(),
                    Boundary::Periodic => (self.t / self.l.sqrt()).ln(),
                };
                (1.5 * self.l.ln() + depth) / (2.0 * self.beta_sigma)
            }
            Variant::Generalized { chi, gamma, .. } => {
                chi * self.l.powf(gamma) / (2.0 * self.beta_sigma)
            }
        };
        Ok(AStar {
            bisection: lo,
            closed_form,
        })
    }

    /// `-ln tanh(e^{-F_w})`, the entropy of the waist-wall gas at any depth.
    pub fn late_time_entropy(&self) -> f64 {
        neg_ln_tanh_exp_neg(self.f_waist())
    }

    /// `-ln[e^{-F(Ā)} + e^{-F(A)} tanh(e^{-F_w})]`.
    pub fn late_time_entropy_complement(&self, a: f64) -> Result<f64> {
        self.check_a(a)?;
        Ok(neg_log_sum_exp(
            self.f_segment(self.l - a)?,
            self.f_segment(a)? + self.late_time_entropy(),
        ))
    }
}

/// `-ln tanh(e^{-f})`.
fn neg_ln_tanh_exp_neg(f: f64) -> f64 {
    if f == f64::NEG_INFINITY {
        return 0.0;
    }
    let x = (-f).exp();
    if x < 1e-4 {
        // tanh x = x(1 - x²/3 + ...)
        return f + x * x / 3.0;
    }
    let e = (-2.0 * x).exp();
    e.ln_1p() - (-e).ln_1p()
}

/// An evaluated partition sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionSum {
    /// `ln Z` of the fluctuation part.
    pub log_sum: f64,
    /// `βσ · length - ln Z`.
    pub free_energy: f64,
    pub terms: usize,
    /// Whether the parameters lie in the regime where the closed forms apply.
    pub regime_ok: bool,
}

const MAX_TERMS: usize = 10_000_000;
const REL_TOL: f64 = 1e-16;

/// Sums `term(n)` for `n = first, first + step, ...` until the envelope
/// bound drops below `REL_TOL` of the running total.
fn converge(
    first: usize,
    step: usize,
    term: impl Fn(f64) -> f64,
    envelope: impl Fn(f64) -> f64,
) -> Result<(f64, usize)> {
    let mut total = 0.0;
    let mut n = first;
    let mut count = 0;
    loop {
        let nf = n as f64;
        total += term(nf);
        count += 1;
        if envelope(nf) <= REL_TOL * total.abs() && total != 0.0 {
            return Ok((total, count));
        }
        if count >= MAX_TERMS {
            return Err(Error::NonConvergence(MAX_TERMS));
        }
        n += step;
    }
}

/// Pinned wall over a segment of length `a` in a box of depth `t`:
/// `(2/T) Σ_n sin²(nπε/T) exp(-(nπ)² a / (2βσT²))`.
pub fn pinned_partition_sum(beta_sigma: f64, a: f64, t: f64, epsilon: f64) -> Result<PartitionSum> {
    if !(a >= 1.0 && t > 0.0 && epsilon > 0.0 && beta_sigma > 0.0) {
        return Err(Error::Config(format!(
            "need a >= 1, T > 0, epsilon > 0, beta_sigma > 0; got {a}, {t}, {epsilon}, {beta_sigma}"
        )));
    }
    let c = PI * PI * a / (2.0 * beta_sigma * t * t);
    let s = PI * epsilon / t;
    let (sum, terms) = converge(
        1,
        1,
        |n| (2.0 / t) * (n * s).sin().powi(2) * (-c * n * n).exp(),
        |n| (2.0 / t) * (-c * n * n).exp(),
    )?;
    let log_sum = sum.ln();
    Ok(PartitionSum {
        log_sum,
        free_energy: beta_sigma * a - log_sum,
        terms,
        regime_ok: epsilon * (beta_sigma / a).sqrt() <= 0.1 && t >= 10.0 * a.sqrt(),
    })
}

/// Waist wall across `l` sites in a box of depth `t`. Open boundaries:
/// `Σ_{n odd} 8T/(n²π²) e^{-E_n L}`; periodic: `Σ_{n≥1} e^{-E_n L}`, with
/// `E_n L = (nπ√L/T)² / (2βσ)`.
pub fn waist_partition_sum(beta_sigma: f64, l: f64, t: f64, bc: Boundary) -> Result<PartitionSum> {
    if !(l >= 1.0 && t > 0.0 && beta_sigma > 0.0) {
        return Err(Error::Config(format!(
            "need L >= 1, T > 0, beta_sigma > 0; got {l}, {t}, {beta_sigma}"
        )));
    }
    let c = PI * PI * l / (2.0 * beta_sigma * t * t);
    let (sum, terms) = match bc {
        Boundary::Open => {
            let amp = |n: f64| 8.0 * t / (n * n * PI * PI);
            converge(1, 2, |n| amp(n) * (-c * n * n).exp(), |n| amp(n) * (-c * n * n).exp())?
        }
        Boundary::Periodic => converge(1, 1, |n| (-c * n * n).exp(), |n| (-c * n * n).exp())?,
    };
    let log_sum = sum.ln();
    Ok(PartitionSum {
        log_sum,
        free_energy: beta_sigma * l - log_sum,
        terms,
        regime_ok: t >= 10.0 * l.sqrt(),
    })
}

/// Closed-form large-`T` values of the waist sums: `(4/π²) T` for open and
/// `sqrt(βσ/2π) T/√L` for periodic boundaries.
pub fn waist_partition_asymptote(beta_sigma: f64, l: f64, t: f64, bc: Boundary) -> f64 {
    match bc {
        Boundary::Open => 4.0 / (PI * PI) * t,
        Boundary::Periodic => (beta_sigma / (2.0 * PI)).sqrt() * t / l.sqrt(),
    }
}

/// Closed-form value of the pinned sum, `sqrt(2/π) ε² (βσ)^{3/2} a^{-3/2}`.
pub fn pinned_partition_asymptote(beta_sigma: f64, a: f64, epsilon: f64) -> f64 {
    (2.0 / PI).sqrt() * epsilon * epsilon * beta_sigma.powf(1.5) * a.powf(-1.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn fig4() -> FreeEnergyModel {
        FreeEnergyModel::capillary(0.1, 1024.0, 8192.0, Boundary::Periodic)
    }

    fn gcw() -> FreeEnergyModel {
        FreeEnergyModel::generalized(0.1, 1.0, 0.38, 0.56, 1024.0, 8192.0, Boundary::Periodic)
    }

    #[test]
    fn pinned_examples() {
        let m = fig4();
        assert!(close(m.f_pinned(1.0).unwrap(), 0.1, 1e-12));
        assert!(close(m.f_pinned(100.0).unwrap(), 16.907755, 1e-6));
        assert!(close(gcw().f_pinned(100.0).unwrap(), 15.754399, 1e-6));
        assert!(m.f_pinned(0.5).is_err());
    }

    #[test]
    fn waist_examples() {
        let m = fig4();
        assert!(close(m.f_waist(), 96.854823, 1e-6));
        let mut open = m;
        open.bc = Boundary::Open;
        assert!(close(m.f_waist() - open.f_waist(), 0.5 * 1024f64.ln(), 1e-12));
        let pure = FreeEnergyModel::capillary(0.0, 37.0, std::f64::consts::E, Boundary::Open);
        assert!(close(pure.f_waist(), -1.0, 1e-12));
    }

    #[test]
    fn complement_examples() {
        let m = fig4();
        let fl = m.f_pinned(1024.0).unwrap();
        let expect = neg_log_sum_exp(fl, m.f_waist());
        assert!(close(m.entropy_complement(0.0).unwrap(), expect, 1e-12));
        assert!(close(m.entropy_complement(512.0).unwrap(), 60.557487, 1e-6));
        // interior maximum above the a = L value
        let at_l = m.entropy_complement(1024.0).unwrap();
        let max = (0..=1024)
            .map(|a| m.entropy_complement(a as f64).unwrap())
            .fold(f64::MIN, f64::max);
        assert!(max > at_l);
    }

    #[test]
    fn complement_within_ln2_of_min_branch() {
        let m = fig4();
        for a in (0..=1024).step_by(7) {
            let a = a as f64;
            let s = m.entropy_complement(a).unwrap();
            let single = m.f_segment(1024.0 - a).unwrap();
            let split = m.f_segment(a).unwrap() + m.f_waist();
            let lo = single.min(split);
            assert!(s <= lo + 1e-12 && s >= lo - LN_2 - 1e-12);
        }
    }

    #[test]
    fn mutual_info_behaviour() {
        let m = fig4();
        let at0 = m.mutual_info_ar(0.0).unwrap();
        assert!(at0 < 1e-3);
        let mut prev = 0.0;
        for a in 0..=512 {
            let v = m.mutual_info_ar(a as f64).unwrap();
            assert!(v >= prev - 1e-12);
            assert!(v >= 0.0);
            prev = v;
        }
        assert!(close(m.mutual_info_ar(200.0).unwrap(), 32.331043, 1e-5));
        assert!(close(m.mutual_info_ar_asymptotic(200.0, 79.71), 24.058, 1e-9));
    }

    #[test]
    fn a_star_examples() {
        let s = fig4().a_star().unwrap();
        assert!(close(s.closed_form, 79.711926, 1e-5));
        assert!(close(s.bisection, 49.996804, 1e-5));
        let g = gcw().a_star().unwrap();
        assert!(close(g.closed_form, 69.644045, 1e-5));
        let flat = FreeEnergyModel::capillary(1e-6, 64.0, 1e12, Boundary::Periodic);
        assert!(matches!(flat.a_star(), Err(Error::Regime(_))));
    }

    #[test]
    fn late_time_examples() {
        // T e^{-βσL} = 1
        let m = FreeEnergyModel::capillary(0.01, 100.0, 1f64.exp(), Boundary::Open);
        assert!(close(m.late_time_entropy(), 0.2723414689, 1e-9));
        let inf = FreeEnergyModel::capillary(0.1, 64.0, f64::INFINITY, Boundary::Periodic);
        assert_eq!(inf.late_time_entropy(), 0.0);
        let small = FreeEnergyModel::capillary(0.1, 200.0, 100.0, Boundary::Open);
        let f = small.f_waist();
        assert!((small.late_time_entropy() - f).abs() <= 0.01 * f);
    }

    #[test]
    fn late_time_complement_limits() {
        let inf = FreeEnergyModel::capillary(0.1, 1024.0, f64::INFINITY, Boundary::Periodic);
        assert!(close(
            inf.late_time_entropy_complement(100.0).unwrap(),
            inf.f_pinned(100.0).unwrap(),
            1e-12
        ));
        assert!(close(
            inf.late_time_entropy_complement(512.0).unwrap(),
            inf.f_pinned(512.0).unwrap() - LN_2,
            1e-12
        ));
        let m = fig4();
        for a in [0.0, 10.0, 50.0, 300.0, 1000.0, 1024.0] {
            assert!(close(
                m.late_time_entropy_complement(a).unwrap(),
                m.entropy_complement(a).unwrap(),
                1e-6
            ));
        }
    }

    #[test]
    fn validation() {
        assert!(fig4().validate().is_ok());
        assert!(FreeEnergyModel::capillary(0.8, 10.0, 10.0, Boundary::Open)
            .validate()
            .is_err());
        assert!(FreeEnergyModel::generalized(0.1, 1.0, 1.2, 0.5, 10.0, 10.0, Boundary::Open)
            .validate()
            .is_err());
    }

    #[test]
    fn pinned_sum_behaviour() {
        let (bs, a) = (0.1f64, 2000.0f64);
        let t = 100.0 * a.sqrt();
        let one = pinned_partition_sum(bs, a, t, 1.0).unwrap();
        let two = pinned_partition_sum(bs, a, t, 2.0).unwrap();
        assert!(one.regime_ok);
        assert!(close(two.free_energy - one.free_energy, -2.0 * 2f64.ln(), 1e-3));
        let z = one.log_sum.exp();
        let asym = pinned_partition_asymptote(bs, a, 1.0);
        assert!((z / asym - 1.0).abs() < 0.01);
        // lattice spacing comparable to the wall's transverse spread
        let coarse = pinned_partition_sum(bs, 10.0, 1000.0, 20.0).unwrap();
        assert!(!coarse.regime_ok);
        assert!(pinned_partition_sum(bs, 0.5, 10.0, 1.0).is_err());
    }

    #[test]
    fn waist_sum_behaviour() {
        let (bs, l) = (0.1f64, 100.0f64);
        for bc in [Boundary::Open, Boundary::Periodic] {
            let crossover = waist_partition_sum(bs, l, l.sqrt(), bc).unwrap();
            assert!(crossover.log_sum.exp() < waist_partition_asymptote(bs, l, l.sqrt(), bc));
        }
        let per = waist_partition_sum(bs, l, 1e4, Boundary::Periodic).unwrap();
        let ratio = per.log_sum.exp() / waist_partition_asymptote(bs, l, 1e4, Boundary::Periodic);
        assert!((ratio - 1.0).abs() < 0.01);
        // the open sum approaches T itself
        let open = waist_partition_sum(bs, l, 1e4, Boundary::Open).unwrap();
        assert!((open.log_sum.exp() / 1e4 - 1.0).abs() < 0.01);
    }

    #[test]
    fn stable_helpers() {
        assert!(close(neg_log_sum_exp(1000.0, 1000.0), 1000.0 - LN_2, 1e-9));
        assert!(close(softplus(-800.0), 0.0, 1e-300));
        assert!(close(softplus(800.0), 800.0, 1e-9));
    }
}
