//! The extended Pareto distribution (EPD) and its shifted variant (EGPD).
//!
//! The EPD with parameters `(gamma, delta, tau)`, `tau < 0 < gamma`,
//! `delta > max(-1, 1/tau)`, has survival function
//!
//! ```text
//!     G_bar(y) = { y (1 + delta - delta y^tau) }^(-1/gamma),   y > 1,
//! ```
//!
//! and `G_bar(y) = 1` for `y <= 1`. `delta = 0` collapses it to the Pareto
//! with shape `1/gamma` for any `tau`. The EGPD is the law of `Y - 1`:
//! `H(x) = G(1 + x)`. With `tau = -1` the EGPD is a reparametrization of the
//! generalized Pareto with `sigma = gamma / (1 + delta)`.

use rand::distr::Open01;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::bisect_decreasing;
use crate::sample::Sample;

/// Validated EPD parameter triple `(gamma, delta, tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpdParams {
    gamma: f64,
    delta: f64,
    tau: f64,
}

impl EpdParams {
    /// Validates `gamma > 0`, `tau < 0` and `delta > max(-1, 1/tau)`.
    ///
    /// The lower bound on `delta` keeps the density nonnegative on the whole
    /// support (for `tau < -1` the binding constraint is `delta > 1/tau`).
    pub fn new(gamma: f64, delta: f64, tau: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParam {
                name: "gamma",
                reason: format!("requires gamma > 0, got {gamma}"),
            });
        }
        if !(tau.is_finite() && tau < 0.0) {
            return Err(Error::InvalidParam {
                name: "tau",
                reason: format!("requires tau < 0, got {tau}"),
            });
        }
        let bound = Self::delta_lower_bound(tau);
        if !(delta.is_finite() && delta > bound) {
            return Err(Error::InvalidParam {
                name: "delta",
                reason: format!("requires delta > max(-1, 1/tau) = {bound}, got {delta}"),
            });
        }
        Ok(Self { gamma, delta, tau })
    }

    /// Admissibility lower bound for `delta` at a given `tau < 0`.
    pub fn delta_lower_bound(tau: f64) -> f64 {
        (1.0 / tau).max(-1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Log of the survival function at `y > 1`.
    ///
    /// Computed as `-(ln y + ln1p(delta (1 - y^tau))) / gamma`, which stays
    /// accurate for survival probabilities down to the underflow threshold.
    fn log_sf(&self, ln_y: f64) -> f64 {
        // 1 - y^tau = -expm1(tau ln y), in [0, 1) for y >= 1
        let one_minus_ytau = -(self.tau * ln_y).exp_m1();
        -(ln_y + (self.delta * one_minus_ytau).ln_1p()) / self.gamma
    }

    /// Survival function `G_bar(y)`; 1 for `y <= 1`.
    pub fn sf(&self, y: f64) -> f64 {
        if y <= 1.0 {
            return 1.0;
        }
        self.log_sf(y.ln()).exp()
    }

    /// Distribution function `G(y)`; 0 for `y <= 1`, limit 1 as `y -> inf`.
    pub fn cdf(&self, y: f64) -> f64 {
        if y <= 1.0 {
            return 0.0;
        }
        1.0 - self.sf(y)
    }

    /// Density on the support `y > 1`.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        if y <= 1.0 {
            return Err(Error::domain(format!(
                "EPD density requires y > 1, got {y}"
            )));
        }
        let ytau = y.powf(self.tau);
        let core = y * (1.0 + self.delta - self.delta * ytau);
        let jac = 1.0 + self.delta * (1.0 - (1.0 + self.tau) * ytau);
        Ok(core.powf(-1.0 / self.gamma - 1.0) * jac / self.gamma)
    }

    /// Smallest `y >= 1` with `cdf(y) >= p`, for `p` in `[0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::domain(format!(
                "quantile requires 0 <= p < 1, got {p}"
            )));
        }
        self.quantile_from_sf(1.0 - p)
    }

    /// Inverse of the survival function: the `y` with `sf(y) = s`, `s` in `(0, 1]`.
    ///
    /// This is the primitive behind `quantile`; tail work should call it
    /// directly so that survival levels below machine epsilon of 1 are not
    /// destroyed by the `1 - p` complement.
    pub fn quantile_from_sf(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::domain(format!(
                "inverse survival requires 0 < s <= 1, got {s}"
            )));
        }
        if s == 1.0 {
            return Ok(1.0);
        }
        let target = s.ln();
        // log survival is strictly decreasing in t = ln y, from 0 at t = 0
        let h = |t: f64| self.log_sf(t) - target;
        let mut hi = 1.0;
        while h(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::Convergence(
                    "failed to bracket the survival inverse".into(),
                ));
            }
        }
        let t = bisect_decreasing(h, 0.0, hi, 1e-13)?;
        Ok(t.exp())
    }

    /// `m` i.i.d. draws by inverse-transform sampling, deterministic in `seed`.
    pub fn sample(&self, seed: u64, m: usize) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, m)
    }

    /// As [`sample`](Self::sample), drawing from a caller-provided generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, m: usize) -> Sample {
        let values = (0..m)
            .map(|_| {
                let s: f64 = rng.sample(Open01);
                self.quantile_from_sf(s)
                    .expect("survival level in (0,1) is always invertible")
            })
            .collect();
        Sample::new(values).expect("EPD support is positive")
    }

    /// EGPD distribution function `H(x) = G(1 + x)`; 0 for `x <= 0`.
    pub fn egpd_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.cdf(1.0 + x)
    }

    /// EGPD survival function `H_bar(x) = G_bar(1 + x)`; 1 for `x <= 0`.
    pub fn egpd_sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        self.sf(1.0 + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pareto1() -> EpdParams {
        EpdParams::new(1.0, 0.0, -1.0).unwrap()
    }

    #[test]
    fn construction_rejects_each_violation_distinctly() {
        match EpdParams::new(0.0, 0.0, -1.0) {
            Err(Error::InvalidParam { name: "gamma", .. }) => {}
            other => panic!("expected gamma rejection, got {other:?}"),
        }
        match EpdParams::new(1.0, 0.0, 0.5) {
            Err(Error::InvalidParam { name: "tau", .. }) => {}
            other => panic!("expected tau rejection, got {other:?}"),
        }
        // tau = -1: bound is max(-1, -1) = -1
        match EpdParams::new(1.0, -2.0, -1.0) {
            Err(Error::InvalidParam { name: "delta", .. }) => {}
            other => panic!("expected delta rejection, got {other:?}"),
        }
        // tau = -0.5: 1/tau = -2, so the bound is -1 and delta = -0.9 is fine
        assert!(EpdParams::new(1.0, -0.9, -0.5).is_ok());
        // tau = -4: bound is 1/tau = -0.25, so delta = -0.3 is inadmissible
        assert!(EpdParams::new(1.0, -0.3, -4.0).is_err());
    }

    #[test]
    fn cdf_hand_values() {
        // delta = 0 reduces to Pareto 1 - y^(-1/gamma)
        assert_eq!(pareto1().cdf(2.0), 0.5);
        assert_eq!(pareto1().cdf(1.0), 0.0);
        // direct evaluation of the closed form
        let p = EpdParams::new(0.5, 0.5, -1.0).unwrap();
        // y (1 + d - d/y) = 2 (1.5 - 0.25) = 2.5; 1 - 2.5^(-2) = 0.84
        assert!((p.cdf(2.0) - 0.84).abs() < 1e-15);
    }

    #[test]
    fn sf_hand_values() {
        let p = pareto1();
        assert!((p.sf(1e6) - 1e-6).abs() < 1e-18);
        assert_eq!(p.sf(1.0), 1.0);
        assert_eq!(p.sf(0.5), 1.0);
        let q = EpdParams::new(0.5, 0.5, -1.0).unwrap();
        assert!((q.sf(2.0) - 0.16).abs() < 1e-15);
    }

    #[test]
    fn sf_no_cancellation_deep_in_tail() {
        let p = EpdParams::new(0.25, 0.5, -1.0).unwrap();
        let s = p.sf(1e8);
        // (1e8 * 1.5)^(-4) within first order; must be a clean small number
        assert!(s > 0.0 && s < 1e-30);
        assert!((p.quantile_from_sf(s).unwrap() / 1e8 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pdf_hand_values_and_domain() {
        assert!((pareto1().pdf(2.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(pareto1().pdf(1.0).is_err());
        assert!(pareto1().pdf(0.3).is_err());
    }

    #[test]
    fn pdf_matches_central_difference_of_cdf() {
        let p = EpdParams::new(0.5, 0.5, -1.0).unwrap();
        let y = 2.0;
        let h = 1e-6;
        let fd = (p.cdf(y + h) - p.cdf(y - h)) / (2.0 * h);
        assert!((p.pdf(y).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn pdf_matches_central_difference_on_the_parameter_grid() {
        // differentiate the survival form: identical derivative, no
        // cancellation deep in the tail
        for &gamma in &[0.25, 0.5, 1.0, 2.0] {
            for &tau in &[-2.0, -1.0, -0.5] {
                for &delta in &[-0.4, 0.0, 0.5] {
                    if delta <= EpdParams::delta_lower_bound(tau) {
                        continue;
                    }
                    let p = EpdParams::new(gamma, delta, tau).unwrap();
                    for i in 0..=40 {
                        let y = 1.01 * (1e3f64 / 1.01).powf(i as f64 / 40.0);
                        let h = 1e-5 * y;
                        let fd = -(p.sf(y + h) - p.sf(y - h)) / (2.0 * h);
                        let pdf = p.pdf(y).unwrap();
                        assert!(
                            (pdf - fd).abs() < 1e-6,
                            "({gamma}, {delta}, {tau}) at y={y}: pdf {pdf} vs fd {fd}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quantile_hand_values() {
        assert_eq!(pareto1().quantile(0.0).unwrap(), 1.0);
        assert!((pareto1().quantile(0.5).unwrap() - 2.0).abs() < 1e-11);
        let p = EpdParams::new(0.5, 0.5, -1.0).unwrap();
        assert!((p.quantile(0.84).unwrap() - 2.0).abs() < 1e-9);
        assert!(p.quantile(1.0).is_err());
        assert!(p.quantile(-0.1).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_positive() {
        let p = EpdParams::new(0.5, 0.5, -1.0).unwrap();
        let a = p.sample(7, 100);
        let b = p.sample(7, 100);
        assert_eq!(a, b);
        assert!(a.values().iter().all(|&v| v > 1.0));
        let empty = p.sample(7, 0);
        assert!(empty.is_empty());
    }

    #[test]
    fn egpd_matches_shift_and_gpd_reparametrization() {
        let p = EpdParams::new(0.5, 0.25, -1.0).unwrap();
        assert_eq!(p.egpd_cdf(0.0), 0.0);
        assert_eq!(p.egpd_cdf(-1.0), 0.0);
        assert_eq!(p.egpd_cdf(1.0), p.cdf(2.0));
        // tau = -1: EGPD == GPD with sigma = gamma / (1 + delta)
        let sigma = 0.5 / 1.25;
        for i in 1..60 {
            let x = 0.1 * i as f64;
            let gpd = 1.0 - (1.0 + 0.5 * x / sigma).powf(-2.0);
            assert!(
                (p.egpd_cdf(x) - gpd).abs() < 1e-12,
                "x={x}: {} vs {gpd}",
                p.egpd_cdf(x)
            );
        }
        // shifted Pareto
        let shifted = EpdParams::new(1.0, 0.0, -1.0).unwrap();
        assert_eq!(shifted.egpd_cdf(1.0), 0.5);
    }
}
