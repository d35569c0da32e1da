//! Tail probability estimation, extreme quantiles and the asymptotic
//! confidence intervals.
//!
//! The fitted extended-Pareto model at threshold `X_{n-k:n}` estimates a tail
//! probability beyond the threshold as
//!
//! ```text
//!     p_hat = (k/n) G_bar_{gamma,delta,tau}(x / X_{n-k:n}),
//! ```
//!
//! which reduces to the Weissman extrapolation `(k/n) (x/X_{n-k:n})^(-1/gamma)`
//! when `delta = 0`. Confidence intervals come from the limiting normal laws:
//! `gamma_hat` has standard error `gamma (1-rho)/|rho| / sqrt(k)` and the
//! relative error of `p_hat` has variance `sigma^2(q, rho)/k` with
//! `q = n p / k`.

use crate::distributions::EpdParams;
use crate::error::{Error, Result};
use crate::estimators::EpdFit;
use crate::math::z_upper;

/// How a tail probability was extrapolated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    Epd,
    Weissman,
}

/// A tail probability estimate at level `x`.
#[derive(Debug, Clone, Copy)]
pub struct TailEstimate {
    pub p_hat: f64,
    /// Relative exceedance level `n * p_hat / k`.
    pub q_hat: f64,
    pub method: TailMethod,
    /// Confidence bounds, when attached via [`ci_tail_prob`].
    pub ci: Option<(f64, f64)>,
    pub k: usize,
    pub n: usize,
    /// Query level.
    pub x: f64,
    /// Set when the raw parameter estimates had to be projected into the
    /// admissible set before evaluating the survival function.
    pub projected: bool,
    /// Set when the lower confidence bound was floored at zero.
    pub ci_floored: bool,
}

impl TailEstimate {
    /// Attach the asymptotic confidence interval at level `1 - alpha`,
    /// computed from this estimate's `q_hat` and the given `rho_hat`.
    pub fn with_ci(mut self, rho_hat: f64, alpha: f64) -> Result<TailEstimate> {
        let ci = ci_tail_prob(self.p_hat, self.q_hat, rho_hat, self.k, alpha)?;
        self.ci = Some((ci.low, ci.high));
        self.ci_floored = ci.floored;
        Ok(self)
    }
}

/// Confidence interval for a tail probability.
#[derive(Debug, Clone, Copy)]
pub struct TailCi {
    pub low: f64,
    pub high: f64,
    /// The lower bound went negative and was floored at zero.
    pub floored: bool,
}

const PROJECTION_MARGIN: f64 = 1e-9;

/// Projects raw `(gamma, delta, tau)` estimates into the admissible EPD set.
///
/// Small-sample fits can leave the parameter space; evaluation clamps
/// `delta` into `(max(-1, 1/tau) + margin, inf)` and, in pathological cases,
/// `gamma` and `tau` away from zero. Returns the projected parameters and
/// whether anything moved.
pub fn project_admissible(gamma: f64, delta: f64, tau: f64) -> (EpdParams, bool) {
    let mut moved = false;
    let g = if gamma > PROJECTION_MARGIN {
        gamma
    } else {
        moved = true;
        PROJECTION_MARGIN
    };
    let t = if tau < -PROJECTION_MARGIN {
        tau
    } else {
        moved = true;
        -PROJECTION_MARGIN
    };
    let lo = EpdParams::delta_lower_bound(t) + PROJECTION_MARGIN;
    let d = if delta > lo {
        delta
    } else {
        moved = true;
        lo
    };
    let params = EpdParams::new(g, d, t).expect("projection lands in the admissible set");
    (params, moved)
}

/// EPD tail probability estimate at `x` above the fitted threshold.
pub fn tail_prob_epd(fit: &EpdFit, n: usize, x: f64) -> Result<TailEstimate> {
    if x.is_nan() || x <= fit.threshold {
        return Err(Error::domain(format!(
            "x = {x} must exceed the threshold {} (use the empirical CDF below it)",
            fit.threshold
        )));
    }
    let (params, projected) = project_admissible(fit.gamma_hat, fit.delta_hat, fit.tau_hat);
    let kn = fit.k as f64 / n as f64;
    let p_hat = kn * params.sf(x / fit.threshold);
    Ok(TailEstimate {
        p_hat,
        q_hat: p_hat / kn,
        method: TailMethod::Epd,
        ci: None,
        k: fit.k,
        n,
        x,
        projected,
        ci_floored: false,
    })
}

/// Weissman (Pareto extrapolation) tail probability estimate.
pub fn tail_prob_weissman(
    gamma_hat: f64,
    k: usize,
    n: usize,
    threshold: f64,
    x: f64,
) -> Result<TailEstimate> {
    if gamma_hat.is_nan() || gamma_hat <= 0.0 {
        return Err(Error::argument(format!(
            "Weissman extrapolation requires gamma_hat > 0, got {gamma_hat}"
        )));
    }
    if x.is_nan() || x < threshold {
        return Err(Error::domain(format!(
            "x = {x} must not lie below the threshold {threshold}"
        )));
    }
    let kn = k as f64 / n as f64;
    // log-space evaluation, the exact same path the EPD survival takes at
    // delta = 0, so the two estimators coincide bitwise there
    let p_hat = kn * (-(x / threshold).ln() / gamma_hat).exp();
    Ok(TailEstimate {
        p_hat,
        q_hat: p_hat / kn,
        method: TailMethod::Weissman,
        ci: None,
        k,
        n,
        x,
        projected: false,
        ci_floored: false,
    })
}

/// Extreme quantile: the level `x` whose EPD tail probability equals `p`.
///
/// Requires `0 < p < k/n`; inverts the projected survival function, so the
/// round trip through [`tail_prob_epd`] holds to the solver tolerance.
pub fn extreme_quantile(fit: &EpdFit, n: usize, p: f64) -> Result<f64> {
    let kn = fit.k as f64 / n as f64;
    if !(p > 0.0 && p < kn) {
        return Err(Error::domain(format!(
            "extreme quantile requires 0 < p < k/n = {kn}, got {p}"
        )));
    }
    let (params, _) = project_admissible(fit.gamma_hat, fit.delta_hat, fit.tau_hat);
    let y = params.quantile_from_sf(p / kn)?;
    Ok(fit.threshold * y)
}

/// Asymptotic confidence interval for the extreme value index: at level
/// `1 - alpha`, `gamma_hat (1 ± (1-rho)/rho * z/sqrt(k))` with the minus sign
/// giving the upper bound (the factor is negative).
pub fn ci_gamma(gamma_hat: f64, rho_hat: f64, k: usize, alpha: f64) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::argument("k must be positive"));
    }
    if rho_hat.is_nan() || rho_hat >= 0.0 {
        return Err(Error::argument(format!(
            "rho_hat must be negative, got {rho_hat}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::argument(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let z = z_upper(alpha);
    let spread = (1.0 - rho_hat) / rho_hat * z / (k as f64).sqrt();
    Ok((gamma_hat * (1.0 + spread), gamma_hat * (1.0 - spread)))
}

/// Asymptotic variance `sigma^2(q, rho)` of the normalized relative error of
/// the EPD tail probability estimator, for `q` in `(0, 1]`:
///
/// ```text
///     sigma^2 = (log q)^2 (1-rho)^2/rho^2
///             + ((1-q^-rho)/rho)^2 (1-2rho)(1-rho)^2/rho^2
///             - 2 log(q) (1-q^-rho)/rho * (1-2rho)(1-rho)/rho^2
///             + 1.
/// ```
///
/// Equals 1 at `q = 1` and grows as `q` decreases.
pub fn asymp_var_tailprob(q: f64, rho: f64) -> Result<f64> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1], got {q}")));
    }
    if rho.is_nan() || rho >= 0.0 {
        return Err(Error::argument(format!("rho must be negative, got {rho}")));
    }
    let lq = q.ln();
    let a = (1.0 - rho) / rho;
    let b = (1.0 - q.powf(-rho)) / rho;
    let v = lq * lq * a * a + b * b * (1.0 - 2.0 * rho) * (1.0 - rho).powi(2) / (rho * rho)
        - 2.0 * lq * b * (1.0 - 2.0 * rho) * (1.0 - rho) / (rho * rho)
        + 1.0;
    Ok(v)
}

/// Asymptotic confidence interval for a tail probability at level `1 - alpha`:
/// `p_hat (1 ± sigma(q_hat, rho_hat) z / sqrt(k))`, lower bound floored at 0.
pub fn ci_tail_prob(p_hat: f64, q_hat: f64, rho_hat: f64, k: usize, alpha: f64) -> Result<TailCi> {
    if q_hat > 1.0 {
        return Err(Error::domain(format!(
            "q_hat = {q_hat} > 1: x lies below the threshold regime"
        )));
    }
    if k == 0 {
        return Err(Error::argument("k must be positive"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::argument(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let sigma = asymp_var_tailprob(q_hat, rho_hat)?.sqrt();
    let half = sigma * z_upper(alpha) / (k as f64).sqrt();
    let raw_low = p_hat * (1.0 - half);
    let floored = raw_low < 0.0;
    Ok(TailCi {
        low: raw_low.max(0.0),
        high: p_hat * (1.0 + half),
        floored,
    })
}
