//! Threshold-based tail statistics and parameter estimators.
//!
//! Everything here operates on the `k` largest order statistics relative to
//! the random threshold `X_{n-k:n}`:
//!
//! - [`hill`]: the Hill estimator `H = mean log(X_{n-k+i:n} / X_{n-k:n})`;
//! - [`moment_fn`]: the negative-moment statistic
//!   `E(s) = mean (X_{n-k+i:n} / X_{n-k:n})^s`, `s <= 0`;
//! - [`fit_epd`]: the simplified extended-Pareto estimators
//!   `delta = H (1-2r)(1-r)^3 r^-4 (E(r/H) - 1/(1-r))`,
//!   `gamma = H - delta r/(1-r)` with `r` a consistent estimate of the
//!   second-order parameter `rho`;
//! - [`fit_epd_score`]: the linearized-score estimators with known `tau`,
//!   solved exactly (the coupled pair reduces to a quadratic in `delta`);
//! - [`estimate_rho`]: the third-order T-ratio estimator of `rho`;
//! - [`fit_gpd_mle`]: profile maximum likelihood for the generalized Pareto
//!   fitted to absolute excesses.

use crate::error::{Error, Result};
use crate::sample::SortedSample;

/// Which EPD estimator produced a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpdMethod {
    Simplified,
    Score,
}

/// Extended-Pareto fit at one threshold.
#[derive(Debug, Clone, Copy)]
pub struct EpdFit {
    /// Estimated extreme value index (reported raw, possibly inadmissible).
    pub gamma_hat: f64,
    /// Estimated second-order perturbation at the threshold (raw).
    pub delta_hat: f64,
    /// Second-order exponent used in the moment statistic.
    pub tau_hat: f64,
    /// Second-order parameter: the input `rho` for the simplified method,
    /// the implied `tau * gamma_hat` for the score method.
    pub rho_hat: f64,
    /// Number of upper order statistics used.
    pub k: usize,
    /// The threshold `X_{n-k:n}`.
    pub threshold: f64,
    pub method: EpdMethod,
}

/// Generalized-Pareto maximum likelihood fit to the excesses over `X_{n-k:n}`.
#[derive(Debug, Clone, Copy)]
pub struct GpdFit {
    pub gamma_hat: f64,
    pub sigma_hat: f64,
    pub k: usize,
    pub threshold: f64,
    /// Log-likelihood at the optimum.
    pub loglik: f64,
}

/// Hill estimator over the `k` largest observations.
pub fn hill(s: &SortedSample, k: usize) -> Result<f64> {
    let u = s.threshold(k)?;
    let sum: f64 = s.top(k)?.iter().map(|&x| (x / u).ln()).sum();
    Ok(sum / k as f64)
}

/// Mean `t`-th power of the relative excesses, for `t <= 0`. Lies in `(0, 1]`.
pub fn moment_fn(s: &SortedSample, k: usize, t: f64) -> Result<f64> {
    if t.is_nan() || t > 0.0 {
        return Err(Error::argument(format!(
            "moment exponent must be <= 0, got {t}"
        )));
    }
    let u = s.threshold(k)?;
    let sum: f64 = s.top(k)?.iter().map(|&x| (t * (x / u).ln()).exp()).sum();
    Ok(sum / k as f64)
}

/// The simplified EPD estimators as a pure formula in the Hill statistic `h`,
/// the moment statistic `e_tau = E(rho/h)` and the second-order parameter.
///
/// Returns `(gamma_hat, delta_hat)`. At the Pareto limit
/// `e_tau = 1/(1-rho)` the correction vanishes and `gamma_hat = h`.
pub fn epd_estimates_from_stats(h: f64, e_tau: f64, rho: f64) -> (f64, f64) {
    let delta =
        h * (1.0 - 2.0 * rho) * (1.0 - rho).powi(3) * rho.powi(-4) * (e_tau - 1.0 / (1.0 - rho));
    let gamma = h - delta * rho / (1.0 - rho);
    (gamma, delta)
}

/// Simplified EPD fit at threshold level `k`, given an estimate of `rho`.
///
/// `tau` is replaced by `rho_hat / H` and the estimates are reported raw;
/// admissibility projection is the responsibility of tail evaluation.
pub fn fit_epd(s: &SortedSample, k: usize, rho_hat: f64) -> Result<EpdFit> {
    if rho_hat.is_nan() || rho_hat >= 0.0 {
        return Err(Error::argument(format!(
            "rho_hat must be negative, got {rho_hat}"
        )));
    }
    let h = hill(s, k)?;
    if h <= 0.0 {
        return Err(Error::DegenerateSample(
            "Hill statistic is zero (tied upper order statistics)".into(),
        ));
    }
    let tau_hat = rho_hat / h;
    let e_tau = moment_fn(s, k, tau_hat)?;
    let (gamma_hat, delta_hat) = epd_estimates_from_stats(h, e_tau, rho_hat);
    Ok(EpdFit {
        gamma_hat,
        delta_hat,
        tau_hat,
        rho_hat,
        k,
        threshold: s.threshold(k)?,
        method: EpdMethod::Simplified,
    })
}

/// Exact solution of the linearized score system for given statistics.
///
/// The equations are
///
/// ```text
///     gamma = h + delta (1 - e1),
///     (gamma tau - 1) e1 + 1 = D(gamma) delta,
///     D(gamma) = 1 - 2 (1 - gamma tau) e1
///              + (1 - 2 gamma tau - gamma tau^2) e2
///              - tau (1 - e1) e1,
/// ```
///
/// with `e1 = E(tau)` and `e2 = E(2 tau)`. `D` is affine in `gamma` and
/// `gamma` is affine in `delta`, so eliminating `gamma` leaves a quadratic in
/// `delta`; the root continuous in the small-`delta` limit is returned. When
/// the discriminant is negative the exact system has no real solution and the
/// one-step value `delta = N / D(h)` is used instead (same limit behaviour,
/// since `h` is itself consistent).
fn score_solution(h: f64, e1: f64, e2: f64, tau: f64) -> Result<(f64, f64)> {
    let n_num = (h * tau - 1.0) * e1 + 1.0;
    let c0 = 1.0 - 2.0 * e1 + e2 - tau * (1.0 - e1) * e1;
    let c1 = tau * (2.0 * e1 - (2.0 + tau) * e2);
    let a = c1 * (1.0 - e1);
    let b = c0 + c1 * h;

    let disc = b * b + 4.0 * a * n_num;
    let delta = if a != 0.0 && disc >= 0.0 {
        let q = -(b + b.signum() * disc.sqrt()) / 2.0;
        if q != 0.0 {
            -n_num / q
        } else {
            0.0
        }
    } else {
        if b.abs() < 1e-12 {
            return Err(Error::SingularSystem(format!(
                "score denominator D(h) = {b} below threshold"
            )));
        }
        n_num / b
    };
    let gamma = h + delta * (1.0 - e1);
    if (c0 + c1 * gamma).abs() < 1e-12 {
        return Err(Error::SingularSystem(
            "score denominator vanishes at the solution".into(),
        ));
    }
    Ok((gamma, delta))
}

/// Linearized-score EPD fit with known `tau`.
pub fn fit_epd_score(s: &SortedSample, k: usize, tau: f64) -> Result<EpdFit> {
    if tau.is_nan() || tau >= 0.0 {
        return Err(Error::argument(format!("tau must be negative, got {tau}")));
    }
    let h = hill(s, k)?;
    if h <= 0.0 {
        return Err(Error::DegenerateSample(
            "Hill statistic is zero (tied upper order statistics)".into(),
        ));
    }
    let e1 = moment_fn(s, k, tau)?;
    let e2 = moment_fn(s, k, 2.0 * tau)?;
    let (gamma_hat, delta_hat) = score_solution(h, e1, e2, tau)?;
    Ok(EpdFit {
        gamma_hat,
        delta_hat,
        tau_hat: tau,
        rho_hat: tau * gamma_hat,
        k,
        threshold: s.threshold(k)?,
        method: EpdMethod::Score,
    })
}

/// Default number of upper order statistics for second-order estimation:
/// `min(n-1, floor(n^0.995))`.
pub fn default_k_rho(n: usize) -> usize {
    ((n as f64).powf(0.995).floor() as usize).min(n - 1)
}

/// T-ratio estimator of the second-order parameter `rho`.
///
/// Built from the first three moments of the top-`k_rho` log-excesses,
/// `M_j = mean {log(X_{n-i+1:n} / X_{n-k:n})}^j`, combined into a ratio whose
/// limit is `3(1-rho)/(3-rho)`; inverting and forcing negativity gives
/// `rho_hat = -|3(T-1)/(T-3)|`, clamped to `[-20, -0.05]`. The `tuning`
/// exponent must be one of 0, 0.5 or 1 (0 selects the logarithmic variant).
pub fn estimate_rho(s: &SortedSample, k_rho: usize, tuning: f64) -> Result<f64> {
    if tuning != 0.0 && tuning != 0.5 && tuning != 1.0 {
        return Err(Error::argument(format!(
            "tuning must be one of 0, 0.5, 1, got {tuning}"
        )));
    }
    let u = s.threshold(k_rho)?;
    let (mut m1, mut m2, mut m3) = (0.0, 0.0, 0.0);
    for &x in s.top(k_rho)? {
        let l = (x / u).ln();
        m1 += l;
        m2 += l * l;
        m3 += l * l * l;
    }
    let kf = k_rho as f64;
    let (m1, m2, m3) = (m1 / kf, m2 / kf, m3 / kf);
    if m1 <= 0.0 || m2 <= 0.0 || m3 <= 0.0 {
        return Err(Error::DegenerateSample(
            "log-moment statistics vanish (constant upper order statistics)".into(),
        ));
    }

    let t_stat = if tuning == 0.0 {
        let num = m1.ln() - 0.5 * (m2 / 2.0).ln();
        let den = 0.5 * (m2 / 2.0).ln() - (m3 / 6.0).ln() / 3.0;
        num / den
    } else {
        let num = m1.powf(tuning) - (m2 / 2.0).powf(tuning / 2.0);
        let den = (m2 / 2.0).powf(tuning / 2.0) - (m3 / 6.0).powf(tuning / 3.0);
        num / den
    };
    if !t_stat.is_finite() {
        return Err(Error::EstimationFailed(format!(
            "T ratio undefined (T = {t_stat})"
        )));
    }
    let rho = -(3.0 * (t_stat - 1.0) / (t_stat - 3.0)).abs();
    if rho.is_nan() {
        return Err(Error::EstimationFailed("rho ratio is NaN".into()));
    }
    Ok(rho.clamp(-20.0, -0.05))
}

/// GPD maximum likelihood over the excesses `X_{n-k+i:n} - X_{n-k:n}`.
///
/// The two-parameter likelihood is profiled over the slope `theta =
/// gamma/sigma`: given `theta`, `gamma(theta) = mean log(1 + theta x_i)` and
/// `sigma = gamma/theta`, so the profile log-likelihood is
/// `-k {log sigma + gamma + 1}`. The profile is scanned on a sign-split
/// logarithmic grid over the bracket where the implied `gamma` stays in
/// `[-0.45, 10]`, then refined by golden-section search. The constraint
/// `1 + gamma x / sigma > 0` holds on the whole bracket by construction.
pub fn fit_gpd_mle(s: &SortedSample, k: usize) -> Result<GpdFit> {
    if k < 2 {
        return Err(Error::argument(format!("GPD fit requires k >= 2, got {k}")));
    }
    let u = s.threshold(k)?;
    let excesses: Vec<f64> = s.top(k)?.iter().map(|&x| x - u).collect();
    if excesses.iter().all(|&e| e == excesses[0]) {
        return Err(Error::DegenerateSample("all excesses are equal".into()));
    }
    let e_max = *excesses.last().expect("k >= 2");
    let e_mean = excesses.iter().sum::<f64>() / k as f64;

    const GAMMA_LO: f64 = -0.45;
    const GAMMA_HI: f64 = 10.0;

    let gamma_of = |theta: f64| -> f64 {
        if theta == 0.0 {
            0.0
        } else {
            excesses.iter().map(|&e| (theta * e).ln_1p()).sum::<f64>() / k as f64
        }
    };
    let profile = |theta: f64| -> f64 {
        let g = gamma_of(theta);
        if !(GAMMA_LO..=GAMMA_HI).contains(&g) {
            return f64::NEG_INFINITY;
        }
        let sigma = if theta == 0.0 { e_mean } else { g / theta };
        if !(sigma.is_finite() && sigma > 0.0) {
            return f64::NEG_INFINITY;
        }
        -(k as f64) * (sigma.ln() + g + 1.0)
    };

    // feasibility limit: keep 1 + theta * e_max strictly positive
    let theta_min = -(1.0 - 1e-10) / e_max;
    let mut theta_hi = 1.0 / e_mean;
    let mut guard = 0;
    while gamma_of(theta_hi) < GAMMA_HI {
        theta_hi *= 2.0;
        guard += 1;
        if guard > 400 {
            return Err(Error::Convergence(
                "failed to bracket the GPD profile".into(),
            ));
        }
    }

    // sign-split logarithmic scan of the profile
    let m_neg = 64usize;
    let m_pos = 128usize;
    let mut grid = Vec::with_capacity(m_neg + m_pos + 1);
    for j in 0..m_neg {
        grid.push(theta_min * (10.0_f64).powf(-12.0 * j as f64 / (m_neg - 1) as f64));
    }
    grid.push(0.0);
    for j in 0..m_pos {
        grid.push(theta_hi * (10.0_f64).powf(-16.0 * (m_pos - 1 - j) as f64 / (m_pos - 1) as f64));
    }

    let mut best = usize::MAX;
    let mut best_ll = f64::NEG_INFINITY;
    for (i, &theta) in grid.iter().enumerate() {
        let ll = profile(theta);
        if ll > best_ll {
            best_ll = ll;
            best = i;
        }
    }
    if best == usize::MAX {
        return Err(Error::Convergence(
            "GPD profile likelihood is degenerate".into(),
        ));
    }

    // golden-section refinement around the best grid point
    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(grid.len() - 1)];
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = profile(x1);
    let mut f2 = profile(x2);
    for _ in 0..120 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = profile(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = profile(x2);
        }
    }
    let refined = if f1 >= f2 { x1 } else { x2 };
    let refined_ll = profile(refined);
    let (theta, ll) = if refined_ll >= best_ll {
        (refined, refined_ll)
    } else {
        (grid[best], best_ll)
    };

    let gamma_hat = gamma_of(theta);
    let sigma_hat = if theta == 0.0 {
        e_mean
    } else {
        gamma_hat / theta
    };
    if !(sigma_hat.is_finite() && sigma_hat > 0.0) || !ll.is_finite() {
        return Err(Error::Convergence(
            "GPD profile optimum is not interior".into(),
        ));
    }
    Ok(GpdFit {
        gamma_hat,
        sigma_hat,
        k,
        threshold: u,
        loglik: ll,
    })
}
