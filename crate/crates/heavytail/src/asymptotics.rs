//! Closed-form asymptotic laws of the threshold estimators, used as Monte
//! Carlo validation targets and overlay curves.
//!
//! All laws describe `sqrt(k) (estimator - gamma)` in the intermediate-`k`
//! regime indexed by `lambda = lim sqrt(k) a(n/k)`; `lambda` is an input here
//! (known only in simulation), never estimated.

use crate::distributions::ReferenceModel;
use crate::error::{Error, Result};

/// Mean and variance of a normalized estimator's limiting normal law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymLaw {
    pub mean: f64,
    pub variance: f64,
}

/// Limit law of the EPD estimator of `gamma`: centered for every `lambda`,
/// with variance `gamma^2 (1-rho)^2 / rho^2`.
pub fn epd_gamma_law(gamma: f64, rho: f64) -> AsymLaw {
    AsymLaw {
        mean: 0.0,
        variance: gamma * gamma * (1.0 - rho).powi(2) / (rho * rho),
    }
}

/// Bias coefficient `b(gamma, rho)` of the GPD maximum likelihood estimator.
fn gpd_bias_coeff(gamma: f64, rho: f64) -> f64 {
    rho * (1.0 + gamma) * (gamma + rho) / (gamma * (1.0 - rho) * (1.0 + gamma - rho))
}

/// Limit law of the GPD maximum likelihood estimator of `gamma`:
/// mean `lambda b(gamma, rho)`, variance `(1 + gamma)^2`. The mean vanishes
/// at `rho = -gamma`, where the law coincides with the EPD one.
pub fn gpd_gamma_law(gamma: f64, rho: f64, lambda: f64) -> AsymLaw {
    AsymLaw {
        mean: lambda * gpd_bias_coeff(gamma, rho),
        variance: (1.0 + gamma) * (1.0 + gamma),
    }
}

/// Limit law of the Hill estimator: mean `lambda rho / (1-rho)`, variance
/// `gamma^2` (the smallest of the three, at the price of the bias).
pub fn hill_law(gamma: f64, rho: f64, lambda: f64) -> AsymLaw {
    AsymLaw {
        mean: lambda * rho / (1.0 - rho),
        variance: gamma * gamma,
    }
}

/// Covariance matrix of the limiting trivariate normal law of
/// `(sqrt(k)(gamma_hat - gamma), sqrt(k)(delta_hat - delta_n), Z_{k,n})`:
///
/// ```text
///     [  g^2 (1-r)^2/r^2        -g^2 (1-2r)(1-r)/r^3    0 ]
///     [ -g^2 (1-2r)(1-r)/r^3     g^2 (1-2r)(1-r)^2/r^4  0 ]
///     [  0                       0                      1 ]
/// ```
pub fn epd_joint_covariance(gamma: f64, rho: f64) -> [[f64; 3]; 3] {
    let g2 = gamma * gamma;
    let s11 = g2 * (1.0 - rho).powi(2) / rho.powi(2);
    let s12 = -g2 * (1.0 - 2.0 * rho) * (1.0 - rho) / rho.powi(3);
    let s22 = g2 * (1.0 - 2.0 * rho) * (1.0 - rho).powi(2) / rho.powi(4);
    [[s11, s12, 0.0], [s12, s22, 0.0], [0.0, 0.0, 1.0]]
}

/// First and second moments of the limiting tail empirical process
/// `(Gamma, E(s))` at exponents `s1, s2 <= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailMoments {
    /// `E[E(s1)] = lambda s1 rho / ((1 - s1 g - rho)(1 - s1 g))`
    pub mean_e_s1: f64,
    /// `cov(E(s1), E(s2)) = s1 s2 g^2 / ((1 - s1 g - s2 g)(1 - s1 g)(1 - s2 g))`
    pub cov_e: f64,
    /// `cov(Gamma, E(s1)) = s1 g^2 / (1 - s1 g)^2`
    pub cov_gamma_e: f64,
    /// `var(Gamma) = g^2`
    pub var_gamma: f64,
    /// `E[Gamma] = lambda rho / (1 - rho)`
    pub mean_gamma: f64,
}

/// Moments of the limiting Gaussian process behind the threshold statistics.
///
/// Requires `s1, s2 <= 0` and the poles `1 - s g - rho` and `1 - s1 g - s2 g`
/// to stay positive.
pub fn tail_empirical_moments(
    gamma: f64,
    rho: f64,
    lambda: f64,
    s1: f64,
    s2: f64,
) -> Result<TailMoments> {
    if s1 > 0.0 || s2 > 0.0 {
        return Err(Error::argument(format!(
            "moment exponents must be <= 0, got s1={s1}, s2={s2}"
        )));
    }
    let pole = 1.0 - s1 * gamma - s2 * gamma;
    if pole <= 0.0 {
        return Err(Error::domain(format!(
            "joint pole 1 - s1 g - s2 g = {pole} must be positive"
        )));
    }
    if 1.0 - s1 * gamma - rho <= 0.0 {
        return Err(Error::domain(format!(
            "pole 1 - s1 g - rho = {} must be positive",
            1.0 - s1 * gamma - rho
        )));
    }
    let g2 = gamma * gamma;
    let d1 = 1.0 - s1 * gamma;
    let d2 = 1.0 - s2 * gamma;
    Ok(TailMoments {
        mean_e_s1: lambda * s1 * rho / ((1.0 - s1 * gamma - rho) * d1),
        cov_e: s1 * s2 * g2 / (pole * d1 * d2),
        cov_gamma_e: s1 * g2 / (d1 * d1),
        var_gamma: g2,
        mean_gamma: lambda * rho / (1.0 - rho),
    })
}

/// Numeric stand-in for `lambda` at a concrete `(model, n, k)`:
/// `sqrt(k) * delta(U(n/k))` with `U(n/k)` approximated by the exact
/// `1 - k/n` quantile. Approximate by construction (the auxiliary function
/// `a` only matches `delta circ U` to first order); intended for overlays.
pub fn lambda_approx(model: &ReferenceModel, n: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::argument(format!(
            "lambda approximation requires 1 <= k < n, got k={k}, n={n}"
        )));
    }
    let u = model.quantile(1.0 - k as f64 / n as f64)?;
    Ok((k as f64).sqrt() * model.delta(u)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variance_anchor_values() {
        // Student-t(4): gamma = 1/4, rho = -1/2
        assert!((epd_gamma_law(0.25, -0.5).variance - 9.0 / 16.0).abs() < 1e-15);
        assert!((hill_law(0.25, -0.5, 1.0).variance - 1.0 / 16.0).abs() < 1e-15);
        assert!((gpd_gamma_law(0.25, -0.5, 1.0).variance - 25.0 / 16.0).abs() < 1e-15);
        // Frechet(1): gamma = 1, rho = -1
        assert!((epd_gamma_law(1.0, -1.0).variance - 4.0).abs() < 1e-15);
        // Pareto mixture: gamma = 1/2, rho = -1
        assert!((epd_gamma_law(0.5, -1.0).variance - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gpd_law_mean_structure() {
        // b(0.25, -0.5) by hand
        let law = gpd_gamma_law(0.25, -0.5, 1.0);
        assert!((law.mean - 0.238095238095238).abs() < 1e-12);
        // mean vanishes exactly at rho = -gamma, for any lambda
        for &g in &[0.25, 0.5, 1.0, 2.0] {
            assert_eq!(gpd_gamma_law(g, -g, 3.7).mean, 0.0);
        }
        // sign test across a grid: zero iff rho = -gamma
        for &g in &[0.25, 0.5, 1.0, 2.0] {
            for &r in &[-2.0, -1.0, -0.5, -0.1] {
                let m = gpd_gamma_law(g, r, 1.0).mean;
                if (r + g).abs() > 1e-12 {
                    assert!(m != 0.0, "mean should not vanish at ({g}, {r})");
                }
            }
        }
    }

    #[test]
    fn hill_law_hand_values() {
        assert_eq!(hill_law(0.8, -1.0, 0.0).mean, 0.0);
        assert!((hill_law(1.0, -1.0, 1.0).mean - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn sigma_matrix_entries() {
        let s = epd_joint_covariance(0.25, -0.5);
        assert_eq!(s[0][0], 0.5625);
        let s = epd_joint_covariance(1.0, -1.0);
        assert!((s[0][1] - 6.0).abs() < 1e-15);
        assert_eq!(s[0][1], s[1][0]);
        assert_eq!(s[2][2], 1.0);
        assert_eq!(s[0][2], 0.0);
        assert_eq!(s[1][2], 0.0);
    }

    #[test]
    fn sigma_matrix_positive_semidefinite_on_grid() {
        for &g in &[0.25, 0.5, 1.0, 2.0] {
            for &r in &[-2.0, -1.0, -0.5, -0.1] {
                let s = epd_joint_covariance(g, r);
                // 2x2 leading block: diagonal positive, determinant nonnegative
                assert!(s[0][0] > 0.0);
                let det = s[0][0] * s[1][1] - s[0][1] * s[0][1];
                assert!(det >= -1e-9 * s[0][0] * s[1][1], "det {det} at ({g}, {r})");
            }
        }
    }

    #[test]
    fn tail_moments_hand_values() {
        // s = 0 annihilates everything that involves E(s)
        let m = tail_empirical_moments(1.0, -1.0, 2.0, 0.0, 0.0).unwrap();
        assert_eq!(m.mean_e_s1, 0.0);
        assert_eq!(m.cov_e, 0.0);
        assert_eq!(m.cov_gamma_e, 0.0);

        // gamma = 1, lambda = 0, s = -1: cov(Gamma, E(-1)) = -1/4
        let m = tail_empirical_moments(1.0, -1.0, 0.0, -1.0, -1.0).unwrap();
        assert!((m.cov_gamma_e - (-0.25)).abs() < 1e-15);
        assert_eq!(m.mean_gamma, 0.0);
        // var E(-1) = 1/12 at gamma = 1
        assert!((m.cov_e - 1.0 / 12.0).abs() < 1e-15);

        // pole rejection
        assert!(tail_empirical_moments(1.0, -1.0, 0.0, -0.4, 0.0).is_ok());
        assert!(tail_empirical_moments(2.0, -0.1, 0.0, -1.0, -1.0).is_ok());
        assert!(tail_empirical_moments(1.0, -1.0, 0.0, 0.5, 0.0).is_err());
    }

    /// Re-derive the Sigma matrix through the linear representation of the
    /// estimators in `(Gamma, E(tau))` and the tail-process moments; any
    /// transcription slip in either route would break the agreement.
    ///
    /// The limits are
    ///   sqrt(k)(gamma_hat - gamma) -> A {Gamma - g (1-2r)/r E(tau)},  A = (1-r)^2/r^2
    ///   sqrt(k)(delta_hat - delta) -> B {-Gamma + g (1-r)^2/r E(tau)}, B = (1-2r)(1-r)/r^3
    /// with s = tau = r/g in the tail process.
    #[test]
    fn sigma_matrix_matches_tail_process_route() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut uniform = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let g = 0.1 + 2.9 * uniform();
            let r = -(0.05 + 2.45 * uniform());
            let tau = r / g;
            let m = tail_empirical_moments(g, r, 0.0, tau, tau).unwrap();
            let (var_gam, var_e, cov_ge) = (m.var_gamma, m.cov_e, m.cov_gamma_e);

            let a = (1.0 - r).powi(2) / (r * r);
            let ca = -g * (1.0 - 2.0 * r) / r; // coefficient of E(tau) inside A
            let b = (1.0 - 2.0 * r) * (1.0 - r) / r.powi(3);
            let cb = g * (1.0 - r).powi(2) / r;

            let v11 = a * a * (var_gam + ca * ca * var_e + 2.0 * ca * cov_ge);
            let v22 = b * b * (var_gam + cb * cb * var_e - 2.0 * cb * cov_ge);
            let v12 = a * b * (-var_gam + ca * cb * var_e + (cb - ca) * cov_ge);

            let s = epd_joint_covariance(g, r);
            assert!(
                (v11 - s[0][0]).abs() < 1e-12 * s[0][0].abs().max(1.0),
                "S11 at ({g},{r})"
            );
            assert!(
                (v22 - s[1][1]).abs() < 1e-12 * s[1][1].abs().max(1.0),
                "S22 at ({g},{r})"
            );
            assert!(
                (v12 - s[0][1]).abs() < 1e-12 * s[0][1].abs().max(1.0),
                "S12 at ({g},{r})"
            );
        }
    }

    /// The same route must reproduce the *means*: the gamma component is
    /// centered for every lambda and the delta component has mean lambda.
    #[test]
    fn limit_means_from_tail_process_route() {
        for (g, r, lambda) in [(0.5, -1.0, 2.0), (1.0, -0.5, -1.3), (2.0, -2.0, 0.7)] {
            let tau = r / g;
            let m = tail_empirical_moments(g, r, lambda, tau, tau).unwrap();
            let a = (1.0 - r).powi(2) / (r * r);
            let ca = -g * (1.0 - 2.0 * r) / r;
            let b = (1.0 - 2.0 * r) * (1.0 - r) / r.powi(3);
            let cb = g * (1.0 - r).powi(2) / r;
            let mean_gamma_comp = a * (m.mean_gamma + ca * m.mean_e_s1);
            let mean_delta_comp = b * (-m.mean_gamma + cb * m.mean_e_s1);
            assert!(
                mean_gamma_comp.abs() < 1e-12,
                "gamma mean {mean_gamma_comp}"
            );
            assert!(
                (mean_delta_comp - lambda).abs() < 1e-12,
                "delta mean {mean_delta_comp}"
            );
        }
    }

    #[test]
    fn lambda_approx_basics() {
        let m = ReferenceModel::pareto_mixture(2.0, 0.0).unwrap();
        // exact Pareto: delta = 0 everywhere
        assert_eq!(lambda_approx(&m, 1000, 100).unwrap(), 0.0);
        let m = ReferenceModel::frechet(1.0).unwrap();
        let l = lambda_approx(&m, 1000, 100).unwrap();
        assert!(l < 0.0, "Frechet lambda should be negative, got {l}");
        let t = ReferenceModel::student_t(4.0).unwrap();
        assert!(lambda_approx(&t, 1000, 100).is_err());
    }
}
