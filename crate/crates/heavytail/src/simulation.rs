//! Monte Carlo comparison harness, per-sample trajectory tables, the oracle
//! exceedance statistic and the excess-approximation rate check.
//!
//! Replications are mutually independent: replication `r` draws from an
//! independent ChaCha substream derived from `(seed, r)`, so the result is
//! bit-identical whatever the parallelism degree. With the `parallel` feature
//! (default) replications run on the rayon pool; [`run_monte_carlo_serial`]
//! is always available and produces the identical summary.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::asymptotics::{epd_gamma_law, gpd_gamma_law, hill_law, lambda_approx};
use crate::distributions::{EpdParams, ReferenceModel};
use crate::error::{Error, Result};
use crate::estimators::{default_k_rho, estimate_rho, fit_epd, fit_gpd_mle, hill, GpdFit};
use crate::sample::{Sample, SortedSample};
use crate::tail::{ci_gamma, tail_prob_epd, tail_prob_weissman};

/// How the second-order parameter is obtained for EPD fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoMode {
    /// T-ratio estimation once per sample; `k_rho = None` selects the default
    /// `min(n-1, floor(n^0.995))`.
    Estimated { k_rho: Option<usize>, tuning: f64 },
    /// A fixed negative constant (misspecification effects are then visible
    /// to the caller).
    Fixed(f64),
}

impl RhoMode {
    pub fn estimated_default() -> Self {
        RhoMode::Estimated {
            k_rho: None,
            tuning: 0.0,
        }
    }
}

/// Resolve the second-order parameter for one sample.
pub fn resolve_rho(s: &SortedSample, mode: &RhoMode) -> Result<f64> {
    match *mode {
        RhoMode::Fixed(v) => {
            if v < 0.0 {
                Ok(v)
            } else {
                Err(Error::argument(format!(
                    "fixed rho must be negative, got {v}"
                )))
            }
        }
        RhoMode::Estimated { k_rho, tuning } => {
            let k = k_rho.unwrap_or_else(|| default_k_rho(s.n()));
            estimate_rho(s, k, tuning)
        }
    }
}

/// Estimators the harness can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorKind {
    Hill,
    Gpd,
    Epd,
}

impl EstimatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::Hill => "hill",
            EstimatorKind::Gpd => "gpd",
            EstimatorKind::Epd => "epd",
        }
    }
}

/// Monte Carlo experiment configuration.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub model: ReferenceModel,
    pub n: usize,
    pub reps: usize,
    pub k_grid: Vec<usize>,
    pub estimators: Vec<EstimatorKind>,
    pub seed: u64,
    pub rho_mode: RhoMode,
}

impl McConfig {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::argument(format!("n must be >= 2, got {}", self.n)));
        }
        if self.reps == 0 {
            return Err(Error::argument("reps must be >= 1"));
        }
        if self.k_grid.is_empty() {
            return Err(Error::argument("k grid must be nonempty"));
        }
        for &k in &self.k_grid {
            if k == 0 || k > self.n - 1 {
                return Err(Error::argument(format!(
                    "k grid values must satisfy 1 <= k <= n-1, got k={k}, n={}",
                    self.n
                )));
            }
        }
        if self.estimators.is_empty() {
            return Err(Error::argument("estimator set must be nonempty"));
        }
        Ok(())
    }
}

/// One summary cell: the Monte Carlo moments of an estimator at one `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCell {
    pub estimator: EstimatorKind,
    pub k: usize,
    /// `mean(gamma_hat) - gamma` over the successful replications.
    pub bias: f64,
    /// Population variance over the successful replications.
    pub variance: f64,
    /// Exactly `bias^2 + variance`.
    pub mse: f64,
    pub fail_count: usize,
    /// More than 10% of the replications failed at this `k`.
    pub flagged: bool,
    /// Asymptotic variance of `sqrt(k)(gamma_hat - gamma)` (constant in `k`;
    /// compare with `k * variance`). NaN when the model has no second-order
    /// constants.
    pub theory_var: f64,
    /// Approximate raw-scale asymptotic bias (compare with `bias` directly).
    /// NaN when the model's deviation function is unavailable.
    pub theory_bias: f64,
}

/// Monte Carlo summary: one cell per (estimator, k).
#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub cells: Vec<McCell>,
}

impl McSummary {
    pub fn cell(&self, estimator: EstimatorKind, k: usize) -> Option<&McCell> {
        self.cells
            .iter()
            .find(|c| c.estimator == estimator && c.k == k)
    }
}

fn one_rep(cfg: &McConfig, r: u64) -> Vec<Option<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // stream 0 is reserved for the plain `sample(seed, n)` convenience path
    rng.set_stream(r + 1);
    let sample = cfg.model.sample_with(&mut rng, cfg.n);
    let sorted = SortedSample::from_sample(&sample).expect("model draws are positive and n >= 2");
    // estimation failures fall back to the fixed default rather than killing
    // the replication
    let rho = resolve_rho(&sorted, &cfg.rho_mode).unwrap_or(-1.0);

    let mut out = Vec::with_capacity(cfg.k_grid.len() * cfg.estimators.len());
    for &k in &cfg.k_grid {
        for est in &cfg.estimators {
            let value = match est {
                EstimatorKind::Hill => hill(&sorted, k).ok(),
                EstimatorKind::Epd => fit_epd(&sorted, k, rho).ok().map(|f| f.gamma_hat),
                EstimatorKind::Gpd => fit_gpd_mle(&sorted, k).ok().map(|f| f.gamma_hat),
            };
            out.push(value.filter(|v| v.is_finite()));
        }
    }
    out
}

fn aggregate(cfg: &McConfig, per_rep: Vec<Vec<Option<f64>>>) -> McSummary {
    let true_gamma = cfg.model.true_gamma();
    let true_rho = cfg.model.true_rho();
    let n_est = cfg.estimators.len();

    let mut cells = Vec::with_capacity(cfg.k_grid.len() * n_est);
    for (e_idx, &est) in cfg.estimators.iter().enumerate() {
        for (k_idx, &k) in cfg.k_grid.iter().enumerate() {
            let slot = k_idx * n_est + e_idx;
            let mut count = 0usize;
            let mut sum = 0.0;
            for rep in &per_rep {
                if let Some(v) = rep[slot] {
                    count += 1;
                    sum += v;
                }
            }
            let fail_count = cfg.reps - count;
            let (bias, variance) = if count > 0 {
                let mean = sum / count as f64;
                let mut ss = 0.0;
                for rep in &per_rep {
                    if let Some(v) = rep[slot] {
                        let d = v - mean;
                        ss += d * d;
                    }
                }
                (mean - true_gamma, ss / count as f64)
            } else {
                (f64::NAN, f64::NAN)
            };

            let sqrt_k = (k as f64).sqrt();
            let lambda = lambda_approx(&cfg.model, cfg.n, k).ok();
            let (theory_var, theory_bias) = match true_rho {
                None => (f64::NAN, f64::NAN),
                Some(rho) => match est {
                    EstimatorKind::Hill => (
                        hill_law(true_gamma, rho, 0.0).variance,
                        lambda
                            .map(|l| hill_law(true_gamma, rho, l).mean / sqrt_k)
                            .unwrap_or(f64::NAN),
                    ),
                    EstimatorKind::Epd => (epd_gamma_law(true_gamma, rho).variance, 0.0),
                    EstimatorKind::Gpd => (
                        gpd_gamma_law(true_gamma, rho, 0.0).variance,
                        lambda
                            .map(|l| gpd_gamma_law(true_gamma, rho, l).mean / sqrt_k)
                            .unwrap_or(f64::NAN),
                    ),
                },
            };

            cells.push(McCell {
                estimator: est,
                k,
                bias,
                variance,
                mse: bias * bias + variance,
                fail_count,
                flagged: fail_count * 10 > cfg.reps,
                theory_var,
                theory_bias,
            });
        }
    }
    McSummary { cells }
}

/// Run the Monte Carlo experiment, parallelizing replications when the
/// `parallel` feature is enabled. Bit-identical to the serial runner.
pub fn run_monte_carlo(cfg: &McConfig) -> Result<McSummary> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    let per_rep: Vec<Vec<Option<f64>>> = (0..cfg.reps as u64)
        .into_par_iter()
        .map(|r| one_rep(cfg, r))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let per_rep: Vec<Vec<Option<f64>>> = (0..cfg.reps as u64).map(|r| one_rep(cfg, r)).collect();
    Ok(aggregate(cfg, per_rep))
}

/// Single-threaded reference runner; the determinism oracle for the parallel
/// path and the baseline of the benchmark suite.
pub fn run_monte_carlo_serial(cfg: &McConfig) -> Result<McSummary> {
    cfg.validate()?;
    let per_rep: Vec<Vec<Option<f64>>> = (0..cfg.reps as u64).map(|r| one_rep(cfg, r)).collect();
    Ok(aggregate(cfg, per_rep))
}

/// One row of the per-sample trajectory table; estimator failures at a given
/// `k` are recorded as `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub k: usize,
    pub threshold: f64,
    pub gamma_hill: Option<f64>,
    pub gamma_gpd: Option<f64>,
    pub gamma_epd: Option<f64>,
    pub delta_epd: Option<f64>,
    pub rho_hat: f64,
    pub gamma_ci: Option<(f64, f64)>,
    pub p_weissman: Option<f64>,
    pub p_gpd: Option<f64>,
    pub p_epd: Option<f64>,
    pub p_ci: Option<(f64, f64)>,
}

/// Estimate trajectories over a threshold grid for one data set.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTable {
    pub n: usize,
    pub x_star: f64,
    pub rows: Vec<TrajectoryRow>,
}

/// GPD peaks-over-threshold tail probability `(k/n) (1 + g (x-u)/sigma)^(-1/g)`.
fn gpd_tail_prob(fit: &GpdFit, n: usize, x: f64) -> Option<f64> {
    let t = 1.0 + fit.gamma_hat * (x - fit.threshold) / fit.sigma_hat;
    let kn = fit.k as f64 / n as f64;
    if t <= 0.0 {
        // beyond the fitted upper endpoint
        return Some(0.0);
    }
    let p = if fit.gamma_hat.abs() < 1e-12 {
        kn * (-(x - fit.threshold) / fit.sigma_hat).exp()
    } else {
        kn * t.powf(-1.0 / fit.gamma_hat)
    };
    p.is_finite().then_some(p)
}

/// Per-`k` Hill/GPD/EPD estimates and tail probabilities at `x_star`, with
/// the EPD confidence intervals at level `1 - alpha`.
///
/// The second-order parameter is resolved once per sample; an estimation
/// failure is propagated (callers wanting the fixed fallback pass
/// `RhoMode::Fixed`).
pub fn run_trajectory(
    data: &Sample,
    k_grid: &[usize],
    x_star: f64,
    rho_mode: &RhoMode,
    alpha: f64,
) -> Result<TrajectoryTable> {
    let sorted = SortedSample::from_sample(data)?;
    let n = sorted.n();
    if k_grid.is_empty() {
        return Err(Error::argument("k grid must be nonempty"));
    }
    let mut grid = k_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    let &k_max = grid.last().expect("nonempty");
    if grid[0] == 0 || k_max > n - 1 {
        return Err(Error::argument(format!(
            "k grid must satisfy 1 <= k <= n-1, got range [{}, {k_max}] with n={n}",
            grid[0]
        )));
    }
    let min_threshold = sorted.threshold(k_max)?;
    if x_star.is_nan() || x_star <= min_threshold {
        return Err(Error::domain(format!(
            "x_star = {x_star} must exceed the smallest grid threshold {min_threshold}"
        )));
    }
    let rho = resolve_rho(&sorted, rho_mode)?;

    let rows = grid
        .iter()
        .map(|&k| {
            let threshold = sorted.threshold(k).expect("validated");
            let gamma_hill = hill(&sorted, k).ok();
            let gpd_fit = fit_gpd_mle(&sorted, k).ok();
            let epd_fit = fit_epd(&sorted, k, rho).ok();

            let p_weissman = gamma_hill
                .and_then(|g| tail_prob_weissman(g, k, n, threshold, x_star).ok())
                .map(|e| e.p_hat);
            let p_gpd = gpd_fit.as_ref().and_then(|f| gpd_tail_prob(f, n, x_star));
            let epd_tail = epd_fit.as_ref().and_then(|f| {
                let est = tail_prob_epd(f, n, x_star).ok()?;
                // attach the interval where the q-hat regime admits one
                Some(est.with_ci(rho, alpha).unwrap_or(est))
            });

            let gamma_ci = epd_fit
                .as_ref()
                .and_then(|f| ci_gamma(f.gamma_hat, rho, k, alpha).ok());

            TrajectoryRow {
                k,
                threshold,
                gamma_hill,
                gamma_gpd: gpd_fit.as_ref().map(|f| f.gamma_hat),
                gamma_epd: epd_fit.as_ref().map(|f| f.gamma_hat),
                delta_epd: epd_fit.as_ref().map(|f| f.delta_hat),
                rho_hat: rho,
                gamma_ci,
                p_weissman,
                p_gpd,
                p_epd: epd_tail.as_ref().map(|t| t.p_hat),
                p_ci: epd_tail.as_ref().and_then(|t| t.ci),
            }
        })
        .collect();

    Ok(TrajectoryTable { n, x_star, rows })
}

/// Oracle exceedance statistic `sqrt(k) { n F_bar(X_{n-k:n}) / k - 1 }`,
/// asymptotically standard normal and independent of the parameter
/// estimators. Requires the model's exact survival function.
pub fn z_statistic(model: &ReferenceModel, s: &SortedSample, k: usize) -> Result<f64> {
    let u = s.threshold(k)?;
    let n = s.n() as f64;
    Ok((k as f64).sqrt() * (n * model.survival(u) / k as f64 - 1.0))
}

/// Sup-error of the EPD and Pareto approximations to the relative-excess
/// distribution over a threshold, normalized by `|delta(u)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCheck {
    pub u: f64,
    pub delta_u: f64,
    /// `sup_y |F_bar(uy)/F_bar(u) - G_bar_{gamma, delta(u), tau}(y)| / |delta(u)|`
    pub epd_ratio: f64,
    /// Same with the Pareto tail `y^(-1/gamma)` in place of the EPD.
    pub pareto_ratio: f64,
    /// `delta(u) = 0`: the normalized errors are 0/0 and reported as zero.
    pub degenerate: bool,
}

/// Excess-approximation rate check over a grid of thresholds.
///
/// The EPD ratio must vanish as `u` grows (the approximation improves an
/// order of magnitude on the Pareto), while the Pareto ratio stays bounded
/// away from zero.
pub fn prop1_rate_check(
    model: &ReferenceModel,
    u_grid: &[f64],
    y_grid: &[f64],
) -> Result<Vec<RateCheck>> {
    if u_grid.is_empty() || y_grid.is_empty() {
        return Err(Error::argument("u and y grids must be nonempty"));
    }
    if let Some(&bad) = y_grid.iter().find(|&&y| y < 1.0) {
        return Err(Error::argument(format!(
            "y grid values must be >= 1, got {bad}"
        )));
    }
    let gamma = model.true_gamma();
    let tau = model
        .true_tau()
        .ok_or_else(|| Error::UnsupportedModel("model has no second-order exponent".into()))?;

    u_grid
        .iter()
        .map(|&u| {
            let delta_u = model.delta(u)?;
            if delta_u == 0.0 {
                return Ok(RateCheck {
                    u,
                    delta_u,
                    epd_ratio: 0.0,
                    pareto_ratio: 0.0,
                    degenerate: true,
                });
            }
            let params = EpdParams::new(gamma, delta_u, tau)?;
            let su = model.survival(u);
            let mut sup_epd: f64 = 0.0;
            let mut sup_pareto: f64 = 0.0;
            for &y in y_grid {
                let excess = model.survival(u * y) / su;
                sup_epd = sup_epd.max((excess - params.sf(y)).abs());
                sup_pareto = sup_pareto.max((excess - y.powf(-1.0 / gamma)).abs());
            }
            Ok(RateCheck {
                u,
                delta_u,
                epd_ratio: sup_epd / delta_u.abs(),
                pareto_ratio: sup_pareto / delta_u.abs(),
                degenerate: false,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> McConfig {
        McConfig {
            model: ReferenceModel::pareto_mixture(1.0, 0.0).unwrap(),
            n: 200,
            reps: 24,
            k_grid: vec![20, 50],
            estimators: vec![EstimatorKind::Hill, EstimatorKind::Gpd, EstimatorKind::Epd],
            seed: 42,
            rho_mode: RhoMode::Fixed(-1.0),
        }
    }

    #[test]
    fn parallel_and_serial_agree_bitwise() {
        let cfg = small_cfg();
        let a = run_monte_carlo(&cfg).unwrap();
        let b = run_monte_carlo_serial(&cfg).unwrap();
        assert_eq!(a.cells.len(), b.cells.len());
        for (x, y) in a.cells.iter().zip(&b.cells) {
            assert_eq!(x.bias.to_bits(), y.bias.to_bits());
            assert_eq!(x.variance.to_bits(), y.variance.to_bits());
            assert_eq!(x.mse.to_bits(), y.mse.to_bits());
            assert_eq!(x.fail_count, y.fail_count);
        }
        // rerun is bit-identical too
        let c = run_monte_carlo(&cfg).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn mse_is_bias_squared_plus_variance() {
        let summary = run_monte_carlo(&small_cfg()).unwrap();
        for cell in &summary.cells {
            assert!((cell.mse - (cell.bias * cell.bias + cell.variance)).abs() < 1e-10);
        }
    }

    #[test]
    fn single_rep_has_zero_variance() {
        let mut cfg = small_cfg();
        cfg.reps = 1;
        cfg.estimators = vec![EstimatorKind::Hill];
        let summary = run_monte_carlo(&cfg).unwrap();
        for cell in &summary.cells {
            assert_eq!(cell.variance, 0.0);
            assert!((cell.mse - cell.bias * cell.bias).abs() < 1e-15);
        }
    }

    #[test]
    fn hill_is_unbiased_on_exact_pareto() {
        let cfg = McConfig {
            model: ReferenceModel::pareto_mixture(1.0, 0.0).unwrap(),
            n: 500,
            reps: 400,
            k_grid: vec![50, 100],
            estimators: vec![EstimatorKind::Hill],
            seed: 7,
            rho_mode: RhoMode::Fixed(-1.0),
        };
        let summary = run_monte_carlo(&cfg).unwrap();
        for cell in &summary.cells {
            let se = 1.0 / ((cfg.reps * cell.k) as f64).sqrt();
            assert!(
                cell.bias.abs() < 3.0 * se,
                "k={}: bias {} vs 3se {}",
                cell.k,
                cell.bias,
                3.0 * se
            );
            assert_eq!(cell.fail_count, 0);
            assert!(!cell.flagged);
        }
    }

    #[test]
    fn theory_columns() {
        let cfg = McConfig {
            model: ReferenceModel::frechet(1.0).unwrap(),
            n: 200,
            reps: 2,
            k_grid: vec![50],
            estimators: vec![EstimatorKind::Hill, EstimatorKind::Gpd, EstimatorKind::Epd],
            seed: 1,
            rho_mode: RhoMode::Fixed(-1.0),
        };
        let s = run_monte_carlo(&cfg).unwrap();
        assert_eq!(s.cell(EstimatorKind::Epd, 50).unwrap().theory_var, 4.0);
        assert_eq!(s.cell(EstimatorKind::Gpd, 50).unwrap().theory_var, 4.0);
        assert_eq!(s.cell(EstimatorKind::Hill, 50).unwrap().theory_var, 1.0);
        assert_eq!(s.cell(EstimatorKind::Epd, 50).unwrap().theory_bias, 0.0);
        // Frechet has delta < 0, hence lambda < 0 and a positive Hill bias
        // of lambda rho/(1-rho) / sqrt(k)
        assert!(s.cell(EstimatorKind::Hill, 50).unwrap().theory_bias > 0.0);

        // loggamma: no overlay at all
        let cfg = McConfig {
            model: ReferenceModel::log_gamma(4.0, 2.0).unwrap(),
            rho_mode: RhoMode::estimated_default(),
            ..cfg
        };
        let s = run_monte_carlo(&cfg).unwrap();
        for cell in &s.cells {
            assert!(cell.theory_var.is_nan());
            assert!(cell.theory_bias.is_nan());
        }

        // student-t: variance overlay only
        let cfg = McConfig {
            model: ReferenceModel::student_t(4.0).unwrap(),
            ..cfg
        };
        let s = run_monte_carlo(&cfg).unwrap();
        let cell = s.cell(EstimatorKind::Hill, 50).unwrap();
        assert_eq!(cell.theory_var, 0.0625);
        assert!(cell.theory_bias.is_nan());
    }

    #[test]
    fn rho_mode_resolution() {
        let model = ReferenceModel::burr(1.0, -1.0, 1.0).unwrap();
        let s = SortedSample::from_sample(&model.sample(1, 500)).unwrap();
        // fixed mode bypasses estimation and returns the constant
        assert_eq!(resolve_rho(&s, &RhoMode::Fixed(-1.0)).unwrap(), -1.0);
        assert_eq!(resolve_rho(&s, &RhoMode::Fixed(-0.37)).unwrap(), -0.37);
        assert!(resolve_rho(&s, &RhoMode::Fixed(0.5)).is_err());
        // estimated mode lands in the clamp range
        let rho = resolve_rho(&s, &RhoMode::estimated_default()).unwrap();
        assert!((-20.0..=-0.05).contains(&rho));
    }

    #[test]
    fn config_validation() {
        let mut cfg = small_cfg();
        cfg.k_grid = vec![200];
        assert!(run_monte_carlo(&cfg).is_err());
        let mut cfg = small_cfg();
        cfg.reps = 0;
        assert!(run_monte_carlo(&cfg).is_err());
        let mut cfg = small_cfg();
        cfg.estimators.clear();
        assert!(run_monte_carlo(&cfg).is_err());
    }

    #[test]
    fn trajectory_shape_and_errors() {
        let model = ReferenceModel::pareto_mixture(1.0, 0.0).unwrap();
        let data = model.sample(3, 400);
        let grid: Vec<usize> = (10..=200).step_by(10).collect();
        let table = run_trajectory(&data, &grid, 50.0, &RhoMode::Fixed(-1.0), 0.10).unwrap();
        assert_eq!(table.rows.len(), 20);
        // thresholds nonincreasing in k
        for w in table.rows.windows(2) {
            assert!(w[1].threshold <= w[0].threshold);
        }
        for row in &table.rows {
            assert_eq!(row.rho_hat, -1.0);
            if let (Some(p), Some((lo, hi))) = (row.p_epd, row.p_ci) {
                assert!(lo <= p && p <= hi);
            }
            if let Some((lo, hi)) = row.gamma_ci {
                assert!(lo <= hi);
            }
        }

        // k = n is rejected
        assert!(run_trajectory(&data, &[400], 50.0, &RhoMode::Fixed(-1.0), 0.10).is_err());
        // x_star below the smallest grid threshold is rejected
        let low_x = data.values().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(run_trajectory(&data, &grid, low_x, &RhoMode::Fixed(-1.0), 0.10).is_err());
    }

    #[test]
    fn z_statistic_zero_when_survival_matches_kn() {
        // exact Pareto(1): F_bar(x) = 1/x; a threshold of exactly n/k = 5
        // (the 8th of 10 order statistics) makes n F_bar / k = 1
        let model = ReferenceModel::pareto_mixture(1.0, 0.0).unwrap();
        let values = vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 5.0, 9.0, 10.0];
        let s = SortedSample::new(values).unwrap();
        let z = z_statistic(&model, &s, 2).unwrap();
        assert!(z.abs() < 1e-12, "z = {z}");
    }

    #[test]
    fn rate_check_on_pareto_mixture() {
        let model = ReferenceModel::pareto_mixture(2.0, 2.0).unwrap();
        let y_grid: Vec<f64> = (0..400).map(|i| (i as f64 * 0.01).exp()).collect();
        let checks = prop1_rate_check(&model, &[10.0, 100.0, 1000.0], &y_grid).unwrap();
        assert!(checks[0].epd_ratio > checks[1].epd_ratio);
        assert!(checks[1].epd_ratio > checks[2].epd_ratio);
        assert!(checks[2].epd_ratio < 0.1 * checks[0].epd_ratio);
        // Pareto baseline stays of constant order
        for c in &checks {
            assert!(c.pareto_ratio > 0.1 && c.pareto_ratio < 10.0);
        }

        // exact Pareto is degenerate
        let pareto = ReferenceModel::pareto_mixture(2.0, 0.0).unwrap();
        let checks = prop1_rate_check(&pareto, &[10.0], &y_grid).unwrap();
        assert!(checks[0].degenerate);
        assert_eq!(checks[0].epd_ratio, 0.0);

        let lg = ReferenceModel::log_gamma(4.0, 2.0).unwrap();
        assert!(prop1_rate_check(&lg, &[10.0], &y_grid).is_err());
    }
}
