//! Sample containers: raw positive samples and their order statistics.

use crate::error::{Error, Result};

/// A sample of positive observations.
///
/// All threshold methods here assume a distribution with `F(0) = 0`, so every
/// value must be strictly positive and finite. The empty sample is allowed
/// (it is the natural output of drawing zero variates).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::domain(format!(
                "sample values must be positive and finite, got {bad}"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_sorted(self) -> Result<SortedSample> {
        SortedSample::new(self.values)
    }
}

/// Ascending order statistics `X_{1:n} <= ... <= X_{n:n}` of a positive sample.
///
/// This is the substrate for every threshold estimator: the threshold at level
/// `k` is the order statistic `X_{n-k:n}` and the `k` largest observations are
/// the excesses over it.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample {
    order_stats: Vec<f64>,
}

impl SortedSample {
    /// Sorts and validates a batch of observations.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("sorted sample must be nonempty"));
        }
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::domain(format!(
                "sample values must be positive and finite, got {bad}"
            )));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(Self {
            order_stats: values,
        })
    }

    pub fn from_sample(sample: &Sample) -> Result<Self> {
        Self::new(sample.values().to_vec())
    }

    pub fn n(&self) -> usize {
        self.order_stats.len()
    }

    pub fn order_stats(&self) -> &[f64] {
        &self.order_stats
    }

    /// The threshold `X_{n-k:n}`, i.e. the `(k+1)`-th largest observation.
    pub fn threshold(&self, k: usize) -> Result<f64> {
        self.check_k(k)?;
        Ok(self.order_stats[self.n() - k - 1])
    }

    /// The `k` largest observations `X_{n-k+1:n}, ..., X_{n:n}` in ascending order.
    pub fn top(&self, k: usize) -> Result<&[f64]> {
        self.check_k(k)?;
        Ok(&self.order_stats[self.n() - k..])
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        let n = self.n();
        if k == 0 || k > n - 1 {
            return Err(Error::argument(format!(
                "k must satisfy 1 <= k <= n-1, got k={k} with n={n}"
            )));
        }
        Ok(())
    }
}
