use rand::Rng;

use crate::error::Result;
use crate::parallel::{map_indexed, Parallelism};
use crate::rng::stream;

/// Statistic values over with-replacement resamples.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapResult {
    /// Successful replicates, in resample order.
    pub values: Vec<f64>,
    /// Indices of resamples whose statistic failed.
    pub failed: Vec<usize>,
}

impl BootstrapResult {
    pub fn mean(&self) -> Option<f64> {
        (!self.values.is_empty()).then(|| self.values.iter().sum::<f64>() / self.values.len() as f64)
    }
}

/// Resample `b` has its own random stream, so results do not depend on how
/// replicates are scheduled.
pub fn bootstrap<S>(sample: &[f64], b: usize, statistic: S, seed: u64, mode: Parallelism) -> BootstrapResult
where
    S: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    let n = sample.len();
    let outcomes = map_indexed(b, mode, |i| {
        if n == 0 {
            return None;
        }
        let mut rng = stream(seed, i as u64);
        let resample: Vec<f64> = (0..n).map(|_| sample[rng.random_range(0..n)]).collect();
        statistic(&resample).ok().filter(|v| v.is_finite())
    });
    let mut result = BootstrapResult { values: Vec::with_capacity(b), failed: Vec::new() };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Some(v) => result.values.push(v),
            None => result.failed.push(i),
        }
    }
    result
}
