use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distributions::{ModelSpec, OrderPair};
use crate::error::{invalid, Error, Result};
use crate::estimators::{kde_power_integral, mle_fit, model_power_integral, Bandwidth, Family, KdeDomain};
use crate::parallel::{map_indexed, Parallelism};
use crate::rng::{mix, stream};

/// Master seed used by the reproductions unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    /// Gaussian-kernel plug-in over `[0, ∞)`.
    Nonparametric,
    /// RIGF of the maximum-likelihood fit of `fit_family`.
    Parametric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    pub truth: ModelSpec,
    pub fit_family: Family,
    pub estimators: Vec<EstimatorKind>,
    /// `(α, β)` pairs.
    pub orders: Vec<(f64, f64)>,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Fixed kernel bandwidth; Silverman's rule when absent.
    #[serde(default)]
    pub bandwidth: Option<f64>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Rigf,
    /// Golomb's `∫ f^α`; its cells carry no `β`.
    Igf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McCell {
    pub estimator: EstimatorKind,
    pub quantity: Quantity,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub n: usize,
    pub truth: f64,
    pub mean: f64,
    /// Standard deviation with divisor `R - 1`.
    pub sd: f64,
    /// `|mean(θ̂) - θ|`
    pub ab: f64,
    /// `mean((θ̂ - θ)²)`
    pub mse: f64,
    /// `mean|θ̂ - θ|`, reported alongside the absolute bias.
    pub mae: f64,
    pub replications_used: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub cells: Vec<McCell>,
}

impl McReport {
    pub fn cell(&self, estimator: EstimatorKind, alpha: f64, beta: f64, n: usize) -> Option<&McCell> {
        self.cells.iter().find(|c| {
            c.estimator == estimator && c.quantity == Quantity::Rigf && c.alpha == alpha && c.beta == Some(beta) && c.n == n
        })
    }

    pub fn igf_cell(&self, estimator: EstimatorKind, alpha: f64, n: usize) -> Option<&McCell> {
        self.cells
            .iter()
            .find(|c| c.estimator == estimator && c.quantity == Quantity::Igf && c.alpha == alpha && c.n == n)
    }
}

impl McConfig {
    fn order_pairs(&self) -> Result<Vec<OrderPair>> {
        self.orders.iter().map(|&(a, b)| OrderPair::new(a, b)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 2 {
            return Err(invalid(format!("need at least 2 replications, got {}", self.replications)));
        }
        if self.estimators.is_empty() || self.orders.is_empty() || self.sample_sizes.is_empty() {
            return Err(invalid("estimators, orders and sample sizes must be non-empty"));
        }
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < 2) {
            return Err(invalid(format!("sample size must be at least 2, got {n}")));
        }
        if let Some(h) = self.bandwidth {
            if !(h > 0.0) || !h.is_finite() {
                return Err(invalid(format!("bandwidth must be positive, got {h}")));
            }
        }
        self.order_pairs()?;
        self.truth.build()?;
        Ok(())
    }
}

/// Distinct `α` values, in first-seen order.
fn distinct_alphas(orders: &[OrderPair]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for o in orders {
        if !out.contains(&o.alpha()) {
            out.push(o.alpha());
        }
    }
    out
}

/// One replicate: `∫ f̂^α` for each distinct `α`, per estimator.
type Integrals = BTreeMap<EstimatorKind, Result<Vec<f64>>>;

pub fn mc_estimator_study(config: &McConfig, mode: Parallelism) -> Result<McReport> {
    config.validate()?;
    let truth = config.truth.build()?;
    let orders = config.order_pairs()?;
    let alphas = distinct_alphas(&orders);
    let true_integrals = alphas.iter().map(|&a| model_power_integral(&truth, a)).collect::<Result<Vec<_>>>()?;
    let bandwidth = config.bandwidth.map_or(Bandwidth::Silverman, Bandwidth::Fixed);

    let mut cells = Vec::new();
    for &n in &config.sample_sizes {
        let master = mix(config.seed, n as u64);
        let reps: Vec<Result<Integrals>> = map_indexed(config.replications, mode, |r| {
            let mut rng = stream(master, r as u64);
            let sample = truth.sample_with(n, &mut rng)?;
            let mut out = Integrals::new();
            for &est in &config.estimators {
                let vals = match est {
                    EstimatorKind::Nonparametric => alphas
                        .iter()
                        .map(|&a| kde_power_integral(&sample, a, bandwidth, KdeDomain::Positive).map(|k| k.integral))
                        .collect(),
                    EstimatorKind::Parametric => mle_fit(config.fit_family, &sample)
                        .and_then(|fit| alphas.iter().map(|&a| model_power_integral(&fit.model, a)).collect()),
                };
                out.insert(est, vals);
            }
            Ok(out)
        });
        let reps = reps.into_iter().collect::<Result<Vec<_>>>()?;

        for &est in &config.estimators {
            let successes: Vec<&Vec<f64>> = reps.iter().filter_map(|r| r[&est].as_ref().ok()).collect();
            for (ai, &alpha) in alphas.iter().enumerate() {
                let values: Vec<f64> = successes.iter().map(|v| v[ai]).filter(|v| v.is_finite()).collect();
                let key = CellKey { est, quantity: Quantity::Igf, alpha, beta: None, n };
                cells.push(summarize(key, true_integrals[ai], &values, config.replications)?);
            }
            for o in &orders {
                let ai = alphas.iter().position(|&a| a == o.alpha()).expect("alpha collected above");
                let theta = o.delta() * true_integrals[ai].powf(o.beta() - 1.0);
                let values: Vec<f64> = successes
                    .iter()
                    .map(|v| o.delta() * v[ai].powf(o.beta() - 1.0))
                    .filter(|v| v.is_finite())
                    .collect();
                let key = CellKey { est, quantity: Quantity::Rigf, alpha: o.alpha(), beta: Some(o.beta()), n };
                cells.push(summarize(key, theta, &values, config.replications)?);
            }
        }
    }
    Ok(McReport { cells })
}

struct CellKey {
    est: EstimatorKind,
    quantity: Quantity,
    alpha: f64,
    beta: Option<f64>,
    n: usize,
}

fn summarize(key: CellKey, theta: f64, values: &[f64], total: usize) -> Result<McCell> {
    let used = values.len();
    if used < 2 {
        return Err(Error::NonConvergent(format!(
            "{:?} {:?} at α={}, β={:?}, n={}: only {used} of {total} replications succeeded",
            key.est, key.quantity, key.alpha, key.beta, key.n
        )));
    }
    let m = used as f64;
    let mean = values.iter().sum::<f64>() / m;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();
    let mse = values.iter().map(|v| (v - theta).powi(2)).sum::<f64>() / m;
    let mae = values.iter().map(|v| (v - theta).abs()).sum::<f64>() / m;
    Ok(McCell {
        estimator: key.est,
        quantity: key.quantity,
        alpha: key.alpha,
        beta: key.beta,
        n: key.n,
        truth: theta,
        mean,
        sd,
        ab: (mean - theta).abs(),
        mse,
        mae,
        replications_used: used,
        failures: total - used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke(reps: usize) -> McConfig {
        McConfig {
            truth: ModelSpec::parse(r#"{"family":"weibull2","params":{"k":2,"lambda":1.5}}"#).unwrap(),
            fit_family: Family::Weibull2,
            estimators: vec![EstimatorKind::Nonparametric, EstimatorKind::Parametric],
            orders: vec![(0.3, 1.1), (1.5, 1.1), (0.3, 0.6)],
            sample_sizes: vec![40],
            replications: reps,
            seed: 9,
            bandwidth: None,
        }
    }

    #[test]
    fn smoke_report_is_well_formed() {
        let r = mc_estimator_study(&smoke(2), Parallelism::Sequential).unwrap();
        assert_eq!(r.cells.len(), 10);
        for c in &r.cells {
            assert!(c.sd >= 0.0);
            assert!(c.mse >= c.ab * c.ab - 1e-12);
        }
    }

    #[test]
    fn deterministic_across_modes() {
        let a = mc_estimator_study(&smoke(6), Parallelism::Sequential).unwrap();
        let b = mc_estimator_study(&smoke(6), Parallelism::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = smoke(1);
        assert!(mc_estimator_study(&c, Parallelism::Sequential).is_err());
        c.replications = 3;
        c.orders = vec![(1.0, 2.0)];
        assert!(mc_estimator_study(&c, Parallelism::Sequential).is_err());
        let json = r#"{"truth":{"family":"exponential","params":{"lambda":1}},"fit_family":"exponential",
            "estimators":["parametric"],"orders":[[2,2]],"sample_sizes":[10],"replications":2,"bogus":1}"#;
        assert!(serde_json::from_str::<McConfig>(json).is_err());
    }
}
