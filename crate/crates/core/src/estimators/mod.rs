//! Kernel and maximum-likelihood estimators of the generating functions,
//! bootstrap resampling and information criteria.

mod bootstrap;
mod criteria;
mod kde;
mod mle;

pub use bootstrap::{bootstrap, BootstrapResult};
pub use criteria::{criteria_from, information_criteria, InfoCriteria};
pub use kde::{silverman_bandwidth, Bandwidth, KdeDomain, KdeModel, WINDOW_BANDWIDTHS};
pub use mle::{mle_fit, Family, FitResult};

use crate::distributions::{closed_form_integral, ContinuousModel, OrderPair};
use crate::error::{Error, Result};
use crate::igf::igf_golomb;
use crate::quadrature::Tolerance;

pub fn kde_fit(sample: &[f64], bandwidth: Bandwidth) -> Result<KdeModel> {
    KdeModel::fit(sample, bandwidth)
}

/// `∫ f̂^α` with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KdeEstimate {
    pub integral: f64,
    pub bandwidth: f64,
    /// Kernel mass below zero, dropped by [`KdeDomain::Positive`].
    pub negative_mass: f64,
}

pub fn kde_power_integral(
    sample: &[f64],
    alpha: f64,
    bandwidth: Bandwidth,
    domain: KdeDomain,
) -> Result<KdeEstimate> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParam(format!("alpha must be positive, got {alpha}")));
    }
    let kde = KdeModel::fit(sample, bandwidth)?;
    let integral = kde.power_integral(alpha, domain, &Tolerance::estimation())?;
    Ok(KdeEstimate { integral, bandwidth: kde.bandwidth(), negative_mass: kde.negative_mass() })
}

/// Kernel estimator `δ(α)(∫₀^∞ f̂^α)^{β-1}`.
pub fn rigf_nonparametric(sample: &[f64], order: OrderPair, bandwidth: Bandwidth) -> Result<f64> {
    rigf_nonparametric_on(sample, order, bandwidth, KdeDomain::Positive)
}

pub fn rigf_nonparametric_on(
    sample: &[f64],
    order: OrderPair,
    bandwidth: Bandwidth,
    domain: KdeDomain,
) -> Result<f64> {
    if order.beta() == 1.0 {
        KdeModel::fit(sample, bandwidth)?;
        return Ok(order.delta());
    }
    let est = kde_power_integral(sample, order.alpha(), bandwidth, domain)?;
    Ok(order.delta() * est.integral.powf(order.beta() - 1.0))
}

/// Kernel estimator `∫₀^∞ f̂^α`.
pub fn igf_nonparametric(sample: &[f64], alpha: f64, bandwidth: Bandwidth) -> Result<f64> {
    Ok(kde_power_integral(sample, alpha, bandwidth, KdeDomain::Positive)?.integral)
}

/// `∫ f^α` from the closed form when one exists, otherwise by quadrature.
pub fn model_power_integral(model: &ContinuousModel, alpha: f64) -> Result<f64> {
    match closed_form_integral(model, alpha) {
        Err(Error::NoClosedForm(_)) => igf_golomb(model, alpha),
        other => other,
    }
}

/// Plug-in estimator: RIGF of the maximum-likelihood fit.
pub fn rigf_parametric(family: Family, sample: &[f64], order: OrderPair) -> Result<f64> {
    let fit = mle_fit(family, sample)?;
    let i = model_power_integral(&fit.model, order.alpha())?;
    Ok(order.delta() * i.powf(order.beta() - 1.0))
}

/// Plug-in estimator of Golomb's IGF.
pub fn igf_parametric(family: Family, sample: &[f64], alpha: f64) -> Result<f64> {
    let fit = mle_fit(family, sample)?;
    model_power_integral(&fit.model, alpha)
}
