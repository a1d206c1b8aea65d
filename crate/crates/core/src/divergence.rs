//! Two-distribution generating functions: the Rényi divergence generating
//! function, Rényi and Kullback–Leibler divergences, generalized escorts and
//! the behaviour under monotone transformations.

use serde::Serialize;

use crate::distributions::{ContinuousModel, MonotoneMap, OrderPair};
use crate::error::{Error, Result};
use crate::igf::as_divergent;
use crate::quadrature::{integrate, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivReport {
    /// `∫ f^α g^{1-α}`
    pub cross_integral: f64,
    pub value: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DivReport {
    /// `k`-th derivative in `β`: `value·(ln I)^k`.
    pub fn derivative(&self, k: u32) -> f64 {
        self.value * self.cross_integral.ln().powi(k as i32)
    }
}

const SUPPORT_PROBES: usize = 200;

/// Fails with `SupportMismatch` unless `g` has positive density at a grid of
/// `f`-quantiles. Tested on the log scale so tail underflow is not a mismatch.
pub fn check_support(f: &ContinuousModel, g: &ContinuousModel) -> Result<()> {
    for i in 0..SUPPORT_PROBES {
        let u = (i as f64 + 0.5) / SUPPORT_PROBES as f64;
        let x = f.quantile(u)?;
        if !(g.ln_density(x) > f64::NEG_INFINITY) {
            return Err(Error::SupportMismatch);
        }
    }
    Ok(())
}

/// `∫ f^α g^{1-α}` over the common support.
pub fn cross_integral(f: &ContinuousModel, g: &ContinuousModel, alpha: f64, tol: &Tolerance) -> Result<f64> {
    check_support(f, g)?;
    let domain = f.support().intersect(&g.support()).ok_or(Error::SupportMismatch)?;
    let v = integrate(
        |x| {
            let lf = f.ln_density(x);
            if lf == f64::NEG_INFINITY {
                return 0.0;
            }
            (alpha * lf + (1.0 - alpha) * g.ln_density(x)).exp()
        },
        domain,
        tol,
    )
    .map_err(as_divergent)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Divergent(format!("cross integral is {v}")))
    }
}

pub fn rdigf(f: &ContinuousModel, g: &ContinuousModel, order: OrderPair) -> Result<DivReport> {
    let i = cross_integral(f, g, order.alpha(), &Tolerance::default())?;
    Ok(DivReport {
        cross_integral: i,
        value: order.delta_star() * i.powf(order.beta() - 1.0),
        alpha: order.alpha(),
        beta: order.beta(),
    })
}

/// `δ*(α) ln ∫ f^α g^{1-α}`
pub fn renyi_divergence(f: &ContinuousModel, g: &ContinuousModel, alpha: f64) -> Result<f64> {
    let order = OrderPair::new(alpha, 1.0)?;
    Ok(order.delta_star() * cross_integral(f, g, alpha, &Tolerance::default())?.ln())
}

/// `∫ f ln(f/g)`
pub fn kl_divergence(f: &ContinuousModel, g: &ContinuousModel) -> Result<f64> {
    check_support(f, g)?;
    let domain = f.support().intersect(&g.support()).ok_or(Error::SupportMismatch)?;
    integrate(
        |x| {
            let lf = f.ln_density(x);
            if lf == f64::NEG_INFINITY {
                return 0.0;
            }
            lf.exp() * (lf - g.ln_density(x))
        },
        domain,
        &Tolerance::default(),
    )
    .map_err(as_divergent)
}

pub fn generalized_escort(f: &ContinuousModel, g: &ContinuousModel, r: f64) -> Result<ContinuousModel> {
    ContinuousModel::generalized_escort(f, g, r)
}

/// Divergence generating function of `(ψ(X), ψ(Y))`, computed from the
/// transformed densities.
///
/// The cross integral itself does not depend on `ψ`. For a decreasing `ψ`
/// the returned `value` carries a negative orientation sign, so it equals
/// `-rdigf(f, g)`; `cross_integral` is reported unsigned.
pub fn rdigf_monotone_transform(
    f: &ContinuousModel,
    g: &ContinuousModel,
    order: OrderPair,
    psi: &MonotoneMap,
) -> Result<DivReport> {
    let tf = ContinuousModel::transformed(f, psi.clone())?;
    let tg = ContinuousModel::transformed(g, psi.clone())?;
    let increasing = matches!(tf, ContinuousModel::Transformed { increasing: true, .. });
    let mut report = rdigf(&tf, &tg, order)?;
    if !increasing {
        report.value = -report.value;
    }
    Ok(report)
}
