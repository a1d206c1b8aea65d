use serde::Serialize;

use super::mle::FitResult;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoCriteria {
    pub neg_loglik: f64,
    pub aic: f64,
    pub aicc: f64,
    pub bic: f64,
}

/// Criteria from a log-likelihood with `p` free parameters and `n` observations.
pub fn criteria_from(loglik: f64, p: usize, n: usize) -> Result<InfoCriteria> {
    if n <= p + 1 {
        return Err(invalid(format!("AICc needs n > p + 1 (n = {n}, p = {p})")));
    }
    let (pf, nf) = (p as f64, n as f64);
    let aic = 2.0 * pf - 2.0 * loglik;
    Ok(InfoCriteria {
        neg_loglik: -loglik,
        aic,
        aicc: aic + 2.0 * pf * (pf + 1.0) / (nf - pf - 1.0),
        bic: pf * nf.ln() - 2.0 * loglik,
    })
}

pub fn information_criteria(fit: &FitResult) -> Result<InfoCriteria> {
    criteria_from(fit.loglik, fit.param_count(), fit.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_parameters() {
        let c = criteria_from(-10.0, 0, 5).unwrap();
        assert_eq!(c.aic, 20.0);
        assert_eq!(c.aicc, 20.0);
        assert!(criteria_from(-10.0, 2, 3).is_err());
    }
}
