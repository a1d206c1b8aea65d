use std::f64::consts::PI;

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::igf::as_divergent;
use crate::quadrature::{integrate, Interval, Tolerance};

/// Bandwidth choice for [`KdeModel::fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    /// `0.9 · min(sd, IQR/1.34) · n^{-1/5}`
    Silverman,
    Fixed(f64),
}

/// Region over which KDE power integrals are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KdeDomain {
    /// Window clipped to `[0, ∞)`; mass leaking below 0 is dropped.
    Positive,
    /// Whole window, for signed data.
    Full,
}

/// Gaussian kernel density estimate.
#[derive(Debug, Clone)]
pub struct KdeModel {
    sorted: Vec<f64>,
    h: f64,
    ln_norm: f64,
}

/// Half-width of the integration window in bandwidths. Gaussian mass beyond
/// 8h is about 6e-16.
pub const WINDOW_BANDWIDTHS: f64 = 8.0;

// Kernel terms more than e^{-37} below the largest one are dropped.
const LOG_CUTOFF: f64 = 74.0;

fn sample_sd(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

// Type-7 quantile of sorted data.
fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Silverman's rule of thumb; falls back to the standard deviation when the
/// interquartile range is zero.
pub fn silverman_bandwidth(sample: &[f64]) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::InvalidSample("bandwidth needs at least two points".into()));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let sd = sample_sd(&sorted);
    if !(sd > 0.0) || !sd.is_finite() {
        return Err(Error::DegenerateSample(format!("standard deviation is {sd}")));
    }
    let iqr = sorted_quantile(&sorted, 0.75) - sorted_quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * (sample.len() as f64).powf(-0.2))
}

impl KdeModel {
    pub fn fit(sample: &[f64], bandwidth: Bandwidth) -> Result<Self> {
        if sample.len() < 2 {
            return Err(Error::InvalidSample(format!("KDE needs n >= 2, got {}", sample.len())));
        }
        if sample.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSample("non-finite observation".into()));
        }
        let mut sorted = sample.to_vec();
        sorted.sort_by(f64::total_cmp);
        if sorted[0] == sorted[sorted.len() - 1] {
            return Err(Error::DegenerateSample("all observations are equal".into()));
        }
        let h = match bandwidth {
            Bandwidth::Silverman => silverman_bandwidth(&sorted)?,
            Bandwidth::Fixed(h) => {
                if !(h > 0.0) || !h.is_finite() {
                    return Err(Error::InvalidParam(format!("bandwidth must be positive, got {h}")));
                }
                h
            }
        };
        let ln_norm = -(sorted.len() as f64 * h * (2.0 * PI).sqrt()).ln();
        Ok(KdeModel { sorted, h, ln_norm })
    }

    pub fn bandwidth(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted_sample(&self) -> &[f64] {
        &self.sorted
    }

    /// Log density, accurate far into the tails.
    pub fn ln_density(&self, x: f64) -> f64 {
        let s = &self.sorted;
        let inv2h2 = 0.5 / (self.h * self.h);
        let idx = s.partition_point(|&v| v < x);
        let d_min = match (idx.checked_sub(1).map(|i| x - s[i]), s.get(idx).map(|v| v - x)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return f64::NEG_INFINITY,
        };
        let radius = (d_min * d_min + LOG_CUTOFF * self.h * self.h).sqrt();
        let lo = s.partition_point(|&v| v < x - radius);
        let hi = s.partition_point(|&v| v <= x + radius);
        let base = d_min * d_min * inv2h2;
        let mut acc = 0.0;
        for &v in &s[lo..hi] {
            let d = x - v;
            acc += (base - d * d * inv2h2).exp();
        }
        acc.ln() - base + self.ln_norm
    }

    pub fn density(&self, x: f64) -> f64 {
        self.ln_density(x).exp()
    }

    /// `[min - 8h, max + 8h]`
    pub fn window(&self) -> Interval {
        let pad = WINDOW_BANDWIDTHS * self.h;
        Interval { lower: self.sorted[0] - pad, upper: self.sorted[self.sorted.len() - 1] + pad }
    }

    /// Kernel mass below zero, `Σ Φ(-X_i/h) / n`.
    pub fn negative_mass(&self) -> f64 {
        let n = self.sorted.len() as f64;
        self.sorted
            .iter()
            .map(|x| 0.5 * erfc(x / (self.h * std::f64::consts::SQRT_2)))
            .sum::<f64>()
            / n
    }

    fn domain(&self, domain: KdeDomain) -> Result<Interval> {
        let w = self.window();
        match domain {
            KdeDomain::Full => Ok(w),
            KdeDomain::Positive => {
                w.intersect(&Interval::half_line(0.0)).ok_or_else(|| {
                    Error::InvalidSample("window lies entirely below zero".into())
                })
            }
        }
    }

    /// `∫ f̂^α` over the chosen domain.
    pub fn power_integral(&self, alpha: f64, domain: KdeDomain, tol: &Tolerance) -> Result<f64> {
        let dom = self.domain(domain)?;
        // Split at the data points' hull so both far tails get their own panels.
        let inner = Interval { lower: self.sorted[0], upper: self.sorted[self.sorted.len() - 1] };
        let mut total = 0.0;
        let pieces = [
            Interval { lower: dom.lower, upper: inner.lower.max(dom.lower) },
            Interval { lower: inner.lower.max(dom.lower), upper: inner.upper.max(dom.lower) },
            Interval { lower: inner.upper.max(dom.lower), upper: dom.upper },
        ];
        for piece in pieces {
            if piece.upper > piece.lower {
                total += integrate(|x| (alpha * self.ln_density(x)).exp(), piece, tol).map_err(as_divergent)?;
            }
        }
        if total > 0.0 && total.is_finite() {
            Ok(total)
        } else {
            Err(Error::Divergent(format!("KDE power integral is {total}")))
        }
    }
}
