use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::ContinuousModel;
use crate::error::{Error, Result};
use crate::solve::brent;

/// Families that can be fitted by maximum likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Exponential,
    Weibull2,
    Pareto1,
    LogLogistic,
    Iehl,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Exponential, Family::Weibull2, Family::Pareto1, Family::LogLogistic, Family::Iehl];

    pub fn name(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Weibull2 => "weibull2",
            Family::Pareto1 => "pareto1",
            Family::LogLogistic => "loglogistic",
            Family::Iehl => "iehl",
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            Family::Exponential => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" | "exp" => Ok(Family::Exponential),
            "weibull2" | "weibull" => Ok(Family::Weibull2),
            "pareto1" | "pareto" => Ok(Family::Pareto1),
            "loglogistic" | "ll" => Ok(Family::LogLogistic),
            "iehl" => Ok(Family::Iehl),
            other => Err(Error::Config(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FitResult {
    pub family: Family,
    pub model: ContinuousModel,
    pub loglik: f64,
    pub n: usize,
}

impl FitResult {
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        self.model.params()
    }

    pub fn param_count(&self) -> usize {
        self.family.param_count()
    }
}

fn loglik(model: &ContinuousModel, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| model.ln_density(x)).sum()
}

fn finish(family: Family, model: ContinuousModel, xs: &[f64]) -> Result<FitResult> {
    let ll = loglik(&model, xs);
    if !ll.is_finite() {
        return Err(Error::NonConvergent(format!("{family} log-likelihood is {ll}")));
    }
    Ok(FitResult { family, model, loglik: ll, n: xs.len() })
}

pub fn mle_fit(family: Family, sample: &[f64]) -> Result<FitResult> {
    if sample.is_empty() {
        return Err(Error::InvalidSample("empty sample".into()));
    }
    if sample.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidSample("observations must be positive and finite".into()));
    }
    if family.param_count() > 1 {
        if sample.len() < 2 {
            return Err(Error::InvalidSample(format!("{family} needs at least two observations")));
        }
        let first = sample[0];
        if sample.iter().all(|&x| x == first) {
            return Err(Error::InvalidSample(format!("{family} fit on a constant sample")));
        }
    }
    let n = sample.len() as f64;
    match family {
        Family::Exponential => {
            let mean = sample.iter().sum::<f64>() / n;
            finish(family, ContinuousModel::exponential(1.0 / mean)?, sample)
        }
        Family::Weibull2 => {
            let (k, lambda) = weibull_profile(sample)?;
            finish(family, ContinuousModel::weibull(k, lambda)?, sample)
        }
        Family::Pareto1 => {
            let sigma = sample.iter().copied().fold(f64::INFINITY, f64::min);
            let s: f64 = sample.iter().map(|x| (x / sigma).ln()).sum();
            finish(family, ContinuousModel::pareto_scaled(n / s, sigma)?, sample)
        }
        Family::LogLogistic => {
            let logs: Vec<f64> = sample.iter().map(|x| x.ln()).collect();
            let sd = log_sd(&logs);
            let start = [(std::f64::consts::PI / (sd * 3f64.sqrt())).ln(), median(&logs)];
            let theta = newton(start, n, |t| loglogistic_grad(sample, t))?;
            finish(family, ContinuousModel::loglogistic(theta[0].exp(), theta[1].exp())?, sample)
        }
        Family::Iehl => {
            let med = median(sample);
            let start = [0.0, (2.0 * med * 0.5f64.atanh()).ln()];
            let theta = newton(start, n, |t| iehl_grad(sample, t))?;
            finish(family, ContinuousModel::iehl(theta[0].exp(), theta[1].exp())?, sample)
        }
    }
}

fn log_sd(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)).sqrt()
}

fn median(xs: &[f64]) -> f64 {
    let mut s = xs.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Shape from the profile score equation on `x / max(x)`, then scale in closed form.
fn weibull_profile(xs: &[f64]) -> Result<(f64, f64)> {
    let xmax = xs.iter().copied().fold(0.0, f64::max);
    let ys: Vec<f64> = xs.iter().map(|x| x / xmax).collect();
    let mean_log = ys.iter().map(|y| y.ln()).sum::<f64>() / ys.len() as f64;
    let score = |k: f64| {
        let (mut s0, mut s1) = (0.0, 0.0);
        for &y in &ys {
            let p = y.powf(k);
            s0 += p;
            s1 += p * y.ln();
        }
        s1 / s0 - 1.0 / k - mean_log
    };
    let k = brent(score, 0.01, 100.0, 1e-12)?;
    let m = ys.iter().map(|y| y.powf(k)).sum::<f64>() / ys.len() as f64;
    Ok((k, xmax * m.powf(1.0 / k)))
}

/// Log-likelihood and gradient of the log-logistic law in `(ln α, ln λ)`.
fn loglogistic_grad(xs: &[f64], t: [f64; 2]) -> (f64, [f64; 2]) {
    let (a, s) = (t[0].exp(), t[1].exp());
    let n = xs.len() as f64;
    let (mut ll, mut g0, mut g1) = (n * (a.ln() - s.ln()), n, -a * n);
    for &x in xs {
        let lz = (x / s).ln();
        let u = a * lz;
        // p = e^u / (1 + e^u), ln(1 + e^u)
        let (p, l1p) = if u > 0.0 {
            (1.0 / (1.0 + (-u).exp()), u + (-u).exp().ln_1p())
        } else {
            let e = u.exp();
            (e / (1.0 + e), e.ln_1p())
        };
        ll += (a - 1.0) * lz - 2.0 * l1p;
        g0 += u - 2.0 * p * u;
        g1 += 2.0 * a * p;
    }
    (ll, [g0, g1])
}

/// Log-likelihood and gradient of the IEHL law in `(ln α, ln λ)`.
fn iehl_grad(xs: &[f64], t: [f64; 2]) -> (f64, [f64; 2]) {
    let (a, l) = (t[0].exp(), t[1].exp());
    let model = ContinuousModel::Iehl { shape: a, scale: l };
    let (mut ll, mut g0, mut g1) = (0.0, 0.0, 0.0);
    for &x in xs {
        let z = l / (2.0 * x);
        let ln_tanh = if z > 0.5 {
            let e = (-2.0 * z).exp();
            (-e).ln_1p() - e.ln_1p()
        } else {
            z.tanh().ln()
        };
        // z·2/sinh(2z), bounded by 1
        let ratio = if z < 1e-4 { 1.0 } else if z > 350.0 { 0.0 } else { 2.0 * z / (2.0 * z).sinh() };
        ll += model.ln_density(x);
        g0 += 1.0 + a * ln_tanh;
        g1 += (a - 1.0) * ratio - 2.0 * z * z.tanh() + 1.0;
    }
    (ll, [g0, g1])
}

/// Damped Newton ascent on a two-parameter log-likelihood. The Hessian is
/// differenced from the analytic gradient; non-ascent directions fall back to
/// the gradient. Converges when the per-observation gradient is below 1e-8.
fn newton<F>(start: [f64; 2], n: f64, f: F) -> Result<[f64; 2]>
where
    F: Fn([f64; 2]) -> (f64, [f64; 2]),
{
    let mut t = start;
    let (mut ll, mut g) = f(t);
    if !ll.is_finite() {
        return Err(Error::NonConvergent("log-likelihood not finite at the starting point".into()));
    }
    let converged = |g: [f64; 2]| g[0].abs().max(g[1].abs()) < 1e-8 * n;
    for _ in 0..500 {
        if converged(g) {
            return Ok(t);
        }
        let eps = 1e-6;
        let mut h = [[0.0; 2]; 2];
        for j in 0..2 {
            let mut tp = t;
            let mut tm = t;
            tp[j] += eps;
            tm[j] -= eps;
            let (gp, gm) = (f(tp).1, f(tm).1);
            for i in 0..2 {
                h[i][j] = (gp[i] - gm[i]) / (2.0 * eps);
            }
        }
        let h01 = 0.5 * (h[0][1] + h[1][0]);
        let det = h[0][0] * h[1][1] - h01 * h01;
        // Newton direction d = -H^{-1} g, valid ascent when -H is positive definite.
        let mut d = if h[0][0] < 0.0 && det > 0.0 {
            [(-h[1][1] * g[0] + h01 * g[1]) / det, (h01 * g[0] - h[0][0] * g[1]) / det]
        } else {
            let norm = (g[0] * g[0] + g[1] * g[1]).sqrt();
            [g[0] / norm * 0.1, g[1] / norm * 0.1]
        };
        if d[0] * g[0] + d[1] * g[1] <= 0.0 {
            let norm = (g[0] * g[0] + g[1] * g[1]).sqrt();
            d = [g[0] / norm * 0.1, g[1] / norm * 0.1];
        }
        let cap = d[0].abs().max(d[1].abs());
        if cap > 2.0 {
            d = [d[0] * 2.0 / cap, d[1] * 2.0 / cap];
        }
        let mut step = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let cand = [t[0] + step * d[0], t[1] + step * d[1]];
            let (lc, gc) = f(cand);
            if lc.is_finite() && lc >= ll - 1e-12 * ll.abs() {
                moved = cand != t;
                t = cand;
                ll = lc;
                g = gc;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    // The line search can stall within rounding of the optimum.
    let gmax = g[0].abs().max(g[1].abs());
    if gmax < 1e-6 * n {
        Ok(t)
    } else {
        Err(Error::NonConvergent(format!("gradient {gmax:e} after Newton iterations")))
    }
}
