//! Probability models: densities, distribution functions, quantiles and
//! inverse-transform samplers.
//!
//! The inverted exponentiated half-logistic family (`iehl`) is parameterized
//! here as
//!
//! ```text
//! F(x) = 1 - tanh(λ/(2x))^α,    x > 0,
//! ```
//!
//! i.e. `tanh(λ/(2x))^α = [(1 - e^{-λ/x}) / (1 + e^{-λ/x})]^α` is its
//! survival function. Read literally as a CDF that expression decreases in
//! `x`, so it cannot be one.

mod closed_form;
mod discrete;
mod spec;

use std::f64::consts::LN_2;
use std::fmt;
use std::sync::Arc;

use rand::distr::Open01;
use rand::Rng;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate, Interval, Tolerance};
use crate::rng;
use crate::solve::brent;

pub use closed_form::{
    closed_form_cross_integral, closed_form_integral, closed_form_rdigf, closed_form_rigf,
    closed_form_rigf_discrete,
};
pub use discrete::DiscretePmf;
pub use spec::ModelSpec;

/// Order parameters `(α, β)` of the generating functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderPair {
    alpha: f64,
    beta: f64,
}

impl OrderPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(invalid(format!("alpha must be positive and finite, got {alpha}")));
        }
        if (alpha - 1.0).abs() < 1e-9 {
            return Err(invalid(format!("alpha = {alpha} is within 1e-9 of 1")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(invalid(format!("beta must be positive and finite, got {beta}")));
        }
        Ok(OrderPair { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `1 / (1 - α)`
    pub fn delta(&self) -> f64 {
        1.0 / (1.0 - self.alpha)
    }

    /// `1 / (α - 1)`
    pub fn delta_star(&self) -> f64 {
        1.0 / (self.alpha - 1.0)
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        OrderPair::new(self.alpha, beta)
    }
}

/// Strictly monotone transformation `y = ψ(x)`.
#[derive(Clone)]
pub enum MonotoneMap {
    Identity,
    Affine { scale: f64, shift: f64 },
    /// `x²`, only on non-negative supports.
    Square,
    Exp,
    Negate,
    Custom(Arc<CustomMap>),
}

/// User-supplied map given as (forward, derivative, inverse).
pub struct CustomMap {
    pub label: String,
    pub forward: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub derivative: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub inverse: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneMap::Identity => write!(f, "Identity"),
            MonotoneMap::Affine { scale, shift } => write!(f, "Affine({scale}·x + {shift})"),
            MonotoneMap::Square => write!(f, "Square"),
            MonotoneMap::Exp => write!(f, "Exp"),
            MonotoneMap::Negate => write!(f, "Negate"),
            MonotoneMap::Custom(c) => write!(f, "Custom({})", c.label),
        }
    }
}

impl MonotoneMap {
    pub fn forward(&self, x: f64) -> f64 {
        match self {
            MonotoneMap::Identity => x,
            MonotoneMap::Affine { scale, shift } => scale * x + shift,
            MonotoneMap::Square => x * x,
            MonotoneMap::Exp => x.exp(),
            MonotoneMap::Negate => -x,
            MonotoneMap::Custom(c) => (c.forward)(x),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            MonotoneMap::Identity => 1.0,
            MonotoneMap::Affine { scale, .. } => *scale,
            MonotoneMap::Square => 2.0 * x,
            MonotoneMap::Exp => x.exp(),
            MonotoneMap::Negate => -1.0,
            MonotoneMap::Custom(c) => (c.derivative)(x),
        }
    }

    pub fn inverse(&self, y: f64) -> f64 {
        match self {
            MonotoneMap::Identity => y,
            MonotoneMap::Affine { scale, shift } => (y - shift) / scale,
            MonotoneMap::Square => y.sqrt(),
            MonotoneMap::Exp => y.ln(),
            MonotoneMap::Negate => -y,
            MonotoneMap::Custom(c) => (c.inverse)(y),
        }
    }

    /// Checks the derivative sign on `grid` interior quantiles of `base` and
    /// returns `true` for increasing maps.
    pub fn direction_on(&self, base: &ContinuousModel, grid: usize) -> Result<bool> {
        let support = base.support();
        match self {
            MonotoneMap::Square if support.lower < 0.0 => {
                return Err(Error::NonMonotone("x² on a support reaching below 0".into()));
            }
            MonotoneMap::Affine { scale, .. } if *scale == 0.0 || !scale.is_finite() => {
                return Err(Error::NonMonotone(format!("affine scale {scale}")));
            }
            _ => {}
        }
        let grid = grid.max(2);
        let mut sign = 0.0;
        for i in 0..grid {
            let u = (i as f64 + 0.5) / grid as f64;
            let x = base.quantile(u)?;
            let d = self.derivative(x);
            if !(d.is_finite()) || d == 0.0 {
                return Err(Error::NonMonotone(format!("derivative {d} at x = {x}")));
            }
            if sign == 0.0 {
                sign = d.signum();
            } else if d.signum() != sign {
                return Err(Error::NonMonotone(format!("derivative changes sign near x = {x}")));
            }
        }
        Ok(sign > 0.0)
    }
}

/// A continuous distribution with analytic or numerically derived density,
/// distribution function and quantile.
#[derive(Debug, Clone)]
pub enum ContinuousModel {
    Uniform { a: f64, b: f64 },
    Exponential { lambda: f64 },
    /// `f(x) = c x^{c-1} e^{-x^c}`
    WeibullStandard { c: f64 },
    /// `f(x) = (k/λ)(x/λ)^{k-1} e^{-(x/λ)^k}`
    Weibull { shape: f64, scale: f64 },
    /// `F(x) = x^a` on `[0, 1]`
    Power { a: f64 },
    /// `f(x) = c σ^c x^{-(c+1)}` on `[σ, ∞)`
    Pareto { c: f64, scale: f64 },
    /// `f(x) = (b/a)(1 + x/a)^{-(b+1)}`
    Lomax { a: f64, b: f64 },
    /// `F(x) = 1 / (1 + (x/λ)^{-α})`
    LogLogistic { shape: f64, scale: f64 },
    /// `F(x) = 1 - tanh(λ/(2x))^α`
    Iehl { shape: f64, scale: f64 },
    Gamma { shape: f64, rate: f64 },
    /// Density `f^r / ∫f^r`.
    Escort { base: Arc<ContinuousModel>, r: f64, ln_norm: f64 },
    /// Density `f^r g^{1-r} / ∫f^r g^{1-r}` on the common support.
    GeneralizedEscort { f: Arc<ContinuousModel>, g: Arc<ContinuousModel>, r: f64, ln_norm: f64 },
    /// Law of `ψ(X)`.
    Transformed { base: Arc<ContinuousModel>, map: MonotoneMap, increasing: bool },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

// ln tanh(z) for z > 0 without cancellation at either end.
fn ln_tanh(z: f64) -> f64 {
    if z > 0.5 {
        let e = (-2.0 * z).exp();
        (-e).ln_1p() - e.ln_1p()
    } else {
        z.tanh().ln()
    }
}

// ln sech²(z) for z > 0.
fn ln_sech2(z: f64) -> f64 {
    2.0 * (LN_2 - z - (-2.0 * z).exp().ln_1p())
}

impl ContinuousModel {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(invalid(format!("uniform needs a < b, got ({a}, {b})")));
        }
        Ok(ContinuousModel::Uniform { a, b })
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        positive("lambda", lambda)?;
        Ok(ContinuousModel::Exponential { lambda })
    }

    pub fn weibull_standard(c: f64) -> Result<Self> {
        positive("c", c)?;
        Ok(ContinuousModel::WeibullStandard { c })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        positive("k", shape)?;
        positive("lambda", scale)?;
        Ok(ContinuousModel::Weibull { shape, scale })
    }

    pub fn power(a: f64) -> Result<Self> {
        positive("a", a)?;
        Ok(ContinuousModel::Power { a })
    }

    pub fn pareto(c: f64) -> Result<Self> {
        Self::pareto_scaled(c, 1.0)
    }

    pub fn pareto_scaled(c: f64, scale: f64) -> Result<Self> {
        positive("c", c)?;
        positive("sigma", scale)?;
        Ok(ContinuousModel::Pareto { c, scale })
    }

    pub fn lomax(a: f64, b: f64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        Ok(ContinuousModel::Lomax { a, b })
    }

    pub fn loglogistic(shape: f64, scale: f64) -> Result<Self> {
        positive("alpha", shape)?;
        positive("lambda", scale)?;
        Ok(ContinuousModel::LogLogistic { shape, scale })
    }

    pub fn iehl(shape: f64, scale: f64) -> Result<Self> {
        positive("alpha", shape)?;
        positive("lambda", scale)?;
        Ok(ContinuousModel::Iehl { shape, scale })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        positive("shape", shape)?;
        positive("rate", rate)?;
        Ok(ContinuousModel::Gamma { shape, rate })
    }

    /// Escort model of order `r`.
    pub fn escort(base: &ContinuousModel, r: f64) -> Result<Self> {
        positive("r", r)?;
        let base = Arc::new(base.clone());
        let b = base.clone();
        let norm = integrate_density(move |x| (r * b.ln_density(x)).exp(), base.support())?;
        Ok(ContinuousModel::Escort { base, r, ln_norm: norm.ln() })
    }

    /// Generalized escort model of order `r` built from `f` and `g`.
    pub fn generalized_escort(f: &ContinuousModel, g: &ContinuousModel, r: f64) -> Result<Self> {
        positive("r", r)?;
        let f = Arc::new(f.clone());
        let g = Arc::new(g.clone());
        let support = f.support().intersect(&g.support()).ok_or(Error::SupportMismatch)?;
        let (ff, gg) = (f.clone(), g.clone());
        let norm = integrate_density(
            move |x| (r * ff.ln_density(x) + (1.0 - r) * gg.ln_density(x)).exp(),
            support,
        )?;
        Ok(ContinuousModel::GeneralizedEscort { f, g, r, ln_norm: norm.ln() })
    }

    /// Law of `map(X)`; fails with `NonMonotone` when the derivative changes sign.
    pub fn transformed(base: &ContinuousModel, map: MonotoneMap) -> Result<Self> {
        let increasing = map.direction_on(base, 1000)?;
        Ok(ContinuousModel::Transformed { base: Arc::new(base.clone()), map, increasing })
    }

    pub fn family(&self) -> &'static str {
        match self {
            ContinuousModel::Uniform { .. } => "uniform",
            ContinuousModel::Exponential { .. } => "exponential",
            ContinuousModel::WeibullStandard { .. } => "weibull_standard",
            ContinuousModel::Weibull { .. } => "weibull2",
            ContinuousModel::Power { .. } => "power",
            ContinuousModel::Pareto { .. } => "pareto1",
            ContinuousModel::Lomax { .. } => "lomax",
            ContinuousModel::LogLogistic { .. } => "loglogistic",
            ContinuousModel::Iehl { .. } => "iehl",
            ContinuousModel::Gamma { .. } => "gamma",
            ContinuousModel::Escort { .. } => "escort",
            ContinuousModel::GeneralizedEscort { .. } => "generalized_escort",
            ContinuousModel::Transformed { .. } => "transformed",
        }
    }

    /// Named parameters, in the order used by JSON model descriptions.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use ContinuousModel::*;
        match *self {
            Uniform { a, b } => vec![("a", a), ("b", b)],
            Exponential { lambda } => vec![("lambda", lambda)],
            WeibullStandard { c } => vec![("c", c)],
            Weibull { shape, scale } => vec![("k", shape), ("lambda", scale)],
            Power { a } => vec![("a", a)],
            Pareto { c, scale } => vec![("c", c), ("sigma", scale)],
            Lomax { a, b } => vec![("a", a), ("b", b)],
            LogLogistic { shape, scale } | Iehl { shape, scale } => {
                vec![("alpha", shape), ("lambda", scale)]
            }
            Gamma { shape, rate } => vec![("shape", shape), ("rate", rate)],
            Escort { r, .. } | GeneralizedEscort { r, .. } => vec![("r", r)],
            Transformed { .. } => vec![],
        }
    }

    pub fn support(&self) -> Interval {
        use ContinuousModel::*;
        match self {
            Uniform { a, b } => Interval { lower: *a, upper: *b },
            Power { .. } => Interval::unit(),
            Pareto { scale, .. } => Interval::half_line(*scale),
            Exponential { .. } | WeibullStandard { .. } | Weibull { .. } | Lomax { .. }
            | LogLogistic { .. } | Iehl { .. } | Gamma { .. } => Interval::half_line(0.0),
            Escort { base, .. } => base.support(),
            GeneralizedEscort { f, g, .. } => {
                f.support().intersect(&g.support()).expect("checked at construction")
            }
            Transformed { base, map, increasing } => {
                let s = base.support();
                let (lo, hi) = (map.forward(s.lower), map.forward(s.upper));
                if *increasing {
                    Interval { lower: lo, upper: hi }
                } else {
                    Interval { lower: hi, upper: lo }
                }
            }
        }
    }

    /// Natural log of the density; `-∞` outside the support.
    pub fn ln_density(&self, x: f64) -> f64 {
        use ContinuousModel::*;
        let s = self.support();
        if !(x >= s.lower && x <= s.upper) {
            return f64::NEG_INFINITY;
        }
        match self {
            Uniform { a, b } => -(b - a).ln(),
            Exponential { lambda } => lambda.ln() - lambda * x,
            WeibullStandard { c } => c.ln() + (c - 1.0) * x.ln() - x.powf(*c),
            Weibull { shape: k, scale: l } => {
                let z = x / l;
                (k / l).ln() + (k - 1.0) * z.ln() - z.powf(*k)
            }
            Power { a } => a.ln() + (a - 1.0) * x.ln(),
            Pareto { c, scale } => c.ln() + c * scale.ln() - (c + 1.0) * x.ln(),
            Lomax { a, b } => (b / a).ln() - (b + 1.0) * (x / a).ln_1p(),
            LogLogistic { shape: k, scale: l } => {
                let lz = (x / l).ln();
                // ln(1 + z^k) computed without overflow
                let t = k * lz;
                let l1p = if t > 0.0 { t + (-t).exp().ln_1p() } else { t.exp().ln_1p() };
                (k / l).ln() + (k - 1.0) * lz - 2.0 * l1p
            }
            Iehl { shape: a, scale: l } => {
                if x == 0.0 {
                    return f64::NEG_INFINITY;
                }
                let z = l / (2.0 * x);
                a.ln() + (a - 1.0) * ln_tanh(z) + (l / (2.0 * x * x)).ln() + ln_sech2(z)
            }
            Gamma { shape, rate } => {
                shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(*shape)
            }
            Escort { base, r, ln_norm } => r * base.ln_density(x) - ln_norm,
            GeneralizedEscort { f, g, r, ln_norm } => {
                r * f.ln_density(x) + (1.0 - r) * g.ln_density(x) - ln_norm
            }
            Transformed { base, map, .. } => {
                let z = map.inverse(x);
                base.ln_density(z) - map.derivative(z).abs().ln()
            }
        }
    }

    /// Density, zero outside the support.
    pub fn density(&self, x: f64) -> f64 {
        match self {
            ContinuousModel::Uniform { a, b } if x >= *a && x <= *b => 1.0 / (b - a),
            ContinuousModel::Exponential { lambda } if x >= 0.0 => lambda * (-lambda * x).exp(),
            _ => {
                let l = self.ln_density(x);
                if l.is_nan() {
                    0.0
                } else {
                    l.exp()
                }
            }
        }
    }

    fn check_support(&self, x: f64) -> Result<()> {
        let s = self.support();
        if x.is_nan() || x < s.lower || x > s.upper {
            Err(Error::OutOfSupport { x, lower: s.lower, upper: s.upper })
        } else {
            Ok(())
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(self.density(x))
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        use ContinuousModel::*;
        self.check_support(x)?;
        Ok(match self {
            Uniform { a, b } => (x - a) / (b - a),
            Exponential { lambda } => -(-lambda * x).exp_m1(),
            WeibullStandard { c } => -(-x.powf(*c)).exp_m1(),
            Weibull { shape, scale } => -(-(x / scale).powf(*shape)).exp_m1(),
            Power { a } => x.powf(*a),
            Pareto { c, scale } => 1.0 - (scale / x).powf(*c),
            Lomax { a, b } => 1.0 - (-b * (x / a).ln_1p()).exp(),
            LogLogistic { shape, scale } => 1.0 / (1.0 + (x / scale).powf(-shape)),
            Iehl { shape, scale } => {
                if x == 0.0 {
                    0.0
                } else {
                    -(shape * ln_tanh(scale / (2.0 * x))).exp_m1()
                }
            }
            Gamma { shape, rate } => gamma_lr(*shape, rate * x),
            Transformed { base, map, increasing } => {
                let p = base.cdf(map.inverse(x).clamp(base.support().lower, base.support().upper))?;
                if *increasing {
                    p
                } else {
                    1.0 - p
                }
            }
            Escort { .. } | GeneralizedEscort { .. } => {
                let s = self.support();
                if x <= s.lower {
                    0.0
                } else {
                    let v = integrate(|t| self.density(t), Interval { lower: s.lower, upper: x }, &Tolerance::default())?;
                    v.clamp(0.0, 1.0)
                }
            }
        })
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        use ContinuousModel::*;
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::OutOfSupport { x: u, lower: 0.0, upper: 1.0 });
        }
        Ok(match self {
            Uniform { a, b } => a + u * (b - a),
            Exponential { lambda } => -(-u).ln_1p() / lambda,
            WeibullStandard { c } => (-(-u).ln_1p()).powf(1.0 / c),
            Weibull { shape, scale } => scale * (-(-u).ln_1p()).powf(1.0 / shape),
            Power { a } => u.powf(1.0 / a),
            Pareto { c, scale } => scale * (1.0 - u).powf(-1.0 / c),
            Lomax { a, b } => a * ((-(-u).ln_1p() / b).exp_m1()),
            LogLogistic { shape, scale } => scale * (u / (1.0 - u)).powf(1.0 / shape),
            Iehl { shape, scale } => {
                // tanh(z) = (1-u)^{1/α};  atanh(g) = ½ ln((1+g)/(1-g))
                let lg = (-u).ln_1p() / shape;
                let one_minus_g = -lg.exp_m1();
                let g = lg.exp();
                let z = 0.5 * ((1.0 + g) / one_minus_g).ln();
                scale / (2.0 * z)
            }
            Transformed { base, map, increasing } => {
                map.forward(base.quantile(if *increasing { u } else { 1.0 - u })?)
            }
            Gamma { .. } | Escort { .. } | GeneralizedEscort { .. } => self.numeric_quantile(u)?,
        })
    }

    fn numeric_quantile(&self, u: f64) -> Result<f64> {
        let s = self.support();
        let mut lo = if s.lower.is_finite() { s.lower } else { -1.0 };
        let mut hi = if s.upper.is_finite() { s.upper } else { lo.max(0.0) + 1.0 };
        let cdf = |x: f64| -> f64 {
            if x <= s.lower {
                0.0
            } else if x >= s.upper {
                1.0
            } else {
                self.cdf(x).unwrap_or(f64::NAN)
            }
        };
        while cdf(lo) > u {
            lo -= 2.0 * (hi - lo);
            if lo < -1e300 {
                return Err(Error::NonConvergent("quantile bracket".into()));
            }
        }
        while cdf(hi) < u {
            hi += 2.0 * (hi - lo);
            if hi > 1e300 {
                return Err(Error::NonConvergent("quantile bracket".into()));
            }
        }
        brent(|x| cdf(x) - u, lo, hi, 1e-13 * (1.0 + hi.abs()))
    }

    /// `n` draws by inverse-transform sampling, reproducible for a fixed seed.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        self.sample_with(n, &mut rng::seeded(seed))
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(invalid("sample size must be at least 1"));
        }
        (0..n).map(|_| self.quantile(rng.sample(Open01))).collect()
    }
}

fn integrate_density<F: Fn(f64) -> f64>(f: F, support: Interval) -> Result<f64> {
    let v = integrate(f, support, &Tolerance::default()).map_err(|e| match e {
        Error::NonConvergent(m) => Error::Divergent(m),
        other => other,
    })?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Divergent(format!("normalizing integral is {v}")))
    }
}

/// Which part of a model to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval {
    Pdf,
    Cdf,
    Quantile,
}

pub fn dist_eval(model: &ContinuousModel, what: Eval, x: f64) -> Result<f64> {
    match what {
        Eval::Pdf => model.pdf(x),
        Eval::Cdf => model.cdf(x),
        Eval::Quantile => model.quantile(x),
    }
}
