//! Single-distribution generating functions and the entropies they generate.

use serde::Serialize;

use crate::distributions::{ContinuousModel, DiscretePmf, OrderPair};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate, Interval, Tolerance};

/// Inner integral and assembled value of a generating function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GfReport {
    pub integral: f64,
    pub value: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GfReport {
    pub(crate) fn assemble(integral: f64, prefactor: f64, order: OrderPair) -> Result<Self> {
        if !(integral > 0.0) || !integral.is_finite() {
            return Err(Error::Divergent(format!("inner integral is {integral}")));
        }
        Ok(GfReport {
            integral,
            value: prefactor * integral.powf(order.beta() - 1.0),
            alpha: order.alpha(),
            beta: order.beta(),
        })
    }

    pub fn order(&self) -> OrderPair {
        OrderPair::new(self.alpha, self.beta).expect("validated at construction")
    }

    /// `k`-th derivative in `β`: `value·(ln I)^k`.
    pub fn derivative(&self, k: u32) -> f64 {
        self.value * self.integral.ln().powi(k as i32)
    }
}

pub(crate) fn as_divergent(e: Error) -> Error {
    match e {
        Error::NonConvergent(m) => Error::Divergent(m),
        other => other,
    }
}

/// `∫ g(f(x)) dx` over the support, with `g` receiving `ln f(x)`.
fn integrate_over<G: Fn(f64) -> f64>(model: &ContinuousModel, g: G, tol: &Tolerance) -> Result<f64> {
    integrate(
        |x| {
            let lf = model.ln_density(x);
            if lf == f64::NEG_INFINITY {
                0.0
            } else {
                g(lf)
            }
        },
        model.support(),
        tol,
    )
    .map_err(as_divergent)
}

/// Golomb's information generating function `∫ f^γ`.
pub fn igf_golomb(model: &ContinuousModel, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid(format!("gamma must be positive, got {gamma}")));
    }
    let v = integrate_over(model, |lf| (gamma * lf).exp(), &Tolerance::default())?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Divergent(format!("∫f^{gamma} = {v}")))
    }
}

/// Quantile form `∫₀¹ f^{α-1}(F⁻¹(u)) du` of `∫ f^α`.
pub fn igf_quantile_form(model: &ContinuousModel, alpha: f64) -> Result<f64> {
    integrate(
        |u| match model.quantile(u) {
            Ok(x) => ((alpha - 1.0) * model.ln_density(x)).exp(),
            Err(_) => f64::NAN,
        },
        Interval::unit(),
        &Tolerance::default(),
    )
    .map_err(as_divergent)
}

pub fn rigf_continuous(model: &ContinuousModel, order: OrderPair) -> Result<GfReport> {
    let i = igf_golomb(model, order.alpha())?;
    GfReport::assemble(i, order.delta(), order)
}

pub fn rigf_discrete(pmf: &DiscretePmf, order: OrderPair) -> Result<GfReport> {
    let s = pmf.power_sum(order.alpha())?;
    GfReport::assemble(s, order.delta(), order)
}

pub fn renyi_entropy(model: &ContinuousModel, alpha: f64) -> Result<f64> {
    let order = OrderPair::new(alpha, 1.0)?;
    Ok(order.delta() * igf_golomb(model, alpha)?.ln())
}

pub fn renyi_entropy_discrete(pmf: &DiscretePmf, alpha: f64) -> Result<f64> {
    let order = OrderPair::new(alpha, 1.0)?;
    Ok(order.delta() * pmf.power_sum(alpha)?.ln())
}

/// `-∫ f ln f`
pub fn shannon_entropy(model: &ContinuousModel) -> Result<f64> {
    shannon_order_q(model, 1)
}

/// Onicescu's informational energy `∫ f²`.
pub fn informational_energy(model: &ContinuousModel) -> Result<f64> {
    igf_golomb(model, 2.0)
}

/// `p`-th entropic moment `δ(α) I^{β-1} (ln I)^p`.
pub fn entropic_moment(model: &ContinuousModel, order: OrderPair, p: u32) -> Result<f64> {
    Ok(rigf_continuous(model, order)?.derivative(p))
}

/// Hill number `(Σ p_i^α)^{1/(1-α)}`.
pub fn hill_number(pmf: &DiscretePmf, alpha: f64) -> Result<f64> {
    let order = OrderPair::new(alpha, 1.0)?;
    Ok(pmf.power_sum(alpha)?.powf(order.delta()))
}

/// Shannon entropy of order `q`: `∫ f (-ln f)^q`.
pub fn shannon_order_q(model: &ContinuousModel, q: u32) -> Result<f64> {
    if q == 0 {
        return Ok(1.0);
    }
    integrate_over(model, |lf| lf.exp() * (-lf).powi(q as i32), &Tolerance::default())
}

/// Truncated series `δ(α)(Σ_{q≤Q} (1-α)^q ξ_q / q!)^{β-1}`.
pub fn rigf_series_approx(model: &ContinuousModel, order: OrderPair, terms: u32) -> Result<f64> {
    let step = 1.0 - order.alpha();
    let mut sum = 0.0;
    let mut coef = 1.0;
    for q in 0..=terms {
        if q > 0 {
            coef *= step / q as f64;
        }
        sum += coef * shannon_order_q(model, q)?;
    }
    if sum <= 0.0 {
        return Err(Error::NegativeBase(sum));
    }
    Ok(order.delta() * sum.powf(order.beta() - 1.0))
}

pub fn escort(model: &ContinuousModel, r: f64) -> Result<ContinuousModel> {
    ContinuousModel::escort(model, r)
}

/// RIGF of `aX + b` given the RIGF of `X`.
pub fn rigf_affine(order: OrderPair, a: f64, b: f64, rigf_x: f64) -> Result<f64> {
    if !(a > 0.0) || !(b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(invalid(format!("affine map needs a > 0 and b >= 0, got a={a}, b={b}")));
    }
    Ok(a.powf((1.0 - order.alpha()) * (order.beta() - 1.0)) * rigf_x)
}

/// Side of a bound relative to the RIGF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundSide {
    /// `R ≤ bound`
    Upper,
    /// `R ≥ bound`
    Lower,
    /// `R = bound`
    Equal,
}

impl BoundSide {
    pub fn holds(self, value: f64, bound: f64, tol: f64) -> bool {
        let slack = tol * (1.0 + value.abs().max(bound.abs()));
        match self {
            BoundSide::Upper => value <= bound + slack,
            BoundSide::Lower => value >= bound - slack,
            BoundSide::Equal => (value - bound).abs() <= slack,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RigfBounds {
    pub value: f64,
    /// `δ(α) G_l` with `l = αβ - α - β + 2`
    pub jensen_bound: f64,
    pub jensen_side: BoundSide,
    /// `½ R^{(α+1)/2}_{2β-1}`
    pub cauchy_schwarz_bound: f64,
    pub cauchy_schwarz_side: BoundSide,
}

/// Jensen and Cauchy–Schwarz bounds on the RIGF together with the side each
/// one falls on for the given `(α, β)`.
pub fn rigf_bounds(model: &ContinuousModel, order: OrderPair) -> Result<RigfBounds> {
    let (alpha, beta) = (order.alpha(), order.beta());
    let jensen_side = if beta == 1.0 || beta == 2.0 {
        BoundSide::Equal
    } else if alpha < 1.0 {
        if !(1.0..=2.0).contains(&beta) {
            BoundSide::Upper
        } else {
            return Err(Error::RegimeUnsupported { alpha, beta });
        }
    } else if beta > 1.0 && beta < 2.0 {
        BoundSide::Upper
    } else {
        BoundSide::Lower
    };
    let cauchy_schwarz_side = match (alpha < 1.0, beta >= 1.0) {
        _ if beta == 1.0 => BoundSide::Equal,
        (true, true) | (false, false) => BoundSide::Lower,
        (true, false) | (false, true) => BoundSide::Upper,
    };
    let value = rigf_continuous(model, order)?.value;
    let l = alpha * beta - alpha - beta + 2.0;
    let g_l = if l > 0.0 {
        igf_golomb(model, l)?
    } else if model.support().is_finite() {
        integrate_over(model, |lf| (l * lf).exp(), &Tolerance::default()).unwrap_or(f64::INFINITY)
    } else {
        // ∫ f^l with l ≤ 0 over an unbounded support: the bound is vacuous.
        f64::INFINITY
    };
    let jensen_bound = order.delta() * g_l;
    // Written out because the order 2β-1 may be zero or negative.
    let half = (alpha + 1.0) / 2.0;
    let cauchy_schwarz_bound = 0.5 / (1.0 - half) * igf_golomb(model, half)?.powf(2.0 * beta - 2.0);
    Ok(RigfBounds { value, jensen_bound, jensen_side, cauchy_schwarz_bound, cauchy_schwarz_side })
}

/// `true` iff `f(F⁻¹(u)) ≥ g(G⁻¹(u))` on an interior grid, i.e. `x` is
/// less dispersed than `y` on that grid.
pub fn check_dispersive_order(x: &ContinuousModel, y: &ContinuousModel, grid_size: usize) -> Result<bool> {
    let n = grid_size.max(1);
    for i in 0..n {
        let u = (i as f64 + 0.5) / n as f64;
        let fx = x.density(x.quantile(u)?);
        let gy = y.density(y.quantile(u)?);
        if fx < gy * (1.0 - 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}
