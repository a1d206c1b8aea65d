//! Coherent systems of iid components described by a distortion function
//! `F_T = q ∘ F`.
//!
//! All integrals run over `u = F(x) ∈ (0, 1)`. With `Q = F⁻¹` the system
//! density at `Q(u)` is `q'(u) f(Q(u))`, so nothing is inverted numerically.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::distributions::{ContinuousModel, OrderPair};
use crate::error::{invalid, Error, Result};
use crate::igf::{as_divergent, BoundSide};
use crate::quadrature::{integrate, Interval, Tolerance};

/// Closure-based distortion `q` with its derivative.
pub struct CustomDistortion {
    pub label: String,
    pub q: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub q_prime: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

#[derive(Clone)]
pub enum Distortion {
    /// Lifetime of the `k`-th order statistic `X_{k:n}`.
    OrderStatistic { k: u32, n: u32 },
    Custom(Arc<CustomDistortion>),
}

impl fmt::Debug for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn ln_choose(n: u32, k: u32) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

/// `q(u) = Σ_{j=k}^{n} C(n,j) u^j (1-u)^{n-j}`, the distribution of `X_{k:n}`.
pub fn distortion_koutofn(k: u32, n: u32) -> Result<Distortion> {
    if k == 0 || k > n {
        return Err(invalid(format!("order statistic needs 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(Distortion::OrderStatistic { k, n })
}

impl Distortion {
    pub fn series(n: u32) -> Result<Self> {
        distortion_koutofn(1, n)
    }

    pub fn parallel(n: u32) -> Result<Self> {
        distortion_koutofn(n, n)
    }

    pub fn identity() -> Self {
        Distortion::OrderStatistic { k: 1, n: 1 }
    }

    /// Validated closure distortion: `q(0) = 0`, `q(1) = 1`, non-decreasing
    /// on a 1000-point grid.
    pub fn custom(c: CustomDistortion) -> Result<Self> {
        if (c.q)(0.0).abs() > 1e-12 || ((c.q)(1.0) - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("distortion '{}' must map 0→0 and 1→1", c.label)));
        }
        let mut prev = 0.0;
        for i in 1..=1000 {
            let v = (c.q)(i as f64 / 1000.0);
            if v < prev - 1e-12 {
                return Err(invalid(format!("distortion '{}' decreases", c.label)));
            }
            prev = v;
        }
        Ok(Distortion::Custom(Arc::new(c)))
    }

    pub fn label(&self) -> String {
        match self {
            Distortion::OrderStatistic { k: 1, n: 1 } => "identity".into(),
            Distortion::OrderStatistic { k: 1, n } => format!("series{n}"),
            Distortion::OrderStatistic { k, n } if k == n => format!("parallel{n}"),
            Distortion::OrderStatistic { k, n } => format!("X{k}:{n}"),
            Distortion::Custom(c) => c.label.clone(),
        }
    }

    pub fn q(&self, u: f64) -> f64 {
        match self {
            Distortion::OrderStatistic { k, n } => (*k..=*n)
                .map(|j| (ln_choose(*n, j)).exp() * u.powi(j as i32) * (1.0 - u).powi((n - j) as i32))
                .sum(),
            Distortion::Custom(c) => (c.q)(u),
        }
    }

    pub fn q_prime(&self, u: f64) -> f64 {
        self.ln_q_prime(u).exp()
    }

    pub fn ln_q_prime(&self, u: f64) -> f64 {
        match self {
            Distortion::OrderStatistic { k, n } => {
                let (k, n) = (*k, *n);
                let mut l = (n as f64).ln() + ln_choose(n - 1, k - 1);
                if k > 1 {
                    l += (k - 1) as f64 * u.ln();
                }
                if n > k {
                    l += (n - k) as f64 * (-u).ln_1p();
                }
                l
            }
            Distortion::Custom(c) => (c.q_prime)(u).ln(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SystemModel {
    pub baseline: ContinuousModel,
    pub distortion: Distortion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemMeasures {
    pub rigf: f64,
    pub igf: f64,
    pub renyi_entropy: f64,
    pub varentropy: f64,
}

impl SystemModel {
    pub fn new(baseline: ContinuousModel, distortion: Distortion) -> Self {
        SystemModel { baseline, distortion }
    }

    /// `ln f(Q(u))`
    fn ln_f_q(&self, u: f64) -> f64 {
        match self.baseline.quantile(u) {
            Ok(x) => self.baseline.ln_density(x),
            Err(_) => f64::NAN,
        }
    }

    /// `ln f_T(Q(u)) = ln q'(u) + ln f(Q(u))`
    pub fn ln_density_at_level(&self, u: f64) -> f64 {
        self.distortion.ln_q_prime(u) + self.ln_f_q(u)
    }

    fn over_unit<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        integrate(g, Interval::unit(), &Tolerance::default()).map_err(as_divergent)
    }

    /// `∫ f_T`, computed as `∫₀¹ q'(u) du`.
    pub fn total_mass(&self) -> Result<f64> {
        self.over_unit(|u| self.distortion.q_prime(u))
    }

    /// `∫ f_T^α = ∫₀¹ q'(u)^α f(Q(u))^{α-1} du`
    pub fn igf(&self, alpha: f64) -> Result<f64> {
        let v = self.over_unit(|u| {
            (alpha * self.distortion.ln_q_prime(u) + (alpha - 1.0) * self.ln_f_q(u)).exp()
        })?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Divergent(format!("system IGF is {v}")))
        }
    }

    /// Variance of `ln f_T(T)`.
    pub fn varentropy(&self) -> Result<f64> {
        let m1 = self.over_unit(|u| self.distortion.q_prime(u) * self.ln_density_at_level(u))?;
        let m2 = self.over_unit(|u| {
            let l = self.ln_density_at_level(u);
            self.distortion.q_prime(u) * l * l
        })?;
        Ok((m2 - m1 * m1).max(0.0))
    }
}

pub fn system_measures(system: &SystemModel, order: OrderPair) -> Result<SystemMeasures> {
    let igf = system.igf(order.alpha())?;
    Ok(SystemMeasures {
        rigf: order.delta() * igf.powf(order.beta() - 1.0),
        igf,
        renyi_entropy: order.delta() * igf.ln(),
        varentropy: system.varentropy()?,
    })
}

/// Closed form for a parallel system of three components with `F(x) = x^a`:
/// `δ(α)((3a)^α / (α(3a-1)+1))^{β-1}`.
pub fn system_rigf_closed_power_parallel(a: f64, order: OrderPair) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid(format!("power parameter must be positive, got {a}")));
    }
    let alpha = order.alpha();
    let d = alpha * (3.0 * a - 1.0) + 1.0;
    if d <= 0.0 {
        return Err(Error::Divergent(format!("α(3a-1)+1 = {d}")));
    }
    Ok(order.delta() * ((3.0 * a).powf(alpha) / d).powf(order.beta() - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemBounds {
    pub system_rigf: f64,
    pub component_rigf: f64,
    /// `(inf_u q'(u)^α)^{β-1}`
    pub xi1: f64,
    /// `(sup_u q'(u)^α)^{β-1}`
    pub xi2: f64,
    /// `δ(α)(∫ψ_α(q(u))du / M)^{β-1}` when the baseline density is bounded by `M`.
    pub m_bound: Option<f64>,
    pub m_side: Option<BoundSide>,
    /// `δ(α)(∫ψ_α(q(u))du / L)^{β-1}` when the baseline density is at least `L > 0`.
    pub l_bound: Option<f64>,
    pub l_side: Option<BoundSide>,
}

impl SystemBounds {
    /// Sides on which `ξ₁·R(X)` and `ξ₂·R(X)` fall relative to `R(T)`.
    pub fn xi_sides(&self, order: OrderPair) -> (BoundSide, BoundSide) {
        // inf·I_X ≤ I_T ≤ sup·I_X, raised to β-1 and scaled by δ(α).
        let flip = (order.beta() < 1.0) != (order.alpha() > 1.0);
        if flip {
            (BoundSide::Upper, BoundSide::Lower)
        } else {
            (BoundSide::Lower, BoundSide::Upper)
        }
    }
}

const GRID: usize = 1000;
const EDGE_PROBES: [f64; 2] = [1e-6, 1.0 - 1e-6];

/// Sandwich bounds from the extrema of `ψ_α(q(u)) / φ_α(u) = q'(u)^α` and
/// from density bounds on the baseline.
pub fn system_rigf_bounds(system: &SystemModel, order: OrderPair) -> Result<SystemBounds> {
    let (alpha, beta) = (order.alpha(), order.beta());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let levels = (0..GRID).map(|i| (i as f64 + 0.5) / GRID as f64).chain(EDGE_PROBES);
    for u in levels {
        let r = (alpha * system.distortion.ln_q_prime(u)).exp();
        if !r.is_finite() {
            return Err(Error::Unbounded(format!("q'(u)^α is {r} at u = {u}")));
        }
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let (xi1, xi2) = (lo.powf(beta - 1.0), hi.powf(beta - 1.0));
    if !xi1.is_finite() || !xi2.is_finite() {
        return Err(Error::Unbounded(format!("ratio extrema {lo}, {hi} with β = {beta}")));
    }
    let component = crate::igf::rigf_continuous(&system.baseline, order)?.value;
    let system_rigf = system_measures_rigf(system, order)?;

    let (m, l) = density_bounds(&system.baseline)?;
    let j = system.over_unit(|u| (alpha * system.ln_density_at_level(u)).exp())?;
    let side = |upper_density: bool| {
        // J/M ≤ I_T and J/L ≥ I_T
        let base_below = upper_density;
        let below_after_power = base_below == (beta >= 1.0);
        let bound_below = below_after_power == (alpha < 1.0);
        if bound_below {
            BoundSide::Lower
        } else {
            BoundSide::Upper
        }
    };
    let m_bound = m.map(|m| order.delta() * (j / m).powf(beta - 1.0));
    let l_bound = l.map(|l| order.delta() * (j / l).powf(beta - 1.0));
    Ok(SystemBounds {
        system_rigf,
        component_rigf: component,
        xi1,
        xi2,
        m_side: m_bound.map(|_| side(true)),
        m_bound,
        l_side: l_bound.map(|_| side(false)),
        l_bound,
    })
}

fn system_measures_rigf(system: &SystemModel, order: OrderPair) -> Result<f64> {
    Ok(order.delta() * system.igf(order.alpha())?.powf(order.beta() - 1.0))
}

/// Supremum and positive infimum of the baseline density, when they exist.
fn density_bounds(model: &ContinuousModel) -> Result<(Option<f64>, Option<f64>)> {
    let s = model.support();
    let mut values = Vec::with_capacity(GRID + 2);
    for i in 0..GRID {
        values.push(model.density(model.quantile((i as f64 + 0.5) / GRID as f64)?));
    }
    for end in [s.lower, s.upper] {
        if end.is_finite() {
            values.push(model.density(end));
        }
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let m = max.is_finite().then_some(max);
    let l = (s.is_finite() && min > 0.0).then_some(min);
    Ok((m, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sqrt_baseline() -> ContinuousModel {
        ContinuousModel::power(0.5).unwrap()
    }

    #[test]
    fn distortion_values() {
        assert_relative_eq!(Distortion::series(3).unwrap().q(0.5), 0.875, max_relative = 1e-14);
        assert_relative_eq!(distortion_koutofn(2, 3).unwrap().q(0.5), 0.5, max_relative = 1e-14);
        let p = Distortion::parallel(3).unwrap();
        for u in [0.1, 0.5, 0.9] {
            assert_relative_eq!(p.q(u), u * u * u, max_relative = 1e-14);
            let two = distortion_koutofn(2, 3).unwrap();
            assert_relative_eq!(two.q(u), 3.0 * u * u - 2.0 * u * u * u, max_relative = 1e-13);
            assert_relative_eq!(two.q_prime(u), 6.0 * u - 6.0 * u * u, max_relative = 1e-13);
        }
        assert!(distortion_koutofn(4, 3).is_err());
        assert!(distortion_koutofn(0, 3).is_err());
    }

    #[test]
    fn custom_distortion_validation() {
        let bad = CustomDistortion { label: "bad".into(), q: Box::new(|u| u * 0.5), q_prime: Box::new(|_| 0.5) };
        assert!(Distortion::custom(bad).is_err());
        let ok = CustomDistortion { label: "sq".into(), q: Box::new(|u| u * u), q_prime: Box::new(|u| 2.0 * u) };
        assert!(Distortion::custom(ok).is_ok());
    }

    #[test]
    fn densities_normalize() {
        for base in [sqrt_baseline(), ContinuousModel::exponential(2.0).unwrap()] {
            for (k, n) in [(1, 3), (2, 3), (3, 3), (2, 5)] {
                let s = SystemModel::new(base.clone(), distortion_koutofn(k, n).unwrap());
                assert!((s.total_mass().unwrap() - 1.0).abs() < 1e-8);
                assert!((s.igf(1.0).unwrap() - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_quadrature() {
        let o = OrderPair::new(2.0, 2.0).unwrap();
        assert_relative_eq!(system_rigf_closed_power_parallel(1.0, o).unwrap(), -1.8, max_relative = 1e-14);
        let o = OrderPair::new(1.2, 0.5).unwrap();
        let s = SystemModel::new(sqrt_baseline(), Distortion::parallel(3).unwrap());
        let q = system_measures(&s, o).unwrap().rigf;
        assert!((system_rigf_closed_power_parallel(0.5, o).unwrap() - q).abs() < 1e-7);
        assert_relative_eq!(system_rigf_closed_power_parallel(0.5, OrderPair::new(1.2, 1.0).unwrap()).unwrap(), -5.0, max_relative = 1e-12);
    }

    #[test]
    fn identity_distortion_collapses_bounds() {
        let s = SystemModel::new(ContinuousModel::exponential(1.0).unwrap(), Distortion::identity());
        let b = system_rigf_bounds(&s, OrderPair::new(2.0, 2.0).unwrap()).unwrap();
        assert_relative_eq!(b.xi1, 1.0, max_relative = 1e-12);
        assert_relative_eq!(b.xi2, 1.0, max_relative = 1e-12);
        assert_relative_eq!(b.system_rigf, b.component_rigf, max_relative = 1e-9);
    }
}
