use statrs::function::gamma::gamma;

use super::{ContinuousModel, DiscretePmf, OrderPair};
use crate::error::{Error, Result};
use crate::special::zeta;

fn positive_denominator(d: f64, what: &str) -> Result<f64> {
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::Divergent(format!("{what}: denominator {d} is not positive")))
    }
}

/// `∫ f^α` from the tabulated expressions.
pub fn closed_form_integral(model: &ContinuousModel, alpha: f64) -> Result<f64> {
    use ContinuousModel::*;
    match *model {
        Uniform { a, b } => Ok((b - a).powf(1.0 - alpha)),
        Exponential { lambda } => Ok(lambda.powf(alpha - 1.0) / alpha),
        WeibullStandard { c } => {
            let w = positive_denominator((alpha * (c - 1.0) + 1.0) / c, "weibull")?;
            Ok(c.powf(alpha - 1.0) * gamma(w) / alpha.powf(w))
        }
        Weibull { shape: k, scale: l } => {
            let w = positive_denominator((alpha * (k - 1.0) + 1.0) / k, "weibull2")?;
            Ok(l.powf(1.0 - alpha) * k.powf(alpha - 1.0) * gamma(w) / alpha.powf(w))
        }
        Power { a } => {
            let d = positive_denominator(alpha * (a - 1.0) + 1.0, "power")?;
            Ok(a.powf(alpha) / d)
        }
        Pareto { c, scale } => {
            let d = positive_denominator(alpha * (c + 1.0) - 1.0, "pareto1")?;
            Ok(c.powf(alpha) * scale.powf(1.0 - alpha) / d)
        }
        Lomax { a, b } => {
            let d = positive_denominator(alpha * (b + 1.0) - 1.0, "lomax")?;
            Ok(b.powf(alpha) * a.powf(1.0 - alpha) / d)
        }
        _ => Err(Error::NoClosedForm(model.family().to_string())),
    }
}

/// `δ(α)(∫f^α)^{β-1}` from the tabulated expressions.
pub fn closed_form_rigf(model: &ContinuousModel, order: OrderPair) -> Result<f64> {
    let i = closed_form_integral(model, order.alpha())?;
    Ok(order.delta() * i.powf(order.beta() - 1.0))
}

/// Discrete analogue for the discrete uniform, geometric and zeta laws.
pub fn closed_form_rigf_discrete(pmf: &DiscretePmf, order: OrderPair) -> Result<f64> {
    let alpha = order.alpha();
    let s = match *pmf {
        DiscretePmf::Uniform { n } => (n as f64).powf(1.0 - alpha),
        DiscretePmf::Geometric { a } => (1.0 - a).powf(alpha) / (1.0 - a.powf(alpha)),
        DiscretePmf::Zeta { a } => {
            if alpha * a <= 1.0 {
                return Err(Error::Divergent(format!("zeta({}) diverges", alpha * a)));
            }
            zeta(alpha * a)? / zeta(a)?.powf(alpha)
        }
        DiscretePmf::Explicit(_) => return Err(Error::NoClosedForm("explicit pmf".into())),
    };
    Ok(order.delta() * s.powf(order.beta() - 1.0))
}

/// `∫ f^α g^{1-α}` for the Pareto, exponential and Lomax pairs.
pub fn closed_form_cross_integral(f: &ContinuousModel, g: &ContinuousModel, alpha: f64) -> Result<f64> {
    use ContinuousModel::*;
    let (p1, p2) = match (f, g) {
        (Pareto { c: c1, scale: s1 }, Pareto { c: c2, scale: s2 }) if s1 == s2 => (*c1, *c2),
        (Exponential { lambda: l1 }, Exponential { lambda: l2 }) => (*l1, *l2),
        (Lomax { a: a1, b: b1 }, Lomax { a: a2, b: b2 }) if a1 == a2 => (*b1, *b2),
        _ => {
            return Err(Error::NoClosedForm(format!("{} / {}", f.family(), g.family())));
        }
    };
    let d = positive_denominator(alpha * p1 + (1.0 - alpha) * p2, f.family())?;
    Ok(p1.powf(alpha) * p2.powf(1.0 - alpha) / d)
}

/// `δ*(α)(∫f^α g^{1-α})^{β-1}` for the tabulated pairs.
pub fn closed_form_rdigf(f: &ContinuousModel, g: &ContinuousModel, order: OrderPair) -> Result<f64> {
    let i = closed_form_cross_integral(f, g, order.alpha())?;
    Ok(order.delta_star() * i.powf(order.beta() - 1.0))
}
