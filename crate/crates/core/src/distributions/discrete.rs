use crate::error::{invalid, Error, Result};
use crate::quadrature::{sum_series, Tolerance};
use crate::special::zeta;

/// Probability mass function on the positive integers (or `0, 1, ...` for
/// the geometric law).
#[derive(Debug, Clone, PartialEq)]
pub enum DiscretePmf {
    /// `p_i = 1/n`, `i = 1..=n`
    Uniform { n: u64 },
    /// `p_i = b a^i`, `b = 1 - a`, `i = 0, 1, ...`
    Geometric { a: f64 },
    /// `p_i = i^{-a} / ζ(a)`, `i = 1, 2, ...`
    Zeta { a: f64 },
    Explicit(Vec<f64>),
}

/// Mass left beyond the truncation point of an infinite pmf.
pub const TAIL_MASS: f64 = 1e-12;

impl DiscretePmf {
    pub fn uniform(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("discrete uniform needs n >= 1"));
        }
        Ok(DiscretePmf::Uniform { n })
    }

    pub fn geometric(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(invalid(format!("geometric needs 0 < a < 1, got {a}")));
        }
        Ok(DiscretePmf::Geometric { a })
    }

    pub fn zeta(a: f64) -> Result<Self> {
        if !(a > 1.0) || !a.is_finite() {
            return Err(invalid(format!("zeta law needs a > 1, got {a}")));
        }
        Ok(DiscretePmf::Zeta { a })
    }

    pub fn explicit(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() || p.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(invalid("explicit masses must be positive and finite"));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(invalid(format!("masses sum to {total}")));
        }
        Ok(DiscretePmf::Explicit(p))
    }

    pub fn family(&self) -> &'static str {
        match self {
            DiscretePmf::Uniform { .. } => "duniform",
            DiscretePmf::Geometric { .. } => "geometric",
            DiscretePmf::Zeta { .. } => "zeta",
            DiscretePmf::Explicit(_) => "explicit",
        }
    }

    /// Mass at the `i`-th support point (first point has index 0).
    pub fn mass(&self, i: u64) -> f64 {
        match self {
            DiscretePmf::Uniform { n } => {
                if i < *n {
                    1.0 / *n as f64
                } else {
                    0.0
                }
            }
            DiscretePmf::Geometric { a } => (1.0 - a) * a.powf(i as f64),
            DiscretePmf::Zeta { a } => ((i + 1) as f64).powf(-a) / zeta(*a).unwrap_or(f64::NAN),
            DiscretePmf::Explicit(p) => p.get(i as usize).copied().unwrap_or(0.0),
        }
    }

    /// Number of support points kept and the certified mass beyond them.
    /// Infinite laws are cut once the tail mass drops below [`TAIL_MASS`].
    pub fn truncation(&self) -> (u64, f64) {
        match self {
            DiscretePmf::Uniform { n } => (*n, 0.0),
            DiscretePmf::Explicit(p) => (p.len() as u64, 0.0),
            DiscretePmf::Geometric { a } => {
                // P(X >= N) = a^N
                let n = (TAIL_MASS.ln() / a.ln()).ceil().max(1.0) as u64;
                (n, a.powf(n as f64))
            }
            DiscretePmf::Zeta { a } => {
                // P(X > N) <= N^{1-a} / ((a-1) ζ(a))
                let z = zeta(*a).unwrap_or(f64::INFINITY);
                let n = ((TAIL_MASS * (a - 1.0) * z).ln() / (1.0 - a)).exp().ceil().max(1.0);
                let n = if n > 1e18 { u64::MAX } else { n as u64 };
                (n, (n as f64).powf(1.0 - a) / ((a - 1.0) * z))
            }
        }
    }

    /// `Σ p_i^α`
    pub fn power_sum(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) {
            return Err(invalid(format!("alpha must be positive, got {alpha}")));
        }
        let tol = Tolerance::default();
        match self {
            DiscretePmf::Uniform { n } => {
                let n = *n as f64;
                Ok(n * n.powf(-alpha))
            }
            DiscretePmf::Explicit(p) => Ok(p.iter().map(|x| x.powf(alpha)).sum()),
            DiscretePmf::Geometric { a } => {
                let b = 1.0 - a;
                let (ba, aa) = (b.powf(alpha), a.powf(alpha));
                sum_series(|i| ba * aa.powf(i), 0, &tol).map_err(divergent)
            }
            DiscretePmf::Zeta { a } => {
                if alpha * a <= 1.0 {
                    return Err(Error::Divergent(format!("Σ i^(-{}) diverges", alpha * a)));
                }
                let norm = sum_series(|i| i.powf(-a), 1, &tol).map_err(divergent)?;
                let s = sum_series(|i| i.powf(-alpha * a), 1, &tol).map_err(divergent)?;
                Ok(s / norm.powf(alpha))
            }
        }
    }
}

fn divergent(e: Error) -> Error {
    match e {
        Error::NonConvergent(m) => Error::Divergent(m),
        other => other,
    }
}
