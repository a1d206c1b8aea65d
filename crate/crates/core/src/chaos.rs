//! Chaotic maps, bifurcation sweeps and kernel RIGF estimates on orbits.

use serde::Serialize;

use crate::distributions::OrderPair;
use crate::error::{invalid, Error, Result};
use crate::estimators::{rigf_nonparametric_on, Bandwidth, KdeDomain, KdeModel};
use crate::parallel::{map_indexed, Parallelism};
use crate::quadrature::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MapKind {
    /// `x ↦ cos(s² arccos x)`
    Chebyshev { s: f64 },
    /// `(x, y) ↦ (y + 1 - a x², b x)`
    Henon { a: f64, b: f64 },
    /// `x ↦ r x (1 - x)`
    Logistic { r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapSpec {
    pub kind: MapKind,
    pub x0: f64,
    /// Second coordinate, Hénon only.
    pub y0: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSeries {
    pub spec: MapSpec,
    pub xs: Vec<f64>,
    /// Hénon `y` coordinates; empty for one-dimensional maps.
    pub ys: Vec<f64>,
    /// Chebyshev steps whose `arccos` argument had drifted outside `[-1, 1]`.
    pub clamp_hits: usize,
}

/// Hénon orbits are abandoned beyond this magnitude.
pub const ESCAPE_RADIUS: f64 = 1e10;

impl MapSpec {
    pub fn one_dim(kind: MapKind, x0: f64, n: usize) -> Self {
        MapSpec { kind, x0, y0: 0.0, n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid(format!("orbit length must be at least 2, got {}", self.n)));
        }
        if !self.x0.is_finite() || !self.y0.is_finite() {
            return Err(invalid("initial state must be finite"));
        }
        match self.kind {
            MapKind::Chebyshev { s } => {
                if !(s > 0.0) || !(-1.0..=1.0).contains(&self.x0) {
                    return Err(invalid(format!("chebyshev needs s > 0 and x0 in [-1, 1], got s={s}, x0={}", self.x0)));
                }
            }
            MapKind::Logistic { r } => {
                if !(0.0..=4.0).contains(&r) || !(0.0..=1.0).contains(&self.x0) {
                    return Err(invalid(format!("logistic needs 0 <= r <= 4 and x0 in [0, 1], got r={r}, x0={}", self.x0)));
                }
            }
            MapKind::Henon { a, b } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(invalid("henon parameters must be finite"));
                }
            }
        }
        Ok(())
    }
}

pub fn iterate_map(spec: MapSpec) -> Result<OrbitSeries> {
    spec.validate()?;
    let mut xs = Vec::with_capacity(spec.n);
    let mut ys = Vec::new();
    let mut clamp_hits = 0;
    let (mut x, mut y) = (spec.x0, spec.y0);
    xs.push(x);
    match spec.kind {
        MapKind::Chebyshev { s } => {
            let s2 = s * s;
            for _ in 1..spec.n {
                if !(-1.0..=1.0).contains(&x) {
                    clamp_hits += 1;
                }
                x = (s2 * x.clamp(-1.0, 1.0).acos()).cos();
                xs.push(x);
            }
        }
        MapKind::Logistic { r } => {
            for _ in 1..spec.n {
                x = r * x * (1.0 - x);
                xs.push(x);
            }
        }
        MapKind::Henon { a, b } => {
            ys.reserve(spec.n);
            ys.push(y);
            for step in 1..spec.n {
                let nx = y + 1.0 - a * x * x;
                y = b * x;
                x = nx;
                if !(x.abs() <= ESCAPE_RADIUS) {
                    return Err(Error::Escape { step, value: x.abs() });
                }
                xs.push(x);
                ys.push(y);
            }
        }
    }
    Ok(OrbitSeries { spec, xs, ys, clamp_hits })
}

/// Which parameter a bifurcation sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SweepFamily {
    Chebyshev,
    /// Sweeps `a` with `b` fixed.
    Henon { b: f64 },
    Logistic,
}

impl SweepFamily {
    fn kind(self, p: f64) -> MapKind {
        match self {
            SweepFamily::Chebyshev => MapKind::Chebyshev { s: p },
            SweepFamily::Henon { b } => MapKind::Henon { a: p, b },
            SweepFamily::Logistic => MapKind::Logistic { r: p },
        }
    }
}

pub const DEFAULT_TRANSIENT: usize = 500;
pub const DEFAULT_KEEP: usize = 200;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Bifurcation {
    /// `(parameter, x)` pairs in grid order.
    pub points: Vec<(f64, f64)>,
    /// Parameters whose orbit failed, with the reason.
    pub failures: Vec<(f64, Error)>,
}

pub fn bifurcation_sweep(
    family: SweepFamily,
    grid: &[f64],
    transient: usize,
    keep: usize,
    x0: f64,
    y0: f64,
    mode: Parallelism,
) -> Result<Bifurcation> {
    if keep == 0 {
        return Err(invalid("keep must be positive"));
    }
    let runs = map_indexed(grid.len(), mode, |i| {
        let spec = MapSpec { kind: family.kind(grid[i]), x0, y0, n: transient + keep };
        iterate_map(spec).map(|o| o.xs[transient..].to_vec())
    });
    let mut out = Bifurcation::default();
    for (p, run) in grid.iter().zip(runs) {
        match run {
            Ok(xs) => out.points.extend(xs.into_iter().map(|x| (*p, x))),
            Err(e @ Error::InvalidParam(_)) => return Err(e),
            Err(e) => out.failures.push((*p, e)),
        }
    }
    Ok(out)
}

pub const MIN_SERIES_LEN: usize = 100;

/// Kernel RIGF of the orbit's `x` values over the full (signed) window.
pub fn series_rigf(series: &OrbitSeries, order: OrderPair, bandwidth: Bandwidth) -> Result<f64> {
    check_len(series)?;
    rigf_nonparametric_on(&series.xs, order, bandwidth, KdeDomain::Full)
}

/// Kernel Rényi entropy of the orbit: the `β`-derivative of [`series_rigf`] at `β = 1`.
pub fn series_renyi_entropy(series: &OrbitSeries, alpha: f64, bandwidth: Bandwidth) -> Result<f64> {
    check_len(series)?;
    let order = OrderPair::new(alpha, 1.0)?;
    let kde = KdeModel::fit(&series.xs, bandwidth)?;
    Ok(order.delta() * kde.power_integral(alpha, KdeDomain::Full, &Tolerance::estimation())?.ln())
}

fn check_len(series: &OrbitSeries) -> Result<()> {
    if series.xs.len() < MIN_SERIES_LEN {
        return Err(invalid(format!("series needs at least {MIN_SERIES_LEN} points, got {}", series.xs.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_step_arithmetic() {
        let o = iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 4.0 }, 0.5, 4)).unwrap();
        assert_eq!(o.xs, vec![0.5, 1.0, 0.0, 0.0]);
        let c = iterate_map(MapSpec::one_dim(MapKind::Chebyshev { s: 1.0 }, 0.3, 50)).unwrap();
        assert!(c.xs.iter().all(|x| (x - 0.3).abs() < 1e-12));
        let h = iterate_map(MapSpec { kind: MapKind::Henon { a: 1.4, b: 0.3 }, x0: 0.1, y0: 0.1, n: 2 }).unwrap();
        assert!((h.xs[1] - 1.086).abs() < 1e-12 && (h.ys[1] - 0.03).abs() < 1e-12);
    }

    #[test]
    fn validation_and_escape() {
        assert!(iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 4.5 }, 0.5, 4)).is_err());
        assert!(iterate_map(MapSpec::one_dim(MapKind::Chebyshev { s: 2.0 }, 1.5, 4)).is_err());
        assert!(iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 3.0 }, 0.5, 1)).is_err());
        let r = iterate_map(MapSpec { kind: MapKind::Henon { a: 3.0, b: 0.3 }, x0: 2.0, y0: 0.0, n: 100 });
        assert!(matches!(r, Err(Error::Escape { .. })));
    }

    #[test]
    fn sweep_fixed_point_and_cycle() {
        let b = bifurcation_sweep(SweepFamily::Logistic, &[2.0, 3.2], 500, 10, 0.1, 0.0, Parallelism::Parallel).unwrap();
        let at = |r: f64| b.points.iter().filter(|p| p.0 == r).map(|p| p.1).collect::<Vec<_>>();
        assert!(at(2.0).iter().all(|x| (x - 0.5).abs() < 1e-9));
        let disc = (4.2f64 * 0.2).sqrt();
        let (lo, hi) = ((4.2 - disc) / 6.4, (4.2 + disc) / 6.4);
        for x in at(3.2) {
            assert!((x - lo).abs() < 1e-6 || (x - hi).abs() < 1e-6, "{x}");
        }
        let c = bifurcation_sweep(SweepFamily::Chebyshev, &[1.0], 5, 5, 0.4, 0.0, Parallelism::Sequential).unwrap();
        assert!(c.points.iter().all(|p| (p.1 - 0.4).abs() < 1e-12));
    }

    #[test]
    fn henon_escape_is_recorded_not_fatal() {
        let b = bifurcation_sweep(SweepFamily::Henon { b: 0.3 }, &[1.4, 5.0], 100, 5, 0.1, 0.1, Parallelism::Sequential).unwrap();
        assert_eq!(b.points.len(), 5);
        assert_eq!(b.failures.len(), 1);
    }

    #[test]
    fn beta_one_and_short_series() {
        let o = iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 4.0 }, 0.1, 500)).unwrap();
        let ord = OrderPair::new(0.01, 1.0).unwrap();
        assert_eq!(series_rigf(&o, ord, Bandwidth::Silverman).unwrap(), ord.delta());
        let short = iterate_map(MapSpec::one_dim(MapKind::Logistic { r: 4.0 }, 0.1, 50)).unwrap();
        assert!(series_rigf(&short, ord, Bandwidth::Silverman).is_err());
    }
}
