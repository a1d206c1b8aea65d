use serde::Serialize;

use crate::distributions::{ContinuousModel, OrderPair};
use crate::divergence::rdigf;
use crate::error::{invalid, Error, Result};
use crate::estimators::{mle_fit, model_power_integral, rigf_nonparametric, Bandwidth, Family};
use crate::parallel::{map_indexed, Parallelism};
use crate::rng::stream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectionRow {
    pub competitor: Family,
    pub alpha: f64,
    pub beta: f64,
    /// `∫ f^α g^{1-α}` between the reference and competitor fits.
    pub cross_integral: f64,
    pub rdigf: f64,
    /// `|cross_integral - 1|`
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionTable {
    pub reference: Family,
    pub rows: Vec<SelectionRow>,
}

impl SelectionTable {
    /// Competitors at `(α, β)`, closest to the reference first.
    pub fn ranking(&self, alpha: f64, beta: f64) -> Vec<Family> {
        let mut rows: Vec<&SelectionRow> = self.rows.iter().filter(|r| r.alpha == alpha && r.beta == beta).collect();
        rows.sort_by(|a, b| a.distance.total_cmp(&b.distance));
        rows.into_iter().map(|r| r.competitor).collect()
    }
}

/// RDIGF between the fitted reference model and each fitted competitor.
pub fn model_selection_rdigf(
    sample: &[f64],
    reference: Family,
    competitors: &[Family],
    orders: &[OrderPair],
) -> Result<SelectionTable> {
    let f = mle_fit(reference, sample)?.model;
    let fits = competitors
        .iter()
        .map(|&c| mle_fit(c, sample).map(|fit| (c, fit.model)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for o in orders {
        for (c, g) in &fits {
            let d = rdigf(&f, g, *o)?;
            rows.push(SelectionRow {
                competitor: *c,
                alpha: o.alpha(),
                beta: o.beta(),
                cross_integral: d.cross_integral,
                rdigf: d.value,
                distance: (d.cross_integral - 1.0).abs(),
            });
        }
    }
    Ok(SelectionTable { reference, rows })
}

/// Decides the value each trial's fitted RIGFs are compared against.
pub trait AwardCriterion: Sync {
    fn target(&self, true_rigf: f64, sample: &[f64], order: OrderPair) -> Result<f64>;
}

/// The trial goes to the fitted RIGF nearest the true model's RIGF.
#[derive(Debug, Clone, Copy, Default)]
pub struct NearestTruth;

impl AwardCriterion for NearestTruth {
    fn target(&self, true_rigf: f64, _sample: &[f64], _order: OrderPair) -> Result<f64> {
        Ok(true_rigf)
    }
}

/// The trial goes to the fitted RIGF nearest the kernel estimate from the same sample.
#[derive(Debug, Clone, Copy)]
pub struct NearestKernel(pub Bandwidth);

impl AwardCriterion for NearestKernel {
    fn target(&self, _true_rigf: f64, sample: &[f64], order: OrderPair) -> Result<f64> {
        rigf_nonparametric(sample, order, self.0)
    }
}

/// RIGF of a fitted candidate. A divergent `∫f^α` has the limit `0` when
/// `β < 1` and is unbounded (never nearest) otherwise.
fn fitted_rigf(model: &ContinuousModel, o: OrderPair) -> Option<f64> {
    match model_power_integral(model, o.alpha()) {
        Ok(i) => Some(o.delta() * i.powf(o.beta() - 1.0)),
        Err(Error::Divergent(_)) if o.beta() < 1.0 => Some(0.0),
        Err(_) => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionCell {
    pub alpha: f64,
    pub beta: f64,
    /// Award frequency per candidate, in candidate order, over counted trials.
    pub proportions: Vec<f64>,
    pub counted: usize,
    /// Trials dropped because a fit failed or no candidate could be scored.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionReport {
    pub candidates: Vec<Family>,
    pub cells: Vec<ProportionCell>,
}

#[allow(clippy::too_many_arguments)]
pub fn rigf_proportion_study(
    truth: &ContinuousModel,
    candidates: &[Family],
    orders: &[OrderPair],
    trials: usize,
    n: usize,
    seed: u64,
    criterion: &dyn AwardCriterion,
    mode: Parallelism,
) -> Result<ProportionReport> {
    if trials == 0 || candidates.is_empty() || orders.is_empty() {
        return Err(invalid("need at least one trial, candidate and order"));
    }
    let truths = orders
        .iter()
        .map(|o| model_power_integral(truth, o.alpha()).map(|i| o.delta() * i.powf(o.beta() - 1.0)))
        .collect::<Result<Vec<_>>>()?;
    // Per trial: None when a fit failed, else per order the winning candidate
    // (None when no candidate could be scored).
    let outcomes: Vec<Option<Vec<Option<usize>>>> = map_indexed(trials, mode, |t| {
        let sample = truth.sample_with(n, &mut stream(seed, t as u64)).ok()?;
        let fits: Vec<ContinuousModel> =
            candidates.iter().map(|&c| mle_fit(c, &sample).map(|f| f.model)).collect::<Result<_>>().ok()?;
        Some(
            orders
                .iter()
                .zip(&truths)
                .map(|(o, &tv)| {
                    let target = criterion.target(tv, &sample, *o).ok()?;
                    let mut best: Option<(usize, f64)> = None;
                    for (i, m) in fits.iter().enumerate() {
                        let Some(v) = fitted_rigf(m, *o) else { continue };
                        let d = (v - target).abs();
                        if d.is_finite() && best.is_none_or(|b| d < b.1) {
                            best = Some((i, d));
                        }
                    }
                    best.map(|b| b.0)
                })
                .collect(),
        )
    });
    let cells = orders
        .iter()
        .enumerate()
        .map(|(j, o)| {
            let mut wins = vec![0usize; candidates.len()];
            let mut counted = 0;
            for w in outcomes.iter().flatten().filter_map(|w| w[j]) {
                wins[w] += 1;
                counted += 1;
            }
            let total = counted.max(1) as f64;
            ProportionCell {
                alpha: o.alpha(),
                beta: o.beta(),
                proportions: wins.iter().map(|&w| w as f64 / total).collect(),
                counted,
                excluded: trials - counted,
            }
        })
        .collect();
    Ok(ProportionReport { candidates: candidates.to_vec(), cells })
}
