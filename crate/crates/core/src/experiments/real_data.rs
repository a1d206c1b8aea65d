use crate::error::{Error, Result};
use crate::estimators::{information_criteria, mle_fit, Family, FitResult, InfoCriteria};

#[derive(Debug, Clone)]
pub struct FamilyRow {
    pub family: Family,
    pub outcome: std::result::Result<(FitResult, InfoCriteria), Error>,
}

#[derive(Debug, Clone)]
pub struct RealDataReport {
    pub rows: Vec<FamilyRow>,
    /// Successfully fitted families, best (smallest AIC) first.
    pub ranking: Vec<Family>,
}

impl RealDataReport {
    pub fn row(&self, family: Family) -> Option<&FamilyRow> {
        self.rows.iter().find(|r| r.family == family)
    }
}

/// Fits every family and ranks the successful fits by AIC. A family that
/// fails to fit is kept in `rows` with its error.
pub fn real_data_report(sample: &[f64], families: &[Family]) -> Result<RealDataReport> {
    if sample.is_empty() {
        return Err(Error::InvalidSample("empty sample".into()));
    }
    if sample.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidSample("observations must be positive and finite".into()));
    }
    let rows: Vec<FamilyRow> = families
        .iter()
        .map(|&family| FamilyRow {
            family,
            outcome: mle_fit(family, sample).and_then(|fit| {
                let c = information_criteria(&fit)?;
                Ok((fit, c))
            }),
        })
        .collect();
    let mut ok: Vec<(Family, f64)> =
        rows.iter().filter_map(|r| r.outcome.as_ref().ok().map(|(_, c)| (r.family, c.aic))).collect();
    ok.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(RealDataReport { rows, ranking: ok.into_iter().map(|(f, _)| f).collect() })
}
