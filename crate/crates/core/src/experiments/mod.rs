//! Reproductions: Monte Carlo comparison of the estimators, real-data fits
//! and model-selection studies.

mod mc;
mod real_data;
mod selection;

pub use mc::{mc_estimator_study, EstimatorKind, McCell, McConfig, McReport, Quantity, DEFAULT_SEED};
pub use real_data::{real_data_report, FamilyRow, RealDataReport};
pub use selection::{
    model_selection_rdigf, rigf_proportion_study, AwardCriterion, NearestKernel, NearestTruth, ProportionCell,
    ProportionReport, SelectionRow, SelectionTable,
};

/// Failure times (minutes) of 15 electronic components in an accelerated life test.
pub const FAILURE_TIMES: [f64; 15] =
    [1.4, 5.1, 6.3, 10.8, 12.1, 18.5, 19.7, 22.2, 23.0, 30.6, 37.3, 46.3, 53.9, 59.8, 66.2];
