//! Regeneration of the reference tables, with a pass/fail column per row.
//!
//! Rows marked `tagged` carry an acceptance tolerance; `--check` turns a
//! tagged failure into exit status 1. Untagged rows still report their
//! status against the same tolerance for auditing.

use clap::{Args, ValueEnum};
use igflab::distributions::{closed_form_rdigf, closed_form_rigf, closed_form_rigf_discrete, DiscretePmf};
use igflab::divergence::rdigf;
use igflab::estimators::{bootstrap, rigf_nonparametric, Bandwidth, Family};
use igflab::experiments::{
    mc_estimator_study, real_data_report, EstimatorKind, McCell, McConfig, NearestTruth, Quantity, FAILURE_TIMES,
};
use igflab::igf::{rigf_continuous, rigf_discrete};
use igflab::systems::{distortion_koutofn, system_measures, Distortion, SystemModel};
use igflab::{ContinuousModel, ModelSpec, OrderPair};

use crate::commands::{mc_table, param_text, proportion_table, Ctx};
use crate::input;
use crate::table::{num, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    /// Discrete families: closed form against truncated sums.
    #[value(name = "1")]
    Discrete,
    /// Continuous families: closed form against quadrature.
    #[value(name = "2")]
    Continuous,
    /// Divergence pairs: closed form against quadrature.
    #[value(name = "3")]
    Divergence,
    /// Coherent systems with a power baseline.
    #[value(name = "systems")]
    Systems,
    /// Monte Carlo, kernel estimator.
    #[value(name = "4")]
    Nonparametric,
    /// Failure-time data: fits and information criteria.
    #[value(name = "6")]
    RealData,
    /// Failure-time data: bootstrap of the kernel estimator.
    #[value(name = "7")]
    Bootstrap,
    /// Monte Carlo, maximum-likelihood plug-in.
    #[value(name = "8")]
    Parametric,
    /// Model-selection award proportions.
    #[value(name = "11")]
    Proportions,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub table: TableId,
    /// Exit with status 1 when a tagged row misses its tolerance.
    #[arg(long)]
    pub check: bool,
    /// Monte Carlo replications for tables 4 and 8.
    #[arg(long, default_value_t = 500)]
    pub replications: usize,
    /// Trials for table 11.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Bootstrap resamples for table 7.
    #[arg(long, default_value_t = 500)]
    pub resamples: usize,
    /// Kernel bandwidth for table 7.
    #[arg(long, value_parser = input::bandwidth, default_value = "0.35")]
    pub bandwidth: Bandwidth,
}

pub struct Outcome {
    pub table: Table,
    /// Tagged rows that missed their tolerance.
    pub failures: usize,
}

#[derive(Default)]
struct Tally(usize);

impl Tally {
    /// `status` and `tagged` cells for a row.
    fn mark(&mut self, pass: bool, tagged: bool) -> [String; 2] {
        if tagged && !pass {
            self.0 += 1;
        }
        [if pass { "PASS" } else { "FAIL" }.into(), if tagged { "yes" } else { "no" }.into()]
    }
}

pub fn run(a: &ReproduceArgs, ctx: Ctx) -> Result<Outcome, CliError> {
    let mut tally = Tally::default();
    let table = match a.table {
        TableId::Discrete => discrete(&mut tally)?,
        TableId::Continuous => continuous(&mut tally)?,
        TableId::Divergence => divergence(&mut tally)?,
        TableId::Systems => systems(&mut tally)?,
        TableId::Nonparametric => monte_carlo(EstimatorKind::Nonparametric, a.replications, ctx, &mut tally)?,
        TableId::Parametric => monte_carlo(EstimatorKind::Parametric, a.replications, ctx, &mut tally)?,
        TableId::RealData => real_data(&mut tally)?,
        TableId::Bootstrap => bootstrap_table(a.resamples, a.bandwidth, ctx, &mut tally)?,
        TableId::Proportions => proportions(a.trials, ctx, &mut tally)?,
    };
    Ok(Outcome { table, failures: tally.0 })
}

const CLOSED_FORM_TOL: f64 = 1e-7;
const BETAS: [f64; 5] = [0.5, 1.5, 2.0, 2.5, 3.0];

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

const CLOSED_HEADER: [&str; 9] = ["family", "params", "alpha", "beta", "closed", "numeric", "rel_err", "status", "tagged"];

fn closed_row(family: &str, params: String, o: OrderPair, closed: f64, numeric: f64, tally: &mut Tally) -> Vec<String> {
    let err = rel_err(numeric, closed);
    let mut row = vec![family.into(), params, num(o.alpha()), num(o.beta()), num(closed), num(numeric), num(err)];
    row.extend(tally.mark(err <= CLOSED_FORM_TOL, true));
    row
}

fn discrete(tally: &mut Tally) -> Result<Table, CliError> {
    let laws = [
        ("duniform", "n=7", DiscretePmf::uniform(7)?),
        ("geometric", "a=0.4", DiscretePmf::geometric(0.4)?),
        ("zeta", "a=3", DiscretePmf::zeta(3.0)?),
    ];
    let mut t = Table::new(CLOSED_HEADER);
    for (name, params, p) in &laws {
        for o in input::orders(&[0.7, 1.5], &BETAS)? {
            let closed = closed_form_rigf_discrete(p, o)?;
            let numeric = rigf_discrete(p, o)?.value;
            t.push(closed_row(name, params.to_string(), o, closed, numeric, tally));
        }
    }
    Ok(t)
}

fn continuous(tally: &mut Tally) -> Result<Table, CliError> {
    let models = [
        ContinuousModel::uniform(0.1, 4.0)?,
        ContinuousModel::exponential(1.5)?,
        ContinuousModel::weibull_standard(1.4)?,
    ];
    let mut t = Table::new(CLOSED_HEADER);
    for m in &models {
        for o in input::orders(&[0.7, 1.5], &BETAS)? {
            let closed = closed_form_rigf(m, o)?;
            let numeric = rigf_continuous(m, o)?.value;
            t.push(closed_row(m.family(), param_text(&m.params()), o, closed, numeric, tally));
        }
    }
    Ok(t)
}

fn divergence(tally: &mut Tally) -> Result<Table, CliError> {
    let pairs = [
        (ContinuousModel::pareto_scaled(0.8, 1.0)?, ContinuousModel::pareto_scaled(1.5, 1.0)?),
        (ContinuousModel::exponential(0.8)?, ContinuousModel::exponential(0.5)?),
        (ContinuousModel::lomax(0.5, 0.8)?, ContinuousModel::lomax(0.5, 0.4)?),
    ];
    let mut t = Table::new(CLOSED_HEADER);
    for (f, g) in &pairs {
        let params = format!("f: {} | g: {}", param_text(&f.params()), param_text(&g.params()));
        for o in input::orders(&[0.5, 1.5], &BETAS)? {
            let closed = closed_form_rdigf(f, g, o)?;
            let numeric = rdigf(f, g, o)?.value;
            t.push(closed_row(f.family(), params.clone(), o, closed, numeric, tally));
        }
    }
    Ok(t)
}

const SYSTEM_TOL: f64 = 1e-4;

fn systems(tally: &mut Tally) -> Result<Table, CliError> {
    // (rigf, igf, renyi, varentropy) as listed; renyi is shown for audit only.
    let expected = [
        (Distortion::series(3)?, [-4.144032, 1.455774, 0.7510748, 2.940702]),
        (distortion_koutofn(2, 3)?, [-4.852534, 1.061702, 0.1197473, 0.194906]),
        (Distortion::parallel(3)?, [-4.958784, 1.016692, 0.03310925, 0.1111111]),
    ];
    let o = OrderPair::new(1.2, 0.5)?;
    let base = ContinuousModel::power(0.5)?;
    let mut t = Table::new([
        "system",
        "alpha",
        "beta",
        "rigf",
        "igf",
        "renyi",
        "varentropy",
        "expected_rigf",
        "expected_igf",
        "expected_renyi",
        "expected_varentropy",
        "status",
        "tagged",
    ]);
    for (d, want) in expected {
        let label = d.label();
        let sys = SystemModel::new(base.clone(), d);
        let m = system_measures(&sys, o)?;
        let pass = (m.rigf - want[0]).abs() <= SYSTEM_TOL
            && (m.igf - want[1]).abs() <= SYSTEM_TOL
            && (m.varentropy - want[3]).abs() <= SYSTEM_TOL;
        let mut row = vec![label, num(o.alpha()), num(o.beta())];
        row.extend([m.rigf, m.igf, m.renyi_entropy, m.varentropy].map(num));
        row.extend(want.map(num));
        row.extend(tally.mark(pass, true));
        t.push(row);
    }
    Ok(t)
}

const MC_SIZES: [usize; 3] = [150, 300, 500];
const MC_BAND: f64 = 0.5;

fn mc_config(truth: &str, orders: Vec<(f64, f64)>, kind: EstimatorKind, replications: usize, seed: u64) -> McConfig {
    McConfig {
        truth: ModelSpec::parse(truth).expect("static spec"),
        fit_family: Family::Weibull2,
        estimators: vec![kind],
        orders,
        sample_sizes: MC_SIZES.to_vec(),
        replications,
        seed,
        bandwidth: None,
    }
}

fn monte_carlo(kind: EstimatorKind, replications: usize, ctx: Ctx, tally: &mut Tally) -> Result<Table, CliError> {
    let studies = [
        (
            "alpha",
            mc_config(
                r#"{"family":"weibull2","params":{"k":2,"lambda":1.5}}"#,
                [0.3, 0.8, 1.2, 1.5, 2.0].iter().map(|&a| (a, 1.1)).collect(),
                kind,
                replications,
                ctx.seed,
            ),
        ),
        (
            "beta",
            mc_config(
                r#"{"family":"weibull2","params":{"k":2,"lambda":1}}"#,
                [0.4, 0.6, 0.9, 1.2, 1.6].iter().map(|&b| (0.3, b)).collect(),
                kind,
                replications,
                ctx.seed,
            ),
        ),
    ];
    // Reference (SD, AB) for the tagged RIGF cells at n = 500.
    let tagged = |study: &str, c: &McCell| -> Option<(f64, f64)> {
        if c.quantity != Quantity::Rigf || c.n != 500 || c.alpha != 0.3 {
            return None;
        }
        match (kind, study, c.beta) {
            (EstimatorKind::Nonparametric, "alpha", Some(1.1)) => Some((0.00440, 0.00305)),
            (EstimatorKind::Nonparametric, "beta", Some(0.9)) => Some((0.00400, 0.00298)),
            (EstimatorKind::Parametric, "alpha", Some(1.1)) => Some((0.00347, 0.00015)),
            _ => None,
        }
    };
    let mut out = Table::new(crate::commands::MC_HEADER);
    out.header.extend(["study", "expected_sd", "expected_ab", "status", "tagged"].map(String::from));
    for (study, config) in &studies {
        let report = mc_estimator_study(config, ctx.mode)?;
        let t = mc_table(&report, config, |c| {
            let mut extra = vec![study.to_string()];
            match tagged(study, c) {
                Some((sd, ab)) => {
                    let pass = (c.sd - sd).abs() <= MC_BAND * sd && (c.ab - ab).abs() <= MC_BAND * ab;
                    extra.extend([num(sd), num(ab)]);
                    extra.extend(tally_mark(pass));
                }
                None => extra.extend([String::new(), String::new(), "-".into(), "no".into()]),
            }
            Some(extra)
        });
        out.rows.extend(t.rows);
    }
    tally.0 += out.rows.iter().filter(|r| r[r.len() - 2] == "FAIL").count();
    Ok(out)
}

fn tally_mark(pass: bool) -> [String; 2] {
    [if pass { "PASS" } else { "FAIL" }.into(), "yes".into()]
}

const FIT_TOL: f64 = 0.02;
const LAMBDA_TOL: f64 = 1e-4;

fn real_data(tally: &mut Tally) -> Result<Table, CliError> {
    let reference = [
        (Family::Exponential, [64.7382, 131.4765, 131.7841, 132.1845]),
        (Family::Weibull2, [67.01285, 138.0257, 139.0257, 139.4418]),
        (Family::Iehl, [70.4478, 144.8957, 145.8957, 146.3118]),
        (Family::LogLogistic, [173.1330, 350.2659, 351.1659, 351.6820]),
    ];
    let families: Vec<Family> = reference.iter().map(|p| p.0).collect();
    let report = real_data_report(&FAILURE_TIMES, &families)?;
    let mut t = Table::new([
        "family",
        "params",
        "neg_loglik",
        "aic",
        "aicc",
        "bic",
        "rank",
        "expected_neg_loglik",
        "expected_aic",
        "expected_aicc",
        "expected_bic",
        "status",
        "tagged",
    ]);
    for (family, want) in reference {
        let row = report.row(family).expect("every family has a row");
        let rank = report.ranking.iter().position(|f| *f == family).map(|i| i + 1);
        let mut cells = vec![family.name().to_string()];
        let pass = match &row.outcome {
            Ok((fit, c)) => {
                let got = [c.neg_loglik, c.aic, c.aicc, c.bic];
                cells.push(param_text(&fit.params()));
                cells.extend(got.map(num));
                let mut pass = got.iter().zip(want).all(|(g, w)| (g - w).abs() <= FIT_TOL);
                if family == Family::Exponential {
                    pass &= rank == Some(1) && (fit.params()[0].1 - 0.0363).abs() <= LAMBDA_TOL;
                }
                pass
            }
            Err(e) => {
                cells.push(format!("error: {e}"));
                cells.extend(std::iter::repeat_n(String::new(), 4));
                false
            }
        };
        cells.push(rank.map(|r| r.to_string()).unwrap_or_default());
        cells.extend(want.map(num));
        cells.extend(tally.mark(pass, family == Family::Exponential));
        t.push(cells);
    }
    Ok(t)
}

/// Reference `R` value as written, so the tolerance can follow its precision.
fn within_display(got: f64, reference: &str) -> bool {
    let want: f64 = reference.parse().expect("static value");
    let decimals = reference.split('.').nth(1).map_or(0, str::len) as i32;
    let half_unit = 0.5 * 10f64.powi(-decimals);
    (got - want).abs() <= half_unit.max(0.01 * want.abs()) + 1e-12
}

fn bootstrap_table(resamples: usize, bandwidth: Bandwidth, ctx: Ctx, tally: &mut Tally) -> Result<Table, CliError> {
    // (column, α, β, R, AB, MSE) as listed.
    const ROWS: [(&str, f64, f64, &str, f64, f64); 16] = [
        ("alpha", 1.5, 2.5, "-0.09050", 0.17419, 0.03660),
        ("alpha", 1.6, 2.5, "-0.04163", 0.17419, 0.01491),
        ("alpha", 1.7, 2.5, "-0.01981", 0.07552, 0.00670),
        ("alpha", 1.8, 2.5, "-0.00967", 0.05011, 0.00303),
        ("alpha", 1.9, 2.5, "-0.00482", 0.03382, 0.00140),
        ("alpha", 2.0, 2.5, "-0.00244", 0.02251, 0.00062),
        ("alpha", 2.5, 2.5, "-0.00010", 0.00359, 0.00002),
        ("alpha", 3.0, 2.5, "-0.000005", 0.000667, 0.000001),
        ("beta", 3.5, 1.2, "-0.0593", 0.07171, 0.00552),
        ("beta", 3.5, 1.3, "-0.02283", 0.05191, 0.00301),
        ("beta", 3.5, 1.4, "-0.00879", 0.03559, 0.00144),
        ("beta", 3.5, 1.5, "-0.00339", 0.02193, 0.00056),
        ("beta", 3.5, 1.6, "-0.00130", 0.01402, 0.00024),
        ("beta", 3.5, 2.0, "-0.00003", 0.00192, 0.00001),
        ("beta", 3.5, 2.5, "-0.0000002", 0.0001601, 0.000000007),
        ("beta", 3.5, 3.0, "-0.000000002", 0.0000146, 0.000000001),
    ];
    let fit = igflab::estimators::mle_fit(Family::Exponential, &FAILURE_TIMES)?;
    let mut t = Table::new([
        "column",
        "alpha",
        "beta",
        "rigf",
        "expected_rigf",
        "ab",
        "expected_ab",
        "mse",
        "expected_mse",
        "resamples_used",
        "status",
        "tagged",
    ]);
    for (column, alpha, beta, r_pub, ab_pub, mse_pub) in ROWS {
        let o = OrderPair::new(alpha, beta)?;
        let r = closed_form_rigf(&fit.model, o)?;
        let boot = bootstrap(&FAILURE_TIMES, resamples, |s| rigf_nonparametric(s, o, bandwidth), ctx.seed, ctx.mode);
        let m = boot.values.len().max(1) as f64;
        let ab = (boot.values.iter().sum::<f64>() / m - r).abs();
        let mse = boot.values.iter().map(|v| (v - r).powi(2)).sum::<f64>() / m;
        let mut row = vec![column.into(), num(alpha), num(beta), num(r), r_pub.into()];
        row.extend([num(ab), num(ab_pub), num(mse), num(mse_pub), boot.values.len().to_string()]);
        row.extend(tally.mark(within_display(r, r_pub), true));
        t.push(row);
    }
    Ok(t)
}

const PROPORTION_TOL: f64 = 0.08;

fn proportions(trials: usize, ctx: Ctx, tally: &mut Tally) -> Result<Table, CliError> {
    const CELLS: [(f64, f64, [f64; 3]); 6] = [
        (0.8, 0.7, [0.381, 0.363, 0.256]),
        (1.5, 0.7, [0.513, 0.487, 0.000]),
        (2.0, 0.7, [0.515, 0.485, 0.000]),
        (0.9, 0.9, [0.405, 0.391, 0.204]),
        (1.8, 0.9, [0.514, 0.486, 0.000]),
        (0.7, 1.1, [0.497, 0.494, 0.009]),
    ];
    let truth = ContinuousModel::exponential(0.5)?;
    let candidates = [Family::Exponential, Family::Weibull2, Family::Pareto1];
    let orders = CELLS.iter().map(|c| OrderPair::new(c.0, c.1)).collect::<igflab::Result<Vec<_>>>()?;
    let mut t = proportion_table(&truth, &candidates, &orders, trials, 500, ctx, &NearestTruth)?;
    t.header.extend(
        ["expected_exponential", "expected_weibull2", "expected_pareto1", "status", "tagged"].map(String::from),
    );
    for (row, (alpha, beta, want)) in t.rows.iter_mut().zip(CELLS) {
        let got: Vec<f64> = row[2..5].iter().map(|c| c.parse().expect("formatted number")).collect();
        let pass = got.iter().zip(want).all(|(g, w)| (g - w).abs() <= PROPORTION_TOL);
        row.extend(want.map(num));
        row.extend(tally.mark(pass, alpha == 1.5 && beta == 0.7));
    }
    Ok(t)
}
