//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line and
//! fails when its check fails. Run with `--nocapture` to see the lines.

use igflab::chaos::{bifurcation_sweep, iterate_map, series_renyi_entropy, series_rigf, MapKind, MapSpec, SweepFamily};
use igflab::distributions::{
    closed_form_rdigf, closed_form_rigf, closed_form_rigf_discrete, ContinuousModel, DiscretePmf, MonotoneMap,
    OrderPair,
};
use igflab::divergence::{rdigf, rdigf_monotone_transform, renyi_divergence};
use igflab::estimators::{Bandwidth, Family};
use igflab::experiments::{
    mc_estimator_study, model_selection_rdigf, real_data_report, rigf_proportion_study, EstimatorKind, McCell, McConfig,
    McReport, NearestTruth, DEFAULT_SEED, FAILURE_TIMES,
};
use igflab::igf::{
    check_dispersive_order, escort, igf_golomb, renyi_entropy, rigf_bounds, rigf_continuous, rigf_discrete,
    BoundSide,
};
use igflab::systems::{distortion_koutofn, system_measures, Distortion, SystemModel};
use igflab::{Error, ModelSpec, Parallelism};

fn verdict(id: &str, pass: bool, detail: &str) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn m(r: igflab::Result<ContinuousModel>) -> ContinuousModel {
    r.unwrap()
}

// ---------------------------------------------------------------- 1

const ALPHAS: [f64; 5] = [0.4, 0.7, 1.5, 2.0, 3.0];
const BETAS: [f64; 5] = [0.5, 0.8, 1.5, 2.0, 3.0];
const CLOSED_FORM_TOL: f64 = 1e-7;

#[test]
fn criterion_1_closed_forms_match_quadrature() {
    let continuous = [
        m(ContinuousModel::uniform(0.1, 4.0)),
        m(ContinuousModel::exponential(1.5)),
        m(ContinuousModel::weibull_standard(1.4)),
        m(ContinuousModel::weibull(2.0, 1.5)),
        m(ContinuousModel::power(2.0)),
        m(ContinuousModel::pareto_scaled(2.0, 1.5)),
        m(ContinuousModel::lomax(1.0, 3.0)),
    ];
    let discrete = [DiscretePmf::uniform(7).unwrap(), DiscretePmf::geometric(0.4).unwrap(), DiscretePmf::zeta(3.0).unwrap()];
    let pairs = [
        (m(ContinuousModel::exponential(2.0)), m(ContinuousModel::exponential(1.0))),
        (m(ContinuousModel::pareto_scaled(2.0, 1.0)), m(ContinuousModel::pareto_scaled(1.5, 1.0))),
        (m(ContinuousModel::lomax(1.0, 3.0)), m(ContinuousModel::lomax(1.0, 2.0))),
    ];
    let mut worst = 0.0f64;
    let mut checks = 0;
    for &a in &ALPHAS {
        for &b in &BETAS {
            let o = OrderPair::new(a, b).unwrap();
            for model in &continuous {
                let cf = closed_form_rigf(model, o).unwrap();
                let q = rigf_continuous(model, o).unwrap().value;
                worst = worst.max(rel_err(q, cf));
                checks += 1;
            }
            for pmf in &discrete {
                let cf = closed_form_rigf_discrete(pmf, o).unwrap();
                let s = rigf_discrete(pmf, o).unwrap().value;
                worst = worst.max(rel_err(s, cf));
                checks += 1;
            }
            for (f, g) in &pairs {
                let cf = closed_form_rdigf(f, g, o).unwrap();
                let q = rdigf(f, g, o).unwrap().value;
                worst = worst.max(rel_err(q, cf));
                checks += 1;
            }
        }
    }
    verdict(
        "1",
        worst <= CLOSED_FORM_TOL,
        &format!("{checks} closed-form/numeric pairs, worst relative error {worst:.2e} (tol {CLOSED_FORM_TOL:.0e})"),
    );
}

// ---------------------------------------------------------------- 2

const FD_STEP: f64 = 1e-5;
const DERIVATIVE_TOL: f64 = 1e-5;

/// Every catalog family, each paired with a nearby model of the same family
/// whose support covers it and whose tail keeps `∫ f² / g` finite.
fn catalog_pairs() -> Vec<(ContinuousModel, ContinuousModel)> {
    vec![
        (m(ContinuousModel::uniform(0.0, 1.0)), m(ContinuousModel::uniform(0.0, 2.0))),
        (m(ContinuousModel::exponential(1.5)), m(ContinuousModel::exponential(1.2))),
        (m(ContinuousModel::weibull_standard(1.4)), m(ContinuousModel::weibull_standard(1.2))),
        (m(ContinuousModel::weibull(2.0, 1.5)), m(ContinuousModel::weibull(1.8, 1.5))),
        (m(ContinuousModel::power(2.0)), m(ContinuousModel::power(1.5))),
        (m(ContinuousModel::pareto_scaled(3.0, 1.0)), m(ContinuousModel::pareto_scaled(2.5, 1.0))),
        (m(ContinuousModel::lomax(1.0, 3.0)), m(ContinuousModel::lomax(1.0, 2.5))),
        (m(ContinuousModel::loglogistic(3.0, 1.0)), m(ContinuousModel::loglogistic(3.3, 1.1))),
        (m(ContinuousModel::iehl(2.0, 1.0)), m(ContinuousModel::iehl(1.8, 1.2))),
        (m(ContinuousModel::gamma(2.0, 1.0)), m(ContinuousModel::gamma(2.2, 0.9))),
    ]
}

#[test]
fn criterion_2_derivative_identities() {
    let mut worst_entropy = 0.0f64;
    let mut worst_divergence = 0.0f64;
    let mut failures = Vec::new();
    for (f, g) in catalog_pairs() {
        for alpha in [0.5, 2.0] {
            let up = OrderPair::new(alpha, 1.0 + FD_STEP).unwrap();
            let down = OrderPair::new(alpha, 1.0 - FD_STEP).unwrap();
            let fd = (rigf_continuous(&f, up).unwrap().value - rigf_continuous(&f, down).unwrap().value) / (2.0 * FD_STEP);
            let e = (fd - renyi_entropy(&f, alpha).unwrap()).abs();
            worst_entropy = worst_entropy.max(e);
            let fd = (rdigf(&f, &g, up).unwrap().value - rdigf(&f, &g, down).unwrap().value) / (2.0 * FD_STEP);
            let d = (fd - renyi_divergence(&f, &g, alpha).unwrap()).abs();
            worst_divergence = worst_divergence.max(d);
            if e > DERIVATIVE_TOL || d > DERIVATIVE_TOL {
                failures.push(format!("{} α={alpha}", f.family()));
            }
        }
    }
    verdict(
        "2",
        failures.is_empty(),
        &format!(
            "10 families × α∈{{0.5,2}}: worst |∂R/∂β − H| = {worst_entropy:.2e}, worst |∂RD/∂β − D| = {worst_divergence:.2e} (tol {DERIVATIVE_TOL:.0e}) {failures:?}"
        ),
    );
}

// ---------------------------------------------------------------- 3

const SYSTEM_TOL: f64 = 1e-4;

fn systems() -> Vec<(&'static str, SystemModel)> {
    let base = m(ContinuousModel::power(0.5));
    vec![
        ("series", SystemModel::new(base.clone(), Distortion::series(3).unwrap())),
        ("2-of-3", SystemModel::new(base.clone(), distortion_koutofn(2, 3).unwrap())),
        ("parallel", SystemModel::new(base, Distortion::parallel(3).unwrap())),
    ]
}

fn system_order() -> OrderPair {
    OrderPair::new(1.2, 0.5).unwrap()
}

#[test]
fn criterion_3a_system_rigf_and_igf() {
    let expected = [(-4.144032, 1.455774), (-4.852534, 1.061702), (-4.958784, 1.016692)];
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for ((name, s), (rigf, igf)) in systems().iter().zip(expected) {
        let got = system_measures(s, system_order()).unwrap();
        worst = worst.max((got.rigf - rigf).abs()).max((got.igf - igf).abs());
        lines.push(format!("{name} ({:.6}, {:.6})", got.rigf, got.igf));
    }
    verdict("3a", worst <= SYSTEM_TOL, &format!("{} worst abs error {worst:.2e} (tol {SYSTEM_TOL:.0e})", lines.join(", ")));
}

#[test]
fn criterion_3b_system_varentropy() {
    let expected = [2.940702, 0.194906, 0.1111111];
    let mut lines = Vec::new();
    let mut pass = true;
    for ((name, s), want) in systems().iter().zip(expected) {
        let got = s.varentropy().unwrap();
        let err = (got - want).abs();
        pass &= err <= SYSTEM_TOL;
        lines.push(format!("{name} {got:.6} vs {want} (err {err:.2e})"));
    }
    verdict("3b", pass, &format!("{} (tol {SYSTEM_TOL:.0e})", lines.join(", ")));
}

#[test]
fn criterion_3c_system_ordering() {
    let m: Vec<_> = systems().iter().map(|(_, s)| system_measures(s, system_order()).unwrap()).collect();
    let decreasing = |v: [f64; 3]| v[0] > v[1] && v[1] > v[2];
    let rigf = decreasing([m[0].rigf, m[1].rigf, m[2].rigf]);
    let igf = decreasing([m[0].igf, m[1].igf, m[2].igf]);
    let ve = decreasing([m[0].varentropy, m[1].varentropy, m[2].varentropy]);
    let renyi = decreasing([m[0].renyi_entropy, m[1].renyi_entropy, m[2].renyi_entropy]);
    verdict(
        "3c",
        rigf && igf && ve && renyi,
        &format!(
            "series > 2-of-3 > parallel: rigf {rigf}, igf {igf}, varentropy {ve}, δ(α)·ln I {renyi} ({:.6}, {:.6}, {:.6})",
            m[0].renyi_entropy, m[1].renyi_entropy, m[2].renyi_entropy
        ),
    );
}

// ---------------------------------------------------------------- 4

#[test]
fn criterion_4_real_data_fit() {
    let families = [Family::Exponential, Family::Weibull2, Family::Iehl, Family::LogLogistic];
    let r = real_data_report(&FAILURE_TIMES, &families).unwrap();
    let (fit, c) = r.row(Family::Exponential).unwrap().outcome.as_ref().unwrap();
    let lambda = fit.params()[0].1;
    let checks = [
        ("λ̂", lambda, 0.0363, 0.0001),
        ("-lnL", c.neg_loglik, 64.74, 0.02),
        ("AIC", c.aic, 131.48, 0.02),
        ("BIC", c.bic, 132.18, 0.02),
    ];
    let mut pass = r.ranking.first() == Some(&Family::Exponential);
    let mut lines = Vec::new();
    for (name, got, want, tol) in checks {
        pass &= (got - want).abs() <= tol;
        lines.push(format!("{name} {got:.4} (want {want} ± {tol})"));
    }
    let ranking: Vec<&str> = r.ranking.iter().map(|f| f.name()).collect();
    verdict("4", pass, &format!("{}, AIC ranking {ranking:?}", lines.join(", ")));
}

// ---------------------------------------------------------------- 5

const MC_REPLICATIONS: usize = 500;
const MC_SIZES: [usize; 3] = [150, 300, 500];
const MC_BAND: f64 = 0.5;

fn mc_config(truth: &str, orders: Vec<(f64, f64)>) -> McConfig {
    McConfig {
        truth: ModelSpec::parse(truth).unwrap(),
        fit_family: Family::Weibull2,
        estimators: vec![EstimatorKind::Nonparametric, EstimatorKind::Parametric],
        orders,
        sample_sizes: MC_SIZES.to_vec(),
        replications: MC_REPLICATIONS,
        seed: DEFAULT_SEED,
        bandwidth: None,
    }
}

fn within_band(got: f64, want: f64) -> bool {
    (got - want).abs() <= MC_BAND * want
}

#[test]
fn criterion_5_monte_carlo_tables() {
    let alpha_column = mc_config(
        r#"{"family":"weibull2","params":{"k":2,"lambda":1.5}}"#,
        [0.3, 0.8, 1.2, 1.5, 2.0].iter().map(|&a| (a, 1.1)).collect(),
    );
    let beta_column = mc_config(
        r#"{"family":"weibull2","params":{"k":2,"lambda":1}}"#,
        [0.4, 0.6, 0.9, 1.2, 1.6].iter().map(|&b| (0.3, b)).collect(),
    );
    let a = mc_estimator_study(&alpha_column, Parallelism::Parallel).unwrap();
    let b = mc_estimator_study(&beta_column, Parallelism::Parallel).unwrap();

    let np = a.cell(EstimatorKind::Nonparametric, 0.3, 1.1, 500).unwrap();
    let pm = a.cell(EstimatorKind::Parametric, 0.3, 1.1, 500).unwrap();
    let table4 = within_band(np.sd, 0.00440) && within_band(np.ab, 0.00305);
    let table8 = within_band(pm.sd, 0.00347) && within_band(pm.ab, 0.00015);

    let (mut monotone, mut sequences) = (0, 0);
    let mut by_metric = [0; 3];
    let (mut better, mut shared) = (0, 0);
    let metrics: [fn(&McCell) -> f64; 3] = [|c| c.sd, |c| c.ab, |c| c.mse];
    for report in [&a, &b] {
        for first in report.cells.iter().filter(|c| c.n == MC_SIZES[0]) {
            let series: Vec<&McCell> = MC_SIZES
                .iter()
                .map(|&n| {
                    report
                        .cells
                        .iter()
                        .find(|c| {
                            c.n == n
                                && c.estimator == first.estimator
                                && c.quantity == first.quantity
                                && c.alpha == first.alpha
                                && c.beta == first.beta
                        })
                        .unwrap()
                })
                .collect();
            for (k, metric) in metrics.iter().enumerate() {
                sequences += 1;
                if metric(series[0]) > metric(series[1]) && metric(series[1]) > metric(series[2]) {
                    monotone += 1;
                    by_metric[k] += 1;
                }
            }
        }
        for p in report.cells.iter().filter(|c| c.estimator == EstimatorKind::Parametric) {
            let q = report
                .cells
                .iter()
                .find(|c| {
                    c.estimator == EstimatorKind::Nonparametric
                        && c.quantity == p.quantity
                        && c.alpha == p.alpha
                        && c.beta == p.beta
                        && c.n == p.n
                })
                .unwrap();
            shared += 1;
            if p.mse <= q.mse {
                better += 1;
            }
        }
    }
    let monotone_frac = monotone as f64 / sequences as f64;
    let better_frac = better as f64 / shared as f64;
    let invariant = [&a, &b].iter().all(|r: &&McReport| r.cells.iter().all(|c| c.mse >= c.ab * c.ab - 1e-12 && c.sd >= 0.0));
    verdict(
        "5",
        table4 && table8 && monotone_frac >= 0.9 && better_frac >= 0.8 && invariant,
        &format!(
            "R={MC_REPLICATIONS}, seed {DEFAULT_SEED}: nonparametric (SD {:.5}, AB {:.5}) vs (0.00440, 0.00305) {table4}; \
             parametric (SD {:.5}, AB {:.5}) vs (0.00347, 0.00015) {table8}; \
             monotone in n {monotone}/{sequences} = {monotone_frac:.2} (need 0.90; SD/AB/MSE {by_metric:?} of {} each); \
             parametric MSE ≤ nonparametric {better}/{shared} = {better_frac:.2} (need 0.80)",
            np.sd, np.ab, pm.sd, pm.ab, sequences / 3
        ),
    );
}

// ---------------------------------------------------------------- 6

const BOUND_TOL: f64 = 1e-9;

#[test]
fn criterion_6_bounds_and_orderings() {
    let e2 = m(ContinuousModel::exponential(2.0));
    let e1 = m(ContinuousModel::exponential(1.0));
    // Exponential(λ): ∫f^γ = λ^{γ-1}/γ.
    let golomb = |lambda: f64, g: f64| lambda.powf(g - 1.0) / g;
    let rigf_exp = |lambda: f64, a: f64, b: f64| golomb(lambda, a).powf(b - 1.0) / (1.0 - a);

    let mut notes = Vec::new();
    let mut pass = true;
    let (mut checked, mut unsupported) = (0, 0);
    for alpha in [0.3, 0.5, 1.5, 2.5] {
        for beta in [0.5, 1.5, 2.5, 3.0] {
            let o = OrderPair::new(alpha, beta).unwrap();
            let value = rigf_exp(2.0, alpha, beta);
            let cs = 0.5 * rigf_exp(2.0, (alpha + 1.0) / 2.0, 2.0 * beta - 1.0);
            let cs_side = if (alpha < 1.0) == (beta >= 1.0) { BoundSide::Lower } else { BoundSide::Upper };
            pass &= cs_side.holds(value, cs, BOUND_TOL);
            // With l ≤ 0 the integral ∫f^l is infinite and the bound is vacuous.
            let l = alpha * beta - alpha - beta + 2.0;
            let jensen = if l > 0.0 { golomb(2.0, l) } else { f64::INFINITY } / (1.0 - alpha);
            let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9 * b.abs();
            match rigf_bounds(&e2, o) {
                Ok(b) => {
                    checked += 1;
                    let ok = b.cauchy_schwarz_side == cs_side
                        && b.jensen_side.holds(value, jensen, BOUND_TOL)
                        && close(b.value, value)
                        && close(b.jensen_bound, jensen)
                        && close(b.cauchy_schwarz_bound, cs);
                    if !ok {
                        notes.push(format!("bounds fail at ({alpha}, {beta})"));
                    }
                    pass &= ok;
                }
                Err(Error::RegimeUnsupported { .. }) if alpha < 1.0 && beta > 1.0 && beta < 2.0 => unsupported += 1,
                Err(e) => {
                    notes.push(format!("({alpha}, {beta}): {e}"));
                    pass = false;
                }
            }
        }
    }

    let z = m(ContinuousModel::gamma(2.0, 1.0));
    for beta in [0.5, 1.5, 2.0] {
        let rz = rigf_continuous(&z, OrderPair::new(3.0, beta).unwrap()).unwrap().value;
        let rx = -0.5 * igf_golomb(&e1, 3.0).unwrap().powf(2.0 * beta - 2.0);
        let ok = if beta >= 1.0 { rz >= rx } else { rz <= rx };
        if !ok {
            notes.push(format!("convolution fails at β={beta}"));
        }
        pass &= ok;
    }

    pass &= check_dispersive_order(&e2, &e1, 1000).unwrap();
    for alpha in [0.5, 2.0] {
        for beta in [0.5, 2.0] {
            let o = OrderPair::new(alpha, beta).unwrap();
            let (rx, ry) = (rigf_continuous(&e2, o).unwrap().value, rigf_continuous(&e1, o).unwrap().value);
            let ok = if beta >= 1.0 { rx <= ry } else { rx >= ry };
            if !ok {
                notes.push(format!("dispersive ordering fails at ({alpha}, {beta})"));
            }
            pass &= ok;
        }
    }
    verdict(
        "6",
        pass,
        &format!(
            "bounds on 16-point grid ({checked} with both bounds, {unsupported} Cauchy–Schwarz only), convolution at β∈{{0.5,1.5,2}}, dispersive order 4 regimes {notes:?}"
        ),
    );
}

// ---------------------------------------------------------------- 7

const ESCORT_TOL: f64 = 1e-6;

#[test]
fn criterion_7_escort_identities() {
    let e1 = m(ContinuousModel::exponential(1.0));
    let e2 = m(ContinuousModel::exponential(2.0));
    let mut worst = 0.0f64;

    // R(X_{e,r}) = (1-αr)/((1-α)(1-r)) · R^{αr}_β / R^{r}_{αβ-α+1}; (1-αr)R^{αr}_β is
    // replaced by its limit I_{αr}^{β-1} when αr = 1.
    let r = 2.0;
    let beta = 2.0;
    for alpha in [0.5, 2.0] {
        let lhs = rigf_continuous(&escort(&e1, r).unwrap(), OrderPair::new(alpha, beta).unwrap()).unwrap().value;
        let i_ar = igf_golomb(&e1, alpha * r).unwrap();
        let scaled_num = if (alpha * r - 1.0).abs() < 1e-12 {
            i_ar.powf(beta - 1.0)
        } else {
            (1.0 - alpha * r) * rigf_continuous(&e1, OrderPair::new(alpha * r, beta).unwrap()).unwrap().value
        };
        let den = rigf_continuous(&e1, OrderPair::new(r, alpha * beta - alpha + 1.0).unwrap()).unwrap().value;
        let rhs = scaled_num / ((1.0 - alpha) * (1.0 - r)) / den;
        worst = worst.max(rel_err(lhs, rhs));
    }

    // R(Y_{E,r}) RD^r_{αβ-α+1}(X,Y) = (1-α) R^α_{rβ-r+1}(X) R^α_{(1-r)(β-1)+1}(Y) RD^r_β(X_{e,α}, Y_{e,α})
    let (r, alpha, beta) = (0.5, 2.0, 1.5);
    let ge = ContinuousModel::generalized_escort(&e1, &e2, r).unwrap();
    let lhs = rigf_continuous(&ge, OrderPair::new(alpha, beta).unwrap()).unwrap().value
        * rdigf(&e1, &e2, OrderPair::new(r, alpha * beta - alpha + 1.0).unwrap()).unwrap().value;
    let rhs = (1.0 - alpha)
        * rigf_continuous(&e1, OrderPair::new(alpha, r * beta - r + 1.0).unwrap()).unwrap().value
        * rigf_continuous(&e2, OrderPair::new(alpha, (1.0 - r) * (beta - 1.0) + 1.0).unwrap()).unwrap().value
        * rdigf(&escort(&e1, alpha).unwrap(), &escort(&e2, alpha).unwrap(), OrderPair::new(r, beta).unwrap())
            .unwrap()
            .value;
    worst = worst.max(rel_err(lhs, rhs));
    verdict("7", worst <= ESCORT_TOL, &format!("escort and generalized-escort identities, worst relative error {worst:.2e} (tol {ESCORT_TOL:.0e})"));
}

// ---------------------------------------------------------------- 8

const TRANSFORM_TOL: f64 = 1e-6;

#[test]
fn criterion_8_monotone_transform() {
    let f = m(ContinuousModel::exponential(1.0));
    let g = m(ContinuousModel::exponential(2.0));
    let mut worst = 0.0f64;
    for (alpha, beta) in [(0.5, 2.0), (0.3, 1.5), (0.7, 0.5)] {
        let o = OrderPair::new(alpha, beta).unwrap();
        let base = rdigf(&f, &g, o).unwrap().value;
        let sq = rdigf_monotone_transform(&f, &g, o, &MonotoneMap::Square).unwrap().value;
        let neg = rdigf_monotone_transform(&f, &g, o, &MonotoneMap::Negate).unwrap().value;
        worst = worst.max((sq - base).abs()).max((neg + base).abs());
    }
    verdict("8", worst <= TRANSFORM_TOL, &format!("ψ=x² invariant, ψ=−x negated, worst abs error {worst:.2e} (tol {TRANSFORM_TOL:.0e})"));
}

// ---------------------------------------------------------------- 9

const CHAOS_N: usize = 10_000;
const CYCLE_TOL: f64 = 1e-3;

#[test]
fn criterion_9_chaos() {
    let orbit = |kind, x0| iterate_map(MapSpec::one_dim(kind, x0, CHAOS_N)).unwrap();
    let h2 = series_renyi_entropy(&orbit(MapKind::Chebyshev { s: 2.0 }, 0.1), 0.01, Bandwidth::Silverman).unwrap();
    let h08 = series_renyi_entropy(&orbit(MapKind::Chebyshev { s: 0.8 }, 0.1), 0.01, Bandwidth::Silverman).unwrap();

    let o = OrderPair::new(0.01, 2.0).unwrap();
    let r: Vec<f64> = [4.0, 3.8, 3.4]
        .iter()
        .map(|&r| series_rigf(&orbit(MapKind::Logistic { r }, 0.1), o, Bandwidth::Silverman).unwrap())
        .collect();

    let sweep = bifurcation_sweep(SweepFamily::Logistic, &[2.0, 3.2], 500, 200, 0.1, 0.0, Parallelism::Parallel).unwrap();
    let disc = (4.2f64 * 0.2).sqrt();
    let cycle = [(4.2 - disc) / 6.4, (4.2 + disc) / 6.4];
    let mut worst = 0.0f64;
    for &(p, x) in &sweep.points {
        let err = if p == 2.0 { (x - 0.5).abs() } else { cycle.iter().map(|c| (x - c).abs()).fold(f64::INFINITY, f64::min) };
        worst = worst.max(err);
    }
    let visits_both = cycle.iter().all(|c| sweep.points.iter().any(|&(p, x)| p == 3.2 && (x - c).abs() <= CYCLE_TOL));
    verdict(
        "9",
        h2 > h08 && r[0] > r[1] && r[1] > r[2] && worst <= CYCLE_TOL && visits_both && sweep.failures.is_empty(),
        &format!(
            "Chebyshev H(s=2) {h2:.4} > H(s=0.8) {h08:.4}; logistic RIGF r=4 {:.4} > r=3.8 {:.4} > r=3.4 {:.4}; bifurcation worst error {worst:.1e} (tol {CYCLE_TOL:.0e})",
            r[0], r[1], r[2]
        ),
    );
}

// ---------------------------------------------------------------- 10

const TRIALS: usize = 1000;
const PROPORTION_TOL: f64 = 0.08;

#[test]
fn criterion_10_model_selection() {
    let truth = m(ContinuousModel::exponential(0.5));
    let candidates = [Family::Exponential, Family::Weibull2, Family::Pareto1];
    let o = OrderPair::new(1.5, 0.7).unwrap();
    let study =
        rigf_proportion_study(&truth, &candidates, &[o], TRIALS, 500, DEFAULT_SEED, &NearestTruth, Parallelism::Parallel)
            .unwrap();
    let cell = &study.cells[0];
    let want = [0.513, 0.487, 0.000];
    let proportions_ok = cell.proportions.iter().zip(want).all(|(p, w)| (p - w).abs() <= PROPORTION_TOL);

    let o = OrderPair::new(0.5, 1.5).unwrap();
    let table = model_selection_rdigf(
        &FAILURE_TIMES,
        Family::Exponential,
        &[Family::Weibull2, Family::Iehl, Family::LogLogistic],
        &[o],
    )
    .unwrap();
    let ranking = table.ranking(0.5, 1.5);
    let ordering_ok = ranking.first() == Some(&Family::Weibull2) && ranking.last() == Some(&Family::LogLogistic);
    let distances: Vec<String> =
        table.rows.iter().map(|r| format!("{} {:.3e}", r.competitor.name(), r.distance)).collect();
    verdict(
        "10",
        proportions_ok && ordering_ok,
        &format!(
            "proportions {:?} over {} trials ({} excluded) vs {want:?} ± {PROPORTION_TOL} {proportions_ok}; \
             W closest and LL farthest {ordering_ok}, cross-integral distance from 1: {}",
            cell.proportions.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>(),
            cell.counted,
            cell.excluded,
            distances.join(", ")
        ),
    );
}
