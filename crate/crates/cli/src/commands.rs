use clap::{Args, Subcommand, ValueEnum};
use igflab::chaos::{
    bifurcation_sweep, iterate_map, series_renyi_entropy, series_rigf, MapKind, MapSpec, SweepFamily,
};
use igflab::distributions::{
    closed_form_cross_integral, closed_form_integral, closed_form_rdigf, closed_form_rigf,
    closed_form_rigf_discrete, DiscretePmf,
};
use igflab::divergence::{kl_divergence, rdigf, rdigf_monotone_transform, renyi_divergence};
use igflab::estimators::{bootstrap, rigf_nonparametric, rigf_parametric, Bandwidth, Family};
use igflab::experiments::{
    mc_estimator_study, model_selection_rdigf, real_data_report, rigf_proportion_study, AwardCriterion,
    EstimatorKind, McConfig, McReport, NearestKernel, NearestTruth, Quantity,
};
use igflab::igf::{
    hill_number, igf_golomb, igf_quantile_form, informational_energy, renyi_entropy, renyi_entropy_discrete,
    rigf_continuous, rigf_discrete, shannon_entropy,
};
use igflab::systems::{distortion_koutofn, system_measures, Distortion, SystemModel};
use igflab::{ContinuousModel, Error, MonotoneMap, OrderPair, Parallelism};

use crate::input::{self, orders, SampleArgs};
use crate::table::{num, opt, Table};
use crate::CliError;

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: u64,
    pub mode: Parallelism,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Continuous model as JSON, e.g. '{"family":"exponential","params":{"lambda":1}}', or @file.
    #[arg(long)]
    pub dist: Option<String>,
    /// Discrete law as JSON: duniform {n}, geometric {a} or zeta {a}, or @file.
    #[arg(long)]
    pub pmf: Option<String>,
}

enum Law {
    Continuous(ContinuousModel),
    Discrete(DiscretePmf),
}

impl Target {
    fn law(&self) -> Result<Law, CliError> {
        match (&self.dist, &self.pmf) {
            (Some(d), _) => Ok(Law::Continuous(input::model(d)?)),
            (_, Some(p)) => Ok(Law::Discrete(input::pmf(p)?)),
            _ => Err(CliError::Config("one of --dist or --pmf is required".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Tabulated closed form when one exists, quadrature otherwise.
    Auto,
    Closed,
    Numeric,
}

// ---------------------------------------------------------------- rigf / igf

#[derive(Debug, Args)]
pub struct RigfArgs {
    #[command(flatten)]
    pub target: Target,
    /// Comma-separated α values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    /// Comma-separated β values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

pub fn rigf(a: &RigfArgs) -> Result<Table, CliError> {
    let law = a.target.law()?;
    let mut t = Table::new(["alpha", "beta", "integral", "rigf", "method"]);
    for o in orders(&a.alpha, &a.beta)? {
        let (integral, value, how) = match &law {
            Law::Continuous(m) => continuous_rigf(m, o, a.method)?,
            Law::Discrete(p) => discrete_rigf(p, o, a.method)?,
        };
        t.push(vec![num(o.alpha()), num(o.beta()), num(integral), num(value), how.into()]);
    }
    Ok(t)
}

fn continuous_rigf(m: &ContinuousModel, o: OrderPair, method: Method) -> Result<(f64, f64, &'static str), CliError> {
    let closed = || -> igflab::Result<(f64, f64)> { Ok((closed_form_integral(m, o.alpha())?, closed_form_rigf(m, o)?)) };
    let numeric = || -> igflab::Result<(f64, f64)> {
        let r = rigf_continuous(m, o)?;
        Ok((r.integral, r.value))
    };
    let (i, v, how) = match method {
        Method::Closed => closed().map(|(i, v)| (i, v, "closed"))?,
        Method::Numeric => numeric().map(|(i, v)| (i, v, "numeric"))?,
        Method::Auto => match closed() {
            Ok((i, v)) => (i, v, "closed"),
            Err(Error::NoClosedForm(_)) => numeric().map(|(i, v)| (i, v, "numeric"))?,
            Err(e) => return Err(e.into()),
        },
    };
    Ok((i, v, how))
}

fn discrete_rigf(p: &DiscretePmf, o: OrderPair, method: Method) -> Result<(f64, f64, &'static str), CliError> {
    let numeric = rigf_discrete(p, o)?;
    let closed = match method {
        Method::Numeric => None,
        Method::Closed => Some(closed_form_rigf_discrete(p, o)?),
        Method::Auto => match closed_form_rigf_discrete(p, o) {
            Ok(v) => Some(v),
            Err(Error::NoClosedForm(_)) => None,
            Err(e) => return Err(e.into()),
        },
    };
    Ok(match closed {
        Some(v) => (numeric.integral, v, "closed"),
        None => (numeric.integral, numeric.value, "numeric"),
    })
}

#[derive(Debug, Args)]
pub struct IgfArgs {
    #[command(flatten)]
    pub target: Target,
    /// Comma-separated exponents γ of `∫ f^γ`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gamma: Vec<f64>,
    /// Integrate `f(F⁻¹(u))^{γ-1}` over `(0, 1)` instead of `f^γ` over the support.
    #[arg(long)]
    pub quantile_form: bool,
}

pub fn igf(a: &IgfArgs) -> Result<Table, CliError> {
    let law = a.target.law()?;
    let mut t = Table::new(["gamma", "igf"]);
    for &g in &a.gamma {
        let v = match &law {
            Law::Continuous(m) if a.quantile_form => igf_quantile_form(m, g)?,
            Law::Continuous(m) => igf_golomb(m, g)?,
            Law::Discrete(_) if a.quantile_form => {
                return Err(CliError::Config("--quantile-form needs a continuous --dist".into()))
            }
            Law::Discrete(p) => p.power_sum(g)?,
        };
        t.push(vec![num(g), num(v)]);
    }
    Ok(t)
}

// ---------------------------------------------------------------- rdigf / entropy

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    Identity,
    Square,
    Exp,
    Negate,
}

impl Transform {
    fn map(self) -> MonotoneMap {
        match self {
            Transform::Identity => MonotoneMap::Identity,
            Transform::Square => MonotoneMap::Square,
            Transform::Exp => MonotoneMap::Exp,
            Transform::Negate => MonotoneMap::Negate,
        }
    }
}

#[derive(Debug, Args)]
pub struct RdigfArgs {
    /// Numerator density `f` as JSON, or @file.
    #[arg(long)]
    pub f: String,
    /// Reference density `g` as JSON, or @file.
    #[arg(long)]
    pub g: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    /// Apply the same strictly monotone map to both variables first.
    #[arg(long, value_enum)]
    pub transform: Option<Transform>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

pub fn rdigf_cmd(a: &RdigfArgs) -> Result<Table, CliError> {
    let (f, g) = (input::model(&a.f)?, input::model(&a.g)?);
    if a.transform.is_some() && a.method == Method::Closed {
        return Err(CliError::Config("--transform is computed by quadrature; drop --method closed".into()));
    }
    let mut t = Table::new(["alpha", "beta", "cross_integral", "rdigf", "method"]);
    for o in orders(&a.alpha, &a.beta)? {
        let numeric = || -> igflab::Result<(f64, f64)> {
            let r = match a.transform {
                Some(tr) => rdigf_monotone_transform(&f, &g, o, &tr.map())?,
                None => rdigf(&f, &g, o)?,
            };
            Ok((r.cross_integral, r.value))
        };
        let closed = || -> igflab::Result<(f64, f64)> {
            Ok((closed_form_cross_integral(&f, &g, o.alpha())?, closed_form_rdigf(&f, &g, o)?))
        };
        let (i, v, how) = match (a.method, a.transform) {
            (Method::Numeric, _) | (Method::Auto, Some(_)) => numeric().map(|(i, v)| (i, v, "numeric"))?,
            (Method::Closed, _) => closed().map(|(i, v)| (i, v, "closed"))?,
            (Method::Auto, None) => match closed() {
                Ok((i, v)) => (i, v, "closed"),
                Err(Error::NoClosedForm(_)) => numeric().map(|(i, v)| (i, v, "numeric"))?,
                Err(e) => return Err(e.into()),
            },
        };
        t.push(vec![num(o.alpha()), num(o.beta()), num(i), num(v), how.into()]);
    }
    Ok(t)
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub target: Target,
    /// Comma-separated Rényi orders.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub alpha: Vec<f64>,
    /// Second continuous model; adds Rényi and Kullback–Leibler divergences.
    #[arg(long)]
    pub against: Option<String>,
}

pub fn entropy(a: &EntropyArgs) -> Result<Table, CliError> {
    let mut t = Table::new(["measure", "alpha", "value"]);
    let mut row = |m: &str, alpha: Option<f64>, v: f64| t.push(vec![m.into(), opt(alpha), num(v)]);
    match a.target.law()? {
        Law::Continuous(m) => {
            for &al in &a.alpha {
                row("renyi", Some(al), renyi_entropy(&m, al)?);
            }
            row("shannon", None, shannon_entropy(&m)?);
            row("informational_energy", None, informational_energy(&m)?);
            if let Some(g) = &a.against {
                let g = input::model(g)?;
                for &al in &a.alpha {
                    row("renyi_divergence", Some(al), renyi_divergence(&m, &g, al)?);
                }
                row("kl_divergence", None, kl_divergence(&m, &g)?);
            }
        }
        Law::Discrete(p) => {
            if a.against.is_some() {
                return Err(CliError::Config("--against needs a continuous --dist".into()));
            }
            for &al in &a.alpha {
                row("renyi", Some(al), renyi_entropy_discrete(&p, al)?);
                row("hill_number", Some(al), hill_number(&p, al)?);
            }
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------- estimation

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorChoice {
    Both,
    Nonparametric,
    Parametric,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = EstimatorChoice::Both)]
    pub estimator: EstimatorChoice,
    /// Family fitted by maximum likelihood for the parametric estimator.
    #[arg(long, value_parser = input::family, default_value = "exponential")]
    pub family: Family,
    /// Kernel bandwidth: `silverman` or a positive number.
    #[arg(long, value_parser = input::bandwidth, default_value = "silverman")]
    pub bandwidth: Bandwidth,
    /// Bootstrap resamples for a standard error (0 disables).
    #[arg(long, default_value_t = 0)]
    pub bootstrap: usize,
}

pub fn estimate(a: &EstimateArgs, ctx: Ctx) -> Result<Table, CliError> {
    let sample = a.sample.load()?;
    let mut kinds = Vec::new();
    if a.estimator != EstimatorChoice::Parametric {
        kinds.push(EstimatorKind::Nonparametric);
    }
    if a.estimator != EstimatorChoice::Nonparametric {
        kinds.push(EstimatorKind::Parametric);
    }
    let mut t = Table::new([
        "estimator",
        "family",
        "alpha",
        "beta",
        "n",
        "estimate",
        "bootstrap_mean",
        "bootstrap_sd",
        "bootstrap_failed",
    ]);
    for o in orders(&a.alpha, &a.beta)? {
        for &kind in &kinds {
            let stat = |s: &[f64]| match kind {
                EstimatorKind::Nonparametric => rigf_nonparametric(s, o, a.bandwidth),
                EstimatorKind::Parametric => rigf_parametric(a.family, s, o),
            };
            let value = stat(&sample)?;
            let (mean, sd, failed) = if a.bootstrap > 0 {
                let b = bootstrap(&sample, a.bootstrap, stat, ctx.seed, ctx.mode);
                (b.mean(), sample_sd(&b.values), b.failed.len().to_string())
            } else {
                (None, None, String::new())
            };
            let family = match kind {
                EstimatorKind::Nonparametric => "kernel",
                EstimatorKind::Parametric => a.family.name(),
            };
            t.push(vec![
                kind_name(kind).into(),
                family.into(),
                num(o.alpha()),
                num(o.beta()),
                sample.len().to_string(),
                num(value),
                opt(mean),
                opt(sd),
                failed,
            ]);
        }
    }
    Ok(t)
}

fn sample_sd(v: &[f64]) -> Option<f64> {
    if v.len() < 2 {
        return None;
    }
    let m = v.iter().sum::<f64>() / v.len() as f64;
    Some((v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt())
}

pub(crate) fn kind_name(k: EstimatorKind) -> &'static str {
    match k {
        EstimatorKind::Nonparametric => "nonparametric",
        EstimatorKind::Parametric => "parametric",
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Study configuration as JSON, or @file.
    #[arg(long)]
    pub config: String,
    /// Override the configured replication count.
    #[arg(long)]
    pub replications: Option<usize>,
}

pub fn simulate(a: &SimulateArgs, ctx: Ctx) -> Result<(Table, McConfig), CliError> {
    let text = input::json_text(&a.config)?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config: {e}")))?;
    let obj = value.as_object_mut().ok_or_else(|| CliError::Config("config must be a JSON object".into()))?;
    obj.entry("seed").or_insert(ctx.seed.into());
    if let Some(r) = a.replications {
        obj.insert("replications".into(), r.into());
    }
    let config: McConfig = serde_json::from_value(value).map_err(|e| CliError::Config(format!("config: {e}")))?;
    config.validate()?;
    let report = mc_estimator_study(&config, ctx.mode)?;
    Ok((mc_table(&report, &config, |_| None), config))
}

pub(crate) const MC_HEADER: [&str; 14] = [
    "estimator",
    "family",
    "alpha",
    "beta",
    "n",
    "sd",
    "ab",
    "mse",
    "quantity",
    "truth",
    "mean",
    "mae",
    "replications_used",
    "failures",
];

/// Cells in report order; `extra` appends columns per cell.
pub(crate) fn mc_table(
    report: &McReport,
    config: &McConfig,
    extra: impl Fn(&igflab::experiments::McCell) -> Option<Vec<String>>,
) -> Table {
    let mut t = Table::new(MC_HEADER);
    for c in &report.cells {
        let family = match c.estimator {
            EstimatorKind::Nonparametric => "kernel",
            EstimatorKind::Parametric => config.fit_family.name(),
        };
        let quantity = match c.quantity {
            Quantity::Rigf => "rigf",
            Quantity::Igf => "igf",
        };
        let mut row = vec![
            kind_name(c.estimator).into(),
            family.into(),
            num(c.alpha),
            opt(c.beta),
            c.n.to_string(),
            num(c.sd),
            num(c.ab),
            num(c.mse),
            quantity.into(),
            num(c.truth),
            num(c.mean),
            num(c.mae),
            c.replications_used.to_string(),
            c.failures.to_string(),
        ];
        if let Some(more) = extra(c) {
            row.extend(more);
        }
        t.rows.push(row);
    }
    t
}

// ---------------------------------------------------------------- systems

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Comma-separated structures: seriesN, parallelN or KofN (e.g. 2of3).
    #[arg(long, value_delimiter = ',', required = true)]
    pub structure: Vec<String>,
    /// Component model: `power` (with --a) or JSON, or @file.
    #[arg(long, default_value = "power")]
    pub baseline: String,
    /// Exponent of the power baseline `F(x) = x^a`.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
}

pub fn parse_structure(s: &str) -> Result<Distortion, CliError> {
    let bad = || CliError::Config(format!("structure must be seriesN, parallelN or KofN, got '{s}'"));
    let int = |t: &str| t.parse::<u32>().map_err(|_| bad());
    if let Some(n) = s.strip_prefix("series") {
        return Ok(Distortion::series(int(n)?)?);
    }
    if let Some(n) = s.strip_prefix("parallel") {
        return Ok(Distortion::parallel(int(n)?)?);
    }
    let (k, n) = s.split_once("of").ok_or_else(bad)?;
    Ok(distortion_koutofn(int(k.trim_end_matches('-'))?, int(n.trim_start_matches('-'))?)?)
}

pub fn system(a: &SystemArgs) -> Result<Table, CliError> {
    let baseline = if a.baseline == "power" {
        let exp = a.a.ok_or_else(|| CliError::Config("--baseline power needs --a".into()))?;
        ContinuousModel::power(exp)?
    } else {
        if a.a.is_some() {
            return Err(CliError::Config("--a only applies to --baseline power".into()));
        }
        input::model(&a.baseline)?
    };
    let structures = a.structure.iter().map(|s| parse_structure(s)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(["system", "alpha", "beta", "rigf", "igf", "renyi", "varentropy"]);
    for d in structures {
        let label = d.label();
        let sys = SystemModel::new(baseline.clone(), d);
        let ve = sys.varentropy()?;
        for o in orders(&a.alpha, &a.beta)? {
            let m = system_measures(&sys, o)?;
            t.push(vec![
                label.clone(),
                num(o.alpha()),
                num(o.beta()),
                num(m.rigf),
                num(m.igf),
                num(m.renyi_entropy),
                num(ve),
            ]);
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------- chaos

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Logistic,
    Chebyshev,
    Henon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChaosOutput {
    /// `index,x[,y]`
    Orbit,
    /// `param,x` over --grid.
    Bifurcation,
    /// `beta,rigf` kernel estimate from the orbit.
    Rigf,
    /// `alpha,renyi` kernel estimate from the orbit.
    Entropy,
}

#[derive(Debug, Args)]
pub struct ChaosArgs {
    #[arg(long, value_enum)]
    pub map: MapName,
    /// Logistic growth rate.
    #[arg(long)]
    pub r: Option<f64>,
    /// Chebyshev parameter.
    #[arg(long)]
    pub s: Option<f64>,
    /// Hénon `a`.
    #[arg(long)]
    pub a: Option<f64>,
    /// Hénon `b`.
    #[arg(long, default_value_t = 0.3)]
    pub b: f64,
    #[arg(long, default_value_t = 0.1)]
    pub x0: f64,
    /// Hénon initial `y`.
    #[arg(long, default_value_t = 0.0)]
    pub y0: f64,
    /// Orbit length.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ChaosOutput::Orbit)]
    pub output_kind: ChaosOutput,
    /// Parameter grid `start:stop:count` for bifurcation output.
    #[arg(long, value_parser = input::linspace)]
    pub grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = igflab::chaos::DEFAULT_TRANSIENT)]
    pub transient: usize,
    #[arg(long, default_value_t = igflab::chaos::DEFAULT_KEEP)]
    pub keep: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.01")]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2,2.5,3")]
    pub beta: Vec<f64>,
    #[arg(long, value_parser = input::bandwidth, default_value = "silverman")]
    pub bandwidth: Bandwidth,
}

impl ChaosArgs {
    fn need(&self, v: Option<f64>, flag: &str) -> Result<f64, CliError> {
        v.ok_or_else(|| CliError::Config(format!("--map {:?} needs --{flag}", self.map).to_lowercase()))
    }

    fn kind(&self) -> Result<MapKind, CliError> {
        Ok(match self.map {
            MapName::Logistic => MapKind::Logistic { r: self.need(self.r, "r")? },
            MapName::Chebyshev => MapKind::Chebyshev { s: self.need(self.s, "s")? },
            MapName::Henon => MapKind::Henon { a: self.need(self.a, "a")?, b: self.b },
        })
    }
}

pub fn chaos(a: &ChaosArgs, ctx: Ctx) -> Result<Table, CliError> {
    if a.output_kind == ChaosOutput::Bifurcation {
        let grid = a.grid.as_ref().ok_or_else(|| CliError::Config("bifurcation output needs --grid".into()))?;
        let family = match a.map {
            MapName::Logistic => SweepFamily::Logistic,
            MapName::Chebyshev => SweepFamily::Chebyshev,
            MapName::Henon => SweepFamily::Henon { b: a.b },
        };
        let sweep = bifurcation_sweep(family, grid, a.transient, a.keep, a.x0, a.y0, ctx.mode)?;
        for (p, e) in &sweep.failures {
            eprintln!("igflab: parameter {p} skipped: {e}");
        }
        let mut t = Table::new(["param", "x"]);
        for (p, x) in sweep.points {
            t.push(vec![num(p), num(x)]);
        }
        return Ok(t);
    }
    let orbit = iterate_map(MapSpec { kind: a.kind()?, x0: a.x0, y0: a.y0, n: a.n })?;
    if orbit.clamp_hits > 0 {
        eprintln!("igflab: {} Chebyshev steps clamped into [-1, 1]", orbit.clamp_hits);
    }
    Ok(match a.output_kind {
        ChaosOutput::Orbit => {
            let two_d = !orbit.ys.is_empty();
            let mut t = if two_d { Table::new(["index", "x", "y"]) } else { Table::new(["index", "x"]) };
            for (i, x) in orbit.xs.iter().enumerate() {
                let mut row = vec![i.to_string(), num(*x)];
                if two_d {
                    row.push(num(orbit.ys[i]));
                }
                t.push(row);
            }
            t
        }
        ChaosOutput::Rigf => {
            let mut t = Table::new(["alpha", "beta", "rigf"]);
            for o in orders(&a.alpha, &a.beta)? {
                t.push(vec![num(o.alpha()), num(o.beta()), num(series_rigf(&orbit, o, a.bandwidth)?)]);
            }
            t
        }
        ChaosOutput::Entropy => {
            let mut t = Table::new(["alpha", "renyi"]);
            for &al in &a.alpha {
                t.push(vec![num(al), num(series_renyi_entropy(&orbit, al, a.bandwidth)?)]);
            }
            t
        }
        ChaosOutput::Bifurcation => unreachable!("handled above"),
    })
}

// ---------------------------------------------------------------- fitting and selection

fn default_families() -> Vec<Family> {
    vec![Family::Exponential, Family::Weibull2, Family::Iehl, Family::LogLogistic]
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long, value_delimiter = ',', value_parser = input::family, default_values_t = default_families())]
    pub families: Vec<Family>,
}

pub fn fit(a: &FitArgs) -> Result<Table, CliError> {
    fit_table(&a.sample.load()?, &a.families)
}

pub(crate) const FIT_HEADER: [&str; 8] = ["family", "params", "neg_loglik", "aic", "aicc", "bic", "rank", "error"];

pub(crate) fn fit_table(sample: &[f64], families: &[Family]) -> Result<Table, CliError> {
    let report = real_data_report(sample, families)?;
    let mut t = Table::new(FIT_HEADER);
    for row in &report.rows {
        let rank = report.ranking.iter().position(|f| *f == row.family).map(|i| (i + 1).to_string());
        match &row.outcome {
            Ok((fit, c)) => t.push(vec![
                row.family.name().into(),
                param_text(&fit.params()),
                num(c.neg_loglik),
                num(c.aic),
                num(c.aicc),
                num(c.bic),
                rank.unwrap_or_default(),
                String::new(),
            ]),
            Err(e) => {
                let mut cells = vec![row.family.name().to_string()];
                cells.extend(std::iter::repeat_n(String::new(), 6));
                cells.push(e.to_string());
                t.push(cells);
            }
        }
    }
    Ok(t)
}

pub(crate) fn param_text(params: &[(&str, f64)]) -> String {
    params.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Subcommand)]
pub enum ModelSelect {
    /// RDIGF between a fitted reference model and fitted competitors.
    Divergence(DivergenceArgs),
    /// How often each candidate's fitted RIGF wins across simulated trials.
    Proportions(ProportionArgs),
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long, value_parser = input::family, default_value = "exponential")]
    pub reference: Family,
    #[arg(long, value_delimiter = ',', value_parser = input::family, default_value = "weibull2,iehl,loglogistic")]
    pub competitors: Vec<Family>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    /// Nearest to the true model's RIGF.
    Truth,
    /// Nearest to the kernel estimate from the same sample.
    Kernel,
}

#[derive(Debug, Args)]
pub struct ProportionArgs {
    /// True model as JSON, or @file.
    #[arg(long)]
    pub truth: String,
    #[arg(long, value_delimiter = ',', value_parser = input::family, default_value = "exponential,weibull2,pareto1")]
    pub candidates: Vec<Family>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Observations per trial.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Criterion::Truth)]
    pub criterion: Criterion,
    /// Bandwidth for `--criterion kernel`.
    #[arg(long, value_parser = input::bandwidth, default_value = "silverman")]
    pub bandwidth: Bandwidth,
}

pub fn modelselect(m: &ModelSelect, ctx: Ctx) -> Result<Table, CliError> {
    match m {
        ModelSelect::Divergence(a) => divergence_table(&a.sample.load()?, a.reference, &a.competitors, &orders(&a.alpha, &a.beta)?),
        ModelSelect::Proportions(a) => {
            let truth = input::model(&a.truth)?;
            let criterion: Box<dyn AwardCriterion> = match a.criterion {
                Criterion::Truth => Box::new(NearestTruth),
                Criterion::Kernel => Box::new(NearestKernel(a.bandwidth)),
            };
            proportion_table(&truth, &a.candidates, &orders(&a.alpha, &a.beta)?, a.trials, a.n, ctx, criterion.as_ref())
        }
    }
}

pub(crate) fn divergence_table(
    sample: &[f64],
    reference: Family,
    competitors: &[Family],
    orders: &[OrderPair],
) -> Result<Table, CliError> {
    let table = model_selection_rdigf(sample, reference, competitors, orders)?;
    let mut t = Table::new(["reference", "competitor", "alpha", "beta", "cross_integral", "rdigf", "distance", "rank"]);
    for r in &table.rows {
        let rank = table.ranking(r.alpha, r.beta).iter().position(|f| *f == r.competitor).map_or(0, |i| i + 1);
        t.push(vec![
            reference.name().into(),
            r.competitor.name().into(),
            num(r.alpha),
            num(r.beta),
            num(r.cross_integral),
            num(r.rdigf),
            num(r.distance),
            rank.to_string(),
        ]);
    }
    Ok(t)
}

pub(crate) fn proportion_table(
    truth: &ContinuousModel,
    candidates: &[Family],
    orders: &[OrderPair],
    trials: usize,
    n: usize,
    ctx: Ctx,
    criterion: &dyn AwardCriterion,
) -> Result<Table, CliError> {
    let report = rigf_proportion_study(truth, candidates, orders, trials, n, ctx.seed, criterion, ctx.mode)?;
    let mut header = vec!["alpha".to_string(), "beta".to_string()];
    header.extend(candidates.iter().map(|c| c.name().to_string()));
    header.extend(["counted".to_string(), "excluded".to_string()]);
    let mut t = Table::new(header);
    for c in &report.cells {
        let mut row = vec![num(c.alpha), num(c.beta)];
        row.extend(c.proportions.iter().map(|p| num(*p)));
        row.extend([c.counted.to_string(), c.excluded.to_string()]);
        t.push(row);
    }
    Ok(t)
}
