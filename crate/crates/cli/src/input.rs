//! Parsing of model specs, samples and grids from command-line values.

use std::path::{Path, PathBuf};

use clap::Args;
use igflab::distributions::DiscretePmf;
use igflab::estimators::{Bandwidth, Family};
use igflab::experiments::FAILURE_TIMES;
use igflab::{ContinuousModel, ModelSpec, OrderPair};

use crate::CliError;

/// Inline JSON, or `@path` to read it from a file.
pub fn json_text(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn model(arg: &str) -> Result<ContinuousModel, CliError> {
    Ok(ModelSpec::parse(&json_text(arg)?)?.build()?)
}

/// Discrete law from `{"family": "duniform"|"geometric"|"zeta", "params": {...}}`.
pub fn pmf(arg: &str) -> Result<DiscretePmf, CliError> {
    let spec = ModelSpec::parse(&json_text(arg)?)?;
    let key = match spec.family.as_str() {
        "duniform" => "n",
        "geometric" | "zeta" => "a",
        other => return Err(CliError::Config(format!("unknown discrete family '{other}'"))),
    };
    if let Some(k) = spec.params.keys().find(|k| k.as_str() != key) {
        return Err(CliError::Config(format!("unknown parameter '{k}' for {}", spec.family)));
    }
    let v = *spec
        .params
        .get(key)
        .ok_or_else(|| CliError::Config(format!("missing parameter '{key}' for {}", spec.family)))?;
    Ok(match spec.family.as_str() {
        "duniform" => {
            if v < 1.0 || v.fract() != 0.0 {
                return Err(CliError::Config(format!("duniform needs a positive integer n, got {v}")));
            }
            DiscretePmf::uniform(v as u64)?
        }
        "geometric" => DiscretePmf::geometric(v)?,
        _ => DiscretePmf::zeta(v)?,
    })
}

/// One value per line; blank lines and `#` comments are skipped.
pub fn read_sample(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::Config(format!("{}:{}: not a number: '{line}'", path.display(), i + 1)))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Config(format!("{}: no observations", path.display())));
    }
    Ok(out)
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SampleArgs {
    /// File with one observation per line.
    #[arg(long)]
    pub sample: Option<PathBuf>,
    /// Use the built-in failure-time data (15 electronic components).
    #[arg(long)]
    pub failure_times: bool,
}

impl SampleArgs {
    pub fn load(&self) -> Result<Vec<f64>, CliError> {
        match &self.sample {
            Some(p) => read_sample(p),
            None => Ok(FAILURE_TIMES.to_vec()),
        }
    }
}

pub fn family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

pub fn bandwidth(s: &str) -> Result<Bandwidth, String> {
    if s.eq_ignore_ascii_case("silverman") {
        return Ok(Bandwidth::Silverman);
    }
    match s.parse::<f64>() {
        Ok(h) if h > 0.0 && h.is_finite() => Ok(Bandwidth::Fixed(h)),
        _ => Err(format!("expected 'silverman' or a positive number, got '{s}'")),
    }
}

/// Every `(α, β)` combination, α-major.
pub fn orders(alphas: &[f64], betas: &[f64]) -> Result<Vec<OrderPair>, CliError> {
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for &a in alphas {
        for &b in betas {
            out.push(OrderPair::new(a, b)?);
        }
    }
    Ok(out)
}

/// `start:stop:count`, inclusive of both ends.
pub fn linspace(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || format!("expected start:stop:count, got '{s}'");
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    match count {
        0 => Err(bad()),
        1 => Ok(vec![start]),
        _ => Ok((0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_specs() {
        assert_eq!(linspace("2:3:3").unwrap(), vec![2.0, 2.5, 3.0]);
        assert!(linspace("2:3").is_err());
        assert!(matches!(bandwidth("0.35"), Ok(Bandwidth::Fixed(h)) if h == 0.35));
        assert!(bandwidth("-1").is_err());
        assert!(pmf(r#"{"family":"geometric","params":{"a":0.4}}"#).is_ok());
        assert!(pmf(r#"{"family":"duniform","params":{"n":2.5}}"#).is_err());
        assert!(pmf(r#"{"family":"zeta","params":{"b":3}}"#).is_err());
        assert_eq!(orders(&[0.5, 2.0], &[1.5]).unwrap().len(), 2);
        assert!(orders(&[1.0], &[1.5]).is_err());
    }
}
