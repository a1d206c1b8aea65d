use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ContinuousModel;
use crate::error::{Error, Result};

/// JSON form of a catalog model: `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl ModelSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(format!("model spec: {e}")))
    }

    pub fn from_model(model: &ContinuousModel) -> Self {
        ModelSpec {
            family: model.family().to_string(),
            params: model.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn build(&self) -> Result<ContinuousModel> {
        let (required, optional): (&[&str], &[&str]) = match self.family.as_str() {
            "uniform" => (&["a", "b"], &[]),
            "exponential" => (&["lambda"], &[]),
            "weibull_standard" => (&["c"], &[]),
            "weibull2" => (&["k", "lambda"], &[]),
            "power" => (&["a"], &[]),
            "pareto1" => (&["c"], &["sigma"]),
            "lomax" => (&["a", "b"], &[]),
            "loglogistic" | "iehl" => (&["alpha", "lambda"], &[]),
            "gamma" => (&["shape", "rate"], &[]),
            other => return Err(Error::Config(format!("unknown family '{other}'"))),
        };
        for key in self.params.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                return Err(Error::Config(format!("unknown parameter '{key}' for {}", self.family)));
            }
        }
        let get = |k: &str| {
            self.params
                .get(k)
                .copied()
                .ok_or_else(|| Error::Config(format!("missing parameter '{k}' for {}", self.family)))
        };
        let p = |k: &str| get(k);
        match self.family.as_str() {
            "uniform" => ContinuousModel::uniform(p("a")?, p("b")?),
            "exponential" => ContinuousModel::exponential(p("lambda")?),
            "weibull_standard" => ContinuousModel::weibull_standard(p("c")?),
            "weibull2" => ContinuousModel::weibull(p("k")?, p("lambda")?),
            "power" => ContinuousModel::power(p("a")?),
            "pareto1" => {
                ContinuousModel::pareto_scaled(p("c")?, self.params.get("sigma").copied().unwrap_or(1.0))
            }
            "lomax" => ContinuousModel::lomax(p("a")?, p("b")?),
            "loglogistic" => ContinuousModel::loglogistic(p("alpha")?, p("lambda")?),
            "iehl" => ContinuousModel::iehl(p("alpha")?, p("lambda")?),
            "gamma" => ContinuousModel::gamma(p("shape")?, p("rate")?),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let spec = ModelSpec::parse(r#"{"family":"exponential","params":{"lambda":1}}"#).unwrap();
        let m = spec.build().unwrap();
        assert_eq!(m.family(), "exponential");
        assert_eq!(ModelSpec::from_model(&m), spec);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(ModelSpec::parse(r#"{"family":"exponential","params":{"lambda":1},"x":2}"#).is_err());
        let spec = ModelSpec::parse(r#"{"family":"exponential","params":{"rate":1}}"#).unwrap();
        assert!(matches!(spec.build(), Err(Error::Config(_))));
        let spec = ModelSpec::parse(r#"{"family":"cauchy","params":{}}"#).unwrap();
        assert!(spec.build().is_err());
    }
}
