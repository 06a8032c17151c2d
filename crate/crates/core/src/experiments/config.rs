use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::kinds::ExperimentKind;
use crate::error::{Error, Result};
use crate::ratio::{format_rational64, parse_rational64};

/// Everything needed to rerun an experiment. `caps` bound exact computations
/// and `params` carry experiment-specific settings; both reject names the
/// experiment does not know.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub lambda: Rational64,
    pub beta: Option<Rational64>,
    pub c: Option<Rational64>,
    pub trials: usize,
    pub master_seed: u64,
    pub caps: BTreeMap<String, u64>,
    pub params: BTreeMap<String, String>,
    pub output_path: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    experiment: String,
    n: usize,
    lambda: String,
    #[serde(default)]
    beta: Option<String>,
    #[serde(default)]
    c: Option<String>,
    trials: usize,
    master_seed: u64,
    #[serde(default)]
    caps: BTreeMap<String, u64>,
    #[serde(default)]
    params: BTreeMap<String, String>,
    output_path: String,
}

impl ExperimentConfig {
    /// A config with the given experiment and defaults elsewhere: `n = 100`,
    /// `lambda = 3`, one trial, seed 0.
    pub fn new(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            n: 100,
            lambda: Rational64::from_integer(3),
            beta: None,
            c: None,
            trials: 1,
            master_seed: 0,
            caps: BTreeMap::new(),
            params: BTreeMap::new(),
            output_path: format!("{}.csv", experiment.name()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if let Some((k, _)) = self.caps.iter().find(|(_, &v)| v == 0) {
            return Err(Error::Usage(format!("cap {k} must be positive")));
        }
        let kind = self.experiment;
        if let Some(k) = self.caps.keys().find(|k| !kind.caps().contains(&k.as_str())) {
            return Err(Error::Usage(format!("{} has no cap {k:?} (known: {})", kind.name(), kind.caps().join(", "))));
        }
        if let Some(k) = self.params.keys().find(|k| !kind.params().contains(&k.as_str())) {
            return Err(Error::Usage(format!(
                "{} has no param {k:?} (known: {})",
                kind.name(),
                kind.params().join(", ")
            )));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ConfigJson {
            experiment: self.experiment.name().to_string(),
            n: self.n,
            lambda: format_rational64(&self.lambda),
            beta: self.beta.as_ref().map(format_rational64),
            c: self.c.as_ref().map(format_rational64),
            trials: self.trials,
            master_seed: self.master_seed,
            caps: self.caps.clone(),
            params: self.params.clone(),
            output_path: self.output_path.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    /// Accepts a bare config or a run summary with the config under `"config"`.
    pub fn from_json(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse {
            locus: format!("line {}, column {}", e.line(), e.column()),
            reason: e.to_string(),
        })?;
        let (value, prefix) = match value.get("config") {
            Some(inner) => (inner.clone(), "config."),
            None => (value, ""),
        };
        let j: ConfigJson = serde_json::from_value(value)
            .map_err(|e| Error::Parse { locus: prefix.trim_end_matches('.').to_string(), reason: e.to_string() })?;
        let rational = |field: &str, s: &str| {
            parse_rational64(s).map_err(|e| Error::Parse { locus: format!("{prefix}{field}"), reason: e.to_string() })
        };
        let experiment = ExperimentKind::from_name(&j.experiment)
            .ok_or_else(|| Error::Usage(format!("unknown experiment {:?}", j.experiment)))?;
        Ok(ExperimentConfig {
            experiment,
            n: j.n,
            lambda: rational("lambda", &j.lambda)?,
            beta: j.beta.as_deref().map(|b| rational("beta", b)).transpose()?,
            c: j.c.as_deref().map(|c| rational("c", c)).transpose()?,
            trials: j.trials,
            master_seed: j.master_seed,
            caps: j.caps,
            params: j.params,
            output_path: j.output_path,
        })
    }

    pub(crate) fn cap(&self, name: &str, default: u64) -> u64 {
        self.caps.get(name).copied().unwrap_or(default)
    }

    pub(crate) fn param<T: std::str::FromStr>(&self, name: &'static str, default: T) -> Result<T> {
        match self.params.get(name) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|_| Error::Usage(format!("param {name}: cannot parse {s:?}"))),
        }
    }

    pub(crate) fn param_rational(&self, name: &'static str, default: Rational64) -> Result<Rational64> {
        match self.params.get(name) {
            None => Ok(default),
            Some(s) => parse_rational64(s).map_err(|_| Error::Usage(format!("param {name}: cannot parse {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_json() {
        let mut c = ExperimentConfig::new(ExperimentKind::EventdCensus);
        c.beta = Some(Rational64::new(1, 2));
        c.lambda = Rational64::new(7, 3);
        c.master_seed = u64::MAX;
        c.caps.insert("size".into(), 6);
        assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
        let summary = serde_json::json!({ "config": c.to_json_value(), "failures": 0 }).to_string();
        assert_eq!(ExperimentConfig::from_json(&summary).unwrap(), c);
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        let mut c = ExperimentConfig::new(ExperimentKind::Toy17);
        c.caps.insert("nope".into(), 1);
        assert!(matches!(c.validate(), Err(Error::Usage(_))));
        let s = c.to_json().replace("toy17", "toy18");
        assert!(matches!(ExperimentConfig::from_json(&s), Err(Error::Usage(_))));
        let mut c = ExperimentConfig::new(ExperimentKind::Toy17);
        c.trials = 0;
        assert!(matches!(c.validate(), Err(Error::Usage(_))));
    }
}
