//! Seeded experiment runs with a CSV row per trial and a JSON summary.
//!
//! Trial `i` draws from `rng_from_seed(per_trial_seed(master_seed, i))`, so
//! rows do not depend on how trials are scheduled. Every CSV starts with
//! `trial_index,per_trial_seed,status`; `status` is `ok` or
//! `failed:<error kind>`, and a failed row leaves the remaining cells empty.

mod config;
mod kinds;
mod trials;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

pub use config::ExperimentConfig;
pub use kinds::ExperimentKind;
pub use trials::{generic_positions, Cell};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::randmodels::{conjugate_mu, per_trial_seed};
use trials::Plan;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub per_trial_seed: u64,
    pub outcome: std::result::Result<Vec<Cell>, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRun {
    pub config: ExperimentConfig,
    /// Sorted by `trial_index`.
    pub records: Vec<TrialRecord>,
}

/// Runs every trial of `config`. Invalid configs fail up front; errors inside
/// a trial only mark that trial as failed.
pub fn run_experiment(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentRun> {
    let plan = Plan::new(config)?;
    let indices: Vec<u64> = (0..config.trials as u64).collect();
    let mut records = exec.map(&indices, |&i| {
        let seed = per_trial_seed(config.master_seed, i);
        TrialRecord { trial_index: i, per_trial_seed: seed, outcome: plan.run_trial(seed) }
    });
    records.sort_by_key(|r| r.trial_index);
    Ok(ExperimentRun { config: config.clone(), records })
}

impl ExperimentRun {
    pub fn header(&self) -> Vec<&'static str> {
        let mut cols = vec!["trial_index", "per_trial_seed", "status"];
        cols.extend(self.config.experiment.columns());
        cols
    }

    pub fn csv(&self) -> String {
        let width = self.config.experiment.columns().len();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("writing to memory");
        for r in &self.records {
            let mut cells = vec![r.trial_index.to_string(), r.per_trial_seed.to_string()];
            match &r.outcome {
                Ok(row) => {
                    cells.push("ok".into());
                    cells.extend(row.iter().map(Cell::to_string));
                }
                Err(e) => {
                    cells.push(format!("failed:{}", e.kind()));
                    cells.extend(std::iter::repeat_n(String::new(), width));
                }
            }
            w.write_record(&cells).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("cells are utf-8")
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.outcome.is_err()).count()
    }

    fn ok_rows(&self) -> Vec<&[Cell]> {
        self.records.iter().filter_map(|r| r.outcome.as_deref().ok()).collect()
    }

    fn column(&self, name: &str) -> Vec<Cell> {
        let idx = self.config.experiment.columns().iter().position(|c| *c == name).expect("known column");
        self.ok_rows().iter().map(|row| row[idx].clone()).collect()
    }

    fn floats(&self, name: &str) -> Vec<f64> {
        self.column(name).iter().filter_map(Cell::as_f64).collect()
    }

    fn bool_fraction(&self, name: &str) -> Option<f64> {
        let col = self.column(name);
        let bools: Vec<bool> = col.iter().filter_map(|c| if let Cell::Bool(b) = c { Some(*b) } else { None }).collect();
        (!bools.is_empty()).then(|| bools.iter().filter(|&&b| b).count() as f64 / bools.len() as f64)
    }

    /// Aggregates over the successful trials.
    pub fn stats(&self) -> Value {
        let cfg = &self.config;
        match cfg.experiment {
            ExperimentKind::RatioDesk => {
                let ratios = self.floats("ratio");
                json!({
                    "trials_with_core": ratios.len(),
                    "median_ratio": median(&ratios),
                    "mean_ratio": mean(&ratios),
                    "min_ratio": ratios.iter().copied().reduce(f64::min),
                })
            }
            ExperimentKind::Toy17 => json!({
                "fraction_reconstructible": self.bool_fraction("reconstructible"),
                "fraction_below_threshold": self.bool_fraction("below_threshold"),
                "max_second_eigenvalue": self.floats("second_eigenvalue").into_iter().reduce(f64::max),
            }),
            ExperimentKind::EventdCensus => {
                let f = self.floats("fraction");
                json!({
                    "median_fraction": median(&f),
                    "mean_fraction": mean(&f),
                    "any_truncated": self.bool_fraction("truncated").is_some_and(|x| x > 0.0),
                })
            }
            ExperimentKind::PathExtension => {
                let freq = self.bool_fraction("extends");
                let bound = 1.0 / (cfg.n as f64).sqrt();
                let s = cfg.params.get("s").and_then(|s| s.parse::<f64>().ok()).unwrap_or(2.0);
                json!({
                    "frequency": freq,
                    "bound": bound,
                    "within_bound": freq.map(|f| f <= bound),
                    "s_within_small_regime": s <= (cfg.n as f64).ln() / 50.0,
                })
            }
            ExperimentKind::ValidateModels => self.validate_stats(),
            ExperimentKind::ExpansionAudit => {
                let a = self.floats("alpha_value");
                json!({ "min_alpha": a.iter().copied().reduce(f64::min), "median_alpha": median(&a) })
            }
            ExperimentKind::PruneStats => {
                let r = self.floats("kernel_ratio");
                json!({ "median_kernel_ratio": median(&r), "mean_kernel_ratio": mean(&r) })
            }
        }
    }

    fn validate_stats(&self) -> Value {
        let structure = self.bool_fraction("structure_ok");
        let prefix_violations = self.column("prefix_violation").iter().filter(|c| **c != Cell::Empty).count();
        let count: f64 = self.floats("path_count").iter().sum();
        let sum: f64 = self.floats("path_length_sum").iter().sum();
        let mu = conjugate_mu(self.config.lambda).ok();
        let (expected, z) = match mu {
            Some(mu) if count > 0.0 => {
                let expected = 1.0 / (1.0 - mu);
                let sd = (mu / (1.0 - mu).powi(2) / count).sqrt();
                (Some(expected), Some((sum / count - expected) / sd))
            }
            _ => (None, None),
        };
        let pairs = self.column("pairing_33");
        let triple = pairs.iter().filter(|c| **c == Cell::Text("triple")).count() as f64;
        let loops = pairs.iter().filter(|c| **c == Cell::Text("loops")).count() as f64;
        let total = triple + loops;
        let chi_square = (total > 0.0).then(|| {
            let (et, el) = (total * 6.0 / 15.0, total * 9.0 / 15.0);
            (triple - et).powi(2) / et + (loops - el).powi(2) / el
        });
        json!({
            "fraction_structure_ok": structure,
            "prefix_violations": prefix_violations,
            "path_mean": (count > 0.0).then(|| sum / count),
            "path_mean_expected": expected,
            "path_mean_z": z,
            "pairing_triple": triple,
            "pairing_loops": loops,
            "pairing_chi_square": chi_square,
        })
    }

    pub fn summary(&self, version: &str, wall_clock_seconds: f64) -> Value {
        let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
        for r in &self.records {
            if let Err(e) = &r.outcome {
                *kinds.entry(e.kind()).or_default() += 1;
            }
        }
        json!({
            "config": self.config.to_json_value(),
            "version": version,
            "wall_clock_seconds": wall_clock_seconds,
            "trials": self.records.len(),
            "failures": self.failures(),
            "failure_kinds": kinds,
            "stats": self.stats(),
        })
    }
}

/// `out.csv` gets its summary in `out.summary.json`.
pub fn summary_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("summary.json")
}

/// Writes the CSV to `config.output_path` and the summary next to it.
pub fn write_outputs(run: &ExperimentRun, version: &str, wall_clock_seconds: f64) -> Result<(PathBuf, PathBuf)> {
    let csv_path = PathBuf::from(&run.config.output_path);
    if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    crate::io::write_file(&csv_path, &run.csv())?;
    let sp = summary_path(&csv_path);
    let summary = serde_json::to_string_pretty(&run.summary(version, wall_clock_seconds)).expect("json values serialize");
    crate::io::write_file(&sp, &summary)?;
    Ok((csv_path, sp))
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Midpoint of the two middle values for even lengths.
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 })
}
