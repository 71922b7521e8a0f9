use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{ExperimentConfig, ExperimentKind};
use super::localization::{run_localization, LocalizationRow};
use super::profile::{run_profile_config, ProfileRow};
use super::recovery::{run_topk_experiment, SummaryRow};
use crate::error::Result;

/// Rows produced by one configured experiment.
#[derive(Clone, Debug, PartialEq)]
pub enum ExperimentOutput {
    Summary(Vec<SummaryRow>),
    Localization(Vec<LocalizationRow>),
    Profile(Vec<ProfileRow>),
}

impl ExperimentOutput {
    pub fn len(&self) -> usize {
        match self {
            ExperimentOutput::Summary(r) => r.len(),
            ExperimentOutput::Localization(r) => r.len(),
            ExperimentOutput::Profile(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// CSV with a header row named after the row struct's fields; absent
    /// optional values are empty cells.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            ExperimentOutput::Summary(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
            ExperimentOutput::Localization(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
            ExperimentOutput::Profile(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
        }
        w.flush()?;
        Ok(())
    }

    fn rows_json(&self) -> Result<serde_json::Value> {
        Ok(match self {
            ExperimentOutput::Summary(r) => serde_json::to_value(r)?,
            ExperimentOutput::Localization(r) => serde_json::to_value(r)?,
            ExperimentOutput::Profile(r) => serde_json::to_value(r)?,
        })
    }
}

/// Dispatch on `cfg.kind`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    Ok(match cfg.kind {
        ExperimentKind::Topk => ExperimentOutput::Summary(run_topk_experiment(cfg)?),
        ExperimentKind::Localization => ExperimentOutput::Localization(run_localization(cfg)?),
        ExperimentKind::Figure1 => ExperimentOutput::Profile(run_profile_config(cfg)?),
    })
}

/// Provenance written next to the rows in the JSON mirror.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMeta {
    pub experiment: String,
    pub model: String,
    pub config: ExperimentConfig,
    pub seed_root: u64,
    pub git_describe: String,
    pub crate_version: &'static str,
    pub timestamp: String,
    pub wall_time_s: Option<f64>,
}

impl RunMeta {
    pub fn new(cfg: &ExperimentConfig, git_describe: &str, timestamp: &str) -> Self {
        RunMeta {
            experiment: cfg.name.clone(),
            model: cfg.model_label().to_string(),
            config: cfg.clone(),
            seed_root: cfg.seed_root,
            git_describe: git_describe.to_string(),
            crate_version: env!("CARGO_PKG_VERSION"),
            timestamp: timestamp.to_string(),
            wall_time_s: None,
        }
    }
}

/// `<experiment>_<model>_<timestamp>`.
pub fn output_stem(cfg: &ExperimentConfig, timestamp: &str) -> String {
    format!("{}_{}_{}", cfg.name, cfg.model_label(), timestamp)
}

/// Write `<stem>.csv` and its `<stem>.json` mirror into `dir`.
pub fn write_outputs(dir: &Path, out: &ExperimentOutput, meta: &RunMeta) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let stem = output_stem(&meta.config, &meta.timestamp);
    let csv_path = dir.join(format!("{stem}.csv"));
    out.write_csv(BufWriter::new(File::create(&csv_path)?))?;

    let json_path = dir.join(format!("{stem}.json"));
    let doc = serde_json::json!({ "meta": meta, "rows": out.rows_json()? });
    let mut f = BufWriter::new(File::create(&json_path)?);
    serde_json::to_writer_pretty(&mut f, &doc)?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok((csv_path, json_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke() -> ExperimentConfig {
        ExperimentConfig::from_toml(
            "name = \"smoke\"\nk = 2\nn_grid = [30, 40]\ngraphs_per_point = 2\nnoise_draws_per_graph = 2\n[model]\ntype = \"er\"\np = 0.2\n",
        )
        .unwrap()
    }

    #[test]
    fn csv_header_and_empty_options() {
        let out = run_experiment(&smoke()).unwrap();
        let mut buf = Vec::new();
        out.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("x_value,n,alpha,beta,centrality,trials,excluded,mean_half_hamming"));
        assert!(header.contains("jaccard_evec"));
        let first = lines.next().unwrap();
        // jaccard_evec and its SE are absent for a degree-only run.
        assert!(first.contains(",,"));
        assert_eq!(lines.count(), 1);
    }

    #[test]
    fn files_are_reproducible() {
        let dir = std::env::temp_dir().join(format!("topk-noise-out-{}", std::process::id()));
        let cfg = smoke();
        let meta = RunMeta::new(&cfg, "v-test", "20260101T000000Z");
        let a = run_experiment(&cfg).unwrap();
        let (c1, j1) = write_outputs(&dir, &a, &meta).unwrap();
        let first = (std::fs::read(&c1).unwrap(), std::fs::read(&j1).unwrap());
        let b = run_experiment(&cfg).unwrap();
        write_outputs(&dir, &b, &meta).unwrap();
        assert_eq!(first.0, std::fs::read(&c1).unwrap());
        assert_eq!(first.1, std::fs::read(&j1).unwrap());
        assert!(c1.file_name().unwrap().to_str().unwrap() == "smoke_er_20260101T000000Z.csv");
        let v: serde_json::Value = serde_json::from_slice(&first.1).unwrap();
        assert_eq!(v["meta"]["seed_root"], 0);
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
