//! TOML experiment configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PaParams;
use crate::noise::NoiseParams;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    #[default]
    Topk,
    Localization,
    Figure1,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Topk => "topk",
            ExperimentKind::Localization => "localization",
            ExperimentKind::Figure1 => "figure1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Er {
        p: f64,
    },
    Pa {
        m: usize,
        #[serde(default = "unit_offset")]
        b: f64,
    },
    Sw {
        k_ring: usize,
        rewire_p: f64,
    },
}

fn unit_offset() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn label(&self) -> &'static str {
        match self {
            ModelSpec::Er { .. } => "er",
            ModelSpec::Pa { .. } => "pa",
            ModelSpec::Sw { .. } => "sw",
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let bad = |message: String| {
            Err(Error::Config {
                field: "model".into(),
                message,
            })
        };
        match *self {
            ModelSpec::Er { p } if !(0.0..=1.0).contains(&p) => bad(format!("p = {p} is not a probability")),
            ModelSpec::Pa { m, b } => match PaParams::new(n, m, b) {
                Ok(_) => Ok(()),
                Err(e) => bad(format!("at n = {n}: {e}")),
            },
            ModelSpec::Sw { k_ring, rewire_p } => {
                if k_ring == 0 || k_ring % 2 == 1 || k_ring >= n {
                    bad(format!("k_ring = {k_ring} must be even, positive and below n = {n}"))
                } else if !(0.0..=1.0).contains(&rewire_p) {
                    bad(format!("rewire_p = {rewire_p} is not a probability"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// A named rate schedule in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateLaw {
    /// `1 / (2 ln n)`.
    HalfInvLog,
    /// `n^(-b/(2+b)) (ln n)^(-2)`, with `b` taken from a PA model.
    PaConsistency,
}

/// `scale * n^(-power)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerLaw {
    pub power: f64,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

/// A noise rate: a constant, a named law or a power law in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rate {
    Value(f64),
    Law(RateLaw),
    Power(PowerLaw),
}

impl Rate {
    pub fn at(&self, n: usize, model: Option<&ModelSpec>) -> Result<f64> {
        let nf = n as f64;
        match *self {
            Rate::Value(v) => Ok(v),
            Rate::Law(RateLaw::HalfInvLog) => Ok(1.0 / (2.0 * nf.ln())),
            Rate::Law(RateLaw::PaConsistency) => match model {
                Some(&ModelSpec::Pa { b, .. }) => Ok(nf.powf(-b / (2.0 + b)) / nf.ln().powi(2)),
                _ => Err(Error::Config {
                    field: "noise".into(),
                    message: "pa_consistency needs a PA model".into(),
                }),
            },
            Rate::Power(PowerLaw { power, scale }) => Ok(scale * nf.powf(-power)),
        }
    }
}

/// Either a pair of rates or an explicit list of `[alpha, beta]` levels.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub alpha: Option<Rate>,
    pub beta: Option<Rate>,
    pub levels: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralitySpec {
    #[default]
    Degree,
    Eigenvector,
    Both,
}

impl CentralitySpec {
    pub fn uses_degree(self) -> bool {
        self != CentralitySpec::Eigenvector
    }

    pub fn uses_eigenvector(self) -> bool {
        self != CentralitySpec::Degree
    }
}

/// One Monte Carlo study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub kind: ExperimentKind,
    pub model: Option<ModelSpec>,
    #[serde(default = "default_k")]
    pub k: usize,
    pub n_grid: Vec<usize>,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default = "default_reps")]
    pub graphs_per_point: usize,
    #[serde(default = "default_reps")]
    pub noise_draws_per_graph: usize,
    #[serde(default)]
    pub seed_root: u64,
    #[serde(default)]
    pub centrality: CentralitySpec,
    /// Growth function value for the slack term; `max(1, ln ln n)` if absent.
    pub c_of_n: Option<f64>,
    /// Target mean degree for degree-profile tables.
    pub mean_degree: Option<usize>,
}

fn default_k() -> usize {
    5
}

fn default_reps() -> usize {
    100
}

/// A resolved grid cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    pub n: usize,
    pub params: NoiseParams,
    /// Plotting coordinate: `n` when the size varies, otherwise `alpha`.
    pub x_value: f64,
}

fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl ExperimentConfig {
    /// Parse and validate TOML text.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            Error::Parse {
                line,
                message: e.message().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn model_label(&self) -> &'static str {
        self.model.as_ref().map_or("mixed", ModelSpec::label)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(config_err("name", "must be non-empty and use only [A-Za-z0-9_-]"));
        }
        if self.n_grid.is_empty() {
            return Err(config_err("n_grid", "must not be empty"));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(config_err("n_grid", "must be strictly increasing"));
        }
        if self.graphs_per_point == 0 {
            return Err(config_err("graphs_per_point", "must be at least 1"));
        }
        if self.noise_draws_per_graph == 0 {
            return Err(config_err("noise_draws_per_graph", "must be at least 1"));
        }
        if let Some(c) = self.c_of_n {
            if !(c > 0.0) || !c.is_finite() {
                return Err(config_err("c_of_n", format!("must be positive (got {c})")));
            }
        }
        match self.kind {
            ExperimentKind::Topk => {
                if self.model.is_none() {
                    return Err(config_err("model", "required for topk experiments"));
                }
                if self.k == 0 {
                    return Err(config_err("k", "must be at least 1"));
                }
            }
            ExperimentKind::Localization => match self.model {
                Some(ModelSpec::Pa { m: 1, .. }) => {}
                _ => return Err(config_err("model", "localization needs a PA model with m = 1")),
            },
            ExperimentKind::Figure1 => {
                let md = self
                    .mean_degree
                    .ok_or_else(|| config_err("mean_degree", "required for figure1"))?;
                if md < 2 {
                    return Err(config_err("mean_degree", "must be at least 2"));
                }
                if let Some(&n) = self.n_grid.iter().find(|&&n| n <= md) {
                    return Err(config_err("mean_degree", format!("must be below n = {n}")));
                }
            }
        }
        for &n in &self.n_grid {
            if n < 3 {
                return Err(config_err("n_grid", format!("n = {n} is below the minimum of 3")));
            }
            if self.kind == ExperimentKind::Topk && self.k >= n {
                return Err(config_err("k", format!("must be below n = {n}")));
            }
            if let Some(m) = &self.model {
                m.check(n)?;
            }
        }
        self.grid().map(|_| ())
    }

    fn levels_at(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        let spec = &self.noise;
        if let Some(levels) = &spec.levels {
            if spec.alpha.is_some() || spec.beta.is_some() {
                return Err(config_err("noise", "give either levels or alpha/beta, not both"));
            }
            if levels.is_empty() {
                return Err(config_err("noise.levels", "must not be empty"));
            }
            return Ok(levels.iter().map(|l| (l[0], l[1])).collect());
        }
        let model = self.model.as_ref();
        let alpha = spec.alpha.map_or(Ok(0.0), |r| r.at(n, model))?;
        let beta = spec.beta.map_or(Ok(0.0), |r| r.at(n, model))?;
        Ok(vec![(alpha, beta)])
    }

    /// Grid cells in output order: `n` outer, noise level inner.
    pub fn grid(&self) -> Result<Vec<GridPoint>> {
        let mut out = Vec::new();
        for &n in &self.n_grid {
            let levels = self.levels_at(n)?;
            let by_alpha = self.n_grid.len() == 1 && levels.len() > 1;
            for (alpha, beta) in levels {
                let params = NoiseParams::new(alpha, beta)
                    .map_err(|e| config_err("noise", format!("at n = {n}: {e}")))?;
                out.push(GridPoint {
                    index: out.len(),
                    n,
                    params,
                    x_value: if by_alpha { alpha } else { n as f64 },
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SETTING2: &str = r#"
name = "er_setting2"
k = 5
n_grid = [1000]
graphs_per_point = 10
noise_draws_per_graph = 10
seed_root = 7

[model]
type = "er"
p = 0.25

[noise]
levels = [[0.01, 0.05], [0.02, 0.05], [0.03, 0.05], [0.04, 0.05], [0.05, 0.05]]
"#;

    #[test]
    fn parses_alpha_grid() {
        let cfg = ExperimentConfig::from_toml(SETTING2).unwrap();
        let g = cfg.grid().unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[2].x_value, 0.03);
        assert_eq!(g[4].params.beta, 0.05);
        assert_eq!(cfg.model_label(), "er");
    }

    #[test]
    fn laws() {
        let text = r#"
name = "pa3"
n_grid = [300, 1500]
[model]
type = "pa"
m = 5
[noise]
alpha = "pa_consistency"
beta = 0.05
"#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        let g = cfg.grid().unwrap();
        let n = 1500f64;
        assert!((g[1].params.alpha - n.powf(-1.0 / 3.0) / n.ln().powi(2)).abs() < 1e-15);
        assert_eq!(g[1].x_value, 1500.0);

        let text = r#"
name = "power"
n_grid = [1000]
[model]
type = "er"
p = 0.1
[noise]
alpha = { power = 1.6 }
beta = "half_inv_log"
"#;
        let g = ExperimentConfig::from_toml(text).unwrap().grid().unwrap();
        assert!((g[0].params.alpha - 1000f64.powf(-1.6)).abs() < 1e-18);
        assert!((g[0].params.beta - 1.0 / (2.0 * 1000f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn schema_errors_name_line_or_field() {
        let e = ExperimentConfig::from_toml("name = \"x\"\nn_grid = [10]\nbogus = 1\n").unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
        let e = ExperimentConfig::from_toml(
            "name = \"x\"\nn_grid = [20, 10]\n[model]\ntype = \"er\"\np = 0.1\n",
        )
        .unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "n_grid"));
        let e = ExperimentConfig::from_toml("name = \"x\"\nn_grid = [20]\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "model"));
        let e = ExperimentConfig::from_toml(
            "name = \"x\"\nn_grid = [20]\n[model]\ntype = \"er\"\np = 0.1\n[noise]\nalpha = 1.5\n",
        )
        .unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "noise"));
        let e = ExperimentConfig::from_toml(
            "name = \"x\"\nn_grid = [20]\n[model]\ntype = \"er\"\np = 0.1\nq = 2\n",
        )
        .unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = ExperimentConfig::from_toml(
            "name = \"x\"\nkind = \"localization\"\nn_grid = [20]\n[model]\ntype = \"pa\"\nm = 2\n",
        )
        .unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "model"));
    }

    #[test]
    fn defaults() {
        let cfg = ExperimentConfig::from_toml(
            "name = \"d\"\nn_grid = [50]\n[model]\ntype = \"sw\"\nk_ring = 4\nrewire_p = 0.1\n",
        )
        .unwrap();
        assert_eq!(cfg.k, 5);
        assert_eq!(cfg.graphs_per_point, 100);
        assert_eq!(cfg.noise_draws_per_graph, 100);
        assert_eq!(cfg.grid().unwrap()[0].params, NoiseParams::NOISELESS);
    }
}
