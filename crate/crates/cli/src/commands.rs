use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use topk_noise::bounds::{bound_report, BoundConfig};
use topk_noise::centrality::{principal_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};
use topk_noise::experiments::{run_experiment, write_outputs, ExperimentConfig, RunMeta};
use topk_noise::{
    apply_noise, degree_scores, generate_er, generate_pa, generate_small_world, read_edge_list,
    top_k, write_edge_list, Error, Graph, NoiseParams, PaParams, Result, ScoreVector,
};

use crate::args::{Cli, Command, Format, GenerateModel, KindArg};

const GIT_DESCRIBE: &str = env!("TOPK_GIT_DESCRIBE");

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    let seed = g.seed.unwrap_or(0);
    match &cli.command {
        Command::Generate { model } => {
            let graph = match *model {
                GenerateModel::Er { n, p } => generate_er(n, p, seed)?,
                GenerateModel::Pa { n, m, b } => generate_pa(PaParams::new(n, m, b)?, seed)?,
                GenerateModel::Sw { n, k_ring, rewire_p } => generate_small_world(n, k_ring, rewire_p, seed)?,
            };
            let out = require_out(g.out.as_deref())?;
            write_graph(&graph, out)?;
            summary(g.quiet, || graph_line(&graph, out));
        }
        Command::Perturb { input, alpha, beta } => {
            let params = NoiseParams::new(*alpha, *beta)?;
            let latent = load(input)?;
            let out = require_out(g.out.as_deref())?;
            let observed = apply_noise(&latent, params, seed);
            write_graph(&observed, out)?;
            summary(g.quiet, || {
                format!("{} (latent had {} edges)", graph_line(&observed, out), latent.edge_count())
            });
        }
        Command::Centrality { input, kind, k } => {
            let graph = load(input)?;
            let (scores, lambda1) = match kind {
                KindArg::Degree => (degree_scores(&graph), None),
                KindArg::Eigenvector => {
                    let p = principal_eigenpair(&graph, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
                    if !p.converged {
                        return Err(Error::Invariant(format!(
                            "power iteration did not converge in {} iterations",
                            p.iterations
                        )));
                    }
                    (p.x, Some(p.lambda1))
                }
            };
            let set = top_k(&scores, *k, seed)?;
            let text = centrality_text(&scores, &set, lambda1, g.format)?;
            emit(g.out.as_deref(), &text)?;
            if g.out.is_some() {
                summary(g.quiet, || {
                    format!(
                        "top-{k} by {kind:?}: {:?}{}",
                        set.members(),
                        if set.tie_broken() { " (ties broken at random)" } else { "" }
                    )
                });
            }
        }
        Command::Bounds {
            input,
            k,
            alpha,
            beta,
            delta,
            c1,
            c_of_n,
            i_star,
            pa_offset,
        } => {
            if g.format == Format::Csv && format_given() {
                return Err(Error::InvalidParameter {
                    name: "format",
                    reason: "bound reports are JSON only".into(),
                });
            }
            let graph = load(input)?;
            let cfg = BoundConfig {
                k: *k,
                params: NoiseParams::new(*alpha, *beta)?,
                delta: *delta,
                c1: *c1,
                c_of_n: *c_of_n,
                i_star: *i_star,
                pa_offset: *pa_offset,
            };
            let report = bound_report(&graph, &cfg)?;
            emit(g.out.as_deref(), &pretty(&report)?)?;
            if g.out.is_some() {
                summary(g.quiet, || {
                    let s = &report.separation;
                    format!(
                        "regime: {}\nboundary gap {} vs threshold {:.4}; bulk gap {} vs {:.4}; one-gap threshold {:.4}; snr {:.4}",
                        report.regime,
                        s.delta_bdry,
                        s.boundary_threshold,
                        s.delta_bulk,
                        s.bulk_threshold,
                        s.one_gap_threshold,
                        s.snr
                    )
                });
            }
        }
        Command::Experiment {
            config,
            stamp,
            record_timing,
        } => {
            let text = std::fs::read_to_string(config)?;
            let mut cfg = ExperimentConfig::from_toml(&text)?;
            if let Some(s) = g.seed {
                cfg.seed_root = s;
            }
            let stamp = match stamp {
                Some(s) => s.clone(),
                None => SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs().to_string())
                    .unwrap_or_else(|_| "0".into()),
            };
            let started = Instant::now();
            let out = run_experiment(&cfg)?;
            let elapsed = started.elapsed().as_secs_f64();
            let mut meta = RunMeta::new(&cfg, GIT_DESCRIBE, &stamp);
            if *record_timing {
                meta.wall_time_s = Some(elapsed);
            }
            let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("results"));
            let (csv, json) = write_outputs(&dir, &out, &meta)?;
            summary(g.quiet, || {
                format!(
                    "{}: {} rows in {elapsed:.2} s\n  {}\n  {}",
                    cfg.name,
                    out.len(),
                    csv.display(),
                    json.display()
                )
            });
        }
    }
    Ok(())
}

/// True when `--format` appears on the command line.
fn format_given() -> bool {
    std::env::args().any(|a| a == "--format" || a.starts_with("--format="))
}

fn summary(quiet: bool, line: impl FnOnce() -> String) {
    if !quiet {
        println!("{}", line());
    }
}

fn require_out(out: Option<&Path>) -> Result<&Path> {
    out.ok_or_else(|| Error::InvalidParameter {
        name: "out",
        reason: "an output path is required".into(),
    })
}

fn load(path: &Path) -> Result<Graph> {
    read_edge_list(BufReader::new(File::open(path)?))
}

fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_edge_list(g, &mut w)?;
    w.flush()?;
    Ok(())
}

fn graph_line(g: &Graph, path: &Path) -> String {
    format!(
        "wrote {}: n = {}, |E| = {}, mean degree = {:.4}",
        path.display(),
        g.n(),
        g.edge_count(),
        g.mean_degree()
    )
}

/// Write to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct CentralityJson<'a> {
    kind: topk_noise::ScoreKind,
    k: usize,
    members: &'a [usize],
    tie_broken: bool,
    lambda1: Option<f64>,
    scores: &'a [f64],
}

fn centrality_text(
    scores: &ScoreVector,
    set: &topk_noise::TopKSet,
    lambda1: Option<f64>,
    format: Format,
) -> Result<String> {
    match format {
        Format::Json => pretty(&CentralityJson {
            kind: scores.kind(),
            k: set.k(),
            members: set.members(),
            tie_broken: set.tie_broken(),
            lambda1,
            scores: scores.scores(),
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["node", "score", "in_topk"])?;
            for (i, s) in scores.scores().iter().enumerate() {
                w.write_record([i.to_string(), s.to_string(), u8::from(set.contains(i)).to_string()])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}
