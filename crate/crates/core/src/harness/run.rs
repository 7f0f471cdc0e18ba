use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{Command, Emit, OutputSpec, RunConfig};
use super::outcome::Outcome;
use crate::bipartite::verify::reverify;
use crate::bipartite::{
    check_constraint, contains_hn, monte_carlo_event, rejection_search, sample_bipartite,
    BipartiteGraph, CodeSummary, ModelParams, SatisfiedFlags,
};
use crate::capacity::{
    capacity_bounds, capacity_certificate, capacity_registry_lookup, maximum_stable_set,
    parse_graph_file, recursion_terms, restricted_power, ThetaSource,
};
use crate::error::{Error, Result};
use crate::exec::Backend;

/// Environment variable naming the run log.
pub const LOG_ENV: &str = "GRAPHCAP_LOG";
pub const DEFAULT_LOG: &str = "runs.log.jsonl";

/// Log path from the environment, or [`DEFAULT_LOG`] in the working
/// directory.
pub fn default_log_path() -> PathBuf {
    std::env::var_os(LOG_ENV).map_or_else(|| PathBuf::from(DEFAULT_LOG), PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub outcome: Outcome,
    pub wall_time_secs: f64,
    pub version: String,
    pub timestamp: String,
}

/// Validates `config` and runs its command. Errors carry the command name.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let name = config.command.name();
    config
        .validate()
        .and_then(|()| dispatch(config))
        .map_err(|e| e.context(name))
}

/// Executes `config`, stores any requested graph file, and appends the
/// record to `log`.
pub fn run(config: &RunConfig, log: &Path) -> Result<RunRecord> {
    let start = Instant::now();
    let outcome = execute(config)?;
    let wall_time_secs = start.elapsed().as_secs_f64();
    if let Some(path) = &config.output.graph_out {
        let graph = match &outcome {
            Outcome::Sample { graph, .. } => graph,
            Outcome::Search(r) => &r.graph,
            _ => {
                return Err(Error::Validation(
                    "--graph-out applies to codes-sample and codes-search".into(),
                )
                .context(config.command.name()))
            }
        };
        std::fs::write(path, graph.to_text())
            .map_err(|e| Error::from(e).context(config.command.name()))?;
    }
    let record = RunRecord {
        config: config.clone(),
        outcome,
        wall_time_secs,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
    };
    append_record(log, &record)?;
    Ok(record)
}

/// Appends one JSON line. The line goes out in a single `write_all` on an
/// append-mode handle, so concurrent writers never interleave inside a
/// record.
pub fn append_record(log: &Path, record: &RunRecord) -> Result<()> {
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    let mut file = OpenOptions::new().create(true).append(true).open(log)?;
    file.write_all(line.as_bytes())?;
    Ok(())
}

pub fn read_log(log: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(log)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::parse(i + 1, e.to_string())))
        .collect()
}

/// Formats `outcome` for display.
pub fn render(outcome: &Outcome, emit: Emit) -> Result<String> {
    match emit {
        Emit::Record => {
            let mut s = serde_json::to_string_pretty(outcome)?;
            s.push('\n');
            Ok(s)
        }
        Emit::Table => Ok(render_table(outcome)),
        Emit::Csv => render_csv(outcome),
    }
}

/// Writes the rendered outcome to `output.out`, or to `stdout` when unset.
pub fn deliver(outcome: &Outcome, output: &OutputSpec, stdout: &mut dyn Write) -> Result<()> {
    let text = render(outcome, output.emit)?;
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_table(outcome: &Outcome) -> String {
    let mut out = String::new();
    for (i, section) in outcome.sections().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let cells: Vec<Vec<String>> = section
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        if cells.len() == 1 {
            let width = section.header.iter().map(String::len).max().unwrap_or(0);
            for (key, value) in section.header.iter().zip(&cells[0]) {
                out.push_str(&format!("{key:<width$}  {value}\n"));
            }
            continue;
        }
        let widths: Vec<usize> = (0..section.header.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([section.header[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |row: &[String]| {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ") + "\n"
        };
        out.push_str(&line(&section.header));
        for row in &cells {
            out.push_str(&line(row));
        }
    }
    out
}

fn render_csv(outcome: &Outcome) -> Result<String> {
    let mut out = Vec::new();
    for (i, section) in outcome.sections().iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(&section.header).map_err(csv_error)?;
        for row in &section.rows {
            w.write_record(row.iter().map(|c| c.to_string()))
                .map_err(csv_error)?;
        }
        w.flush()?;
    }
    String::from_utf8(out).map_err(|e| Error::Validation(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let seed = config.seed;
    match &config.command {
        Command::CodesSample { params, constraint } => {
            constraint.check_applicable(params.n, params.m())?;
            let graph = sample_bipartite(params, seed)?;
            Ok(Outcome::Sample {
                seed,
                summary: CodeSummary::of(&graph)?,
                constraint_holds: check_constraint(&graph, constraint)?,
                graph,
            })
        }
        Command::CodesVerify {
            graph,
            delta,
            gamma,
            constraint,
        } => {
            let g = BipartiteGraph::parse_text(&std::fs::read_to_string(graph)?)?;
            let threshold = ModelParams {
                n: g.n_left(),
                delta: *delta,
                ..Default::default()
            }
            .distance_threshold();
            let summary = CodeSummary::of(&g)?;
            let reverification = reverify(&g, threshold, *gamma, contains_hn(constraint))?;
            let satisfied = SatisfiedFlags {
                distance: summary.min_distance.is_some_and(|d| d >= threshold),
                diversity: summary.diversity_index >= *gamma,
                constraint: check_constraint(&g, constraint)?,
                verified: reverification.min_distance == summary.min_distance
                    && reverification.diversity_index == summary.diversity_index,
            };
            Ok(Outcome::Verify {
                summary,
                distance_threshold: threshold,
                satisfied,
                reverification,
            })
        }
        Command::CodesSearch {
            params,
            constraint,
            max_attempts,
        } => rejection_search(params, constraint, seed, *max_attempts).map(Outcome::Search),
        Command::CodesMontecarlo {
            params,
            constraint,
            event,
            trials,
        } => monte_carlo_event(params, *event, constraint, *trials, seed).map(Outcome::MonteCarlo),
        Command::CapacityBounds {
            graph,
            format,
            gamma,
            theta_value,
            rmax,
        } => {
            let g = parse_graph_file(graph, *format)?;
            let (theta, source) = match theta_value {
                Some(v) => (*v, ThetaSource::UserSupplied),
                None => capacity_registry_lookup(&g).ok_or_else(|| {
                    Error::Provenance(
                        "the registry has no capacity value for this graph; supply one".into(),
                    )
                })?,
            };
            let mut report = capacity_bounds(&g, *gamma, theta, source)?;
            if let Some(rmax) = rmax {
                report.attach_certificates(capacity_certificate(&g, *gamma, *rmax)?);
            }
            Ok(Outcome::Bounds(report))
        }
        Command::CapacityCertify {
            graph,
            format,
            gamma,
            rmax,
        } => {
            let g = parse_graph_file(graph, *format)?;
            Ok(Outcome::Certify {
                gamma: *gamma,
                certificates: capacity_certificate(&g, *gamma, *rmax)?,
            })
        }
        Command::CapacityMis {
            graph,
            format,
            r,
            k,
        } => {
            let g = parse_graph_file(graph, *format)?;
            let k = k.unwrap_or(*r);
            let pg = restricted_power(&g, *r, k)?;
            let witness = maximum_stable_set(&pg)?;
            Ok(Outcome::Mis {
                r: *r,
                k,
                vertices: pg.vertex_count(),
                alpha: witness.len(),
                witness,
            })
        }
        Command::CapacityRecursion {
            graph,
            format,
            r,
            d,
        } => {
            let g = parse_graph_file(graph, *format)?;
            let ds = match d {
                Some(d) => vec![*d],
                None => (1..=*r).collect(),
            };
            let checks = ds
                .into_iter()
                .map(|d| recursion_terms(&g, *r, d, Backend::default()))
                .collect::<Result<Vec<_>>>()?;
            let all_hold = checks.iter().all(|c| c.holds);
            Ok(Outcome::Recursion { checks, all_hold })
        }
    }
}
