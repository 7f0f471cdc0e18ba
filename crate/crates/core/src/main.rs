use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphcap::bipartite::{ConstraintSpec, McEvent, ModelParams};
use graphcap::capacity::GraphFormat;
use graphcap::harness::{self, Command, Emit, OutputSpec, RunConfig};
use graphcap::Result;

#[derive(Parser)]
#[command(
    name = "graphcap",
    version,
    about = "Random bipartite parity-check codes and fractional graph capacity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Seed for randomized commands; a fresh one is drawn and printed when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format: table, record (JSON) or csv.
    #[arg(long, global = true, default_value = "table")]
    emit: Emit,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run log (JSON lines). Defaults to ./runs.log.jsonl.
    #[arg(long, global = true, env = harness::LOG_ENV)]
    log: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample one graph from the ensemble and report its code metrics.
    CodesSample {
        #[command(flatten)]
        model: ModelArgs,
        /// Also store the biadjacency matrix.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Check a stored biadjacency matrix against distance and diversity targets.
    CodesVerify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0.125)]
        delta: f64,
        #[arg(long, default_value_t = 0.3)]
        div_gamma: f64,
        #[arg(long, default_value = "always")]
        constraint: String,
    },
    /// Rejection search for a graph meeting the distance, diversity and constraint targets.
    CodesSearch {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 2000)]
        max_attempts: u64,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of an event probability with a Wilson 95% interval.
    CodesMontecarlo {
        #[command(flatten)]
        model: ModelArgs,
        /// diversity, distance or constraint.
        #[arg(long, default_value = "constraint")]
        event: McEvent,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Lower and upper bounds on the gamma-fractional capacity.
    CapacityBounds {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        gamma: f64,
        /// Full capacity value; taken from the built-in registry when absent.
        #[arg(long)]
        theta_value: Option<f64>,
        /// Also compute certificates up to this order.
        #[arg(long)]
        rmax: Option<usize>,
    },
    /// Finite-order capacity certificates alpha(G(r, floor(gamma r)))^(1/r).
    CapacityCertify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        rmax: usize,
    },
    /// Exact maximum stable set of G(r, k).
    CapacityMis {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Difference budget; defaults to r (the strong power).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check alpha(G(r, d)) <= n^(r-d) alpha(G(d, d)).
    CapacityRecursion {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r: usize,
        /// Single d; every d in 1..=r when absent.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Re-run a stored run configuration (the `config` object of a log record).
    Replay {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 24)]
    n: usize,
    #[arg(long, default_value_t = 0.7)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    #[arg(long, default_value_t = 0.1)]
    theta: f64,
    #[arg(long, default_value_t = 0.1)]
    eta: f64,
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, default_value_t = 0.125)]
    delta: f64,
    /// Diversity index target.
    #[arg(long, default_value_t = 0.3)]
    div_gamma: f64,
    /// `always`, `hn`, a JSON spec, or a path to a file holding one.
    #[arg(long, default_value = "always")]
    constraint: String,
}

impl ModelArgs {
    fn params(&self) -> ModelParams {
        ModelParams {
            n: self.n,
            epsilon: self.epsilon,
            p: self.p,
            theta: self.theta,
            eta: self.eta,
            t: self.t,
            delta: self.delta,
            gamma: self.div_gamma,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list or DIMACS file.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "auto")]
    format: GraphFormat,
}

fn constraint(arg: &str) -> Result<ConstraintSpec> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        ConstraintSpec::parse(std::fs::read_to_string(path)?.trim())
    } else {
        ConstraintSpec::parse(arg)
    }
}

fn build(cli: Cli) -> Result<(RunConfig, PathBuf)> {
    let mut graph_out = None;
    let command = match cli.cmd {
        Cmd::Replay { config } => {
            let config: RunConfig = serde_json::from_str(&std::fs::read_to_string(config)?)?;
            let log = cli.log.unwrap_or_else(harness::default_log_path);
            return Ok((config, log));
        }
        Cmd::CodesSample {
            model,
            graph_out: g,
        } => {
            graph_out = g;
            Command::CodesSample {
                params: model.params(),
                constraint: constraint(&model.constraint)?,
            }
        }
        Cmd::CodesVerify {
            graph,
            delta,
            div_gamma,
            constraint: c,
        } => Command::CodesVerify {
            graph,
            delta,
            gamma: div_gamma,
            constraint: constraint(&c)?,
        },
        Cmd::CodesSearch {
            model,
            max_attempts,
            graph_out: g,
        } => {
            graph_out = g;
            Command::CodesSearch {
                params: model.params(),
                constraint: constraint(&model.constraint)?,
                max_attempts,
            }
        }
        Cmd::CodesMontecarlo {
            model,
            event,
            trials,
        } => Command::CodesMontecarlo {
            params: model.params(),
            constraint: constraint(&model.constraint)?,
            event,
            trials,
        },
        Cmd::CapacityBounds {
            graph,
            gamma,
            theta_value,
            rmax,
        } => Command::CapacityBounds {
            graph: graph.graph,
            format: graph.format,
            gamma,
            theta_value,
            rmax,
        },
        Cmd::CapacityCertify { graph, gamma, rmax } => Command::CapacityCertify {
            graph: graph.graph,
            format: graph.format,
            gamma,
            rmax,
        },
        Cmd::CapacityMis { graph, r, k } => Command::CapacityMis {
            graph: graph.graph,
            format: graph.format,
            r,
            k,
        },
        Cmd::CapacityRecursion { graph, r, d } => Command::CapacityRecursion {
            graph: graph.graph,
            format: graph.format,
            r,
            d,
        },
    };
    let seed = match cli.seed {
        Some(s) => s,
        None if command.is_randomized() => {
            let s = rand::random::<u64>();
            eprintln!("seed: {s}");
            s
        }
        None => 0,
    };
    let config = RunConfig {
        command,
        seed,
        output: OutputSpec {
            emit: cli.emit,
            out: cli.out,
            graph_out,
        },
    };
    Ok((config, cli.log.unwrap_or_else(harness::default_log_path)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(cli).and_then(|(config, log)| {
        let record = harness::run(&config, &log)?;
        harness::deliver(
            &record.outcome,
            &config.output,
            &mut std::io::stdout().lock(),
        )?;
        Ok(record.outcome.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
