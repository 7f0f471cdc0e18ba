use std::path::PathBuf;
use std::process::Command as Process;

use graphcap::bipartite::{
    code_from_graph, diversity_index, BipartiteGraph, CodeSummary, ConstraintSpec, McEvent,
    ModelParams,
};
use graphcap::capacity::{parse_graph_file, GraphFormat, SimpleGraph};
use graphcap::harness::{
    execute, read_log, render, run, Command, Emit, Outcome, OutputSpec, RunConfig,
};
use graphcap::Error;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn config(command: Command, seed: u64) -> RunConfig {
    RunConfig {
        command,
        seed,
        output: OutputSpec::default(),
    }
}

fn c5_bounds() -> RunConfig {
    config(
        Command::CapacityBounds {
            graph: data("c5.edgelist"),
            format: GraphFormat::Auto,
            gamma: 0.5,
            theta_value: None,
            rmax: Some(2),
        },
        0,
    )
}

fn search(seed: u64) -> RunConfig {
    config(
        Command::CodesSearch {
            params: ModelParams::default(),
            constraint: ConstraintSpec::Hn,
            max_attempts: 2000,
        },
        seed,
    )
}

#[test]
fn graph_file_examples() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let c5 = parse_graph_file(
        &write("c5.txt", "5\n0 1\n1 2\n2 3\n3 4\n4 0\n"),
        GraphFormat::Auto,
    )
    .unwrap();
    assert_eq!(c5, SimpleGraph::cycle(5).unwrap());
    let k3 = parse_graph_file(
        &write("k3.col", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"),
        GraphFormat::Auto,
    )
    .unwrap();
    assert_eq!(k3, SimpleGraph::complete(3).unwrap());
    let looped = parse_graph_file(
        &write("loop.col", "p edge 2 1\ne 1 1\n"),
        GraphFormat::Dimacs,
    );
    assert!(matches!(looped, Err(Error::Validation(_))));
    assert_eq!(
        parse_graph_file(&data("p4.dimacs"), GraphFormat::Auto).unwrap(),
        SimpleGraph::path(4).unwrap()
    );
}

#[test]
fn record_output_round_trips() {
    for cfg in [c5_bounds(), search(3)] {
        let outcome = execute(&cfg).unwrap();
        let text = render(&outcome, Emit::Record).unwrap();
        let back: Outcome = serde_json::from_str(&text).unwrap();
        assert_eq!(back, outcome);
    }
}

#[test]
fn identical_configs_give_identical_payloads() {
    let mc = config(
        Command::CodesMontecarlo {
            params: ModelParams {
                n: 16,
                p: 0.5,
                ..Default::default()
            },
            constraint: ConstraintSpec::Hn,
            event: McEvent::Constraint,
            trials: 2000,
        },
        77,
    );
    for cfg in [search(5), mc, c5_bounds()] {
        let a = serde_json::to_string(&execute(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&execute(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn log_holds_one_record_per_run_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("runs.jsonl");
    let configs = [search(1), c5_bounds(), search(2)];
    for cfg in &configs {
        run(cfg, &log).unwrap();
    }
    let records = read_log(&log).unwrap();
    assert_eq!(records.len(), 3);
    for (rec, cfg) in records.iter().zip(&configs) {
        assert_eq!(&rec.config, cfg);
        assert_eq!(rec.outcome, execute(cfg).unwrap());
    }
    // a stored config replays to the same payload
    let replayed: RunConfig =
        serde_json::from_str(&serde_json::to_string(&records[0].config).unwrap()).unwrap();
    assert_eq!(execute(&replayed).unwrap(), records[0].outcome);
}

#[test]
fn always_constraint_estimate_is_one() {
    let cfg = config(
        Command::CodesMontecarlo {
            params: ModelParams {
                n: 12,
                ..Default::default()
            },
            constraint: ConstraintSpec::Always,
            event: McEvent::Constraint,
            trials: 500,
        },
        9,
    );
    let Outcome::MonteCarlo(e) = execute(&cfg).unwrap() else {
        panic!()
    };
    assert_eq!(e.estimate, 1.0);
}

#[test]
fn verify_matches_direct_computation() {
    let dir = tempfile::tempdir().unwrap();
    let stored = dir.path().join("g.txt");
    let mut cfg = search(4);
    cfg.output.graph_out = Some(stored.clone());
    run(&cfg, &dir.path().join("log.jsonl")).unwrap();

    let g = BipartiteGraph::parse_text(&std::fs::read_to_string(&stored).unwrap()).unwrap();
    let verify = config(
        Command::CodesVerify {
            graph: stored,
            delta: 0.125,
            gamma: 0.3,
            constraint: ConstraintSpec::Hn,
        },
        0,
    );
    let Outcome::Verify {
        summary,
        satisfied,
        distance_threshold,
        ..
    } = execute(&verify).unwrap()
    else {
        panic!()
    };
    assert_eq!(summary, CodeSummary::of(&g).unwrap());
    assert_eq!(
        summary.min_distance,
        Some(code_from_graph(&g).min_distance().unwrap())
    );
    assert_eq!(summary.diversity_index, diversity_index(&g).unwrap());
    assert_eq!(distance_threshold, 4);
    assert!(satisfied.all());
}

#[test]
fn errors_carry_the_command_name() {
    let cfg = config(
        Command::CapacityBounds {
            graph: data("c7.edgelist"),
            format: GraphFormat::Auto,
            gamma: 0.5,
            theta_value: None,
            rmax: None,
        },
        0,
    );
    let err = execute(&cfg).unwrap_err();
    assert!(err.to_string().starts_with("capacity-bounds:"), "{err}");
    assert_eq!(err.exit_code(), 2);
    let cap = config(
        Command::CapacityMis {
            graph: data("c7.edgelist"),
            format: GraphFormat::Auto,
            r: 6,
            k: None,
        },
        0,
    );
    assert_eq!(execute(&cap).unwrap_err().exit_code(), 3);
}

#[test]
fn csv_and_table_use_nine_significant_digits() {
    let outcome = execute(&c5_bounds()).unwrap();
    let csv = render(&outcome, Emit::Csv).unwrap();
    assert!(csv.contains("1.76776695,3.34370152"), "{csv}");
    let table = render(&outcome, Emit::Table).unwrap();
    assert!(table.contains("upper_bound") && table.contains("3.34370152"));
}

fn cli(args: &[&str], log: &std::path::Path) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_graphcap"))
        .args(args)
        .arg("--log")
        .arg(log)
        .output()
        .unwrap()
}

#[test]
fn cli_exit_codes_and_machine_output() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let c5 = data("c5.edgelist");
    let c5 = c5.to_str().unwrap();

    let ok = cli(
        &[
            "capacity-bounds",
            "--graph",
            c5,
            "--gamma",
            "0.5",
            "--emit",
            "record",
        ],
        &log,
    );
    assert_eq!(ok.status.code(), Some(0));
    let parsed: Outcome = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(
        parsed,
        execute(&{
            let mut c = c5_bounds();
            if let Command::CapacityBounds { rmax, .. } = &mut c.command {
                *rmax = None;
            }
            c
        })
        .unwrap()
    );

    let invalid = cli(&["capacity-bounds", "--graph", c5, "--gamma", "1.5"], &log);
    assert_eq!(invalid.status.code(), Some(2));
    let infeasible = cli(
        &[
            "capacity-certify",
            "--graph",
            c5,
            "--gamma",
            "0.25",
            "--rmax",
            "3",
        ],
        &log,
    );
    assert_eq!(infeasible.status.code(), Some(3));
    let exhausted = cli(
        &[
            "codes-search",
            "--constraint",
            "hn",
            "--max-attempts",
            "2",
            "--seed",
            "1",
        ],
        &log,
    );
    assert_eq!(exhausted.status.code(), Some(4));

    let unseeded = cli(&["codes-sample", "--n", "10"], &log);
    assert_eq!(unseeded.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&unseeded.stderr).starts_with("seed: "));

    // failed runs leave no record
    assert_eq!(read_log(&log).unwrap().len(), 3);
}
