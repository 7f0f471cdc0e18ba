use serde::{Deserialize, Serialize};

use crate::bipartite::verify::Reverification;
use crate::bipartite::{BipartiteGraph, CodeSummary, McEstimate, SatisfiedFlags, SearchResult};
use crate::capacity::{CapacityReport, Certificate, RecursionCheck};

/// Result payload of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Sample {
        seed: u64,
        graph: BipartiteGraph,
        summary: CodeSummary,
        constraint_holds: bool,
    },
    Verify {
        summary: CodeSummary,
        distance_threshold: usize,
        satisfied: SatisfiedFlags,
        reverification: Reverification,
    },
    Search(SearchResult),
    MonteCarlo(McEstimate),
    Bounds(CapacityReport),
    Certify {
        gamma: f64,
        certificates: Vec<Certificate>,
    },
    Mis {
        r: usize,
        k: usize,
        vertices: usize,
        alpha: usize,
        witness: Vec<usize>,
    },
    Recursion {
        checks: Vec<RecursionCheck>,
        all_hold: bool,
    },
}

impl Outcome {
    /// 4 for a search that ran out of attempts, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Search(r) if !r.is_satisfied() => 4,
            _ => 0,
        }
    }

    pub fn sections(&self) -> Vec<Section> {
        match self {
            Outcome::Sample {
                seed,
                graph,
                summary,
                constraint_holds,
            } => {
                let mut s = summary_section(summary);
                s.push("seed", Cell::Int(*seed as u128));
                s.push("edges", Cell::Int(graph.edge_count() as u128));
                s.push("constraint_holds", Cell::Bool(*constraint_holds));
                vec![s]
            }
            Outcome::Verify {
                summary,
                distance_threshold,
                satisfied,
                reverification,
            } => {
                let mut s = summary_section(summary);
                s.push("distance_threshold", Cell::Int(*distance_threshold as u128));
                push_flags(&mut s, satisfied);
                s.push("reverified", Cell::Bool(reverification.all_ok()));
                vec![s]
            }
            Outcome::Search(r) => {
                let mut s = summary_section(&r.summary);
                s.push("seed", Cell::Int(r.seed as u128));
                s.push("attempts", Cell::Int(r.attempts as u128));
                s.push("attempt_index", Cell::Int(r.attempt_index as u128));
                s.push(
                    "distance_threshold",
                    Cell::Int(r.distance_threshold as u128),
                );
                push_flags(&mut s, &r.satisfied);
                s.push("satisfied", Cell::Bool(r.is_satisfied()));
                vec![s]
            }
            Outcome::MonteCarlo(e) => {
                let mut s = Section::single();
                s.push("event", Cell::Text(e.event.name().into()));
                s.push("trials", Cell::Int(e.trials as u128));
                s.push("successes", Cell::Int(e.successes as u128));
                s.push("estimate", Cell::Float(e.estimate));
                s.push("ci_low", Cell::Float(e.ci_low));
                s.push("ci_high", Cell::Float(e.ci_high));
                vec![s]
            }
            Outcome::Bounds(r) => {
                let mut s = Section::single();
                s.push("n", Cell::Int(r.n as u128));
                s.push("gamma", Cell::Float(r.gamma));
                s.push("d_av", Cell::Float(r.d_av));
                s.push("delta_max", Cell::Int(r.delta_max as u128));
                s.push("alpha", Cell::Int(r.alpha as u128));
                s.push("lower_bound", Cell::Float(r.lower_bound));
                s.push("upper_bound", Cell::Float(r.upper_bound));
                s.push(
                    "lower_average_degree",
                    Cell::Float(r.lower_terms.average_degree),
                );
                s.push("lower_max_degree", Cell::Float(r.lower_terms.max_degree));
                s.push("lower_complete", Cell::Float(r.lower_terms.complete));
                s.push("theta_value", Cell::Float(r.theta_value));
                s.push("theta_source", Cell::Text(r.theta_source.label().into()));
                let mut out = vec![s];
                if !r.certificate_checks.is_empty() {
                    let mut s = Section::new(&[
                        "r",
                        "k",
                        "certificate",
                        "order_bound",
                        "integral_budget",
                        "within_upper",
                    ]);
                    for c in &r.certificate_checks {
                        s.rows.push(vec![
                            Cell::Int(c.r as u128),
                            Cell::Int(c.k as u128),
                            Cell::Float(c.value),
                            Cell::Float(c.order_bound),
                            Cell::Bool(c.integral_budget),
                            Cell::Bool(c.within_upper),
                        ]);
                    }
                    out.push(s);
                }
                out
            }
            Outcome::Certify { certificates, .. } => vec![certificate_section(certificates)],
            Outcome::Mis {
                r,
                k,
                vertices,
                alpha,
                witness,
            } => {
                let mut s = Section::single();
                s.push("r", Cell::Int(*r as u128));
                s.push("k", Cell::Int(*k as u128));
                s.push("vertices", Cell::Int(*vertices as u128));
                s.push("alpha", Cell::Int(*alpha as u128));
                let w: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
                s.push("witness", Cell::Text(w.join(" ")));
                vec![s]
            }
            Outcome::Recursion { checks, .. } => {
                let mut s = Section::new(&["r", "d", "lhs", "rhs", "holds"]);
                for c in checks {
                    s.rows.push(vec![
                        Cell::Int(c.r as u128),
                        Cell::Int(c.d as u128),
                        Cell::Int(c.lhs),
                        Cell::Int(c.rhs),
                        Cell::Bool(c.holds),
                    ]);
                }
                vec![s]
            }
        }
    }
}

fn summary_section(s: &CodeSummary) -> Section {
    let mut out = Section::single();
    out.push("n", Cell::Int(s.n as u128));
    out.push("m", Cell::Int(s.m as u128));
    out.push("rank", Cell::Int(s.rank as u128));
    out.push("dimension", Cell::Int(s.dimension as u128));
    out.push(
        "min_distance",
        s.min_distance.map_or(Cell::Empty, |d| Cell::Int(d as u128)),
    );
    out.push(
        "relative_distance",
        s.relative_distance.map_or(Cell::Empty, Cell::Float),
    );
    out.push("diversity_index", Cell::Float(s.diversity_index));
    out.push("rate", Cell::Float(s.rate));
    out.push("redundancy", Cell::Float(s.redundancy));
    out
}

fn push_flags(s: &mut Section, f: &SatisfiedFlags) {
    s.push("distance_ok", Cell::Bool(f.distance));
    s.push("diversity_ok", Cell::Bool(f.diversity));
    s.push("constraint_ok", Cell::Bool(f.constraint));
    s.push("verified", Cell::Bool(f.verified));
}

fn certificate_section(certs: &[Certificate]) -> Section {
    let mut s = Section::new(&["r", "k", "alpha", "certificate"]);
    for c in certs {
        s.rows.push(vec![
            Cell::Int(c.r as u128),
            Cell::Int(c.k as u128),
            Cell::Int(c.alpha as u128),
            Cell::Float(c.value),
        ]);
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u128),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&sig9(*v)),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
            Cell::Empty => Ok(()),
        }
    }
}

/// A header and rows of cells. Single-row sections print as key/value
/// pairs in table form.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Section {
    fn new(header: &[&str]) -> Self {
        Section {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn single() -> Self {
        Section {
            header: Vec::new(),
            rows: vec![Vec::new()],
        }
    }

    fn push(&mut self, key: &str, cell: Cell) {
        self.header.push(key.into());
        self.rows[0].push(cell);
    }
}

/// Nine significant digits; plain decimal for moderate magnitudes,
/// scientific otherwise.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        format!("{:.*}", (8 - exp).max(0) as usize, x)
    } else {
        sci
    }
}
