//! Plain edge-list and DIMACS graph files.
//!
//! Edge list: the vertex count on the first line, then one `u v` pair per
//! line, 0-indexed. DIMACS: `c` comment lines, a `p edge n m` header and
//! `e u v` lines, 1-indexed. Blank lines are ignored in both; `#` starts a
//! comment in edge lists.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::graph::SimpleGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[default]
    Auto,
    EdgeList,
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(GraphFormat::Auto),
            "edgelist" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            _ => Err(Error::Validation(format!("unknown graph format {s:?}"))),
        }
    }
}

fn significant_lines(
    text: &str,
    comment: Option<char>,
) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let body = match comment {
            Some(c) => line.split(c).next().unwrap_or(""),
            None => line,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        Error::parse(
            line,
            format!("expected a nonnegative integer, found {tok:?}"),
        )
    })
}

fn build(n: usize, edges: &[(usize, usize)], lines: &[usize]) -> Result<SimpleGraph> {
    SimpleGraph::new(n, edges).map_err(|e| match e {
        // point at the offending line when we can find it
        Error::Validation(msg) => {
            let mut seen = std::collections::HashSet::new();
            let at = edges.iter().zip(lines).find_map(|(&(u, v), &l)| {
                let key = (u.min(v), u.max(v));
                (u == v || !seen.insert(key)).then_some(l)
            });
            match at {
                Some(l) => Error::Validation(format!("line {l}: {msg}")),
                None => Error::Validation(msg),
            }
        }
        other => other,
    })
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = significant_lines(text, Some('#'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    if header.len() != 1 {
        return Err(Error::parse(
            hl,
            "first line must hold only the vertex count",
        ));
    }
    let n = number(hl, header[0])?;
    let mut edges = Vec::new();
    let mut at = Vec::new();
    for (ln, toks) in lines {
        let [u, v] = toks[..] else {
            return Err(Error::parse(ln, "expected \"u v\""));
        };
        let (u, v) = (number(ln, u)?, number(ln, v)?);
        if u >= n || v >= n {
            return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
        }
        edges.push((u, v));
        at.push(ln);
    }
    build(n, &edges, &at)
}

pub fn parse_dimacs(text: &str) -> Result<SimpleGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut at = Vec::new();
    let mut last_line = 1;
    for (ln, toks) in significant_lines(text, None) {
        last_line = ln;
        match toks[0] {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(ln, "second problem line"));
                }
                let [_, kind, n, m] = toks[..] else {
                    return Err(Error::parse(ln, "expected \"p edge n m\""));
                };
                if kind != "edge" && kind != "col" {
                    return Err(Error::parse(
                        ln,
                        format!("unsupported problem type {kind:?}"),
                    ));
                }
                header = Some((number(ln, n)?, number(ln, m)?));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(ln, "edge before the problem line"));
                };
                let [_, u, v] = toks[..] else {
                    return Err(Error::parse(ln, "expected \"e u v\""));
                };
                let (u, v) = (number(ln, u)?, number(ln, v)?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(ln, format!("vertex out of range 1..={n}")));
                }
                edges.push((u - 1, v - 1));
                at.push(ln);
            }
            other => return Err(Error::parse(ln, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(last_line, "missing \"p edge n m\" line"))?;
    if m != edges.len() {
        return Err(Error::Validation(format!(
            "problem line declares {m} edges, file has {}",
            edges.len()
        )));
    }
    build(n, &edges, &at)
}

/// DIMACS when the first significant line is a `c` or `p` line, edge list
/// otherwise.
pub fn detect_format(text: &str) -> GraphFormat {
    match text.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some(l) if l == "c" || l.starts_with("c ") || l.starts_with("p ") => GraphFormat::Dimacs,
        _ => GraphFormat::EdgeList,
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimpleGraph> {
    match format {
        GraphFormat::Auto => parse_graph(text, detect_format(text)),
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

pub fn parse_graph_file(path: &Path, format: GraphFormat) -> Result<SimpleGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text, format)
}

pub fn to_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn to_dimacs(g: &SimpleGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_c5() {
        let g = parse_graph("5\n0 1\n1 2\n2 3\n3 4\n4 0\n", GraphFormat::Auto).unwrap();
        assert_eq!(g, SimpleGraph::cycle(5).unwrap());
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn dimacs_k3() {
        let text = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        assert_eq!(detect_format(text), GraphFormat::Dimacs);
        let g = parse_graph(text, GraphFormat::Auto).unwrap();
        assert_eq!(g, SimpleGraph::complete(3).unwrap());
        assert_eq!(parse_dimacs(&to_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let err = parse_dimacs("p edge 3 1\ne 1 1\n").unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("line 2")),
            "{err}"
        );
        let err = parse_edge_list("3\n0 1\n1 0\n").unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("line 3")),
            "{err}"
        );
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert!(matches!(
            parse_edge_list("3\n0 1\n1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 2\ne 1 2\n"),
            Err(Error::Validation(_))
        ));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# triangle\n3\n\n0 1 # first\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(
            "dimacs".parse::<GraphFormat>().unwrap(),
            GraphFormat::Dimacs
        );
        assert!("xml".parse::<GraphFormat>().is_err());
    }
}
