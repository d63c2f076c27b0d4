//! Line-oriented graph file format.
//!
//! ```text
//! c <comment>
//! p pvc <n> <m>
//! w <u> <weight>
//! e <u> <v>
//! ```
//!
//! The header must be the first non-comment line. Exactly `m` edge lines must
//! follow; weight lines are optional and default to 1.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut weighted = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        match (kind, header) {
            ("p", None) => {
                let fmt: String = field(toks.next(), line, "format")?;
                if fmt != "pvc" {
                    return Err(parse_err(line, format!("unknown format '{fmt}'")));
                }
                let n = field(toks.next(), line, "vertex count")?;
                let m = field(toks.next(), line, "edge count")?;
                header = Some((n, m));
                weights = vec![1; n];
            }
            ("p", Some(_)) => return Err(parse_err(line, "duplicate header")),
            (_, None) => return Err(parse_err(line, "expected 'p pvc <n> <m>' header")),
            ("e", Some((n, _))) => {
                let u: usize = field(toks.next(), line, "edge endpoint")?;
                let v: usize = field(toks.next(), line, "edge endpoint")?;
                for id in [u, v] {
                    if id < 1 || id > n {
                        return Err(parse_err(
                            line,
                            Error::VertexOutOfRange { id, n }.to_string(),
                        ));
                    }
                }
                if u == v {
                    return Err(parse_err(line, Error::SelfLoop(u).to_string()));
                }
                let e = (u.min(v), u.max(v));
                if !seen.insert(e) {
                    return Err(parse_err(line, Error::DuplicateEdge(e.0, e.1).to_string()));
                }
                edges.push(e);
            }
            ("w", Some((n, _))) => {
                let u: usize = field(toks.next(), line, "vertex id")?;
                let w: u64 = field(toks.next(), line, "weight")?;
                if u < 1 || u > n {
                    return Err(parse_err(
                        line,
                        Error::VertexOutOfRange { id: u, n }.to_string(),
                    ));
                }
                if w < 1 {
                    return Err(parse_err(
                        line,
                        Error::InvalidWeight {
                            vertex: u,
                            weight: w,
                        }
                        .to_string(),
                    ));
                }
                if !weighted.insert(u) {
                    return Err(parse_err(line, format!("duplicate weight for vertex {u}")));
                }
                weights[u - 1] = w;
            }
            (other, Some(_)) => {
                return Err(parse_err(line, format!("unknown line type '{other}'")));
            }
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_err(text.lines().count().max(1), "missing header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::with_weights(n, edges, weights)
}

/// Canonical text: header, non-unit weights by vertex, then sorted edges.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p pvc {} {}", g.n(), g.m()).unwrap();
    for v in g.vertices() {
        if g.weight(v) != 1 {
            writeln!(out, "w {} {}", v, g.weight(v)).unwrap();
        }
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = parse_graph("p pvc 2 1\ne 1 2").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.edges(), &[(1, 2)]);
    }

    #[test]
    fn edgeless() {
        let g = parse_graph("p pvc 3 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn self_loop_reports_line() {
        let err = parse_graph("p pvc 2 1\ne 1 1").unwrap_err();
        assert!(
            matches!(err, Error::Parse { line: 2, ref message } if message.contains("self-loop"))
        );
    }

    #[test]
    fn error_lines() {
        let line_of = |s: &str| match parse_graph(s) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(line_of("c hi\ne 1 2\n"), 2);
        assert_eq!(line_of("p pvc 2 1\ne 1 3\n"), 2);
        assert_eq!(line_of("p pvc 3 2\ne 1 2\nc x\ne 2 1\n"), 4);
        assert_eq!(line_of("p pvc 2 0\nw 1 0\n"), 2);
        assert_eq!(line_of("p pvc two 0\n"), 1);
        assert_eq!(line_of("p pvc 2 0\np pvc 2 0\n"), 2);
        assert_eq!(line_of("p pvc 2 2\ne 1 2\n"), 2);
    }

    #[test]
    fn weights_and_comments() {
        let g = parse_graph("c spider\np pvc 3 2\nw 2 5\ne 2 3\ne 1 2\n").unwrap();
        assert_eq!(g.weights(), &[1, 5, 1]);
        assert_eq!(write_graph(&g), "p pvc 3 2\nw 2 5\ne 1 2\ne 2 3\n");
    }
}
