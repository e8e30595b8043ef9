//! Edge-list text format shared by every CLI subcommand.
//!
//! Line 1 holds the vertex count; each following line is `u -> v` for an arc
//! or `u -- v` for an undirected edge, with 0-based vertex ids. Lines starting
//! with `#` are comments. Duplicate pairs and self-loops are rejected with a
//! line-numbered error.

use crate::graph::{GraphError, Pdag, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing vertex count")]
    MissingVertexCount,
    #[error("invalid vertex count `{0}`")]
    BadVertexCount(String),
    #[error("expected `u -> v` or `u -- v`, got `{0}`")]
    BadEdgeLine(String),
    #[error("invalid vertex id `{0}`")]
    BadVertexId(String),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
}

pub fn parse_edge_list(src: &str) -> Result<Pdag, ParseError> {
    let mut graph: Option<Pdag> = None;
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(g) = graph.as_mut() else {
            let n: usize = line.parse().map_err(|_| ParseError {
                line: line_no,
                kind: ParseErrorKind::BadVertexCount(line.to_string()),
            })?;
            graph = Some(Pdag::new(n));
            continue;
        };
        let mut parts = line.split_whitespace();
        let (Some(us), Some(op), Some(vs), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::BadEdgeLine(line.to_string()),
            });
        };
        if op != "->" && op != "--" {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::BadEdgeLine(line.to_string()),
            });
        }
        let parse_id = |s: &str| -> Result<usize, ParseError> {
            s.parse().map_err(|_| ParseError {
                line: line_no,
                kind: ParseErrorKind::BadVertexId(s.to_string()),
            })
        };
        let u = parse_id(us)?;
        let v = parse_id(vs)?;
        let res = if op == "->" {
            g.add_arc(VertexId::new(u), VertexId::new(v))
        } else {
            g.add_undirected(VertexId::new(u), VertexId::new(v))
        };
        res.map_err(|e| ParseError {
            line: line_no,
            kind: match e {
                GraphError::OutOfRange(x, n) => ParseErrorKind::VertexOutOfRange(x.index(), n),
                GraphError::SelfLoop(x) => ParseErrorKind::SelfLoop(x.index()),
                GraphError::DuplicateEdge(a, b) => {
                    ParseErrorKind::DuplicateEdge(a.index(), b.index())
                }
                other => unreachable!("unexpected insertion error: {other}"),
            },
        })?;
    }
    graph.ok_or(ParseError {
        line: src.lines().count().max(1),
        kind: ParseErrorKind::MissingVertexCount,
    })
}

/// Canonical text form: optional `#` header lines, the vertex count, then
/// edges sorted lexicographically. Equal graphs serialize to equal bytes.
pub fn write_edge_list(g: &Pdag, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&g.n().to_string());
    out.push('\n');
    for (u, v, kind) in g.edges() {
        let op = if kind == crate::graph::EdgeKind::Undirected {
            "--"
        } else {
            "->"
        };
        out.push_str(&format!("{u} {op} {v}\n"));
    }
    out
}
