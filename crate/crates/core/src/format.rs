//! Plain-text file formats and the JSON labeling report.
//!
//! `.hg`: first line `n m`, then `m` lines `k v_1 ... v_k`.
//! `.g`: first line `n m`, then `m` lines `u v`.
//! Indices are 0-based, all tokens are whitespace-separated ASCII decimals.
//! Blank lines are ignored; line numbers in errors are physical lines.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Graph, Hypergraph, Labeling};

/// Labeling output: `{"labels":[...],"max_label":N,"verified":bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingReport {
    pub labels: Vec<u64>,
    pub max_label: u64,
    pub verified: bool,
}

impl LabelingReport {
    pub fn new(f: &Labeling, verified: bool) -> Self {
        Self {
            labels: f.values().to_vec(),
            max_label: f.max_label(),
            verified,
        }
    }
}

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, toks)| !toks.is_empty()),
        );
        Self {
            inner: it.peekable(),
        }
    }

    fn next(&mut self, what: &str, last_line: usize) -> Result<(usize, Vec<&'a str>)> {
        self.inner.next().ok_or_else(|| Error::Parse {
            line: last_line + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, _)) => Err(Error::Parse {
                line,
                message: "unexpected content after the declared edges".into(),
            }),
        }
    }
}

fn number(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer, found {tok:?}"),
    })
}

fn header(lines: &mut Lines<'_>) -> Result<(usize, usize, usize)> {
    let (line, toks) = lines.next("header `n m`", 0)?;
    if toks.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("header must be `n m`, found {} tokens", toks.len()),
        });
    }
    Ok((line, number(toks[0], line)?, number(toks[1], line)?))
}

fn attach_line(err: Error, header_line: usize, edge_lines: &[usize]) -> Error {
    let line = match &err {
        Error::EmptyEdge { edge }
        | Error::VertexOutOfRange { edge, .. }
        | Error::RepeatedVertex { edge, .. } => edge_lines[*edge],
        Error::DuplicateEdge { second, .. } => edge_lines[*second],
        _ => header_line,
    };
    Error::Validation {
        line,
        source: Box::new(err),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = Lines::new(text);
    let (header_line, n, m) = header(&mut lines)?;
    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut edge_lines = Vec::with_capacity(m.min(1 << 20));
    let mut last = header_line;
    for _ in 0..m {
        let (line, toks) = lines.next("an edge line `k v_1 ... v_k`", last)?;
        last = line;
        let k = number(toks[0], line)?;
        if toks.len() != k + 1 {
            return Err(Error::Parse {
                line,
                message: format!("edge declares {k} vertices but lists {}", toks.len() - 1),
            });
        }
        let edge = toks[1..]
            .iter()
            .map(|t| number(t, line))
            .collect::<Result<Vec<_>>>()?;
        edges.push(edge);
        edge_lines.push(line);
    }
    lines.expect_end()?;
    Hypergraph::new(n, edges).map_err(|e| attach_line(e, header_line, &edge_lines))
}

/// Canonical `.hg` text: vertices within an edge ascending, edges in order.
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.vertex_count(), h.edge_count());
    for edge in h.edges() {
        let _ = write!(out, "{}", edge.len());
        for v in edge {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let (header_line, n, m) = header(&mut lines)?;
    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut edge_lines = Vec::with_capacity(m.min(1 << 20));
    let mut last = header_line;
    for _ in 0..m {
        let (line, toks) = lines.next("an edge line `u v`", last)?;
        last = line;
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("graph edge must be `u v`, found {} tokens", toks.len()),
            });
        }
        edges.push((number(toks[0], line)?, number(toks[1], line)?));
        edge_lines.push(line);
    }
    lines.expect_end()?;
    Graph::new(n, edges.iter().copied()).map_err(|err| {
        let line = match &err {
            Error::VertexOutOfRange { edge, .. } => edge_lines[*edge],
            Error::DuplicateEdge { second, .. } => edge_lines[*second],
            Error::SelfLoop { vertex } => edges
                .iter()
                .position(|&(u, v)| u == *vertex && v == *vertex)
                .map_or(header_line, |i| edge_lines[i]),
            _ => header_line,
        };
        Error::Validation {
            line,
            source: Box::new(err),
        }
    })
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
