//! The `.nnf` text format.
//!
//! ```text
//! nnf <node-count> <edge-count> <num-vars>
//! L <signed-int>
//! A <k> <id_1> ... <id_k>
//! O <j> <k> <id_1> ... <id_k>
//! ```
//!
//! Ids are 0-based line indices after the header; the last node is the root.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use super::{Lit, Node, NnfStore, NodeId};
use crate::bdd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    MissingHeader,
    MalformedHeader,
    UnknownNodeType,
    MalformedNode,
    ForwardReference,
    VariableOutOfRange,
    NodeCountMismatch,
    EdgeCountMismatch,
    Io,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("nnf line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Empty => "no nodes",
            ParseErrorKind::MissingHeader => "missing `nnf` header",
            ParseErrorKind::MalformedHeader => "malformed header",
            ParseErrorKind::UnknownNodeType => "unknown node type",
            ParseErrorKind::MalformedNode => "malformed node line",
            ParseErrorKind::ForwardReference => "child id is not smaller than the node's own id",
            ParseErrorKind::VariableOutOfRange => "variable index exceeds declared count",
            ParseErrorKind::NodeCountMismatch => "node count differs from header",
            ParseErrorKind::EdgeCountMismatch => "edge count differs from header",
            ParseErrorKind::Io => "read error",
        };
        f.write_str(s)
    }
}

/// Writes the nodes reachable from `root`, renumbered densely in id order.
pub fn write_nnf<W: Write>(store: &NnfStore, root: NodeId, mut out: W) -> std::io::Result<()> {
    let order = store.reachable(root);
    let local: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let edges: usize = order.iter().map(|&id| store.node(id).children().len()).sum();
    writeln!(out, "nnf {} {} {}", order.len(), edges, store.num_vars())?;
    for &id in &order {
        match store.node(id) {
            Node::True => writeln!(out, "A 0")?,
            Node::False => writeln!(out, "O 0 0")?,
            Node::Lit(l) => writeln!(out, "L {}", l.to_dimacs())?,
            Node::And(c) => {
                write!(out, "A {}", c.len())?;
                for ch in c.iter() {
                    write!(out, " {}", local[ch])?;
                }
                writeln!(out)?;
            }
            Node::Or(c) => {
                let j = bdd::decision_shape(store, id).map_or(0, |(v, _, _)| v.index());
                write!(out, "O {} {}", j, c.len())?;
                for ch in c.iter() {
                    write!(out, " {}", local[ch])?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

pub fn write_nnf_string(store: &NnfStore, root: NodeId) -> String {
    let mut buf = Vec::new();
    write_nnf(store, root, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Reads a sentence into `store` and returns its root. The store's universe
/// grows to the declared variable count.
pub fn read_nnf<R: BufRead>(source: R, store: &mut NnfStore) -> Result<NodeId, ParseError> {
    let err = |line, kind| ParseError { line, kind };
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let (hline, header) = match lines.next() {
        None => return Err(err(1, ParseErrorKind::MissingHeader)),
        Some((n, l)) => (n, l.map_err(|_| err(n, ParseErrorKind::Io))?),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&"nnf") {
        return Err(err(hline, ParseErrorKind::MissingHeader));
    }
    let nums: Option<Vec<usize>> = fields[1..].iter().map(|f| f.parse().ok()).collect();
    let (node_count, edge_count, num_vars) = match nums.as_deref() {
        Some(&[a, b, c]) => (a, b, c),
        _ => return Err(err(hline, ParseErrorKind::MalformedHeader)),
    };
    let num_vars = u32::try_from(num_vars).map_err(|_| err(hline, ParseErrorKind::MalformedHeader))?;
    store.ensure_vars(num_vars);

    let mut ids: Vec<NodeId> = Vec::with_capacity(node_count);
    let mut edges = 0usize;
    let mut last_line = hline;
    for (n, line) in lines {
        last_line = n;
        let line = line.map_err(|_| err(n, ParseErrorKind::Io))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let own = ids.len();
        let parse_ids = |toks: &[&str]| -> Result<Vec<NodeId>, ParseError> {
            toks.iter()
                .map(|t| {
                    let i: usize = t.parse().map_err(|_| err(n, ParseErrorKind::MalformedNode))?;
                    if i >= own {
                        return Err(err(n, ParseErrorKind::ForwardReference));
                    }
                    Ok(ids[i])
                })
                .collect()
        };
        let id = match toks.first().copied() {
            Some("L") => {
                let code: i64 = match toks.as_slice() {
                    [_, c] => c.parse().map_err(|_| err(n, ParseErrorKind::MalformedNode))?,
                    _ => return Err(err(n, ParseErrorKind::MalformedNode)),
                };
                let lit = Lit::from_dimacs(code).ok_or(err(n, ParseErrorKind::MalformedNode))?;
                if lit.var().index() > num_vars {
                    return Err(err(n, ParseErrorKind::VariableOutOfRange));
                }
                store.lit(lit)
            }
            Some("A") => {
                let k: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or(err(n, ParseErrorKind::MalformedNode))?;
                if toks.len() != 2 + k {
                    return Err(err(n, ParseErrorKind::MalformedNode));
                }
                let kids = parse_ids(&toks[2..])?;
                edges += k;
                store.and(kids)
            }
            Some("O") => {
                let head: Option<(u32, usize)> = match (toks.get(1), toks.get(2)) {
                    (Some(j), Some(k)) => j.parse().ok().zip(k.parse().ok()),
                    _ => None,
                };
                let (j, k) = head.ok_or(err(n, ParseErrorKind::MalformedNode))?;
                if j > num_vars {
                    return Err(err(n, ParseErrorKind::VariableOutOfRange));
                }
                if toks.len() != 3 + k {
                    return Err(err(n, ParseErrorKind::MalformedNode));
                }
                let kids = parse_ids(&toks[3..])?;
                edges += k;
                store.or(kids)
            }
            _ => return Err(err(n, ParseErrorKind::UnknownNodeType)),
        };
        ids.push(id);
    }
    if ids.len() != node_count {
        return Err(err(last_line, ParseErrorKind::NodeCountMismatch));
    }
    if edges != edge_count {
        return Err(err(last_line, ParseErrorKind::EdgeCountMismatch));
    }
    ids.last().copied().ok_or(err(hline, ParseErrorKind::Empty))
}
