//! Plain-text instance files.
//!
//! OV: `n d`, then `n` bit-strings for A and `n` for B, one per line.
//! Graph: `n m`, then `m` lines `u v` with 0-indexed endpoints.
//! Blank lines are ignored; so is anything after `//` on a line.

use std::fmt::Write as _;

use thiserror::Error;
use xre_core::reductions::{BitVector, Graph, OvInstance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error("{0} trailing line(s) after the declared content")]
    Trailing(usize),
    #[error(transparent)]
    Instance(#[from] xre_core::Error),
}

fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split("//").next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let bad = |msg: &str| FormatError::Parse { line, msg: msg.to_string() };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| bad("missing header"))?;
    let b = it.next().ok_or_else(|| bad("header needs two numbers"))?;
    if it.next().is_some() {
        return Err(bad("header has more than two numbers"));
    }
    let a = a.parse().map_err(|_| bad("not a number"))?;
    let b = b.parse().map_err(|_| bad("not a number"))?;
    Ok((a, b))
}

pub fn parse_ov(src: &str) -> Result<OvInstance, FormatError> {
    let mut it = lines(src);
    let (line, head) = it.next().ok_or(FormatError::Truncated("header"))?;
    let (n, d) = header(line, head)?;
    let mut vecs = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        let (line, text) = it.next().ok_or(FormatError::Truncated("bit-vector"))?;
        let v = BitVector::parse(text).map_err(|e| FormatError::Parse { line, msg: e.to_string() })?;
        if v.len() != d {
            return Err(FormatError::Parse { line, msg: format!("expected {d} bits, found {}", v.len()) });
        }
        vecs.push(v);
    }
    let rest = it.count();
    if rest > 0 {
        return Err(FormatError::Trailing(rest));
    }
    let b = vecs.split_off(n);
    Ok(OvInstance::new(vecs, b)?)
}

pub fn write_ov(inst: &OvInstance) -> String {
    let mut out = format!("{} {}\n", inst.n(), inst.d());
    for v in inst.a().iter().chain(inst.b()) {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn parse_graph(src: &str) -> Result<Graph, FormatError> {
    let mut it = lines(src);
    let (line, head) = it.next().ok_or(FormatError::Truncated("header"))?;
    let (n, m) = header(line, head)?;
    let mut g = Graph::new(n);
    for _ in 0..m {
        let (line, text) = it.next().ok_or(FormatError::Truncated("edge"))?;
        let (u, v) = header(line, text)?;
        g.add_edge(u, v).map_err(|e| FormatError::Parse { line, msg: e.to_string() })?;
    }
    let rest = it.count();
    if rest > 0 {
        return Err(FormatError::Trailing(rest));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Text and pattern files hold one string; a single trailing newline is
/// not part of it.
pub fn read_single(src: &str) -> &str {
    src.strip_suffix("\r\n").or_else(|| src.strip_suffix('\n')).unwrap_or(src)
}
