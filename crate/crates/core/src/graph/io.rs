//! Plain-text edge lists.
//!
//! ```text
//! # n=4
//! 0 1
//! 1 3
//! ```
//!
//! The first line is the header `# n=<N>`. Each further line holds one edge
//! `u v` with `0 <= u < v < N`, in any order, without duplicates. Blank lines
//! and later `#` comment lines are ignored. The writer emits edges in
//! lexicographic order, so output is canonical.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# n={}", g.n())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        let parse_err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        if n.is_none() {
            let value = text
                .strip_prefix('#')
                .map(str::trim)
                .and_then(|h| h.strip_prefix("n="))
                .ok_or_else(|| parse_err("expected header `# n=<N>`".into()))?;
            n = Some(
                value
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad node count `{value}`: {e}")))?,
            );
            continue;
        }
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let f = fields
                .next()
                .ok_or_else(|| parse_err("expected two node ids".into()))?;
            f.parse::<usize>()
                .map_err(|e| parse_err(format!("bad node id `{f}`: {e}")))
        };
        let (u, v) = (endpoint()?, endpoint()?);
        if fields.next().is_some() {
            return Err(parse_err("trailing fields after edge".into()));
        }
        let n = n.unwrap();
        if u >= v {
            return Err(parse_err(format!("edge `{u} {v}` must satisfy u < v")));
        }
        if v >= n {
            return Err(parse_err(format!("node {v} out of range for n={n}")));
        }
        edges.push((u, v, lineno));
    }
    let n = n.ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty input, expected header `# n=<N>`".into(),
    })?;
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return Err(Error::Parse {
            line: w[1].2,
            message: format!("duplicate edge `{} {}`", w[1].0, w[1].1),
        });
    }
    let edges = edges.into_iter().map(|(u, v, _)| (u, v)).collect();
    Ok(Graph::from_sorted_unchecked(n, edges))
}
