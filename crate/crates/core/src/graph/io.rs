//! Plain-text multigraph format.
//!
//! ```text
//! c optional comment
//! p multigraph <n> <lines>
//! e <u> <v> <multiplicity>
//! ```

use super::{key, GraphError, Multigraph, Vertex};
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

fn perr(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_mg(text: &str) -> Result<Multigraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut triples: Vec<(Vertex, Vertex, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(perr(lineno, "second header line"));
                }
                if toks.len() != 4 || toks[1] != "multigraph" {
                    return Err(perr(lineno, "expected `p multigraph <n> <m>`"));
                }
                let n = toks[2].parse().map_err(|_| perr(lineno, "bad vertex count"))?;
                let m = toks[3].parse().map_err(|_| perr(lineno, "bad line count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| perr(lineno, "edge before header"))?;
                if toks.len() != 4 {
                    return Err(perr(lineno, "expected `e <u> <v> <mult>`"));
                }
                let u: usize = toks[1].parse().map_err(|_| perr(lineno, "bad vertex"))?;
                let v: usize = toks[2].parse().map_err(|_| perr(lineno, "bad vertex"))?;
                let mult: usize = toks[3].parse().map_err(|_| perr(lineno, "bad multiplicity"))?;
                if u == v {
                    return Err(GraphError::LoopRejected(u));
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(GraphError::VertexOutOfRange { v: w, n });
                    }
                }
                if !seen.insert(key(u, v)) {
                    return Err(perr(lineno, format!("duplicate pair ({u}, {v})")));
                }
                triples.push((u, v, mult));
            }
            other => return Err(perr(lineno, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| perr(0, "missing header"))?;
    if m != triples.len() {
        return Err(perr(0, format!("header announces {m} lines, found {}", triples.len())));
    }
    Multigraph::build(n, &triples)
}

/// Canonical text: one line per adjacent pair, pairs in lexicographic order.
pub fn to_mg(g: &Multigraph) -> String {
    let mut agg: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for (_, u, v) in g.edges() {
        *agg.entry(key(u, v)).or_default() += 1;
    }
    let mut out = String::new();
    writeln!(out, "p multigraph {} {}", g.vertex_count(), agg.len()).unwrap();
    for ((u, v), m) in agg {
        writeln!(out, "e {u} {v} {m}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let g = Multigraph::build(4, &[(0, 1, 3), (2, 3, 1), (1, 2, 1)]).unwrap();
        let text = to_mg(&g);
        let h = parse_mg(&text).unwrap();
        assert_eq!(to_mg(&h), text);
        assert_eq!(h.multiplicity(0, 1), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_mg("p multigraph 3 1\ne 1 1 1\n").unwrap_err(),
            GraphError::LoopRejected(1)
        );
        assert!(parse_mg("p multigraph 3 2\ne 0 1 1\ne 1 0 2\n").is_err());
        assert!(parse_mg("p multigraph 3 1\ne 0 5 1\n").is_err());
        assert!(parse_mg("c only a comment\n").is_err());
    }

    #[test]
    fn comments_skipped() {
        let g = parse_mg("c hello\np multigraph 2 1\nc mid\ne 0 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }
}
