use super::{Color, EdgeColoring};
use crate::graph::{EdgeId, Multigraph, Vertex};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainShape {
    Path,
    EvenCycle,
}

/// Maximal two-colored walk through a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KempeChain {
    pub alpha: Color,
    pub beta: Color,
    /// Vertices in traversal order; a cycle does not repeat its start.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub shape: ChainShape,
    version: u64,
}

impl KempeChain {
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        match self.shape {
            ChainShape::Path => Some((self.vertices[0], *self.vertices.last().unwrap())),
            ChainShape::EvenCycle => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chain was extracted at version {chain}, coloring is at version {current}")]
pub struct StaleChain {
    pub chain: u64,
    pub current: u64,
}

fn walk(g: &Multigraph, c: &EdgeColoring, start: Vertex, first: Color, other: Color) -> (Vec<Vertex>, Vec<EdgeId>, bool) {
    let mut verts = vec![start];
    let mut edges = Vec::new();
    let mut cur = start;
    let mut col = first;
    while let Some(e) = c.edge_at(cur, col) {
        let next = g.other(e, cur);
        edges.push(e);
        if next == start {
            return (verts, edges, true);
        }
        verts.push(next);
        cur = next;
        col = if col == first { other } else { first };
    }
    (verts, edges, false)
}

/// The (α, β)-chain containing `v`. A path is reported starting at one of its
/// ends; when `v` itself is an end, it comes first.
pub fn kempe_chain(g: &Multigraph, c: &EdgeColoring, v: Vertex, alpha: Color, beta: Color) -> KempeChain {
    assert_ne!(alpha, beta, "chain colors must differ");
    let has_a = c.edge_at(v, alpha).is_some();
    let has_b = c.edge_at(v, beta).is_some();
    let (first, second) = if has_a { (alpha, beta) } else { (beta, alpha) };
    let (mut verts, mut edges, cyc) = walk(g, c, v, first, second);
    if cyc {
        return KempeChain {
            alpha,
            beta,
            vertices: verts,
            edges,
            shape: ChainShape::EvenCycle,
            version: c.version(),
        };
    }
    if has_a && has_b {
        let (back_v, back_e, _) = walk(g, c, v, second, first);
        let mut vs: Vec<Vertex> = back_v.into_iter().skip(1).rev().collect();
        let mut es: Vec<EdgeId> = back_e.into_iter().rev().collect();
        vs.append(&mut verts);
        es.append(&mut edges);
        verts = vs;
        edges = es;
    }
    KempeChain {
        alpha,
        beta,
        vertices: verts,
        edges,
        shape: ChainShape::Path,
        version: c.version(),
    }
}

/// Exchanges α and β on every edge of `chain`.
pub fn kempe_swap(g: &Multigraph, c: &mut EdgeColoring, chain: &KempeChain) -> Result<(), StaleChain> {
    if chain.version != c.version() {
        return Err(StaleChain {
            chain: chain.version,
            current: c.version(),
        });
    }
    swap_edges(g, c, &chain.edges, chain.alpha, chain.beta);
    Ok(())
}

pub(crate) fn swap_edges(g: &Multigraph, c: &mut EdgeColoring, edges: &[EdgeId], alpha: Color, beta: Color) {
    let old: Vec<Color> = edges.iter().map(|&e| c.unset(g, e).expect("chain edge colored")).collect();
    for (&e, col) in edges.iter().zip(old) {
        let new = if col == alpha { beta } else { alpha };
        c.set(g, e, new).expect("kempe exchange keeps properness");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_simple_edges(n, &edges).unwrap()
    }

    #[test]
    fn even_cycle_chain() {
        let g = cycle(6);
        let mut c = EdgeColoring::new(&g, 2);
        for e in 0..6 {
            c.set(&g, e, 1 + e % 2).unwrap();
        }
        let ch = kempe_chain(&g, &c, 3, 1, 2);
        assert_eq!(ch.shape, ChainShape::EvenCycle);
        assert_eq!(ch.edges.len(), 6);
        let before: Vec<_> = (0..6).map(|v| c.missing(v)).collect();
        kempe_swap(&g, &mut c, &ch).unwrap();
        assert!(verify_proper(&g, &c).ok);
        let after: Vec<_> = (0..6).map(|v| c.missing(v)).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn path_swap_moves_missing_colors() {
        let g = Multigraph::from_simple_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut c = EdgeColoring::new(&g, 3);
        c.set(&g, 0, 2).unwrap();
        c.set(&g, 1, 1).unwrap();
        c.set(&g, 2, 2).unwrap();
        let ch = kempe_chain(&g, &c, 0, 1, 2);
        assert_eq!(ch.endpoints(), Some((0, 3)));
        assert!(c.is_missing(0, 1));
        kempe_swap(&g, &mut c, &ch).unwrap();
        assert!(c.is_missing(0, 2) && !c.is_missing(0, 1));
        assert!(c.is_missing(3, 2));
    }

    #[test]
    fn interior_start_and_involution() {
        let g = Multigraph::from_simple_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut c = EdgeColoring::new(&g, 2);
        for e in 0..4 {
            c.set(&g, e, 1 + e % 2).unwrap();
        }
        let ch = kempe_chain(&g, &c, 2, 1, 2);
        assert_eq!(ch.vertices.len(), 5);
        let snapshot = c.to_json(&g);
        kempe_swap(&g, &mut c, &ch).unwrap();
        let again = kempe_chain(&g, &c, 2, 1, 2);
        kempe_swap(&g, &mut c, &again).unwrap();
        assert_eq!(c.to_json(&g), snapshot);
    }

    #[test]
    fn stale_chain_rejected() {
        let g = cycle(4);
        let mut c = EdgeColoring::new(&g, 3);
        c.set(&g, 0, 1).unwrap();
        let ch = kempe_chain(&g, &c, 0, 1, 2);
        c.set(&g, 2, 3).unwrap();
        assert!(kempe_swap(&g, &mut c, &ch).is_err());
    }

    #[test]
    fn isolated_in_both_colors() {
        let g = cycle(4);
        let c = EdgeColoring::new(&g, 2);
        let ch = kempe_chain(&g, &c, 1, 1, 2);
        assert_eq!(ch.vertices, vec![1]);
        assert!(ch.edges.is_empty());
    }
}
