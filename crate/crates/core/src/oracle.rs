//! Exhaustive ground truth for small graphs.

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{EdgeId, Multigraph, Vertex};
use std::time::{Duration, Instant};
use thiserror::Error;

pub const MAX_ORACLE_EDGES: usize = 40;
pub const MAX_SCAN_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large: {actual} > {limit}")]
    TooLarge { limit: usize, actual: usize },
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub chi_prime: usize,
    pub witness: EdgeColoring,
    pub elapsed: Duration,
}

/// Exact chromatic index by backtracking, with the default edge limit.
pub fn brute_chromatic_index(g: &Multigraph) -> Result<OracleResult, OracleError> {
    brute_chromatic_index_with_limit(g, MAX_ORACLE_EDGES)
}

pub fn brute_chromatic_index_with_limit(g: &Multigraph, limit: usize) -> Result<OracleResult, OracleError> {
    if g.edge_count() > limit {
        return Err(OracleError::TooLarge {
            limit,
            actual: g.edge_count(),
        });
    }
    let start = Instant::now();
    let delta = g.max_degree();
    let upper = delta + g.max_multiplicity();
    for k in delta.max(1)..=upper.max(1) {
        if let Some(c) = try_color(g, k) {
            return Ok(OracleResult {
                chi_prime: if g.edge_count() == 0 { 0 } else { k },
                witness: c,
                elapsed: start.elapsed(),
            });
        }
    }
    unreachable!("Shannon/Vizing bound Δ + μ always suffices")
}

struct Search<'a> {
    g: &'a Multigraph,
    k: usize,
    color: Vec<Color>,
    /// used[v] bit c set when color c is present at v.
    used: Vec<u64>,
    edges: Vec<EdgeId>,
}

impl Search<'_> {
    fn free(&self, e: EdgeId) -> u64 {
        let (u, v) = self.g.endpoints(e).expect("live edge");
        let all = ((1u64 << self.k) - 1) << 1;
        all & !(self.used[u] | self.used[v])
    }

    fn assign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.g.endpoints(e).expect("live edge");
        self.color[e] = c;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
    }

    fn clear(&mut self, e: EdgeId) {
        let (u, v) = self.g.endpoints(e).expect("live edge");
        let c = self.color[e];
        self.color[e] = 0;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
    }

    /// Colors the remaining edges, most constrained first; colors above the
    /// largest one in use are interchangeable, so only the first is tried.
    fn run(&mut self, top: Color) -> bool {
        let mut best: Option<(u32, EdgeId)> = None;
        for &e in &self.edges {
            if self.color[e] == 0 {
                let f = self.free(e).count_ones();
                if best.is_none_or(|(bf, _)| f < bf) {
                    best = Some((f, e));
                }
            }
        }
        let Some((_, e)) = best else { return true };
        let free = self.free(e);
        for c in 1..=self.k.min(top + 1) {
            if free & (1 << c) != 0 {
                self.assign(e, c);
                if self.run(top.max(c)) {
                    return true;
                }
                self.clear(e);
            }
        }
        false
    }
}

fn try_color(g: &Multigraph, k: usize) -> Option<EdgeColoring> {
    assert!(k < 63, "palette too large for the bitset search");
    let mut s = Search {
        g,
        k,
        color: vec![0; g.edge_capacity()],
        used: vec![0; g.vertex_count()],
        edges: g.edge_ids(),
    };
    // Edges at a maximum-degree vertex take distinct colors; fix them to 1..Δ.
    let mut top = 0;
    if let Some(v) = (0..g.vertex_count()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        for (i, &e) in g.incident(v).iter().enumerate() {
            if i + 1 > k {
                return None;
            }
            s.assign(e, i + 1);
            top = i + 1;
        }
    }
    if !s.run(top) {
        return None;
    }
    let mut c = EdgeColoring::new(g, k);
    for (e, _, _) in g.edges() {
        c.set(g, e, s.color[e]).expect("search keeps colors distinct");
    }
    Some(c)
}

/// First odd vertex set X (in Gray-code order) with 2e(G[X]) > Δ(|X| − 1)
/// and Δ(G[X]) = Δ(G).
pub fn brute_overfull_scan(g: &Multigraph) -> Result<Option<Vec<Vertex>>, OracleError> {
    let n = g.vertex_count();
    if n > MAX_SCAN_VERTICES {
        return Err(OracleError::TooLarge {
            limit: MAX_SCAN_VERTICES,
            actual: n,
        });
    }
    let delta = g.max_degree();
    let mult: Vec<Vec<usize>> = (0..n).map(|u| (0..n).map(|v| g.multiplicity(u, v)).collect()).collect();
    let mut inside = vec![false; n];
    let mut deg_in = vec![0usize; n];
    let mut edges = 0usize;
    let mut size = 0usize;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        if inside[v] {
            inside[v] = false;
            size -= 1;
            edges -= deg_in[v];
            for w in 0..n {
                deg_in[w] -= mult[v][w];
            }
        } else {
            inside[v] = true;
            size += 1;
            edges += deg_in[v];
            for w in 0..n {
                deg_in[w] += mult[v][w];
            }
        }
        if size % 2 == 1 && size >= 3 && 2 * edges > delta * (size - 1) {
            let top = (0..n).filter(|&w| inside[w]).map(|w| deg_in[w]).max().unwrap_or(0);
            if top == delta {
                return Ok(Some((0..n).filter(|&w| inside[w]).collect()));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper;
    use crate::gen;

    #[test]
    fn small_indices() {
        assert_eq!(brute_chromatic_index(&gen::complete(4)).unwrap().chi_prime, 3);
        let c5 = Multigraph::from_simple_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_chromatic_index(&c5).unwrap().chi_prime, 3);
        let p = gen::petersen_minus_vertex();
        let r = brute_chromatic_index(&p).unwrap();
        assert_eq!(r.chi_prime, 4);
        assert!(verify_proper(&p, &r.witness).ok && r.witness.is_total(&p));
    }

    #[test]
    fn shannon_triangle() {
        // Fat triangle with multiplicity 2 everywhere needs 6 colors.
        let g = Multigraph::build(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        assert_eq!(brute_chromatic_index(&g).unwrap().chi_prime, 6);
    }

    #[test]
    fn overfull_scans() {
        assert_eq!(brute_overfull_scan(&gen::complete(6)).unwrap(), None);
        assert_eq!(brute_overfull_scan(&gen::complete(7)).unwrap(), Some((0..7).collect()));
        assert_eq!(brute_overfull_scan(&gen::petersen_minus_vertex()).unwrap(), None);
    }

    #[test]
    fn too_large() {
        assert!(matches!(brute_chromatic_index(&gen::complete(10)), Err(OracleError::TooLarge { .. })));
        assert!(brute_overfull_scan(&gen::complete(21)).is_err());
    }
}
