//! Balanced vertex bipartitions that split prescribed pairs.

use crate::engine::Condition;
use crate::graph::{EdgeId, Multigraph, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const MAX_RETRIES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("no valid partition after {retries} attempts")]
    PartitionFailed { retries: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    side_a: Vec<bool>,
    pub pairs: Vec<(Vertex, Vertex)>,
    pub seed: u64,
    /// Failed attempts before the accepted one.
    pub retries: usize,
}

impl Partition {
    pub fn from_sides(n: usize, a: &[Vertex], pairs: Vec<(Vertex, Vertex)>) -> Self {
        let mut side_a = vec![false; n];
        for &v in a {
            side_a[v] = true;
        }
        Partition {
            side_a,
            pairs,
            seed: 0,
            retries: 0,
        }
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.side_a[v]
    }

    pub fn membership(&self) -> Vec<bool> {
        self.side_a.clone()
    }

    pub fn a(&self) -> Vec<Vertex> {
        (0..self.side_a.len()).filter(|&v| self.side_a[v]).collect()
    }

    pub fn b(&self) -> Vec<Vertex> {
        (0..self.side_a.len()).filter(|&v| !self.side_a[v]).collect()
    }

    pub fn len(&self) -> usize {
        self.side_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side_a.is_empty()
    }

    fn flip(&mut self, v: Vertex) {
        self.side_a[v] = !self.side_a[v];
    }

    /// Number of neighbours of `v` on each side, in the underlying simple
    /// graph (`simple = true`) or counting multiplicity.
    pub fn side_degrees(&self, g: &Multigraph, v: Vertex, simple: bool) -> (usize, usize) {
        let (mut da, mut db) = (0, 0);
        for u in g.neighbors(v) {
            let w = if simple { 1 } else { g.multiplicity(u, v) };
            if self.side_a[u] {
                da += w;
            } else {
                db += w;
            }
        }
        (da, db)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionAudit {
    pub equal_sides: bool,
    pub pairs_split: bool,
    pub max_imbalance: usize,
    pub worst_vertex: Option<Vertex>,
    pub bound: f64,
}

impl PartitionAudit {
    pub fn ok(&self) -> bool {
        self.equal_sides && self.pairs_split && self.max_imbalance as f64 <= self.bound
    }
}

/// n^{2/3} − 1 with n half the order.
pub fn balance_bound(order: usize) -> f64 {
    ((order / 2) as f64).powf(2.0 / 3.0) - 1.0
}

/// Checks the three partition clauses on the underlying simple graph.
pub fn audit_partition(g: &Multigraph, part: &Partition) -> PartitionAudit {
    let na = part.a().len();
    let equal_sides = 2 * na == part.len();
    let pairs_split = part.pairs.iter().all(|&(x, y)| part.in_a(x) != part.in_a(y));
    let mut max_imbalance = 0;
    let mut worst_vertex = None;
    for v in 0..g.vertex_count() {
        let (da, db) = part.side_degrees(g, v, true);
        let d = da.abs_diff(db);
        if worst_vertex.is_none() || d > max_imbalance {
            max_imbalance = d;
            worst_vertex = Some(v);
        }
    }
    PartitionAudit {
        equal_sides,
        pairs_split,
        max_imbalance,
        worst_vertex,
        bound: balance_bound(g.vertex_count()),
    }
}

/// Random pair-splitting halving, verified and retried up to
/// [`MAX_RETRIES`] times.
pub fn balanced_partition(
    g: &Multigraph,
    pairs: &[(Vertex, Vertex)],
    seed: u64,
) -> Result<Partition, PartitionError> {
    let order = g.vertex_count();
    if order % 2 == 1 {
        return Err(PartitionError::PreconditionViolated(format!("odd order {order}")));
    }
    if pairs.is_empty() || pairs.len() > order / 2 {
        return Err(PartitionError::PreconditionViolated(format!(
            "need 1 ≤ t ≤ {}, got {}",
            order / 2,
            pairs.len()
        )));
    }
    let mut used = vec![false; order];
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= order || used[v] {
                return Err(PartitionError::PreconditionViolated(format!(
                    "pair vertex {v} repeated or out of range"
                )));
            }
            used[v] = true;
        }
    }
    let free: Vec<Vertex> = (0..order).filter(|&v| !used[v]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_RETRIES {
        let mut side_a = vec![false; order];
        for &(x, y) in pairs {
            if rng.gen_bool(0.5) {
                side_a[x] = true;
            } else {
                side_a[y] = true;
            }
        }
        let mut rest = free.clone();
        rest.shuffle(&mut rng);
        for &v in rest.iter().take(free.len() / 2) {
            side_a[v] = true;
        }
        let part = Partition {
            side_a,
            pairs: pairs.to_vec(),
            seed,
            retries: attempt,
        };
        if audit_partition(g, &part).ok() {
            return Ok(part);
        }
    }
    Err(PartitionError::PartitionFailed { retries: MAX_RETRIES })
}

/// Puts the center in A with most of its edges towards B, then moves the
/// big neighbours `nb` of the center into B (their partners move to A).
/// `pairs[0]` must be `(x, y1)`.
pub fn adjust_for_center(part: &Partition, g: &Multigraph, x: Vertex, nb: &[Vertex]) -> Partition {
    let mut p = part.clone();
    let y1 = p.pairs[0].1;
    if !p.in_a(x) {
        p.flip(x);
        p.flip(y1);
    }
    let (da, db) = p.side_degrees(g, x, false);
    if db < da {
        for v in 0..p.len() {
            if v != x && v != y1 {
                p.flip(v);
            }
        }
    }
    for &(xi, yi) in p.pairs.clone().iter().skip(1) {
        if nb.contains(&xi) && p.in_a(xi) {
            p.flip(xi);
            p.flip(yi);
        }
    }
    p
}

/// Allowance for `|d_A(v) − d_B(v)|` (with multiplicity) after the center
/// adjustment.
pub fn adjusted_bound(cond: Condition, order: usize, e_xv: usize) -> f64 {
    let n = (order / 2) as f64;
    let extra = match cond {
        Condition::B => 3.0 * n.sqrt(),
        Condition::C => 2.0 * n.sqrt(),
        _ => 0.0,
    };
    n.powf(2.0 / 3.0) + extra + e_xv as f64
}

#[derive(Debug, Clone)]
pub struct SplitGraphs {
    pub g_a: Multigraph,
    pub g_b: Multigraph,
    pub h: Multigraph,
    /// G_A ∪ G_B plus the selected center edges of H.
    pub g_ab: Multigraph,
    pub moved: Vec<EdgeId>,
}

/// Splits `g` along `part` and chooses ⌊(d_B(x) − d_A(x))/2⌋ center edges of
/// H to join G_A ∪ G_B.
pub fn build_split(g: &Multigraph, part: &Partition, x: Vertex, cond: Condition) -> SplitGraphs {
    let g_a = g.filter_edges(|_, u, v| part.in_a(u) && part.in_a(v));
    let g_b = g.filter_edges(|_, u, v| !part.in_a(u) && !part.in_a(v));
    let h = g.filter_edges(|_, u, v| part.in_a(u) != part.in_a(v));
    let (da, db) = part.side_degrees(g, x, false);
    let want = db.saturating_sub(da) / 2;
    let nbrs: Vec<Vertex> = g.neighbors(x).into_iter().filter(|&u| !part.in_a(u)).collect();
    let bundle: Vec<usize> = nbrs.iter().map(|&u| g.multiplicity(x, u)).collect();
    let mut take = vec![0usize; nbrs.len()];
    let mut total = 0;
    if cond == Condition::C {
        for (t, &e) in take.iter_mut().zip(&bundle) {
            *t = (e / 2).min(want.saturating_sub(total));
            total += *t;
        }
        for (t, &e) in take.iter_mut().zip(&bundle) {
            if total >= want {
                break;
            }
            if e % 2 == 1 {
                *t += 1;
                total += 1;
            }
        }
    } else {
        let cap: Vec<usize> = match cond {
            Condition::B => bundle.iter().map(|&e| e.div_ceil(2)).collect(),
            _ => bundle.clone(),
        };
        while total < want {
            let mut progressed = false;
            for idx in 0..nbrs.len() {
                if total < want && take[idx] < cap[idx] {
                    take[idx] += 1;
                    total += 1;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
    }
    let mut moved = Vec::new();
    for (idx, &u) in nbrs.iter().enumerate() {
        moved.extend(g.edges_between(x, u).iter().take(take[idx]));
    }
    moved.sort_unstable();
    let mut is_moved = vec![false; g.edge_capacity()];
    for &e in &moved {
        is_moved[e] = true;
    }
    let g_ab = g.filter_edges(|e, u, v| part.in_a(u) == part.in_a(v) || is_moved[e]);
    SplitGraphs {
        g_a,
        g_b,
        h,
        g_ab,
        moved,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::complete;

    #[test]
    fn empty_graph_pairs_separated() {
        let g = Multigraph::new(4);
        let p = balanced_partition(&g, &[(0, 1)], 3).unwrap();
        assert_ne!(p.in_a(0), p.in_a(1));
        assert_eq!(p.a().len(), 2);
    }

    #[test]
    fn complete_graph_always_balanced() {
        let g = complete(10);
        let p = balanced_partition(&g, &[(0, 9), (3, 4)], 11).unwrap();
        assert_eq!(p.retries, 0);
        let audit = audit_partition(&g, &p);
        assert!(audit.ok());
        assert!(audit.max_imbalance <= 1);
    }

    #[test]
    fn bad_pairs_rejected() {
        let g = complete(6);
        assert!(balanced_partition(&g, &[(0, 1), (1, 2)], 0).is_err());
        assert!(balanced_partition(&complete(5), &[(0, 1)], 0).is_err());
    }

    #[test]
    fn center_moves_to_a() {
        let g = complete(6);
        let p = Partition::from_sides(6, &[1, 2, 3], vec![(0, 1)]);
        let q = adjust_for_center(&p, &g, 0, &[]);
        assert!(q.in_a(0) && !q.in_a(1));
        let (da, db) = q.side_degrees(&g, 0, false);
        assert!(db >= da);
    }

    #[test]
    fn nb_vertex_moves_to_b_with_partner_swap() {
        let g = Multigraph::build(6, &[(0, 1, 1), (0, 2, 3), (0, 4, 1), (3, 5, 1)]).unwrap();
        let p = Partition::from_sides(6, &[0, 2, 5], vec![(0, 1), (2, 3)]);
        let q = adjust_for_center(&p, &g, 0, &[2]);
        assert!(!q.in_a(2) && q.in_a(3));
        assert_eq!(q.a().len(), 3);
        assert!(q.pairs.iter().all(|&(a, b)| q.in_a(a) != q.in_a(b)));
    }

    #[test]
    fn five_b_edges_select_two() {
        let g = Multigraph::build(4, &[(0, 2, 3), (0, 3, 2)]).unwrap();
        let p = Partition::from_sides(4, &[0, 1], vec![(0, 2)]);
        let s = build_split(&g, &p, 0, Condition::A);
        assert_eq!(s.moved.len(), 2);
        assert_eq!(s.g_ab.degree(0), 2);
        assert_eq!(s.g_a.edge_count() + s.g_b.edge_count() + s.h.edge_count(), g.edge_count());
    }

    #[test]
    fn condition_c_bundles_split_in_half() {
        let g = Multigraph::build(6, &[(0, 3, 3), (0, 4, 3), (0, 5, 1)]).unwrap();
        let p = Partition::from_sides(6, &[0, 1, 2], vec![(0, 3)]);
        let s = build_split(&g, &p, 0, Condition::C);
        assert_eq!(s.g_ab.degree(0), 3);
        for u in [3, 4, 5] {
            let e = g.multiplicity(0, u);
            let got = s.g_ab.multiplicity(0, u);
            assert!(got >= e / 2 && got <= e.div_ceil(2), "bundle {u}: {got} of {e}");
        }
    }
}
