//! Graph generators and clause-engineered fixtures.

use crate::engine::{classify_condition, Classification, Condition, EngineParams};
use crate::graph::{deficiency_report, Multigraph, Vertex};
use crate::reduction::{compute_w, dispatch_case, ReductionCase};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Multigraph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Multigraph::from_simple_edges(n, &edges).unwrap()
}

/// K_n without the edges (0,1), (2,3), ..., `m` of them.
pub fn complete_minus_matching(n: usize, m: usize) -> Result<Multigraph, GenError> {
    if 2 * m > n {
        return Err(GenError::InfeasibleParams(format!("matching of size {m} on {n} vertices")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !(u % 2 == 0 && v == u + 1 && u / 2 < m) {
                edges.push((u, v));
            }
        }
    }
    Ok(Multigraph::from_simple_edges(n, &edges).unwrap())
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::from_simple_edges(10, &edges).unwrap()
}

/// The Petersen graph with vertex 9 deleted (9 vertices, 12 edges).
pub fn petersen_minus_vertex() -> Multigraph {
    let p = petersen();
    let (g, _, _) = p.induced_relabel(&(0..9).collect::<Vec<_>>());
    g
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Multigraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Multigraph::from_simple_edges(n, &edges).unwrap()
}

/// G(n, p) with every vertex then lifted to simple degree at least `floor`
/// by joining it to random non-neighbours.
pub fn random_dense(n: usize, p: f64, floor: usize, seed: u64) -> Result<Multigraph, GenError> {
    if n > 0 && floor >= n {
        return Err(GenError::InfeasibleParams(format!("degree floor {floor} on {n} vertices")));
    }
    let mut r = rng(seed);
    let mut c = Canvas::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                c.add(u, v);
            }
        }
    }
    for v in 0..n {
        while c.deg[v] < floor {
            let cands: Vec<Vertex> = (0..n).filter(|&u| u != v && c.m[v][u] == 0).collect();
            let u = *cands.choose(&mut r).unwrap();
            c.add(u, v);
        }
    }
    Ok(c.build())
}

/// Simple graph with minimum degree at least `d`.
pub fn random_min_degree(n: usize, d: usize, seed: u64) -> Multigraph {
    let p = if n > 1 { d as f64 / (n - 1) as f64 } else { 0.0 };
    random_dense(n, p * 0.9, d, seed).expect("degree floor below order")
}

/// Random simple `d`-regular graph: a circulant scrambled by edge switches
/// and a vertex relabelling.
pub fn regular(n: usize, d: usize, seed: u64) -> Result<Multigraph, GenError> {
    Ok(regular_canvas(n, d, seed)?.build())
}

fn regular_canvas(n: usize, d: usize, seed: u64) -> Result<Canvas, GenError> {
    if d >= n.max(1) || (n * d) % 2 == 1 {
        return Err(GenError::InfeasibleParams(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut r = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut r);
    let mut c = Canvas::new(n);
    for i in 0..n {
        for o in 1..=d / 2 {
            let j = (i + o) % n;
            if c.m[perm[i]][perm[j]] == 0 {
                c.add(perm[i], perm[j]);
            }
        }
        if d % 2 == 1 && i < n / 2 {
            c.add(perm[i], perm[i + n / 2]);
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = c.edge_list();
    for _ in 0..4 * edges.len() {
        let i = r.gen_range(0..edges.len());
        let j = r.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let (x, y) = if r.gen_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
        if a == x || a == y || b == x || b == y || c.m[a][x] > 0 || c.m[b][y] > 0 {
            continue;
        }
        c.remove(a, b);
        c.remove(x, y);
        c.add(a, x);
        c.add(b, y);
        edges[i] = (a, x);
        edges[j] = (b, y);
    }
    Ok(c)
}

/// Bipartite multigraph on `n` vertices (sides ⌊n/2⌋ and ⌈n/2⌉): each cross
/// pair is joined with probability `p` by 1..=`mu` parallel edges.
pub fn random_bipartite_multigraph(n: usize, mu: usize, p: f64, seed: u64) -> Multigraph {
    let mut r = rng(seed);
    let half = n / 2;
    let mut list = Vec::new();
    for u in 0..half {
        for v in half..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                list.push((u, v, r.gen_range(1..=mu.max(1))));
            }
        }
    }
    Multigraph::build(n, &list).unwrap()
}

/// G(n, p) whose edges at vertex 0 get multiplicity up to `mu`.
pub fn random_star_multigraph(n: usize, p: f64, mu: usize, seed: u64) -> Multigraph {
    let mut r = rng(seed);
    let mut list = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                let m = if u == 0 { r.gen_range(1..=mu.max(1)) } else { 1 };
                list.push((u, v, m));
            }
        }
    }
    Multigraph::build(n, &list).unwrap()
}

/// Dense adjacency-count matrix used while building fixtures.
struct Canvas {
    n: usize,
    m: Vec<Vec<u32>>,
    deg: Vec<usize>,
}

impl Canvas {
    fn new(n: usize) -> Self {
        Canvas {
            n,
            m: vec![vec![0; n]; n],
            deg: vec![0; n],
        }
    }

    fn add(&mut self, u: Vertex, v: Vertex) {
        self.m[u][v] += 1;
        self.m[v][u] += 1;
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn remove(&mut self, u: Vertex, v: Vertex) {
        assert!(self.m[u][v] > 0);
        self.m[u][v] -= 1;
        self.m[v][u] -= 1;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }

    fn nbrs(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.n).filter(|&u| self.m[v][u] > 0).collect()
    }

    fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                for _ in 0..self.m[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn build(&self) -> Multigraph {
        let mut list = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.m[u][v] > 0 {
                    list.push((u, v, self.m[u][v] as usize));
                }
            }
        }
        Multigraph::build(self.n, &list).unwrap()
    }

    /// Adds a parallel `x`–`t` edge keeping all degrees: `x`–`a` and `t`–`b`
    /// are traded for `x`–`t` and `a`–`b`. `a` is a neighbour of `x` outside
    /// `keep`.
    fn thicken(&mut self, x: Vertex, t: Vertex, keep: &[Vertex]) -> bool {
        for a in self.nbrs(x) {
            if a == t || keep.contains(&a) {
                continue;
            }
            for b in self.nbrs(t) {
                if b != x && b != a && self.m[t][b] == 1 && self.m[a][b] == 0 {
                    self.remove(x, a);
                    self.remove(t, b);
                    self.add(x, t);
                    self.add(a, b);
                    return true;
                }
            }
        }
        false
    }

    /// Lowers the degrees of `p` and `q` by one each (twice `p` if equal),
    /// leaving every other degree unchanged and avoiding `avoid`.
    fn drop_pair(&mut self, p: Vertex, q: Vertex, avoid: &[Vertex]) -> bool {
        if p != q && self.m[p][q] == 1 {
            self.remove(p, q);
            return true;
        }
        let ok = |v: Vertex| v != p && v != q && !avoid.contains(&v);
        for a in self.nbrs(p) {
            if !ok(a) || self.m[p][a] != 1 {
                continue;
            }
            for b in self.nbrs(q) {
                if ok(b) && b != a && self.m[q][b] == 1 && self.m[a][b] == 0 {
                    self.remove(p, a);
                    self.remove(q, b);
                    self.add(a, b);
                    return true;
                }
            }
        }
        false
    }
}

fn infeasible(msg: impl Into<String>) -> GenError {
    GenError::InfeasibleParams(msg.into())
}

fn even_down(d: usize) -> usize {
    d - d % 2
}

/// Even-order instance engineered clause by clause to fall under `cond` at
/// the given ε and η; audited with the classifier before returning.
pub fn dcolor_fixture(cond: Condition, order: usize, epsilon: f64, eta: f64, seed: u64) -> Result<Multigraph, GenError> {
    if order < 8 || order % 2 == 1 {
        return Err(infeasible(format!("fixture order must be even and at least 8, got {order}")));
    }
    let n = (order / 2) as f64;
    let d = (((1.0 + epsilon) * n + (order - 1) as f64) / 2.0).ceil() as usize;
    if d >= order {
        return Err(infeasible(format!("degree {d} too large for order {order}")));
    }
    let mut c = regular_canvas(order, d, seed)?;
    let x = 0;
    let xs = c.nbrs(x);
    let small_mu = (eta * n).ceil() as usize > 2;
    match cond {
        Condition::A => {
            if small_mu && !c.thicken(x, xs[0], &[]) {
                return Err(infeasible("could not thicken a center edge"));
            }
        }
        Condition::B => {
            for &t in &xs[..2] {
                if !c.thicken(x, t, &xs[..2]) {
                    return Err(infeasible("could not thicken a center edge"));
                }
            }
            let (y, z) = far_adjacent_pair(&c, x).ok_or_else(|| infeasible("no (y, z) pair"))?;
            let before = c.m[y][z];
            // Thicken y–z with y in the role of the center.
            let keep: Vec<Vertex> = vec![x, z];
            if !c.thicken(y, z, &keep) || c.m[y][z] != before + 1 {
                return Err(infeasible("could not thicken the (y, z) pair"));
            }
        }
        Condition::C => {
            let root = n.sqrt();
            let others = (root - 1e-9).floor() as usize;
            if others < 2 {
                return Err(infeasible("order too small for a center of simple degree below sqrt(n)"));
            }
            let others = others - 1;
            let sy = ((3.0 * epsilon + 1.0) / 2.0 * n).ceil() as usize;
            let ty = (d + 1).saturating_sub(sy).max(2);
            let rest = d - ty;
            let mut targets = vec![(xs[0], ty)];
            for j in 0..others {
                targets.push((xs[1 + j], rest / others + usize::from(j < rest % others)));
            }
            let keep: Vec<Vertex> = targets.iter().map(|t| t.0).collect();
            for &(t, want) in &targets {
                while (c.m[x][t] as usize) < want {
                    if !c.thicken(x, t, &keep) {
                        return Err(infeasible("ran out of switches while concentrating the center"));
                    }
                }
            }
        }
        Condition::D => {
            if small_mu && !c.thicken(x, xs[0], &[]) {
                return Err(infeasible("could not thicken a center edge"));
            }
            let free: Vec<Vertex> = (1..order).filter(|&v| c.m[x][v] == 0).collect();
            if free.len() < 2 {
                return Err(infeasible("no two vertices outside the center's neighbourhood"));
            }
            let (y, z) = (free[0], free[1]);
            let t = ((0.25 * (1.0 - 0.9 * epsilon) * n).floor() as usize).max(1);
            for _ in 0..t {
                if !c.drop_pair(y, z, &[x]) {
                    return Err(infeasible("could not lower the degrees of y and z"));
                }
            }
            // y–z may have been removed directly; both still lost one per round.
        }
        Condition::E => {
            let q = ((eta * n).ceil() as usize).max(1);
            let mut u = ((eta * n).ceil() as usize).max(3);
            u += u % 2;
            let us: Vec<Vertex> = (order - u..order).collect();
            for _ in 0..q {
                for pair in us.chunks(2) {
                    if !c.drop_pair(pair[0], pair[1], &[x]) {
                        return Err(infeasible("could not create the deficient set U"));
                    }
                }
            }
        }
    }
    let g = c.build();
    let params = EngineParams::new(epsilon).with_eta(eta);
    match classify_condition(&g, &params) {
        Classification::Matched(m) if m.condition == cond => Ok(g),
        Classification::Matched(m) => Err(infeasible(format!(
            "built instance falls under condition {:?} instead",
            m.condition
        ))),
        Classification::NotApplicable(_) => Err(infeasible("built instance satisfies no condition at these parameters")),
    }
}

/// An adjacent pair away from `x` and its neighbourhood.
fn far_adjacent_pair(c: &Canvas, x: Vertex) -> Option<(Vertex, Vertex)> {
    for y in 1..c.n {
        if c.m[x][y] > 0 {
            continue;
        }
        for z in y + 1..c.n {
            if c.m[x][z] == 0 && c.m[y][z] == 1 {
                return Some((y, z));
            }
        }
    }
    None
}

/// Odd-order simple graph whose deficient set W lands in the given case of
/// the reduction; audited for non-overfullness, density and dispatch.
pub fn case_fixture(case: ReductionCase, order: usize, epsilon: f64, eta: f64, seed: u64) -> Result<Multigraph, GenError> {
    if order < 7 || order.is_multiple_of(2) {
        return Err(infeasible(format!("case fixture order must be odd and at least 7, got {order}")));
    }
    let n = order.div_ceil(2);
    let nf = n as f64;
    let floor = ((1.0 + epsilon) * nf).ceil() as usize;
    let eta_n = eta * nf;
    let unit = (eta_n.ceil() as usize).max(1);
    let pick_d = |q: usize| even_down((floor + q + order - 1) / 2).min(even_down(order - 1));
    // Deficiency units: list of (vertex, amount).
    let mut plan: Vec<(Vertex, usize)> = Vec::new();
    let d;
    match case {
        ReductionCase::Two => {
            if eta_n <= 1.0 {
                return Err(infeasible("ηn ≤ 1: every deficient vertex would lie in W"));
            }
            d = pick_d(1);
            for v in 0..d {
                plan.push((v, 1));
            }
        }
        ReductionCase::One => {
            let mut w = ((2.0 * eta_n).ceil() as usize).max(2);
            w += w % 2;
            // ⌊ηn⌋ vertices of W must absorb δ center edges between them.
            let head = (eta_n.floor() as usize).max(1);
            let q0 = unit.max(floor.div_ceil(head));
            let d0 = pick_d(q0);
            let q = unit.max(d0.div_ceil(head + 1));
            d = d0;
            for v in 0..w {
                plan.push((v, q));
            }
        }
        ReductionCase::Three => {
            let w = nf.sqrt().ceil() as usize;
            if (w as f64) >= 2.0 * eta_n {
                return Err(infeasible("no room between sqrt(n) and 2ηn"));
            }
            let d0 = pick_d(floor.div_ceil(w));
            let mut q = unit.max((d0 + 1).div_ceil(w));
            if (w * q) % 2 == 1 {
                q += 1;
            }
            d = d0;
            for v in 0..w {
                plan.push((v, q));
            }
        }
        ReductionCase::Four => {
            if eta_n <= 1.0 {
                return Err(infeasible("ηn ≤ 1: the single-unit deficiencies would join W"));
            }
            let w = ((nf.sqrt() - 1e-9).floor() as usize).clamp(1, 3);
            d = pick_d(unit);
            if w * unit > d {
                return Err(infeasible("W deficiency exceeds Δ"));
            }
            for v in 0..w {
                plan.push((v, unit));
            }
            for v in w..w + (d - w * unit) {
                plan.push((v, 1));
            }
        }
    }
    let mut c = regular_canvas(order, d, seed)?;
    let mut units: Vec<Vertex> = Vec::new();
    let maxq = plan.iter().map(|p| p.1).max().unwrap_or(0);
    for round in 0..maxq {
        for &(v, q) in &plan {
            if round < q {
                units.push(v);
            }
        }
    }
    if units.len() % 2 == 1 {
        return Err(infeasible("odd total deficiency"));
    }
    for pair in units.chunks(2) {
        if !c.drop_pair(pair[0], pair[1], &[]) {
            return Err(infeasible("could not realise the deficiency plan"));
        }
    }
    let g = c.build();
    let rep = deficiency_report(&g);
    if rep.overfull {
        return Err(infeasible("fixture is overfull"));
    }
    if (g.min_degree() as f64) < (1.0 + epsilon) * nf {
        return Err(infeasible(format!("δ = {} below (1+ε)n", g.min_degree())));
    }
    let w = compute_w(&g, eta);
    let got = dispatch_case(w.len(), n, eta);
    if got != case {
        return Err(infeasible(format!("|W| = {} dispatches to {got:?}", w.len())));
    }
    Ok(g)
}
