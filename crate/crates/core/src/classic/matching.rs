use super::{dirac_hamiltonian, ClassicError};
use crate::graph::{EdgeId, Multigraph, Vertex};
use std::collections::VecDeque;

/// True when `m` is a set of pairwise disjoint edges covering `vertices`
/// exactly.
pub fn is_perfect_matching(g: &Multigraph, vertices: &[Vertex], m: &[EdgeId]) -> bool {
    let mut want = vec![false; g.vertex_count()];
    for &v in vertices {
        want[v] = true;
    }
    let mut hit = vec![false; g.vertex_count()];
    for &e in m {
        let Some((u, v)) = g.endpoints(e) else { return false };
        for w in [u, v] {
            if !want[w] || hit[w] {
                return false;
            }
            hit[w] = true;
        }
    }
    vertices.iter().all(|&v| hit[v])
}

fn lowest_edge(g: &Multigraph, u: Vertex, v: Vertex) -> EdgeId {
    *g.edges_between(u, v).iter().min().expect("adjacent")
}

/// Maximum matching between `left` and `right` (Hopcroft–Karp, neighbours
/// scanned in index order).
pub fn max_bipartite_matching(g: &Multigraph, left: &[Vertex], right: &[Vertex]) -> Vec<EdgeId> {
    const NONE: usize = usize::MAX;
    let n = g.vertex_count();
    let mut is_right = vec![false; n];
    for &r in right {
        is_right[r] = true;
    }
    let adj: Vec<Vec<Vertex>> = left
        .iter()
        .map(|&l| g.neighbors(l).into_iter().filter(|&r| is_right[r]).collect())
        .collect();
    let mut mate_l = vec![NONE; left.len()];
    let mut mate_r = vec![NONE; n];
    let mut dist = vec![0usize; left.len()];
    loop {
        let mut queue = VecDeque::new();
        let mut found = false;
        for i in 0..left.len() {
            if mate_l[i] == NONE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = NONE;
            }
        }
        while let Some(i) = queue.pop_front() {
            for &r in &adj[i] {
                let j = mate_r[r];
                if j == NONE {
                    found = true;
                } else if dist[j] == NONE {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left.len()];
        for i in 0..left.len() {
            if mate_l[i] == NONE {
                augment(i, &adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    let mut out: Vec<EdgeId> = (0..left.len())
        .filter(|&i| mate_l[i] != NONE)
        .map(|i| lowest_edge(g, left[i], mate_l[i]))
        .collect();
    out.sort_unstable();
    out
}

fn augment(
    i: usize,
    adj: &[Vec<Vertex>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[i] < adj[i].len() {
        let r = adj[i][it[i]];
        it[i] += 1;
        let j = mate_r[r];
        if j == usize::MAX || (dist[j] == dist[i] + 1 && augment(j, adj, mate_l, mate_r, dist, it)) {
            mate_l[i] = r;
            mate_r[r] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

pub fn bipartite_perfect_matching(
    g: &Multigraph,
    left: &[Vertex],
    right: &[Vertex],
) -> Result<Vec<EdgeId>, ClassicError> {
    if left.len() != right.len() {
        return Err(ClassicError::PreconditionViolated(format!(
            "sides of size {} and {}",
            left.len(),
            right.len()
        )));
    }
    let m = max_bipartite_matching(g, left, right);
    if m.len() == left.len() {
        Ok(m)
    } else {
        Err(ClassicError::NoPerfectMatching)
    }
}

/// Perfect matching of a bipartite star-multigraph with center `x`: `x` is
/// matched to its lowest neighbour, the rest by augmenting paths.
pub fn perfect_matching_bipartite_star(
    g: &Multigraph,
    left: &[Vertex],
    right: &[Vertex],
    x: Vertex,
    t: usize,
) -> Result<Vec<EdgeId>, ClassicError> {
    let n = left.len();
    if right.len() != n {
        return Err(ClassicError::PreconditionViolated("unequal sides".into()));
    }
    if t < 1 || t + 1 > n {
        return Err(ClassicError::PreconditionViolated(format!("t = {t} outside [1, {}]", n.saturating_sub(1))));
    }
    let all: Vec<Vertex> = left.iter().chain(right).copied().collect();
    let mut low_simple = 0;
    for &v in &all {
        if g.degree(v) == 0 {
            return Err(ClassicError::PreconditionViolated(format!("vertex {v} is isolated")));
        }
        let d_minus_x = g.degree(v) - g.multiplicity(v, x);
        if v != x && d_minus_x < t {
            return Err(ClassicError::PreconditionViolated(format!("d_(G−x)({v}) = {d_minus_x} < t = {t}")));
        }
        if (2 * g.simple_degree(v)) < n + 2 {
            low_simple += 1;
        }
    }
    if low_simple > t {
        return Err(ClassicError::PreconditionViolated(format!(
            "{low_simple} vertices have simple degree below n/2 + 1"
        )));
    }
    let (own, other) = if left.contains(&x) { (left, right) } else { (right, left) };
    let y = g
        .neighbors(x)
        .into_iter()
        .find(|v| other.contains(v))
        .ok_or(ClassicError::NoPerfectMatching)?;
    let rest_l: Vec<Vertex> = own.iter().copied().filter(|&v| v != x).collect();
    let rest_r: Vec<Vertex> = other.iter().copied().filter(|&v| v != y).collect();
    let mut m = bipartite_perfect_matching(g, &rest_l, &rest_r)?;
    m.push(lowest_edge(g, x, y));
    m.sort_unstable();
    Ok(m)
}

/// Perfect matching of a graph on 2n vertices with δ ≥ 1 where all but at
/// most one vertex have simple degree at least n + 1.
pub fn perfect_matching_dense(g: &Multigraph) -> Result<Vec<EdgeId>, ClassicError> {
    let active: Vec<Vertex> = (0..g.vertex_count()).collect();
    perfect_matching_dense_on(g, &active)
}

/// As [`perfect_matching_dense`] on the subgraph induced by `vertices`.
pub fn perfect_matching_dense_on(g: &Multigraph, vertices: &[Vertex]) -> Result<Vec<EdgeId>, ClassicError> {
    let order = vertices.len();
    if order % 2 == 1 || order == 0 {
        return Err(ClassicError::PreconditionViolated(format!("order {order} is not a positive even number")));
    }
    let n = order / 2;
    let mut inside = vec![false; g.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let nbrs = |v: Vertex| -> Vec<Vertex> { g.neighbors(v).into_iter().filter(|&u| inside[u]).collect() };
    let degs: Vec<usize> = vertices.iter().map(|&v| nbrs(v).len()).collect();
    if degs.contains(&0) {
        return Err(ClassicError::PreconditionViolated("isolated vertex".into()));
    }
    if degs.iter().filter(|&&d| d < n + 1).count() > 1 {
        return Err(ClassicError::PreconditionViolated(format!(
            "more than one vertex of degree below n + 1 = {}",
            n + 1
        )));
    }
    let (pos, _) = degs.iter().enumerate().min_by_key(|&(i, &d)| (d, i)).unwrap();
    let u = vertices[pos];
    let v = nbrs(u)[0];
    let mut m = vec![lowest_edge(g, u, v)];
    let rest: Vec<Vertex> = vertices.iter().copied().filter(|&w| w != u && w != v).collect();
    match rest.len() {
        0 => {}
        2 => m.push(lowest_edge(g, rest[0], rest[1])),
        _ => {
            let (sub, old, _) = g.induced_relabel(&rest);
            let cyc = dirac_hamiltonian(&sub)?;
            for i in (0..cyc.len()).step_by(2) {
                m.push(lowest_edge(g, old[cyc[i]], old[cyc[i + 1]]));
            }
        }
    }
    m.sort_unstable();
    Ok(m)
}
