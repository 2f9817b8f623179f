use super::ClassicError;
use crate::graph::{Multigraph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Vertex-disjoint paths covering a vertex set, path `i` running from
/// `endpoints[i].0` to `endpoints[i].1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCover {
    pub paths: Vec<Vec<Vertex>>,
    pub endpoints: Vec<(Vertex, Vertex)>,
}

/// Checks disjointness, coverage of `vertices`, endpoints and adjacency.
pub fn audit_path_cover(g: &Multigraph, vertices: &[Vertex], cover: &PathCover) -> Result<(), String> {
    if cover.paths.len() != cover.endpoints.len() {
        return Err("path and endpoint counts differ".into());
    }
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (i, p) in cover.paths.iter().enumerate() {
        let (a, b) = cover.endpoints[i];
        if p.first() != Some(&a) || p.last() != Some(&b) {
            return Err(format!("path {i} does not join {a} to {b}"));
        }
        for &v in p {
            if owner[v] != usize::MAX {
                return Err(format!("vertex {v} lies on paths {} and {i}", owner[v]));
            }
            owner[v] = i;
        }
        if let Some(w) = p.windows(2).find(|w| g.multiplicity(w[0], w[1]) == 0) {
            return Err(format!("{} and {} are consecutive on path {i} but not adjacent", w[0], w[1]));
        }
    }
    let covered = cover.paths.iter().map(Vec::len).sum::<usize>();
    if covered != vertices.len() || vertices.iter().any(|&v| owner[v] == usize::MAX) {
        return Err("paths do not cover the vertex set exactly".into());
    }
    Ok(())
}

fn check_pairs(g: &Multigraph, vertices: &[Vertex], pairs: &[(Vertex, Vertex)]) -> Result<(), ClassicError> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut used = vec![false; g.vertex_count()];
    for &(a, b) in pairs {
        for v in [a, b] {
            if v >= g.vertex_count() || !inside[v] {
                return Err(ClassicError::PreconditionViolated(format!("pair vertex {v} outside the graph")));
            }
            if used[v] {
                return Err(ClassicError::PreconditionViolated(format!("vertex {v} appears in two pairs")));
            }
            used[v] = true;
        }
        if a == b {
            return Err(ClassicError::PreconditionViolated(format!("degenerate pair ({a}, {a})")));
        }
    }
    if pairs.is_empty() && !vertices.is_empty() {
        return Err(ClassicError::PreconditionViolated("no pairs".into()));
    }
    Ok(())
}

/// Spanning paths of `G[vertices]` with prescribed ends, found by inserting
/// free vertices and repairing non-adjacent consecutive vertices through
/// segment reversals and vertex moves. Density bounds are not checked.
pub fn build_path_cover(
    g: &Multigraph,
    vertices: &[Vertex],
    pairs: &[(Vertex, Vertex)],
    seed: u64,
) -> Result<PathCover, ClassicError> {
    check_pairs(g, vertices, pairs)?;
    let adj = g.adjacency_matrix();
    let ok = |p: Vertex, q: Vertex| adj[p][q];
    let mut paths: Vec<Vec<Vertex>> = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
    let mut placed = vec![false; g.vertex_count()];
    for &(a, b) in pairs {
        placed[a] = true;
        placed[b] = true;
    }
    for &v in vertices {
        if placed[v] {
            continue;
        }
        placed[v] = true;
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, p) in paths.iter().enumerate() {
            for s in 0..p.len() - 1 {
                let score = usize::from(ok(p[s], v)) + usize::from(ok(v, p[s + 1])) + 2 * usize::from(!ok(p[s], p[s + 1]));
                if best.is_none_or(|(sc, _, _)| score > sc) {
                    best = Some((score, i, s));
                }
            }
        }
        let (_, i, s) = best.expect("at least one path");
        paths[i].insert(s + 1, v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 40 * vertices.len() + 200;
    for _ in 0..budget {
        let Some((i, s)) = first_gap(&paths, &ok) else {
            let cover = PathCover {
                paths,
                endpoints: pairs.to_vec(),
            };
            debug_assert!(audit_path_cover(g, vertices, &cover).is_ok());
            return Ok(cover);
        };
        if reverse_fix(&mut paths[i], s, &ok) || move_fix(&mut paths, i, s, &ok) {
            continue;
        }
        perturb(&mut paths, i, s, &ok, &mut rng);
    }
    Err(ClassicError::CoverFailed(format!("gaps remain after {budget} repairs")))
}

fn first_gap(paths: &[Vec<Vertex>], ok: &impl Fn(Vertex, Vertex) -> bool) -> Option<(usize, usize)> {
    for (i, p) in paths.iter().enumerate() {
        if let Some(s) = (0..p.len() - 1).find(|&s| !ok(p[s], p[s + 1])) {
            return Some((i, s));
        }
    }
    None
}

fn gaps_in(p: &[Vertex], ok: &impl Fn(Vertex, Vertex) -> bool) -> usize {
    p.windows(2).filter(|w| !ok(w[0], w[1])).count()
}

/// Reverses an inner segment so that the gap at `s` disappears without
/// creating a new one.
fn reverse_fix(p: &mut [Vertex], s: usize, ok: &impl Fn(Vertex, Vertex) -> bool) -> bool {
    let (a, b) = (p[s], p[s + 1]);
    let before = gaps_in(p, ok);
    for j in s + 2..p.len() - 1 {
        if ok(a, p[j]) && ok(b, p[j + 1]) {
            p[s + 1..=j].reverse();
            if gaps_in(p, ok) < before {
                return true;
            }
            p[s + 1..=j].reverse();
        }
    }
    for j in 0..s {
        if ok(p[j], a) && ok(p[j + 1], b) {
            p[j + 1..=s].reverse();
            if gaps_in(p, ok) < before {
                return true;
            }
            p[j + 1..=s].reverse();
        }
    }
    false
}

/// Moves an inner vertex adjacent to both sides of the gap into it, when
/// that does not open a gap where it was taken from.
fn move_fix(paths: &mut [Vec<Vertex>], i: usize, s: usize, ok: &impl Fn(Vertex, Vertex) -> bool) -> bool {
    let (a, b) = (paths[i][s], paths[i][s + 1]);
    for j in 0..paths.len() {
        for pos in 1..paths[j].len().saturating_sub(1) {
            let w = paths[j][pos];
            if w == a || w == b || !ok(a, w) || !ok(w, b) {
                continue;
            }
            let (l, r) = (paths[j][pos - 1], paths[j][pos + 1]);
            if !ok(l, r) && ok(l, w) && ok(w, r) {
                continue;
            }
            paths[j].remove(pos);
            let s = if j == i && pos <= s { s - 1 } else { s };
            paths[i].insert(s + 1, w);
            return true;
        }
    }
    false
}

/// Moves a random inner vertex next to one side of the gap.
fn perturb(paths: &mut [Vec<Vertex>], i: usize, s: usize, ok: &impl Fn(Vertex, Vertex) -> bool, rng: &mut ChaCha8Rng) {
    let a = paths[i][s];
    let mut cands = Vec::new();
    for (j, p) in paths.iter().enumerate() {
        for pos in 1..p.len().saturating_sub(1) {
            if ok(a, p[pos]) && !(j == i && (pos == s || pos == s + 1)) {
                cands.push((j, pos));
            }
        }
    }
    if cands.is_empty() {
        return;
    }
    let (j, pos) = cands[rng.gen_range(0..cands.len())];
    let w = paths[j].remove(pos);
    let s = if j == i && pos <= s { s - 1 } else { s };
    paths[i].insert(s + 1, w);
}

/// Cover of `g` for the pairs `m` under the density and size bounds
/// δ ≥ (1+ε)n/2 and |M| ≤ εn/8.
pub fn path_cover_matching(g: &Multigraph, m: &[(Vertex, Vertex)], epsilon: f64) -> Result<PathCover, ClassicError> {
    let n = g.vertex_count();
    let vertices: Vec<Vertex> = (0..n).collect();
    check_pairs(g, &vertices, m)?;
    let delta = (0..n).map(|v| g.simple_degree(v)).min().unwrap_or(0);
    if (delta as f64) < (1.0 + epsilon) * n as f64 / 2.0 {
        return Err(ClassicError::PreconditionViolated(format!("δ = {delta} below (1+ε)n/2")));
    }
    if m.len() as f64 > epsilon * n as f64 / 8.0 {
        return Err(ClassicError::PreconditionViolated(format!("|M| = {} above εn/8", m.len())));
    }
    build_path_cover(g, &vertices, m, 0)
}

/// Cover of a star-multigraph with center `x`: the pairs are rerouted around
/// `x`, `G − x` is covered, and `x` is spliced back in.
pub fn path_cover_star(
    g: &Multigraph,
    m: &[(Vertex, Vertex)],
    x: Vertex,
    vertices: &[Vertex],
) -> Result<PathCover, ClassicError> {
    check_pairs(g, vertices, m)?;
    let mut pairs = m.to_vec();
    if let Some(idx) = pairs.iter().position(|&(a, b)| a == x || b == x) {
        let (a, b) = pairs.remove(idx);
        pairs.push(if a == x { (a, b) } else { (b, a) });
    }
    let t = pairs.len();
    let in_pairs = |v: Vertex| pairs.iter().any(|&(a, b)| a == v || b == v);
    let free: Vec<Vertex> = g
        .neighbors(x)
        .into_iter()
        .filter(|&v| !in_pairs(v) && vertices.contains(&v))
        .collect();
    if free.len() < 2 {
        return Err(ClassicError::TooFewCenterNeighbors(x));
    }
    let rest: Vec<Vertex> = vertices.iter().copied().filter(|&v| v != x).collect();
    let g_minus_x = g.without_vertices(&[x]);
    let (at, bt) = pairs[t - 1];
    let cover = if at == x {
        let mut mp = pairs.clone();
        mp[t - 1] = (free[0], bt);
        let sub = build_path_cover(&g_minus_x, &rest, &mp, 0)?;
        let mut paths = sub.paths;
        paths[t - 1].insert(0, x);
        PathCover {
            paths,
            endpoints: pairs.clone(),
        }
    } else {
        let (x1, x2) = (free[0], free[1]);
        let mut mp = pairs.clone();
        mp[t - 1] = (at, x1);
        mp.push((x2, bt));
        let sub = build_path_cover(&g_minus_x, &rest, &mp, 0)?;
        let mut paths = sub.paths;
        let tail = paths.pop().expect("t + 1 paths");
        paths[t - 1].push(x);
        paths[t - 1].extend(tail);
        PathCover {
            paths,
            endpoints: pairs.clone(),
        }
    };
    // Restore the caller's pair order and orientation.
    let mut paths = Vec::with_capacity(t);
    for &(a, b) in m {
        let p = cover
            .paths
            .iter()
            .find(|p| (p[0] == a && p[p.len() - 1] == b) || (p[0] == b && p[p.len() - 1] == a))
            .expect("every pair has a path");
        let mut p = p.clone();
        if p[0] != a {
            p.reverse();
        }
        paths.push(p);
    }
    Ok(PathCover {
        paths,
        endpoints: m.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn k6_single_pair() {
        let g = gen::complete(6);
        let c = build_path_cover(&g, &(0..6).collect::<Vec<_>>(), &[(0, 1)], 0).unwrap();
        assert_eq!(c.paths.len(), 1);
        assert_eq!(c.paths[0].len(), 6);
        assert!(audit_path_cover(&g, &(0..6).collect::<Vec<_>>(), &c).is_ok());
    }

    #[test]
    fn k6_two_pairs() {
        let g = gen::complete(6);
        let all: Vec<_> = (0..6).collect();
        let c = build_path_cover(&g, &all, &[(0, 1), (2, 3)], 0).unwrap();
        assert!(audit_path_cover(&g, &all, &c).is_ok());
    }

    #[test]
    fn shared_vertex_rejected() {
        let g = gen::complete(6);
        let all: Vec<_> = (0..6).collect();
        assert!(matches!(
            build_path_cover(&g, &all, &[(0, 1), (1, 2)], 0),
            Err(ClassicError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bounds_checked() {
        let g = gen::complete(6);
        assert!(matches!(
            path_cover_matching(&g, &[(0, 1), (2, 3)], 0.5),
            Err(ClassicError::PreconditionViolated(_))
        ));
    }

    fn star_graph() -> Multigraph {
        let mut g = gen::complete(10);
        g.add_edge(0, 5).unwrap();
        g.add_edge(0, 6).unwrap();
        g
    }

    #[test]
    fn star_center_interior() {
        let g = star_graph();
        let all: Vec<_> = (0..10).collect();
        let c = path_cover_star(&g, &[(1, 2), (3, 4)], 0, &all).unwrap();
        assert!(audit_path_cover(&g, &all, &c).is_ok());
        let p = &c.paths[1];
        let pos = p.iter().position(|&v| v == 0).unwrap();
        assert!(pos > 0 && pos < p.len() - 1);
    }

    #[test]
    fn star_center_endpoint() {
        let g = star_graph();
        let all: Vec<_> = (0..10).collect();
        let c = path_cover_star(&g, &[(0, 4), (1, 2)], 0, &all).unwrap();
        assert!(audit_path_cover(&g, &all, &c).is_ok());
        assert_eq!(c.paths[0][0], 0);
        assert_eq!(c.paths[0][1], 3);
    }

    #[test]
    fn star_too_few_neighbors() {
        let g = Multigraph::build(5, &[(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 3, 1)]).unwrap();
        let all: Vec<_> = (0..5).collect();
        assert_eq!(
            path_cover_star(&g, &[(2, 3)], 0, &all).unwrap_err(),
            ClassicError::TooFewCenterNeighbors(0)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        #[test]
        fn dense_random_covers(n in 8usize..60, t in 1usize..4, seed in any::<u64>()) {
            let g = gen::random_min_degree(n, (n * 3).div_ceil(5), seed);
            let all: Vec<_> = (0..n).collect();
            let pairs: Vec<_> = (0..t).map(|i| (2 * i, 2 * i + 1)).collect();
            let c = build_path_cover(&g, &all, &pairs, seed).unwrap();
            prop_assert!(audit_path_cover(&g, &all, &c).is_ok());
        }
    }
}
