use super::ClassicError;
use crate::graph::{Multigraph, Vertex};

/// True when `cycle` visits every vertex once and closes up along edges.
pub fn is_hamiltonian_cycle(g: &Multigraph, cycle: &[Vertex]) -> bool {
    let n = g.vertex_count();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.multiplicity(cycle[i], cycle[(i + 1) % n]) > 0)
}

/// Hamiltonian cycle of a graph with `2δ ≥ n` (simple degrees).
///
/// Starts from the identity order and removes non-edges between cyclic
/// neighbours one at a time by reversing a segment, as in Palmer's
/// algorithm.
pub fn dirac_hamiltonian(g: &Multigraph) -> Result<Vec<Vertex>, ClassicError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(ClassicError::PreconditionViolated(format!("order {n} < 3")));
    }
    let delta = (0..n).map(|v| g.simple_degree(v)).min().unwrap_or(0);
    if 2 * delta < n {
        return Err(ClassicError::PreconditionViolated(format!("δ = {delta} < n/2 = {}", n as f64 / 2.0)));
    }
    let adj = g.adjacency_matrix();
    let mut cyc = greedy_order(&adj);
    loop {
        let Some(i) = (0..n).find(|&i| !adj[cyc[i]][cyc[(i + 1) % n]]) else {
            break;
        };
        cyc.rotate_left(i);
        let (p, q) = (cyc[0], cyc[1]);
        let j = (2..n - 1)
            .find(|&j| adj[p][cyc[j]] && adj[q][cyc[j + 1]])
            .ok_or_else(|| ClassicError::PreconditionViolated("no rotation closes a gap".into()))?;
        cyc[1..=j].reverse();
    }
    debug_assert!(is_hamiltonian_cycle(g, &cyc));
    Ok(cyc)
}

/// Nearest-unvisited-neighbour walk; cuts down the number of gaps to fix.
fn greedy_order(adj: &[Vec<bool>]) -> Vec<Vertex> {
    let n = adj.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    used[0] = true;
    order.push(0);
    while order.len() < n {
        let next = (0..n)
            .find(|&v| !used[v] && adj[cur][v])
            .or_else(|| (0..n).find(|&v| !used[v]))
            .unwrap();
        used[next] = true;
        order.push(next);
        cur = next;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn k4_and_c4() {
        let k4 = gen::complete(4);
        let c = dirac_hamiltonian(&k4).unwrap();
        assert!(is_hamiltonian_cycle(&k4, &c));
        let c4 = Multigraph::from_simple_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = dirac_hamiltonian(&c4).unwrap();
        assert!(is_hamiltonian_cycle(&c4, &c));
    }

    #[test]
    fn rejects_sparse() {
        let p = Multigraph::from_simple_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(dirac_hamiltonian(&p), Err(ClassicError::PreconditionViolated(_))));
        assert!(dirac_hamiltonian(&gen::complete(2)).is_err());
    }

    #[test]
    fn parallel_edges_ignored() {
        let mut g = gen::complete(5);
        g.add_edge(0, 1).unwrap();
        let c = dirac_hamiltonian(&g).unwrap();
        assert!(is_hamiltonian_cycle(&g, &c));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_dirac_graphs(n in 3usize..60, seed in any::<u64>()) {
            let g = gen::random_min_degree(n, n.div_ceil(2), seed);
            let c = dirac_hamiltonian(&g).unwrap();
            prop_assert!(is_hamiltonian_cycle(&g, &c));
        }
    }
}
