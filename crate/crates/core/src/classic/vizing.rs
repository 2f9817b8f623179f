use super::ClassicError;
use crate::coloring::{kempe_chain, Color, EdgeColoring};
use crate::graph::{detect_star_structure, EdgeId, Multigraph, StarKind, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Applies all `(edge, color)` changes at once, or none of them.
fn recolor(g: &Multigraph, c: &mut EdgeColoring, changes: &[(EdgeId, Color)]) -> bool {
    let old: Vec<Option<Color>> = changes.iter().map(|&(e, _)| c.color_of(e)).collect();
    for &(e, _) in changes {
        c.unset(g, e);
    }
    for (idx, &(e, col)) in changes.iter().enumerate() {
        if c.set(g, e, col).is_err() {
            for &(f, _) in &changes[..idx] {
                c.unset(g, f);
            }
            for (&(f, _), o) in changes.iter().zip(&old) {
                if let Some(o) = *o {
                    c.set(g, f, o).expect("restoring the previous coloring");
                }
            }
            return false;
        }
    }
    true
}

fn swap_chain_edges(g: &Multigraph, c: &mut EdgeColoring, edges: &[EdgeId], a: Color, b: Color) {
    let changes: Vec<(EdgeId, Color)> = edges
        .iter()
        .map(|&e| (e, if c.color_of(e) == Some(a) { b } else { a }))
        .collect();
    let done = recolor(g, c, &changes);
    debug_assert!(done);
}

/// Colors `edges` one at a time with Misra and Gries' fan rotation. The
/// colored edges together with `edges` must form a simple graph of maximum
/// degree below `c.k()`.
pub fn misra_gries(g: &Multigraph, c: &mut EdgeColoring, edges: &[EdgeId]) -> Result<(), ClassicError> {
    let mut in_fan = vec![false; g.vertex_count()];
    for &e in edges {
        if c.is_colored(e) {
            continue;
        }
        let (u, v) = g.endpoints(e).ok_or(ClassicError::Stuck(e))?;
        if let Some(col) = (1..=c.k()).find(|&col| c.is_missing(u, col) && c.is_missing(v, col)) {
            c.set(g, e, col).expect("common missing color");
            continue;
        }
        let mut fan = vec![v];
        let mut fan_edges = vec![e];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = (1..=c.k()).filter(|&col| c.is_missing(last, col)).find_map(|col| {
                let f = c.edge_at(u, col)?;
                let w = g.other(f, u);
                (!in_fan[w]).then_some((f, w))
            });
            match next {
                Some((f, w)) => {
                    in_fan[w] = true;
                    fan.push(w);
                    fan_edges.push(f);
                }
                None => break,
            }
        }
        for &w in &fan {
            in_fan[w] = false;
        }
        let cu = c.first_missing(u).ok_or(ClassicError::Stuck(e))?;
        let d = c.first_missing(*fan.last().unwrap()).ok_or(ClassicError::Stuck(e))?;
        if cu != d && !c.is_missing(u, d) {
            let chain = kempe_chain(g, c, u, d, cu);
            swap_chain_edges(g, c, &chain.edges, d, cu);
        }
        // First vertex missing d inside the prefix that is still a fan.
        let mut w = None;
        for idx in 0..fan.len() {
            if idx > 0 && !c.color_of(fan_edges[idx]).is_some_and(|col| c.is_missing(fan[idx - 1], col)) {
                break;
            }
            if c.is_missing(fan[idx], d) {
                w = Some(idx);
                break;
            }
        }
        let w = w.ok_or(ClassicError::Stuck(e))?;
        let mut changes: Vec<(EdgeId, Color)> = (0..w)
            .map(|i| (fan_edges[i], c.color_of(fan_edges[i + 1]).unwrap()))
            .collect();
        changes.push((fan_edges[w], d));
        if !recolor(g, c, &changes) {
            return Err(ClassicError::Stuck(e));
        }
    }
    Ok(())
}

struct MultiFan {
    edges: Vec<EdgeId>,
    ends: Vec<Vertex>,
    pred: Vec<usize>,
}

impl MultiFan {
    fn path_to(&self, mut i: usize) -> Vec<usize> {
        let mut p = vec![i];
        while i != 0 {
            i = self.pred[i];
            p.push(i);
        }
        p.reverse();
        p
    }
}

/// Grows the multi-fan at `apex` for the uncolored edge `e`; if some fan
/// vertex shares a missing color with the apex, shifts colors along the fan
/// and colors `e`.
fn fan_shift(g: &Multigraph, c: &mut EdgeColoring, e: EdgeId, apex: Vertex) -> Result<(), MultiFan> {
    let mut fan = MultiFan {
        edges: vec![e],
        ends: vec![g.other(e, apex)],
        pred: vec![0],
    };
    let mut in_fan = std::collections::HashSet::from([e]);
    let mut i = 0;
    while i < fan.edges.len() {
        let y = fan.ends[i];
        for gamma in c.missing(y) {
            match c.edge_at(apex, gamma) {
                None => {
                    if shift(g, c, &fan, i, gamma) {
                        return Ok(());
                    }
                }
                Some(f) => {
                    if in_fan.insert(f) {
                        fan.edges.push(f);
                        fan.ends.push(g.other(f, apex));
                        fan.pred.push(i);
                    }
                }
            }
        }
        i += 1;
    }
    Err(fan)
}

fn shift(g: &Multigraph, c: &mut EdgeColoring, fan: &MultiFan, i: usize, gamma: Color) -> bool {
    let path = fan.path_to(i);
    let mut changes: Vec<(EdgeId, Color)> = path
        .windows(2)
        .map(|w| (fan.edges[w[0]], c.color_of(fan.edges[w[1]]).expect("fan edges past the first are colored")))
        .collect();
    changes.push((fan.edges[i], gamma));
    recolor(g, c, &changes)
}

/// Frees a color at one end of `e` by a Kempe exchange that avoids the
/// other end.
fn kempe_free(g: &Multigraph, c: &mut EdgeColoring, e: EdgeId) -> bool {
    let (u, v) = g.endpoints(e).unwrap();
    for (p, q) in [(u, v), (v, u)] {
        let Some(beta) = c.missing(q).into_iter().find(|&b| !c.is_missing(p, b)) else {
            continue;
        };
        for alpha in c.missing(p) {
            if c.is_missing(q, alpha) {
                return c.set(g, e, alpha).is_ok();
            }
            let chain = kempe_chain(g, c, q, alpha, beta);
            if chain.vertices.last() != Some(&p) && chain.vertices.first() != Some(&p) {
                swap_chain_edges(g, c, &chain.edges, alpha, beta);
                return c.set(g, e, alpha).is_ok();
            }
        }
    }
    false
}

/// Exchanges a (β, γ)-chain at a fan vertex missing γ so that it misses the
/// apex color β, as long as the chain leaves the fan path to it alone.
fn fan_chain_fix(g: &Multigraph, c: &mut EdgeColoring, fan: &MultiFan, apex: Vertex) -> bool {
    let apex_missing = c.missing(apex);
    for i in 0..fan.edges.len() {
        let y = fan.ends[i];
        let path: Vec<EdgeId> = fan.path_to(i).iter().map(|&j| fan.edges[j]).collect();
        for gamma in c.missing(y) {
            for &beta in &apex_missing {
                if c.is_missing(y, beta) {
                    continue;
                }
                let chain = kempe_chain(g, c, y, gamma, beta);
                if chain.vertices.contains(&apex) || chain.edges.iter().any(|f| path.contains(f)) {
                    continue;
                }
                swap_chain_edges(g, c, &chain.edges, gamma, beta);
                if shift(g, c, fan, i, beta) {
                    return true;
                }
                swap_chain_edges(g, c, &chain.edges, gamma, beta);
            }
        }
    }
    false
}

/// Random (α, β)-exchange at an endpoint of `e`, to escape a configuration
/// where no direct recoloring applies.
fn perturb(g: &Multigraph, c: &mut EdgeColoring, e: EdgeId, fan: &MultiFan, rng: &mut ChaCha8Rng) {
    let y = fan.ends[rng.gen_range(0..fan.ends.len())];
    let (u, v) = g.endpoints(e).unwrap();
    let w = [u, v, y][rng.gen_range(0..3)];
    let miss = c.missing(w);
    if miss.is_empty() || c.k() < 2 {
        return;
    }
    let a = miss[rng.gen_range(0..miss.len())];
    let b = 1 + rng.gen_range(0..c.k());
    if a == b {
        return;
    }
    let chain = kempe_chain(g, c, w, a, b);
    swap_chain_edges(g, c, &chain.edges, a, b);
}

/// Colors the uncolored edge `e` inside the current palette, recoloring
/// other edges as needed.
pub(crate) fn extend_edge(g: &Multigraph, c: &mut EdgeColoring, e: EdgeId, seed: u64) -> bool {
    let (u, v) = g.endpoints(e).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (e as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..400 {
        if let Some(col) = c.missing(u).into_iter().find(|&col| c.is_missing(v, col)) {
            c.set(g, e, col).expect("common missing color");
            return true;
        }
        if kempe_free(g, c, e) {
            return true;
        }
        let mut last_fan = None;
        for apex in [v, u] {
            match fan_shift(g, c, e, apex) {
                Ok(()) => return true,
                Err(fan) => {
                    if fan_chain_fix(g, c, &fan, apex) {
                        return true;
                    }
                    last_fan = Some(fan);
                }
            }
        }
        perturb(g, c, e, &last_fan.unwrap(), &mut rng);
    }
    false
}

/// Colors every uncolored x-edge by a distinct color missing at its other
/// end, as far as a bipartite assignment allows.
fn assign_center_edges(g: &Multigraph, c: &mut EdgeColoring, x: Vertex) {
    let items: Vec<EdgeId> = g.incident(x).iter().copied().filter(|&e| !c.is_colored(e)).collect();
    let allowed: Vec<Vec<Color>> = items
        .iter()
        .map(|&e| {
            let w = g.other(e, x);
            c.missing(w).into_iter().filter(|&col| c.is_missing(x, col)).collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; c.k() + 1];
    fn try_assign(
        i: usize,
        allowed: &[Vec<Color>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &col in &allowed[i] {
            if seen[col] {
                continue;
            }
            seen[col] = true;
            if owner[col].is_none_or(|j| try_assign(j, allowed, owner, seen)) {
                owner[col] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..items.len() {
        let mut seen = vec![false; c.k() + 1];
        try_assign(i, &allowed, &mut owner, &mut seen);
    }
    for (col, o) in owner.iter().enumerate() {
        if let Some(i) = *o {
            c.set(g, items[i], col).expect("assignment keeps colors distinct at x and missing at the far end");
        }
    }
}

/// Coloring with at most Δ + 1 colors of a multigraph whose parallel edges
/// all meet one vertex.
pub fn star_multigraph_color(g: &Multigraph) -> Result<EdgeColoring, ClassicError> {
    let profile = detect_star_structure(g);
    let k = g.max_degree() + 1;
    let mut c = EdgeColoring::new(g, k);
    match (profile.kind, profile.center) {
        (StarKind::Simple, _) => {
            misra_gries(g, &mut c, &g.edge_ids())?;
        }
        (StarKind::Star, Some(x)) => {
            let rest: Vec<EdgeId> = g.edges().filter(|&(_, a, b)| a != x && b != x).map(|(e, _, _)| e).collect();
            misra_gries(g, &mut c, &rest)?;
            assign_center_edges(g, &mut c, x);
            for e in c.uncolored(g) {
                if !extend_edge(g, &mut c, e, e as u64) {
                    return Err(ClassicError::Stuck(e));
                }
            }
        }
        _ => return Err(ClassicError::NotStarMultigraph),
    }
    Ok(c)
}

/// Coloring of a near star-multigraph with at most
/// `max(Δ + e(y, z), Δ + 1)` colors: all but one (y, z) edge are set aside,
/// the rest is star-colored and the set-aside edges get fresh colors.
pub fn near_star_color(g: &Multigraph) -> Result<EdgeColoring, ClassicError> {
    let profile = detect_star_structure(g);
    match profile.kind {
        StarKind::Simple | StarKind::Star => star_multigraph_color(g),
        StarKind::NearStar => {
            let (y, z) = profile.residual_pair.expect("near star has a residual pair");
            let stripped: Vec<EdgeId> = g.edges_between(y, z)[1..].to_vec();
            let core = g.filter_edges(|e, _, _| !stripped.contains(&e));
            let base = star_multigraph_color(&core)?;
            let k0 = base.max_color_used();
            let bound = (g.max_degree() + stripped.len() + 1).max(g.max_degree() + 1);
            let mut c = EdgeColoring::new(g, bound.max(k0 + stripped.len()));
            for (e, _, _) in core.edges() {
                c.set(g, e, base.color_of(e).unwrap()).expect("copy of a proper coloring");
            }
            for (i, &e) in stripped.iter().enumerate() {
                c.set(g, e, k0 + 1 + i).expect("fresh color");
            }
            Ok(c)
        }
        StarKind::NotNearStar => Err(ClassicError::NotNearStar),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{parity_audit, verify_proper};
    use crate::gen;
    use proptest::prelude::*;

    fn check(g: &Multigraph, c: &EdgeColoring, bound: usize) {
        assert!(verify_proper(g, c).ok);
        assert!(c.is_total(g));
        assert!(c.max_color_used() <= bound, "{} > {bound}", c.max_color_used());
        assert!(parity_audit(g, c).passed());
    }

    #[test]
    fn petersen_four_colors() {
        let g = gen::petersen();
        let c = star_multigraph_color(&g).unwrap();
        check(&g, &c, 4);
        assert_eq!(c.colors_used(), 4);
    }

    #[test]
    fn fat_center() {
        let g = Multigraph::build(6, &[(0, 1, 3), (0, 2, 1), (0, 3, 1), (1, 4, 1), (1, 5, 1), (2, 3, 1)]).unwrap();
        let c = star_multigraph_color(&g).unwrap();
        check(&g, &c, g.max_degree() + 1);
    }

    #[test]
    fn k4_within_bound() {
        let g = gen::complete(4);
        let c = star_multigraph_color(&g).unwrap();
        check(&g, &c, 4);
    }

    #[test]
    fn near_star_bound() {
        let mut g = gen::complete(11);
        g.add_edge(3, 4).unwrap();
        g.add_edge(3, 4).unwrap();
        g.add_edge(0, 5).unwrap();
        let c = near_star_color(&g).unwrap();
        check(&g, &c, g.max_degree() + 3);
    }

    #[test]
    fn near_star_single_pair_edge() {
        let g = gen::complete(6);
        let c = near_star_color(&g).unwrap();
        check(&g, &c, 6);
    }

    #[test]
    fn rejects_non_star() {
        let g = Multigraph::build(6, &[(0, 1, 2), (2, 3, 2), (4, 5, 2)]).unwrap();
        assert_eq!(near_star_color(&g).unwrap_err(), ClassicError::NotNearStar);
        assert_eq!(star_multigraph_color(&g).unwrap_err(), ClassicError::NotStarMultigraph);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn simple_graphs_vizing(n in 2usize..30, p in 0.1f64..1.0, seed in any::<u64>()) {
            let g = gen::random_graph(n, p, seed);
            let c = star_multigraph_color(&g).unwrap();
            prop_assert!(verify_proper(&g, &c).ok && c.is_total(&g));
            prop_assert!(c.max_color_used() <= g.max_degree() + 1);
        }

        #[test]
        fn star_multigraphs(n in 3usize..30, p in 0.2f64..1.0, mu in 2usize..8, seed in any::<u64>()) {
            let g = gen::random_star_multigraph(n, p, mu, seed);
            let c = star_multigraph_color(&g).unwrap();
            prop_assert!(verify_proper(&g, &c).ok && c.is_total(&g));
            prop_assert!(c.max_color_used() <= g.max_degree() + 1);
        }
    }
}
