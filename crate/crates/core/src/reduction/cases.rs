use super::{PeeledForest, PeeledMatching, Reduced, ReductionError, ReductionTrace};
use crate::classic::{hakimi_realize, is_perfect_matching, path_cover_star, perfect_matching_dense_on};
use crate::engine::Condition;
use crate::graph::{deficiency_report, EdgeId, Multigraph, Vertex};

fn construction(msg: impl Into<String>) -> ReductionError {
    ReductionError::ConstructionFailed(msg.into())
}

fn with_center(g: &Multigraph) -> (Multigraph, Vertex) {
    let mut gp = g.clone();
    let x = gp.add_vertex();
    (gp, x)
}

fn join(gp: &mut Multigraph, x: Vertex, v: Vertex, times: usize, trace: &mut ReductionTrace) {
    if times == 0 {
        return;
    }
    for _ in 0..times {
        gp.add_edge(x, v).expect("x differs from v");
    }
    match trace.added_center_edges.iter_mut().find(|p| p.0 == v) {
        Some(p) => p.1 += times,
        None => trace.added_center_edges.push((v, times)),
    }
}

fn is_regular(g: &Multigraph) -> bool {
    g.max_degree() == g.min_degree()
}

/// Logs whether every `G − u` keeps total deficiency at least Δ.
fn audit_not_overfull(g: &Multigraph, trace: &mut ReductionTrace, step: &str) {
    let rep = deficiency_report(g);
    let worst = (0..g.vertex_count())
        .map(|u| rep.df_total + g.degree(u) - rep.df_per_vertex[u])
        .min()
        .unwrap_or(0);
    trace.guards.at_least(step, "min_u df(G − u) ≥ Δ", worst as f64, rep.delta_max as f64);
}

/// Removes a perfect matching of `g − exclude`; its color is the current Δ,
/// which must drop by exactly one.
fn peel(g: &mut Multigraph, exclude: &[Vertex], trace: &mut ReductionTrace, step: &str) -> Result<(), ReductionError> {
    let vertices: Vec<Vertex> = (0..g.vertex_count()).filter(|v| !exclude.contains(v)).collect();
    let m = perfect_matching_dense_on(g, &vertices).map_err(|e| ReductionError::MatchingFailed(format!("{step}: {e}")))?;
    if !is_perfect_matching(g, &vertices, &m) {
        return Err(ReductionError::MatchingFailed(format!("{step}: audit rejected the matching")));
    }
    let before = g.max_degree();
    for &e in &m {
        g.remove_edge(e);
    }
    let ok = g.max_degree() + 1 == before;
    trace.guards.guard(step, "Δ drops by one", g.max_degree() as f64, (before - 1) as f64, ok, "");
    if !ok {
        return Err(ReductionError::MatchingFailed(format!("{step}: Δ did not drop by one")));
    }
    trace.removed_matchings.push(PeeledMatching { edges: m, color: before });
    audit_not_overfull(g, trace, step);
    Ok(())
}

/// Peels while the graph is irregular and the δ-level is even or a middle
/// vertex exists. Returns once regular, or once neither holds.
fn peel_toward_regular(g: &mut Multigraph, trace: &mut ReductionTrace, step: &str) -> Result<(), ReductionError> {
    let bound = g.max_degree() - g.min_degree() + 1;
    for _ in 0..bound {
        if is_regular(g) {
            return Ok(());
        }
        let rep = deficiency_report(g);
        let mut low = rep.level(rep.delta_min);
        if low.len() % 2 == 1 {
            match rep.middle_degree_vertices.first() {
                Some(&v) => low.push(v),
                None => return Ok(()),
            }
        }
        peel(g, &low, trace, step)?;
    }
    Ok(())
}

/// Case 1: a light center joined to ⌊ηn⌋ vertices of W; the rest of W
/// plays U.
pub(super) fn case1(g: &Multigraph, trace: &mut ReductionTrace) -> Result<Reduced, ReductionError> {
    let n = g.vertex_count().div_ceil(2) as f64;
    let eta = trace.eta;
    let take = (eta * n).floor() as usize;
    if take == 0 {
        return Err(construction("⌊ηn⌋ = 0"));
    }
    let w = trace.w.clone();
    let w1: Vec<Vertex> = w.iter().copied().take(take).collect();
    let cap = (2.0 / eta).floor() as usize;
    let (delta, target) = (g.max_degree(), g.min_degree());
    let (mut gp, x) = with_center(g);
    let mut count = vec![0usize; g.vertex_count()];
    while gp.degree(x) < target {
        let mut progressed = false;
        for &v in &w1 {
            if gp.degree(x) < target && count[v] < cap && gp.degree(v) < delta {
                join(&mut gp, x, v, 1, trace);
                count[v] += 1;
                progressed = true;
            }
        }
        if !progressed {
            return Err(construction(format!("d(x) stuck at {} below δ = {target}", gp.degree(x))));
        }
    }
    trace.guards.guard("case1", "Δ(G′) = Δ(G)", gp.max_degree() as f64, delta as f64, gp.max_degree() == delta, "");
    trace.guards.at_most("case1", "μ(x) ≤ ⌊2/η⌋", gp.max_multiplicity_at(x) as f64, cap as f64);
    let u = w.iter().copied().filter(|v| !w1.contains(v)).collect();
    Ok(Reduced {
        star: gp,
        x,
        condition: Condition::E,
        u: Some(u),
        y: None,
        z: None,
    })
}

/// Case 2: saturate low vertices at x, realize the deficiencies as a
/// multigraph H, and peel one linear forest per matching of H.
pub(super) fn case2(g: &Multigraph, epsilon: f64, trace: &mut ReductionTrace) -> Result<Reduced, ReductionError> {
    let (delta, target) = (g.max_degree(), g.min_degree());
    let n = g.vertex_count().div_ceil(2) as f64;
    let (mut gp, x) = with_center(g);
    let mut by_degree: Vec<Vertex> = (0..g.vertex_count()).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    for &v in &by_degree {
        let room = target - gp.degree(x);
        if room == 0 {
            break;
        }
        join(&mut gp, x, v, (delta - g.degree(v)).min(room), trace);
    }
    if gp.degree(x) != target {
        return Err(construction("deficiency below δ"));
    }
    let df: Vec<usize> = (0..gp.vertex_count()).map(|v| delta - gp.degree(v)).collect();
    let h = hakimi_realize(&df).map_err(|e| construction(format!("Hakimi: {e}")))?;
    trace.hakimi_graph = Some(h.edges().map(|(_, a, b)| (a, b)).collect());

    // Greedy matchings of bounded size.
    let cap = ((epsilon * n / 26.0).floor() as usize).max(1);
    let mut matchings: Vec<(Vec<(Vertex, Vertex)>, Vec<bool>)> = Vec::new();
    for (_, a, b) in h.edges() {
        let slot = matchings.iter().position(|(m, used)| m.len() < cap && !used[a] && !used[b]);
        let idx = match slot {
            Some(i) => i,
            None => {
                matchings.push((Vec::new(), vec![false; gp.vertex_count()]));
                matchings.len() - 1
            }
        };
        let (m, used) = &mut matchings[idx];
        m.push((a, b));
        used[a] = true;
        used[b] = true;
    }
    let k = matchings.len();
    trace.guards.guard("case2", "matchings", k as f64, cap as f64, true, "k, size cap");

    let all: Vec<Vertex> = (0..gp.vertex_count()).collect();
    let mut cur = gp;
    for (i, (m, _)) in matchings.iter().enumerate() {
        let cover = path_cover_star(&cur, m, x, &all).map_err(|e| ReductionError::CoverFailed(e.to_string()))?;
        let mut paths: Vec<Vec<EdgeId>> = Vec::new();
        for p in &cover.paths {
            let mut edges = Vec::new();
            for w in p.windows(2) {
                let e = *cur
                    .edges_between(w[0], w[1])
                    .iter()
                    .min()
                    .ok_or_else(|| ReductionError::CoverFailed(format!("{} and {} not adjacent", w[0], w[1])))?;
                edges.push(e);
            }
            paths.push(edges);
        }
        for edges in &paths {
            for &e in edges {
                cur.remove_edge(e);
            }
        }
        let hi = delta - 2 * k + 2 * i + 2;
        trace.removed_forests.push(PeeledForest {
            paths,
            colors: (hi - 1, hi),
        });
    }
    let want = delta - 2 * k;
    let ok = is_regular(&cur) && cur.max_degree() == want;
    trace.guards.guard("case2", "G_k is (Δ − 2k)-regular", cur.min_degree() as f64, want as f64, ok, "");
    if !ok {
        return Err(construction("G_k not regular"));
    }
    Ok(Reduced {
        star: cur,
        x,
        condition: Condition::A,
        u: None,
        y: None,
        z: None,
    })
}

/// Case 3: saturate outside W first, then W at no more than 2√n edges per
/// vertex; peel single matchings, or pairs through two δ-vertices y, z.
pub(super) fn case3(g: &Multigraph, trace: &mut ReductionTrace) -> Result<Reduced, ReductionError> {
    let (delta, target) = (g.max_degree(), g.min_degree());
    let n = g.vertex_count().div_ceil(2) as f64;
    let w = trace.w.clone();
    let (mut gp, x) = with_center(g);
    for v in 0..g.vertex_count() {
        if g.degree(v) < delta && !w.contains(&v) {
            let room = target - gp.degree(x);
            join(&mut gp, x, v, (delta - g.degree(v)).min(room), trace);
        }
    }
    let per = (2.0 * n.sqrt()).floor() as usize;
    for &v in &w {
        let room = target - gp.degree(x);
        join(&mut gp, x, v, per.min(delta - g.degree(v)).min(room), trace);
    }
    if gp.degree(x) != target {
        return Err(construction(format!("d(x) = {} below δ = {target}", gp.degree(x))));
    }
    audit_not_overfull(&gp, trace, "case3");
    peel_toward_regular(&mut gp, trace, "case3")?;
    if is_regular(&gp) {
        return Ok(Reduced {
            star: gp,
            x,
            condition: Condition::A,
            u: None,
            y: None,
            z: None,
        });
    }
    let rep = deficiency_report(&gp);
    let low = rep.level(rep.delta_min);
    let yz: Vec<Vertex> = low.iter().copied().filter(|&v| v != x).take(2).collect();
    if yz.len() < 2 || (rep.delta_max - rep.delta_min) % 2 == 1 {
        return Err(construction("paired peel needs two δ-vertices besides x and even Δ − δ"));
    }
    let (y, z) = (yz[0], yz[1]);
    trace.guards.note("case3", "paired matchings taken in G′ minus the δ-level");
    let rounds = (rep.delta_max - rep.delta_min) / 2;
    let without_y: Vec<Vertex> = low.iter().copied().filter(|&v| v != y).collect();
    let without_z: Vec<Vertex> = low.iter().copied().filter(|&v| v != z).collect();
    for _ in 0..rounds {
        peel(&mut gp, &without_y, trace, "case3")?;
        peel(&mut gp, &without_z, trace, "case3")?;
    }
    Ok(Reduced {
        star: gp,
        x,
        condition: Condition::D,
        u: None,
        y: Some(y),
        z: Some(z),
    })
}

/// Case 4: small W. Either close the deficiency with parallel y–z edges
/// and a full-degree center, or grow x level by level and peel to regular.
pub(super) fn case4(g: &Multigraph, trace: &mut ReductionTrace) -> Result<Reduced, ReductionError> {
    let mut g = g.clone();
    let rep = deficiency_report(&g);
    if rep.level(rep.delta_min).len() == 1 {
        let low = rep.level(rep.delta_min);
        peel(&mut g, &low, trace, "case4")?;
    }
    let rep = deficiency_report(&g);
    let delta = rep.delta_max;
    let w_len = trace.w.len();
    let parity_ok = (rep.df_total + delta).is_multiple_of(2) || rep.df_total < delta;
    trace.guards.guard("case4", "df(G) − Δ even", rep.df_total as f64, delta as f64, parity_ok, "");
    if rep.df_total < delta + w_len + 1 {
        if rep.df_total < delta || (rep.df_total - delta) % 2 == 1 {
            return Err(construction("df(G) − Δ is negative or odd"));
        }
        let low = rep.level(rep.delta_min);
        if low.len() < 2 {
            return Err(construction("fewer than two δ-vertices"));
        }
        let (y, z) = (low[0], low[1]);
        let extra = (rep.df_total - delta) / 2;
        if g.degree(y) + extra > delta || g.degree(z) + extra > delta {
            return Err(construction("parallel y–z edges would exceed Δ"));
        }
        for _ in 0..extra {
            g.add_edge(y, z).expect("distinct");
        }
        trace.added_pair_edges = extra;
        let (mut gp, x) = with_center(&g);
        for v in 0..g.vertex_count() {
            join(&mut gp, x, v, delta - g.degree(v), trace);
        }
        let ok = is_regular(&gp) && gp.max_degree() == delta;
        trace.guards.guard("case4", "G′ is Δ-regular", gp.min_degree() as f64, delta as f64, ok, "");
        if !ok {
            return Err(construction("center did not regularize"));
        }
        return Ok(Reduced {
            star: gp,
            x,
            condition: Condition::B,
            u: None,
            y: Some(y),
            z: Some(z),
        });
    }

    // Even δ-level and no middle vertex.
    let bound = delta - rep.delta_min + 1;
    for _ in 0..bound {
        let rep = deficiency_report(&g);
        let low = rep.level(rep.delta_min);
        if is_regular(&g) || (low.len().is_multiple_of(2) && rep.middle_degree_vertices.is_empty()) {
            break;
        }
        let mut ex = low.clone();
        if low.len().is_multiple_of(2) {
            ex.push(rep.middle_degree_vertices[0]);
        }
        peel(&mut g, &ex, trace, "case4")?;
    }
    let rep = deficiency_report(&g);
    let low = rep.level(rep.delta_min);
    if low.len() % 2 == 1 || !rep.middle_degree_vertices.is_empty() || low.len() < 2 {
        return Err(construction("could not reach an even δ-level without middle vertices"));
    }
    let delta = rep.delta_max;
    let y = low[0];
    let (mut gp, x) = with_center(&g);
    join(&mut gp, x, y, delta - g.degree(y), trace);
    for _ in 0..=delta {
        let dx = gp.degree(x);
        let level_x = (0..gp.vertex_count()).filter(|&v| gp.degree(v) == gp.min_degree()).count();
        if gp.min_degree() == dx && level_x >= 2 {
            break;
        }
        let second = (0..gp.vertex_count())
            .filter(|&v| v != x && gp.degree(v) > dx)
            .map(|v| gp.degree(v))
            .min()
            .ok_or_else(|| construction("no second degree level"))?;
        let lev: Vec<Vertex> = (0..gp.vertex_count()).filter(|&v| v != x && gp.degree(v) == second).collect();
        let take = if lev.len() + dx <= second + 1 { lev.len() } else { second - dx };
        for &v in lev.iter().take(take) {
            join(&mut gp, x, v, 1, trace);
        }
    }
    trace.guards.guard("case4", "Δ(G′) = Δ(G)", gp.max_degree() as f64, delta as f64, gp.max_degree() == delta, "");
    if gp.max_degree() != delta || gp.degree(x) != gp.min_degree() {
        return Err(construction("center growth overshot"));
    }
    trace.guards.at_least("case4", "d^s(x) ≥ 2", gp.simple_degree(x) as f64, 2.0);
    audit_not_overfull(&gp, trace, "case4");
    peel_toward_regular(&mut gp, trace, "case4")?;
    if !is_regular(&gp) {
        return Err(construction("peeling did not reach a regular graph"));
    }
    Ok(Reduced {
        star: gp,
        x,
        condition: Condition::C,
        u: None,
        y: None,
        z: None,
    })
}
