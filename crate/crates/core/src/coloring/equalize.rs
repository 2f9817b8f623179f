use super::kempe::{kempe_chain, swap_edges};
use super::{Color, EdgeColoring};
use crate::graph::{Multigraph, Vertex};
use crate::partition::Partition;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqualizeError {
    #[error("coloring is not total: {0} uncolored edges")]
    NotTotal(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no exchangeable chain for colors ({0}, {1})")]
    Stuck(Color, Color),
}

/// |φ̄_C⁻¹(i)| for every color, indexed by color (entry 0 unused).
pub fn side_missing_counts(c: &EdgeColoring, side: &[Vertex]) -> Vec<usize> {
    let mut out = vec![0; c.k() + 1];
    for col in 1..=c.k() {
        out[col] = side.iter().filter(|&&v| c.is_missing(v, col)).count();
    }
    out
}

/// Largest gap between missing counts of two colors on `side`.
pub fn side_gap(c: &EdgeColoring, side: &[Vertex]) -> usize {
    let m = side_missing_counts(c, side);
    let hi = m[1..].iter().max().copied().unwrap_or(0);
    let lo = m[1..].iter().min().copied().unwrap_or(0);
    hi - lo
}

/// Repeatedly exchanges an (i, j)-path with more i-edges than j-edges
/// between the largest class i and the smallest class j.
pub fn equalize_classes(g: &Multigraph, c: &mut EdgeColoring) -> Result<(), EqualizeError> {
    let unc = c.uncolored(g).len();
    if unc > 0 {
        return Err(EqualizeError::NotTotal(unc));
    }
    let k = c.k();
    if k < 2 {
        return Ok(());
    }
    loop {
        let sizes = c.class_sizes();
        let (mut i, mut j) = (1, 1);
        for col in 1..=k {
            if sizes[col - 1] > sizes[i - 1] {
                i = col;
            }
            if sizes[col - 1] < sizes[j - 1] {
                j = col;
            }
        }
        if sizes[i - 1] - sizes[j - 1] <= 1 {
            return Ok(());
        }
        let mut done = false;
        for v in 0..g.vertex_count() {
            if c.edge_at(v, i).is_none() || c.edge_at(v, j).is_some() {
                continue;
            }
            let ch = kempe_chain(g, c, v, i, j);
            let last = *ch.edges.last().unwrap();
            if ch.edges.len() % 2 == 1 && c.color_of(last) == Some(i) {
                swap_edges(g, c, &ch.edges, i, j);
                done = true;
                break;
            }
        }
        if !done {
            return Err(EqualizeError::Stuck(i, j));
        }
    }
}

fn check_star_split(g: &Multigraph, part: &Partition, x: Vertex) -> Result<(), EqualizeError> {
    if !part.in_a(x) {
        return Err(EqualizeError::PreconditionViolated("center x is not in A".into()));
    }
    for (_, u, v) in g.edges() {
        if part.in_a(u) != part.in_a(v) && u != x && v != x {
            return Err(EqualizeError::PreconditionViolated(format!(
                "E(A,B) ≠ E(x,B): crossing edge ({u}, {v}) avoids x"
            )));
        }
    }
    Ok(())
}

/// Finds a chain that starts at a vertex of `side` missing `miss`, uses only
/// vertices of `side`, and ends at another vertex missing `miss`.
fn internal_path_both_missing(
    g: &Multigraph,
    c: &EdgeColoring,
    side: &[Vertex],
    member: &[bool],
    miss: Color,
    have: Color,
) -> Option<Vec<usize>> {
    for &u in side {
        if !c.is_missing(u, miss) || c.is_missing(u, have) {
            continue;
        }
        let ch = kempe_chain(g, c, u, miss, have);
        if ch.edges.len() % 2 == 1 && ch.vertices.iter().all(|&w| member[w]) {
            return Some(ch.edges);
        }
    }
    None
}

fn equalize_side(
    g: &Multigraph,
    c: &mut EdgeColoring,
    side: &[Vertex],
    member: &[bool],
) -> Result<(), EqualizeError> {
    let k = c.k();
    loop {
        let m = side_missing_counts(c, side);
        let mut best: Option<(usize, Color, Color)> = None;
        for i in 1..=k {
            for j in 1..=k {
                if m[i] >= m[j] + 3 && best.is_none_or(|(gap, _, _)| m[i] - m[j] > gap) {
                    best = Some((m[i] - m[j], i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { return Ok(()) };
        // Prefer the widest pair, but any pair with gap ≥ 3 has a usable path.
        let mut moved = false;
        if let Some(p) = internal_path_both_missing(g, c, side, member, i, j) {
            swap_edges(g, c, &p, i, j);
            moved = true;
        } else {
            'outer: for a in 1..=k {
                for b in 1..=k {
                    if m[a] >= m[b] + 3 {
                        if let Some(p) = internal_path_both_missing(g, c, side, member, a, b) {
                            swap_edges(g, c, &p, a, b);
                            moved = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !moved {
            return Err(EqualizeError::Stuck(i, j));
        }
    }
}

/// Makes every side's missing counts pairwise within 2 using exchanges of
/// paths that stay inside one side.
pub fn equalize_per_side(
    g: &Multigraph,
    c: &mut EdgeColoring,
    part: &Partition,
    x: Vertex,
) -> Result<(), EqualizeError> {
    check_star_split(g, part, x)?;
    let (a, b) = (part.a(), part.b());
    let in_a = part.membership();
    let in_b: Vec<bool> = in_a.iter().map(|&f| !f).collect();
    equalize_side(g, c, &a, &in_a)?;
    equalize_side(g, c, &b, &in_b)?;
    Ok(())
}

fn inside_counts(g: &Multigraph, c: &EdgeColoring, member: &[bool]) -> Vec<i64> {
    let mut out = vec![0i64; c.k() + 1];
    for col in 1..=c.k() {
        out[col] = c
            .class(col)
            .iter()
            .filter(|&&e| {
                let (u, v) = g.endpoints(e).unwrap();
                member[u] && member[v]
            })
            .count() as i64;
    }
    out
}

/// Balances missing counts across the two sides color by color, keeping the
/// A-side counts within 2 of each other.
pub fn equalize_balanced_sides(
    g: &Multigraph,
    c: &mut EdgeColoring,
    part: &Partition,
    x: Vertex,
) -> Result<(), EqualizeError> {
    check_star_split(g, part, x)?;
    let in_a = part.membership();
    let in_b: Vec<bool> = in_a.iter().map(|&f| !f).collect();
    let ea = g.edges().filter(|&(_, u, v)| in_a[u] && in_a[v]).count();
    let eb = g.edges().filter(|&(_, u, v)| in_b[u] && in_b[v]).count();
    if ea != eb {
        return Err(EqualizeError::PreconditionViolated(format!("e(A) = {ea} ≠ e(B) = {eb}")));
    }
    let (a, b) = (part.a(), part.b());
    equalize_side(g, c, &a, &in_a)?;
    let k = c.k();
    loop {
        let ca = inside_counts(g, c, &in_a);
        let cb = inside_counts(g, c, &in_b);
        let d: Vec<i64> = (0..=k).map(|i| ca[i] - cb[i]).collect();
        if d[1..].iter().all(|&v| v == 0) {
            break;
        }
        let ma = side_missing_counts(c, &a);
        let mut cands: Vec<(i64, Color, Color)> = Vec::new();
        for i in 1..=k {
            for j in 1..=k {
                if d[i] > 0 && d[j] < 0 {
                    cands.push((d[i] - d[j], i, j));
                }
            }
        }
        cands.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
        let mut moved = false;
        for &(_, i, j) in &cands {
            // On B: a path whose ends both miss i gains one i-edge.
            if let Some(p) = internal_path_both_missing(g, c, &b, &in_b, i, j) {
                swap_edges(g, c, &p, i, j);
                moved = true;
                break;
            }
            // On A: only when it cannot widen the A-side gap.
            if ma[j] >= ma[i] + 2 {
                if let Some(p) = internal_path_both_missing(g, c, &a, &in_a, j, i) {
                    swap_edges(g, c, &p, i, j);
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            let (_, i, j) = cands[0];
            return Err(EqualizeError::Stuck(i, j));
        }
    }
    let ma = side_missing_counts(c, &a);
    let mb = side_missing_counts(c, &b);
    if ma != mb || side_gap(c, &a) > 2 {
        return Err(EqualizeError::Stuck(0, 0));
    }
    Ok(())
}
