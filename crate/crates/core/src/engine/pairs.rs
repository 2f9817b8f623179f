use super::{Condition, EngineError, EngineParams, Matched};
use crate::graph::{Multigraph, Vertex};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSelection {
    /// `pairs[0]` is `(x, y1)`.
    pub pairs: Vec<(Vertex, Vertex)>,
    /// Neighbours of the center that must end up in B.
    pub nb: Vec<Vertex>,
}

/// The pair set N and N^b(x) for the matched condition.
pub fn select_pairs(g: &Multigraph, m: &Matched, params: &EngineParams) -> Result<PairSelection, EngineError> {
    let order = g.vertex_count();
    let half = order / 2;
    let x = m.x;
    let n = half as f64;
    let reserved: Vec<Vertex> = match m.condition {
        Condition::D => [m.y, m.z].into_iter().flatten().collect(),
        _ => Vec::new(),
    };
    let y1 = (0..order)
        .find(|&v| v != x && !reserved.contains(&v))
        .ok_or(EngineError::NotEnoughVertices)?;
    let mut used = vec![false; order];
    used[x] = true;
    used[y1] = true;
    let mut pairs = vec![(x, y1)];
    let mut nb = Vec::new();
    let take_lowest = |used: &mut Vec<bool>| -> Option<Vertex> {
        let v = (0..order).find(|&v| !used[v])?;
        used[v] = true;
        Some(v)
    };
    match m.condition {
        Condition::A => {}
        Condition::B | Condition::C => {
            nb = g
                .neighbors(x)
                .into_iter()
                .filter(|&v| v != y1 && (m.condition == Condition::C || g.multiplicity(x, v) as f64 >= params.eta * n))
                .collect();
            for &v in &nb {
                used[v] = true;
            }
            for &v in &nb {
                let partner = take_lowest(&mut used).ok_or(EngineError::NotEnoughVertices)?;
                pairs.push((v, partner));
            }
        }
        Condition::D => {
            let (y, z) = (m.y.ok_or(EngineError::NotEnoughVertices)?, m.z.ok_or(EngineError::NotEnoughVertices)?);
            pairs.push((y, z));
        }
        Condition::E => {
            let delta = g.max_degree();
            let below: Vec<Vertex> = (0..order).filter(|&v| g.degree(v) < delta).collect();
            let want = below.len() / 2;
            let mut cands: Vec<Vertex> = m.u.iter().copied().filter(|&v| !used[v]).collect();
            cands.extend(below.iter().copied().filter(|&v| !used[v] && !m.u.contains(&v)));
            for pair in cands.chunks(2).take(want) {
                if pair.len() == 2 {
                    pairs.push((pair[0], pair[1]));
                }
            }
        }
    }
    if pairs.len() > half {
        return Err(EngineError::NotEnoughVertices);
    }
    Ok(PairSelection { pairs, nb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::evaluate;
    use crate::gen;

    #[test]
    fn condition_a_single_pair() {
        let g = gen::complete(10);
        let p = EngineParams::new(0.5).with_eta(0.5);
        let m = evaluate(&g, 0, Condition::A, &p);
        let sel = select_pairs(&g, &m, &p).unwrap();
        assert_eq!(sel.pairs, vec![(0, 1)]);
        assert!(sel.nb.is_empty());
    }

    #[test]
    fn condition_d_adds_y_z() {
        let p = EngineParams::new(0.5).with_eta(0.1);
        let g = gen::dcolor_fixture(Condition::D, 120, 0.5, 0.1, 3).unwrap();
        let m = evaluate(&g, 0, Condition::D, &p);
        let sel = select_pairs(&g, &m, &p).unwrap();
        assert_eq!(sel.pairs.len(), 2);
        assert_eq!(sel.pairs[1], (m.y.unwrap(), m.z.unwrap()));
        assert!(![m.y, m.z].contains(&Some(sel.pairs[0].1)));
    }

    #[test]
    fn condition_e_pairs_start_in_u() {
        let p = EngineParams::new(0.5).with_eta(0.1);
        let g = gen::dcolor_fixture(Condition::E, 200, 0.5, 0.1, 3).unwrap();
        let m = evaluate(&g, 0, Condition::E, &p);
        let sel = select_pairs(&g, &m, &p).unwrap();
        let first = m.u.len() / 2;
        // Audit membership independently of the selection order.
        let u: std::collections::HashSet<_> = m.u.iter().copied().collect();
        let from_u = sel.pairs[1..].iter().filter(|&&(a, b)| u.contains(&a) && u.contains(&b)).count();
        assert!(from_u >= first.saturating_sub(1));
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &sel.pairs {
            assert!(seen.insert(a) && seen.insert(b));
        }
    }
}
