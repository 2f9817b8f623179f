use super::{Multigraph, Vertex};
use serde::Serialize;

/// `|E| > Δ·⌊|V|/2⌋`.
pub fn is_overfull(g: &Multigraph) -> bool {
    g.edge_count() > g.max_degree() * (g.vertex_count() / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub delta_max: usize,
    pub delta_min: usize,
    pub df_per_vertex: Vec<usize>,
    pub df_total: usize,
    pub middle_degree_vertices: Vec<Vertex>,
    pub overfull: bool,
}

impl DeficiencyReport {
    /// V_i: vertices of degree exactly `i`.
    pub fn level(&self, i: usize) -> Vec<Vertex> {
        self.df_per_vertex
            .iter()
            .enumerate()
            .filter(|&(_, &df)| self.delta_max - df == i)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn deficiency_report(g: &Multigraph) -> DeficiencyReport {
    let delta_max = g.max_degree();
    let delta_min = g.min_degree();
    let df_per_vertex: Vec<usize> = (0..g.vertex_count()).map(|v| delta_max - g.degree(v)).collect();
    let df_total = df_per_vertex.iter().sum();
    let middle_degree_vertices = (0..g.vertex_count())
        .filter(|&v| g.degree(v) > delta_min && g.degree(v) < delta_max)
        .collect();
    DeficiencyReport {
        delta_max,
        delta_min,
        df_per_vertex,
        df_total,
        middle_degree_vertices,
        overfull: is_overfull(g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StarKind {
    Simple,
    Star,
    NearStar,
    NotNearStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarProfile {
    pub center: Option<Vertex>,
    pub mu_center: usize,
    pub residual_pair: Option<(Vertex, Vertex)>,
    pub kind: StarKind,
}

pub fn detect_star_structure(g: &Multigraph) -> StarProfile {
    let pairs = g.multi_pairs();
    if pairs.is_empty() {
        return StarProfile {
            center: None,
            mu_center: 0,
            residual_pair: None,
            kind: StarKind::Simple,
        };
    }
    let mut cands: Vec<Vertex> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    cands.sort_unstable();
    cands.dedup();
    let outside = |c: Vertex| -> Vec<(Vertex, Vertex)> {
        pairs.iter().copied().filter(|&(u, v)| u != c && v != c).collect()
    };
    for &c in &cands {
        if outside(c).is_empty() {
            return StarProfile {
                center: Some(c),
                mu_center: g.max_multiplicity_at(c),
                residual_pair: None,
                kind: StarKind::Star,
            };
        }
    }
    for &c in &cands {
        let rest = outside(c);
        if rest.len() == 1 {
            return StarProfile {
                center: Some(c),
                mu_center: g.max_multiplicity_at(c),
                residual_pair: Some(rest[0]),
                kind: StarKind::NearStar,
            };
        }
    }
    StarProfile {
        center: None,
        mu_center: 0,
        residual_pair: None,
        kind: StarKind::NotNearStar,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OverfullVerdict {
    NoWitness,
    /// Vertex set of a Δ(G)-overfull induced subgraph.
    Witness(Vec<Vertex>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseCheck {
    pub verdict: OverfullVerdict,
    /// False when the density regime that makes the check complete is not met;
    /// the verdict is then only a partial scan.
    pub precondition_met: bool,
}

/// Checks the whole graph (odd order) or every single-vertex deletion (even
/// order) for a Δ(G)-overfull subgraph.
pub fn overfull_subgraph_check_dense(g: &Multigraph, epsilon: f64) -> DenseCheck {
    let n = g.vertex_count();
    let delta = g.max_degree();
    let profile = detect_star_structure(g);
    let precondition_met = match (profile.kind, profile.center) {
        (StarKind::Star | StarKind::NearStar, Some(x)) => {
            let min_rest = (0..n)
                .filter(|&v| v != x)
                .map(|v| g.degree(v) - g.multiplicity(v, x))
                .min()
                .unwrap_or(0);
            min_rest as f64 >= (1.0 + epsilon) * n as f64 / 2.0
        }
        _ => g.min_degree() as f64 >= (1.0 + epsilon) * n.div_ceil(2) as f64,
    };
    let verdict = if n % 2 == 1 {
        if delta > 0 && is_overfull(g) {
            OverfullVerdict::Witness((0..n).collect())
        } else {
            OverfullVerdict::NoWitness
        }
    } else {
        let mut found = OverfullVerdict::NoWitness;
        for v in 0..n {
            let edges = g.edge_count() - g.degree(v);
            if edges <= delta * ((n - 1) / 2) {
                continue;
            }
            let mut sub_delta = 0;
            for u in (0..n).filter(|&u| u != v) {
                sub_delta = sub_delta.max(g.degree(u) - g.multiplicity(u, v));
            }
            if sub_delta == delta {
                found = OverfullVerdict::Witness((0..n).filter(|&u| u != v).collect());
                break;
            }
        }
        found
    };
    DenseCheck {
        verdict,
        precondition_met,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::complete;

    #[test]
    fn overfull_small_cases() {
        assert!(is_overfull(&complete(5)));
        assert!(!is_overfull(&complete(4)));
        let c5 = Multigraph::from_simple_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(is_overfull(&c5));
        assert!(!is_overfull(&Multigraph::new(0)));
        assert!(!is_overfull(&Multigraph::new(1)));
    }

    #[test]
    fn deficiency_examples() {
        let r = deficiency_report(&complete(5));
        assert_eq!(r.df_total, 0);
        assert!(r.overfull);
        let mut k5 = complete(5);
        k5.remove_edge(k5.edges_between(0, 1)[0]);
        let r = deficiency_report(&k5);
        assert_eq!((r.delta_max, r.df_total), (4, 2));
        assert_eq!(r.level(3), vec![0, 1]);
    }

    #[test]
    fn k7_minus_matching_not_overfull() {
        let mut g = complete(7);
        for (u, v) in [(0, 1), (2, 3), (4, 5)] {
            g.remove_edge(g.edges_between(u, v)[0]);
        }
        let r = deficiency_report(&g);
        assert_eq!(g.edge_count(), 18);
        assert_eq!((r.delta_max, r.df_total, r.overfull), (6, 6, false));
    }

    #[test]
    fn star_detection() {
        let simple = complete(4);
        assert_eq!(detect_star_structure(&simple).kind, StarKind::Simple);
        let star = Multigraph::build(5, &[(0, 1, 3), (0, 2, 2), (1, 2, 1), (3, 4, 1)]).unwrap();
        let p = detect_star_structure(&star);
        assert_eq!((p.kind, p.center, p.mu_center), (StarKind::Star, Some(0), 3));
        let near = Multigraph::build(5, &[(0, 1, 3), (0, 2, 2), (3, 4, 2)]).unwrap();
        let p = detect_star_structure(&near);
        assert_eq!(p.kind, StarKind::NearStar);
        assert_eq!(p.residual_pair, Some((3, 4)));
        let bad = Multigraph::build(6, &[(0, 1, 2), (2, 3, 2), (4, 5, 2)]).unwrap();
        assert_eq!(detect_star_structure(&bad).kind, StarKind::NotNearStar);
        let single = Multigraph::build(4, &[(2, 3, 2), (0, 1, 1)]).unwrap();
        assert_eq!(detect_star_structure(&single).center, Some(2));
    }

    #[test]
    fn dense_check_examples() {
        assert_eq!(
            overfull_subgraph_check_dense(&complete(7), 0.1).verdict,
            OverfullVerdict::Witness((0..7).collect())
        );
        let k6 = overfull_subgraph_check_dense(&complete(6), 0.5);
        assert_eq!(k6.verdict, OverfullVerdict::NoWitness);
        assert!(k6.precondition_met);
        let p = crate::gen::petersen_minus_vertex();
        let chk = overfull_subgraph_check_dense(&p, 0.1);
        assert_eq!(chk.verdict, OverfullVerdict::NoWitness);
        assert!(!chk.precondition_met);
    }
}
