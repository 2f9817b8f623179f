//! Partial edge colorings with incrementally maintained missing sets.

mod equalize;
mod kempe;

pub use equalize::{
    equalize_balanced_sides, equalize_classes, equalize_per_side, side_gap, side_missing_counts,
    EqualizeError,
};
pub use kempe::{kempe_chain, kempe_swap, ChainShape, KempeChain, StaleChain};

use crate::graph::{EdgeId, Multigraph, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Colors are `1..=k`; 0 is never a valid color.
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeId),
    #[error("color {color} outside palette 1..={k}")]
    OutOfPalette { color: Color, k: usize },
    #[error("color {color} already present at vertex {vertex} on edge {edge}")]
    Conflict {
        vertex: Vertex,
        color: Color,
        edge: EdgeId,
    },
    #[error("malformed coloring: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone)]
pub struct EdgeColoring {
    k: usize,
    color: Vec<Color>,
    at: Vec<Vec<Option<EdgeId>>>,
    classes: Vec<BTreeSet<EdgeId>>,
    version: u64,
}

impl EdgeColoring {
    pub fn new(g: &Multigraph, k: usize) -> Self {
        EdgeColoring {
            k,
            color: vec![0; g.edge_capacity()],
            at: vec![vec![None; k + 1]; g.vertex_count()],
            classes: vec![BTreeSet::new(); k + 1],
            version: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn grow_palette(&mut self, k: usize) {
        if k <= self.k {
            return;
        }
        for row in &mut self.at {
            row.resize(k + 1, None);
        }
        self.classes.resize(k + 1, BTreeSet::new());
        self.k = k;
        self.version += 1;
    }

    /// Makes room for edges and vertices added to `g` after construction.
    pub fn sync_capacity(&mut self, g: &Multigraph) {
        if self.color.len() < g.edge_capacity() {
            self.color.resize(g.edge_capacity(), 0);
        }
        while self.at.len() < g.vertex_count() {
            self.at.push(vec![None; self.k + 1]);
        }
    }

    pub fn color_of(&self, e: EdgeId) -> Option<Color> {
        match self.color.get(e) {
            Some(&c) if c > 0 => Some(c),
            _ => None,
        }
    }

    pub fn is_colored(&self, e: EdgeId) -> bool {
        self.color_of(e).is_some()
    }

    /// The edge at `v` carrying color `c`, if any.
    pub fn edge_at(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        self.at[v][c]
    }

    pub fn is_missing(&self, v: Vertex, c: Color) -> bool {
        self.at[v][c].is_none()
    }

    pub fn missing(&self, v: Vertex) -> Vec<Color> {
        (1..=self.k).filter(|&c| self.at[v][c].is_none()).collect()
    }

    pub fn missing_count(&self, v: Vertex) -> usize {
        (1..=self.k).filter(|&c| self.at[v][c].is_none()).count()
    }

    pub fn first_missing(&self, v: Vertex) -> Option<Color> {
        (1..=self.k).find(|&c| self.at[v][c].is_none())
    }

    pub fn present(&self, v: Vertex) -> Vec<Color> {
        (1..=self.k).filter(|&c| self.at[v][c].is_some()).collect()
    }

    pub fn class(&self, c: Color) -> &BTreeSet<EdgeId> {
        &self.classes[c]
    }

    /// Sizes of classes `1..=k`; index 0 of the result is color 1.
    pub fn class_sizes(&self) -> Vec<usize> {
        (1..=self.k).map(|c| self.classes[c].len()).collect()
    }

    pub fn colors_used(&self) -> usize {
        (1..=self.k).filter(|&c| !self.classes[c].is_empty()).count()
    }

    pub fn max_color_used(&self) -> Color {
        (1..=self.k).rev().find(|&c| !self.classes[c].is_empty()).unwrap_or(0)
    }

    pub fn colored_count(&self) -> usize {
        self.classes.iter().map(|s| s.len()).sum()
    }

    pub fn uncolored(&self, g: &Multigraph) -> Vec<EdgeId> {
        g.edges().map(|(e, _, _)| e).filter(|&e| !self.is_colored(e)).collect()
    }

    pub fn is_total(&self, g: &Multigraph) -> bool {
        g.edges().all(|(e, _, _)| self.is_colored(e))
    }

    /// Vertices of `within` that miss color `c`.
    pub fn missing_vertices(&self, c: Color, within: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
        within.into_iter().filter(|&v| self.at[v][c].is_none()).collect()
    }

    pub fn set(&mut self, g: &Multigraph, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        let (u, v) = g.endpoints(e).ok_or(ColoringError::NoSuchEdge(e))?;
        if c == 0 || c > self.k {
            return Err(ColoringError::OutOfPalette { color: c, k: self.k });
        }
        self.sync_capacity(g);
        if self.color[e] == c {
            return Ok(());
        }
        for w in [u, v] {
            if let Some(f) = self.at[w][c] {
                if f != e {
                    return Err(ColoringError::Conflict {
                        vertex: w,
                        color: c,
                        edge: f,
                    });
                }
            }
        }
        self.unset(g, e);
        self.color[e] = c;
        self.at[u][c] = Some(e);
        self.at[v][c] = Some(e);
        self.classes[c].insert(e);
        self.version += 1;
        Ok(())
    }

    pub fn unset(&mut self, g: &Multigraph, e: EdgeId) -> Option<Color> {
        let c = self.color_of(e)?;
        let (u, v) = g.endpoints(e).expect("colored edge must exist");
        self.color[e] = 0;
        self.at[u][c] = None;
        self.at[v][c] = None;
        self.classes[c].remove(&e);
        self.version += 1;
        Some(c)
    }

    /// Forgets `e` when it is about to be deleted from the graph.
    pub fn forget(&mut self, g: &Multigraph, e: EdgeId) {
        self.unset(g, e);
    }

    /// Rebuilds a coloring for `target` (same or fewer edges, same ids) from
    /// the color of each of its edges in `self`.
    pub fn restricted_to(&self, target: &Multigraph) -> EdgeColoring {
        let mut c = EdgeColoring::new(target, self.k);
        for (e, _, _) in target.edges() {
            if let Some(col) = self.color_of(e) {
                c.set(target, e, col).expect("restriction of a proper coloring is proper");
            }
        }
        c
    }

    /// Renumbers colors so that the used ones are `1..=t`, in order.
    pub fn compact(&self, g: &Multigraph) -> EdgeColoring {
        let mut map = vec![0; self.k + 1];
        let mut next = 0;
        for c in 1..=self.k {
            if !self.classes[c].is_empty() {
                next += 1;
                map[c] = next;
            }
        }
        let mut out = EdgeColoring::new(g, next);
        for (e, _, _) in g.edges() {
            if let Some(c) = self.color_of(e) {
                out.set(g, e, map[c]).expect("relabelling keeps properness");
            }
        }
        out
    }

    pub fn to_json(&self, g: &Multigraph) -> ColoringJson {
        ColoringJson {
            k: self.k,
            classes: (1..=self.k).map(|c| self.classes[c].iter().copied().collect()).collect(),
            uncolored: self.uncolored(g),
        }
    }

    pub fn from_json(g: &Multigraph, j: &ColoringJson) -> Result<Self, ColoringError> {
        if j.classes.len() != j.k {
            return Err(ColoringError::Malformed(format!(
                "{} classes for k = {}",
                j.classes.len(),
                j.k
            )));
        }
        let mut c = EdgeColoring::new(g, j.k);
        for (idx, class) in j.classes.iter().enumerate() {
            for &e in class {
                c.set(g, e, idx + 1)?;
            }
        }
        for &e in &j.uncolored {
            if !g.has_edge_id(e) {
                return Err(ColoringError::NoSuchEdge(e));
            }
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub classes: Vec<Vec<EdgeId>>,
    pub uncolored: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub color: Color,
    pub first: EdgeId,
    pub second: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Edges whose color lies outside `1..=k`.
    pub out_of_palette: Vec<EdgeId>,
}

/// Recomputes properness from the per-edge assignment alone.
pub fn verify_proper(g: &Multigraph, c: &EdgeColoring) -> ProperReport {
    let mut seen: Vec<std::collections::HashMap<Color, EdgeId>> =
        vec![Default::default(); g.vertex_count()];
    let mut violations = Vec::new();
    let mut out_of_palette = Vec::new();
    for (e, u, v) in g.edges() {
        let Some(col) = c.color_of(e) else { continue };
        if col > c.k() {
            out_of_palette.push(e);
        }
        for w in [u, v] {
            if let Some(&f) = seen[w].get(&col) {
                violations.push(Violation {
                    vertex: w,
                    color: col,
                    first: f,
                    second: e,
                });
            } else {
                seen[w].insert(col, e);
            }
        }
    }
    ProperReport {
        ok: violations.is_empty() && out_of_palette.is_empty(),
        violations,
        out_of_palette,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    /// The parity count only applies to total colorings with `k ≥ Δ`.
    pub applicable: bool,
    /// `(color, number of vertices missing it)` for every offending color.
    pub violations: Vec<(Color, usize)>,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn parity_audit(g: &Multigraph, c: &EdgeColoring) -> ParityReport {
    let applicable = c.is_total(g) && c.k() >= g.max_degree();
    let n = g.vertex_count();
    let mut violations = Vec::new();
    if applicable {
        for col in 1..=c.k() {
            let miss = n - 2 * c.class(col).len();
            if miss % 2 != n % 2 {
                violations.push((col, miss));
            }
        }
    }
    ParityReport {
        applicable,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::complete;

    fn k4_matchings() -> (Multigraph, EdgeColoring) {
        let g = complete(4);
        let mut c = EdgeColoring::new(&g, 3);
        for (col, pairs) in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]].iter().enumerate() {
            for &(u, v) in pairs {
                c.set(&g, g.edges_between(u, v)[0], col + 1).unwrap();
            }
        }
        (g, c)
    }

    #[test]
    fn k4_by_matchings_is_proper() {
        let (g, c) = k4_matchings();
        assert!(verify_proper(&g, &c).ok);
        let p = parity_audit(&g, &c);
        assert!(p.applicable && p.passed());
    }

    #[test]
    fn conflicting_set_is_rejected() {
        let g = complete(3);
        let mut c = EdgeColoring::new(&g, 3);
        c.set(&g, 0, 1).unwrap();
        assert!(matches!(c.set(&g, 1, 1), Err(ColoringError::Conflict { .. })));
    }

    #[test]
    fn verifier_catches_forged_assignment() {
        let g = complete(3);
        let mut c = EdgeColoring::new(&g, 3);
        c.set(&g, 0, 1).unwrap();
        // Bypass the incremental tables to simulate corrupted state.
        c.color[1] = 1;
        let rep = verify_proper(&g, &c);
        assert!(!rep.ok);
        assert_eq!(rep.violations.len(), 1);
    }

    #[test]
    fn c5_parity() {
        let g = Multigraph::from_simple_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let mut c = EdgeColoring::new(&g, 3);
        for (e, col) in [1, 2, 1, 2, 3].into_iter().enumerate() {
            c.set(&g, e, col).unwrap();
        }
        let p = parity_audit(&g, &c);
        assert!(p.passed());
        for col in 1..=3 {
            assert_eq!((5 - 2 * c.class(col).len()) % 2, 1);
        }
    }

    #[test]
    fn json_roundtrip() {
        let (g, c) = k4_matchings();
        let j = c.to_json(&g);
        let back = EdgeColoring::from_json(&g, &j).unwrap();
        assert_eq!(back.to_json(&g), j);
        assert!(j.uncolored.is_empty());
    }

    #[test]
    fn compact_drops_gaps() {
        let g = complete(3);
        let mut c = EdgeColoring::new(&g, 9);
        c.set(&g, 0, 2).unwrap();
        c.set(&g, 1, 5).unwrap();
        c.set(&g, 2, 9).unwrap();
        let d = c.compact(&g);
        assert_eq!(d.k(), 3);
        assert!(verify_proper(&g, &d).ok);
    }
}
