use super::{select_pairs, Condition, EngineError, EngineParams, Matched};
use crate::coloring::{Color, EdgeColoring};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::partition::{adjust_for_center, adjusted_bound, balanced_partition, build_split, Partition, MAX_RETRIES};
use crate::trace::PipelineTrace;
use serde::Serialize;
use std::collections::BTreeSet;

/// Last completed stage of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Stage {
    Classified,
    Prepared,
    Step1,
    Step2,
    Step3,
    Done,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step3Record {
    pub color: Color,
    pub a_i: Vec<Vertex>,
    pub b_i: Vec<Vertex>,
    /// Vertices of U left without this color so the sides balance.
    pub fill: Vec<Vertex>,
    pub matched: usize,
}

/// Working state of one engine run. The coloring lives on `g_star`, which
/// is the input plus any augmentation edges; ids of input edges are kept.
#[derive(Debug, Clone)]
pub struct EngineState {
    pub condition: Condition,
    pub params: EngineParams,
    pub x: Vertex,
    pub y: Option<Vertex>,
    pub z: Option<Vertex>,
    pub half: usize,
    pub g_star: Multigraph,
    /// G_A ∪ G_B plus the center edges moved out of H, then augmented.
    pub g_ab: Multigraph,
    pub partition: Partition,
    pub nb: Vec<Vertex>,
    pub u: Vec<Vertex>,
    pub in_h: Vec<bool>,
    pub coloring: EdgeColoring,
    pub k: usize,
    pub ell: usize,
    pub s: f64,
    pub r: f64,
    pub s_set: Vec<Vertex>,
    pub s_a: Vec<Vertex>,
    pub s_b: Vec<Vertex>,
    pub(super) s_star: Vec<bool>,
    pub r_a: BTreeSet<EdgeId>,
    pub r_b: BTreeSet<EdgeId>,
    pub(super) r_deg: Vec<usize>,
    pub missing_after_step1: Vec<usize>,
    pub mcc_pairs: Vec<(Vertex, Vertex, Color)>,
    pub step3: Vec<Step3Record>,
    pub trace: PipelineTrace,
    pub stage: Stage,
}

impl EngineState {
    /// Pairs, partition and split for a matched condition.
    pub fn prepare(
        g: &Multigraph,
        params: &EngineParams,
        m: &Matched,
        mut trace: PipelineTrace,
    ) -> Result<Self, (EngineError, PipelineTrace)> {
        let sel = match select_pairs(g, m, params) {
            Ok(s) => s,
            Err(e) => return Err((e, trace)),
        };
        trace.guard("pairs", "t ≤ n", sel.pairs.len() as f64, (g.vertex_count() / 2) as f64, true, "");
        let part0 = match balanced_partition(g, &sel.pairs, params.seed) {
            Ok(p) => p,
            Err(e) => {
                trace.guard("partition", "balanced partition found", MAX_RETRIES as f64, MAX_RETRIES as f64, false, e.to_string());
                return Err((EngineError::Partition(e.to_string()), trace));
            }
        };
        trace.at_most("partition", "retries", part0.retries as f64, MAX_RETRIES as f64);
        let x = m.x;
        let part = adjust_for_center(&part0, g, x, &sel.nb);
        let order = g.vertex_count();
        let split_ok = 2 * part.a().len() == order && part.pairs.iter().all(|&(a, b)| part.in_a(a) != part.in_a(b));
        if !trace.guard("partition", "sides equal and pairs split", 0.0, 0.0, split_ok, "after center adjustment") {
            return Err((EngineError::Partition("center adjustment broke the partition".into()), trace));
        }
        trace.guard("partition", "x in A", 0.0, 0.0, part.in_a(x), "");
        trace.guard("partition", "N^b(x) in B", 0.0, 0.0, sel.nb.iter().all(|&v| !part.in_a(v)), "");
        let mut slack = f64::NEG_INFINITY;
        for v in 0..order {
            let (da, db) = part.side_degrees(g, v, false);
            let over = da.abs_diff(db) as f64 - adjusted_bound(m.condition, order, g.multiplicity(x, v));
            slack = slack.max(over);
        }
        trace.at_most("partition", "max |d_A(v) − d_B(v)| − allowance", slack, 0.0);
        let split = build_split(g, &part, x, m.condition);
        let mut moved = vec![false; g.edge_capacity()];
        for &e in &split.moved {
            moved[e] = true;
        }
        let mut in_h = vec![false; g.edge_capacity()];
        for (e, a, b) in g.edges() {
            in_h[e] = part.in_a(a) != part.in_a(b) && !moved[e];
        }
        let half = order / 2;
        let n = half as f64;
        let k = split.g_ab.max_degree() + (n.sqrt().floor() as usize);
        let (s, r) = match m.condition {
            Condition::E => (7.0 * n.powf(5.0 / 3.0), n.powf(5.0 / 6.0)),
            _ => (3.0 * params.eta * n * n, params.eta.sqrt() * n),
        };
        let ell = 2 * (r.floor() as usize);
        trace.guard("params", "k", k as f64, g.max_degree() as f64, k <= g.max_degree(), "k ≤ Δ");
        trace.guard("params", "k + ℓ", (k + ell) as f64, g.max_degree() as f64, k + ell <= g.max_degree(), "k + ℓ ≤ Δ");
        trace.guard("params", "s, r", s, r, true, format!("ℓ = {ell}"));
        let g_star = g.clone();
        let coloring = EdgeColoring::new(&g_star, k);
        Ok(EngineState {
            condition: m.condition,
            params: *params,
            x,
            y: m.y,
            z: m.z,
            half,
            g_ab: split.g_ab,
            partition: part,
            nb: sel.nb,
            u: m.u.clone(),
            in_h,
            coloring,
            k,
            ell,
            s,
            r,
            s_set: Vec::new(),
            s_a: Vec::new(),
            s_b: Vec::new(),
            s_star: vec![false; order],
            r_a: BTreeSet::new(),
            r_b: BTreeSet::new(),
            r_deg: vec![0; order],
            missing_after_step1: Vec::new(),
            mcc_pairs: Vec::new(),
            step3: Vec::new(),
            trace,
            stage: Stage::Prepared,
            g_star,
        })
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.partition.in_a(v)
    }

    pub fn in_s_star(&self, v: Vertex) -> bool {
        self.s_star[v]
    }

    pub fn r_degree(&self, v: Vertex) -> usize {
        self.r_deg[v]
    }

    /// Lowest-id uncolored H edge joining `u` and `v`.
    pub(super) fn free_h(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.g_star
            .edges_between(u, v)
            .iter()
            .copied()
            .find(|&e| self.in_h.get(e).copied().unwrap_or(false) && !self.coloring.is_colored(e))
    }

    /// The `i`-edge at `v` when it lies inside `v`'s side.
    pub(super) fn inside_partner(&self, v: Vertex, i: Color) -> Option<(EdgeId, Vertex)> {
        let e = self.coloring.edge_at(v, i)?;
        let w = self.g_star.other(e, v);
        (self.in_a(w) == self.in_a(v)).then_some((e, w))
    }

    /// Colored side edge whose ends both have residual degree below r.
    pub(super) fn good(&self, e: EdgeId) -> bool {
        let (u, v) = self.g_star.endpoints(e).expect("live edge");
        self.coloring.is_colored(e)
            && self.in_a(u) == self.in_a(v)
            && (self.r_deg[u] as f64) < self.r
            && (self.r_deg[v] as f64) < self.r
    }

    /// Uncolors a side edge into R_A or R_B.
    pub(super) fn push_residual(&mut self, e: EdgeId) {
        let (u, v) = self.g_star.endpoints(e).expect("live edge");
        self.coloring.unset(&self.g_star, e);
        if self.in_a(u) {
            self.r_a.insert(e);
        } else {
            self.r_b.insert(e);
        }
        self.r_deg[u] += 1;
        self.r_deg[v] += 1;
    }

    /// Vertices `b` on side `to_a` joined to `a` by an uncolored H edge and
    /// carrying a good `i`-edge `bb'` that avoids S*: `(b, b', free edge, i-edge)`.
    pub(super) fn reach(&self, a: Vertex, i: Color, to_a: bool) -> Vec<(Vertex, Vertex, EdgeId, EdgeId)> {
        let mut out = Vec::new();
        for b in self.g_star.neighbors(a) {
            if self.in_a(b) != to_a || self.s_star[b] {
                continue;
            }
            let Some(f) = self.free_h(a, b) else { continue };
            let Some((e, b2)) = self.inside_partner(b, i) else { continue };
            if !self.s_star[b2] && self.good(e) {
                out.push((b, b2, f, e));
            }
        }
        out
    }

    pub(super) fn fatal(&mut self, step: &str, guard: &str, lhs: f64, rhs: f64, note: &str) -> EngineError {
        self.trace.guard(step, guard, lhs, rhs, false, note);
        EngineError::GuardFailed {
            guard: guard.to_string(),
            lhs,
            rhs,
        }
    }

    pub(super) fn paint(&mut self, e: EdgeId, i: Color) -> Result<(), EngineError> {
        self.coloring
            .set(&self.g_star, e, i)
            .map_err(|err| EngineError::Coloring(format!("edge {e} color {i}: {err}")))
    }

    /// Steps 1–4 in order.
    pub fn run_all(&mut self, g: &Multigraph) -> Result<EdgeColoring, EngineError> {
        self.step1_color_gab(g)?;
        self.step2_fix_center()?;
        self.step2_relocate_s()?;
        self.step2_extend_to_factors()?;
        self.step3_color_residuals()?;
        self.step4_finish(g)
    }
}
