//! Δ-edge-coloring of dense near star-multigraphs of even order.

mod classify;
mod pairs;
mod state;
mod steps;

pub use classify::{
    classify_at, classify_condition, default_center, evaluate, Classification, Clause, ConditionReport, Matched,
};
pub use pairs::{select_pairs, PairSelection};
pub use state::{EngineState, Stage, Step3Record};

use crate::classic::{konig_color, misra_gries, near_star_color};
use crate::coloring::{parity_audit, verify_proper, Color, EdgeColoring};
use crate::graph::{Multigraph, Vertex};
use crate::trace::PipelineTrace;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
    D,
    E,
}

impl Condition {
    pub const ALL: [Condition; 5] = [Condition::A, Condition::B, Condition::C, Condition::D, Condition::E];

    pub fn letter(self) -> char {
        match self {
            Condition::A => 'a',
            Condition::B => 'b',
            Condition::C => 'c',
            Condition::D => 'd',
            Condition::E => 'e',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Condition::ALL.into_iter().find(|k| k.letter() == c.to_ascii_lowercase())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineParams {
    pub epsilon: f64,
    pub eta: f64,
    pub seed: u64,
}

impl EngineParams {
    /// η defaults to ε²/100.
    pub fn new(epsilon: f64) -> Self {
        EngineParams {
            epsilon,
            eta: epsilon * epsilon / 100.0,
            seed: 0,
        }
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("no condition applies")]
    NotApplicable,
    #[error("not enough vertices to form the pair set")]
    NotEnoughVertices,
    #[error("partition: {0}")]
    Partition(String),
    #[error("guard {guard} failed: {lhs} vs {rhs}")]
    GuardFailed { guard: String, lhs: f64, rhs: f64 },
    #[error("no uncolored center edge available for color {0}")]
    NoEligibleNeighbor(Color),
    #[error("no good edge to move color {color} away from vertex {vertex}")]
    NoGoodEdge { color: Color, vertex: Vertex },
    #[error("no alternating path for color {color} between {u} and {v}")]
    NoAlternatingPath { color: Color, u: Vertex, v: Vertex },
    #[error("no perfect matching in H_{0}")]
    MatchingFailed(Color),
    #[error("coloring subroutine failed: {0}")]
    Coloring(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EngineVerdict {
    Colored,
    Fallback,
}

/// Outcome of [`dcolor`]; the coloring is always proper and total.
#[derive(Debug, Clone)]
pub struct EngineRun {
    pub verdict: EngineVerdict,
    pub coloring: EdgeColoring,
    pub trace: PipelineTrace,
    pub condition: Option<Condition>,
    pub stage: Stage,
    pub error: Option<EngineError>,
}

/// Classifies `g` and runs Steps 1–4; any failure yields a fallback
/// coloring with the reason in the trace.
pub fn dcolor(g: &Multigraph, params: &EngineParams) -> EngineRun {
    let mut trace = PipelineTrace::new();
    match classify_condition(g, params) {
        Classification::Matched(m) => {
            log_clauses(&mut trace, &m.report);
            run_matched(g, params, m, trace)
        }
        Classification::NotApplicable(reports) => {
            for r in &reports {
                log_clauses(&mut trace, r);
            }
            trace.guard("classify", "condition applies", 0.0, 1.0, false, "NotApplicable");
            fallback(g, trace, None, Stage::Classified, EngineError::NotApplicable)
        }
    }
}

/// Runs Steps 1–4 under a condition chosen by the caller. Clauses are
/// evaluated and logged but do not stop the run.
pub fn dcolor_forced(g: &Multigraph, params: &EngineParams, mut setup: Matched) -> EngineRun {
    let mut trace = PipelineTrace::new();
    let check = evaluate(g, setup.x, setup.condition, params);
    log_clauses(&mut trace, &check.report);
    setup.report = check.report;
    if setup.y.is_none() {
        setup.y = check.y;
        setup.z = check.z;
    }
    run_matched(g, params, setup, trace)
}

fn log_clauses(trace: &mut PipelineTrace, rep: &ConditionReport) {
    let step = format!("classify:{}", rep.condition.letter());
    for c in &rep.clauses {
        trace.guard(&step, &c.name, c.lhs, c.rhs, c.pass, "clause");
    }
}

fn run_matched(g: &Multigraph, params: &EngineParams, m: Matched, trace: PipelineTrace) -> EngineRun {
    let cond = m.condition;
    let mut st = match EngineState::prepare(g, params, &m, trace) {
        Ok(st) => st,
        Err((e, trace)) => return fallback(g, trace, Some(cond), Stage::Classified, e),
    };
    match st.run_all(g) {
        Ok(c) => EngineRun {
            verdict: EngineVerdict::Colored,
            coloring: c,
            trace: st.trace,
            condition: Some(cond),
            stage: Stage::Done,
            error: None,
        },
        Err(e) => {
            let stage = st.stage;
            fallback(g, st.trace, Some(cond), stage, e)
        }
    }
}

fn fallback(g: &Multigraph, mut trace: PipelineTrace, cond: Option<Condition>, stage: Stage, e: EngineError) -> EngineRun {
    trace.guard("fallback", "pipeline completed", 0.0, 1.0, false, e.to_string());
    let c = fallback_coloring(g);
    let rep = verify_proper(g, &c);
    trace.guard("fallback", "proper", rep.violations.len() as f64, 0.0, rep.ok, "verify_proper");
    let par = parity_audit(g, &c);
    trace.guard("fallback", "parity", par.violations.len() as f64, 0.0, par.passed(), "parity_audit");
    EngineRun {
        verdict: EngineVerdict::Fallback,
        coloring: c,
        trace,
        condition: cond,
        stage,
        error: Some(e),
    }
}

/// König for bipartite input, near-star coloring when the structure allows
/// it, otherwise Misra–Gries or first-fit.
pub fn fallback_coloring(g: &Multigraph) -> EdgeColoring {
    if let Ok(c) = konig_color(g) {
        return c;
    }
    if let Ok(c) = near_star_color(g) {
        return c;
    }
    if g.is_simple() {
        let mut c = EdgeColoring::new(g, g.max_degree() + 1);
        if misra_gries(g, &mut c, &g.edge_ids()).is_ok() {
            return c;
        }
    }
    greedy_color(g)
}

/// First-fit coloring; uses at most 2Δ − 1 colors.
pub fn greedy_color(g: &Multigraph) -> EdgeColoring {
    let k = (2 * g.max_degree()).saturating_sub(1).max(1);
    let mut c = EdgeColoring::new(g, k);
    for (e, u, v) in g.edges() {
        let col = (1..=k).find(|&col| c.is_missing(u, col) && c.is_missing(v, col)).expect("2Δ − 1 colors suffice");
        c.set(g, e, col).expect("free at both ends");
    }
    c
}
