//! Ordered record of guards evaluated by the pipeline.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub step: String,
    pub guard: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PipelineTrace {
    pub entries: Vec<TraceEntry>,
}

impl PipelineTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a guard and returns whether it passed.
    pub fn guard(&mut self, step: &str, guard: &str, lhs: f64, rhs: f64, pass: bool, note: impl Into<String>) -> bool {
        self.entries.push(TraceEntry {
            step: step.to_string(),
            guard: guard.to_string(),
            lhs,
            rhs,
            pass,
            note: note.into(),
        });
        pass
    }

    /// Guard of the form `lhs < rhs`.
    pub fn less(&mut self, step: &str, guard: &str, lhs: f64, rhs: f64) -> bool {
        self.guard(step, guard, lhs, rhs, lhs < rhs, "lhs < rhs")
    }

    /// Guard of the form `lhs ≤ rhs`.
    pub fn at_most(&mut self, step: &str, guard: &str, lhs: f64, rhs: f64) -> bool {
        self.guard(step, guard, lhs, rhs, lhs <= rhs, "lhs <= rhs")
    }

    /// Guard of the form `lhs ≥ rhs`.
    pub fn at_least(&mut self, step: &str, guard: &str, lhs: f64, rhs: f64) -> bool {
        self.guard(step, guard, lhs, rhs, lhs >= rhs, "lhs >= rhs")
    }

    pub fn note(&mut self, step: &str, note: impl Into<String>) {
        self.guard(step, "info", 0.0, 0.0, true, note);
    }

    pub fn failures(&self) -> impl Iterator<Item = &TraceEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn first_failure(&self) -> Option<&TraceEntry> {
        self.failures().next()
    }

    pub fn extend(&mut self, other: PipelineTrace) {
        self.entries.extend(other.entries);
    }
}
