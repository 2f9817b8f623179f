use super::{Condition, EngineParams};
use crate::graph::{detect_star_structure, Multigraph, Vertex};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub clauses: Vec<Clause>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, lhs: f64, rhs: f64, pass: bool) {
        self.clauses.push(Clause {
            name: name.to_string(),
            lhs,
            rhs,
            pass,
        });
    }
}

/// A condition that holds, with the special vertices it names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matched {
    pub condition: Condition,
    pub x: Vertex,
    pub y: Option<Vertex>,
    pub z: Option<Vertex>,
    /// Vertices at least ηn below the maximum degree.
    pub u: Vec<Vertex>,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Classification {
    Matched(Matched),
    NotApplicable(Vec<ConditionReport>),
}

/// Degree-derived quantities shared by all clause checks.
struct Profile {
    n: f64,
    delta: usize,
    dmin: usize,
    dmin_minus_x: usize,
    mu_x: usize,
    center_ok: bool,
    residual: Option<(Vertex, Vertex)>,
    mu_rest: usize,
    u: Vec<Vertex>,
}

fn profile(g: &Multigraph, x: Vertex, eta: f64) -> Profile {
    let order = g.vertex_count();
    let n = (order / 2) as f64;
    let delta = g.max_degree();
    let pairs_outside: Vec<(Vertex, Vertex)> = g.multi_pairs().into_iter().filter(|&(a, b)| a != x && b != x).collect();
    let (center_ok, residual) = match pairs_outside.len() {
        0 => (true, None),
        1 => (true, Some(pairs_outside[0])),
        _ => (false, None),
    };
    let mu_rest = pairs_outside.iter().map(|&(a, b)| g.multiplicity(a, b)).max().unwrap_or(1);
    let dmin_minus_x = (0..order)
        .filter(|&w| w != x)
        .map(|w| g.degree(w) - g.multiplicity(x, w))
        .min()
        .unwrap_or(0);
    let u = (0..order).filter(|&v| (delta - g.degree(v)) as f64 >= eta * n).collect();
    Profile {
        n,
        delta,
        dmin: g.min_degree(),
        dmin_minus_x,
        mu_x: g.max_multiplicity_at(x),
        center_ok,
        residual,
        mu_rest,
        u,
    }
}

fn b2f(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Evaluates every clause of `cond` with `x` as the multi-center.
pub fn evaluate(g: &Multigraph, x: Vertex, cond: Condition, params: &EngineParams) -> Matched {
    let (eps, eta) = (params.epsilon, params.eta);
    let p = profile(g, x, eta);
    let n = p.n;
    let order = g.vertex_count();
    let regular = p.delta == p.dmin;
    let star = p.center_ok && p.residual.is_none();
    let near = p.center_ok;
    let mut rep = ConditionReport {
        condition: cond,
        clauses: Vec::new(),
    };
    rep.push("even order", order as f64, 4.0, order.is_multiple_of(2) && order >= 4);
    let ds = |w: Vertex| g.simple_degree(w) as f64;
    let (mut y, mut z) = (None, None);
    match cond {
        Condition::A => {
            rep.push("star-multigraph", b2f(star), 1.0, star);
            rep.push("regular", p.dmin as f64, p.delta as f64, regular);
            rep.push("δ(G) ≥ δ(G−x)", p.dmin as f64, p.dmin_minus_x as f64, p.dmin >= p.dmin_minus_x);
            let rhs = (1.0 + eps / 2.0) * n;
            rep.push("δ(G−x) ≥ (1+ε/2)n", p.dmin_minus_x as f64, rhs, p.dmin_minus_x as f64 >= rhs);
            rep.push("μ(x) < ηn", p.mu_x as f64, eta * n, (p.mu_x as f64) < eta * n);
        }
        Condition::B => {
            rep.push("near star-multigraph", b2f(near), 1.0, near);
            rep.push("regular", p.dmin as f64, p.delta as f64, regular);
            let rhs = (1.0 + eps) * n;
            rep.push("δ ≥ (1+ε)n", p.dmin as f64, rhs, p.dmin as f64 >= rhs);
            rep.push("d^s(x) ≥ 2", ds(x), 2.0, ds(x) >= 2.0);
            let heavy = g.neighbors(x).into_iter().filter(|&w| g.multiplicity(x, w) as f64 >= eta * n).count();
            rep.push("#{w : e(x,w) ≥ ηn} ≤ √n", heavy as f64, n.sqrt(), heavy as f64 <= n.sqrt());
            if let Some((a, b)) = p.residual {
                y = Some(a);
                z = Some(b);
            }
            rep.push("μ(G−x) < √n", p.mu_rest as f64, n.sqrt(), (p.mu_rest as f64) < n.sqrt());
            let worst = (0..order).filter(|&w| w != x).map(ds).fold(f64::INFINITY, f64::min);
            rep.push("d^s(w) ≥ (1+ε)n for w ≠ x", worst, rhs, worst >= rhs);
        }
        Condition::C => {
            rep.push("star-multigraph", b2f(star), 1.0, star);
            rep.push("regular", p.dmin as f64, p.delta as f64, regular);
            let rhs = (1.0 + eps) * n;
            rep.push("δ ≥ (1+ε)n", p.dmin as f64, rhs, p.dmin as f64 >= rhs);
            rep.push("d^s(x) ≥ 2", ds(x), 2.0, ds(x) >= 2.0);
            rep.push("d^s(x) < √n", ds(x), n.sqrt(), ds(x) < n.sqrt());
            let yv = (0..order).filter(|&w| w != x).min_by(|&a, &b| ds(a).total_cmp(&ds(b)).then(a.cmp(&b)));
            y = yv;
            let dy = yv.map(ds).unwrap_or(0.0);
            rep.push("d^s(y) ≥ 2εn", dy, 2.0 * eps * n, dy >= 2.0 * eps * n);
            let worst = (0..order).filter(|&w| w != x && Some(w) != yv).map(ds).fold(f64::INFINITY, f64::min);
            rep.push("d^s(w) ≥ (1+ε)n for w ≠ x, y", worst, rhs, worst >= rhs);
        }
        Condition::D => {
            rep.push("star-multigraph", b2f(star), 1.0, star);
            rep.push("μ(x) < ηn", p.mu_x as f64, eta * n, (p.mu_x as f64) < eta * n);
            let low: Vec<Vertex> = (0..order).filter(|&w| g.degree(w) < p.delta).collect();
            let pick: Vec<Vertex> = if low.is_empty() {
                (0..order).filter(|&w| w != x).take(2).collect()
            } else {
                low.clone()
            };
            rep.push("exactly y, z below Δ", low.len() as f64, 2.0, low.len() == 2 || low.is_empty());
            if pick.len() >= 2 {
                let (a, b) = (pick[0], pick[1]);
                y = Some(a);
                z = Some(b);
                let ok = a != x && b != x && g.degree(a) == p.dmin && g.degree(b) == p.dmin;
                rep.push("d(y) = d(z) = δ", g.degree(a) as f64, p.dmin as f64, ok);
                let lo = (0.5 + 1.5 * eps) * n;
                rep.push("δ ≥ (1/2+3ε/2)n", p.dmin as f64, lo, p.dmin as f64 >= lo);
                let m = ds(a).min(ds(b));
                let rhs = p.delta as f64 - 0.5 * (1.0 - 0.9 * eps) * n;
                rep.push("min d^s(y), d^s(z) > Δ − (1−0.9ε)n/2", m, rhs, m > rhs);
                let rhs = (1.0 + eps) * n;
                rep.push("Δ ≥ (1+ε)n", p.delta as f64, rhs, p.delta as f64 >= rhs);
                let worst = (0..order).filter(|&w| w != x && w != a && w != b).map(ds).fold(f64::INFINITY, f64::min);
                let need = ((1.0 + eps) * n - p.mu_x as f64).max((1.0 + 0.9 * eps) * n);
                rep.push("d^s(w) ≥ max((1+ε)n − μ(x), (1+0.9ε)n)", worst, need, worst >= need);
            } else {
                rep.push("d(y) = d(z) = δ", 0.0, 1.0, false);
            }
        }
        Condition::E => {
            rep.push("star-multigraph", b2f(star), 1.0, star);
            rep.push("|U| ≥ ηn", p.u.len() as f64, eta * n, p.u.len() as f64 >= eta * n);
            rep.push("δ(G) ≥ δ(G−x)", p.dmin as f64, p.dmin_minus_x as f64, p.dmin >= p.dmin_minus_x);
            let rhs = (1.0 + eps) * n;
            rep.push("δ(G−x) ≥ (1+ε)n", p.dmin_minus_x as f64, rhs, p.dmin_minus_x as f64 >= rhs);
            rep.push("μ(x) ≤ 2/η", p.mu_x as f64, 2.0 / eta, p.mu_x as f64 <= 2.0 / eta);
        }
    }
    Matched {
        condition: cond,
        x,
        y,
        z,
        u: p.u,
        report: rep,
    }
}

/// Multi-center used for classification: the detected center, or vertex 0
/// when the graph is simple.
pub fn default_center(g: &Multigraph) -> Vertex {
    detect_star_structure(g).center.unwrap_or(0)
}

/// First of (a)–(e) whose clauses all hold, with the center taken from the
/// star structure.
pub fn classify_condition(g: &Multigraph, params: &EngineParams) -> Classification {
    if g.vertex_count() == 0 {
        return Classification::NotApplicable(Vec::new());
    }
    classify_at(g, default_center(g), params)
}

pub fn classify_at(g: &Multigraph, x: Vertex, params: &EngineParams) -> Classification {
    let mut reports = Vec::new();
    for cond in Condition::ALL {
        let m = evaluate(g, x, cond, params);
        if m.report.holds() {
            return Classification::Matched(m);
        }
        reports.push(m.report);
    }
    Classification::NotApplicable(reports)
}
