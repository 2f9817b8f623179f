use super::state::{EngineState, Stage, Step3Record};
use super::{Condition, EngineError};
use crate::classic::{bipartite_perfect_matching, konig_color, max_bipartite_matching, misra_gries, near_star_color};
use crate::coloring::{
    equalize_balanced_sides, equalize_classes, equalize_per_side, parity_audit, side_missing_counts, verify_proper, Color,
    EdgeColoring,
};
use crate::graph::{EdgeId, Multigraph, Vertex};
use std::collections::BTreeSet;

impl EngineState {
    fn n(&self) -> f64 {
        self.half as f64
    }

    fn side(&self, in_a: bool) -> Vec<Vertex> {
        (0..self.g_star.vertex_count()).filter(|&v| self.in_a(v) == in_a).collect()
    }

    /// Step 1: k-colors G_AB, pads low-degree vertices with extra side edges
    /// and balances missing counts across the sides.
    pub fn step1_color_gab(&mut self, g: &Multigraph) -> Result<(), EngineError> {
        let k = self.k;
        let n = self.n();
        let delta = g.max_degree();
        let base = near_star_color(&self.g_ab).map_err(|e| EngineError::Coloring(e.to_string()))?;
        if base.max_color_used() > k {
            return Err(self.fatal("step1", "colors on G_AB ≤ k", base.max_color_used() as f64, k as f64, "near-star coloring"));
        }
        let mut g_ab = self.g_ab.clone();
        let mut c = EdgeColoring::new(&g_ab, k);
        for (e, _, _) in g_ab.edges() {
            c.set(&g_ab, e, base.color_of(e).expect("total")).expect("copy");
        }

        let t = 7.0 * n.powf(2.0 / 3.0);
        self.s_set = (0..g.vertex_count()).filter(|&v| (delta - g.degree(v)) as f64 >= t).collect();
        self.s_a = self.s_set.iter().copied().filter(|&v| self.in_a(v)).collect();
        self.s_b = self.s_set.iter().copied().filter(|&v| !self.in_a(v)).collect();
        let mut added = 0usize;
        for side in [self.s_a.clone(), self.s_b.clone()] {
            for (p, &u) in side.iter().enumerate() {
                for &v in &side[p + 1..] {
                    while self.g_star.degree(u) < delta && self.g_star.degree(v) < delta {
                        let Some(i) = (1..=k).find(|&i| c.is_missing(u, i) && c.is_missing(v, i)) else { break };
                        let e1 = g_ab.add_edge(u, v).map_err(|e| EngineError::Coloring(e.to_string()))?;
                        let e2 = self.g_star.add_edge(u, v).map_err(|e| EngineError::Coloring(e.to_string()))?;
                        assert_eq!(e1, e2, "augmentation edge ids diverged");
                        c.sync_capacity(&g_ab);
                        self.coloring.sync_capacity(&self.g_star);
                        self.in_h.push(false);
                        c.set(&g_ab, e1, i).expect("i missing at both ends");
                        added += 1;
                    }
                }
            }
        }
        self.trace.guard("step1", "augmentation edges", added as f64, 0.0, true, format!("|S| = {}", self.s_set.len()));
        if self.g_star.max_degree() != delta {
            return Err(self.fatal("step1", "Δ(G*) = Δ(G)", self.g_star.max_degree() as f64, delta as f64, ""));
        }

        let eq = match self.condition {
            Condition::E => equalize_per_side(&g_ab, &mut c, &self.partition, self.x),
            _ => equalize_balanced_sides(&g_ab, &mut c, &self.partition, self.x),
        };
        let note = match &eq {
            Ok(()) => String::new(),
            Err(e) => e.to_string(),
        };
        self.trace.guard("step1", "equalize", 0.0, 0.0, eq.is_ok(), note);

        let (a, b) = (self.side(true), self.side(false));
        let ma = side_missing_counts(&c, &a);
        let mb = side_missing_counts(&c, &b);
        let gap = (1..=k).map(|i| ma[i].abs_diff(mb[i])).max().unwrap_or(0) as f64;
        let wide = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).map(|(i, j)| ma[i].abs_diff(ma[j])).max().unwrap_or(0);
        self.trace.at_most("step1", "S1.1 A-side missing counts within 2", wide as f64, 2.0);
        let bound = match self.condition {
            Condition::E => t,
            _ => 3.0 * self.params.eta * n,
        };
        self.trace.less("step1", "S1.2 max_i |φ̄_A⁻¹(i)| − |φ̄_B⁻¹(i)|", gap, bound);
        let low = self
            .s_set
            .iter()
            .filter(|&&u| (g_ab.degree(u) as f64) <= k as f64 - 2.0 * n.powf(2.0 / 3.0))
            .count();
        self.trace.guard("step1", "S_C", low as f64, self.s_set.len() as f64, true, "vertices of S far below k in G*_AB");

        for (e, _, _) in g_ab.edges() {
            self.paint(e, c.color_of(e).expect("total on G*_AB"))?;
        }
        self.missing_after_step1 = (0..self.g_star.vertex_count()).map(|v| self.coloring.missing_count(v)).collect();
        self.missing_caps();
        for &v in self.s_a.iter().chain(&self.s_b).chain(&self.nb) {
            self.s_star[v] = true;
        }
        self.s_star[self.x] = true;
        self.g_ab = g_ab;
        self.stage = Stage::Step1;
        Ok(())
    }

    /// Per-group caps on |φ̄(u)| after Step 1, logged as diagnostics. The
    /// k bound behind the y and z caps is taken as Δ/2 + 0.6ηn.
    fn missing_caps(&mut self) {
        let eps = self.params.epsilon;
        let n = self.n();
        let eta = self.params.eta;
        let t23 = n.powf(2.0 / 3.0);
        let order = self.g_star.vertex_count();
        let (x, y, z) = (self.x, self.y, self.z);
        let in_s: Vec<bool> = (0..order).map(|v| self.s_set.contains(&v)).collect();
        let in_nb: Vec<bool> = (0..order).map(|v| self.nb.contains(&v)).collect();
        let in_sides: Vec<bool> = (0..order).map(|v| self.s_a.contains(&v) || self.s_b.contains(&v)).collect();
        let mut groups: Vec<(&str, Vec<Vertex>, f64)> = Vec::new();
        if self.condition == Condition::E {
            groups.push(("x", vec![x], 0.5 * (1.0 - eps) * n + t23));
            groups.push(("V ∖ S", (0..order).filter(|&v| v != x && !in_s[v]).collect(), 6.0 * t23));
            groups.push(("S_A ∪ S_B", (0..order).filter(|&v| in_sides[v]).collect(), (0.5 - eps / 3.0) * n));
            groups.push(("S ∖ (S_A ∪ S_B)", (0..order).filter(|&v| in_s[v] && !in_sides[v]).collect(), 2.0 * t23));
        } else {
            groups.push(("x", vec![x], eta * n));
            let rest = (0..order).filter(|&v| v != x && !in_s[v] && !in_nb[v]).collect();
            groups.push(("V ∖ (S ∪ N^b(x) ∪ {x})", rest, 2.0 * eta * n));
            if matches!(self.condition, Condition::B | Condition::C) {
                groups.push(("N^b(x)", self.nb.clone(), (0.5 - eps / 3.0) * n));
            }
            match (self.condition, y, z) {
                (Condition::C, Some(y), _) => groups.push(("y (reading 0.6ηn)", vec![y], eta * n)),
                (Condition::D, Some(y), Some(z)) => groups.push(("y, z (reading 0.6ηn)", vec![y, z], (0.25 - eps / 5.0) * n)),
                _ => {}
            }
        }
        for (name, vs, cap) in groups {
            if vs.is_empty() {
                continue;
            }
            let worst = vs.iter().map(|&v| self.coloring.missing_count(v)).max().unwrap_or(0);
            self.trace.less("step1", &format!("|φ̄(u)| cap, u ∈ {name}"), worst as f64, cap);
        }
    }

    /// Step 2, center: every color missing at x goes on an H edge at x.
    pub fn step2_fix_center(&mut self) -> Result<(), EngineError> {
        let x = self.x;
        for i in self.coloring.missing(x) {
            let nbrs: Vec<Vertex> = self.g_star.neighbors(x).into_iter().filter(|&w| !self.in_a(w)).collect();
            if let Some((w, f)) = nbrs
                .iter()
                .filter(|&&w| self.coloring.is_missing(w, i))
                .find_map(|&w| self.free_h(x, w).map(|f| (w, f)))
            {
                let _ = w;
                self.paint(f, i)?;
                continue;
            }
            let pick = nbrs
                .iter()
                .filter_map(|&w| self.free_h(x, w).map(|f| (self.r_deg[w], w, f)))
                .min();
            let Some((_, w, f)) = pick else {
                self.trace.guard("step2", "center neighbour available", 0.0, 1.0, false, format!("color {i}"));
                return Err(EngineError::NoEligibleNeighbor(i));
            };
            let Some((e, _)) = self.inside_partner(w, i) else {
                return Err(EngineError::NoEligibleNeighbor(i));
            };
            let good = self.good(e);
            self.trace.guard("step2", "center swap edge is good", 0.0, 0.0, good, format!("color {i} at {w}"));
            self.push_residual(e);
            self.paint(f, i)?;
        }
        self.trace.at_most("step2", "x misses no color ≤ k", self.coloring.missing_count(x) as f64, 0.0);
        Ok(())
    }

    /// Step 2, S vertices: each missing color is taken from a good edge on
    /// the other side.
    pub fn step2_relocate_s(&mut self) -> Result<(), EngineError> {
        let mut todo: Vec<(Vertex, bool)> = self.s_a.iter().filter(|&&v| v != self.x).map(|&v| (v, false)).collect();
        let mut bside: Vec<Vertex> = self.s_b.iter().chain(&self.nb).copied().collect();
        bside.sort_unstable();
        bside.dedup();
        todo.extend(bside.into_iter().map(|v| (v, true)));
        for (v, to_a) in todo {
            for i in self.coloring.missing(v) {
                let Some(&(_, _, f, e)) = self.reach(v, i, to_a).first() else {
                    self.trace.guard("step2", "good edge for S vertex", 0.0, 1.0, false, format!("vertex {v} color {i}"));
                    return Err(EngineError::NoGoodEdge { color: i, vertex: v });
                };
                self.push_residual(e);
                self.paint(f, i)?;
            }
        }
        Ok(())
    }

    /// Step 2, extension: makes every class 1..=k a perfect matching of G*.
    pub fn step2_extend_to_factors(&mut self) -> Result<(), EngineError> {
        let order = self.g_star.vertex_count();
        let n = self.n();
        let widest = (1..=self.k)
            .map(|i| (0..order).filter(|&v| !self.in_a(v) && self.coloring.is_missing(v, i)).count())
            .max()
            .unwrap_or(0);
        let cap = (3.0 * self.params.eta * n).max(7.0 * n.powf(2.0 / 3.0));
        self.trace.less("step2", "B vertices missing a color < max{3ηn, 7n^(2/3)}", widest as f64, cap);
        for i in 1..=self.k {
            let ma: Vec<Vertex> = (0..order).filter(|&v| self.in_a(v) && self.coloring.is_missing(v, i)).collect();
            let mb: Vec<Vertex> = (0..order).filter(|&v| !self.in_a(v) && self.coloring.is_missing(v, i)).collect();
            if let Some(&v) = ma.iter().chain(&mb).find(|&&v| self.s_star[v]) {
                return Err(self.fatal("step2", "S* vertices miss no color", v as f64, i as f64, "vertex, color"));
            }
            // Direct H edges first, then alternating paths for the rest.
            let free = self
                .g_star
                .filter_edges(|e, _, _| self.in_h.get(e).copied().unwrap_or(false) && !self.coloring.is_colored(e));
            let direct = max_bipartite_matching(&free, &ma, &mb);
            let mut done = vec![false; order];
            for &e in &direct {
                let (u, v) = self.g_star.endpoints(e).expect("live");
                done[u] = true;
                done[v] = true;
                self.paint(e, i)?;
            }
            let ra: Vec<Vertex> = ma.into_iter().filter(|&v| !done[v]).collect();
            let rb: Vec<Vertex> = mb.into_iter().filter(|&v| !done[v]).collect();
            let m = ra.len().min(rb.len());
            for (&a, &b) in ra.iter().zip(&rb) {
                self.mcc_pairs.push((a, b, i));
                self.extend_cross(a, b, i)?;
            }
            for (rest, in_a) in [(&ra[m..], true), (&rb[m..], false)] {
                if rest.len() % 2 == 1 {
                    return Err(self.fatal("step2", "even same-side leftover", rest.len() as f64, 0.0, &format!("color {i}")));
                }
                for p in rest.chunks(2) {
                    self.mcc_pairs.push((p[0], p[1], i));
                    self.extend_same(p[0], p[1], i, in_a)?;
                }
            }
        }

        let mut bad = 0;
        for v in 0..order {
            bad += self.coloring.missing_count(v);
        }
        if bad > 0 {
            return Err(self.fatal("step2", "classes 1..k are perfect matchings", bad as f64, 0.0, "missing slots"));
        }
        self.trace.guard("step2", "classes 1..k are perfect matchings", 0.0, 0.0, true, "");
        let er = (self.r_a.len() + self.r_b.len()) as f64;
        self.trace.less("step2", "S2.1 e(R) < 4s", er, 4.0 * self.s);
        if self.condition != Condition::E {
            self.trace.guard("step2", "S2.1 e(R_A) = e(R_B)", self.r_a.len() as f64, self.r_b.len() as f64, self.r_a.len() == self.r_b.len(), "");
        }
        let dr = self.r_deg.iter().copied().max().unwrap_or(0) as f64;
        self.trace.less("step2", "S2.2 Δ(R) < r", dr, self.r);
        let mut worst = f64::NEG_INFINITY;
        for v in 0..order {
            let used = self.g_star.incident(v).iter().filter(|&&e| self.in_h[e] && self.coloring.is_colored(e)).count() as f64;
            let miss = self.missing_after_step1[v] as f64;
            let slack = if self.s_star[v] { used - miss } else { used - miss - self.r + 1.0 };
            worst = worst.max(slack);
        }
        self.trace.at_most("step2", "S2.3 colored H edges within budget", worst, 0.0);
        self.stage = Stage::Step2;
        Ok(())
    }

    fn extend_cross(&mut self, a: Vertex, b: Vertex, i: Color) -> Result<(), EngineError> {
        if let Some(f) = self.free_h(a, b) {
            return self.paint(f, i);
        }
        let from_b = self.reach(b, i, true);
        let from_a = self.reach(a, i, false);
        for &(_a1, a2, fa, ea) in &from_b {
            for &(_b1, b2, fb, eb) in &from_a {
                if let Some(mid) = self.free_h(a2, b2) {
                    self.push_residual(ea);
                    self.push_residual(eb);
                    self.paint(fa, i)?;
                    self.paint(fb, i)?;
                    return self.paint(mid, i);
                }
            }
        }
        self.trace.guard("step2", "alternating path", 0.0, 1.0, false, format!("color {i} between {a} and {b}"));
        Err(EngineError::NoAlternatingPath { color: i, u: a, v: b })
    }

    /// `u`, `w` on the same side both miss `i`.
    fn extend_same(&mut self, u: Vertex, w: Vertex, i: Color, in_a: bool) -> Result<(), EngineError> {
        let from_u = self.reach(u, i, !in_a);
        let from_w = self.reach(w, i, !in_a);
        let own: Vec<EdgeId> = self
            .coloring
            .class(i)
            .iter()
            .copied()
            .filter(|&e| {
                let (p, q) = self.g_star.endpoints(e).expect("live");
                self.in_a(p) == in_a && self.in_a(q) == in_a && !self.s_star[p] && !self.s_star[q] && self.good(e)
            })
            .collect();
        for &(b1, b2, fu, eb) in &from_u {
            for &(c1, c2, fw, ec) in &from_w {
                if c1 == b1 || c1 == b2 {
                    continue;
                }
                for &e in &own {
                    let (p, q) = self.g_star.endpoints(e).expect("live");
                    for (s, t) in [(p, q), (q, p)] {
                        let (Some(f1), Some(f2)) = (self.free_h(b2, s), self.free_h(t, c2)) else { continue };
                        self.push_residual(eb);
                        self.push_residual(ec);
                        self.push_residual(e);
                        self.paint(fu, i)?;
                        self.paint(fw, i)?;
                        self.paint(f1, i)?;
                        return self.paint(f2, i);
                    }
                }
            }
        }
        self.trace.guard("step2", "alternating path", 0.0, 1.0, false, format!("color {i} between {u} and {w}"));
        Err(EngineError::NoAlternatingPath { color: i, u, v: w })
    }

    /// Step 3: colors R_A and R_B with ℓ colors each and completes every new
    /// class with a perfect matching of the remaining H edges.
    pub fn step3_color_residuals(&mut self) -> Result<(), EngineError> {
        let (k, ell) = (self.k, self.ell);
        if (!self.r_a.is_empty() || !self.r_b.is_empty()) && ell == 0 {
            return Err(self.fatal("step3", "ℓ > 0", 0.0, 1.0, "R is nonempty"));
        }
        let delta = self.g_star.max_degree();
        if k + ell > delta {
            return Err(self.fatal("step3", "k + ℓ ≤ Δ(G*)", (k + ell) as f64, delta as f64, ""));
        }
        self.coloring.grow_palette(k + ell);
        if ell == 0 {
            self.stage = Stage::Step3;
            return Ok(());
        }
        let ca = self.color_side(&self.r_a.clone())?;
        let cb = self.color_side(&self.r_b.clone())?;
        let order_of = |c: &EdgeColoring| {
            let sizes = c.class_sizes();
            let mut idx: Vec<Color> = (1..=ell).collect();
            idx.sort_by(|&p, &q| sizes[q - 1].cmp(&sizes[p - 1]).then(p.cmp(&q)));
            idx
        };
        let (oa, ob) = (order_of(&ca), order_of(&cb));
        for t in 0..ell {
            let col = k + t + 1;
            for &e in ca.class(oa[t]).iter().chain(cb.class(ob[t])) {
                self.r_a.remove(&e);
                self.r_b.remove(&e);
                self.paint(e, col)?;
            }
        }
        let order = self.g_star.vertex_count();
        let delta = self.g_star.max_degree();
        for t in 0..ell {
            let col = k + t + 1;
            let a_i: Vec<Vertex> = (0..order).filter(|&v| self.in_a(v) && !self.coloring.is_missing(v, col)).collect();
            let b_i: Vec<Vertex> = (0..order).filter(|&v| !self.in_a(v) && !self.coloring.is_missing(v, col)).collect();
            let m = self.match_class(col, delta)?;
            self.step3.push(Step3Record {
                color: col,
                a_i,
                b_i,
                fill: m.1,
                matched: m.0.len(),
            });
        }
        let short = (0..order)
            .filter(|&v| self.g_star.degree(v) == delta)
            .map(|v| self.coloring.missing_count(v))
            .sum::<usize>();
        self.trace.at_most("step3", "Δ-vertices present 1..k+ℓ", short as f64, 0.0);
        self.stage = Stage::Step3;
        Ok(())
    }

    /// Uncolored H edges at `v`.
    fn free_h_degree(&self, v: Vertex) -> usize {
        self.g_star
            .incident(v)
            .iter()
            .filter(|&&e| self.in_h[e] && !self.coloring.is_colored(e))
            .count()
    }

    /// Colors a perfect matching of H between the vertices still missing
    /// `col`. Vertices whose free H degree is below the number of colors
    /// left may sit this color out; they are dropped first to balance the
    /// sides and then in cross pairs while no matching exists.
    fn match_class(&mut self, col: Color, delta: usize) -> Result<(Vec<EdgeId>, Vec<Vertex>), EngineError> {
        let order = self.g_star.vertex_count();
        let left_colors = delta + 1 - col;
        let slack = |st: &Self, v: Vertex| left_colors as i64 - st.free_h_degree(v) as i64;
        let mut left: Vec<Vertex> = (0..order).filter(|&v| self.in_a(v) && self.coloring.is_missing(v, col)).collect();
        let mut right: Vec<Vertex> = (0..order).filter(|&v| !self.in_a(v) && self.coloring.is_missing(v, col)).collect();
        let mut fill = Vec::new();
        // Largest slack first, lowest index on ties.
        let pick = |st: &Self, side: &[Vertex]| -> Option<usize> {
            (0..side.len())
                .filter(|&p| slack(st, side[p]) > 0)
                .max_by_key(|&p| (slack(st, side[p]), std::cmp::Reverse(side[p])))
        };
        for side in [&mut left, &mut right] {
            while let Some(p) = side.iter().position(|&v| self.free_h_degree(v) == 0) {
                fill.push(side.remove(p));
            }
        }
        loop {
            while left.len() != right.len() {
                let long = if left.len() > right.len() { &mut left } else { &mut right };
                let Some(p) = pick(self, long) else {
                    let diff = left.len().abs_diff(right.len()) as f64;
                    return Err(self.fatal("step3", "slack covers the side imbalance", diff, 0.0, &format!("color {col}")));
                };
                fill.push(long.remove(p));
            }
            let hg = self
                .g_star
                .filter_edges(|e, _, _| self.in_h.get(e).copied().unwrap_or(false) && !self.coloring.is_colored(e));
            match bipartite_perfect_matching(&hg, &left, &right) {
                Ok(m) => {
                    for &e in &m {
                        self.paint(e, col)?;
                    }
                    return Ok((m, fill));
                }
                Err(e) => {
                    let (pa, pb) = (pick(self, &left), pick(self, &right));
                    let (Some(pa), Some(pb)) = (pa, pb) else {
                        self.trace.guard("step3", "perfect matching in H_i", 0.0, 1.0, false, format!("color {col}: {e}"));
                        return Err(EngineError::MatchingFailed(col));
                    };
                    fill.push(left.remove(pa));
                    fill.push(right.remove(pb));
                }
            }
        }
    }

    fn color_side(&mut self, edges: &BTreeSet<EdgeId>) -> Result<EdgeColoring, EngineError> {
        let ell = self.ell;
        let r = self.g_star.filter_edges(|e, _, _| edges.contains(&e));
        let mut c = if r.is_simple() && r.max_degree() < ell {
            let mut c = EdgeColoring::new(&r, ell);
            misra_gries(&r, &mut c, &r.edge_ids()).map_err(|e| EngineError::Coloring(e.to_string()))?;
            c
        } else {
            let base = near_star_color(&r).map_err(|e| EngineError::Coloring(e.to_string()))?;
            if base.max_color_used() > ell {
                return Err(self.fatal("step3", "residual colors ≤ ℓ", base.max_color_used() as f64, ell as f64, ""));
            }
            let mut c = base.compact(&r);
            c.grow_palette(ell);
            c
        };
        c.grow_palette(ell);
        let eq = equalize_classes(&r, &mut c);
        let note = eq.as_ref().err().map(|e| e.to_string()).unwrap_or_default();
        self.trace.guard("step3", "residual classes equalized", 0.0, 0.0, eq.is_ok(), note);
        Ok(c)
    }

    /// Step 4: König-colors the remaining bipartite H edges and restricts the
    /// result to the input graph.
    pub fn step4_finish(&mut self, g: &Multigraph) -> Result<EdgeColoring, EngineError> {
        let rest = self.coloring.uncolored(&self.g_star);
        if rest.iter().any(|&e| !self.in_h[e]) {
            return Err(self.fatal("step4", "leftover edges lie in H", 0.0, 0.0, ""));
        }
        let delta = self.g_star.max_degree();
        let used = self.k + self.ell;
        if used > delta {
            return Err(self.fatal("step4", "k + ℓ ≤ Δ(G*)", used as f64, delta as f64, ""));
        }
        let bound = delta - used;
        let keep: BTreeSet<EdgeId> = rest.iter().copied().collect();
        let r = self.g_star.filter_edges(|e, _, _| keep.contains(&e));
        if r.max_degree() > bound {
            return Err(self.fatal("step4", "Δ(R) ≤ Δ − k − ℓ", r.max_degree() as f64, bound as f64, ""));
        }
        self.trace.at_most("step4", "Δ(R) ≤ Δ − k − ℓ", r.max_degree() as f64, bound as f64);
        let kc = konig_color(&r).map_err(|e| EngineError::Coloring(e.to_string()))?;
        self.coloring.grow_palette(delta.max(used));
        for &e in &rest {
            self.paint(e, used + kc.color_of(e).expect("König coloring is total"))?;
        }
        let mut out = EdgeColoring::new(g, g.max_degree());
        for (e, _, _) in g.edges() {
            let col = self.coloring.color_of(e).expect("total on G*");
            out.set(g, e, col).map_err(|err| EngineError::Coloring(err.to_string()))?;
        }
        let rep = verify_proper(g, &out);
        let total = out.is_total(g);
        if !rep.ok || !total {
            return Err(self.fatal("step4", "proper and total", rep.violations.len() as f64, 0.0, ""));
        }
        self.trace.guard("step4", "proper and total", 0.0, 0.0, true, "");
        let par = parity_audit(g, &out);
        self.trace.guard("step4", "parity", par.violations.len() as f64, 0.0, par.passed(), "parity_audit");
        self.stage = Stage::Done;
        Ok(out)
    }
}
