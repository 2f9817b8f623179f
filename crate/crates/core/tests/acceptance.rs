//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use dense_edgecolor::classic::{dirac_hamiltonian, hakimi_realize, konig_color};
use dense_edgecolor::coloring::{parity_audit, EdgeColoring};
use dense_edgecolor::engine::{classify_condition, Classification, Condition, EngineParams, EngineState};
use dense_edgecolor::gen;
use dense_edgecolor::graph::{overfull_subgraph_check_dense, Multigraph, OverfullVerdict};
use dense_edgecolor::oracle::{brute_chromatic_index, brute_overfull_scan};
use dense_edgecolor::output::{color_graph, to_json, ColorOptions, ColorReport, Verdict};
use dense_edgecolor::partition::{balanced_partition, MAX_RETRIES};
use dense_edgecolor::reduction::ReductionCase;
use dense_edgecolor::trace::PipelineTrace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Properness recomputed from the class lists alone.
fn proper_total(g: &Multigraph, c: &EdgeColoring) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![vec![false; c.k() + 1]; n];
    let mut colored = 0;
    for col in 1..=c.k() {
        for &e in c.class(col) {
            let Some((u, v)) = g.endpoints(e) else { return false };
            for w in [u, v] {
                if seen[w][col] {
                    return false;
                }
                seen[w][col] = true;
            }
            colored += 1;
        }
    }
    colored == g.edge_count()
}

/// In a total proper coloring every class is a matching, so the number of
/// vertices missing a color has the parity of the order.
fn parity_ok(g: &Multigraph, c: &EdgeColoring) -> bool {
    let n = g.vertex_count();
    (1..=c.k()).all(|col| (n - 2 * c.class(col).len()) % 2 == n % 2)
}

struct Run {
    name: String,
    graph: Multigraph,
    report: ColorReport,
}

fn mixed_instance(i: usize) -> (String, Multigraph) {
    let mut r = ChaCha8Rng::seed_from_u64(i as u64);
    let seed = i as u64;
    match i % 8 {
        0 => {
            let n = r.gen_range(1..=40);
            (format!("gnp{n}"), gen::random_graph(n, r.gen_range(0.05..0.95), seed))
        }
        1 => {
            let n = r.gen_range(10..=301);
            let floor = (n as f64 * 0.7) as usize;
            (format!("dense{n}"), gen::random_dense(n, 0.85, floor, seed).unwrap())
        }
        2 => {
            let n = r.gen_range(1..=301);
            (format!("K{n}"), gen::complete(n))
        }
        3 => {
            let n = r.gen_range(4..=101);
            let m = r.gen_range(1..=n / 2);
            (format!("K{n}-M{m}"), gen::complete_minus_matching(n, m).unwrap())
        }
        4 => {
            let n = 2 * r.gen_range(3..=60);
            let mu = r.gen_range(1..=4);
            (format!("star{n}"), gen::random_star_multigraph(n, r.gen_range(0.5..0.95), mu, seed))
        }
        5 => {
            let n = 2 * r.gen_range(3..=150);
            let d = r.gen_range(n / 2..n);
            (format!("reg{n}-{d}"), gen::regular(n, d, seed).unwrap())
        }
        6 => {
            let n: usize = r.gen_range(3..=200);
            let d = n.div_ceil(2);
            (format!("mindeg{n}"), gen::random_min_degree(n, d, seed))
        }
        _ => {
            let n = 2 * r.gen_range(2..=60);
            (format!("bip{n}"), gen::random_bipartite_multigraph(n, r.gen_range(1..=3), 0.6, seed))
        }
    }
}

fn run_mixed(count: usize) -> Vec<Run> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let opts = ColorOptions::default();
    let mut runs: Vec<(usize, Run)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..count)
                        .step_by(threads)
                        .map(|i| {
                            let (name, graph) = mixed_instance(i);
                            let report = color_graph(&graph, &opts).expect("valid input");
                            (i, Run { name, graph, report })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    runs.sort_by_key(|(i, _)| *i);
    runs.into_iter().map(|(_, r)| r).collect()
}

/// Reduction fixtures (odd order) and engine fixtures (even order) at desk
/// scale, with the η that makes each one reachable.
fn fixture_runs() -> Vec<Run> {
    let mut out = Vec::new();
    for (case, eta) in [
        (ReductionCase::Two, 0.1),
        (ReductionCase::Three, 0.08),
        (ReductionCase::Four, 0.1),
    ] {
        for seed in 0..2 {
            let g = gen::case_fixture(case, 199, 0.5, eta, seed).expect("case fixture");
            let opts = ColorOptions {
                eta: Some(eta),
                seed,
                ..Default::default()
            };
            let report = color_graph(&g, &opts).expect("odd simple input");
            out.push(Run {
                name: format!("case{}-{seed}", case.number()),
                graph: g,
                report,
            });
        }
    }
    for cond in [Condition::A, Condition::B, Condition::C, Condition::D] {
        let g = gen::dcolor_fixture(cond, 200, 0.5, 0.1, 0).expect("engine fixture");
        let opts = ColorOptions {
            eta: Some(0.1),
            ..Default::default()
        };
        let report = color_graph(&g, &opts).expect("engine input");
        out.push(Run {
            name: format!("cond{}", cond.letter()),
            graph: g,
            report,
        });
    }
    out
}

fn criterion1(mixed: &[Run], elapsed: Duration) -> Outcome {
    let bad: Vec<&str> = mixed
        .iter()
        .filter(|r| !r.report.proper || !proper_total(&r.graph, &r.report.edge_coloring))
        .map(|r| r.name.as_str())
        .collect();
    let fast = elapsed < Duration::from_secs(600);
    let max_n = mixed.iter().map(|r| r.graph.vertex_count()).max().unwrap_or(0);
    outcome(
        bad.is_empty() && fast && mixed.len() == 1000,
        format!(
            "{} instances (max order {max_n}) in {:.1}s, improper: {:?}",
            mixed.len(),
            elapsed.as_secs_f64(),
            bad
        ),
    )
}

fn criterion2(all: &[&Run]) -> Outcome {
    let mut bad = Vec::new();
    let (mut one, mut two, mut fb) = (0, 0, 0);
    for r in all {
        let delta = r.graph.max_degree();
        let used = r.report.colors_used;
        let ok = match r.report.verdict {
            Verdict::ClassOne => {
                one += 1;
                used == delta
            }
            Verdict::ClassTwo => {
                two += 1;
                used == delta + 1
            }
            Verdict::Fallback => {
                fb += 1;
                true
            }
        } && used <= delta + 1;
        if !ok {
            bad.push(format!("{} ({:?}, {used} colors, Δ {delta})", r.name, r.report.verdict));
        }
    }
    outcome(
        bad.is_empty() && one > 0 && two > 0,
        format!("ClassOne {one}, ClassTwo {two}, fallback {fb}; violations: {bad:?}"),
    )
}

fn criterion3() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    let mut witnesses = 0;
    let opts = ColorOptions::default();
    for i in 0..300 {
        let n = r.gen_range(1..=7);
        let g = gen::random_graph(n, r.gen_range(0.2..1.0), 1000 + i);
        let delta = g.max_degree();
        let chi = brute_chromatic_index(&g).expect("small").chi_prime;
        let scan = brute_overfull_scan(&g).expect("small");
        let dense = overfull_subgraph_check_dense(&g, 0.5);
        let forced = scan.is_some() || matches!(dense.verdict, OverfullVerdict::Witness(_));
        witnesses += usize::from(forced);
        let mut ok = g.edge_count() == 0 || chi == delta || chi == delta + 1;
        ok &= !forced || chi == delta + 1;
        if let Ok(rep) = color_graph(&g, &opts) {
            ok &= match rep.verdict {
                Verdict::ClassOne => chi == delta,
                Verdict::ClassTwo => chi == delta + 1,
                Verdict::Fallback => rep.colors_used <= delta + 1,
            };
        }
        if !ok {
            bad.push(format!("graph {i}: n {n}, Δ {delta}, χ' {chi}, witness {forced}"));
        }
    }
    outcome(bad.is_empty(), format!("300 graphs, {witnesses} with an overfull witness; failures: {bad:?}"))
}

fn criterion4() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    let mut edges = 0;
    for i in 0..200 {
        let n = r.gen_range(2..=400);
        let mu = r.gen_range(1..=5);
        let p = r.gen_range(0.01..0.3);
        let g = gen::random_bipartite_multigraph(n, mu, p, 4000 + i);
        edges += g.edge_count();
        match konig_color(&g) {
            Ok(c) if proper_total(&g, &c) && c.colors_used() == g.max_degree() => {}
            Ok(c) => bad.push(format!("graph {i}: {} colors, Δ {}", c.colors_used(), g.max_degree())),
            Err(e) => bad.push(format!("graph {i}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("200 bipartite multigraphs, {edges} edges; failures: {bad:?}"))
}

fn sequences(len: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap);
    for d in 0..=top {
        prefix.push(d);
        sequences(len, cap, prefix, out);
        prefix.pop();
    }
}

fn criterion5() -> Outcome {
    let mut all = Vec::new();
    for len in 1..=8 {
        sequences(len, 6, &mut Vec::new(), &mut all);
    }
    let mut bad = Vec::new();
    let mut feasible = 0;
    for seq in &all {
        let sum: usize = seq.iter().sum();
        let max = seq[0];
        let expected = sum.is_multiple_of(2) && max <= sum - max;
        match hakimi_realize(seq) {
            Ok(g) => {
                feasible += 1;
                let loopless = g.edges().all(|(_, u, v)| u != v);
                if !expected || g.degrees() != *seq || !loopless {
                    bad.push(seq.clone());
                }
            }
            Err(_) if expected => bad.push(seq.clone()),
            Err(_) => {}
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} sequences, {feasible} realizable; mismatches: {:?}", all.len(), &bad[..bad.len().min(5)]),
    )
}

fn criterion6() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for i in 0..100 {
        let n: usize = r.gen_range(3..=200);
        let g = gen::random_min_degree(n, n.div_ceil(2), 6000 + i);
        let ok = match dirac_hamiltonian(&g) {
            Ok(cyc) => {
                let mut sorted = cyc.clone();
                sorted.sort_unstable();
                sorted == (0..n).collect::<Vec<_>>()
                    && (0..n).all(|j| g.multiplicity(cyc[j], cyc[(j + 1) % n]) > 0)
            }
            Err(_) => false,
        };
        if !ok {
            bad.push(format!("graph {i} (n {n})"));
        }
    }
    outcome(bad.is_empty(), format!("100 graphs; failures: {bad:?}"))
}

fn criterion7() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    let mut hist = vec![0usize; MAX_RETRIES + 1];
    let mut bad = Vec::new();
    let order = 200;
    let bound = ((order / 2) as f64).powf(2.0 / 3.0) - 1.0;
    for i in 0..100 {
        let g = gen::random_graph(order, r.gen_range(0.3..0.95), 7000 + i);
        let t = r.gen_range(1..=10);
        let mut perm: Vec<usize> = (0..order).collect();
        for j in 0..2 * t {
            let k = r.gen_range(j..order);
            perm.swap(j, k);
        }
        let pairs: Vec<(usize, usize)> = (0..t).map(|j| (perm[2 * j], perm[2 * j + 1])).collect();
        match balanced_partition(&g, &pairs, 70 + i) {
            Ok(p) => {
                hist[p.retries.min(MAX_RETRIES)] += 1;
                let side = p.membership();
                let equal = 2 * side.iter().filter(|&&a| a).count() == order;
                let split = pairs.iter().all(|&(x, y)| side[x] != side[y]);
                let balanced = (0..order).all(|v| {
                    let (mut a, mut b) = (0usize, 0usize);
                    for w in g.neighbors(v) {
                        if side[w] {
                            a += 1;
                        } else {
                            b += 1;
                        }
                    }
                    a.abs_diff(b) as f64 <= bound
                });
                if !(equal && split && balanced && p.retries < MAX_RETRIES) {
                    bad.push(format!("graph {i}"));
                }
            }
            Err(e) => bad.push(format!("graph {i}: {e}")),
        }
    }
    let used: Vec<String> = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, c)| format!("{k}:{c}"))
        .collect();
    outcome(bad.is_empty(), format!("retry histogram {{{}}}; failures: {bad:?}", used.join(", ")))
}

fn criterion8() -> Outcome {
    let params = EngineParams::new(0.5).with_eta(0.1);
    let mut completed = 0;
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let conds = [Condition::A, Condition::B, Condition::C, Condition::D, Condition::E];
    for cond in conds {
        for seed in 0..4 {
            let g = gen::dcolor_fixture(cond, 200, 0.5, 0.1, seed).expect("fixture");
            let Classification::Matched(m) = classify_condition(&g, &params) else {
                notes.push(format!("{}{seed}: unclassified", cond.letter()));
                continue;
            };
            let mut st = match EngineState::prepare(&g, &params, &m, PipelineTrace::new()) {
                Ok(st) => st,
                Err((e, _)) => {
                    notes.push(format!("{}{seed}: {e}", cond.letter()));
                    continue;
                }
            };
            let steps = st
                .step1_color_gab(&g)
                .and_then(|_| st.step2_fix_center())
                .and_then(|_| st.step2_relocate_s())
                .and_then(|_| st.step2_extend_to_factors());
            if let Err(e) = steps {
                notes.push(format!("{}{seed}: {e}", cond.letter()));
                continue;
            }
            completed += 1;
            let n = st.g_star.vertex_count();
            let perfect = (1..=st.k).all(|i| {
                let mut hit = vec![0usize; n];
                for &e in st.coloring.class(i) {
                    let (u, v) = st.g_star.endpoints(e).expect("live edge");
                    hit[u] += 1;
                    hit[v] += 1;
                }
                hit.iter().all(|&h| h == 1)
            });
            if !perfect {
                bad.push(format!("{}{seed}", cond.letter()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("Steps 1-2 completed on {completed}/20 fixtures; imperfect classes: {bad:?}; stopped: {notes:?}"),
    )
}

fn criterion9(all: &[&Run]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in all {
        let c = &r.report.edge_coloring;
        if !proper_total(&r.graph, c) {
            continue;
        }
        checked += 1;
        if !(parity_audit(&r.graph, c).passed() && parity_ok(&r.graph, c)) {
            bad.push(r.name.clone());
        }
    }
    outcome(bad.is_empty(), format!("{checked} total proper colorings audited; failures: {bad:?}"))
}

fn criterion10() -> Outcome {
    let opts = ColorOptions::default();
    let mut notes = Vec::new();
    let mut ok = true;

    let g = gen::complete_minus_matching(7, 3).unwrap();
    let rep = color_graph(&g, &opts).unwrap();
    let chi = brute_chromatic_index(&g).unwrap().chi_prime;
    let a = proper_total(&g, &rep.edge_coloring)
        && chi == 6
        && (rep.verdict != Verdict::ClassOne || rep.colors_used == 6);
    ok &= a;
    notes.push(format!("K7-3K2 {:?} {} colors, χ' {chi}", rep.verdict, rep.colors_used));

    let g = gen::complete(7);
    let rep = color_graph(&g, &opts).unwrap();
    let b = rep.verdict == Verdict::ClassTwo && rep.colors_used == 7 && proper_total(&g, &rep.edge_coloring);
    ok &= b;
    notes.push(format!("K7 {:?} {} colors", rep.verdict, rep.colors_used));

    let g = gen::petersen_minus_vertex();
    let chi = brute_chromatic_index(&g).unwrap().chi_prime;
    let scan = brute_overfull_scan(&g).unwrap();
    let dense = overfull_subgraph_check_dense(&g, 0.5).verdict;
    let c = chi == 4 && scan.is_none() && dense == OverfullVerdict::NoWitness;
    ok &= c;
    notes.push(format!("P* χ' {chi}, scans {:?}/{:?}", scan, dense));

    outcome(ok, notes.join("; "))
}

fn criterion11() -> Outcome {
    let inputs: Vec<(Multigraph, ColorOptions)> = vec![
        (gen::complete_minus_matching(7, 3).unwrap(), ColorOptions::default()),
        (gen::random_dense(41, 0.8, 30, 11).unwrap(), ColorOptions::default()),
        (gen::random_star_multigraph(40, 0.8, 3, 11), ColorOptions::default()),
        (
            gen::case_fixture(ReductionCase::Two, 199, 0.5, 0.1, 11).unwrap(),
            ColorOptions {
                eta: Some(0.1),
                ..Default::default()
            },
        ),
        (
            gen::dcolor_fixture(Condition::A, 200, 0.5, 0.1, 11).unwrap(),
            ColorOptions {
                eta: Some(0.1),
                ..Default::default()
            },
        ),
    ];
    let mut bad = Vec::new();
    for (i, (g, opts)) in inputs.iter().enumerate() {
        let runs: Vec<String> = (0..3).map(|_| to_json(&color_graph(g, opts).unwrap())).collect();
        if runs[0] != runs[1] || runs[1] != runs[2] {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("{} inputs x 3 runs; differing: {bad:?}", inputs.len()))
}

fn main() {
    let start = Instant::now();
    let mixed = run_mixed(1000);
    let mixed_time = start.elapsed();
    let fixtures = fixture_runs();
    let all: Vec<&Run> = mixed.iter().chain(&fixtures).collect();

    let results = [
        criterion1(&mixed, mixed_time),
        criterion2(&all),
        criterion3(),
        criterion4(),
        criterion5(),
        criterion6(),
        criterion7(),
        criterion8(),
        criterion9(&all),
        criterion10(),
        criterion11(),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {:>2}: {} {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {}/{} passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
