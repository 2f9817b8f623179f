use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dense_edgecolor::coloring::{verify_proper, ColoringJson, EdgeColoring};
use dense_edgecolor::engine::Condition;
use dense_edgecolor::gen;
use dense_edgecolor::graph::io::{parse_mg, to_mg};
use dense_edgecolor::graph::Multigraph;
use dense_edgecolor::oracle::{brute_chromatic_index, brute_overfull_scan};
use dense_edgecolor::output::{color_graph, to_json, ColorOptions, Mode, Verdict};
use dense_edgecolor::reduction::ReductionCase;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "ecolor", about = "Edge coloring of dense graphs and star-multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    /// Overrides η = ε²/100.
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Odd,
    Engine,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Mg,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complete,
    CompleteMinusMatching,
    RandomDense,
    Regular,
    DcolorFixture,
    CaseFixture,
    PetersenMinusVertex,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        /// Number of vertices.
        #[arg(short, long)]
        n: usize,
        /// Edge probability for random-dense.
        #[arg(long, default_value_t = 0.8)]
        p: f64,
        /// Minimum degree for random-dense, degree for regular, edges
        /// removed for complete-minus-matching.
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Condition letter for dcolor-fixture.
        #[arg(long)]
        condition: Option<char>,
        /// Case number for case-fixture.
        #[arg(long)]
        case: Option<u8>,
    },
    /// Color a graph and print the JSON report.
    Color { input: PathBuf },
    /// Check a coloring report against a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Exact chromatic index and overfull scan for small graphs.
    Oracle { input: PathBuf },
    /// Color every graph in a directory; CSV rows plus a summary.
    Bench { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn options(cli: &Cli) -> ColorOptions {
    ColorOptions {
        epsilon: cli.epsilon,
        eta: cli.eta,
        seed: cli.seed,
        mode: match cli.mode {
            ModeArg::Odd => Mode::Odd,
            ModeArg::Engine => Mode::Engine,
            ModeArg::Auto => Mode::Auto,
        },
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    if !(cli.epsilon > 0.0 && cli.epsilon < 1.0) {
        bail!("--epsilon must lie in (0, 1)");
    }
    match &cli.command {
        Command::Gen {
            kind,
            n,
            p,
            degree,
            condition,
            case,
        } => {
            let g = generate(cli, *kind, *n, *p, *degree, *condition, *case)?;
            let text = match cli.format.unwrap_or(Format::Mg) {
                Format::Mg => to_mg(&g),
                Format::Json => graph_json(&g),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Color { input } => {
            let g = read_graph(input)?;
            let report = color_graph(&g, &options(cli))?;
            emit(cli, &to_json(&report))?;
            Ok(report.verdict.exit_code() as u8)
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(graph)?;
            let text = std::fs::read_to_string(coloring).with_context(|| format!("reading {}", coloring.display()))?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            let cj: ColoringJson = serde_json::from_value(v.get("coloring").cloned().unwrap_or(v))?;
            let c = EdgeColoring::from_json(&g, &cj)?;
            let rep = verify_proper(&g, &c);
            let total = c.is_total(&g);
            let ok = rep.ok && total;
            let out = serde_json::json!({
                "ok": ok,
                "total": total,
                "colors_used": c.colors_used(),
                "delta": g.max_degree(),
                "violations": rep.violations,
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&out)?))?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Oracle { input } => {
            let g = read_graph(input)?;
            let r = brute_chromatic_index(&g)?;
            let scan = brute_overfull_scan(&g).ok().flatten();
            let out = serde_json::json!({
                "delta": g.max_degree(),
                "chi_prime": r.chi_prime,
                "overfull_witness": scan,
                "witness": r.witness.to_json(&g),
            });
            emit(cli, &format!("{}\n", serde_json::to_string_pretty(&out)?))?;
            Ok(0)
        }
        Command::Bench { dir } => {
            let (csv, summary) = bench(cli, dir)?;
            emit(cli, &csv)?;
            eprint!("{summary}");
            Ok(0)
        }
    }
}

fn generate(
    cli: &Cli,
    kind: Kind,
    n: usize,
    p: f64,
    degree: usize,
    condition: Option<char>,
    case: Option<u8>,
) -> Result<Multigraph> {
    let eta = cli.eta.unwrap_or(cli.epsilon * cli.epsilon / 100.0);
    Ok(match kind {
        Kind::Complete => gen::complete(n),
        Kind::CompleteMinusMatching => gen::complete_minus_matching(n, degree)?,
        Kind::RandomDense => gen::random_dense(n, p, degree, cli.seed)?,
        Kind::Regular => gen::regular(n, degree, cli.seed)?,
        Kind::PetersenMinusVertex => gen::petersen_minus_vertex(),
        Kind::DcolorFixture => {
            let c = condition.and_then(Condition::from_letter).ok_or_else(|| anyhow!("--condition a..e required"))?;
            gen::dcolor_fixture(c, n, cli.epsilon, eta, cli.seed)?
        }
        Kind::CaseFixture => {
            let c = case.and_then(ReductionCase::from_number).ok_or_else(|| anyhow!("--case 1..4 required"))?;
            gen::case_fixture(c, n, cli.epsilon, eta, cli.seed)?
        }
    })
}

fn graph_json(g: &Multigraph) -> String {
    let mut pairs: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (u.min(v), u.max(v))).collect();
    pairs.sort_unstable();
    let edges: Vec<[usize; 2]> = pairs.into_iter().map(|(u, v)| [u, v]).collect();
    let v = serde_json::json!({ "order": g.vertex_count(), "edges": edges });
    format!("{}\n", serde_json::to_string(&v).expect("plain json"))
}

fn parse_graph(text: &str) -> Result<Multigraph> {
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let n = v["order"].as_u64().ok_or_else(|| anyhow!("missing order"))? as usize;
        let mut edges = Vec::new();
        for e in v["edges"].as_array().ok_or_else(|| anyhow!("missing edges"))? {
            let u = e[0].as_u64().ok_or_else(|| anyhow!("bad edge {e}"))? as usize;
            let w = e[1].as_u64().ok_or_else(|| anyhow!("bad edge {e}"))? as usize;
            edges.push((u, w));
        }
        let mut g = Multigraph::new(n);
        for (u, w) in edges {
            g.add_edge(u, w)?;
        }
        Ok(g)
    } else {
        Ok(parse_mg(text)?)
    }
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

struct Row {
    line: String,
    verdict: Option<Verdict>,
    cause: Option<String>,
}

fn bench(cli: &Cli, dir: &Path) -> Result<(String, String)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let opts = options(cli);
    let rows: Vec<Row> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let start = Instant::now();
            let res = read_graph(path).and_then(|g| Ok((color_graph(&g, &opts)?, g)));
            let ms = start.elapsed().as_millis();
            match res {
                Ok((r, g)) => {
                    let fails = r.trace.to_string().matches("\"pass\":false").count();
                    let cause = r.trace.get("error").and_then(|e| e.as_str()).map(str::to_string);
                    let line = format!(
                        "{},{},{},{},{},{},{:?},{},{},{}",
                        name,
                        g.vertex_count(),
                        g.max_degree(),
                        g.min_degree(),
                        r.case.map(|c| c.to_string()).unwrap_or_default(),
                        r.condition.map(|c| c.letter().to_string()).unwrap_or_default(),
                        r.verdict,
                        r.colors_used,
                        fails,
                        ms
                    );
                    Row {
                        line,
                        verdict: Some(r.verdict),
                        cause,
                    }
                }
                Err(e) => Row {
                    line: format!("{name},,,,,,error,,,{ms}"),
                    verdict: None,
                    cause: Some(format!("{e:#}")),
                },
            }
        })
        .collect();
    let mut csv = String::from("file,n,delta,min_degree,case,condition,verdict,colors,guard_failures,wall_ms\n");
    for r in &rows {
        csv.push_str(&r.line);
        csv.push('\n');
    }
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == Some(v)).count();
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "instances {}: ClassOne {}, ClassTwo {}, Fallback {}, errors {}",
        rows.len(),
        count(Verdict::ClassOne),
        count(Verdict::ClassTwo),
        count(Verdict::Fallback),
        rows.iter().filter(|r| r.verdict.is_none()).count()
    );
    let mut causes: std::collections::BTreeMap<String, usize> = Default::default();
    for r in rows.iter().filter(|r| r.verdict != Some(Verdict::ClassOne) && r.verdict != Some(Verdict::ClassTwo)) {
        let key = r.cause.clone().unwrap_or_else(|| "unknown".into());
        let key = key.split(':').next().unwrap_or("").to_string();
        *causes.entry(key).or_default() += 1;
    }
    for (c, k) in causes {
        let _ = writeln!(summary, "  fallback cause {c}: {k}");
    }
    Ok((csv, summary))
}
