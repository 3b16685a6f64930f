//! `bigcycle` subcommands. Exit codes: 0 ok, 1 bound or validation failure, 2 usage, input or parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bigcycle::graph::MultiGraph;
use bigcycle::io::{read_multigraph, write_multigraph};
use bigcycle::oracle::{min_cycles_two_factor, validate_eulerian};
use bigcycle::pipeline::{solve_k_regular, Solution, SolveOptions, SolveReport};
use bigcycle::{generate, parse_graph, write_graph, GenSpec};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "bigcycle", version, about = "Few-cycle 2-factors and short spanning Eulerian multigraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve one instance and print its report line.
    Solve {
        file: PathBuf,
        /// Degree; inferred from the graph when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Print the closed Euler walk.
        #[arg(long)]
        euler: bool,
        /// Write one JSON trace event per line.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Write the multigraph as an edge list, doubled edges repeated.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random connected regular bipartite graph.
    Gen {
        #[arg(long, value_enum, default_value = "cubic")]
        model: ModelArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a multigraph is a valid spanning Eulerian extension of a graph.
    Verify { graph: PathBuf, multigraph: PathBuf },
    /// Exact fewest-cycle 2-factor by matching enumeration (small graphs only).
    Oracle { file: PathBuf },
    /// Solve a generated sweep and summarize.
    Bench {
        /// a:b:step over side sizes m.
        #[arg(long, value_parser = parse_range)]
        m_range: (usize, usize, usize),
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Cubic,
    Kreg,
}

fn parse_range(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.parse::<usize>()).collect();
    match nums.as_deref() {
        Ok([a, b]) if a <= b => Ok((*a, *b, 1)),
        Ok([a, b, step]) if a <= b && *step > 0 => Ok((*a, *b, *step)),
        _ => Err(format!("expected a:b[:step] with a <= b and step > 0, got {s:?}")),
    }
}

/// One solved instance; bounds are exact fractions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub cycles: usize,
    pub edges: usize,
    pub bound_cycles: String,
    pub bound_edges: String,
    pub elapsed_ms: f64,
    pub ok: bool,
}

impl ReportLine {
    pub fn new(instance: impl Into<String>, r: &SolveReport) -> Self {
        ReportLine {
            instance: instance.into(),
            n: r.n,
            k: r.k,
            cycles: r.cycles,
            edges: r.edge_count,
            bound_cycles: r.bound_cycles.to_string(),
            bound_edges: r.bound_edges.to_string(),
            elapsed_ms: r.elapsed_ms,
            ok: r.ok(),
        }
    }

    fn text(&self) -> String {
        format!(
            "{}: n={} k={} cycles={} (bound {}) edges={} (bound {}) {:.3} ms {}",
            self.instance,
            self.n,
            self.k,
            self.cycles,
            self.bound_cycles,
            self.edges,
            self.bound_edges,
            self.elapsed_ms,
            if self.ok { "ok" } else { "VIOLATION" }
        )
    }
}

struct Fail(i32, String);

type Out<'a> = &'a mut dyn Write;

fn usage(msg: impl std::fmt::Display) -> Fail {
    Fail(2, msg.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<MultiGraph, Fail> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Out, line: impl std::fmt::Display) -> Result<(), Fail> {
    writeln!(out, "{line}").map_err(|e| Fail(2, e.to_string()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn infer_k(g: &MultiGraph) -> usize {
    g.vertex_ids().next().map_or(3, |v| g.degree(v))
}

fn solve(g: &MultiGraph, k: usize, opts: &SolveOptions) -> Result<Solution, Fail> {
    solve_k_regular(g, k, opts).map_err(usage)
}

fn cmd_solve(
    file: &Path,
    k: Option<usize>,
    euler: bool,
    trace: Option<&Path>,
    as_json: bool,
    multi: Option<&Path>,
    out: Out,
) -> Result<i32, Fail> {
    let g = load(file)?;
    let k = k.unwrap_or_else(|| infer_k(&g));
    let opts = SolveOptions { trace: trace.is_some(), euler, ..SolveOptions::from_env() };
    let sol = solve(&g, k, &opts)?;
    let line = ReportLine::new(file.display().to_string(), &sol.report);
    emit(out, if as_json { json(&line) } else { line.text() })?;
    if let Some(walk) = &sol.euler {
        let ids: Vec<String> = walk.iter().map(|v| v.0.to_string()).collect();
        if as_json {
            emit(out, json(&serde_json::json!({ "walk": walk.iter().map(|v| v.0).collect::<Vec<_>>() })))?;
        } else {
            emit(out, format!("walk: {}", ids.join(" ")))?;
        }
    }
    if let Some(path) = trace {
        let text: String = sol.trace.iter().map(|t| json(t) + "\n").collect();
        save(path, &text)?;
    }
    if let Some(path) = multi {
        save(path, &write_multigraph(&g, &sol.result))?;
    }
    Ok(if line.ok { 0 } else { 1 })
}

fn cmd_gen(model: ModelArg, m: usize, k: Option<usize>, seed: u64, path: Option<&Path>, out: Out) -> Result<i32, Fail> {
    let spec = match model {
        ModelArg::Cubic => GenSpec::cubic(m, seed),
        ModelArg::Kreg => GenSpec::k_regular(m, k.ok_or_else(|| usage("--model kreg needs --k"))?, seed),
    };
    let g = generate(&spec).map_err(usage)?;
    let text = write_graph(&g);
    match path {
        Some(p) => save(p, &text)?,
        None => write!(out, "{text}").map_err(|e| Fail(2, e.to_string()))?,
    }
    Ok(0)
}

fn cmd_verify(graph: &Path, multigraph: &Path, out: Out) -> Result<i32, Fail> {
    let g = load(graph)?;
    let res = read_multigraph(&g, &read(multigraph)?).map_err(|e| usage(format!("{}: {e}", multigraph.display())))?;
    match validate_eulerian(&g, &res) {
        Ok(()) => {
            emit(out, format!("valid: n={} edges={} cycles={}", res.n, res.edge_count, res.cycles))?;
            Ok(0)
        }
        Err(vs) => {
            for v in &vs {
                emit(out, format!("violation ({}): {v:?}", v.code()))?;
            }
            Ok(1)
        }
    }
}

fn cmd_oracle(file: &Path, out: Out) -> Result<i32, Fail> {
    let g = load(file)?;
    let r = min_cycles_two_factor(&g).map_err(usage)?;
    let edges: Vec<(u32, u32)> = r
        .optimal_two_factor
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (a.0.min(b.0), a.0.max(b.0))
        })
        .collect();
    emit(
        out,
        json(&serde_json::json!({
            "n": g.vertex_count(),
            "min_cycles": r.min_cycles,
            "matchings_enumerated": r.matchings_enumerated,
            "two_factor": edges,
        })),
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct RuntimeRow {
    n: usize,
    instances: usize,
    mean_ms: f64,
    max_ms: f64,
}

#[derive(Serialize)]
struct Summary {
    instances: usize,
    violations: usize,
    max_cycles_per_n: String,
    max_edges_per_n: String,
    runtime: Vec<RuntimeRow>,
}

fn summarize(lines: &[ReportLine]) -> Summary {
    let ratio = |num: usize, n: usize| Ratio::new(num as i64, n.max(1) as i64);
    let zero = Ratio::from_integer(0);
    let max_c = lines.iter().map(|l| ratio(l.cycles, l.n)).max().unwrap_or(zero);
    let max_e = lines.iter().map(|l| ratio(l.edges, l.n)).max().unwrap_or(zero);
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for l in lines {
        by_n.entry(l.n).or_default().push(l.elapsed_ms);
    }
    let runtime = by_n
        .into_iter()
        .map(|(n, ts)| RuntimeRow {
            n,
            instances: ts.len(),
            mean_ms: ts.iter().sum::<f64>() / ts.len() as f64,
            max_ms: ts.iter().copied().fold(0.0, f64::max),
        })
        .collect();
    Summary {
        instances: lines.len(),
        violations: lines.iter().filter(|l| !l.ok).count(),
        max_cycles_per_n: max_c.to_string(),
        max_edges_per_n: max_e.to_string(),
        runtime,
    }
}

fn cmd_bench(
    range: (usize, usize, usize),
    count: usize,
    seed: u64,
    k: usize,
    csv_path: Option<&Path>,
    out: Out,
) -> Result<i32, Fail> {
    let (a, b, step) = range;
    let jobs: Vec<(usize, u64)> = (a..=b)
        .step_by(step)
        .flat_map(|m| (0..count as u64).map(move |i| (m, i)))
        .enumerate()
        .map(|(j, (m, _))| (m, seed + j as u64))
        .collect();
    let opts = SolveOptions::from_env();
    let results: Vec<Result<ReportLine, Fail>> = jobs
        .par_iter()
        .map(|&(m, s)| {
            let spec = if k == 3 { GenSpec::cubic(m, s) } else { GenSpec::k_regular(m, k, s) };
            let g = generate(&spec).map_err(usage)?;
            let t = Instant::now();
            let sol = solve(&g, k, &opts)?;
            let mut line = ReportLine::new(format!("m{m}-k{k}-s{s}"), &sol.report);
            line.elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
            Ok(line)
        })
        .collect();
    let mut lines = Vec::with_capacity(results.len());
    for r in results {
        let line = r?;
        emit(out, json(&line))?;
        lines.push(line);
    }
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for l in &lines {
            w.serialize(l).map_err(usage)?;
        }
        w.flush().map_err(usage)?;
    }
    let summary = summarize(&lines);
    emit(out, json(&serde_json::json!({ "summary": &summary })))?;
    Ok(if summary.violations == 0 { 0 } else { 1 })
}

/// Runs one command line against the given writers and returns the exit code.
pub fn run_with<I, T>(argv: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve { file, k, euler, trace, json, out: multi } => {
            cmd_solve(file, *k, *euler, trace.as_deref(), *json, multi.as_deref(), out)
        }
        Cmd::Gen { model, m, k, seed, out: path } => cmd_gen(*model, *m, *k, *seed, path.as_deref(), out),
        Cmd::Verify { graph, multigraph } => cmd_verify(graph, multigraph, out),
        Cmd::Oracle { file } => cmd_oracle(file, out),
        Cmd::Bench { m_range, count, seed, k, csv } => cmd_bench(*m_range, *count, *seed, *k, csv.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
