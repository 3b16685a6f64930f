//! Browser bindings. Every export returns a JSON string; the plain Rust
//! functions underneath are what the tests exercise.

use bigcycle::graph::MultiGraph;
use bigcycle::io::{read_multigraph, write_multigraph};
use bigcycle::oracle::validate_eulerian;
use bigcycle::pipeline::{solve_k_regular, SolveOptions};
use bigcycle::{generate, parse_graph, write_graph, GenSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct View {
    pub n: usize,
    pub k: usize,
    /// 0 or 1 per vertex.
    pub sides: Vec<u8>,
    pub edges: Vec<[u32; 2]>,
    /// Vertex sequence of each 2-factor cycle.
    pub cycles: Vec<Vec<u32>>,
    /// Doubled spanning-tree edges joining the cycles.
    pub tree: Vec<[u32; 2]>,
    pub edge_count: usize,
    pub bound_cycles: String,
    pub bound_edges: String,
    pub ok: bool,
    pub elapsed_ms: f64,
    pub square_compressions: usize,
    pub h_compressions: usize,
    pub graph: String,
    pub multigraph: String,
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub cycles: usize,
    pub edge_count: usize,
    pub violations: Vec<String>,
}

fn pair(g: &MultiGraph, e: bigcycle::EdgeId) -> [u32; 2] {
    let (a, b) = g.endpoints(e);
    [a.0.min(b.0), a.0.max(b.0)]
}

/// Solves a densely numbered graph; `k = 0` takes the degree of vertex 0.
pub fn solve_view(g: &MultiGraph, k: usize) -> Result<View, String> {
    let k = if k == 0 { g.vertex_ids().next().map_or(3, |v| g.degree(v)) } else { k };
    let sol = solve_k_regular(g, k, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let sides = bigcycle::graph::two_coloring(g).map_err(|e| e.to_string())?;
    let cycles = sol.two_factor.cycles(g).map_err(|e| e.to_string())?;
    Ok(View {
        n: g.vertex_count(),
        k,
        sides: g.vertex_ids().map(|v| u8::from(sides.side(v) != sides.side(bigcycle::VertexId(0)))).collect(),
        edges: g.edge_ids().map(|e| pair(g, e)).collect(),
        cycles: cycles.iter().map(|c| c.vertices.iter().map(|v| v.0).collect()).collect(),
        tree: sol.result.edges.iter().filter(|&&(_, m)| m == 2).map(|&(e, _)| pair(g, e)).collect(),
        edge_count: sol.report.edge_count,
        bound_cycles: sol.report.bound_cycles.to_string(),
        bound_edges: sol.report.bound_edges.to_string(),
        ok: sol.report.ok(),
        elapsed_ms: sol.report.elapsed_ms,
        square_compressions: sol.counters.square_compressions,
        h_compressions: sol.counters.h_compressions,
        graph: write_graph(g),
        multigraph: write_multigraph(g, &sol.result),
    })
}

pub fn generate_view(m: usize, k: usize, seed: u64) -> Result<View, String> {
    let spec = if k == 3 { GenSpec::cubic(m, seed) } else { GenSpec::k_regular(m, k, seed) };
    let g = generate(&spec).map_err(|e| e.to_string())?;
    solve_view(&g, k)
}

pub fn edge_list_view(text: &str, k: usize) -> Result<View, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    solve_view(&g, k)
}

pub fn verify_view(graph: &str, multigraph: &str) -> Result<Verdict, String> {
    let g = parse_graph(graph).map_err(|e| format!("graph: {e}"))?;
    let res = read_multigraph(&g, multigraph).map_err(|e| format!("multigraph: {e}"))?;
    let violations = match validate_eulerian(&g, &res) {
        Ok(()) => Vec::new(),
        Err(vs) => vs.iter().map(|v| format!("({}) {v:?}", v.code())).collect(),
    };
    Ok(Verdict { valid: violations.is_empty(), cycles: res.cycles, edge_count: res.edge_count, violations })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.map(|v| serde_json::to_string(&v).expect("serializable")).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate_and_solve(m: usize, k: usize, seed: u32) -> Result<String, JsValue> {
    to_js(generate_view(m, k, seed as u64))
}

#[wasm_bindgen]
pub fn solve_edge_list(text: &str, k: usize) -> Result<String, JsValue> {
    to_js(edge_list_view(text, k))
}

#[wasm_bindgen]
pub fn verify(graph: &str, multigraph: &str) -> Result<String, JsValue> {
    to_js(verify_view(graph, multigraph))
}
