//! COMPRESS, EXPAND and DOUBLETREE, plus the k-regular reduction.

use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::gadgets::{
    self, compress, expand_step, find_h_occurrence, find_square_occurrence, has_organic_six_cycle, is_organic_six,
    local_improvement, CompressionRecord, GadgetError, GadgetKind, Occurrence,
};
use crate::graph::{
    connected_components, is_connected, is_cubic, is_regular, two_coloring, EdgeId, GraphError, MultiGraph, VertexId,
};
use crate::matching::{choose_two_factor, decompose_cubic, peel_matchings, MatchingError, TwoFactor};
use crate::oracle::{for_each_perfect_matching, validate_two_factor, OracleError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    InputInvalid(String),
    #[error("more than {0} compressions")]
    NonterminatingCompression(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("step {step}: {reason}")]
    StepInvalid { step: usize, reason: String },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub type Result<T> = std::result::Result<T, PipelineError>;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Check cubicness, bipartiteness and the 2-factor after every step.
    pub debug_checks: bool,
    /// Collect a trace event per compress/expand step.
    pub trace: bool,
    /// Extract a closed Euler walk.
    pub euler: bool,
}

impl SolveOptions {
    /// Debug checks on when `BIGCYCLE_DEBUG=1`.
    pub fn from_env() -> Self {
        SolveOptions { debug_checks: debug_env(), ..Default::default() }
    }
}

pub fn debug_env() -> bool {
    std::env::var("BIGCYCLE_DEBUG").is_ok_and(|v| v == "1")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub step: usize,
    pub phase: &'static str,
    pub kind: GadgetKind,
    pub internal_vertices: Vec<VertexId>,
    /// Stub label to external endpoint.
    pub stub_map: Vec<(usize, VertexId)>,
    pub case_id: Option<&'static str>,
}

impl TraceEvent {
    fn of(step: usize, phase: &'static str, rec: &CompressionRecord, case_id: Option<&'static str>) -> Self {
        TraceEvent {
            step,
            phase,
            kind: rec.kind,
            internal_vertices: rec.internal_vertices(),
            stub_map: rec.stubs.iter().enumerate().map(|(i, s)| (i + 1, s.ext)).collect(),
            case_id,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub square_compressions: usize,
    pub h_compressions: usize,
    pub rounds: usize,
    /// An organic 6-cycle remained but no hexagon configuration was found.
    pub stalled: bool,
    pub improvements: usize,
    pub checks: usize,
}

#[derive(Clone, Debug)]
pub struct CompressState {
    pub graph: MultiGraph,
    pub log: Vec<CompressionRecord>,
    pub two_factor: TwoFactor,
    pub counters: Counters,
    pub trace: Vec<TraceEvent>,
}

fn check_graph(g: &MultiGraph, step: usize) -> Result<()> {
    if !is_cubic(g) {
        return Err(PipelineError::StepInvalid { step, reason: "graph not cubic".into() });
    }
    two_coloring(g).map_err(|e| PipelineError::StepInvalid { step, reason: e.to_string() })?;
    Ok(())
}

fn check_factor(g: &MultiGraph, f: &BTreeSet<EdgeId>, step: usize) -> Result<()> {
    validate_two_factor(g, f).map_err(|v| PipelineError::StepInvalid { step, reason: format!("{v:?}") })
}

/// Fewest-cycle 2-factor of a graph with at most six vertices, covering as
/// many of `s3` as possible among those.
fn small_two_factor(g: &MultiGraph, s3: &BTreeSet<EdgeId>) -> Result<TwoFactor> {
    let all: BTreeSet<EdgeId> = g.edge_ids().collect();
    let mut best: Option<((usize, usize), BTreeSet<EdgeId>)> = None;
    for_each_perfect_matching(g, |m| {
        let f: BTreeSet<EdgeId> = all.difference(&m.edges).copied().collect();
        if let Ok(cs) = crate::graph::cycle_decomposition(g, &f) {
            let key = (cs.len(), s3.iter().filter(|e| m.edges.contains(e)).count());
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, f));
            }
        }
    })?;
    best.map(|(_, f)| TwoFactor::new(f)).ok_or_else(|| PipelineError::InputInvalid("no 2-factor in base graph".into()))
}

fn current_factor(g: &MultiGraph, log: &[CompressionRecord]) -> Result<TwoFactor> {
    let s3: BTreeSet<EdgeId> = log
        .iter()
        .filter(|r| r.kind == GadgetKind::S3)
        .map(|r| r.gadget_edges[0])
        .filter(|&e| g.contains_edge(e))
        .collect();
    if g.vertex_count() <= 6 {
        return small_two_factor(g, &s3);
    }
    let sides = two_coloring(g)?;
    let ms = decompose_cubic(g, &sides)?;
    Ok(choose_two_factor(&ms, &s3))
}

struct Compressor<'a> {
    g: MultiGraph,
    log: Vec<CompressionRecord>,
    limit: usize,
    opts: &'a SolveOptions,
    counters: Counters,
    trace: Vec<TraceEvent>,
}

impl Compressor<'_> {
    fn apply(&mut self, occ: &Occurrence) -> Result<()> {
        if self.log.len() >= self.limit {
            return Err(PipelineError::NonterminatingCompression(self.limit));
        }
        let rec = compress(&mut self.g, occ, self.log.len())?;
        if occ.kind.is_square() {
            self.counters.square_compressions += 1;
        } else {
            self.counters.h_compressions += 1;
        }
        if self.opts.debug_checks {
            check_graph(&self.g, rec.seq)?;
            self.counters.checks += 1;
        }
        if self.opts.trace {
            self.trace.push(TraceEvent::of(rec.seq, "compress", &rec, None));
        }
        self.log.push(rec);
        Ok(())
    }

    fn squares(&mut self) -> Result<()> {
        while self.g.vertex_count() > 6 {
            let Some(occ) = find_square_occurrence(&self.g) else { break };
            self.apply(&occ)?;
        }
        Ok(())
    }
}

/// Compresses `g0` until the chosen 2-factor has no organic 6-cycle.
pub fn compress_phase(g0: &MultiGraph, opts: &SolveOptions) -> Result<CompressState> {
    let mut c = Compressor {
        g: g0.clone(),
        log: Vec::new(),
        limit: g0.vertex_count(),
        opts,
        counters: Counters::default(),
        trace: Vec::new(),
    };
    c.squares()?;
    let f = loop {
        let f = current_factor(&c.g, &c.log)?;
        if opts.debug_checks {
            check_factor(&c.g, &f.edges, c.log.len())?;
            c.counters.checks += 1;
        }
        if c.g.vertex_count() <= 6 || has_organic_six_cycle(&c.g, &f)?.is_none() {
            break f;
        }
        c.counters.rounds += 1;
        let Some(occ) = find_h_occurrence(&c.g) else {
            c.counters.stalled = true;
            break f;
        };
        c.apply(&occ)?;
        c.squares()?;
    };
    Ok(CompressState { graph: c.g, log: c.log, two_factor: f, counters: c.counters, trace: c.trace })
}

/// Replays the compression log in reverse, completing the 2-factor at each step.
pub fn expand_phase(state: CompressState, opts: &SolveOptions) -> Result<(TwoFactor, Counters, Vec<TraceEvent>)> {
    let CompressState { graph: mut g, mut log, two_factor, mut counters, mut trace } = state;
    let mut f = two_factor.edges;
    while let Some(rec) = log.pop() {
        let (_, outcome) = expand_step(&mut g, &rec, &mut f)?;
        let internal: BTreeSet<VertexId> = rec.internal_vertices().into_iter().collect();
        if opts.debug_checks {
            check_graph(&g, rec.seq)?;
            check_factor(&g, &f, rec.seq)?;
            let mut through: Vec<usize> = crate::graph::cycle_decomposition(&g, &f)?
                .iter()
                .filter(|c| c.vertices.iter().any(|v| internal.contains(v)))
                .map(|c| c.len())
                .collect();
            through.sort_unstable();
            if through != outcome.predicted {
                return Err(PipelineError::StepInvalid {
                    step: rec.seq,
                    reason: format!("{}: cycles {through:?}, expected {:?}", outcome.case_id, outcome.predicted),
                });
            }
            counters.checks += 1;
        }
        if rec.kind == GadgetKind::H1 && outcome.six_cycle {
            let tf = TwoFactor::new(std::mem::take(&mut f));
            let c1 = tf
                .cycles(&g)?
                .into_iter()
                .find(|c| is_organic_six(&g, c) && c.vertices.iter().any(|v| internal.contains(v)));
            f = match c1 {
                Some(c1) => {
                    let improved = local_improvement(&g, &tf, &c1);
                    if improved != tf {
                        counters.improvements += 1;
                    }
                    improved.edges
                }
                None => tf.edges,
            };
        }
        if opts.trace {
            trace.push(TraceEvent::of(rec.seq, "expand", &rec, Some(outcome.case_id)));
        }
    }
    Ok((TwoFactor::new(f), counters, trace))
}

/// Spanning Eulerian multigraph: 2-factor edges once, spanning-tree edges twice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerianResult {
    /// Edges with multiplicity 1 or 2, sorted by id.
    pub edges: Vec<(EdgeId, u8)>,
    pub n: usize,
    /// Cycle count of the 2-factor.
    pub cycles: usize,
    /// Edge count with multiplicity.
    pub edge_count: usize,
    pub elapsed_ms: f64,
}

/// Joins the cycles of `f` by a BFS tree over the contracted cycles, doubling tree edges.
pub fn doubletree(g0: &MultiGraph, f: &TwoFactor) -> Result<EulerianResult> {
    let start = Instant::now();
    let cycles = f.cycles(g0)?;
    let mut owner = vec![usize::MAX; g0.vertex_bound()];
    for (i, c) in cycles.iter().enumerate() {
        for v in &c.vertices {
            owner[v.index()] = i;
        }
    }
    let mut seen = vec![false; cycles.len()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::new();
    if !cycles.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(i) = queue.pop_front() {
        let mut out: Vec<(EdgeId, usize)> = cycles[i]
            .vertices
            .iter()
            .flat_map(|&v| g0.incident(v).iter().map(move |&e| (e, v)))
            .filter_map(|(e, v)| {
                let j = owner[g0.other(e, v).index()];
                (j != i).then_some((e, j))
            })
            .collect();
        out.sort_unstable();
        for (e, j) in out {
            if !seen[j] {
                seen[j] = true;
                tree.push(e);
                queue.push_back(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(PipelineError::Disconnected);
    }
    let mut edges: Vec<(EdgeId, u8)> = f.edges.iter().map(|&e| (e, 1)).chain(tree.iter().map(|&e| (e, 2))).collect();
    edges.sort_unstable();
    let edge_count = edges.iter().map(|&(_, m)| m as usize).sum();
    Ok(EulerianResult {
        edges,
        n: g0.vertex_count(),
        cycles: cycles.len(),
        edge_count,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Closed walk using every multiset edge exactly its multiplicity; first vertex repeated at the end.
pub fn euler_circuit(g0: &MultiGraph, res: &EulerianResult) -> Result<Vec<VertexId>> {
    let mut ends = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g0.vertex_bound()];
    for &(e, m) in &res.edges {
        let (a, b) = g0.try_endpoints(e).ok_or(GraphError::MissingEdge(e))?;
        for _ in 0..m {
            adj[a.index()].push(ends.len());
            adj[b.index()].push(ends.len());
            ends.push((a, b));
        }
    }
    let Some(root) = g0.vertex_ids().next() else { return Ok(Vec::new()) };
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; g0.vertex_bound()];
    let mut stack = vec![root];
    let mut walk = Vec::with_capacity(ends.len() + 1);
    while let Some(&v) = stack.last() {
        let list = &adj[v.index()];
        while ptr[v.index()] < list.len() && used[list[ptr[v.index()]]] {
            ptr[v.index()] += 1;
        }
        if ptr[v.index()] == list.len() {
            walk.push(v);
            stack.pop();
        } else {
            let i = list[ptr[v.index()]];
            used[i] = true;
            let (a, b) = ends[i];
            stack.push(if a == v { b } else { a });
        }
    }
    if walk.len() != ends.len() + 1 {
        return Err(PipelineError::Disconnected);
    }
    walk.reverse();
    Ok(walk)
}

/// Outcome summary with exact bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub n: usize,
    pub k: usize,
    pub cycles: usize,
    pub edge_count: usize,
    pub bound_cycles: Ratio<i64>,
    pub bound_edges: Ratio<i64>,
    pub elapsed_ms: f64,
}

impl SolveReport {
    pub fn new(n: usize, k: usize, cycles: usize, edge_count: usize, elapsed_ms: f64) -> Self {
        let (bound_cycles, bound_edges) = bounds(n, k);
        SolveReport { n, k, cycles, edge_count, bound_cycles, bound_edges, elapsed_ms }
    }

    /// Both bounds hold; on six or fewer vertices a single cycle is required instead.
    pub fn ok(&self) -> bool {
        if self.n <= 6 {
            return self.cycles <= 1;
        }
        Ratio::from_integer(self.cycles as i64) <= self.bound_cycles
            && Ratio::from_integer(self.edge_count as i64) <= self.bound_edges
    }
}

/// Cycle and edge bounds for n vertices: n/7 and 9n/7 - 2 when cubic, with the
/// k-regular surcharge n/(42(k-2)) cycles otherwise.
pub fn bounds(n: usize, k: usize) -> (Ratio<i64>, Ratio<i64>) {
    let n = n as i64;
    let mut cycles = Ratio::new(n, 7);
    if k > 3 {
        cycles += Ratio::new(n, 42 * (k as i64 - 2));
    }
    (cycles, Ratio::from_integer(n) + cycles * 2 - 2)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub result: EulerianResult,
    pub report: SolveReport,
    pub two_factor: TwoFactor,
    pub euler: Option<Vec<VertexId>>,
    pub counters: Counters,
    pub trace: Vec<TraceEvent>,
}

fn check_input(g: &MultiGraph, k: usize) -> Result<()> {
    let bad = |s: &str| Err(PipelineError::InputInvalid(s.into()));
    if g.vertex_count() == 0 {
        return bad("empty graph");
    }
    if g.has_parallel_edges() {
        return bad("parallel edges");
    }
    if !is_regular(g, k) {
        return bad(&format!("not {k}-regular"));
    }
    if two_coloring(g).is_err() {
        return bad("not bipartite");
    }
    if !is_connected(g) {
        return bad("not connected");
    }
    if g.vertex_ids().any(|v| !g.is_organic(v)) {
        return bad("contains gadget vertices");
    }
    Ok(())
}

/// 2-factor of a connected cubic bipartite graph with few cycles.
pub fn cubic_two_factor(g: &MultiGraph, opts: &SolveOptions) -> Result<(TwoFactor, Counters, Vec<TraceEvent>)> {
    let state = compress_phase(g, opts)?;
    let (f, counters, trace) = expand_phase(state, opts)?;
    if opts.debug_checks {
        check_factor(g, &f.edges, usize::MAX)?;
    }
    Ok((f, counters, trace))
}

fn finish(
    g: &MultiGraph,
    k: usize,
    f: TwoFactor,
    counters: Counters,
    trace: Vec<TraceEvent>,
    opts: &SolveOptions,
    start: Instant,
) -> Result<Solution> {
    let mut result = doubletree(g, &f)?;
    let euler = if opts.euler { Some(euler_circuit(g, &result)?) } else { None };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result.elapsed_ms = elapsed_ms;
    let report = SolveReport::new(result.n, k, result.cycles, result.edge_count, elapsed_ms);
    Ok(Solution { result, report, two_factor: f, euler, counters, trace })
}

/// Few-cycle 2-factor plus doubled spanning tree on a connected simple cubic bipartite graph.
pub fn bigcycle(g0: &MultiGraph, opts: &SolveOptions) -> Result<Solution> {
    let start = Instant::now();
    check_input(g0, 3)?;
    let (f, counters, trace) = cubic_two_factor(g0, opts)?;
    finish(g0, 3, f, counters, trace, opts, start)
}

/// Number of components that are exactly K3,3.
pub fn count_k33(g: &MultiGraph) -> usize {
    connected_components(g).iter().filter(|c| c.len() == 6 && gadgets::in_k33_component(g, c[0])).count()
}

/// Cubic spanning subgraph M1 + M2 + Mi with the fewest K3,3 components.
pub fn cubic_subgraph(g: &MultiGraph, k: usize) -> Result<MultiGraph> {
    if k == 3 {
        return Ok(g.clone());
    }
    let sides = two_coloring(g)?;
    let ms = peel_matchings(g, k, &sides)?;
    let union = |i: usize| {
        let keep: BTreeSet<EdgeId> = ms[0].edges.iter().chain(&ms[1].edges).chain(&ms[i].edges).copied().collect();
        g.edge_subgraph(&keep)
    };
    let mut best = union(2);
    let mut best_count = count_k33(&best);
    for i in 3..k {
        let cand = union(i);
        let count = count_k33(&cand);
        if count < best_count {
            best = cand;
            best_count = count;
        }
    }
    Ok(best)
}

/// Few-cycle spanning Eulerian multigraph of a connected k-regular bipartite graph.
pub fn solve_k_regular(g: &MultiGraph, k: usize, opts: &SolveOptions) -> Result<Solution> {
    if k == 3 {
        return bigcycle(g, opts);
    }
    let start = Instant::now();
    if k < 3 {
        return Err(PipelineError::InputInvalid(format!("k = {k} is below 3")));
    }
    check_input(g, k)?;
    let gc = cubic_subgraph(g, k)?;
    let mut f = BTreeSet::new();
    let mut counters = Counters::default();
    let mut trace = Vec::new();
    for comp in connected_components(&gc) {
        let sub = gc.induced(&comp);
        if comp.len() == 6 {
            // K3,3: any 2-factor is a Hamiltonian cycle
            f.extend(small_two_factor(&sub, &BTreeSet::new())?.edges);
            continue;
        }
        let (cf, c, t) = cubic_two_factor(&sub, opts)?;
        f.extend(cf.edges);
        counters.square_compressions += c.square_compressions;
        counters.h_compressions += c.h_compressions;
        counters.rounds += c.rounds;
        counters.stalled |= c.stalled;
        counters.improvements += c.improvements;
        counters.checks += c.checks;
        trace.extend(t);
    }
    finish(g, k, TwoFactor::new(f), counters, trace, opts, start)
}
