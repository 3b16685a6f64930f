//! Brute-force ground truth for small graphs and validators for solver output.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::gadgets::{completions, CompressionRecord, FState};
use crate::graph::{cycle_decomposition, is_cubic, EdgeId, GraphError, MultiGraph, VertexId};
use crate::matching::Matching;
use crate::pipeline::EulerianResult;

/// Largest vertex count the enumerators accept.
pub const ORACLE_LIMIT: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {ORACLE_LIMIT}")]
    BudgetExceeded { n: usize },
    #[error("graph is not cubic")]
    NotCubic,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub min_cycles: usize,
    pub optimal_two_factor: BTreeSet<EdgeId>,
    pub matchings_enumerated: usize,
}

/// Calls `visit` once per perfect matching, branching on the lowest unmatched vertex.
pub fn for_each_perfect_matching(g: &MultiGraph, mut visit: impl FnMut(&Matching)) -> Result<usize, OracleError> {
    if g.vertex_count() > ORACLE_LIMIT {
        return Err(OracleError::BudgetExceeded { n: g.vertex_count() });
    }
    let order: Vec<VertexId> = g.vertex_ids().collect();
    let mut matched = vec![false; g.vertex_bound()];
    let mut current = Matching::default();
    let mut count = 0;
    fn rec(
        g: &MultiGraph,
        order: &[VertexId],
        pos: usize,
        matched: &mut [bool],
        current: &mut Matching,
        count: &mut usize,
        visit: &mut dyn FnMut(&Matching),
    ) {
        let Some(i) = (pos..order.len()).find(|&i| !matched[order[i].index()]) else {
            *count += 1;
            visit(current);
            return;
        };
        let v = order[i];
        matched[v.index()] = true;
        let mut edges = g.incident(v).to_vec();
        edges.sort_unstable();
        for e in edges {
            let w = g.other(e, v);
            if matched[w.index()] {
                continue;
            }
            matched[w.index()] = true;
            current.edges.insert(e);
            rec(g, order, i + 1, matched, current, count, visit);
            current.edges.remove(&e);
            matched[w.index()] = false;
        }
        matched[v.index()] = false;
    }
    rec(g, &order, 0, &mut matched, &mut current, &mut count, &mut visit);
    Ok(count)
}

pub fn enumerate_perfect_matchings(g: &MultiGraph) -> Result<Vec<Matching>, OracleError> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, |m| out.push(m.clone()))?;
    Ok(out)
}

/// Fewest cycles over all 2-factors of a cubic graph (complements of perfect matchings).
pub fn min_cycles_two_factor(g: &MultiGraph) -> Result<OracleReport, OracleError> {
    if !is_cubic(g) {
        return Err(OracleError::NotCubic);
    }
    let all: BTreeSet<EdgeId> = g.edge_ids().collect();
    let mut best: Option<(usize, BTreeSet<EdgeId>)> = None;
    let mut failure = None;
    let count = for_each_perfect_matching(g, |m| {
        let f: BTreeSet<EdgeId> = all.difference(&m.edges).copied().collect();
        match cycle_decomposition(g, &f) {
            Ok(cs) => {
                if best.as_ref().is_none_or(|(b, _)| cs.len() < *b) {
                    best = Some((cs.len(), f));
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let (min_cycles, optimal_two_factor) = best.unwrap_or_default();
    Ok(OracleReport { min_cycles, optimal_two_factor, matchings_enumerated: count })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TwoFactorViolation {
    MissingEdge(EdgeId),
    Degree { vertex: VertexId, degree: usize },
}

/// Degree-2-everywhere check.
pub fn validate_two_factor(g: &MultiGraph, f: &BTreeSet<EdgeId>) -> Result<(), TwoFactorViolation> {
    let mut deg = vec![0usize; g.vertex_bound()];
    for &e in f {
        let (a, b) = g.try_endpoints(e).ok_or(TwoFactorViolation::MissingEdge(e))?;
        deg[a.index()] += 1;
        deg[b.index()] += 1;
    }
    match g.vertex_ids().find(|v| deg[v.index()] != 2) {
        Some(vertex) => Err(TwoFactorViolation::Degree { vertex, degree: deg[vertex.index()] }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EulerViolation {
    /// (a) multiset edge missing from the graph.
    ForeignEdge(EdgeId),
    /// (b) odd degree.
    OddDegree { vertex: VertexId, degree: usize },
    /// (c) multiset does not connect every vertex.
    NotSpanning { reached: usize, n: usize },
    /// (d) edge count differs from n + 2(cycles - 1).
    EdgeCount { expected: usize, actual: usize },
}

impl EulerViolation {
    pub fn code(&self) -> char {
        match self {
            EulerViolation::ForeignEdge(_) => 'a',
            EulerViolation::OddDegree { .. } => 'b',
            EulerViolation::NotSpanning { .. } => 'c',
            EulerViolation::EdgeCount { .. } => 'd',
        }
    }
}

pub fn validate_eulerian(g0: &MultiGraph, res: &EulerianResult) -> Result<(), Vec<EulerViolation>> {
    let mut out = Vec::new();
    let mut deg = vec![0usize; g0.vertex_bound()];
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); g0.vertex_bound()];
    let mut total = 0usize;
    for &(e, mult) in &res.edges {
        total += mult as usize;
        match g0.try_endpoints(e) {
            Some((a, b)) => {
                deg[a.index()] += mult as usize;
                deg[b.index()] += mult as usize;
                adj[a.index()].push(b);
                adj[b.index()].push(a);
            }
            None => out.push(EulerViolation::ForeignEdge(e)),
        }
    }
    for v in g0.vertex_ids() {
        if deg[v.index()] % 2 == 1 {
            out.push(EulerViolation::OddDegree { vertex: v, degree: deg[v.index()] });
        }
    }
    let n = g0.vertex_count();
    let reached = match g0.vertex_ids().next() {
        Some(root) => {
            let mut seen = vec![false; g0.vertex_bound()];
            seen[root.index()] = true;
            let mut stack = vec![root];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v.index()] {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count
        }
        None => 0,
    };
    if reached != n || (n > 0 && g0.vertex_ids().any(|v| deg[v.index()] == 0)) {
        out.push(EulerViolation::NotSpanning { reached, n });
    }
    let expected = n + 2 * res.cycles.saturating_sub(1);
    if total != expected || res.edge_count != total {
        out.push(EulerViolation::EdgeCount { expected, actual: total });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Every internal completion of the record's configuration compatible with the used stubs.
pub fn completion_solver(rec: &CompressionRecord, fstate: &FState) -> Vec<BTreeSet<EdgeId>> {
    completions(rec.kind, &fstate.used)
        .into_iter()
        .map(|sel| sel.into_iter().map(|i| rec.internal_edges[i].0).collect())
        .collect()
}
