//! Edge-list files and random regular bipartite instances.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use std::collections::BTreeMap;

use crate::graph::{connected_components, is_connected, EdgeId, MultiGraph, VertexId};
use crate::pipeline::EulerianResult;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("no valid instance after {0} attempts")]
    RetriesExhausted(usize),
}

fn perr(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Parse { line, reason: reason.into() }
}

/// Parses "n m" followed by m lines "u v"; '#' lines and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<MultiGraph, IoError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let nums = |line: usize, l: &str| -> Result<(usize, usize), IoError> {
        let mut it = l.split_whitespace();
        let mut next = || -> Result<usize, IoError> {
            let tok = it.next().ok_or_else(|| perr(line, "expected two integers"))?;
            tok.parse().map_err(|_| perr(line, format!("bad integer {tok:?}")))
        };
        let pair = (next()?, next()?);
        if it.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
        Ok(pair)
    };
    let (n, m) = nums(hl, header)?;
    let mut g = MultiGraph::with_vertices(n);
    let mut seen = 0;
    for (line, l) in lines {
        let (u, v) = nums(line, l)?;
        if u >= n || v >= n {
            return Err(perr(line, format!("vertex index out of range 0..{n}")));
        }
        if u == v {
            return Err(perr(line, "self-loop"));
        }
        g.add_edge(VertexId(u as u32), VertexId(v as u32)).map_err(|e| perr(line, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(perr(hl, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

/// Canonical text: vertices renumbered densely in id order, edges sorted by endpoints.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut index = vec![0u32; g.vertex_bound()];
    for (i, v) in g.vertex_ids().enumerate() {
        index[v.index()] = i as u32;
    }
    let mut edges: Vec<(u32, u32)> = g
        .edge_ids()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            let (a, b) = (index[a.index()], index[b.index()]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut out = format!("{} {}\n", g.vertex_count(), edges.len());
    for (a, b) in edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Multigraph as an edge list over the dense numbering of `g`, doubled edges written twice.
pub fn write_multigraph(g: &MultiGraph, res: &EulerianResult) -> String {
    let mut index = vec![0u32; g.vertex_bound()];
    for (i, v) in g.vertex_ids().enumerate() {
        index[v.index()] = i as u32;
    }
    let mut rows = Vec::with_capacity(res.edge_count);
    for &(e, mult) in &res.edges {
        let (a, b) = g.endpoints(e);
        let (a, b) = (index[a.index()], index[b.index()]);
        rows.extend(std::iter::repeat_n((a.min(b), a.max(b)), mult as usize));
    }
    rows.sort_unstable();
    let mut out = format!("{} {}\n", g.vertex_count(), rows.len());
    for (a, b) in rows {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Reads a multigraph edge list against `g`, matching lines to edges by
/// endpoints. Pairs that are not edges of `g` get fresh ids past its range,
/// so validation reports them as foreign. The cycle count is the number of
/// components spanned by the multiplicity-1 edges.
pub fn read_multigraph(g: &MultiGraph, text: &str) -> Result<EulerianResult, IoError> {
    let multi = parse_graph(text)?;
    if multi.vertex_count() != g.vertex_count() {
        return Err(perr(1, format!("expected {} vertices, found {}", g.vertex_count(), multi.vertex_count())));
    }
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in multi.edge_ids() {
        let (a, b) = multi.endpoints(e);
        *count.entry((a.index().min(b.index()), a.index().max(b.index()))).or_default() += 1;
    }
    let mut fresh = g.edge_bound() as u32;
    let mut single = MultiGraph::with_vertices(vs.len());
    let mut edges = Vec::with_capacity(count.len());
    for (&(a, b), &mult) in &count {
        let id = match g.edges_between(vs[a], vs[b]).first() {
            Some(&e) => e,
            None => {
                fresh += 1;
                EdgeId(fresh - 1)
            }
        };
        edges.push((id, mult.min(u8::MAX as usize) as u8));
        if mult == 1 {
            single.add_edge(VertexId(a as u32), VertexId(b as u32)).expect("distinct endpoints");
        }
    }
    edges.sort_unstable();
    Ok(EulerianResult {
        n: vs.len(),
        cycles: connected_components(&single).len(),
        edge_count: multi.edge_count(),
        edges,
        elapsed_ms: 0.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    CubicBipartite,
    KRegularBipartite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: Model,
    /// Side size; the graph has 2m vertices.
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl GenSpec {
    pub fn cubic(m: usize, seed: u64) -> Self {
        GenSpec { model: Model::CubicBipartite, m, k: 3, seed, max_retries: 100 }
    }

    pub fn k_regular(m: usize, k: usize, seed: u64) -> Self {
        GenSpec { model: Model::KRegularBipartite, m, k, seed, max_retries: 100 }
    }
}

/// Augments `mate` (left -> right) to a perfect matching avoiding `used` pairs.
fn repair(mate: &mut [Option<usize>], used: &[Vec<bool>], rng: &mut ChaCha8Rng) -> bool {
    let m = mate.len();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for (l, r) in mate.iter().enumerate() {
        if let Some(r) = r {
            owner[*r] = Some(l);
        }
    }
    let mut free: Vec<usize> = (0..m).filter(|&l| mate[l].is_none()).collect();
    free.shuffle(rng);
    for l0 in free {
        let mut seen = vec![false; m];
        // iterative DFS over alternating paths; stack holds (left, candidate order, cursor)
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        let order = |l: usize, rng: &mut ChaCha8Rng| {
            let mut rs: Vec<usize> = (0..m).filter(|&r| !used[l][r]).collect();
            rs.shuffle(rng);
            rs
        };
        stack.push((l0, order(l0, rng), 0));
        let mut done = false;
        while let Some(top) = stack.last_mut() {
            let (l, ref rs, ref mut cur) = *top;
            if *cur == rs.len() {
                stack.pop();
                continue;
            }
            let r = rs[*cur];
            *cur += 1;
            if seen[r] {
                continue;
            }
            seen[r] = true;
            match owner[r] {
                None => {
                    // flip the path
                    let mut r = r;
                    let mut l = l;
                    for i in (0..stack.len()).rev() {
                        debug_assert_eq!(stack[i].0, l);
                        let prev = mate[l];
                        mate[l] = Some(r);
                        owner[r] = Some(l);
                        if i == 0 {
                            break;
                        }
                        r = prev.expect("inner path vertex is matched");
                        l = stack[i - 1].0;
                    }
                    done = true;
                    break;
                }
                Some(l2) => {
                    let rs2 = order(l2, rng);
                    stack.push((l2, rs2, 0));
                }
            }
        }
        if !done {
            return false;
        }
    }
    true
}

/// Connected simple k-regular bipartite graph on 2m vertices: union of k
/// random bijections, colliding pairs repaired by random augmenting paths.
pub fn generate(spec: &GenSpec) -> Result<MultiGraph, IoError> {
    let k = match spec.model {
        Model::CubicBipartite => 3,
        Model::KRegularBipartite => spec.k,
    };
    let m = spec.m;
    if k == 0 || m == 0 || k > m {
        return Err(IoError::InvalidSpec(format!("need 1 <= k <= m, got k = {k}, m = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.max_retries.max(1) {
        let mut used = vec![vec![false; m]; m];
        let mut rounds = Vec::with_capacity(k);
        let mut ok = true;
        for _ in 0..k {
            let mut perm: Vec<usize> = (0..m).collect();
            perm.shuffle(&mut rng);
            let mut mate: Vec<Option<usize>> = (0..m).map(|l| (!used[l][perm[l]]).then_some(perm[l])).collect();
            if !repair(&mut mate, &used, &mut rng) {
                ok = false;
                break;
            }
            let mate: Vec<usize> = mate.into_iter().map(Option::unwrap).collect();
            for (l, &r) in mate.iter().enumerate() {
                used[l][r] = true;
            }
            rounds.push(mate);
        }
        if !ok {
            continue;
        }
        let mut g = MultiGraph::with_vertices(2 * m);
        for mate in &rounds {
            for (l, &r) in mate.iter().enumerate() {
                g.add_edge(VertexId(l as u32), VertexId((m + r) as u32)).expect("valid endpoints");
            }
        }
        if is_connected(&g) {
            return Ok(g);
        }
    }
    Err(IoError::RetriesExhausted(spec.max_retries))
}
