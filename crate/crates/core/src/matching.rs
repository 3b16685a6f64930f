//! Perfect matchings in bipartite multigraphs and the 2-factors built from them.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{cycle_decomposition, Cycle, EdgeId, GraphError, MultiGraph, Side, Sides, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("no perfect matching; Hall violator {witness:?}")]
    NoPerfectMatching { witness: Vec<VertexId> },
    #[error("edge {0} does not join the two sides")]
    NotBipartite(EdgeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_perfect_in(&self, g: &MultiGraph) -> bool {
        let mut hit = vec![0u8; g.vertex_bound()];
        for &e in &self.edges {
            let Some((a, b)) = g.try_endpoints(e) else { return false };
            for w in [a, b] {
                hit[w.index()] += 1;
                if hit[w.index()] > 1 {
                    return false;
                }
            }
        }
        g.vertex_ids().all(|v| hit[v.index()] == 1)
    }
}

/// Spanning 2-regular edge set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoFactor {
    pub edges: BTreeSet<EdgeId>,
}

impl TwoFactor {
    pub fn new(edges: BTreeSet<EdgeId>) -> Self {
        TwoFactor { edges }
    }

    pub fn cycles(&self, g: &MultiGraph) -> Result<Vec<Cycle>, GraphError> {
        cycle_decomposition(g, &self.edges)
    }

    pub fn cycle_count(&self, g: &MultiGraph) -> Result<usize, GraphError> {
        Ok(self.cycles(g)?.len())
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

const NIL: usize = usize::MAX;

/// Hopcroft-Karp over L-side vertices in id order, incident edges in id order.
pub fn perfect_matching(g: &MultiGraph, sides: &Sides) -> Result<Matching, MatchingError> {
    let left: Vec<VertexId> = g.vertex_ids().filter(|&v| sides.side(v) == Side::L).collect();
    let right_count = g.vertex_count() - left.len();
    let mut adj: Vec<Vec<(EdgeId, VertexId)>> = Vec::with_capacity(left.len());
    for &u in &left {
        let mut row = Vec::with_capacity(g.degree(u));
        for &e in g.incident(u) {
            let w = g.other(e, u);
            if sides.side(w) != Side::R {
                return Err(MatchingError::NotBipartite(e));
            }
            row.push((e, w));
        }
        row.sort_unstable();
        adj.push(row);
    }
    let mut left_pos = vec![NIL; g.vertex_bound()];
    for (i, &u) in left.iter().enumerate() {
        left_pos[u.index()] = i;
    }
    // mate_l[i]: (edge, right vertex); mate_r[v]: left index
    let mut mate_l: Vec<Option<(EdgeId, VertexId)>> = vec![None; left.len()];
    let mut mate_r = vec![NIL; g.vertex_bound()];
    let mut dist = vec![0usize; left.len()];
    let mut iter_pos = vec![0usize; left.len()];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for i in 0..left.len() {
            if mate_l[i].is_none() {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = NIL;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &(_, w) in &adj[i] {
                let j = mate_r[w.index()];
                if j == NIL {
                    found = true;
                } else if dist[j] == NIL {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        if !found {
            break;
        }
        iter_pos.iter_mut().for_each(|p| *p = 0);
        let mut augmented = false;
        for i in 0..left.len() {
            if mate_l[i].is_none() && augment(i, &adj, &mut mate_l, &mut mate_r, &dist, &mut iter_pos) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    let size = mate_l.iter().filter(|m| m.is_some()).count();
    if size == left.len() && size == right_count {
        return Ok(Matching { edges: mate_l.into_iter().map(|m| m.unwrap().0).collect() });
    }
    Err(MatchingError::NoPerfectMatching { witness: hall_witness(g, sides, &left, &left_pos, &adj, &mate_l, &mate_r) })
}

fn augment(
    i: usize,
    adj: &[Vec<(EdgeId, VertexId)>],
    mate_l: &mut [Option<(EdgeId, VertexId)>],
    mate_r: &mut [usize],
    dist: &[usize],
    iter_pos: &mut [usize],
) -> bool {
    // iterative DFS along the BFS layers
    let mut stack: Vec<(usize, EdgeId, VertexId)> = Vec::new();
    let mut cur = i;
    loop {
        let mut advanced = false;
        while iter_pos[cur] < adj[cur].len() {
            let (e, w) = adj[cur][iter_pos[cur]];
            iter_pos[cur] += 1;
            let j = mate_r[w.index()];
            if j == NIL {
                stack.push((cur, e, w));
                for &(l, e, w) in stack.iter().rev() {
                    mate_l[l] = Some((e, w));
                    mate_r[w.index()] = l;
                }
                return true;
            }
            if dist[j] == dist[cur] + 1 {
                stack.push((cur, e, w));
                cur = j;
                advanced = true;
                break;
            }
        }
        if !advanced {
            match stack.pop() {
                Some((l, _, _)) => cur = l,
                None => return false,
            }
        }
    }
}

fn hall_witness(
    g: &MultiGraph,
    sides: &Sides,
    left: &[VertexId],
    left_pos: &[usize],
    adj: &[Vec<(EdgeId, VertexId)>],
    mate_l: &[Option<(EdgeId, VertexId)>],
    mate_r: &[usize],
) -> Vec<VertexId> {
    // alternating reachability from a free vertex; its side set has too few neighbors
    if let Some(i0) = (0..left.len()).find(|&i| mate_l[i].is_none()) {
        let mut seen = vec![false; left.len()];
        seen[i0] = true;
        let mut queue = VecDeque::from([i0]);
        while let Some(i) = queue.pop_front() {
            for &(_, w) in &adj[i] {
                let j = mate_r[w.index()];
                if j != NIL && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        return (0..left.len()).filter(|&i| seen[i]).map(|i| left[i]).collect();
    }
    let r0 = g.vertex_ids().find(|&v| sides.side(v) == Side::R && mate_r[v.index()] == NIL).expect("unmatched vertex");
    let mut seen = vec![false; g.vertex_bound()];
    seen[r0.index()] = true;
    let mut queue = VecDeque::from([r0]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for u in g.neighbors(v) {
            let (_, w) = mate_l[left_pos[u.index()]].unwrap();
            if !seen[w.index()] {
                seen[w.index()] = true;
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Partitions the edges of a cubic bipartite multigraph into three perfect matchings.
pub fn decompose_cubic(g: &MultiGraph, sides: &Sides) -> Result<[Matching; 3], MatchingError> {
    let m1 = perfect_matching(g, sides)?;
    let rest: BTreeSet<EdgeId> = g.edge_ids().filter(|e| !m1.contains(*e)).collect();
    let mut m2 = Matching::default();
    let mut m3 = Matching::default();
    for cycle in cycle_decomposition(g, &rest)? {
        let (m2_part, m3_part) = alternate(g, sides, &cycle);
        m2.edges.extend(m2_part);
        m3.edges.extend(m3_part);
    }
    Ok([m1, m2, m3])
}

fn alternate(g: &MultiGraph, sides: &Sides, cycle: &Cycle) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let len = cycle.len();
    let pos =
        (0..len).filter(|&i| sides.side(cycle.vertices[i]) == Side::L).min_by_key(|&i| cycle.vertices[i]).unwrap();
    let v = cycle.vertices[pos];
    // edges at v: the one leaving forward (edges[pos]) and the one entering (edges[pos-1])
    let fwd = cycle.edges[pos];
    let back = cycle.edges[(pos + len - 1) % len];
    let start_fwd = (g.other(fwd, v), fwd) <= (g.other(back, v), back);
    let mut a = Vec::with_capacity(len / 2);
    let mut b = Vec::with_capacity(len / 2);
    for k in 0..len {
        let idx = if start_fwd { (pos + k) % len } else { (pos + len - 1 - k) % len };
        if k % 2 == 0 {
            a.push(cycle.edges[idx]);
        } else {
            b.push(cycle.edges[idx]);
        }
    }
    (a, b)
}

/// Peels `k` edge-disjoint perfect matchings off a k-regular bipartite multigraph.
pub fn peel_matchings(g: &MultiGraph, k: usize, sides: &Sides) -> Result<Vec<Matching>, MatchingError> {
    let mut work = g.clone();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let m = perfect_matching(&work, sides)?;
        for &e in &m.edges {
            work.remove_edge(e)?;
        }
        out.push(m);
    }
    Ok(out)
}

/// Union of the two matchings covering the most `s3_edges`; the excluded
/// matching is the one with the fewest, the highest index on ties.
pub fn choose_two_factor(ms: &[Matching; 3], s3_edges: &BTreeSet<EdgeId>) -> TwoFactor {
    let counts: Vec<usize> = ms.iter().map(|m| s3_edges.iter().filter(|e| m.contains(**e)).count()).collect();
    let min = *counts.iter().min().unwrap();
    let excluded = (0..3).rev().find(|&i| counts[i] == min).unwrap();
    let mut edges = BTreeSet::new();
    for (i, m) in ms.iter().enumerate() {
        if i != excluded {
            edges.extend(m.edges.iter().copied());
        }
    }
    TwoFactor { edges }
}
