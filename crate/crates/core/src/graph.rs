//! Undirected multigraph with stable vertex and edge identities.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Where a vertex came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Organic,
    GadgetVertex { record: usize, role: String },
}

impl Provenance {
    pub fn is_organic(&self) -> bool {
        matches!(self, Provenance::Organic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} does not exist")]
    MissingVertex(VertexId),
    #[error("edge {0} does not exist")]
    MissingEdge(EdgeId),
    #[error("slot {0} is already occupied")]
    SlotOccupied(u32),
    #[error("graph is not bipartite; odd closed walk {witness:?}")]
    NotBipartite { witness: Vec<VertexId> },
    #[error("vertex {vertex} has degree {degree} in the edge set, expected 2")]
    NotTwoRegular { vertex: VertexId, degree: usize },
    #[error("graph is empty")]
    Empty,
}

#[derive(Clone, Debug)]
struct VertexSlot {
    prov: Provenance,
    incident: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug)]
struct EdgeSlot {
    ends: [VertexId; 2],
    original: bool,
}

/// Multigraph whose ids are never recycled: new vertices and edges always get
/// fresh ids, and removed ids can only come back through explicit reinsertion.
#[derive(Clone, Debug, Default)]
pub struct MultiGraph {
    vertices: Vec<Option<VertexSlot>>,
    edges: Vec<Option<EdgeSlot>>,
    live_vertices: usize,
    live_edges: usize,
}

/// Ordered closed walk with no repeated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Side assignment indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides(Vec<Option<Side>>);

impl Sides {
    pub fn get(&self, v: VertexId) -> Option<Side> {
        self.0.get(v.index()).copied().flatten()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.get(v).expect("vertex without side")
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` organic vertices with ids `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex(Provenance::Organic);
        }
        g
    }

    pub fn add_vertex(&mut self, prov: Provenance) -> VertexId {
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(Some(VertexSlot { prov, incident: Vec::new() }));
        self.live_vertices += 1;
        id
    }

    /// Adds an edge of the input graph.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.add_edge_with(u, v, true)
    }

    /// Adds an edge; `original` is false for edges created by gadget insertion.
    pub fn add_edge_with(&mut self, u: VertexId, v: VertexId, original: bool) -> Result<EdgeId, GraphError> {
        let id = EdgeId(self.edges.len() as u32);
        self.check_ends(u, v)?;
        self.edges.push(None);
        self.place_edge(id, u, v, original);
        Ok(id)
    }

    /// Puts a vertex back under an id that was removed earlier.
    pub fn insert_vertex(&mut self, id: VertexId, prov: Provenance) -> Result<(), GraphError> {
        if id.index() >= self.vertices.len() {
            self.vertices.resize(id.index() + 1, None);
        }
        if self.vertices[id.index()].is_some() {
            return Err(GraphError::SlotOccupied(id.0));
        }
        self.vertices[id.index()] = Some(VertexSlot { prov, incident: Vec::new() });
        self.live_vertices += 1;
        Ok(())
    }

    /// Puts an edge back under an id that was removed earlier.
    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId, original: bool) -> Result<(), GraphError> {
        self.check_ends(u, v)?;
        if id.index() >= self.edges.len() {
            self.edges.resize(id.index() + 1, None);
        }
        if self.edges[id.index()].is_some() {
            return Err(GraphError::SlotOccupied(id.0));
        }
        self.place_edge(id, u, v, original);
        Ok(())
    }

    fn check_ends(&self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.contains_vertex(w) {
                return Err(GraphError::MissingVertex(w));
            }
        }
        Ok(())
    }

    fn place_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId, original: bool) {
        self.edges[id.index()] = Some(EdgeSlot { ends: [u, v], original });
        self.slot_mut(u).incident.push(id);
        self.slot_mut(v).incident.push(id);
        self.live_edges += 1;
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        let slot = self.edges.get_mut(e.index()).and_then(Option::take).ok_or(GraphError::MissingEdge(e))?;
        for w in slot.ends {
            let inc = &mut self.slot_mut(w).incident;
            if let Some(p) = inc.iter().position(|&x| x == e) {
                inc.remove(p);
            }
        }
        self.live_edges -= 1;
        Ok((slot.ends[0], slot.ends[1]))
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Provenance, GraphError> {
        let inc = self.incident(v).to_vec();
        for e in inc {
            self.remove_edge(e)?;
        }
        let slot = self.vertices[v.index()].take().ok_or(GraphError::MissingVertex(v))?;
        self.live_vertices -= 1;
        Ok(slot.prov)
    }

    /// Moves the `from` end of `e` onto `to`, keeping the edge id.
    pub fn reattach(&mut self, e: EdgeId, from: VertexId, to: VertexId) -> Result<(), GraphError> {
        let (a, b) = self.endpoints(e);
        let keep = if a == from {
            b
        } else if b == from {
            a
        } else {
            return Err(GraphError::MissingEdge(e));
        };
        if keep == to {
            return Err(GraphError::SelfLoop(to));
        }
        if !self.contains_vertex(to) {
            return Err(GraphError::MissingVertex(to));
        }
        let inc = &mut self.slot_mut(from).incident;
        if let Some(p) = inc.iter().position(|&x| x == e) {
            inc.remove(p);
        }
        self.slot_mut(to).incident.push(e);
        let slot = self.edges[e.index()].as_mut().unwrap();
        slot.ends = if a == from { [to, b] } else { [a, to] };
        Ok(())
    }

    fn slot(&self, v: VertexId) -> &VertexSlot {
        self.vertices[v.index()].as_ref().expect("missing vertex")
    }

    fn slot_mut(&mut self, v: VertexId) -> &mut VertexSlot {
        self.vertices[v.index()].as_mut().expect("missing vertex")
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        matches!(self.vertices.get(v.index()), Some(Some(_)))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.index()), Some(Some(_)))
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let s = self.edges[e.index()].as_ref().expect("missing edge");
        (s.ends[0], s.ends[1])
    }

    pub fn try_endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(e.index())?.as_ref().map(|s| (s.ends[0], s.ends[1]))
    }

    /// The end of `e` that is not `v`.
    #[inline]
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.slot(v).incident
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.slot(v).incident.len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |&e| self.other(e, v))
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident(u).iter().copied().filter(|&e| self.other(e, u) == v).collect()
    }

    pub fn provenance(&self, v: VertexId) -> &Provenance {
        &self.slot(v).prov
    }

    pub fn is_organic(&self, v: VertexId) -> bool {
        self.slot(v).prov.is_organic()
    }

    /// True when `e` belongs to the input graph (not created by a gadget).
    pub fn is_original(&self, e: EdgeId) -> bool {
        self.edges[e.index()].as_ref().expect("missing edge").original
    }

    /// Original edge whose two ends are organic.
    pub fn is_organic_edge(&self, e: EdgeId) -> bool {
        let (a, b) = self.endpoints(e);
        self.is_original(e) && self.is_organic(a) && self.is_organic(b)
    }

    pub fn vertex_count(&self) -> usize {
        self.live_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// One past the largest vertex id ever allocated.
    pub fn vertex_bound(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().enumerate().filter(|(_, s)| s.is_some()).map(|(i, _)| VertexId(i as u32))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().enumerate().filter(|(_, s)| s.is_some()).map(|(i, _)| EdgeId(i as u32))
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.vertex_ids().any(|v| {
            let mut ns: Vec<VertexId> = self.neighbors(v).collect();
            ns.sort_unstable();
            ns.windows(2).any(|w| w[0] == w[1])
        })
    }

    /// Copy restricted to `keep`, with ids preserved.
    pub fn induced(&self, keep: &[VertexId]) -> MultiGraph {
        let mut mask = vec![false; self.vertex_bound()];
        for &v in keep {
            mask[v.index()] = true;
        }
        let mut g = MultiGraph {
            vertices: vec![None; self.vertices.len()],
            edges: vec![None; self.edges.len()],
            live_vertices: 0,
            live_edges: 0,
        };
        for &v in keep {
            g.insert_vertex(v, self.provenance(v).clone()).unwrap();
        }
        for e in self.edge_ids() {
            let (a, b) = self.endpoints(e);
            if mask[a.index()] && mask[b.index()] {
                g.insert_edge(e, a, b, self.is_original(e)).unwrap();
            }
        }
        g
    }

    /// Copy keeping every vertex but only the edges in `keep`.
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeId>) -> MultiGraph {
        let mut g = self.clone();
        for e in self.edge_ids() {
            if !keep.contains(&e) {
                g.remove_edge(e).unwrap();
            }
        }
        g
    }
}

/// BFS 2-coloring; each component's lowest vertex gets `L`.
pub fn two_coloring(g: &MultiGraph) -> Result<Sides, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    let mut side: Vec<Option<Side>> = vec![None; g.vertex_bound()];
    let mut parent: Vec<Option<VertexId>> = vec![None; g.vertex_bound()];
    for root in g.vertex_ids() {
        if side[root.index()].is_some() {
            continue;
        }
        side[root.index()] = Some(Side::L);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u.index()].unwrap();
            for w in g.neighbors(u) {
                match side[w.index()] {
                    None => {
                        side[w.index()] = Some(su.flip());
                        parent[w.index()] = Some(u);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(GraphError::NotBipartite { witness: odd_walk(&parent, u, w) });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(Sides(side))
}

fn odd_walk(parent: &[Option<VertexId>], u: VertexId, w: VertexId) -> Vec<VertexId> {
    let chain = |mut x: VertexId| {
        let mut out = vec![x];
        while let Some(p) = parent[x.index()] {
            out.push(p);
            x = p;
        }
        out
    };
    let mut pu = chain(u);
    let mut pw = chain(w);
    while pu.len() > 1 && pw.len() > 1 && pu[pu.len() - 2] == pw[pw.len() - 2] {
        pu.pop();
        pw.pop();
    }
    pw.pop();
    pw.reverse();
    pu.extend(pw);
    pu
}

pub fn is_cubic(g: &MultiGraph) -> bool {
    is_regular(g, 3)
}

pub fn is_regular(g: &MultiGraph, k: usize) -> bool {
    g.vertex_ids().all(|v| g.degree(v) == k)
}

/// Components ordered by their smallest vertex; each sorted ascending.
pub fn connected_components(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.vertex_bound()];
    let mut out = Vec::new();
    for root in g.vertex_ids() {
        if seen[root.index()] {
            continue;
        }
        seen[root.index()] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &MultiGraph) -> bool {
    connected_components(g).len() <= 1
}

/// Splits a 2-regular edge set into cycles. Each cycle starts at its smallest
/// vertex and leaves toward the smaller neighbor (smaller edge id on ties).
pub fn cycle_decomposition(g: &MultiGraph, f: &BTreeSet<EdgeId>) -> Result<Vec<Cycle>, GraphError> {
    let mut at: Vec<[Option<EdgeId>; 2]> = vec![[None, None]; g.vertex_bound()];
    let mut deg = vec![0usize; g.vertex_bound()];
    for &e in f {
        let (a, b) = g.try_endpoints(e).ok_or(GraphError::MissingEdge(e))?;
        for w in [a, b] {
            let d = deg[w.index()];
            if d < 2 {
                at[w.index()][d] = Some(e);
            }
            deg[w.index()] += 1;
        }
    }
    for v in g.vertex_ids() {
        if deg[v.index()] != 2 {
            return Err(GraphError::NotTwoRegular { vertex: v, degree: deg[v.index()] });
        }
    }
    let mut seen = vec![false; g.vertex_bound()];
    let mut cycles = Vec::new();
    for start in g.vertex_ids() {
        if seen[start.index()] {
            continue;
        }
        let [e0, e1] = at[start.index()].map(Option::unwrap);
        let key = |e: EdgeId| (g.other(e, start), e);
        let first = if key(e0) <= key(e1) { e0 } else { e1 };
        let mut vertices = vec![start];
        let mut edges = vec![first];
        seen[start.index()] = true;
        let mut prev = first;
        let mut cur = g.other(first, start);
        while cur != start {
            seen[cur.index()] = true;
            vertices.push(cur);
            let [a, b] = at[cur.index()].map(Option::unwrap);
            let next = if a == prev { b } else { a };
            edges.push(next);
            prev = next;
            cur = g.other(next, cur);
        }
        cycles.push(Cycle { vertices, edges });
    }
    Ok(cycles)
}
