//! Gadget catalog: detection, compression, expansion and 2-factor rewiring.

mod cases;
mod detect;
mod improve;
mod template;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Cycle, EdgeId, GraphError, MultiGraph, Provenance, VertexId};
use crate::matching::TwoFactor;

pub use cases::{case_by_id, case_table, gadget_edges_used, lookup, Arc, CaseEntry, CaseMatch, LenExpr};
pub use detect::{embeddings, embeddings_at, in_k33_component};
pub use improve::local_improvement;
pub use template::{automorphisms, catalog, GadgetKind, Replacement, Template};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("occurrence of {0} no longer matches the graph")]
    OccurrenceStale(GadgetKind),
    #[error("record {seq} ({kind}) does not match the graph")]
    RecordMismatch { seq: usize, kind: GadgetKind },
    #[error("no case for {kind} with used stubs {used:?} and pairing {pairing:?}")]
    UnknownCase { kind: GadgetKind, used: Vec<usize>, pairing: Vec<(usize, usize)> },
    #[error("2-factor is malformed near vertex {0}")]
    BadTwoFactor(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A concrete embedding of a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub kind: GadgetKind,
    /// Role index to vertex.
    pub roles: Vec<VertexId>,
    /// Stub index (label minus one) to the edge leaving the configuration.
    pub stubs: Vec<EdgeId>,
}

impl Occurrence {
    pub fn vertex(&self, role: &str) -> VertexId {
        self.roles[self.kind.template().role(role)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StubSlot {
    /// Endpoint outside the configuration.
    pub ext: VertexId,
    /// Edge id before compression (restored on expansion).
    pub edge: EdgeId,
    /// Edge carrying this stub while compressed.
    pub post: EdgeId,
    pub original: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressionRecord {
    pub seq: usize,
    pub kind: GadgetKind,
    /// Removed vertices by role.
    pub vertices: Vec<(VertexId, Provenance)>,
    /// Removed internal edges by template edge index, with originality.
    pub internal_edges: Vec<(EdgeId, bool)>,
    pub stubs: Vec<StubSlot>,
    /// One super-vertex per group.
    pub super_vertices: Vec<VertexId>,
    /// Super-vertex link, or one super-edge per pair.
    pub gadget_edges: Vec<EdgeId>,
}

impl CompressionRecord {
    pub fn template(&self) -> &'static Template {
        self.kind.template()
    }

    pub fn role_vertex(&self, role: &str) -> VertexId {
        self.vertices[self.template().role(role)].0
    }

    pub fn internal_vertices(&self) -> Vec<VertexId> {
        self.vertices.iter().map(|(v, _)| *v).collect()
    }
}

/// How the 2-factor crosses one gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FState {
    /// Stub indices whose edges are in the 2-factor.
    pub used: Vec<usize>,
    /// Indices into the record's gadget edges that were in the 2-factor.
    pub gadget_edges: Vec<usize>,
    /// Used stubs joined outside the configuration, normalized and sorted.
    pub pairing: Vec<(usize, usize)>,
    /// Edge count of each outside arc, aligned with `pairing`.
    pub arc_lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewireOutcome {
    pub case_id: &'static str,
    /// The case belongs to a family that may close an organic 6-cycle.
    pub six_cycle: bool,
    /// Lengths of the cycles through the configuration predicted by the case.
    pub predicted: Vec<usize>,
}

/// Checks that `occ` still matches `g` and returns the internal edge ids by template edge.
fn occurrence_edges(g: &MultiGraph, occ: &Occurrence) -> Option<Vec<EdgeId>> {
    let t = occ.kind.template();
    if occ.roles.len() != t.roles.len() || occ.stubs.len() != t.stubs.len() {
        return None;
    }
    if !occ.roles.iter().all(|&v| g.contains_vertex(v)) {
        return None;
    }
    let fresh = embeddings_at(g, occ.kind, occ.roles[0]);
    if !fresh.iter().any(|o| o == occ) {
        return None;
    }
    t.edges.iter().map(|&(a, b)| g.edges_between(occ.roles[a], occ.roles[b]).first().copied()).collect()
}

/// Replaces the configuration by its gadget; `seq` becomes the record index.
pub fn compress(g: &mut MultiGraph, occ: &Occurrence, seq: usize) -> Result<CompressionRecord, GadgetError> {
    let t = occ.kind.template();
    let internal = occurrence_edges(g, occ).ok_or(GadgetError::OccurrenceStale(occ.kind))?;
    let internal_edges: Vec<(EdgeId, bool)> = internal.iter().map(|&e| (e, g.is_original(e))).collect();
    let mut stubs: Vec<StubSlot> = occ
        .stubs
        .iter()
        .enumerate()
        .map(|(s, &e)| StubSlot {
            ext: g.other(e, occ.roles[t.stubs[s]]),
            edge: e,
            post: e,
            original: g.is_original(e),
        })
        .collect();
    for &(e, _) in &internal_edges {
        g.remove_edge(e)?;
    }
    let mut super_vertices = Vec::new();
    let mut gadget_edges = Vec::new();
    match &t.replacement {
        Replacement::Vertices { groups, joined } => {
            for (i, group) in groups.iter().enumerate() {
                let sv = g.add_vertex(Provenance::GadgetVertex { record: seq, role: format!("sv{i}") });
                for &s in group {
                    g.reattach(occ.stubs[s], occ.roles[t.stubs[s]], sv)?;
                }
                super_vertices.push(sv);
            }
            if *joined {
                gadget_edges.push(g.add_edge_with(super_vertices[0], super_vertices[1], false)?);
            }
        }
        Replacement::Edges { pairs } => {
            for &s in &occ.stubs {
                g.remove_edge(s)?;
            }
            for &(a, b) in pairs {
                let e = g.add_edge_with(stubs[a].ext, stubs[b].ext, false)?;
                stubs[a].post = e;
                stubs[b].post = e;
                gadget_edges.push(e);
            }
        }
    }
    let mut vertices = Vec::with_capacity(occ.roles.len());
    for &v in &occ.roles {
        vertices.push((v, g.remove_vertex(v)?));
    }
    Ok(CompressionRecord { seq, kind: occ.kind, vertices, internal_edges, stubs, super_vertices, gadget_edges })
}

fn gadget_present(g: &MultiGraph, rec: &CompressionRecord) -> bool {
    let t = rec.template();
    if rec.vertices.iter().any(|(v, _)| g.contains_vertex(*v)) {
        return false;
    }
    let ends_ok = |e: EdgeId, a: VertexId, b: VertexId| {
        g.try_endpoints(e).is_some_and(|(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    };
    match &t.replacement {
        Replacement::Vertices { groups, joined } => {
            for (i, group) in groups.iter().enumerate() {
                let sv = rec.super_vertices[i];
                if !g.contains_vertex(sv) {
                    return false;
                }
                if !matches!(g.provenance(sv), Provenance::GadgetVertex { record, .. } if *record == rec.seq) {
                    return false;
                }
                let mut want: Vec<EdgeId> = group.iter().map(|&s| rec.stubs[s].post).collect();
                if *joined {
                    want.push(rec.gadget_edges[0]);
                }
                want.sort_unstable();
                let mut have = g.incident(sv).to_vec();
                have.sort_unstable();
                if want != have {
                    return false;
                }
                if !group.iter().all(|&s| ends_ok(rec.stubs[s].post, sv, rec.stubs[s].ext)) {
                    return false;
                }
            }
            !*joined || ends_ok(rec.gadget_edges[0], rec.super_vertices[0], rec.super_vertices[1])
        }
        Replacement::Edges { pairs } => {
            pairs.iter().zip(&rec.gadget_edges).all(|(&(a, b), &e)| ends_ok(e, rec.stubs[a].ext, rec.stubs[b].ext))
        }
    }
}

/// Puts the recorded configuration back in place of its gadget.
pub fn expand_structure(g: &mut MultiGraph, rec: &CompressionRecord) -> Result<(), GadgetError> {
    if !gadget_present(g, rec) {
        return Err(GadgetError::RecordMismatch { seq: rec.seq, kind: rec.kind });
    }
    let t = rec.template();
    for &e in &rec.gadget_edges {
        g.remove_edge(e)?;
    }
    for (v, prov) in &rec.vertices {
        g.insert_vertex(*v, prov.clone())?;
    }
    match &t.replacement {
        Replacement::Vertices { groups, .. } => {
            for (i, group) in groups.iter().enumerate() {
                for &s in group {
                    g.reattach(rec.stubs[s].edge, rec.super_vertices[i], rec.vertices[t.stubs[s]].0)?;
                }
                g.remove_vertex(rec.super_vertices[i])?;
            }
        }
        Replacement::Edges { .. } => {
            for (s, slot) in rec.stubs.iter().enumerate() {
                g.insert_edge(slot.edge, rec.vertices[t.stubs[s]].0, slot.ext, slot.original)?;
            }
        }
    }
    for (i, &(a, b)) in t.edges.iter().enumerate() {
        let (e, original) = rec.internal_edges[i];
        g.insert_edge(e, rec.vertices[a].0, rec.vertices[b].0, original)?;
    }
    Ok(())
}

fn f_edges_at(g: &MultiGraph, f: &BTreeSet<EdgeId>, v: VertexId) -> Result<[EdgeId; 2], GadgetError> {
    let mut it = g.incident(v).iter().copied().filter(|e| f.contains(e));
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a, b]),
        _ => Err(GadgetError::BadTwoFactor(v)),
    }
}

/// Reads the crossing pattern of `f` at an expanded configuration whose
/// internal edges are not yet in `f`.
pub fn read_fstate(
    g: &MultiGraph,
    rec: &CompressionRecord,
    f: &BTreeSet<EdgeId>,
    gadget_edges: Vec<usize>,
) -> Result<FState, GadgetError> {
    let t = rec.template();
    let used: Vec<usize> = (0..rec.stubs.len()).filter(|&s| f.contains(&rec.stubs[s].edge)).collect();
    let stub_of_edge = |e: EdgeId| used.iter().copied().find(|&s| rec.stubs[s].edge == e);
    let mut paired = vec![false; rec.stubs.len()];
    let mut pairs = Vec::new();
    for &s in &used {
        if paired[s] {
            continue;
        }
        let inner = rec.vertices[t.stubs[s]].0;
        let mut prev = rec.stubs[s].edge;
        let mut cur = g.other(prev, inner);
        let mut steps = 0usize;
        let limit = g.edge_bound() + 1;
        let partner = loop {
            let [a, b] = f_edges_at(g, f, cur)?;
            let next = if a == prev { b } else { a };
            if let Some(q) = stub_of_edge(next) {
                break q;
            }
            steps += 1;
            if steps > limit {
                return Err(GadgetError::BadTwoFactor(cur));
            }
            cur = g.other(next, cur);
            prev = next;
        };
        if partner == s || paired[partner] {
            return Err(GadgetError::BadTwoFactor(inner));
        }
        paired[s] = true;
        paired[partner] = true;
        pairs.push(((s.min(partner), s.max(partner)), steps));
    }
    pairs.sort_unstable();
    Ok(FState {
        used,
        gadget_edges,
        pairing: pairs.iter().map(|p| p.0).collect(),
        arc_lengths: pairs.iter().map(|p| p.1).collect(),
    })
}

/// Internal edges completing the 2-factor through the restored configuration.
pub fn rewire_two_factor(
    rec: &CompressionRecord,
    fstate: &FState,
) -> Result<(Vec<EdgeId>, RewireOutcome), GadgetError> {
    let t = rec.template();
    let hit = lookup(rec.kind, &fstate.used, &fstate.pairing).ok_or_else(|| GadgetError::UnknownCase {
        kind: rec.kind,
        used: fstate.used.clone(),
        pairing: fstate.pairing.clone(),
    })?;
    // every restored vertex must end with degree 2
    let mut deg = vec![0usize; t.roles.len()];
    for &s in &fstate.used {
        deg[t.stubs[s]] += 1;
    }
    for &i in &hit.selection {
        deg[t.edges[i].0] += 1;
        deg[t.edges[i].1] += 1;
    }
    if let Some(r) = deg.iter().position(|&d| d != 2) {
        return Err(GadgetError::BadTwoFactor(rec.vertices[r].0));
    }
    let lengths: Vec<usize> = hit
        .arc_ends
        .iter()
        .map(|&(a, b)| {
            let key = (a.min(b), a.max(b));
            let i = fstate.pairing.iter().position(|&p| p == key).expect("arc present");
            fstate.arc_lengths[i]
        })
        .collect();
    let mut predicted: Vec<usize> = hit.entry.after.iter().map(|e| e.eval(&lengths)).collect();
    predicted.sort_unstable();
    let selection = hit.selection.iter().map(|&i| rec.internal_edges[i].0).collect();
    Ok((selection, RewireOutcome { case_id: hit.entry.id, six_cycle: hit.entry.flagged, predicted }))
}

/// One EXPAND step: restore the configuration, translate `f` onto it and
/// complete it through the restored vertices.
pub fn expand_step(
    g: &mut MultiGraph,
    rec: &CompressionRecord,
    f: &mut BTreeSet<EdgeId>,
) -> Result<(FState, RewireOutcome), GadgetError> {
    let t = rec.template();
    let in_f: Vec<usize> = (0..rec.gadget_edges.len()).filter(|&i| f.contains(&rec.gadget_edges[i])).collect();
    expand_structure(g, rec)?;
    for e in &rec.gadget_edges {
        f.remove(e);
    }
    if let Replacement::Edges { pairs } = &t.replacement {
        for &i in &in_f {
            f.insert(rec.stubs[pairs[i].0].edge);
            f.insert(rec.stubs[pairs[i].1].edge);
        }
    }
    let fstate = read_fstate(g, rec, f, in_f)?;
    let (sel, outcome) = rewire_two_factor(rec, &fstate)?;
    f.extend(sel);
    Ok((fstate, outcome))
}

/// Highest-priority square configuration outside K3,3 components.
pub fn find_square_occurrence(g: &MultiGraph) -> Option<Occurrence> {
    for kind in GadgetKind::SQUARES {
        let occs: Vec<Occurrence> =
            embeddings(g, kind).into_iter().filter(|o| !in_k33_component(g, o.roles[0])).collect();
        if let Some(o) = detect::best(occs) {
            return Some(o);
        }
    }
    None
}

/// Highest-priority organic hexagon configuration.
pub fn find_h_occurrence(g: &MultiGraph) -> Option<Occurrence> {
    GadgetKind::HEXES.iter().find_map(|&kind| detect::best(embeddings(g, kind)))
}

/// First 6-cycle of `f` made of organic vertices and original edges.
pub fn has_organic_six_cycle(g: &MultiGraph, f: &TwoFactor) -> Result<Option<Cycle>, GraphError> {
    Ok(f.cycles(g)?.into_iter().find(|c| is_organic_six(g, c)))
}

pub fn is_organic_six(g: &MultiGraph, c: &Cycle) -> bool {
    c.len() == 6 && c.vertices.iter().all(|&v| g.is_organic(v)) && c.edges.iter().all(|&e| g.is_original(e))
}

/// Valid internal completions for `kind` given the used stubs: every subset
/// of internal edges giving each internal vertex degree 2.
pub fn completions(kind: GadgetKind, used: &[usize]) -> Vec<Vec<usize>> {
    let t = kind.template();
    let mut need: Vec<i32> = vec![2; t.roles.len()];
    for &s in used {
        need[t.stubs[s]] -= 1;
    }
    let mut out = Vec::new();
    if need.iter().any(|&d| d < 0) {
        return out;
    }
    // remaining edges per vertex, for pruning
    let mut left: Vec<i32> = (0..t.roles.len()).map(|r| t.internal_degree(r) as i32).collect();
    let mut chosen = Vec::new();
    fn rec(
        t: &Template,
        i: usize,
        need: &mut [i32],
        left: &mut [i32],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == t.edges.len() {
            if need.iter().all(|&d| d == 0) {
                out.push(chosen.clone());
            }
            return;
        }
        let (a, b) = t.edges[i];
        left[a] -= 1;
        left[b] -= 1;
        if need[a] > 0 && need[b] > 0 {
            need[a] -= 1;
            need[b] -= 1;
            chosen.push(i);
            if need[a] <= left[a] && need[b] <= left[b] {
                rec(t, i + 1, need, left, chosen, out);
            }
            chosen.pop();
            need[a] += 1;
            need[b] += 1;
        }
        if need[a] <= left[a] && need[b] <= left[b] {
            rec(t, i + 1, need, left, chosen, out);
        }
        left[a] += 1;
        left[b] += 1;
    }
    rec(t, 0, &mut need, &mut left, &mut chosen, &mut out);
    out
}
