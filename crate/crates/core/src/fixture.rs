//! Host graphs realizing one expansion case with prescribed outside arc lengths.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gadgets::{
    case_by_id, compress, gadget_edges_used, CaseEntry, CompressionRecord, GadgetError, Occurrence, Replacement,
};
use crate::graph::{
    cycle_decomposition, is_connected, two_coloring, EdgeId, GraphError, MultiGraph, Provenance, Side, VertexId,
};
use crate::matching::TwoFactor;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("{case}: invalid lengths: {reason}")]
    InvalidLengths { case: String, reason: String },
    #[error("could not complete a cubic host: {0}")]
    Construction(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A compressed host ready for one expansion step.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub case: &'static CaseEntry,
    /// Arc lengths ordered like the case's arcs.
    pub lengths: Vec<usize>,
    /// Host before compression.
    pub host: MultiGraph,
    pub occurrence: Occurrence,
    /// Host after compression.
    pub graph: MultiGraph,
    pub record: CompressionRecord,
    /// 2-factor of the compressed host.
    pub two_factor: TwoFactor,
    pub expected_before: Vec<usize>,
    pub expected_after: Vec<usize>,
    /// Extra vertices of the local-improvement variant: ext(c), ext(f), e1, e2.
    pub improvement: Option<[VertexId; 4]>,
}

/// Smallest lengths per variable meeting the parity and minimum constraints.
pub fn default_lengths(case: &CaseEntry) -> [usize; 3] {
    let mut xyz = [0usize; 3];
    let t = case.kind.template();
    let min = min_length(t);
    for arc in &case.arcs {
        let same = role_parity(t, arc.ends.0) == role_parity(t, arc.ends.1);
        let mut l = min;
        while l.is_multiple_of(2) != same {
            l += 1;
        }
        xyz[(arc.var as u8 - b'x') as usize] = l;
    }
    xyz
}

fn min_length(t: &crate::gadgets::Template) -> usize {
    match t.replacement {
        Replacement::Vertices { .. } => 1,
        Replacement::Edges { .. } => 0,
    }
}

/// Color class of the role carrying stub `s` in the template's 2-coloring.
fn role_parity(t: &crate::gadgets::Template, s: usize) -> bool {
    let mut color = vec![None; t.roles.len()];
    color[0] = Some(false);
    let mut stack = vec![0];
    while let Some(r) = stack.pop() {
        for &i in &t.role_edges[r] {
            let (a, b) = t.edges[i];
            let q = if a == r { b } else { a };
            if color[q].is_none() {
                color[q] = Some(!color[r].unwrap());
                stack.push(q);
            }
        }
    }
    color[t.stubs[s]].unwrap()
}

struct Builder {
    g: MultiGraph,
    f: BTreeSet<EdgeId>,
}

impl Builder {
    fn vertex(&mut self) -> VertexId {
        self.g.add_vertex(Provenance::Organic)
    }

    fn edge(&mut self, a: VertexId, b: VertexId, in_f: bool) -> Result<EdgeId, GraphError> {
        let e = self.g.add_edge(a, b)?;
        if in_f {
            self.f.insert(e);
        }
        Ok(e)
    }

    /// New 8-cycle in F through `anchor` (or a fresh vertex).
    fn octagon(&mut self, anchor: Option<VertexId>) -> Result<Vec<VertexId>, GraphError> {
        let first = anchor.unwrap_or_else(|| self.vertex());
        let mut vs = vec![first];
        for _ in 0..7 {
            vs.push(self.vertex());
        }
        for i in 0..8 {
            self.edge(vs[i], vs[(i + 1) % 8], true)?;
        }
        Ok(vs)
    }

    /// Joins degree-2 vertices across the two color classes, keeping the graph simple and connected.
    fn close(&mut self, seed: u64) -> Result<(), FixtureError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for round in 0..6 {
            if round > 0 {
                self.octagon(None)?;
            }
            let sides = two_coloring(&self.g)?;
            let short: Vec<VertexId> = self.g.vertex_ids().filter(|&v| self.g.degree(v) < 3).collect();
            if short.iter().any(|&v| self.g.degree(v) != 2) {
                return Err(FixtureError::Construction("vertex with degree below 2".into()));
            }
            let xs: Vec<VertexId> = short.iter().copied().filter(|&v| sides.side(v) == Side::L).collect();
            let mut ys: Vec<VertexId> = short.iter().copied().filter(|&v| sides.side(v) == Side::R).collect();
            if xs.len() != ys.len() {
                return Err(FixtureError::Construction(format!("{} vs {} open ports", xs.len(), ys.len())));
            }
            if xs.is_empty() {
                return if is_connected(&self.g) {
                    Ok(())
                } else {
                    Err(FixtureError::Construction("disconnected".into()))
                };
            }
            let n = xs.len();
            let mut tries: Vec<Vec<VertexId>> = (0..n).map(|s| (0..n).map(|i| ys[(i + s) % n]).collect()).collect();
            for _ in 0..200 {
                ys.shuffle(&mut rng);
                tries.push(ys.clone());
            }
            for cand in tries {
                if xs.iter().zip(&cand).any(|(&x, &y)| !self.g.edges_between(x, y).is_empty()) {
                    continue;
                }
                let added: Vec<EdgeId> =
                    xs.iter().zip(&cand).map(|(&x, &y)| self.g.add_edge(x, y)).collect::<Result<_, _>>()?;
                if is_connected(&self.g) {
                    return Ok(());
                }
                for e in added {
                    self.g.remove_edge(e)?;
                }
            }
        }
        Err(FixtureError::Construction("no simple connected closure".into()))
    }
}

fn cycles_touching(
    g: &MultiGraph,
    f: &BTreeSet<EdgeId>,
    vs: &BTreeSet<VertexId>,
    es: &BTreeSet<EdgeId>,
) -> Result<Vec<usize>, GraphError> {
    let mut out: Vec<usize> = cycle_decomposition(g, f)?
        .iter()
        .filter(|c| c.vertices.iter().any(|v| vs.contains(v)) || c.edges.iter().any(|e| es.contains(e)))
        .map(|c| c.len())
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Cycle lengths through the gadget in a compressed graph.
pub fn region_cycles_before(
    g: &MultiGraph,
    f: &BTreeSet<EdgeId>,
    rec: &CompressionRecord,
) -> Result<Vec<usize>, GraphError> {
    let vs = rec.super_vertices.iter().copied().collect();
    let es = rec.gadget_edges.iter().copied().collect();
    cycles_touching(g, f, &vs, &es)
}

/// Cycle lengths through the restored configuration.
pub fn region_cycles_after(
    g: &MultiGraph,
    f: &BTreeSet<EdgeId>,
    rec: &CompressionRecord,
) -> Result<Vec<usize>, GraphError> {
    let vs = rec.internal_vertices().into_iter().collect();
    cycles_touching(g, f, &vs, &BTreeSet::new())
}

/// Builds the host for `case_id` with variables `x, y, z` and compresses it.
pub fn build_appendix_fixture(case_id: &str, xyz: [usize; 3]) -> Result<Fixture, FixtureError> {
    build(case_id, xyz, false)
}

/// The hexagon split case with both arcs of length 3 and a third cycle reachable
/// from the ends of the longer arc, as needed by the local improvement.
pub fn build_improvement_fixture() -> Result<Fixture, FixtureError> {
    build("B.2b", [3, 3, 0], true)
}

fn build(case_id: &str, xyz: [usize; 3], improvement: bool) -> Result<Fixture, FixtureError> {
    let case = case_by_id(case_id).ok_or_else(|| FixtureError::UnknownCase(case_id.into()))?;
    let t = case.kind.template();
    let lengths = case.arc_lengths(xyz);
    let invalid = |reason: String| FixtureError::InvalidLengths { case: case_id.into(), reason };
    let min = min_length(t);
    for (arc, &l) in case.arcs.iter().zip(&lengths) {
        let same = role_parity(t, arc.ends.0) == role_parity(t, arc.ends.1);
        if (l % 2 == 0) != same {
            return Err(invalid(format!("{} must be {}", arc.var, if same { "even" } else { "odd" })));
        }
        if l < min {
            return Err(invalid(format!("{} must be at least {min}", arc.var)));
        }
    }

    let mut b = Builder { g: MultiGraph::new(), f: BTreeSet::new() };
    let roles: Vec<VertexId> = t.roles.iter().map(|_| b.vertex()).collect();
    for &(x, y) in &t.edges {
        b.edge(roles[x], roles[y], false)?;
    }
    let mut ext: Vec<Option<VertexId>> = vec![None; t.stubs.len()];
    for (arc, &l) in case.arcs.iter().zip(&lengths) {
        let (s, q) = arc.ends;
        let a = b.vertex();
        if l == 0 {
            ext[s] = Some(a);
            ext[q] = Some(a);
            continue;
        }
        let mut prev = a;
        for _ in 1..l {
            let v = b.vertex();
            b.edge(prev, v, true)?;
            prev = v;
        }
        let z = b.vertex();
        b.edge(prev, z, true)?;
        ext[s] = Some(a);
        ext[q] = Some(z);
    }
    let mut stubs = Vec::with_capacity(t.stubs.len());
    for (s, &r) in t.stubs.iter().enumerate() {
        let used = case.used.contains(&s);
        let v = match ext[s] {
            Some(v) => v,
            None => {
                let v = b.vertex();
                b.octagon(Some(v))?;
                ext[s] = Some(v);
                v
            }
        };
        stubs.push(b.edge(roles[r], v, used)?);
    }
    let mut extra = None;
    if improvement {
        let (ec, ef) = (ext[t.stub_for("c")].unwrap(), ext[t.stub_for("f")].unwrap());
        let oct = b.octagon(None)?;
        let (e1, e2) = (oct[0], oct[1]);
        b.edge(ef, e1, false)?;
        b.edge(ec, e2, false)?;
        extra = Some([ec, ef, e1, e2]);
    }
    b.close(0x5eed ^ case_id.len() as u64)?;
    let host = b.g.clone();
    let occurrence = Occurrence { kind: case.kind, roles: roles.clone(), stubs };

    let mut g = b.g;
    let record = compress(&mut g, &occurrence, 0)?;
    // F on the compressed host: outside arcs and padding kept, stubs and gadget edges translated
    let mut f: BTreeSet<EdgeId> = b.f.into_iter().filter(|e| g.contains_edge(*e)).collect();
    match &t.replacement {
        Replacement::Vertices { .. } => {
            for &s in &case.used {
                f.insert(record.stubs[s].post);
            }
        }
        Replacement::Edges { .. } => {}
    }
    for i in gadget_edges_used(t, &case.used) {
        f.insert(record.gadget_edges[i]);
    }
    let expected_before: Vec<usize> = sorted(case.before.iter().map(|e| e.eval(&lengths)));
    let expected_after: Vec<usize> = sorted(case.after.iter().map(|e| e.eval(&lengths)));
    Ok(Fixture {
        case,
        lengths,
        host,
        occurrence,
        graph: g,
        record,
        two_factor: TwoFactor::new(f),
        expected_before,
        expected_after,
        improvement: extra,
    })
}

fn sorted(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v
}
