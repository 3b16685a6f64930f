//! Anchored template search over cubic multigraphs.

use crate::graph::{EdgeId, MultiGraph, VertexId};

use super::template::{GadgetKind, Template};
use super::Occurrence;

struct Search<'a> {
    g: &'a MultiGraph,
    t: &'a Template,
    parent: Vec<usize>,
    map: Vec<VertexId>,
    out: Vec<Occurrence>,
}

impl<'a> Search<'a> {
    fn new(g: &'a MultiGraph, t: &'a Template) -> Self {
        let parent =
            (0..t.roles.len()).map(|r| (0..r).find(|&p| t.edge_index(p, r).is_some()).unwrap_or(usize::MAX)).collect();
        Search { g, t, parent, map: Vec::with_capacity(t.roles.len()), out: Vec::new() }
    }

    fn usable_vertex(&self, v: VertexId) -> bool {
        !self.t.organic || self.g.is_organic(v)
    }

    fn usable_edge(&self, e: EdgeId) -> bool {
        !self.t.organic || self.g.is_original(e)
    }

    fn run(&mut self, anchor: VertexId) {
        if !self.usable_vertex(anchor) {
            return;
        }
        self.map.clear();
        self.map.push(anchor);
        self.extend();
    }

    fn extend(&mut self) {
        let r = self.map.len();
        if r == self.t.roles.len() {
            if let Some(occ) = self.finish() {
                self.out.push(occ);
            }
            return;
        }
        let base = self.map[self.parent[r]];
        let mut cands: Vec<VertexId> = Vec::with_capacity(3);
        for &e in self.g.incident(base) {
            if !self.usable_edge(e) {
                continue;
            }
            let w = self.g.other(e, base);
            if !cands.contains(&w) && !self.map.contains(&w) && self.usable_vertex(w) {
                cands.push(w);
            }
        }
        for w in cands {
            if self.g.degree(w) != 3 {
                continue;
            }
            // adjacency to earlier roles must follow the template exactly
            let ok = (0..r).all(|p| {
                let want = self.t.edge_index(p, r).is_some();
                let has = self.g.incident(w).iter().any(|&e| self.g.other(e, w) == self.map[p]);
                want == has
            });
            if ok {
                self.map.push(w);
                self.extend();
                self.map.pop();
            }
        }
    }

    fn finish(&self) -> Option<Occurrence> {
        let (g, t) = (self.g, self.t);
        let mut stubs = vec![EdgeId(u32::MAX); t.stubs.len()];
        for (r, &v) in self.map.iter().enumerate() {
            let mut internal = 0usize;
            let mut leaving = Vec::new();
            for &e in g.incident(v) {
                let w = g.other(e, v);
                match self.map.iter().position(|&x| x == w) {
                    Some(q) => {
                        t.edge_index(r, q)?;
                        if t.organic && !g.is_original(e) {
                            return None;
                        }
                        internal += 1;
                    }
                    None => leaving.push(e),
                }
            }
            // a parallel pair inside the image shows up as surplus internal incidences
            if internal != t.internal_degree(r) {
                return None;
            }
            match (t.stub_of_role[r], leaving.as_slice()) {
                (Some(s), [e]) => stubs[s] = *e,
                (None, []) => {}
                _ => return None,
            }
        }
        let ext = |s: usize| {
            let v = self.map[t.stubs[s]];
            g.other(stubs[s], v)
        };
        for group in &t.distinct {
            for (i, &s) in group.iter().enumerate() {
                if group[i + 1..].iter().any(|&q| ext(q) == ext(s)) {
                    return None;
                }
            }
        }
        Some(Occurrence { kind: t.kind, roles: self.map.clone(), stubs })
    }
}

/// Every embedding of `kind` whose first role sits on `anchor`.
pub fn embeddings_at(g: &MultiGraph, kind: GadgetKind, anchor: VertexId) -> Vec<Occurrence> {
    let mut s = Search::new(g, kind.template());
    s.run(anchor);
    s.out
}

/// Every embedding of `kind` in `g`.
pub fn embeddings(g: &MultiGraph, kind: GadgetKind) -> Vec<Occurrence> {
    let mut s = Search::new(g, kind.template());
    for v in g.vertex_ids() {
        s.run(v);
    }
    s.out
}

fn sort_key(occ: &Occurrence) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut k = occ.roles.clone();
    k.sort_unstable();
    (k, occ.roles.clone())
}

/// Lexicographically smallest occurrence by sorted vertex tuple, then by role vector.
pub fn best(occs: Vec<Occurrence>) -> Option<Occurrence> {
    occs.into_iter().min_by_key(sort_key)
}

/// True when `v` lies in a component that is exactly K3,3.
pub fn in_k33_component(g: &MultiGraph, v: VertexId) -> bool {
    let mut comp = vec![v];
    let mut i = 0;
    while i < comp.len() {
        let u = comp[i];
        for w in g.neighbors(u) {
            if !comp.contains(&w) {
                comp.push(w);
                if comp.len() > 6 {
                    return false;
                }
            }
        }
        i += 1;
    }
    comp.len() == 6
        && comp.iter().all(|&u| {
            let mut ns: Vec<VertexId> = g.neighbors(u).collect();
            ns.sort_unstable();
            ns.dedup();
            g.degree(u) == 3 && ns.len() == 3
        })
}
