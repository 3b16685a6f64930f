//! Merging a freshly created organic 6-cycle into its neighbors.

use std::collections::BTreeSet;

use crate::graph::{Cycle, EdgeId, MultiGraph, VertexId};
use crate::matching::TwoFactor;

fn f_nbrs(g: &MultiGraph, f: &BTreeSet<EdgeId>, v: VertexId) -> Vec<(EdgeId, VertexId)> {
    g.incident(v).iter().filter(|e| f.contains(e)).map(|&e| (e, g.other(e, v))).collect()
}

fn off_f(g: &MultiGraph, f: &BTreeSet<EdgeId>, v: VertexId) -> Option<(EdgeId, VertexId)> {
    let mut it = g.incident(v).iter().filter(|e| !f.contains(e));
    let e = *it.next()?;
    it.next().is_none().then(|| (e, g.other(e, v)))
}

/// Walks `steps` edges along `f` from `start`, first leaving through `first`.
fn walk(g: &MultiGraph, f: &BTreeSet<EdgeId>, start: VertexId, first: EdgeId, steps: usize) -> Vec<(EdgeId, VertexId)> {
    let mut out = Vec::with_capacity(steps);
    let (mut prev, mut cur) = (first, g.other(first, start));
    out.push((first, cur));
    while out.len() < steps {
        let Some(&(e, w)) = f_nbrs(g, f, cur).iter().find(|(e, _)| *e != prev) else { break };
        out.push((e, w));
        prev = e;
        cur = w;
    }
    out
}

/// Swap for one orientation: `a-b` is the hexagon edge on `c1`.
fn try_swap(
    g: &MultiGraph,
    f: &BTreeSet<EdgeId>,
    c1: &Cycle,
    a: VertexId,
    b: VertexId,
    ab: EdgeId,
) -> Option<BTreeSet<EdgeId>> {
    let (af, fv) = off_f(g, f, a)?;
    let (bc, c) = off_f(g, f, b)?;
    if c1.vertices.contains(&fv) || c1.vertices.contains(&c) || fv == c {
        return None;
    }
    // hexagon path c-d-e-f inside F, then the 8-cycle c-d-e-f-6-p1-p2-3
    let (c_3, cd) = {
        let ns = f_nbrs(g, f, c);
        if ns.len() != 2 {
            return None;
        }
        let dir = ns.iter().position(|&(e, _)| {
            let p = walk(g, f, c, e, 3);
            p.len() == 3 && p[2].1 == fv
        })?;
        (ns[1 - dir], ns[dir])
    };
    let path = walk(g, f, c, cd.0, 8);
    if path.len() != 8 || path[7].1 != c {
        return None;
    }
    let (f6, six) = path[3];
    let three = c_3.1;
    if path[7].0 != c_3.0 || path[6].1 != three {
        return None;
    }
    let c2: Vec<VertexId> = path.iter().map(|p| p.1).collect();
    let (six_e1, e1) = off_f(g, f, six)?;
    let (three_e2, e2) = off_f(g, f, three)?;
    if e1 == e2 || c2.contains(&e1) || c2.contains(&e2) || c1.vertices.contains(&e1) || c1.vertices.contains(&e2) {
        return None;
    }
    let (e1e2, _) = f_nbrs(g, f, e1).into_iter().find(|&(_, w)| w == e2)?;
    let mut out = f.clone();
    for e in [ab, c_3.0, f6, e1e2] {
        out.remove(&e);
    }
    out.extend([bc, af, six_e1, three_e2]);
    Some(out)
}

/// Rewires the region around `c1` with one fewer cycle when it has the exact
/// shape left behind by a hexagon expansion; otherwise returns `f` unchanged.
pub fn local_improvement(g: &MultiGraph, f: &TwoFactor, c1: &Cycle) -> TwoFactor {
    let Ok(before) = f.cycle_count(g) else { return f.clone() };
    let n = c1.len();
    for i in 0..n {
        let (a, b, ab) = (c1.vertices[i], c1.vertices[(i + 1) % n], c1.edges[i]);
        for (x, y) in [(a, b), (b, a)] {
            if let Some(edges) = try_swap(g, &f.edges, c1, x, y, ab) {
                let cand = TwoFactor::new(edges);
                if cand.cycle_count(g).is_ok_and(|k| k + 1 == before) {
                    return cand;
                }
            }
        }
    }
    f.clone()
}
