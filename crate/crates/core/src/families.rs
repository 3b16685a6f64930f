//! Small named graph families.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{MultiGraph, VertexId};

fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for (a, b) in pairs {
        g.add_edge(VertexId(a as u32), VertexId(b as u32)).expect("valid pair");
    }
    g
}

/// Complete bipartite graph with sides 0..a and a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    from_pairs(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
}

/// The 3-cube; vertex i is adjacent to i xor 1, 2, 4.
pub fn cube() -> MultiGraph {
    from_pairs(8, (0..8).flat_map(|i| [1, 2, 4].into_iter().filter(move |&b| i & b == 0).map(move |b| (i, i | b))))
}

/// Prism over a k-cycle (bipartite for even k).
pub fn prism(k: usize) -> MultiGraph {
    from_pairs(2 * k, (0..k).flat_map(|i| [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]))
}

/// Hexagonal torus in brick-wall form: a rows, b columns, both even.
pub fn honeycomb(a: usize, b: usize) -> MultiGraph {
    let id = |i: usize, j: usize| (i % a) * b + (j % b);
    from_pairs(
        a * b,
        (0..a).flat_map(|i| {
            (0..b).flat_map(move |j| {
                let mut v = vec![(id(i, j), id(i, j + 1))];
                if (i + j) % 2 == 0 {
                    v.push((id(i, j), id(i + 1, j)));
                }
                v
            })
        }),
    )
}

/// Two vertices joined by `k` parallel edges.
pub fn bond(k: usize) -> MultiGraph {
    from_pairs(2, (0..k).map(|_| (0, 1)))
}

/// Copy with vertex ids and edge order shuffled.
pub fn relabel(g: &MultiGraph, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    let mut index = vec![0usize; g.vertex_bound()];
    for (i, v) in ids.iter().enumerate() {
        index[v.index()] = i;
    }
    let mut perm: Vec<usize> = (0..ids.len()).collect();
    perm.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = g
        .edge_ids()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (perm[index[a.index()]], perm[index[b.index()]])
        })
        .collect();
    pairs.shuffle(&mut rng);
    from_pairs(ids.len(), pairs)
}

/// Disjoint union; the second graph's vertices follow the first's.
pub fn disjoint_union(g: &MultiGraph, h: &MultiGraph) -> MultiGraph {
    let idx = |x: &MultiGraph| {
        let mut index = vec![0usize; x.vertex_bound()];
        for (i, v) in x.vertex_ids().enumerate() {
            index[v.index()] = i;
        }
        index
    };
    let (gi, hi) = (idx(g), idx(h));
    let n = g.vertex_count();
    let pairs = g
        .edge_ids()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (gi[a.index()], gi[b.index()])
        })
        .chain(h.edge_ids().map(|e| {
            let (a, b) = h.endpoints(e);
            (n + hi[a.index()], n + hi[b.index()])
        }))
        .collect::<Vec<_>>();
    from_pairs(n + h.vertex_count(), pairs)
}

/// Every simple cubic bipartite graph with sides of size `m`, as biadjacency
/// matrices with all row and column sums 3 (isomorphic copies included).
pub fn all_cubic_bipartite(m: usize, mut visit: impl FnMut(MultiGraph)) {
    let rows: Vec<[usize; 3]> =
        (0..m).flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| [a, b, c]))).collect();
    let mut col = vec![0usize; m];
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        m: usize,
        rows: &[[usize; 3]],
        col: &mut [usize],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(MultiGraph),
    ) {
        let r = chosen.len();
        if r == m {
            let pairs = chosen.iter().enumerate().flat_map(|(i, &k)| rows[k].map(|j| (i, m + j)));
            visit(from_pairs(2 * m, pairs));
            return;
        }
        let left = m - r - 1;
        for (k, row) in rows.iter().enumerate() {
            if row.iter().any(|&j| col[j] == 3) {
                continue;
            }
            for &j in row {
                col[j] += 1;
            }
            // every column must still be able to reach 3
            if col.iter().all(|&c| c + left >= 3) {
                chosen.push(k);
                rec(m, rows, col, chosen, visit);
                chosen.pop();
            }
            for &j in row {
                col[j] -= 1;
            }
        }
    }
    rec(m, &rows, &mut col, &mut chosen, &mut visit);
}
