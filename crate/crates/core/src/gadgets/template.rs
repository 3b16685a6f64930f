//! Gadget templates: internal shape, stub positions, replacement shape.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    S1,
    S2,
    S3,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 9] = [
        GadgetKind::S1,
        GadgetKind::S2,
        GadgetKind::S3,
        GadgetKind::H1,
        GadgetKind::H2,
        GadgetKind::H3,
        GadgetKind::H4,
        GadgetKind::H5,
        GadgetKind::H6,
    ];
    /// Square kinds, most specialized first.
    pub const SQUARES: [GadgetKind; 3] = [GadgetKind::S3, GadgetKind::S2, GadgetKind::S1];
    /// Hexagon kinds, most specialized first.
    pub const HEXES: [GadgetKind; 6] =
        [GadgetKind::H6, GadgetKind::H5, GadgetKind::H4, GadgetKind::H3, GadgetKind::H2, GadgetKind::H1];

    pub fn template(self) -> &'static Template {
        &catalog()[self as usize]
    }

    pub fn is_square(self) -> bool {
        matches!(self, GadgetKind::S1 | GadgetKind::S2 | GadgetKind::S3)
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// What the configuration is replaced by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    /// Super-vertices, each taking over the listed stubs; `joined` adds one
    /// edge between the two super-vertices.
    Vertices { groups: Vec<Vec<usize>>, joined: bool },
    /// Super-edges joining the far ends of the listed stub pairs.
    Edges { pairs: Vec<(usize, usize)> },
}

#[derive(Clone, Debug)]
pub struct Template {
    pub kind: GadgetKind,
    /// Role names; every role after the first is adjacent to an earlier one.
    pub roles: Vec<&'static str>,
    /// Internal edges as role pairs.
    pub edges: Vec<(usize, usize)>,
    /// Stub label `i + 1` hangs off role `stubs[i]`.
    pub stubs: Vec<usize>,
    /// Stub groups whose far ends must be pairwise distinct.
    pub distinct: Vec<Vec<usize>>,
    pub replacement: Replacement,
    /// Internals must be organic vertices joined by original edges.
    pub organic: bool,
    /// For each role, the stub index hanging off it.
    pub stub_of_role: Vec<Option<usize>>,
    /// Role adjacency as edge indices.
    pub role_edges: Vec<Vec<usize>>,
}

impl Template {
    pub fn role(&self, name: &str) -> usize {
        self.roles.iter().position(|r| *r == name).unwrap_or_else(|| panic!("{}: unknown role {name}", self.kind))
    }

    pub fn stub_for(&self, name: &str) -> usize {
        self.stub_of_role[self.role(name)].unwrap_or_else(|| panic!("{}: role {name} has no stub", self.kind))
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    /// Number of gadget edges (super-vertex link or super-edges).
    pub fn gadget_edge_count(&self) -> usize {
        match &self.replacement {
            Replacement::Vertices { joined, .. } => usize::from(*joined),
            Replacement::Edges { pairs } => pairs.len(),
        }
    }

    pub fn internal_degree(&self, r: usize) -> usize {
        self.role_edges[r].len()
    }
}

struct Def {
    kind: GadgetKind,
    roles: &'static str,
    edges: &'static str,
    stubs: &'static str,
    distinct: &'static [&'static str],
    groups: &'static [&'static str],
    joined: bool,
    pairs: &'static [&'static str],
}

const HEX: &str = "a-b-c-d-e-f-a";

const DEFS: [Def; 9] = [
    Def {
        kind: GadgetKind::S1,
        roles: "a b c d",
        edges: "a-b-c-d-a",
        stubs: "a b c d",
        distinct: &["a b c d"],
        groups: &["a c", "b d"],
        joined: true,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::S2,
        roles: "a b c d e",
        edges: "a-b-c-d-a a-e-c",
        stubs: "e b d",
        distinct: &["b d"],
        groups: &["e b d"],
        joined: false,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::S3,
        roles: "a b c d e f",
        edges: "a-b-c-d-a a-e-c d-f-b",
        stubs: "e f",
        distinct: &[],
        groups: &[],
        joined: false,
        pairs: &["e f"],
    },
    Def {
        kind: GadgetKind::H1,
        roles: "a b c d e f",
        edges: HEX,
        stubs: "a b c d e f",
        distinct: &[],
        groups: &["a c e", "b d f"],
        joined: false,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::H2,
        roles: "a b c d e f g h",
        edges: "a-b-c-d-e-f-a b-g-h-e",
        stubs: "a g c d h f",
        distinct: &[],
        groups: &["a g c", "d h f"],
        joined: false,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::H3,
        roles: "a b c d e f g h i j",
        edges: "a-b-c-d-e-f-a b-g-h-e a-i-j-d",
        stubs: "j g c f h i",
        distinct: &[],
        groups: &[],
        joined: false,
        pairs: &["f c", "h j", "i g"],
    },
    Def {
        kind: GadgetKind::H4,
        roles: "a b c d e f g h i j w1 w2",
        edges: "a-b-c-d-e-f-a b-g-h-e a-i-j-d j-w1-g i-w2-h",
        stubs: "w2 w1 c f",
        distinct: &[],
        groups: &["w2 c", "w1 f"],
        joined: true,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::H5,
        roles: "a b c d e f g h i j w1 w2 v",
        edges: "a-b-c-d-e-f-a b-g-h-e a-i-j-d j-w1-g i-w2-h w2-v-c",
        stubs: "v w1 f",
        distinct: &[],
        groups: &["v w1 f"],
        joined: false,
        pairs: &[],
    },
    Def {
        kind: GadgetKind::H6,
        roles: "a b c d e f g h i j w1 w2 u1 u2",
        edges: "a-b-c-d-e-f-a b-g-h-e a-i-j-d j-w1-g i-w2-h w2-u1-c w1-u2-f",
        stubs: "u1 u2",
        distinct: &[],
        groups: &[],
        joined: false,
        pairs: &["u1 u2"],
    },
];

/// Parses "a-b-c d-e" into role-index edges (chains expand pairwise).
pub(crate) fn parse_chains(roles: &[&'static str], text: &str) -> Vec<(usize, usize)> {
    let idx =
        |name: &str| roles.iter().position(|r| *r == name).unwrap_or_else(|| panic!("unknown role {name} in {text}"));
    let mut out = Vec::new();
    for chain in text.split_whitespace() {
        let parts: Vec<usize> = chain.split('-').map(idx).collect();
        for w in parts.windows(2) {
            out.push((w[0], w[1]));
        }
    }
    out
}

fn build(def: &Def) -> Template {
    let roles: Vec<&'static str> = def.roles.split_whitespace().collect();
    let role = |name: &str| roles.iter().position(|r| *r == name).unwrap();
    let edges = parse_chains(&roles, def.edges);
    let stubs: Vec<usize> = def.stubs.split_whitespace().map(role).collect();
    let mut stub_of_role = vec![None; roles.len()];
    for (i, &r) in stubs.iter().enumerate() {
        stub_of_role[r] = Some(i);
    }
    let stub_idx = |name: &str| stub_of_role[role(name)].unwrap();
    let group = |s: &str| s.split_whitespace().map(stub_idx).collect::<Vec<_>>();
    let replacement = if def.pairs.is_empty() {
        Replacement::Vertices { groups: def.groups.iter().map(|g| group(g)).collect(), joined: def.joined }
    } else {
        Replacement::Edges {
            pairs: def
                .pairs
                .iter()
                .map(|p| {
                    let g = group(p);
                    (g[0], g[1])
                })
                .collect(),
        }
    };
    let mut role_edges = vec![Vec::new(); roles.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        role_edges[a].push(i);
        role_edges[b].push(i);
    }
    Template {
        kind: def.kind,
        distinct: def.distinct.iter().map(|g| group(g)).collect(),
        organic: !def.kind.is_square(),
        roles,
        edges,
        stubs,
        replacement,
        stub_of_role,
        role_edges,
    }
}

pub fn catalog() -> &'static [Template] {
    static CATALOG: OnceLock<Vec<Template>> = OnceLock::new();
    CATALOG.get_or_init(|| DEFS.iter().map(build).collect())
}

/// Role permutations preserving internal edges, stubs and the replacement shape.
pub fn automorphisms(kind: GadgetKind) -> &'static [Vec<usize>] {
    static AUTS: OnceLock<Vec<Vec<Vec<usize>>>> = OnceLock::new();
    &AUTS.get_or_init(|| GadgetKind::ALL.iter().map(|k| compute_automorphisms(k.template())).collect())[kind as usize]
}

fn compute_automorphisms(t: &Template) -> Vec<Vec<usize>> {
    let n = t.roles.len();
    let adj = |a: usize, b: usize| t.edge_index(a, b).is_some();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        t: &Template,
        r: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        adj: &dyn Fn(usize, usize) -> bool,
    ) {
        let n = t.roles.len();
        if r == n {
            if preserves_replacement(t, map) {
                out.push(map.clone());
            }
            return;
        }
        for c in 0..n {
            if used[c] || t.internal_degree(c) != t.internal_degree(r) {
                continue;
            }
            if t.stub_of_role[c].is_some() != t.stub_of_role[r].is_some() {
                continue;
            }
            if (0..r).any(|p| adj(p, r) != adj(map[p], c)) {
                continue;
            }
            map[r] = c;
            used[c] = true;
            rec(t, r + 1, map, used, out, adj);
            used[c] = false;
            map[r] = usize::MAX;
        }
    }
    rec(t, 0, &mut map, &mut used, &mut out, &adj);
    out
}

/// Stub permutation induced by a role permutation.
pub fn stub_perm(t: &Template, roles: &[usize]) -> Vec<usize> {
    t.stubs.iter().map(|&r| t.stub_of_role[roles[r]].unwrap()).collect()
}

fn preserves_replacement(t: &Template, roles: &[usize]) -> bool {
    let sp = stub_perm(t, roles);
    match &t.replacement {
        Replacement::Vertices { groups, .. } => groups.iter().all(|g| {
            let mut img: Vec<usize> = g.iter().map(|&s| sp[s]).collect();
            img.sort_unstable();
            groups.iter().any(|h| {
                let mut h = h.clone();
                h.sort_unstable();
                h == img
            })
        }),
        Replacement::Edges { pairs } => pairs.iter().all(|&(a, b)| {
            let (x, y) = (sp[a], sp[b]);
            pairs.iter().any(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x))
        }),
    }
}
