//! Expansion case table: how a 2-factor crossing a gadget is completed
//! through the restored configuration.

use std::sync::OnceLock;

use super::template::{automorphisms, parse_chains, stub_perm, GadgetKind, Replacement, Template};

struct Def {
    id: &'static str,
    kind: GadgetKind,
    /// External pairings "r~s:x"; their endpoints are exactly the used stubs.
    arcs: &'static str,
    /// Internal edges added on expansion, as role chains.
    sel: &'static str,
    /// Lengths of the cycles through the gadget before expansion.
    before: &'static str,
    /// Lengths of the same cycles after expansion.
    after: &'static str,
    /// May close a new organic 6-cycle.
    flagged: bool,
}

const fn c(
    id: &'static str,
    kind: GadgetKind,
    arcs: &'static str,
    sel: &'static str,
    before: &'static str,
    after: &'static str,
) -> Def {
    Def { id, kind, arcs, sel, before, after, flagged: false }
}

const fn flag(mut d: Def) -> Def {
    d.flagged = true;
    d
}

use GadgetKind::*;

const DEFS: &[Def] = &[
    // squares
    c("A.1", S1, "a~b:x", "a-d-c-b", "x+3", "x+5"),
    c("A.2", S1, "a~c:x b~d:y", "a-b d-c", "x+2 y+2", "x+y+6"),
    c("A.3", S1, "a~b:x c~d:y", "a-d b-c", "x+y+4", "x+y+6"),
    c("A.4a", S2, "e~b:x", "e-a-d-c-b", "x+2", "x+6"),
    c("A.4b", S2, "b~d:x", "d-c-e-a-b", "x+2", "x+6"),
    flag(c("A.5a", S3, "", "e-a-d-f-b-c-e", "", "6")),
    c("A.5b", S3, "e~f:x", "e-a-b-c-d-f", "x+1", "x+7"),
    // hexagon
    c("B.1a", H1, "a~c:x b~d:y", "b-c a-f-e-d", "x+2 y+2", "x+y+8"),
    c("B.1b", H1, "a~c:x b~f:y", "b-a f-e-d-c", "x+2 y+2", "x+y+8"),
    c("B.1c", H1, "a~c:x d~f:y", "c-b-a f-e-d", "x+2 y+2", "x+4 y+4"),
    c("B.2a", H1, "a~b:x c~d:y", "b-c a-f-e-d", "x+y+4", "x+y+8"),
    flag(c("B.2b", H1, "a~b:x c~f:y", "b-a f-e-d-c", "x+y+4", "x+3 y+5")),
    flag(c("B.2c", H1, "a~d:x c~b:y", "b-c a-f-e-d", "x+y+4", "x+5 y+3")),
    c("B.2d", H1, "a~d:x c~f:y", "c-b-a f-e-d", "x+y+4", "x+y+8"),
    c("B.2e", H1, "a~f:x b~c:y", "b-a f-e-d-c", "x+y+4", "x+y+8"),
    c("B.2f", H1, "a~f:x c~d:y", "c-b-a f-e-d", "x+y+4", "x+y+8"),
    // theta
    c("C.1a", H2, "a~g:x f~h:y", "a-f g-b-c-d-e-h", "x+2 y+2", "x+y+10"),
    c("C.1b", H2, "a~g:x f~d:y", "g-h-e-f a-b-c-d", "x+2 y+2", "x+y+10"),
    c("C.1c", H2, "a~g:x h~d:y", "g-b-c-d a-f-e-h", "x+2 y+2", "x+y+10"),
    flag(c("C.2a", H2, "a~f:x g~h:y", "a-f g-b-c-d-e-h", "x+y+4", "x+3 y+7")),
    c("C.2b", H2, "a~f:x g~d:y", "g-h-e-f a-b-c-d", "x+y+4", "x+y+10"),
    c("C.2c", H2, "a~h:x g~f:y", "a-f g-b-c-d-e-h", "x+y+4", "x+y+10"),
    c("C.2d", H2, "a~h:x g~d:y", "g-b-c-d a-f-e-h", "x+y+4", "x+5 y+5"),
    c("C.2e", H2, "a~d:x g~f:y", "g-h-e-f a-b-c-d", "x+y+4", "x+5 y+5"),
    c("C.2f", H2, "a~d:x g~h:y", "g-b-c-d a-f-e-h", "x+y+4", "x+y+10"),
    // three super-edges
    c("D.1", H3, "", "a-f-e-h-g-b-c-d-j-i-a", "", "10"),
    c("D.2a", H3, "f~c:x", "c-d-j-i-a-b-g-h-e-f", "x+1", "x+11"),
    c("D.2b", H3, "h~j:x", "h-g-b-c-d-e-f-a-i-j", "x+1", "x+11"),
    c("D.2c", H3, "i~g:x", "i-j-d-c-b-a-f-e-h-g", "x+1", "x+11"),
    c("D.3.1a", H3, "f~c:x h~j:y", "j-i-a-b-g-h f-e-d-c", "x+1 y+1", "x+5 y+7"),
    c("D.3.1b", H3, "f~c:x i~g:y", "i-j-d-e-h-g f-a-b-c", "x+1 y+1", "x+5 y+7"),
    c("D.3.1c", H3, "h~j:x i~g:y", "j-d-c-b-g i-a-f-e-h", "x+1 y+1", "x+y+12"),
    c("D.3.2a", H3, "f~j:x c~h:y", "j-i-a-b-g-h f-e-d-c", "x+y+2", "x+y+12"),
    c("D.3.2b", H3, "f~g:x c~i:y", "i-j-d-e-h-g f-a-b-c", "x+y+2", "x+y+12"),
    c("D.3.2c", H3, "f~h:x c~j:y", "j-i-a-b-g-h f-e-d-c", "x+y+2", "x+y+12"),
    c("D.3.2d", H3, "f~i:x c~g:y", "i-j-d-e-h-g f-a-b-c", "x+y+2", "x+y+12"),
    c("D.3.2e", H3, "h~g:x j~i:y", "j-d-c-b-g i-a-f-e-h", "x+y+2", "x+y+12"),
    flag(c("D.3.2f", H3, "h~i:x j~g:y", "j-d-c-b-g i-a-f-e-h", "x+y+2", "x+6 y+6")),
    c("D.4.1", H3, "f~c:x h~j:y i~g:z", "j-i f-a-b-g c-d-e-h", "x+1 y+1 z+1", "x+y+z+13"),
    c("D.4.2a", H3, "f~j:x c~h:y i~g:z", "j-d-e-h f-a-i c-b-g", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.2b", H3, "f~g:x c~i:y h~j:z", "j-d-c f-e-h i-a-b-g", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.2c", H3, "f~h:x c~j:y i~g:z", "j-d-e-h f-a-i g-b-c", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.2d", H3, "f~i:x c~g:y h~j:z", "i-j f-a-b-g h-e-d-c", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.2e", H3, "h~g:x i~j:y f~c:z", "j-d-e-h i-a-f g-b-c", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.2f", H3, "h~i:x j~g:y f~c:z", "i-j f-a-b-g h-e-d-c", "x+y+2 z+1", "x+y+z+13"),
    c("D.4.3a", H3, "c~j:x h~g:y i~f:z", "j-i c-d-e-h g-b-a-f", "x+y+z+3", "x+y+z+13"),
    c("D.4.3b", H3, "c~j:x h~i:y g~f:z", "g-h i-a-b-c f-e-d-j", "x+y+z+3", "x+y+z+13"),
    c("D.4.3c", H3, "c~h:x j~g:y i~f:z", "g-b-a-i f-e-h c-d-j", "x+y+z+3", "x+y+z+13"),
    c("D.4.3d", H3, "c~h:x j~i:y g~f:z", "g-h i-a-b-c f-e-d-j", "x+y+z+3", "x+y+z+13"),
    c("D.4.3e", H3, "c~g:x j~i:y h~f:z", "g-h f-e-d-j c-b-a-i", "x+y+z+3", "x+y+z+13"),
    c("D.4.3f", H3, "c~g:x h~i:y j~f:z", "g-b-a-f c-d-e-h i-j", "x+y+z+3", "x+y+z+13"),
    c("D.4.3g", H3, "c~i:x j~g:y h~f:z", "j-i f-a-b-g c-d-e-h", "x+y+z+3", "x+y+z+13"),
    c("D.4.3h", H3, "c~i:x g~h:y j~f:z", "g-b-a-f c-d-e-h i-j", "x+y+z+3", "x+y+z+13"),
    // joined pair over the extended theta
    c("E.1", H4, "w2~c:x w1~f:y", "w2-i-j-w1 f-a-b-g-h-e-d-c", "x+2 y+2", "x+y+14"),
    c("E.2a", H4, "w2~w1:x", "w2-h-e-f-a-i-j-d-c-b-g-w1", "x+3", "x+13"),
    c("E.2b", H4, "w2~f:x", "w2-i-j-w1-g-h-e-d-c-b-a-f", "x+3", "x+13"),
    c("E.2c", H4, "c~f:x", "f-a-b-g-w1-j-i-w2-h-e-d-c", "x+3", "x+13"),
    c("E.3a", H4, "w2~w1:x f~c:y", "w2-i-a-b-g-h-e-f c-d-j-w1", "x+y+4", "x+y+14"),
    c("E.3b", H4, "w2~f:x w1~c:y", "w2-i-j-w1 c-d-e-h-g-b-a-f", "x+y+4", "x+y+14"),
    c("F.a", H5, "v~w1:x", "v-w2-h-g-b-c-d-e-f-a-i-j-w1", "x+2", "x+14"),
    c("F.b", H5, "v~f:x", "v-w2-i-j-w1-g-h-e-d-c-b-a-f", "x+2", "x+14"),
    c("F.c", H5, "w1~f:x", "f-a-i-w2-v-c-b-g-h-e-d-j-w1", "x+2", "x+14"),
    c("G.1", H6, "", "u1-c-d-e-h-g-b-a-f-u2-w1-j-i-w2-u1", "", "14"),
    c("G.2", H6, "u1~u2:x", "u1-c-d-e-f-a-b-g-h-w2-i-j-w1-u2", "x+1", "x+15"),
];

/// Linear length expression: constant plus a subset of the arc variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LenExpr {
    /// Indices into the entry's arcs.
    pub vars: Vec<usize>,
    pub constant: usize,
}

impl LenExpr {
    pub fn eval(&self, lengths: &[usize]) -> usize {
        self.constant + self.vars.iter().map(|&v| lengths[v]).sum::<usize>()
    }
}

#[derive(Clone, Debug)]
pub struct Arc {
    /// Stub indices at the two ends.
    pub ends: (usize, usize),
    pub var: char,
}

#[derive(Clone, Debug)]
pub struct CaseEntry {
    pub id: &'static str,
    pub kind: GadgetKind,
    pub arcs: Vec<Arc>,
    /// Sorted used stub indices.
    pub used: Vec<usize>,
    /// Internal edge indices of the template.
    pub selection: Vec<usize>,
    pub before: Vec<LenExpr>,
    pub after: Vec<LenExpr>,
    pub flagged: bool,
}

impl CaseEntry {
    /// Sorted normalized pairing of stub indices.
    pub fn pairing(&self) -> Vec<(usize, usize)> {
        normalize(self.arcs.iter().map(|a| a.ends))
    }

    /// Arc lengths ordered like `arcs`, from variable values `x, y, z`.
    pub fn arc_lengths(&self, xyz: [usize; 3]) -> Vec<usize> {
        self.arcs.iter().map(|a| xyz[(a.var as u8 - b'x') as usize]).collect()
    }
}

pub(crate) fn normalize(pairs: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = pairs.map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
    v.sort_unstable();
    v
}

fn parse_exprs(text: &str, arcs: &[Arc], id: &str) -> Vec<LenExpr> {
    text.split_whitespace()
        .map(|term| {
            let mut e = LenExpr { vars: Vec::new(), constant: 0 };
            for part in term.split('+') {
                if let Ok(k) = part.parse::<usize>() {
                    e.constant += k;
                } else {
                    let ch = part.chars().next().unwrap();
                    let v = arcs
                        .iter()
                        .position(|a| a.var == ch)
                        .unwrap_or_else(|| panic!("{id}: variable {ch} has no arc"));
                    e.vars.push(v);
                }
            }
            e.vars.sort_unstable();
            e
        })
        .collect()
}

fn build(d: &Def) -> CaseEntry {
    let t = d.kind.template();
    let arcs: Vec<Arc> = d
        .arcs
        .split_whitespace()
        .map(|s| {
            let (pair, var) = s.split_once(':').unwrap();
            let (r, q) = pair.split_once('~').unwrap();
            Arc { ends: (t.stub_for(r), t.stub_for(q)), var: var.chars().next().unwrap() }
        })
        .collect();
    let mut used: Vec<usize> = arcs.iter().flat_map(|a| [a.ends.0, a.ends.1]).collect();
    used.sort_unstable();
    let mut selection: Vec<usize> = parse_chains(&t.roles, d.sel)
        .into_iter()
        .map(|(a, b)| {
            t.edge_index(a, b)
                .unwrap_or_else(|| panic!("{}: {}-{} is not an internal edge", d.id, t.roles[a], t.roles[b]))
        })
        .collect();
    selection.sort_unstable();
    CaseEntry {
        id: d.id,
        kind: d.kind,
        before: parse_exprs(d.before, &arcs, d.id),
        after: parse_exprs(d.after, &arcs, d.id),
        arcs,
        used,
        selection,
        flagged: d.flagged,
    }
}

pub fn case_table() -> &'static [CaseEntry] {
    static TABLE: OnceLock<Vec<CaseEntry>> = OnceLock::new();
    TABLE.get_or_init(|| DEFS.iter().map(build).collect())
}

pub fn case_by_id(id: &str) -> Option<&'static CaseEntry> {
    case_table().iter().find(|c| c.id == id)
}

/// A table hit, transported onto the observed labeling.
#[derive(Clone, Debug)]
pub struct CaseMatch {
    pub entry: &'static CaseEntry,
    /// Role permutation taking the entry's labeling to the observed one.
    pub symmetry: Vec<usize>,
    /// Template edge indices to add.
    pub selection: Vec<usize>,
    /// For each entry arc, the observed stub pair it corresponds to.
    pub arc_ends: Vec<(usize, usize)>,
}

/// Finds the entry matching `used` stubs and `pairing` up to the kind's symmetries.
pub fn lookup(kind: GadgetKind, used: &[usize], pairing: &[(usize, usize)]) -> Option<CaseMatch> {
    let t = kind.template();
    let mut used_sorted = used.to_vec();
    used_sorted.sort_unstable();
    let want = normalize(pairing.iter().copied());
    // identity comes first, so an entry drawn with the observed labels wins
    for sym in automorphisms(kind) {
        for entry in case_table().iter().filter(|e| e.kind == kind) {
            if entry.used.len() != used_sorted.len() {
                continue;
            }
            let sp = stub_perm(t, sym);
            let mut img: Vec<usize> = entry.used.iter().map(|&s| sp[s]).collect();
            img.sort_unstable();
            if img != used_sorted {
                continue;
            }
            if normalize(entry.arcs.iter().map(|a| (sp[a.ends.0], sp[a.ends.1]))) != want {
                continue;
            }
            let selection = map_selection(t, sym, &entry.selection);
            return Some(CaseMatch {
                entry,
                symmetry: sym.clone(),
                selection,
                arc_ends: entry.arcs.iter().map(|a| (sp[a.ends.0], sp[a.ends.1])).collect(),
            });
        }
    }
    None
}

fn map_selection(t: &Template, sym: &[usize], sel: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = sel
        .iter()
        .map(|&i| {
            let (a, b) = t.edges[i];
            t.edge_index(sym[a], sym[b]).expect("automorphism maps edges to edges")
        })
        .collect();
    out.sort_unstable();
    out
}

/// Gadget edges in use implied by the used stubs: for super-vertex pairs the
/// link is used when a group uses one stub; a super-edge is used when both
/// of its stubs are.
pub fn gadget_edges_used(t: &Template, used: &[usize]) -> Vec<usize> {
    match &t.replacement {
        Replacement::Vertices { groups, joined } => {
            if *joined && groups.iter().any(|g| g.iter().filter(|s| used.contains(s)).count() == 1) {
                vec![0]
            } else {
                vec![]
            }
        }
        Replacement::Edges { pairs } => {
            (0..pairs.len()).filter(|&i| used.contains(&pairs[i].0) && used.contains(&pairs[i].1)).collect()
        }
    }
}
