//! Few-cycle 2-factors and short spanning Eulerian multigraphs for cubic and
//! k-regular bipartite graphs, by gadget compression and expansion.

pub mod families;
pub mod fixture;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pipeline;

pub use graph::{EdgeId, MultiGraph, Provenance, VertexId};
pub use io::{generate, parse_graph, write_graph, GenSpec, Model};
pub use matching::TwoFactor;
pub use pipeline::{bigcycle, solve_k_regular, EulerianResult, Solution, SolveOptions, SolveReport};
