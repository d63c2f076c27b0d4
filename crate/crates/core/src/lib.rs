//! Exact solvers for partial vertex cover on bipartite graphs and trees.
//!
//! * [`lagrangian`]: threshold search over a min-cut Lagrangian relaxation,
//!   exact whenever the coverage profile is concave.
//! * [`oracle`] and [`treedp`]: independent ground truth by enumeration and
//!   by tree dynamic programming.
//! * [`reduction`]: the CLIQUE gadget showing hardness on general bipartite
//!   graphs.
//!
//! Vertex ids are 1-based everywhere in the public API.

pub mod error;
pub mod fixtures;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lagrangian;
pub mod oracle;
pub mod reduction;
pub mod treedp;

pub use error::{Error, Result};
pub use fixtures::{fixture_mnc_counterexample, fixture_weighted_spider};
pub use generate::{gen_random_bipartite, gen_random_graph, gen_random_tree};
pub use graph::{
    bipartition, coverage, is_forest, is_tree, BipartiteLabeling, Graph, PvcInstance, Side,
};
pub use io::{parse_graph, write_graph};
pub use lagrangian::{solve_pvc_mnc, ThresholdParam};
pub use oracle::{check_mnc, CoverageProfile, MncReport, Oracle, PvcSolution};
