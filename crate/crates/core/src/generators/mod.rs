//! Instance factories: seeded random profiles, the three hardness
//! reductions (CNF-SAT, multicoloured clique, binary CSP) and the grid.

mod random;
mod reductions;
mod sources;

pub use random::{gen_random, RandomParams};
pub use reductions::{gen_from_2csp, gen_from_multicolored_clique, gen_from_sat, gen_grid};
pub use sources::{random_cnf, random_colored_graph, random_csp, CnfFormula, ColoredGraph, CspConstraint, CspInstance};
