//! Polynomial solver for binary group-dichotomous profiles: compile each
//! ballot to a weighted 2-monotone constraint, then minimise violated
//! weight with an s-t minimum cut.

mod constraints;
mod network;

pub use constraints::{compile_constraints, ConstraintSystem, TwoMonotoneConstraint};
pub use network::{build_network, max_flow_min_cut, Arc, FlowNetwork, SINK, SOURCE};

use crate::error::Result;
use crate::model::{Outcome, Profile};
use crate::solution::{Method, Solution};

/// Solves via the cut network. The returned cost is re-checked against a
/// direct evaluation of the outcome; ties are resolved by the cut
/// structure, not lexicographically.
pub fn solve_mincut(profile: &Profile) -> Result<Solution> {
    let system = compile_constraints(profile)?;
    let net = build_network(system.num_vars, &system.constraints);
    let (cut, source_side) = max_flow_min_cut(&net);
    let outcome = Outcome::new(
        (0..system.num_vars)
            .map(|j| usize::from(source_side[net.var_node(j)]))
            .collect(),
    );
    Solution::verified(profile, outcome, system.base_cost + cut, Method::MinCut)
}
