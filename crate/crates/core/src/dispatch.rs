//! Component-wise solving: split the profile along the connected
//! components of the global dependency graph, route each component to an
//! exact solver and merge the outcomes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::{
    classify, AnalysisReport, ClassifyConfig, ComponentReport, Route, DEFAULT_BRUTE_BUDGET, DEFAULT_VC_BOUND,
    DEFAULT_WIDTH_THRESHOLD,
};
use crate::brute::solve_brute;
use crate::error::{CmsError, Result};
use crate::mincut::solve_mincut;
use crate::model::{Outcome, Profile};
use crate::solution::{Method, Solution};
use crate::treewidth::solve_treewidth_heuristic;

/// Solver selection: automatic routing or one forced exact method.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    #[default]
    Auto,
    Brute,
    MinCut,
    Treewidth,
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Brute => "brute",
            MethodChoice::MinCut => "mincut",
            MethodChoice::Treewidth => "treewidth",
        })
    }
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "brute" => Ok(MethodChoice::Brute),
            "mincut" => Ok(MethodChoice::MinCut),
            "treewidth" => Ok(MethodChoice::Treewidth),
            _ => Err(format!(
                "unknown method {s:?} (expected auto, brute, mincut or treewidth)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub width_threshold: usize,
    pub brute_budget: u64,
    pub vc_bound: usize,
    pub method: MethodChoice,
    /// Run every applicable solver on each component and compare costs.
    pub cross_validate: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            width_threshold: DEFAULT_WIDTH_THRESHOLD,
            brute_budget: DEFAULT_BRUTE_BUDGET,
            vc_bound: DEFAULT_VC_BOUND,
            method: MethodChoice::Auto,
            cross_validate: false,
        }
    }
}

impl SolveConfig {
    pub fn classify_config(&self) -> ClassifyConfig {
        ClassifyConfig {
            width_threshold: self.width_threshold,
            brute_budget: self.brute_budget,
            vc_bound: self.vc_bound,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Solution,
    pub analysis: AnalysisReport,
    /// Route actually taken per component, aligned with `analysis.components`.
    pub routes: Vec<Route>,
}

/// Majority rule for profiles without conditional ballots: each issue takes
/// the alternative the fewest explicit ballots reject, lowest index on ties.
pub fn solve_majority(profile: &Profile) -> Result<Solution> {
    profile.check()?;
    let mut rejections: Vec<Vec<u64>> = profile.domain_sizes().iter().map(|&d| vec![0; d]).collect();
    for voter in &profile.voters {
        for (j, ib) in voter.ballot.entries() {
            let approved = ib
                .unconditional_approvals()
                .ok_or_else(|| CmsError::MethodNotApplicable {
                    method: "majority",
                    reason: format!("voter {} casts a conditional ballot on issue {}", voter.name, j),
                    report: Box::new(classify(profile, &ClassifyConfig::default())),
                })?;
            for (a, r) in rejections[j.index()].iter_mut().enumerate() {
                if !approved.contains(&a) {
                    *r += 1;
                }
            }
        }
    }
    let mut cost = 0;
    let outcome = rejections
        .iter()
        .map(|r| {
            let (a, &c) = r
                .iter()
                .enumerate()
                .min_by_key(|&(a, &c)| (c, a))
                .expect("domains are non-empty");
            cost += c;
            a
        })
        .collect();
    Solution::verified(profile, Outcome::new(outcome), cost, Method::Majority)
}

fn route_for(component: &ComponentReport, config: &SolveConfig) -> std::result::Result<Route, (&'static str, String)> {
    if component.is_isolated() {
        return Ok(Route::Majority);
    }
    let space_ok = component.outcome_space <= config.brute_budget as u128;
    match config.method {
        MethodChoice::Auto => Ok(component.route),
        MethodChoice::MinCut if !component.all_binary => Err(("mincut", "component has a non-binary issue".into())),
        MethodChoice::MinCut if !component.group_dichotomous => {
            Err(("mincut", "component is not group-dichotomous".into()))
        }
        MethodChoice::MinCut => Ok(Route::MinCut),
        MethodChoice::Treewidth if component.max_in_degree > 1 => Err((
            "treewidth",
            format!("component has in-degree {}", component.max_in_degree),
        )),
        MethodChoice::Treewidth => Ok(Route::Treewidth),
        MethodChoice::Brute if !space_ok => Err((
            "brute",
            format!(
                "component outcome space {} exceeds the budget {}",
                component.outcome_space, config.brute_budget
            ),
        )),
        MethodChoice::Brute => Ok(Route::Brute),
    }
}

fn run(route: Route, profile: &Profile, budget: u64) -> Result<Solution> {
    match route {
        Route::Majority => solve_majority(profile),
        Route::MinCut => solve_mincut(profile),
        Route::Treewidth => solve_treewidth_heuristic(profile),
        Route::Brute => solve_brute(profile, budget),
        Route::Intractable => unreachable!("intractable components are rejected before solving"),
    }
}

/// Every exact route whose preconditions hold for the component.
fn applicable(component: &ComponentReport, budget: u64) -> Vec<Route> {
    let mut routes = Vec::new();
    if component.is_isolated() {
        routes.push(Route::Majority);
    }
    if component.all_binary && component.group_dichotomous {
        routes.push(Route::MinCut);
    }
    if component.max_in_degree <= 1 {
        routes.push(Route::Treewidth);
    }
    if component.outcome_space <= budget as u128 {
        routes.push(Route::Brute);
    }
    routes
}

/// Solves `profile` exactly, one connected component at a time.
pub fn solve(profile: &Profile, config: &SolveConfig) -> Result<SolveReport> {
    profile.check()?;
    let analysis = classify(profile, &config.classify_config());

    let mut routes = Vec::with_capacity(analysis.components.len());
    for (i, component) in analysis.components.iter().enumerate() {
        let route = route_for(component, config).map_err(|(method, reason)| CmsError::MethodNotApplicable {
            method,
            reason: format!("component {i}: {reason}"),
            report: Box::new(analysis.clone()),
        })?;
        if route == Route::Intractable {
            return Err(CmsError::Intractable {
                component: i,
                report: Box::new(analysis),
            });
        }
        routes.push(route);
    }

    let parts: Vec<_> = analysis.components.iter().map(|c| c.issues.clone()).collect();
    let subs = profile.split(&parts);
    let solved: Vec<Result<Solution>> = subs
        .par_iter()
        .zip(&routes)
        .zip(&analysis.components)
        .enumerate()
        .map(|(i, ((sub, &route), component))| {
            let primary = run(route, sub, config.brute_budget)?;
            if config.cross_validate {
                for other in applicable(component, config.brute_budget) {
                    if other == route {
                        continue;
                    }
                    let alt = run(other, sub, config.brute_budget)?;
                    if alt.cost != primary.cost {
                        return Err(CmsError::CrossValidationMismatch {
                            component: i,
                            details: format!("{route} found {}, {other} found {}", primary.cost, alt.cost),
                        });
                    }
                }
            }
            Ok(primary)
        })
        .collect();

    let mut assignment = vec![0; profile.num_issues()];
    let mut cost = 0;
    let mut methods = Vec::with_capacity(solved.len());
    for (component, result) in analysis.components.iter().zip(solved) {
        let s = result?;
        for (issue, &a) in component.issues.iter().zip(s.outcome.as_slice()) {
            assignment[issue.index()] = a;
        }
        cost += s.cost;
        methods.push(s.method);
    }
    let method = match methods.split_first() {
        Some((&first, rest)) if rest.iter().all(|&m| m == first) => first,
        _ => Method::Componentwise,
    };
    let solution = Solution::verified(profile, Outcome::new(assignment), cost, method)?;
    Ok(SolveReport {
        solution,
        analysis,
        routes,
    })
}
