//! Structural analysis of profiles and solver routing.

mod decomposition;
mod dichotomy;
mod graph;
mod nice;
mod vertex_cover;

use std::fmt::{self, Write as _};

use rayon::prelude::*;

pub use decomposition::{
    bounded_tree_decomposition, heuristic_tree_decomposition, verify_decomposition, DecompositionViolation,
    TreeDecomposition,
};
pub use dichotomy::{is_group_dichotomous, DichotomyReason, DichotomyViolation};
pub use graph::{build_global_graph, build_voter_graph, max_in_degree, UndirectedGraph, VoterDependencyGraph};
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};
pub use vertex_cover::vertex_cover_number;

pub(crate) use dichotomy::check_dichotomy;

use crate::model::{outcome_space, IssueId, Profile};

pub const DEFAULT_WIDTH_THRESHOLD: usize = 8;
pub const DEFAULT_BRUTE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_VC_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub width_threshold: usize,
    pub brute_budget: u64,
    /// Per-voter vertex cover numbers above this are reported as exceeding it.
    pub vc_bound: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            width_threshold: DEFAULT_WIDTH_THRESHOLD,
            brute_budget: DEFAULT_BRUTE_BUDGET,
            vc_bound: DEFAULT_VC_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Majority,
    MinCut,
    Treewidth,
    Brute,
    Intractable,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Majority => "MAJORITY",
            Route::MinCut => "MINCUT",
            Route::Treewidth => "TREEWIDTH",
            Route::Brute => "BRUTE",
            Route::Intractable => "INTRACTABLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Sorted issue ids of one connected component of the global graph.
    pub issues: Vec<IssueId>,
    pub num_edges: usize,
    pub all_binary: bool,
    pub group_dichotomous: bool,
    pub max_in_degree: usize,
    /// Min-fill width, or `None` when it exceeds the width threshold.
    pub heuristic_width: Option<usize>,
    pub outcome_space: u128,
    pub route: Route,
}

impl ComponentReport {
    pub fn is_isolated(&self) -> bool {
        self.issues.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub num_issues: usize,
    pub num_voters: usize,
    pub max_in_degree: usize,
    pub per_voter_vc: Vec<Option<usize>>,
    pub vc_bound: usize,
    pub all_binary: bool,
    /// `None` when the whole profile is group-dichotomous.
    pub dichotomy_witness: Option<DichotomyViolation>,
    pub num_edges: usize,
    pub width_threshold: usize,
    pub components: Vec<ComponentReport>,
}

impl AnalysisReport {
    pub fn group_dichotomous(&self) -> bool {
        self.dichotomy_witness.is_none()
    }

    /// Largest heuristic width over non-isolated components; `Err(t)` if
    /// some component exceeded the threshold `t`.
    pub fn heuristic_width(&self) -> Result<usize, usize> {
        let mut w = 0;
        for c in &self.components {
            match c.heuristic_width {
                Some(x) => w = w.max(x),
                None => return Err(self.width_threshold),
            }
        }
        Ok(w)
    }

    pub fn is_tractable(&self) -> bool {
        self.components.iter().all(|c| c.route != Route::Intractable)
    }

    /// Machine-readable `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "issues={}", self.num_issues);
        let _ = writeln!(s, "voters={}", self.num_voters);
        let _ = writeln!(s, "delta={}", self.max_in_degree);
        let _ = writeln!(s, "all_binary={}", self.all_binary);
        let _ = writeln!(s, "group_dichotomous={}", self.group_dichotomous());
        if let Some(w) = &self.dichotomy_witness {
            let _ = writeln!(s, "group_dichotomous_witness={w}");
        }
        let _ = writeln!(s, "global_edges={}", self.num_edges);
        let _ = writeln!(s, "components={}", self.components.len());
        let _ = writeln!(
            s,
            "heuristic_width={}",
            width_str(self.heuristic_width().ok(), self.width_threshold)
        );
        let vcs: Vec<String> = self.per_voter_vc.iter().map(|v| vc_str(*v, self.vc_bound)).collect();
        let _ = writeln!(s, "voter_vertex_cover={}", vcs.join(","));
        let _ = writeln!(s, "tractable={}", self.is_tractable());
        for (i, c) in self.components.iter().enumerate() {
            let ids: Vec<String> = c.issues.iter().map(|j| j.index().to_string()).collect();
            let _ = writeln!(s, "component.{i}.issues={}", ids.join(","));
            let _ = writeln!(s, "component.{i}.edges={}", c.num_edges);
            let _ = writeln!(s, "component.{i}.all_binary={}", c.all_binary);
            let _ = writeln!(s, "component.{i}.group_dichotomous={}", c.group_dichotomous);
            let _ = writeln!(s, "component.{i}.delta={}", c.max_in_degree);
            let _ = writeln!(
                s,
                "component.{i}.heuristic_width={}",
                width_str(c.heuristic_width, self.width_threshold)
            );
            let _ = writeln!(s, "component.{i}.outcome_space={}", c.outcome_space);
            let _ = writeln!(s, "component.{i}.route={}", c.route);
        }
        s
    }

    /// Human-readable report; issue names are taken from `profile`.
    pub fn to_text(&self, profile: &Profile) -> String {
        let mut s = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "issues:             {}", self.num_issues);
        let _ = writeln!(s, "voters:             {}", self.num_voters);
        let _ = writeln!(s, "max in-degree:      {}", self.max_in_degree);
        let _ = writeln!(s, "all binary:         {}", yes(self.all_binary));
        match &self.dichotomy_witness {
            None => {
                let _ = writeln!(s, "group-dichotomous:  yes");
            }
            Some(w) => {
                let _ = writeln!(s, "group-dichotomous:  no ({w})");
            }
        }
        let _ = writeln!(s, "global edges:       {}", self.num_edges);
        let _ = writeln!(s, "components:         {}", self.components.len());
        let _ = writeln!(
            s,
            "heuristic width:    {}",
            width_str(self.heuristic_width().ok(), self.width_threshold)
        );
        let _ = writeln!(s, "voter vertex cover:");
        for (voter, vc) in profile.voters.iter().zip(&self.per_voter_vc) {
            let _ = writeln!(s, "  {}: {}", voter.name, vc_str(*vc, self.vc_bound));
        }
        for (i, c) in self.components.iter().enumerate() {
            let names: Vec<&str> = c
                .issues
                .iter()
                .map(|j| profile.issues[j.index()].name.as_str())
                .collect();
            let _ = writeln!(s, "component {}: {}", i + 1, names.join(" "));
            let _ = writeln!(
                s,
                "  edges {}, binary {}, group-dichotomous {}, max in-degree {}, width {}, outcomes {}",
                c.num_edges,
                yes(c.all_binary),
                yes(c.group_dichotomous),
                c.max_in_degree,
                width_str(c.heuristic_width, self.width_threshold),
                c.outcome_space
            );
            let _ = writeln!(s, "  route: {}", c.route);
        }
        s
    }
}

fn width_str(w: Option<usize>, threshold: usize) -> String {
    w.map_or_else(|| format!(">{threshold}"), |w| w.to_string())
}

fn vc_str(vc: Option<usize>, bound: usize) -> String {
    vc.map_or_else(|| format!(">{bound}"), |v| v.to_string())
}

/// Per-component structural summary and solver recommendation.
///
/// Routing, in order: isolated issue ⇒ MAJORITY; binary and
/// group-dichotomous ⇒ MINCUT; in-degree ≤ 1 with heuristic width within
/// the threshold ⇒ TREEWIDTH; outcome space within the brute budget ⇒
/// BRUTE; otherwise INTRACTABLE.
pub fn classify(profile: &Profile, config: &ClassifyConfig) -> AnalysisReport {
    let global = build_global_graph(profile);
    let per_voter_vc = (0..profile.num_voters())
        .into_par_iter()
        .map(|v| vertex_cover_number(&build_voter_graph(profile, v).underlying(), config.vc_bound))
        .collect();

    let mut scope_max = vec![0usize; profile.num_issues()];
    for voter in &profile.voters {
        for (j, ib) in voter.ballot.entries() {
            scope_max[j.index()] = scope_max[j.index()].max(ib.scope().len());
        }
    }

    let components = global
        .components()
        .into_par_iter()
        .map(|vertices| component_report(profile, &global, vertices, &scope_max, config))
        .collect();

    AnalysisReport {
        num_issues: profile.num_issues(),
        num_voters: profile.num_voters(),
        max_in_degree: scope_max.iter().copied().max().unwrap_or(0),
        per_voter_vc,
        vc_bound: config.vc_bound,
        all_binary: profile.is_all_binary(),
        dichotomy_witness: is_group_dichotomous(profile).err(),
        num_edges: global.num_edges(),
        width_threshold: config.width_threshold,
        components,
    }
}

fn component_report(
    profile: &Profile,
    global: &UndirectedGraph,
    vertices: Vec<usize>,
    scope_max: &[usize],
    config: &ClassifyConfig,
) -> ComponentReport {
    let sub = global.induced(&vertices);
    let issues: Vec<IssueId> = vertices.iter().copied().map(IssueId).collect();
    let all_binary = issues.iter().all(|&j| profile.domain_size(j) == 2);
    let group_dichotomous = check_dichotomy(profile, |j| vertices.binary_search(&j.index()).is_ok()).is_ok();
    let delta = vertices.iter().map(|&j| scope_max[j]).max().unwrap_or(0);
    let heuristic_width = bounded_tree_decomposition(&sub, config.width_threshold).map(|td| td.width());
    let space = outcome_space(issues.iter().map(|&j| profile.domain_size(j)));

    let route = if sub.num_edges() == 0 && issues.len() == 1 {
        Route::Majority
    } else if all_binary && group_dichotomous {
        Route::MinCut
    } else if delta <= 1 && heuristic_width.is_some() {
        Route::Treewidth
    } else if space <= config.brute_budget as u128 {
        Route::Brute
    } else {
        Route::Intractable
    };

    ComponentReport {
        issues,
        num_edges: sub.num_edges(),
        all_binary,
        group_dichotomous,
        max_in_degree: delta,
        heuristic_width,
        outcome_space: space,
        route,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::p1;
    use crate::model::{Ballot, Issue, IssueBallot, Voter};

    #[test]
    fn p1_routes_to_mincut() {
        let r = classify(&p1(), &ClassifyConfig::default());
        assert_eq!(r.max_in_degree, 1);
        assert!(r.group_dichotomous());
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].route, Route::MinCut);
        assert_eq!(r.per_voter_vc, vec![Some(1), Some(0)]);
    }

    #[test]
    fn isolated_non_binary_issue_routes_to_majority() {
        let p = Profile::new(
            vec![Issue::new("X", ["a", "b", "c"])],
            vec![Voter::new(
                "v",
                Ballot::new().with(IssueId(0), IssueBallot::unconditional([2])),
            )],
        )
        .unwrap();
        let r = classify(&p, &ClassifyConfig::default());
        assert_eq!(r.components[0].route, Route::Majority);
    }

    #[test]
    fn non_dichotomous_delta_one_routes_to_treewidth() {
        let p = Profile::new(
            vec![Issue::new("A", ["a", "b", "c"]), Issue::binary("B")],
            vec![Voter::new(
                "v",
                Ballot::new().with(
                    IssueId(1),
                    IssueBallot::conditional([IssueId(0)]).with_statement(vec![2], [1]),
                ),
            )],
        )
        .unwrap();
        let r = classify(&p, &ClassifyConfig::default());
        assert_eq!(r.components[0].route, Route::Treewidth);
        assert_eq!(r.components[0].heuristic_width, Some(1));
    }

    #[test]
    fn budget_and_intractable() {
        // Two premises on one issue over domains of size 3: Δ = 2.
        let ib = IssueBallot::conditional([IssueId(0), IssueId(1)]).with_statement(vec![2, 1], [0]);
        let p = Profile::new(
            vec![
                Issue::new("A", ["a", "b", "c"]),
                Issue::new("B", ["a", "b", "c"]),
                Issue::new("C", ["a", "b", "c"]),
            ],
            vec![Voter::new("v", Ballot::new().with(IssueId(2), ib))],
        )
        .unwrap();
        let cfg = ClassifyConfig::default();
        assert_eq!(classify(&p, &cfg).components[0].route, Route::Brute);
        let tight = ClassifyConfig {
            brute_budget: 26,
            ..cfg
        };
        let r = classify(&p, &tight);
        assert_eq!(r.components[0].route, Route::Intractable);
        assert!(!r.is_tractable());
    }

    #[test]
    fn reports_render() {
        let p = p1();
        let r = classify(&p, &ClassifyConfig::default());
        let kv = r.to_key_values();
        assert!(kv.contains("delta=1\n"));
        assert!(kv.contains("group_dichotomous=true\n"));
        assert!(kv.contains("component.0.route=MINCUT\n"));
        let text = r.to_text(&p);
        assert!(text.contains("route: MINCUT"));
        assert!(text.contains("  v1: 1"));
    }
}
