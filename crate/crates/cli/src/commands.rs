use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cms_core::analysis::ClassifyConfig;
use cms_core::generators::{
    gen_from_2csp, gen_from_multicolored_clique, gen_from_sat, gen_grid, gen_random, random_cnf, random_colored_graph,
    random_csp, RandomParams,
};
use cms_core::textio::{
    parse_colored_graph, parse_csp, parse_dimacs, parse_profile_with_warnings, parse_solution, serialize_colored_graph,
    serialize_csp, serialize_dimacs, serialize_profile, serialize_solution, ParseError,
};
use cms_core::{classify, dissatisfaction_by_voter, CmsError, Profile, SolveConfig};

use crate::{AnalyzeArgs, GenerateArgs, GenerateKind, ReportFormat, SolveArgs, VerifyArgs};

pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTRACTABLE: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Printed verbatim after the message, e.g. an analysis report.
    pub detail: Option<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
            detail: None,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: message.into(),
            detail: None,
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        Self::usage(format!("{}: {e}", path.display()))
    }

    fn from_cms(e: CmsError, profile: Option<&Profile>) -> Self {
        let (code, report) = match &e {
            CmsError::Intractable { report, .. } | CmsError::MethodNotApplicable { report, .. } => {
                (EXIT_INTRACTABLE, Some(report))
            }
            CmsError::BudgetExceeded { .. }
            | CmsError::NotGroupDichotomous(_)
            | CmsError::NotBinary(_)
            | CmsError::DeltaTooLarge(_) => (EXIT_INTRACTABLE, None),
            CmsError::InternalMismatch { .. }
            | CmsError::CrossValidationMismatch { .. }
            | CmsError::InvalidDecomposition(_)
            | CmsError::VoterOutOfRange { .. }
            | CmsError::IssueOutOfRange { .. } => (EXIT_INTERNAL, None),
            CmsError::InvalidProfile(_)
            | CmsError::InvalidOutcome(_)
            | CmsError::InvalidGeneratorInput(_)
            | CmsError::Parse(_) => (EXIT_USAGE, None),
        };
        let detail = report.zip(profile).map(|(r, p)| r.to_text(p));
        Self {
            code,
            message: e.to_string(),
            detail,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_profile(path: &Path) -> Result<Profile, Failure> {
    let (profile, warnings) = parse_profile_with_warnings(&read(path)?).map_err(|e| Failure::parse(path, e))?;
    for w in warnings {
        eprintln!("cms: warning: {}: {w}", path.display());
    }
    Ok(profile)
}

pub fn solve(args: SolveArgs) -> Result<u8, Failure> {
    let profile = load_profile(&args.profile)?;
    let config = SolveConfig {
        width_threshold: args.limits.width_threshold,
        brute_budget: args.limits.brute_budget,
        method: args.method,
        cross_validate: args.cross_validate,
        ..SolveConfig::default()
    };
    let report = cms_core::solve(&profile, &config).map_err(|e| Failure::from_cms(e, Some(&profile)))?;

    let mut text = String::new();
    for (i, (component, route)) in report.analysis.components.iter().zip(&report.routes).enumerate() {
        let names: Vec<&str> = component
            .issues
            .iter()
            .map(|j| profile.issues[j.index()].name.as_str())
            .collect();
        let _ = writeln!(text, "# component {}: {} route {route}", i + 1, names.join(" "));
    }
    let _ = writeln!(text, "# method {}", report.solution.method);
    text.push_str(&serialize_solution(&profile, &report.solution));

    let mut code = 0;
    if let Some(s) = args.max_dissat {
        let yes = report.solution.cost <= s;
        let _ = writeln!(
            text,
            "# decision {} (optimum {} {} {s})",
            if yes { "yes" } else { "no" },
            report.solution.cost,
            if yes { "<=" } else { ">" }
        );
        if !yes {
            code = EXIT_NO;
        }
    }
    write_output(args.out.as_deref(), &text)?;
    Ok(code)
}

pub fn analyze(args: AnalyzeArgs) -> Result<u8, Failure> {
    let profile = load_profile(&args.profile)?;
    let config = ClassifyConfig {
        width_threshold: args.limits.width_threshold,
        brute_budget: args.limits.brute_budget,
        ..ClassifyConfig::default()
    };
    let report = classify(&profile, &config);
    let text = match args.format {
        ReportFormat::Text => report.to_text(&profile),
        ReportFormat::Kv => report.to_key_values(),
    };
    print!("{text}");
    Ok(0)
}

fn save_source(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_output(Some(p), text),
        None => Ok(()),
    }
}

pub fn generate(args: GenerateArgs) -> Result<u8, Failure> {
    let seed = args.seed;
    let generated = match args.kind {
        GenerateKind::Random {
            issues,
            voters,
            max_domain,
            max_in_degree,
            density,
            dichotomous,
        } => gen_random(&RandomParams {
            issues,
            voters,
            max_domain,
            max_in_degree,
            density,
            group_dichotomous: dichotomous,
            seed,
        }),
        GenerateKind::Grid { rho } => gen_grid(rho),
        GenerateKind::Sat { cnf, issues, random } => {
            let formula = match &cnf {
                Some(path) => parse_dimacs(&read(path)?).map_err(|e| Failure::parse(path, e))?,
                None => {
                    let f = random_cnf(random.vars, random.clauses, 3, seed).map_err(|e| Failure::from_cms(e, None))?;
                    save_source(random.source_out.as_deref(), &serialize_dimacs(&f))?;
                    f
                }
            };
            gen_from_sat(&formula, issues)
        }
        GenerateKind::Clique { graph, random } => {
            let g = match &graph {
                Some(path) => parse_colored_graph(&read(path)?).map_err(|e| Failure::parse(path, e))?,
                None => {
                    let g = random_colored_graph(random.k, random.c, random.edge_prob, seed)
                        .map_err(|e| Failure::from_cms(e, None))?;
                    save_source(random.source_out.as_deref(), &serialize_colored_graph(&g))?;
                    g
                }
            };
            gen_from_multicolored_clique(&g)
        }
        GenerateKind::Csp { csp, random } => {
            let instance = match &csp {
                Some(path) => parse_csp(&read(path)?).map_err(|e| Failure::parse(path, e))?,
                None => {
                    let c = random_csp(
                        random.vars,
                        random.alphabet,
                        random.constraints,
                        random.allow_prob,
                        seed,
                    )
                    .map_err(|e| Failure::from_cms(e, None))?;
                    save_source(random.source_out.as_deref(), &serialize_csp(&c))?;
                    c
                }
            };
            gen_from_2csp(&instance)
        }
    };
    let profile = generated.map_err(|e| Failure::from_cms(e, None))?;
    write_output(args.out.as_deref(), &serialize_profile(&profile))?;
    Ok(0)
}

pub fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let profile = load_profile(&args.profile)?;
    let doc = parse_solution(&read(&args.solution)?).map_err(|e| Failure::parse(&args.solution, e))?;
    let outcome = doc.outcome(&profile).map_err(|e| Failure::parse(&args.solution, e))?;
    let actual = dissatisfaction_by_voter(&profile, &outcome).map_err(|e| Failure::from_cms(e, Some(&profile)))?;

    let mut claimed = vec![None; profile.num_voters()];
    for (line, name, d) in &doc.voters {
        let i =
            profile.voters.iter().position(|v| &v.name == name).ok_or_else(|| {
                Failure::parse(&args.solution, ParseError::new(*line, format!("unknown voter {name}")))
            })?;
        claimed[i] = Some(*d);
    }

    let mut consistent = true;
    for ((voter, &d), listed) in profile.voters.iter().zip(&actual).zip(&claimed) {
        match listed {
            Some(c) if *c != d as u64 => {
                consistent = false;
                println!("voter {} dissat {d} (document says {c})", voter.name);
            }
            _ => println!("voter {} dissat {d}", voter.name),
        }
    }
    let total: u64 = actual.iter().map(|&d| d as u64).sum();
    if total == doc.cost && consistent {
        println!("cost {total} confirmed");
        Ok(0)
    } else {
        println!("cost {total} (document says {})", doc.cost);
        eprintln!("cms: solution document is inconsistent with the profile");
        Ok(EXIT_NO)
    }
}
