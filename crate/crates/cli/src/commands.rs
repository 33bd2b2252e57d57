//! One entry point per subcommand.
//!
//! Each function loads its inputs, runs the library, and assembles a
//! [`Report`]. The binary decides the process exit code from the returned
//! [`CommandOutcome`]; everything here is side-effect free except for suite
//! failure dumps.

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;

use lisf_matroid::constructions::{
    decomposition_hypotheses, direction_vectors, disk_sample_family, disk_sample_regions,
    lisf_matroid_budgeted, plane_sample_family,
};
use lisf_matroid::matroid::{
    check_axioms, exhaustive_max_weight, greedy_max_weight, summarize, vector_matroid,
};
use lisf_matroid::setfamily::{SetFamily, VectorSetKind, DEFAULT_SELECTION_BUDGET};
use lisf_matroid::exactalg::{Field, Scalar};
use lisf_matroid::BigRational;

use crate::instance::InstanceFile;
use crate::report::{
    AxiomsDoc, Body, BuildMatroidReport, CheckLisfReport, ExampleReport, FamilyDoc, GreedyReport,
    OracleDoc, RegionCheckDoc, Report, SampledDoc, SummaryDoc, WitnessDoc,
};
use crate::suite::{self, SuiteKind, SuiteOptions};
use crate::CliError;

/// A finished command: its report, plus whether every check passed. The
/// flag is false only for suites with failing instances, which exit with
/// code 1 after printing the report.
pub struct CommandOutcome {
    pub report: Report,
    pub all_passed: bool,
}

impl CommandOutcome {
    fn passed(report: Report) -> CommandOutcome {
        CommandOutcome {
            report,
            all_passed: true,
        }
    }
}

/// Built-in example families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Three finite sets in rational disks of the plane.
    Ex2,
    /// Three finite sets on lines of a plane in Q^3 plus a vertical axis.
    Ex3,
}

impl ExampleName {
    fn as_str(self) -> &'static str {
        match self {
            ExampleName::Ex2 => "ex2",
            ExampleName::Ex3 => "ex3",
        }
    }
}

pub fn run_check_lisf(
    path: &Path,
    sampled: Option<u64>,
    seed: u64,
    budget: Option<u128>,
) -> Result<CommandOutcome, CliError> {
    let start = Instant::now();
    let doc = InstanceFile::load(path)?;
    let (family, _) = doc.to_family()?;
    let lisf = check_lisf_report(&family, budget, sampled.map(|trials| (trials, seed)))?;

    let mut command = format!("check-lisf {}", path.display());
    if let Some(trials) = sampled {
        command.push_str(&format!(" --sampled {trials} --seed {seed}"));
    }
    if let Some(b) = budget {
        command.push_str(&format!(" --budget {b}"));
    }
    Ok(CommandOutcome::passed(Report {
        command,
        body: Body::CheckLisf(lisf),
        elapsed: start.elapsed(),
    }))
}

/// Shared LISF verdict documentation, with the optional sampling oracle.
fn check_lisf_report(
    family: &SetFamily,
    budget: Option<u128>,
    sampled: Option<(u64, u64)>,
) -> Result<CheckLisfReport, CliError> {
    let verdict = family.is_lisf_budgeted(budget.unwrap_or(DEFAULT_SELECTION_BUDGET))?;
    let witness = verdict.witness().map(|w| WitnessDoc::checked(w, family));
    let sampled = match sampled {
        None => None,
        Some((trials, seed)) => {
            let outcome = family.is_lisf_sampled(trials, seed)?;
            Some(SampledDoc::new(trials, seed, &outcome, verdict.holds(), family))
        }
    };
    Ok(CheckLisfReport {
        field: family.field().to_string(),
        ambient_dim: family.ambient_dim(),
        set_count: family.len(),
        verdict: if verdict.holds() { "LISF" } else { "NOT LISF" }.to_string(),
        witness,
        sampled,
    })
}

pub fn run_build_matroid(
    path: &Path,
    verify_axioms: bool,
    summary: bool,
    oracle: bool,
    budget: Option<u128>,
) -> Result<CommandOutcome, CliError> {
    let start = Instant::now();
    let doc = InstanceFile::load(path)?;
    let (family, decomposition) = doc.to_family()?;
    let system = lisf_matroid_budgeted(&family, budget.unwrap_or(DEFAULT_SELECTION_BUDGET))?;

    let axioms = verify_axioms.then(|| AxiomsDoc::new(&check_axioms(&system)));
    let summary = if summary {
        Some(SummaryDoc::new(&summarize(&system)?))
    } else {
        None
    };
    let oracle = if oracle {
        // Fails with a hypothesis error (exit 4) unless every set is a
        // finite collinear set.
        let reference = vector_matroid(&direction_vectors(&family)?)?;
        Some(OracleDoc {
            equal: reference == system,
        })
    } else {
        None
    };
    let decomposition_hypotheses = decomposition
        .as_ref()
        .map(|dec| decomposition_hypotheses(&family, dec).to_string());

    let mut command = format!("build-matroid {}", path.display());
    for (flag, on) in [
        ("--verify-axioms", axioms.is_some()),
        ("--summary", summary.is_some()),
        ("--oracle", oracle.is_some()),
    ] {
        if on {
            command.push(' ');
            command.push_str(flag);
        }
    }
    if let Some(b) = budget {
        command.push_str(&format!(" --budget {b}"));
    }
    Ok(CommandOutcome::passed(Report {
        command,
        body: Body::BuildMatroid(BuildMatroidReport {
            family: FamilyDoc::new(&system),
            axioms,
            summary,
            oracle,
            decomposition_hypotheses,
        }),
        elapsed: start.elapsed(),
    }))
}

pub fn run_example(name: ExampleName) -> Result<CommandOutcome, CliError> {
    let start = Instant::now();
    let family = match name {
        ExampleName::Ex2 => disk_sample_family(),
        ExampleName::Ex3 => plane_sample_family(),
    };
    let instance = InstanceFile::from_family(&family, None);
    let lisf = check_lisf_report(&family, None, None)?;
    let system = lisf_matroid_budgeted(&family, DEFAULT_SELECTION_BUDGET)?;
    let axioms = AxiomsDoc::new(&check_axioms(&system));

    let region_checks = match name {
        ExampleName::Ex2 => Some(disk_checks(&family)?),
        ExampleName::Ex3 => None,
    };

    Ok(CommandOutcome::passed(Report {
        command: format!("example {}", name.as_str()),
        body: Body::Example(ExampleReport {
            name: name.as_str().to_string(),
            instance,
            lisf,
            family: FamilyDoc::new(&system),
            axioms,
            region_checks,
        }),
        elapsed: start.elapsed(),
    }))
}

/// Exact disk membership of every member of the disk sample family.
fn disk_checks(family: &SetFamily) -> Result<Vec<RegionCheckDoc>, CliError> {
    let regions = disk_sample_regions();
    let mut checks = Vec::new();
    for (i, (set, region)) in family.sets().iter().zip(&regions).enumerate() {
        let VectorSetKind::Finite(members) = set.kind() else {
            unreachable!("the disk sample family is finite");
        };
        let mut description = format!("center {}, radius^2 {}", region.center, region.radius_sq);
        if region.excludes_origin {
            description.push_str(", origin removed");
        }
        for m in members {
            checks.push(RegionCheckDoc {
                set: i + 1,
                member: m.to_string(),
                region: description.clone(),
                inside: region.contains(m)?,
            });
        }
    }
    Ok(checks)
}

pub fn run_random_suite(kind: SuiteKind, options: &SuiteOptions) -> Result<CommandOutcome, CliError> {
    let start = Instant::now();
    let params = suite::resolve(kind, options)?;
    let report = suite::run(&params)?;
    let all_passed = report.all_passed;

    let mut command = format!(
        "random-suite {} --seed {} --count {}",
        params.kind, params.seed, params.count
    );
    if let Some(d) = params.max_summand_dim {
        command.push_str(&format!(" --n {d}"));
    } else {
        command.push_str(&format!(" --n {}", params.max_sets));
    }
    command.push_str(&format!(" --l {}", params.max_ambient));
    if let Some(k) = params.max_summands {
        command.push_str(&format!(" --k {k}"));
    }
    if let Some(f) = params.field {
        command.push_str(&format!(" --field {f}"));
    }
    Ok(CommandOutcome {
        report: Report {
            command,
            body: Body::Suite(report),
            elapsed: start.elapsed(),
        },
        all_passed,
    })
}

pub fn run_greedy(path: &Path, weights_text: &str) -> Result<CommandOutcome, CliError> {
    let start = Instant::now();
    let weights = parse_weights(weights_text)?;
    let doc = InstanceFile::load(path)?;
    let (family, _) = doc.to_family()?;
    let system = lisf_matroid_budgeted(&family, DEFAULT_SELECTION_BUDGET)?;

    let (greedy_set, greedy_total) = greedy_max_weight(&system, &weights)?;
    let (best_set, best_total) = exhaustive_max_weight(&system, &weights)?;
    let agree = greedy_total == best_total;

    Ok(CommandOutcome::passed(Report {
        command: format!("greedy {} --weights {weights_text}", path.display()),
        body: Body::Greedy(GreedyReport {
            weights: weights.iter().map(ToString::to_string).collect(),
            greedy_set: greedy_set.elements(),
            greedy_total: greedy_total.to_string(),
            exhaustive_set: best_set.elements(),
            exhaustive_total: best_total.to_string(),
            agree,
        }),
        elapsed: start.elapsed(),
    }))
}

/// Comma separated rational weights, e.g. `3,5,3` or `1/2,0,7/3`.
fn parse_weights(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            let scalar = Scalar::parse(Field::Rationals, part.trim())
                .map_err(|e| CliError::Input(format!("--weights entry {}: {e}", i + 1)))?;
            Ok(scalar.as_rational().expect("rational scalar").clone())
        })
        .collect()
}
