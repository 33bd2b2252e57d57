//! Structured command reports.
//!
//! Every subcommand produces a [`Report`]: a normalized command echo plus a
//! body specific to the subcommand. The same value drives both outputs:
//!
//! * [`Report::render_text`] — the human readable stdout text, containing
//!   the stable verdict fragments (`LISF`, `NOT LISF`, `MATROID: yes`,
//!   `I.3 VIOLATED witness (...)`, `ORACLE: EQUAL`, `AGREE`, ...).
//! * [`Report::to_json`] — the machine readable report. Wall clock timing is
//!   kept out of the serialization, so identical commands with identical
//!   seeds produce byte-identical report files.
//!
//! Family listings are sorted lexicographically by label list, and every
//! dependence witness is re-verified against its family before it is turned
//! into a report.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use lisf_matroid::matroid::{AxiomReport, IndependenceFamily, MatroidSummary, Subset};
use lisf_matroid::setfamily::{DependenceWitness, SampledVerdict, SetFamily};

use crate::instance::InstanceFile;
use crate::suite::SuiteReport;

/// One finished command.
#[derive(Debug, Serialize)]
pub struct Report {
    /// Normalized echo of the subcommand and its parameters.
    pub command: String,
    #[serde(flatten)]
    pub body: Body,
    /// Wall clock duration. Excluded from the serialized report so report
    /// files are byte-deterministic; only suite text output mentions it.
    #[serde(skip)]
    pub elapsed: Duration,
}

// One report is built per invocation; variant size imbalance is harmless.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    CheckLisf(CheckLisfReport),
    BuildMatroid(BuildMatroidReport),
    Example(ExampleReport),
    Suite(SuiteReport),
    Greedy(GreedyReport),
}

/// Outcome of the LISF decision, with the optional sampling cross-check.
#[derive(Debug, Serialize)]
pub struct CheckLisfReport {
    pub field: String,
    pub ambient_dim: usize,
    pub set_count: usize,
    /// `"LISF"` or `"NOT LISF"`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledDoc>,
}

/// A dependent selection, re-verified before construction.
#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub selection: Vec<Vec<String>>,
    pub coefficients: Vec<String>,
    /// Rendering of the vanishing combination, e.g.
    /// `(1)*(1, 1) + (-2)*(1/2, 1/2) = 0`.
    pub combination: String,
}

impl WitnessDoc {
    /// Documents `witness`, first re-checking it against `family`. A witness
    /// that fails its own verification is a library bug, not an input
    /// problem, so that case panics instead of returning an error.
    pub fn checked(witness: &DependenceWitness, family: &SetFamily) -> WitnessDoc {
        let ok = witness
            .verify(family)
            .expect("witness verification is defined for its own family");
        assert!(ok, "dependence witness failed re-verification");
        WitnessDoc {
            selection: witness
                .selection
                .iter()
                .map(|v| v.coords().iter().map(ToString::to_string).collect())
                .collect(),
            coefficients: witness.coefficients.iter().map(ToString::to_string).collect(),
            combination: witness.to_string(),
        }
    }
}

/// Result of the randomized dependence search next to the exact verdict.
#[derive(Debug, Serialize)]
pub struct SampledDoc {
    pub trials: u64,
    pub seed: u64,
    /// `"dependence found"`, `"no dependence found"`, or
    /// `"no dependence found (exhaustive)"`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    /// `"AGREE"` unless the sample contradicts the exact verdict: a verified
    /// dependence against `LISF`, or an exhaustive clean sweep against
    /// `NOT LISF`. A non-exhaustive clean sweep never contradicts anything.
    pub agreement: String,
}

impl SampledDoc {
    pub fn new(
        trials: u64,
        seed: u64,
        verdict: &SampledVerdict,
        exact_holds: bool,
        family: &SetFamily,
    ) -> SampledDoc {
        let (outcome, witness, disagree) = match verdict {
            SampledVerdict::Dependent(w) => (
                "dependence found".to_string(),
                Some(WitnessDoc::checked(w, family)),
                exact_holds,
            ),
            SampledVerdict::NoDependenceFound { exhaustive: true } => (
                "no dependence found (exhaustive)".to_string(),
                None,
                !exact_holds,
            ),
            SampledVerdict::NoDependenceFound { exhaustive: false } => {
                ("no dependence found".to_string(), None, false)
            }
        };
        SampledDoc {
            trials,
            seed,
            outcome,
            witness,
            agreement: if disagree { "DISAGREE" } else { "AGREE" }.to_string(),
        }
    }
}

/// A listed independence system: members as sorted label lists.
#[derive(Debug, Serialize)]
pub struct FamilyDoc {
    pub ground: usize,
    pub members: Vec<Vec<usize>>,
    /// E.g. `{∅,{1},{1,3},{2},{3}}`.
    pub rendered: String,
}

impl FamilyDoc {
    pub fn new(system: &IndependenceFamily) -> FamilyDoc {
        FamilyDoc {
            ground: system.n(),
            members: system.members().iter().map(Subset::elements).collect(),
            rendered: render_subsets(system.members().iter()),
        }
    }
}

/// Axiom check outcome with rendered witness pairs.
#[derive(Debug, Serialize)]
pub struct AxiomsDoc {
    pub i1_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i2_violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i3_violation: Option<String>,
    pub matroid: bool,
}

impl AxiomsDoc {
    pub fn new(report: &AxiomReport) -> AxiomsDoc {
        AxiomsDoc {
            i1_holds: report.i1_holds,
            i2_violation: report.i2_violation.map(|(a, b)| format!("({a},{b})")),
            i3_violation: report.i3_violation.map(|(a, b)| format!("({a},{b})")),
            matroid: report.is_matroid(),
        }
    }

    fn render(&self, out: &mut String) {
        if self.i1_holds {
            out.push_str("I.1 ok\n");
        } else {
            out.push_str("I.1 VIOLATED (the empty set is not a member)\n");
        }
        match &self.i2_violation {
            None => out.push_str("I.2 ok\n"),
            Some(w) => {
                let _ = writeln!(out, "I.2 VIOLATED witness {w}");
            }
        }
        match &self.i3_violation {
            None => out.push_str("I.3 ok\n"),
            Some(w) => {
                let _ = writeln!(out, "I.3 VIOLATED witness {w}");
            }
        }
        let _ = writeln!(out, "MATROID: {}", if self.matroid { "yes" } else { "no" });
    }
}

/// Rank, bases and circuits of a downward closed system.
#[derive(Debug, Serialize)]
pub struct SummaryDoc {
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
    pub circuits: Vec<Vec<usize>>,
}

impl SummaryDoc {
    pub fn new(summary: &MatroidSummary) -> SummaryDoc {
        SummaryDoc {
            rank: summary.rank,
            bases: summary.bases.iter().map(Subset::elements).collect(),
            circuits: summary.circuits.iter().map(Subset::elements).collect(),
        }
    }
}

/// Agreement with the direction-vector linear matroid.
#[derive(Debug, Serialize)]
pub struct OracleDoc {
    pub equal: bool,
}

#[derive(Debug, Serialize)]
pub struct BuildMatroidReport {
    pub family: FamilyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<SummaryDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    /// Hypothesis check of a decomposition shipped with the instance,
    /// informational only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition_hypotheses: Option<String>,
}

/// One exact region membership check of a built-in sample family.
#[derive(Debug, Serialize)]
pub struct RegionCheckDoc {
    pub set: usize,
    pub member: String,
    pub region: String,
    pub inside: bool,
}

#[derive(Debug, Serialize)]
pub struct ExampleReport {
    pub name: String,
    /// The family as an instance document, ready to be saved and replayed.
    pub instance: InstanceFile,
    pub lisf: CheckLisfReport,
    pub family: FamilyDoc,
    pub axioms: AxiomsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region_checks: Option<Vec<RegionCheckDoc>>,
}

#[derive(Debug, Serialize)]
pub struct GreedyReport {
    pub weights: Vec<String>,
    pub greedy_set: Vec<usize>,
    pub greedy_total: String,
    pub exhaustive_set: Vec<usize>,
    pub exhaustive_total: String,
    /// Totals compared, not subsets: ties may be broken differently.
    pub agree: bool,
}

impl Report {
    /// The machine readable report, pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// The stdout text. Deterministic for a fixed command and seed; the
    /// elapsed time appears only in suite output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        match &self.body {
            Body::CheckLisf(c) => render_check_lisf(c, &mut out),
            Body::BuildMatroid(b) => render_build_matroid(b, &mut out),
            Body::Example(e) => render_example(e, &mut out),
            Body::Suite(s) => {
                s.render(&mut out);
                let _ = writeln!(out, "elapsed: {:.1}s", self.elapsed.as_secs_f64());
            }
            Body::Greedy(g) => render_greedy(g, &mut out),
        }
        out
    }
}

fn render_check_lisf(c: &CheckLisfReport, out: &mut String) {
    let _ = writeln!(
        out,
        "family: {} sets over {}, ambient dimension {}",
        c.set_count, c.field, c.ambient_dim
    );
    let _ = writeln!(out, "verdict: {}", c.verdict);
    if let Some(w) = &c.witness {
        let _ = writeln!(out, "witness: {}", w.combination);
    }
    if let Some(s) = &c.sampled {
        let _ = writeln!(out, "sampled: {} trials, seed {}: {}", s.trials, s.seed, s.outcome);
        if let Some(w) = &s.witness {
            let _ = writeln!(out, "sampled witness: {}", w.combination);
        }
        let _ = writeln!(out, "agreement: {}", s.agreement);
    }
}

fn render_build_matroid(b: &BuildMatroidReport, out: &mut String) {
    let _ = writeln!(
        out,
        "members ({}): {}",
        b.family.members.len(),
        b.family.rendered
    );
    if let Some(a) = &b.axioms {
        a.render(out);
    }
    if let Some(s) = &b.summary {
        let _ = writeln!(out, "rank: {}", s.rank);
        let _ = writeln!(out, "bases: {}", render_label_lists(&s.bases));
        let _ = writeln!(out, "circuits: {}", render_label_lists(&s.circuits));
    }
    if let Some(o) = &b.oracle {
        let _ = writeln!(out, "ORACLE: {}", if o.equal { "EQUAL" } else { "UNEQUAL" });
    }
    if let Some(h) = &b.decomposition_hypotheses {
        let _ = writeln!(out, "decomposition: {h}");
    }
}

fn render_example(e: &ExampleReport, out: &mut String) {
    let _ = writeln!(out, "example {}", e.name);
    out.push_str("instance file:\n");
    out.push_str(&e.instance.to_json());
    render_check_lisf(&e.lisf, out);
    let _ = writeln!(
        out,
        "members ({}): {}",
        e.family.members.len(),
        e.family.rendered
    );
    e.axioms.render(out);
    if let Some(checks) = &e.region_checks {
        for c in checks {
            let _ = writeln!(
                out,
                "set {} region [{}]: {} {}",
                c.set,
                c.region,
                c.member,
                if c.inside { "inside" } else { "OUTSIDE" }
            );
        }
    }
}

fn render_greedy(g: &GreedyReport, out: &mut String) {
    let _ = writeln!(out, "weights: {}", g.weights.join(", "));
    let _ = writeln!(
        out,
        "GREEDY: {} total {}",
        render_labels(&g.greedy_set),
        g.greedy_total
    );
    let _ = writeln!(
        out,
        "EXHAUSTIVE: {} total {}",
        render_labels(&g.exhaustive_set),
        g.exhaustive_total
    );
    let _ = writeln!(out, "{}", if g.agree { "AGREE" } else { "DISAGREE" });
}

/// `{∅,{1},{1,3}}` for an iterator of subsets.
pub fn render_subsets<'a>(subsets: impl Iterator<Item = &'a Subset>) -> String {
    let mut out = String::from("{");
    for (i, s) in subsets.enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{s}");
    }
    out.push('}');
    out
}

fn render_labels(labels: &[usize]) -> String {
    let subset = Subset::from_elements(labels).expect("labels fit the ground cap");
    subset.to_string()
}

fn render_label_lists(lists: &[Vec<usize>]) -> String {
    let mut out = String::from("{");
    for (i, l) in lists.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&render_labels(l));
    }
    out.push('}');
    out
}
