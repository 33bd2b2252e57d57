//! Randomized verification suites.
//!
//! Each suite generates a stream of reproducible random instances from a
//! base seed and runs a fixed list of checks on every instance:
//!
//! * `t3` — families of collinear finite sets. The derived system must be a
//!   matroid and must equal the linear matroid of the per-set direction
//!   vectors; on matroids the greedy optimizer must match the exhaustive
//!   one.
//! * `t4` — punctured subspaces of the summands of a rational direct sum
//!   with the dimension bounds that force the matroid property.
//! * `corollaries` — mixed families, including ones meeting no special
//!   hypotheses, whose derived system must be exactly invariant under
//!   member scaling, ambient isomorphisms, and symmetrization.
//!
//! Instance `i` is generated from `derive_seed(base, i)`, so any failure can
//! be replayed alone. Failing instances are additionally dumped as instance
//! files.

use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use lisf_matroid::constructions::{
    decomposition_hypotheses, derive_seed, direction_vectors, lisf_matroid,
    random_decomposition_instance, random_line_instance, DirectSumDecomposition,
};
use lisf_matroid::exactalg::{Field, Matrix, Scalar, Subspace, Vector};
use lisf_matroid::matroid::{
    check_axioms, exhaustive_max_weight, greedy_max_weight, vector_matroid, IndependenceFamily,
};
use lisf_matroid::setfamily::{SetFamily, VectorSet};
use lisf_matroid::{BigInt, BigRational};

use crate::instance::InstanceFile;
use crate::CliError;

/// Loop probability used by the line-shaped suite.
const T3_LOOP_PROBABILITY: f64 = 0.1;

/// Nonzero member multiples per line-shaped set.
const T3_MAX_SAMPLES: usize = 3;

/// Weight vectors tried per instance by the greedy check.
const GREEDY_TRIALS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteKind {
    T3,
    T4,
    Corollaries,
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteKind::T3 => write!(f, "t3"),
            SuiteKind::T4 => write!(f, "t4"),
            SuiteKind::Corollaries => write!(f, "corollaries"),
        }
    }
}

/// Raw command line values, before per-kind defaulting.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub count: Option<usize>,
    /// Size bound named after the construction parameter: maximum number of
    /// sets for `t3` and `corollaries`, maximum summand dimension for `t4`.
    pub n: Option<usize>,
    /// Maximum ambient dimension.
    pub l: Option<usize>,
    /// Maximum summand count (`t4` only).
    pub k: Option<usize>,
    pub field: Option<String>,
    pub dump_dir: PathBuf,
}

impl Default for SuiteOptions {
    fn default() -> SuiteOptions {
        SuiteOptions {
            seed: 42,
            count: None,
            n: None,
            l: None,
            k: None,
            field: None,
            dump_dir: PathBuf::from("."),
        }
    }
}

/// Resolved, validated suite parameters.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub kind: SuiteKind,
    pub seed: u64,
    pub count: usize,
    pub max_sets: usize,
    pub max_ambient: usize,
    /// `t4` only.
    pub max_summands: Option<usize>,
    /// `t4` only.
    pub max_summand_dim: Option<usize>,
    /// Fixed field; `None` cycles the per-kind field list.
    pub field: Option<Field>,
    pub dump_dir: PathBuf,
}

/// Applies per-kind defaults and validates the bounds.
pub fn resolve(kind: SuiteKind, options: &SuiteOptions) -> Result<SuiteParams, CliError> {
    let field = options
        .field
        .as_deref()
        .map(str::parse::<Field>)
        .transpose()
        .map_err(|e| CliError::Input(format!("--field: {e}")))?;

    let params = match kind {
        SuiteKind::T3 => {
            reject_flag(options.k, "--k", "t4")?;
            let max_sets = options.n.unwrap_or(8);
            let max_ambient = options.l.unwrap_or(6);
            check_range("--n", max_sets, 1, 12)?;
            check_range("--l", max_ambient, 1, 16)?;
            SuiteParams {
                kind,
                seed: options.seed,
                count: options.count.unwrap_or(1000),
                max_sets,
                max_ambient,
                max_summands: None,
                max_summand_dim: None,
                field,
                dump_dir: options.dump_dir.clone(),
            }
        }
        SuiteKind::T4 => {
            let max_summand_dim = options.n.unwrap_or(4);
            if max_summand_dim < 2 {
                return Err(CliError::Input(format!(
                    "--n: summand dimension bound {max_summand_dim} leaves the admissible \
                     set dimension range [ceil(n/2)+1, n] empty; need n >= 2"
                )));
            }
            check_range("--n", max_summand_dim, 2, 6)?;
            let max_summands = options.k.unwrap_or(4);
            check_range("--k", max_summands, 1, 6)?;
            let max_ambient = options.l.unwrap_or(12);
            check_range("--l", max_ambient, max_summand_dim, 16)?;
            if let Some(f) = field {
                if !f.is_rationals() {
                    return Err(CliError::Input(format!(
                        "--field: the direct sum construction needs characteristic zero, \
                         so t4 runs over Q, not {f}"
                    )));
                }
            }
            SuiteParams {
                kind,
                seed: options.seed,
                count: options.count.unwrap_or(300),
                max_sets: 8,
                max_ambient,
                max_summands: Some(max_summands),
                max_summand_dim: Some(max_summand_dim),
                field: Some(Field::Rationals),
                dump_dir: options.dump_dir.clone(),
            }
        }
        SuiteKind::Corollaries => {
            reject_flag(options.k, "--k", "t4")?;
            let max_sets = options.n.unwrap_or(4);
            let max_ambient = options.l.unwrap_or(4);
            check_range("--n", max_sets, 1, 8)?;
            check_range("--l", max_ambient, 1, 8)?;
            SuiteParams {
                kind,
                seed: options.seed,
                count: options.count.unwrap_or(500),
                max_sets,
                max_ambient,
                max_summands: None,
                max_summand_dim: None,
                field,
                dump_dir: options.dump_dir.clone(),
            }
        }
    };
    if params.count == 0 {
        return Err(CliError::Input("--count must be positive".into()));
    }
    Ok(params)
}

fn reject_flag(value: Option<usize>, flag: &str, kind: &str) -> Result<(), CliError> {
    match value {
        Some(_) => Err(CliError::Input(format!("{flag} only applies to {kind}"))),
        None => Ok(()),
    }
}

fn check_range(flag: &str, value: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    if value < lo || value > hi {
        return Err(CliError::Input(format!(
            "{flag}: {value} is outside the supported range {lo}..={hi}"
        )));
    }
    Ok(())
}

/// Pass counts of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckTally {
    pub label: String,
    pub passed: usize,
    pub applicable: usize,
}

impl CheckTally {
    fn new(label: &str) -> CheckTally {
        CheckTally {
            label: label.to_string(),
            passed: 0,
            applicable: 0,
        }
    }

    fn record(&mut self, pass: bool) {
        self.applicable += 1;
        if pass {
            self.passed += 1;
        }
    }

    pub fn clean(&self) -> bool {
        self.passed == self.applicable
    }
}

/// One failing instance with its replay information.
#[derive(Debug, Clone, Serialize)]
pub struct FailureDoc {
    /// 0-based instance index; the instance seed is `derive_seed(base, index)`.
    pub index: usize,
    pub check: String,
    pub detail: String,
    /// Path of the dumped instance file, or a note when the dump failed.
    pub dump: String,
}

/// Aggregated suite outcome, ordered by instance index.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub kind: String,
    pub seed: u64,
    pub count: usize,
    pub max_sets: usize,
    pub max_ambient: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_summands: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_summand_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_probability: Option<f64>,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<FailureDoc>,
    pub all_passed: bool,
}

impl SuiteReport {
    pub fn check(&self, label: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.label == label)
    }

    pub fn render(&self, out: &mut String) {
        use std::fmt::Write as _;
        let _ = writeln!(out, "random-suite {}: seed {}, {} instances", self.kind, self.seed, self.count);
        let counts = self
            .checks
            .iter()
            .map(|c| format!("{}/{} {}", c.passed, c.applicable, c.label))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "{counts}");
        for f in &self.failures {
            let _ = writeln!(
                out,
                "FAILURE instance {}: {}: {} [{}]",
                f.index, f.check, f.detail, f.dump
            );
        }
        if self.all_passed {
            let _ = writeln!(out, "all checks passed");
        } else {
            let _ = writeln!(out, "{} instances failed", self.failures.len());
        }
    }
}

/// Runs the suite described by `params`.
pub fn run(params: &SuiteParams) -> Result<SuiteReport, CliError> {
    let mut runner = Runner {
        params,
        failures: Vec::new(),
    };
    let checks = match params.kind {
        SuiteKind::T3 => runner.run_t3()?,
        SuiteKind::T4 => runner.run_t4()?,
        SuiteKind::Corollaries => runner.run_corollaries()?,
    };
    let all_passed = checks.iter().all(CheckTally::clean);
    Ok(SuiteReport {
        kind: params.kind.to_string(),
        seed: params.seed,
        count: params.count,
        max_sets: params.max_sets,
        max_ambient: params.max_ambient,
        max_summands: params.max_summands,
        max_summand_dim: params.max_summand_dim,
        field: params.field.map(|f| f.to_string()),
        loop_probability: matches!(params.kind, SuiteKind::T3).then_some(T3_LOOP_PROBABILITY),
        checks,
        failures: runner.failures,
        all_passed,
    })
}

struct Runner<'a> {
    params: &'a SuiteParams,
    failures: Vec<FailureDoc>,
}

impl Runner<'_> {
    fn fail(
        &mut self,
        index: usize,
        check: &str,
        detail: String,
        family: &SetFamily,
        decomposition: Option<&DirectSumDecomposition>,
    ) {
        let dump = self.dump_instance(index, family, decomposition);
        self.failures.push(FailureDoc {
            index,
            check: check.to_string(),
            detail,
            dump,
        });
    }

    fn dump_instance(
        &self,
        index: usize,
        family: &SetFamily,
        decomposition: Option<&DirectSumDecomposition>,
    ) -> String {
        let path = self
            .params
            .dump_dir
            .join(format!("{}-failure-{index}.json", self.params.kind));
        let doc = InstanceFile::from_family(family, decomposition);
        let write = std::fs::create_dir_all(&self.params.dump_dir)
            .and_then(|()| std::fs::write(&path, doc.to_json()));
        match write {
            Ok(()) => format!("dumped to {}", path.display()),
            Err(e) => format!("dump to {} failed: {e}", path.display()),
        }
    }

    /// Greedy vs exhaustive on `GREEDY_TRIALS` random nonnegative integer
    /// weight vectors, compared by total weight: subsets may differ on ties.
    fn greedy_matches(
        &mut self,
        index: usize,
        inst_seed: u64,
        system: &IndependenceFamily,
        family: &SetFamily,
        decomposition: Option<&DirectSumDecomposition>,
    ) -> Result<bool, CliError> {
        for t in 0..GREEDY_TRIALS {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(inst_seed, 3 + t));
            let weights: Vec<BigRational> = (0..system.n())
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(0..=9))))
                .collect();
            let (_, greedy_total) = greedy_max_weight(system, &weights)?;
            let (_, best_total) = exhaustive_max_weight(system, &weights)?;
            if greedy_total != best_total {
                let ws = weights.iter().map(ToString::to_string).collect::<Vec<_>>();
                self.fail(
                    index,
                    "greedy-optimal",
                    format!(
                        "greedy total {greedy_total} < exhaustive {best_total} at weights ({})",
                        ws.join(", ")
                    ),
                    family,
                    decomposition,
                );
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn run_t3(&mut self) -> Result<Vec<CheckTally>, CliError> {
        let p = self.params;
        let fields = t3_fields();
        let mut matroid = CheckTally::new("matroid");
        let mut oracle = CheckTally::new("oracle-equal");
        let mut hereditary = CheckTally::new("hereditary");
        let mut greedy = CheckTally::new("greedy-optimal");

        for i in 0..p.count {
            let inst_seed = derive_seed(p.seed, i as u64);
            let mut shape = ChaCha8Rng::seed_from_u64(derive_seed(inst_seed, 0));
            let set_count = shape.gen_range(1..=p.max_sets);
            let ambient = shape.gen_range(1..=p.max_ambient);
            let field = p.field.unwrap_or(fields[i % fields.len()]);
            let family = random_line_instance(
                derive_seed(inst_seed, 1),
                set_count,
                ambient,
                field,
                T3_MAX_SAMPLES,
                T3_LOOP_PROBABILITY,
            )?;
            let system = lisf_matroid(&family)?;
            let report = check_axioms(&system);

            hereditary.record(report.i1_holds && report.i2_violation.is_none());
            let is_matroid = report.is_matroid();
            matroid.record(is_matroid);
            if !is_matroid {
                self.fail(i, "matroid", axiom_detail(&report), &family, None);
            }

            let reference = vector_matroid(&direction_vectors(&family)?)?;
            let equal = reference == system;
            oracle.record(equal);
            if !equal {
                self.fail(
                    i,
                    "oracle-equal",
                    "derived system differs from the direction vector matroid".into(),
                    &family,
                    None,
                );
            }

            if is_matroid {
                let ok = self.greedy_matches(i, inst_seed, &system, &family, None)?;
                greedy.record(ok);
            }
        }
        Ok(vec![matroid, oracle, hereditary, greedy])
    }

    fn run_t4(&mut self) -> Result<Vec<CheckTally>, CliError> {
        let p = self.params;
        let max_dim = p.max_summand_dim.expect("resolved t4 params");
        let max_summands = p.max_summands.expect("resolved t4 params");
        let mut hypotheses = CheckTally::new("hypotheses");
        let mut matroid = CheckTally::new("matroid");
        let mut hereditary = CheckTally::new("hereditary");
        let mut greedy = CheckTally::new("greedy-optimal");

        for i in 0..p.count {
            let inst_seed = derive_seed(p.seed, i as u64);
            let mut shape = ChaCha8Rng::seed_from_u64(derive_seed(inst_seed, 0));
            let summand_dim = shape.gen_range(2..=max_dim);
            let summands = shape.gen_range(1..=max_summands.min(p.max_ambient / summand_dim));
            let ambient = shape.gen_range(summands * summand_dim..=p.max_ambient);
            let set_count = shape.gen_range(1..=p.max_sets);
            let (family, dec) = random_decomposition_instance(
                derive_seed(inst_seed, 1),
                summands,
                summand_dim,
                set_count,
                ambient,
            )?;

            let hyp = decomposition_hypotheses(&family, &dec);
            hypotheses.record(hyp.ok());
            if !hyp.ok() {
                self.fail(i, "hypotheses", hyp.to_string(), &family, Some(&dec));
            }

            let system = lisf_matroid(&family)?;
            let report = check_axioms(&system);
            hereditary.record(report.i1_holds && report.i2_violation.is_none());
            let is_matroid = report.is_matroid();
            matroid.record(is_matroid);
            if !is_matroid {
                self.fail(i, "matroid", axiom_detail(&report), &family, Some(&dec));
            }

            if is_matroid {
                let ok = self.greedy_matches(i, inst_seed, &system, &family, Some(&dec))?;
                greedy.record(ok);
            }
        }
        Ok(vec![hypotheses, matroid, hereditary, greedy])
    }

    fn run_corollaries(&mut self) -> Result<Vec<CheckTally>, CliError> {
        let p = self.params;
        let mut scale = CheckTally::new("scale-invariant");
        let mut iso = CheckTally::new("isomorphism-invariant");
        let mut symm = CheckTally::new("symmetrize-invariant");
        let mut hereditary = CheckTally::new("hereditary");

        for i in 0..p.count {
            let inst_seed = derive_seed(p.seed, i as u64);
            let family = self.corollary_family(i, inst_seed)?;
            let system = lisf_matroid(&family)?;
            let report = check_axioms(&system);
            hereditary.record(report.i1_holds && report.i2_violation.is_none());

            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(inst_seed, 2));

            let scales: Vec<Scalar> = (0..family.len())
                .map(|_| random_nonzero_scalar(&mut rng, family.field()))
                .collect();
            let scaled = lisf_matroid(&family.scale_family(&scales)?)?;
            scale.record(scaled == system);
            if scaled != system {
                self.fail(i, "scale-invariant", "scaling changed the system".into(), &family, None);
            }

            let t = random_invertible(&mut rng, family.field(), family.ambient_dim());
            let mapped = lisf_matroid(&family.apply_isomorphism(&t)?)?;
            iso.record(mapped == system);
            if mapped != system {
                self.fail(
                    i,
                    "isomorphism-invariant",
                    "an invertible ambient map changed the system".into(),
                    &family,
                    None,
                );
            }

            let symmetrized = lisf_matroid(&family.symmetrize())?;
            symm.record(symmetrized == system);
            if symmetrized != system {
                self.fail(
                    i,
                    "symmetrize-invariant",
                    "symmetrization changed the system".into(),
                    &family,
                    None,
                );
            }
        }
        Ok(vec![scale, iso, symm, hereditary])
    }

    /// Rotates through line instances, direct sum instances, and free-form
    /// families that meet no special hypotheses.
    fn corollary_family(&self, index: usize, inst_seed: u64) -> Result<SetFamily, CliError> {
        let p = self.params;
        let mut shape = ChaCha8Rng::seed_from_u64(derive_seed(inst_seed, 0));
        let family = match index % 3 {
            0 => {
                let set_count = shape.gen_range(1..=p.max_sets);
                let ambient = shape.gen_range(1..=p.max_ambient);
                let field = p.field.unwrap_or(if index.is_multiple_of(2) {
                    Field::Rationals
                } else {
                    gf(5)
                });
                random_line_instance(
                    derive_seed(inst_seed, 1),
                    set_count,
                    ambient,
                    field,
                    T3_MAX_SAMPLES,
                    T3_LOOP_PROBABILITY,
                )?
            }
            1 => {
                let summand_dim = shape.gen_range(2..=3);
                let summands = shape.gen_range(1..=2.min(6 / summand_dim));
                let floor = summands * summand_dim;
                let ambient = shape.gen_range(floor..=floor.max(p.max_ambient));
                let set_count = shape.gen_range(1..=p.max_sets.min(4));
                random_decomposition_instance(
                    derive_seed(inst_seed, 1),
                    summands,
                    summand_dim,
                    set_count,
                    ambient,
                )?
                .0
            }
            _ => free_form_family(
                derive_seed(inst_seed, 1),
                p.field.unwrap_or(if index.is_multiple_of(2) { Field::Rationals } else { gf(5) }),
                shape.gen_range(1..=p.max_sets.min(4)),
                shape.gen_range(1..=p.max_ambient.min(3)),
            )?,
        };
        Ok(family)
    }
}

fn axiom_detail(report: &lisf_matroid::matroid::AxiomReport) -> String {
    let mut parts = Vec::new();
    if !report.i1_holds {
        parts.push("I.1 violated".to_string());
    }
    if let Some((a, b)) = &report.i2_violation {
        parts.push(format!("I.2 VIOLATED witness ({a},{b})"));
    }
    if let Some((a, b)) = &report.i3_violation {
        parts.push(format!("I.3 VIOLATED witness ({a},{b})"));
    }
    parts.join("; ")
}

fn t3_fields() -> [Field; 3] {
    [Field::Rationals, gf(5), gf(7)]
}

fn gf(p: u64) -> Field {
    Field::prime(p).expect("fixed suite prime")
}

/// A family with no imposed shape: each set is either a few explicit
/// vectors (zero allowed, so loops and non-collinear sets occur) or a
/// random punctured subspace.
fn free_form_family(
    seed: u64,
    field: Field,
    set_count: usize,
    ambient: usize,
) -> Result<SetFamily, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(set_count);
    for _ in 0..set_count {
        if rng.gen_bool(0.5) {
            let members: Vec<Vector> = (0..rng.gen_range(1..=3))
                .map(|_| random_vector(&mut rng, field, ambient))
                .collect();
            sets.push(VectorSet::finite(members)?);
        } else {
            let rows: Vec<Vector> = (0..rng.gen_range(1..=2))
                .map(|_| random_nonzero_vector(&mut rng, field, ambient))
                .collect();
            let span = Subspace::span(field, ambient, &rows)?;
            sets.push(VectorSet::punctured(span)?);
        }
    }
    Ok(SetFamily::new(field, ambient, sets)?)
}

fn random_vector<R: Rng>(rng: &mut R, field: Field, dim: usize) -> Vector {
    let coords: Vec<Scalar> = (0..dim)
        .map(|_| match field {
            Field::Rationals => Scalar::from_integer(field, rng.gen_range(-2..=2)),
            Field::Prime(p) => Scalar::from_integer(field, rng.gen_range(0..i64::from(p))),
        })
        .collect();
    Vector::new(field, coords).expect("coords share the field")
}

fn random_nonzero_vector<R: Rng>(rng: &mut R, field: Field, dim: usize) -> Vector {
    loop {
        let v = random_vector(rng, field, dim);
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_nonzero_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Rationals => {
            let num = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=3);
            Scalar::from_ratio(field, num.into(), den.into()).expect("nonzero denominator")
        }
        Field::Prime(p) => Scalar::from_integer(field, rng.gen_range(1..i64::from(p))),
    }
}

/// Random invertible matrix over `field`, found by rejection.
fn random_invertible<R: Rng>(rng: &mut R, field: Field, dim: usize) -> Matrix {
    loop {
        let entries: Vec<Scalar> = (0..dim * dim)
            .map(|_| match field {
                Field::Rationals => Scalar::from_integer(field, rng.gen_range(-3..=3)),
                Field::Prime(p) => Scalar::from_integer(field, rng.gen_range(0..i64::from(p))),
            })
            .collect();
        let m = Matrix::new(field, dim, dim, entries).expect("entries share the field");
        if m.is_invertible() {
            return m;
        }
    }
}
