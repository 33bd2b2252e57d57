//! Structured families whose selection independence systems are matroids,
//! fixture families, and random instance generators.
//!
//! [`lisf_matroid`] turns any family into its selection independence
//! system: a subset of set indices is a member when the subfamily has the
//! selection independence property. The property is downward closed, so the
//! system always satisfies I.1 and I.2; I.3 can fail for general families.
//!
//! Two sufficient conditions for getting an actual matroid are implemented
//! as checkable hypothesis sets.
//!
//! * Line samples ([`line_hypotheses`]): every set is finite with all
//!   members on a single line through the origin. The system then equals
//!   the linear matroid of one direction vector per set, where a set
//!   containing the zero vector contributes a zero column and hence a
//!   loop.
//! * Subspaces of a direct sum ([`decomposition_hypotheses`]): over a field
//!   of characteristic zero, each set is a punctured subspace contained in
//!   one summand of a direct sum with summands of equal dimension n, and
//!   has dimension at least ceil(n/2) + 1. Selections across distinct
//!   summands are independent because the sum is direct, while two sets
//!   sharing a summand have dimensions adding to more than n, intersect in
//!   a nonzero vector, and so form a dependent pair. The system is then
//!   the partition matroid of the summand assignment.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{is_direct_sum, Field, Matrix, Scalar, Subspace, Vector};
use crate::matroid::{GroundSet, IndependenceFamily, Subset, MAX_EXHAUSTIVE_GROUND};
use crate::setfamily::{
    check_lisf, SetFamily, VectorSet, VectorSetKind, DEFAULT_SELECTION_BUDGET,
};
use crate::{Error, Result};

/// The selection independence system of a family, with the default
/// enumeration budget per subfamily check.
pub fn lisf_matroid(family: &SetFamily) -> Result<IndependenceFamily> {
    lisf_matroid_budgeted(family, DEFAULT_SELECTION_BUDGET)
}

/// The selection independence system of a family: ground set {1, ..., k}
/// for the k sets, members the index subsets whose subfamily has the
/// selection independence property.
///
/// Subfamilies are explored by depth first extension and only subsets of
/// verified members are ever tested, which is complete because the
/// property is downward closed. A [`Error::BudgetExceeded`] from a
/// subfamily check is returned with the offending index subset attached.
pub fn lisf_matroid_budgeted(family: &SetFamily, budget: u128) -> Result<IndependenceFamily> {
    let n = family.len();
    let ground = GroundSet::new(n)?;
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::GroundTooLarge {
            n,
            max: MAX_EXHAUSTIVE_GROUND,
        });
    }

    let mut members = BTreeSet::new();
    let mut stack: Vec<(Subset, usize)> = vec![(Subset::EMPTY, 0)];
    while let Some((set, last)) = stack.pop() {
        members.insert(set);
        for e in last + 1..=n {
            let extended = set.insert(e);
            let refs: Vec<&VectorSet> = extended.iter().map(|i| family.set(i - 1)).collect();
            match check_lisf(&refs, budget) {
                Ok(verdict) => {
                    if verdict.holds() {
                        stack.push((extended, e));
                    }
                }
                Err(Error::BudgetExceeded { needed, budget, .. }) => {
                    return Err(Error::BudgetExceeded {
                        needed,
                        budget,
                        subset: Some(extended.elements()),
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    IndependenceFamily::new(ground, members)
}

/// One unmet hypothesis. Labels are 1-based set positions; family level
/// failures carry no label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisFailure {
    NotFinite { label: usize },
    NotOnLine { label: usize },
    NotPunctured { label: usize },
    NotInSummand { label: usize },
    DimOutOfRange { label: usize, dim: usize, lo: usize, hi: usize },
    WrongField { expected: Field, got: Field },
    WrongAmbient { expected: usize, got: usize },
    PositiveCharacteristic { characteristic: u64 },
}

impl std::fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisFailure::NotFinite { label } => {
                write!(f, "set {label} is not a finite vector set")
            }
            HypothesisFailure::NotOnLine { label } => {
                write!(f, "set {label} has members on more than one line")
            }
            HypothesisFailure::NotPunctured { label } => {
                write!(f, "set {label} is not a punctured subspace")
            }
            HypothesisFailure::NotInSummand { label } => {
                write!(f, "set {label} is not contained in a single summand")
            }
            HypothesisFailure::DimOutOfRange { label, dim, lo, hi } => {
                write!(f, "set {label} has dimension {dim}, outside {lo}..={hi}")
            }
            HypothesisFailure::WrongField { expected, got } => {
                write!(f, "family field {got} does not match decomposition field {expected}")
            }
            HypothesisFailure::WrongAmbient { expected, got } => {
                write!(
                    f,
                    "family ambient dimension {got} does not match decomposition ambient dimension {expected}"
                )
            }
            HypothesisFailure::PositiveCharacteristic { characteristic } => {
                write!(
                    f,
                    "field has characteristic {characteristic}, need characteristic zero"
                )
            }
        }
    }
}

/// All unmet hypotheses of one check; empty means the hypotheses hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub failures: Vec<HypothesisFailure>,
}

impl HypothesisReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "hypotheses hold");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

/// Checks the line sample hypotheses: every set finite, every set's
/// nonzero members on a single line.
pub fn line_hypotheses(family: &SetFamily) -> HypothesisReport {
    let mut failures = Vec::new();
    for (i, s) in family.sets().iter().enumerate() {
        match s.directions() {
            None => failures.push(HypothesisFailure::NotFinite { label: i + 1 }),
            Some((dirs, _)) if dirs.len() > 1 => {
                failures.push(HypothesisFailure::NotOnLine { label: i + 1 })
            }
            Some(_) => {}
        }
    }
    HypothesisReport { failures }
}

/// One direction vector per set of a family meeting the line sample
/// hypotheses: the common direction of the set's members, or the zero
/// vector when the set contains the zero vector (a loop).
///
/// The selection independence system of such a family equals the linear
/// matroid of these vectors.
pub fn direction_vectors(family: &SetFamily) -> Result<Vec<Vector>> {
    let report = line_hypotheses(family);
    if !report.ok() {
        return Err(Error::HypothesesNotMet(report.to_string()));
    }
    Ok(family
        .sets()
        .iter()
        .map(|s| {
            let (dirs, has_zero) = s.directions().expect("finiteness checked above");
            if has_zero {
                Vector::zero(family.field(), family.ambient_dim())
            } else {
                dirs[0].clone()
            }
        })
        .collect())
}

/// A decomposition of a subspace of F^l into a direct sum of subspaces of
/// equal dimension.
///
/// The constructor enforces directness and equal dimensions, so a value of
/// this type is always an actual direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumDecomposition {
    summands: Vec<Subspace>,
    summand_dim: usize,
}

impl DirectSumDecomposition {
    pub fn new(summands: Vec<Subspace>) -> Result<DirectSumDecomposition> {
        let Some(first) = summands.first() else {
            return Err(Error::Param("a decomposition needs at least one summand".into()));
        };
        let summand_dim = first.dim();
        if summand_dim == 0 {
            return Err(Error::ZeroSubspace);
        }
        for s in &summands {
            first.field().ensure_same(&s.field())?;
            if s.ambient_dim() != first.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.ambient_dim(),
                    got: s.ambient_dim(),
                });
            }
            if s.dim() != summand_dim {
                return Err(Error::HypothesesNotMet(format!(
                    "summands have dimensions {summand_dim} and {}, need all equal",
                    s.dim()
                )));
            }
        }
        if !is_direct_sum(&summands)? {
            return Err(Error::HypothesesNotMet(
                "summands do not sum directly".into(),
            ));
        }
        Ok(DirectSumDecomposition {
            summands,
            summand_dim,
        })
    }

    pub fn field(&self) -> Field {
        self.summands[0].field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.summands[0].ambient_dim()
    }

    pub fn summands(&self) -> &[Subspace] {
        &self.summands
    }

    /// Common dimension n of the summands.
    pub fn summand_dim(&self) -> usize {
        self.summand_dim
    }

    /// Least admissible set dimension, ceil(n/2) + 1.
    pub fn min_set_dim(&self) -> usize {
        self.summand_dim.div_ceil(2) + 1
    }
}

/// Checks the direct sum hypotheses for a family against a decomposition:
/// characteristic zero, matching field and ambient space, every set a
/// punctured subspace inside a single summand with dimension in
/// [ceil(n/2) + 1, n].
///
/// Family level mismatches (field, ambient space, characteristic) are
/// reported alone, since the per set checks are not meaningful without
/// them.
pub fn decomposition_hypotheses(
    family: &SetFamily,
    decomposition: &DirectSumDecomposition,
) -> HypothesisReport {
    let mut failures = Vec::new();
    if family.field() != decomposition.field() {
        failures.push(HypothesisFailure::WrongField {
            expected: decomposition.field(),
            got: family.field(),
        });
    }
    if family.ambient_dim() != decomposition.ambient_dim() {
        failures.push(HypothesisFailure::WrongAmbient {
            expected: decomposition.ambient_dim(),
            got: family.ambient_dim(),
        });
    }
    let characteristic = family.field().characteristic();
    if characteristic != 0 {
        failures.push(HypothesisFailure::PositiveCharacteristic { characteristic });
    }
    if !failures.is_empty() {
        return HypothesisReport { failures };
    }

    let lo = decomposition.min_set_dim();
    let hi = decomposition.summand_dim();
    for (i, s) in family.sets().iter().enumerate() {
        let VectorSetKind::Punctured(w) = s.kind() else {
            failures.push(HypothesisFailure::NotPunctured { label: i + 1 });
            continue;
        };
        let in_summand = decomposition
            .summands()
            .iter()
            .any(|u| u.contains_subspace(w).expect("fields and dimensions match"));
        if !in_summand {
            failures.push(HypothesisFailure::NotInSummand { label: i + 1 });
        }
        if w.dim() < lo || w.dim() > hi {
            failures.push(HypothesisFailure::DimOutOfRange {
                label: i + 1,
                dim: w.dim(),
                lo,
                hi,
            });
        }
    }
    HypothesisReport { failures }
}

/// The summand index (0-based) containing each set's subspace, for a
/// family meeting the direct sum hypotheses. The index is unique because
/// distinct summands of a direct sum meet only in zero.
pub fn summand_assignment(
    family: &SetFamily,
    decomposition: &DirectSumDecomposition,
) -> Result<Vec<usize>> {
    let report = decomposition_hypotheses(family, decomposition);
    if !report.ok() {
        return Err(Error::HypothesesNotMet(report.to_string()));
    }
    family
        .sets()
        .iter()
        .map(|s| {
            let VectorSetKind::Punctured(w) = s.kind() else {
                unreachable!("hypotheses checked above");
            };
            Ok(decomposition
                .summands()
                .iter()
                .position(|u| u.contains_subspace(w).expect("fields and dimensions match"))
                .expect("containment checked above"))
        })
        .collect()
}

/// A disk in the rational plane, optionally with the origin removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskRegion {
    pub center: Vector,
    pub radius_sq: BigRational,
    pub excludes_origin: bool,
}

impl DiskRegion {
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        self.center.compatible_with(v)?;
        if self.excludes_origin && v.is_zero() {
            return Ok(false);
        }
        let mut dist_sq = Scalar::zero(Field::Rationals);
        for (c, x) in self.center.coords().iter().zip(v.coords()) {
            let d = x.sub(c)?;
            dist_sq = dist_sq.add(&d.mul(&d)?)?;
        }
        let dist_sq = dist_sq
            .as_rational()
            .expect("rational scalar")
            .clone();
        Ok(dist_sq <= self.radius_sq)
    }
}

fn qscalar(text: &str) -> Scalar {
    Scalar::parse(Field::Rationals, text).expect("fixture scalar literal")
}

fn qvector(coords: &[&str]) -> Vector {
    Vector::new(
        Field::Rationals,
        coords.iter().map(|c| qscalar(c)).collect(),
    )
    .expect("fixture vector literal")
}

/// Three finite sets of rational plane vectors, each sampled from a disk
/// (the second disk has the origin removed). Selections are independent
/// exactly for the index subsets {}, {1}, {2}, {3}, {1,3}, and that system
/// violates the exchange axiom on ({2}, {1,3}): this family is the
/// standard small fixture for a non-matroid outcome.
pub fn disk_sample_family() -> SetFamily {
    let sets = vec![
        VectorSet::finite(vec![
            qvector(&["1", "1"]),
            qvector(&["1", "2"]),
            qvector(&["1/2", "1/2"]),
        ])
        .expect("fixture members"),
        VectorSet::finite(vec![
            qvector(&["1/2", "1/2"]),
            qvector(&["1/2", "-1/2"]),
            qvector(&["1", "0"]),
        ])
        .expect("fixture members"),
        VectorSet::finite(vec![qvector(&["1", "-1"]), qvector(&["1", "-7/8"])])
            .expect("fixture members"),
    ];
    SetFamily::new(Field::Rationals, 2, sets).expect("fixture family")
}

/// The disks the [`disk_sample_family`] sets are drawn from, in set order.
pub fn disk_sample_regions() -> Vec<DiskRegion> {
    let one = BigRational::from_integer(1.into());
    let ninth = BigRational::new(1.into(), 9.into());
    vec![
        DiskRegion {
            center: qvector(&["1", "1"]),
            radius_sq: one.clone(),
            excludes_origin: false,
        },
        DiskRegion {
            center: qvector(&["1", "0"]),
            radius_sq: one,
            excludes_origin: true,
        },
        DiskRegion {
            center: qvector(&["1", "-1"]),
            radius_sq: ninth,
            excludes_origin: false,
        },
    ]
}

/// Three finite sets in rational 3-space, each sampled from a plane, with
/// one shared vector between sets 1 and 2 and another between sets 2 and
/// 3. Its selection independence system is the same non-matroid as for
/// [`disk_sample_family`].
pub fn plane_sample_family() -> SetFamily {
    let sets = vec![
        VectorSet::finite(vec![
            qvector(&["1", "0", "0"]),
            qvector(&["1", "1", "0"]),
            qvector(&["1", "-1", "0"]),
            qvector(&["2", "1", "0"]),
        ])
        .expect("fixture members"),
        VectorSet::finite(vec![
            qvector(&["1", "1", "0"]),
            qvector(&["0", "0", "1"]),
            qvector(&["1", "1", "1"]),
            qvector(&["1", "1", "-1"]),
        ])
        .expect("fixture members"),
        VectorSet::finite(vec![
            qvector(&["0", "0", "1"]),
            qvector(&["0", "1", "1"]),
            qvector(&["0", "-1", "1"]),
            qvector(&["0", "1", "2"]),
        ])
        .expect("fixture members"),
    ];
    SetFamily::new(Field::Rationals, 3, sets).expect("fixture family")
}

/// The planes the [`plane_sample_family`] sets are drawn from, in set
/// order.
pub fn plane_sample_planes() -> Vec<Subspace> {
    let span = |rows: &[&[&str]]| {
        Subspace::span(
            Field::Rationals,
            3,
            &rows.iter().map(|r| qvector(r)).collect::<Vec<_>>(),
        )
        .expect("fixture plane")
    };
    vec![
        span(&[&["1", "0", "0"], &["0", "1", "0"]]),
        span(&[&["1", "1", "0"], &["0", "0", "1"]]),
        span(&[&["0", "1", "0"], &["0", "0", "1"]]),
    ]
}

/// Splitmix style seed stream: decorrelated per index seeds from one base
/// seed, so suite instances are independent yet reproducible.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_nonzero_vector<R: Rng>(rng: &mut R, field: Field, dim: usize) -> Vector {
    loop {
        let coords: Vec<Scalar> = (0..dim)
            .map(|_| match field {
                Field::Rationals => Scalar::from_integer(field, rng.gen_range(-3..=3)),
                Field::Prime(p) => Scalar::from_integer(field, rng.gen_range(0..i64::from(p))),
            })
            .collect();
        let v = Vector::new(field, coords).expect("coords share the field");
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

/// Random family meeting the line sample hypotheses: each set holds up to
/// `max_samples` nonzero multiples of one random direction, and with
/// probability `loop_probability` additionally (or only) the zero vector.
/// Deterministic in `seed`.
pub fn random_line_instance(
    seed: u64,
    set_count: usize,
    ambient_dim: usize,
    field: Field,
    max_samples: usize,
    loop_probability: f64,
) -> Result<SetFamily> {
    if set_count == 0 {
        return Err(Error::Param("need at least one set".into()));
    }
    if ambient_dim == 0 {
        return Err(Error::Param("ambient dimension must be positive".into()));
    }
    if max_samples == 0 {
        return Err(Error::Param("need at least one sample per set".into()));
    }
    if !(0.0..=1.0).contains(&loop_probability) {
        return Err(Error::Param("loop probability must lie in [0, 1]".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(set_count);
    for _ in 0..set_count {
        let mut members = Vec::new();
        let is_loop = rng.gen_bool(loop_probability);
        if is_loop {
            members.push(Vector::zero(field, ambient_dim));
        }
        if !is_loop || rng.gen_bool(0.5) {
            let dir = random_nonzero_vector(&mut rng, field, ambient_dim);
            for _ in 0..rng.gen_range(1..=max_samples) {
                members.push(dir.scale(&random_nonzero_scalar(&mut rng, field))?);
            }
        }
        sets.push(VectorSet::finite(members)?);
    }
    SetFamily::new(field, ambient_dim, sets)
}

/// Random rational instance meeting the direct sum hypotheses: a random
/// invertible change of basis of Q^l splits off `summand_count` summands
/// of dimension `summand_dim`, and each of the `set_count` sets is a
/// random subspace of a random summand with admissible dimension.
/// Deterministic in `seed`.
pub fn random_decomposition_instance(
    seed: u64,
    summand_count: usize,
    summand_dim: usize,
    set_count: usize,
    ambient_dim: usize,
) -> Result<(SetFamily, DirectSumDecomposition)> {
    if summand_count == 0 {
        return Err(Error::Param("need at least one summand".into()));
    }
    if summand_dim < 2 {
        return Err(Error::Param("summand dimension must be at least 2".into()));
    }
    if set_count == 0 {
        return Err(Error::Param("need at least one set".into()));
    }
    if summand_count * summand_dim > ambient_dim {
        return Err(Error::Param(format!(
            "{summand_count} summands of dimension {summand_dim} do not fit in dimension {ambient_dim}"
        )));
    }

    let field = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let basis_change = loop {
        let rows: Vec<Vector> = (0..ambient_dim)
            .map(|_| {
                Vector::new(
                    field,
                    (0..ambient_dim)
                        .map(|_| Scalar::from_integer(field, rng.gen_range(-3..=3)))
                        .collect(),
                )
                .expect("coords share the field")
            })
            .collect();
        let m = Matrix::from_rows(field, ambient_dim, &rows)?;
        if m.is_invertible() {
            break m;
        }
    };

    let summands: Vec<Subspace> = (0..summand_count)
        .map(|j| {
            let rows: Vec<Vector> = (j * summand_dim..(j + 1) * summand_dim)
                .map(|r| basis_change.row_vector(r))
                .collect();
            Subspace::span(field, ambient_dim, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let decomposition = DirectSumDecomposition::new(summands)?;

    let lo = decomposition.min_set_dim();
    let mut sets = Vec::with_capacity(set_count);
    for _ in 0..set_count {
        let summand = &decomposition.summands()[rng.gen_range(0..summand_count)];
        let dim = rng.gen_range(lo..=summand_dim);
        let subspace = loop {
            let rows: Vec<Vector> = (0..dim)
                .map(|_| summand.random_nonzero_with(&mut rng, 3))
                .collect::<Result<Vec<_>>>()?;
            let s = Subspace::span(field, ambient_dim, &rows)?;
            if s.dim() == dim {
                break s;
            }
        };
        sets.push(VectorSet::punctured(subspace)?);
    }
    let family = SetFamily::new(field, ambient_dim, sets)?;
    Ok((family, decomposition))
}
