//! Vector set families and the selection independence property.
//!
//! A family is a finite list of sets of vectors in a common space F^n. Two
//! kinds of sets are supported: an explicit finite list of vectors, and a
//! punctured subspace, meaning all nonzero vectors of a linear subspace. A
//! family is an LISF (linearly independent set family) when every choice of
//! one vector per set is linearly independent.
//!
//! # How the check works
//!
//! Scaling a chosen vector never changes whether a selection is independent,
//! so for a finite set only the projective directions of its members matter.
//! The check rests on the following equivalence. A family fails to be an
//! LISF if and only if either some finite set contains the zero vector, or
//! there is a choice of one direction per finite set such that the chosen
//! lines together with the punctured subspaces do not sum directly, where
//! dimensions are added with multiplicity.
//!
//! Suppose a selection (v_1, ..., v_k) with all v_i nonzero satisfies
//! c_1 v_1 + ... + c_k v_k = 0 with some c_i nonzero. Assign to each finite
//! set the line through its chosen v_i and to each punctured set its
//! subspace. Each summand c_i v_i lies in the assigned space, and the one
//! with c_i nonzero is itself nonzero, so zero decomposes nontrivially and
//! the sum is not direct. Conversely, if for some choice of lines the sum is
//! not direct, pick w_i in each space, not all zero, with sum zero. A
//! nonzero w_i on a chosen line is a scalar multiple of an actual member of
//! that finite set, and a nonzero w_i in a punctured subspace is itself a
//! member; spaces with w_i = 0 contribute any member with coefficient zero.
//! This yields a dependent selection. Listing the same line twice, which
//! happens when two sets share a direction, correctly fails the
//! multiplicity counted directness test, and indeed picking both members on
//! that shared line is a dependence.
//!
//! The check therefore enumerates one direction per finite set, stacks the
//! chosen directions with the punctured basis rows, and tests whether the
//! rank equals the row count. A failing stack yields a left kernel vector
//! from which an explicit [`DependenceWitness`] is assembled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{Field, Matrix, Scalar, Subspace, Vector};
use crate::{Error, Result};

/// Cap on the number of direction selections a single exhaustive check may
/// enumerate before giving up with [`Error::BudgetExceeded`].
pub const DEFAULT_SELECTION_BUDGET: u128 = 1 << 20;

/// Coefficient bound used when sampling random members of a punctured
/// subspace over the rationals.
const SAMPLE_COEFF_BOUND: i64 = 3;

/// One set of a family: either finitely many explicit vectors or the
/// nonzero part of a subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorSetKind {
    Finite(Vec<Vector>),
    Punctured(Subspace),
}

/// A member set of a [`SetFamily`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    kind: VectorSetKind,
}

impl VectorSet {
    /// A finite set from an explicit member list. Duplicates are dropped,
    /// keeping first appearances; the list must be nonempty and the members
    /// must share a field and dimension.
    pub fn finite(members: Vec<Vector>) -> Result<VectorSet> {
        let Some(first) = members.first() else {
            return Err(Error::Param("a finite set needs at least one member".into()));
        };
        let mut deduped: Vec<Vector> = Vec::with_capacity(members.len());
        for v in &members {
            first.compatible_with(v)?;
            if !deduped.contains(v) {
                deduped.push(v.clone());
            }
        }
        Ok(VectorSet {
            kind: VectorSetKind::Finite(deduped),
        })
    }

    /// The set of nonzero vectors of `subspace`, which must have positive
    /// dimension.
    pub fn punctured(subspace: Subspace) -> Result<VectorSet> {
        if subspace.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        Ok(VectorSet {
            kind: VectorSetKind::Punctured(subspace),
        })
    }

    pub fn kind(&self) -> &VectorSetKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, VectorSetKind::Finite(_))
    }

    pub fn field(&self) -> Field {
        match &self.kind {
            VectorSetKind::Finite(ms) => ms[0].field(),
            VectorSetKind::Punctured(s) => s.field(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.kind {
            VectorSetKind::Finite(ms) => ms[0].dim(),
            VectorSetKind::Punctured(s) => s.ambient_dim(),
        }
    }

    /// Number of stored members for a finite set, `None` for a punctured
    /// subspace.
    pub fn member_count(&self) -> Option<usize> {
        match &self.kind {
            VectorSetKind::Finite(ms) => Some(ms.len()),
            VectorSetKind::Punctured(_) => None,
        }
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        match &self.kind {
            VectorSetKind::Finite(ms) => Ok(ms.contains(v)),
            VectorSetKind::Punctured(s) => Ok(!v.is_zero() && s.contains(v)?),
        }
    }

    /// Some member of the set; used when a witness needs a placeholder
    /// vector with coefficient zero.
    pub fn first_member(&self) -> Vector {
        match &self.kind {
            VectorSetKind::Finite(ms) => ms[0].clone(),
            VectorSetKind::Punctured(s) => s.basis().row_vector(0),
        }
    }

    /// Distinct projective directions of a finite set's members, in first
    /// appearance order, together with a flag for a zero member. `None` for
    /// punctured subspaces, whose direction set is not enumerated.
    pub fn directions(&self) -> Option<(Vec<Vector>, bool)> {
        let entries = self.direction_entries()?;
        let has_zero = match &self.kind {
            VectorSetKind::Finite(ms) => ms.iter().any(Vector::is_zero),
            VectorSetKind::Punctured(_) => false,
        };
        Some((entries.into_iter().map(|e| e.direction).collect(), has_zero))
    }

    /// Directions of a finite set paired with the member they came from and
    /// the scale relating them (member = mu * direction). Zero members are
    /// skipped; they are handled before direction enumeration starts.
    fn direction_entries(&self) -> Option<Vec<DirectionEntry>> {
        let VectorSetKind::Finite(ms) = &self.kind else {
            return None;
        };
        let mut entries: Vec<DirectionEntry> = Vec::new();
        for m in ms {
            let Some(direction) = m.projective_rep() else {
                continue;
            };
            if entries.iter().any(|e| e.direction == direction) {
                continue;
            }
            let mu = m
                .coords()
                .iter()
                .find(|c| !c.is_zero())
                .expect("nonzero member has a nonzero coordinate")
                .clone();
            entries.push(DirectionEntry {
                direction,
                member: m.clone(),
                mu,
            });
        }
        Some(entries)
    }
}

struct DirectionEntry {
    direction: Vector,
    member: Vector,
    mu: Scalar,
}

/// A list of vector sets in a common ambient space. Sets are referred to by
/// their 1-based position in user facing output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    field: Field,
    ambient_dim: usize,
    sets: Vec<VectorSet>,
}

impl SetFamily {
    pub fn new(field: Field, ambient_dim: usize, sets: Vec<VectorSet>) -> Result<SetFamily> {
        for s in &sets {
            field.ensure_same(&s.field())?;
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: s.ambient_dim(),
                });
            }
        }
        Ok(SetFamily {
            field,
            ambient_dim,
            sets,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[VectorSet] {
        &self.sets
    }

    pub fn set(&self, index: usize) -> &VectorSet {
        &self.sets[index]
    }

    /// Exhaustive selection independence check with the default enumeration
    /// budget.
    pub fn is_lisf(&self) -> Result<LisfVerdict> {
        self.is_lisf_budgeted(DEFAULT_SELECTION_BUDGET)
    }

    /// Exhaustive selection independence check. Fails with
    /// [`Error::BudgetExceeded`] when the number of direction selections
    /// exceeds `budget`.
    pub fn is_lisf_budgeted(&self, budget: u128) -> Result<LisfVerdict> {
        let refs: Vec<&VectorSet> = self.sets.iter().collect();
        check_lisf(&refs, budget)
    }

    /// Randomized dependence search: draws `trials` selections and reports
    /// the first dependent one found. When every set is finite and the full
    /// selection space fits in `trials`, all selections are enumerated
    /// instead and a clean result is conclusive.
    pub fn is_lisf_sampled(&self, trials: u64, seed: u64) -> Result<SampledVerdict> {
        if self.sets.is_empty() {
            return Ok(SampledVerdict::NoDependenceFound { exhaustive: true });
        }

        let finite_members: Option<Vec<&[Vector]>> = self
            .sets
            .iter()
            .map(|s| match &s.kind {
                VectorSetKind::Finite(ms) => Some(ms.as_slice()),
                VectorSetKind::Punctured(_) => None,
            })
            .collect();
        if let Some(member_lists) = finite_members {
            let mut count: u128 = 1;
            let mut fits = true;
            for ms in &member_lists {
                match count.checked_mul(ms.len() as u128) {
                    Some(c) if c <= u128::from(trials) => count = c,
                    _ => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                let mut indices = vec![0usize; member_lists.len()];
                loop {
                    let selection: Vec<Vector> = member_lists
                        .iter()
                        .zip(&indices)
                        .map(|(ms, &i)| ms[i].clone())
                        .collect();
                    if let Some(w) = dependence_of(self.field, self.ambient_dim, &selection)? {
                        return Ok(SampledVerdict::Dependent(w));
                    }
                    if !advance(&mut indices, &member_lists.iter().map(|m| m.len()).collect::<Vec<_>>()) {
                        return Ok(SampledVerdict::NoDependenceFound { exhaustive: true });
                    }
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut selection = Vec::with_capacity(self.sets.len());
            for s in &self.sets {
                let v = match &s.kind {
                    VectorSetKind::Finite(ms) => ms[rng.gen_range(0..ms.len())].clone(),
                    VectorSetKind::Punctured(sub) => {
                        sub.random_nonzero_with(&mut rng, SAMPLE_COEFF_BOUND)?
                    }
                };
                selection.push(v);
            }
            if let Some(w) = dependence_of(self.field, self.ambient_dim, &selection)? {
                return Ok(SampledVerdict::Dependent(w));
            }
        }
        Ok(SampledVerdict::NoDependenceFound { exhaustive: false })
    }

    /// Replaces every member of set i by `scales[i]` times it. Scale factors
    /// must be nonzero; a punctured subspace is fixed setwise by nonzero
    /// scaling, so it is returned unchanged.
    pub fn scale_family(&self, scales: &[Scalar]) -> Result<SetFamily> {
        if scales.len() != self.sets.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sets.len(),
                got: scales.len(),
            });
        }
        let mut out = Vec::with_capacity(self.sets.len());
        for (i, (s, c)) in self.sets.iter().zip(scales).enumerate() {
            self.field.ensure_same(&c.field())?;
            if c.is_zero() {
                return Err(Error::ZeroScale { index: i + 1 });
            }
            let scaled = match &s.kind {
                VectorSetKind::Finite(ms) => VectorSet::finite(
                    ms.iter()
                        .map(|m| m.scale(c))
                        .collect::<Result<Vec<_>>>()?,
                )?,
                VectorSetKind::Punctured(sub) => VectorSet::punctured(sub.clone())?,
            };
            out.push(scaled);
        }
        SetFamily::new(self.field, self.ambient_dim, out)
    }

    /// Maps every member through the invertible matrix `t`.
    pub fn apply_isomorphism(&self, t: &Matrix) -> Result<SetFamily> {
        self.field.ensure_same(&t.field())?;
        if t.rows() != self.ambient_dim || t.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: t.rows().max(t.cols()),
            });
        }
        if !t.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut out = Vec::with_capacity(self.sets.len());
        for s in &self.sets {
            let mapped = match &s.kind {
                VectorSetKind::Finite(ms) => VectorSet::finite(
                    ms.iter()
                        .map(|m| t.mul_vector(m))
                        .collect::<Result<Vec<_>>>()?,
                )?,
                VectorSetKind::Punctured(sub) => {
                    let rows: Vec<Vector> = sub
                        .basis_rows()
                        .iter()
                        .map(|r| t.mul_vector(r))
                        .collect::<Result<Vec<_>>>()?;
                    VectorSet::punctured(Subspace::span(self.field, self.ambient_dim, &rows)?)?
                }
            };
            out.push(mapped);
        }
        SetFamily::new(self.field, self.ambient_dim, out)
    }

    /// Closes every finite set under negation. Punctured subspaces already
    /// contain all negatives. Over a field of characteristic 2 this is the
    /// identity.
    pub fn symmetrize(&self) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .map(|s| match &s.kind {
                VectorSetKind::Finite(ms) => {
                    let doubled: Vec<Vector> =
                        ms.iter().flat_map(|m| [m.clone(), m.neg()]).collect();
                    VectorSet::finite(doubled).expect("members already validated")
                }
                VectorSetKind::Punctured(sub) => {
                    VectorSet::punctured(sub.clone()).expect("dimension already validated")
                }
            })
            .collect();
        SetFamily {
            field: self.field,
            ambient_dim: self.ambient_dim,
            sets,
        }
    }
}

/// Outcome of an exhaustive selection independence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LisfVerdict {
    Lisf,
    NotLisf(DependenceWitness),
}

impl LisfVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LisfVerdict::Lisf)
    }

    pub fn witness(&self) -> Option<&DependenceWitness> {
        match self {
            LisfVerdict::Lisf => None,
            LisfVerdict::NotLisf(w) => Some(w),
        }
    }
}

/// Outcome of a randomized dependence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledVerdict {
    Dependent(DependenceWitness),
    /// No dependence was seen. `exhaustive` is true when every selection
    /// was actually tried, making the result a proof.
    NoDependenceFound { exhaustive: bool },
}

/// An explicit dependent selection: one member per set and coefficients,
/// not all zero, whose combination vanishes. Coefficients are normalized so
/// the first nonzero one is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceWitness {
    pub selection: Vec<Vector>,
    pub coefficients: Vec<Scalar>,
}

impl DependenceWitness {
    /// Checks the witness against the family it claims to refute: one entry
    /// per set, each selected vector a member of its set, coefficients not
    /// all zero, combination exactly zero.
    pub fn verify(&self, family: &SetFamily) -> Result<bool> {
        if self.selection.len() != family.len() || self.coefficients.len() != family.len() {
            return Ok(false);
        }
        for (s, v) in family.sets().iter().zip(&self.selection) {
            if !s.contains(v)? {
                return Ok(false);
            }
        }
        if self.coefficients.iter().all(Scalar::is_zero) {
            return Ok(false);
        }
        let mut acc = Vector::zero(family.field(), family.ambient_dim());
        for (c, v) in self.coefficients.iter().zip(&self.selection) {
            acc = acc.add(&v.scale(c)?)?;
        }
        Ok(acc.is_zero())
    }
}

impl std::fmt::Display for DependenceWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (c, v)) in self.coefficients.iter().zip(&self.selection).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{v}")?;
        }
        write!(f, " = 0")
    }
}

/// Core exhaustive check over a borrowed subfamily, so matroid construction
/// can test subfamilies without cloning sets.
pub(crate) fn check_lisf(sets: &[&VectorSet], budget: u128) -> Result<LisfVerdict> {
    let Some(first) = sets.first() else {
        return Ok(LisfVerdict::Lisf);
    };
    let field = first.field();
    let ambient = first.ambient_dim();
    for s in sets {
        field.ensure_same(&s.field())?;
        if s.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: s.ambient_dim(),
            });
        }
    }

    // A zero member makes any selection through it dependent on its own.
    for (i, s) in sets.iter().enumerate() {
        if let VectorSetKind::Finite(ms) = &s.kind {
            if let Some(z) = ms.iter().find(|m| m.is_zero()) {
                let selection: Vec<Vector> = sets
                    .iter()
                    .enumerate()
                    .map(|(j, t)| if j == i { z.clone() } else { t.first_member() })
                    .collect();
                let coefficients: Vec<Scalar> = (0..sets.len())
                    .map(|j| {
                        if j == i {
                            Scalar::one(field)
                        } else {
                            Scalar::zero(field)
                        }
                    })
                    .collect();
                return Ok(LisfVerdict::NotLisf(DependenceWitness {
                    selection,
                    coefficients,
                }));
            }
        }
    }

    // Per set: either the direction entries of a finite set, or the
    // punctured subspace contributing a fixed block of basis rows.
    enum Block<'a> {
        Directions(Vec<DirectionEntry>),
        Space(&'a Subspace),
    }
    let blocks: Vec<Block> = sets
        .iter()
        .map(|s| match &s.kind {
            VectorSetKind::Finite(_) => Block::Directions(
                s.direction_entries().expect("finite set has direction entries"),
            ),
            VectorSetKind::Punctured(sub) => Block::Space(sub),
        })
        .collect();

    let mut needed: u128 = 1;
    for b in &blocks {
        if let Block::Directions(es) = b {
            needed = needed
                .checked_mul(es.len() as u128)
                .ok_or(Error::BudgetExceeded {
                    needed: u128::MAX,
                    budget,
                    subset: None,
                })?;
        }
    }
    if needed > budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget,
            subset: None,
        });
    }

    let choice_sizes: Vec<usize> = blocks
        .iter()
        .filter_map(|b| match b {
            Block::Directions(es) => Some(es.len()),
            Block::Space(_) => None,
        })
        .collect();
    let mut indices = vec![0usize; choice_sizes.len()];

    loop {
        // Stack the chosen direction rows and the punctured basis rows in
        // family order, remembering each set's row range.
        let mut rows: Vec<Vector> = Vec::new();
        let mut ranges: Vec<(usize, usize)> = Vec::with_capacity(blocks.len());
        let mut choice_pos = 0;
        for b in &blocks {
            let start = rows.len();
            match b {
                Block::Directions(es) => {
                    rows.push(es[indices[choice_pos]].direction.clone());
                    choice_pos += 1;
                }
                Block::Space(sub) => rows.extend(sub.basis_rows()),
            }
            ranges.push((start, rows.len()));
        }

        let stacked = Matrix::from_rows(field, ambient, &rows)?;
        if stacked.rank() < rows.len() {
            let kernel = stacked.transpose().null_space();
            let gamma = kernel.first().expect("rank deficient stack has a left kernel");
            let mut selection = Vec::with_capacity(blocks.len());
            let mut coefficients = Vec::with_capacity(blocks.len());
            let mut choice_pos = 0;
            for (b, &(start, end)) in blocks.iter().zip(&ranges) {
                match b {
                    Block::Directions(es) => {
                        let entry = &es[indices[choice_pos]];
                        choice_pos += 1;
                        // gamma_start * direction = (gamma_start / mu) * member
                        selection.push(entry.member.clone());
                        coefficients.push(gamma.coord(start).div(&entry.mu)?);
                    }
                    Block::Space(sub) => {
                        let mut w = Vector::zero(field, ambient);
                        for (j, row) in sub.basis_rows().iter().enumerate() {
                            w = w.add(&row.scale(gamma.coord(start + j))?)?;
                        }
                        let _ = end;
                        if w.is_zero() {
                            selection.push(sub.basis().row_vector(0));
                            coefficients.push(Scalar::zero(field));
                        } else {
                            selection.push(w);
                            coefficients.push(Scalar::one(field));
                        }
                    }
                }
            }
            normalize_leading(&mut coefficients)?;
            return Ok(LisfVerdict::NotLisf(DependenceWitness {
                selection,
                coefficients,
            }));
        }

        if !advance(&mut indices, &choice_sizes) {
            return Ok(LisfVerdict::Lisf);
        }
    }
}

/// Dependence test for one concrete selection; returns a normalized witness
/// when dependent.
fn dependence_of(
    field: Field,
    ambient: usize,
    selection: &[Vector],
) -> Result<Option<DependenceWitness>> {
    let stacked = Matrix::from_rows(field, ambient, selection)?;
    if stacked.rank() == selection.len() {
        return Ok(None);
    }
    let kernel = stacked.transpose().null_space();
    let gamma = kernel.first().expect("rank deficient stack has a left kernel");
    let mut coefficients: Vec<Scalar> = gamma.coords().to_vec();
    normalize_leading(&mut coefficients)?;
    Ok(Some(DependenceWitness {
        selection: selection.to_vec(),
        coefficients,
    }))
}

/// Scales a nonzero coefficient vector so its first nonzero entry is 1.
fn normalize_leading(coefficients: &mut [Scalar]) -> Result<()> {
    let Some(lead) = coefficients.iter().find(|c| !c.is_zero()).cloned() else {
        return Ok(());
    };
    let inv = lead.inv()?;
    for c in coefficients.iter_mut() {
        *c = c.mul(&inv)?;
    }
    Ok(())
}

/// Odometer step in lexicographic order, last position fastest. Returns
/// false once all combinations are exhausted.
fn advance(indices: &mut [usize], sizes: &[usize]) -> bool {
    for i in (0..indices.len()).rev() {
        indices[i] += 1;
        if indices[i] < sizes[i] {
            return true;
        }
        indices[i] = 0;
    }
    false
}
