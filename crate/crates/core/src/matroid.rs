//! Independence families over a small ground set, matroid axiom checking,
//! and weight optimization.
//!
//! The ground set is {1, ..., n} with n at most 32, so subsets fit in a
//! `u32` bitmask. The independence axioms checked here are:
//!
//! * I.1: the empty set is independent.
//! * I.2: subsets of independent sets are independent.
//! * I.3: if A and B are independent and |A| < |B|, some element of B \ A
//!   can be added to A keeping it independent.
//!
//! Axiom failures come with explicit witness pairs so a caller can report
//! exactly which sets break which axiom.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactalg::{is_linearly_independent, Vector};
use crate::{Error, Result};

/// Hard cap on ground set size imposed by the bitmask representation.
pub const MAX_GROUND: usize = 32;

/// Cap on ground set size for operations that enumerate all 2^n subsets or
/// build a full independence family.
pub const MAX_EXHAUSTIVE_GROUND: usize = 24;

/// A subset of {1, ..., 32} as a bitmask; bit i holds element i + 1.
///
/// The `Ord` instance is lexicographic on the ascending element list, so
/// {} < {1} < {1,3} < {2} < {2,3}. Witnesses and tie breaks throughout this
/// module are "least" in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Subset {
        Subset(bits)
    }

    /// Builds a subset from 1-based element labels.
    pub fn from_elements(elements: &[usize]) -> Result<Subset> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::Param(format!(
                    "element label {e} outside 1..={MAX_GROUND}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        (1..=MAX_GROUND).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    #[must_use]
    pub fn insert(&self, element: usize) -> Subset {
        debug_assert!((1..=MAX_GROUND).contains(&element));
        Subset(self.0 | 1 << (element - 1))
    }

    #[must_use]
    pub fn remove(&self, element: usize) -> Subset {
        debug_assert!((1..=MAX_GROUND).contains(&element));
        Subset(self.0 & !(1 << (element - 1)))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Ascending 1-based element labels.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_GROUND).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "\u{2205}");
        }
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// The ground set {1, ..., n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<GroundSet> {
        if n == 0 {
            return Err(Error::Param("ground set must be nonempty".into()));
        }
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge { n, max: MAX_GROUND });
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_subset(&self) -> Subset {
        Subset(if self.n == 32 { u32::MAX } else { (1 << self.n) - 1 })
    }

    /// All 2^n subsets in bitmask order (not lexicographic order).
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let full = u64::from(self.full_subset().bits());
        (0..=full).map(|b| Subset(b as u32))
    }
}

/// An explicit family of subsets of a ground set, the candidate independent
/// sets of a matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceFamily {
    ground: GroundSet,
    members: BTreeSet<Subset>,
}

impl IndependenceFamily {
    pub fn new(ground: GroundSet, members: BTreeSet<Subset>) -> Result<IndependenceFamily> {
        let full = ground.full_subset();
        for m in &members {
            if !m.is_subset_of(&full) {
                return Err(Error::Param(format!(
                    "member {m} uses elements outside the ground set of size {}",
                    ground.n()
                )));
            }
        }
        Ok(IndependenceFamily { ground, members })
    }

    /// Builds a family from lists of 1-based element labels.
    pub fn from_label_lists(n: usize, lists: &[&[usize]]) -> Result<IndependenceFamily> {
        let ground = GroundSet::new(n)?;
        let members = lists
            .iter()
            .map(|l| Subset::from_elements(l))
            .collect::<Result<BTreeSet<_>>>()?;
        IndependenceFamily::new(ground, members)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Axiom check outcome. A `None` violation means the axiom holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub i1_holds: bool,
    /// (A, B): B is a member, A = B minus one element is not.
    pub i2_violation: Option<(Subset, Subset)>,
    /// (A, B): both members, |A| < |B|, no element of B \ A extends A
    /// inside the family.
    pub i3_violation: Option<(Subset, Subset)>,
}

impl AxiomReport {
    pub fn is_matroid(&self) -> bool {
        self.i1_holds && self.i2_violation.is_none() && self.i3_violation.is_none()
    }
}

/// Checks I.1 through I.3, returning the least witness pair for each failed
/// axiom.
///
/// Downward closure is verified by single element removals, which is
/// equivalent to the full axiom by induction along chains. The exchange
/// check walks member pairs in lexicographic order, so the reported
/// violation is the first in (A, B) order.
pub fn check_axioms(family: &IndependenceFamily) -> AxiomReport {
    let members = family.members();
    let i1_holds = members.contains(&Subset::EMPTY);

    let mut i2_violation = None;
    'outer: for b in members {
        for e in b.iter() {
            let a = b.remove(e);
            if !members.contains(&a) {
                i2_violation = Some((a, *b));
                break 'outer;
            }
        }
    }

    let mut i3_violation = None;
    'pairs: for a in members {
        for b in members {
            if b.len() <= a.len() {
                continue;
            }
            let can_augment = b
                .difference(a)
                .iter()
                .any(|x| members.contains(&a.insert(x)));
            if !can_augment {
                i3_violation = Some((*a, *b));
                break 'pairs;
            }
        }
    }

    AxiomReport {
        i1_holds,
        i2_violation,
        i3_violation,
    }
}

/// Rank, maximal members, and minimal non-members of a downward closed
/// family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSummary {
    pub rank: usize,
    pub bases: BTreeSet<Subset>,
    pub circuits: BTreeSet<Subset>,
}

/// Computes the summary of a family satisfying I.1 and I.2; fails with
/// [`Error::NotDownwardClosed`] otherwise.
///
/// Bases are the members with no one element extension in the family; when
/// I.3 fails they may have different sizes. Circuits are the minimal
/// dependent sets. Under downward closure every circuit is a member plus
/// one element, so candidates are enumerated from the members directly and
/// no sweep over all 2^n subsets is needed.
pub fn summarize(family: &IndependenceFamily) -> Result<MatroidSummary> {
    let report = check_axioms(family);
    if !report.i1_holds || report.i2_violation.is_some() {
        return Err(Error::NotDownwardClosed);
    }

    let members = family.members();
    let n = family.n();
    let rank = members.iter().map(Subset::len).max().unwrap_or(0);

    let mut bases = BTreeSet::new();
    for m in members {
        let extendable = (1..=n).any(|e| !m.contains(e) && members.contains(&m.insert(e)));
        if !extendable {
            bases.insert(*m);
        }
    }

    let mut circuits = BTreeSet::new();
    for m in members {
        for e in 1..=n {
            if m.contains(e) {
                continue;
            }
            let candidate = m.insert(e);
            if members.contains(&candidate) || circuits.contains(&candidate) {
                continue;
            }
            let minimal = candidate
                .iter()
                .all(|x| members.contains(&candidate.remove(x)));
            if minimal {
                circuits.insert(candidate);
            }
        }
    }

    Ok(MatroidSummary {
        rank,
        bases,
        circuits,
    })
}

/// The linear matroid of a vector list: element i + 1 is `vectors[i]`, and
/// a subset is independent when the selected vectors are.
///
/// Built by depth first extension: only independent sets are extended, and
/// only by elements larger than the current maximum, which is complete
/// because linear independence is downward closed.
pub fn vector_matroid(vectors: &[Vector]) -> Result<IndependenceFamily> {
    let n = vectors.len();
    let ground = GroundSet::new(n)?;
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::GroundTooLarge {
            n,
            max: MAX_EXHAUSTIVE_GROUND,
        });
    }
    for v in &vectors[1..] {
        vectors[0].compatible_with(v)?;
    }

    let mut members = BTreeSet::new();
    let mut stack: Vec<(Subset, usize)> = vec![(Subset::EMPTY, 0)];
    while let Some((set, next)) = stack.pop() {
        members.insert(set);
        for e in next + 1..=n {
            let extended = set.insert(e);
            let chosen: Vec<Vector> = extended.iter().map(|i| vectors[i - 1].clone()).collect();
            if is_linearly_independent(&chosen)? {
                stack.push((extended, e));
            }
        }
    }
    IndependenceFamily::new(ground, members)
}

/// Greedy maximum weight member: elements are tried in order of decreasing
/// weight, ties broken by ascending label, and added whenever the result
/// stays in the family. Weights must be nonnegative, one per element.
///
/// On a matroid this is optimal; on a general downward closed family it can
/// be beaten by [`exhaustive_max_weight`], and that gap is a usable matroid
/// test.
pub fn greedy_max_weight(
    family: &IndependenceFamily,
    weights: &[BigRational],
) -> Result<(Subset, BigRational)> {
    let (n, _) = optimizer_preconditions(family, weights)?;

    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&a, &b| weights[b - 1].cmp(&weights[a - 1]).then(a.cmp(&b)));

    let mut current = Subset::EMPTY;
    for e in order {
        let extended = current.insert(e);
        if family.contains(&extended) {
            current = extended;
        }
    }
    let total = subset_weight(&current, weights);
    Ok((current, total))
}

/// True optimum by scanning every member; ties go to the lexicographically
/// least subset.
pub fn exhaustive_max_weight(
    family: &IndependenceFamily,
    weights: &[BigRational],
) -> Result<(Subset, BigRational)> {
    optimizer_preconditions(family, weights)?;

    let mut best = Subset::EMPTY;
    let mut best_total = BigRational::zero();
    for m in family.members() {
        let total = subset_weight(m, weights);
        if total > best_total {
            best = *m;
            best_total = total;
        }
    }
    Ok((best, best_total))
}

fn optimizer_preconditions<'a>(
    family: &IndependenceFamily,
    weights: &'a [BigRational],
) -> Result<(usize, &'a [BigRational])> {
    let n = family.n();
    if weights.len() != n {
        return Err(Error::Param(format!(
            "expected {n} weights, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(|w| w < &BigRational::zero()) {
        return Err(Error::Param("weights must be nonnegative".into()));
    }
    if !family.contains(&Subset::EMPTY) {
        return Err(Error::Param(
            "weight optimization needs the empty set to be a member".into(),
        ));
    }
    Ok((n, weights))
}

fn subset_weight(s: &Subset, weights: &[BigRational]) -> BigRational {
    s.iter().map(|e| weights[e - 1].clone()).sum()
}
