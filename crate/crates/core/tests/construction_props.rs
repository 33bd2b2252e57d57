//! Property tests for the selection independence system builder and the
//! two structured instance shapes. Expected matroids are rebuilt from
//! scratch with the oracles in `support` rather than through the library.

mod support;

use std::collections::BTreeSet;

use lisf_matroid::constructions::{
    decomposition_hypotheses, direction_vectors, line_hypotheses, lisf_matroid,
    random_decomposition_instance, random_line_instance, DirectSumDecomposition,
};
use lisf_matroid::exactalg::{Field, Scalar, Subspace, Vector};
use lisf_matroid::matroid::{
    check_axioms, exhaustive_max_weight, greedy_max_weight, GroundSet, IndependenceFamily, Subset,
};
use lisf_matroid::setfamily::{SetFamily, VectorSet, VectorSetKind};
use num_rational::BigRational;
use proptest::prelude::*;

fn member_vectors(field: Field, dim: usize) -> BoxedStrategy<Vector> {
    match field {
        Field::Rationals => prop::collection::vec(-3i64..=3, dim)
            .prop_map(move |cs| Vector::from_integers(field, &cs))
            .boxed(),
        Field::Prime(p) => prop::collection::vec(0..i64::from(p), dim)
            .prop_map(move |cs| Vector::from_integers(field, &cs))
            .boxed(),
    }
}

fn finite_sets(field: Field, dim: usize) -> BoxedStrategy<VectorSet> {
    prop::collection::vec(member_vectors(field, dim), 1..=3)
        .prop_map(|ms| VectorSet::finite(ms).unwrap())
        .boxed()
}

fn punctured_sets(field: Field, dim: usize) -> BoxedStrategy<VectorSet> {
    prop::collection::vec(member_vectors(field, dim), 1..=2)
        .prop_map(move |vs| Subspace::span(field, dim, &vs).unwrap())
        .prop_filter("positive dimension", |s| s.dim() > 0)
        .prop_map(|s| VectorSet::punctured(s).unwrap())
        .boxed()
}

fn mixed_families() -> impl Strategy<Value = SetFamily> {
    (
        prop_oneof![
            Just(Field::Rationals),
            Just(Field::prime(2).unwrap()),
            Just(Field::prime(5).unwrap()),
        ],
        2usize..=3,
    )
        .prop_flat_map(|(f, dim)| {
            prop::collection::vec(
                prop_oneof![finite_sets(f, dim), punctured_sets(f, dim)],
                1..=3,
            )
            .prop_map(move |sets| SetFamily::new(f, dim, sets).unwrap())
        })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(0i64..=6, n)
        .prop_map(|ws| ws.into_iter().map(|w| BigRational::from_integer(w.into())).collect())
}

/// Linear matroid membership rebuilt with the independent rank oracle.
fn oracle_linear_members(columns: &[Vector]) -> BTreeSet<Subset> {
    let ground = GroundSet::new(columns.len()).unwrap();
    ground
        .subsets()
        .filter(|s| {
            let chosen: Vec<Vector> = s.iter().map(|e| columns[e - 1].clone()).collect();
            support::rank_of(&chosen) == chosen.len()
        })
        .collect()
}

/// Summand index per set, recomputed with the oracle: a subspace lies in a
/// summand when stacking its basis onto the summand basis does not raise
/// the rank.
fn oracle_assignment(family: &SetFamily, decomposition: &DirectSumDecomposition) -> Vec<usize> {
    family
        .sets()
        .iter()
        .map(|set| {
            let VectorSetKind::Punctured(w) = set.kind() else {
                panic!("decomposition instances have punctured sets");
            };
            decomposition
                .summands()
                .iter()
                .position(|u| {
                    let mut stacked = u.basis_rows();
                    stacked.extend(w.basis_rows());
                    support::rank_of(&stacked) == u.dim()
                })
                .expect("every set lies in a summand")
        })
        .collect()
}

proptest! {
    #[test]
    fn systems_always_satisfy_the_hereditary_axioms(fam in mixed_families()) {
        let system = lisf_matroid(&fam).unwrap();
        let report = check_axioms(&system);
        prop_assert!(report.i1_holds);
        prop_assert_eq!(report.i2_violation, None);
    }

    #[test]
    fn membership_agrees_with_subfamily_verdicts(fam in mixed_families()) {
        let system = lisf_matroid(&fam).unwrap();
        let ground = GroundSet::new(fam.len()).unwrap();
        for s in ground.subsets() {
            let sets: Vec<VectorSet> = s.iter().map(|i| fam.set(i - 1).clone()).collect();
            let sub = SetFamily::new(fam.field(), fam.ambient_dim(), sets).unwrap();
            prop_assert_eq!(system.contains(&s), sub.is_lisf().unwrap().holds());
        }
    }

    #[test]
    fn line_instances_match_the_oracle_linear_matroid(
        (seed, sets, dim, field, loops) in (
            any::<u64>(),
            1usize..=5,
            2usize..=4,
            prop_oneof![Just(Field::Rationals), Just(Field::prime(5).unwrap())],
            0.0f64..=0.4,
        )
    ) {
        let fam = random_line_instance(seed, sets, dim, field, 3, loops).unwrap();
        prop_assert!(line_hypotheses(&fam).ok());

        let dirs = direction_vectors(&fam).unwrap();
        // Directions describe the sets: zero for sets with a zero member,
        // otherwise the shared projective representative.
        for (set, dir) in fam.sets().iter().zip(&dirs) {
            let VectorSetKind::Finite(ms) = set.kind() else { unreachable!() };
            if dir.is_zero() {
                prop_assert!(ms.iter().any(Vector::is_zero));
            } else {
                for m in ms {
                    let rep = m.projective_rep();
                    prop_assert_eq!(rep.as_ref(), Some(dir));
                }
            }
        }

        let system = lisf_matroid(&fam).unwrap();
        prop_assert!(check_axioms(&system).is_matroid());
        prop_assert_eq!(system.members(), &oracle_linear_members(&dirs));
    }

    #[test]
    fn decomposition_instances_match_the_oracle_partition_matroid(
        (seed, k, n, m) in (any::<u64>(), 1usize..=3, 2usize..=3, 1usize..=5)
    ) {
        let l = k * n + 1;
        let (fam, decomposition) = random_decomposition_instance(seed, k, n, m, l).unwrap();
        prop_assert!(decomposition_hypotheses(&fam, &decomposition).ok());

        let system = lisf_matroid(&fam).unwrap();
        prop_assert!(check_axioms(&system).is_matroid());

        let assignment = oracle_assignment(&fam, &decomposition);
        let ground = GroundSet::new(m).unwrap();
        let expected: BTreeSet<Subset> = ground
            .subsets()
            .filter(|s| {
                let mut seen: Vec<usize> = s.iter().map(|e| assignment[e - 1]).collect();
                let len = seen.len();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == len
            })
            .collect();
        prop_assert_eq!(system.members(), &expected);
    }

    #[test]
    fn scaling_fixes_the_whole_system(
        (fam, scales) in mixed_families().prop_flat_map(|f| {
            let field = f.field();
            let n = f.len();
            let scale = match field {
                Field::Rationals => (-5i64..=5)
                    .prop_filter("nonzero", |x| *x != 0)
                    .prop_map(move |x| Scalar::from_integer(field, x))
                    .boxed(),
                Field::Prime(p) => (1..i64::from(p))
                    .prop_map(move |x| Scalar::from_integer(field, x))
                    .boxed(),
            };
            (Just(f), prop::collection::vec(scale, n))
        })
    ) {
        let scaled = fam.scale_family(&scales).unwrap();
        prop_assert_eq!(lisf_matroid(&fam).unwrap(), lisf_matroid(&scaled).unwrap());
    }

    #[test]
    fn symmetrizing_fixes_the_whole_system(fam in mixed_families()) {
        let sym = fam.symmetrize();
        prop_assert_eq!(lisf_matroid(&fam).unwrap(), lisf_matroid(&sym).unwrap());
    }

    #[test]
    fn greedy_never_beats_exhaustive(
        (fam, ws) in mixed_families().prop_flat_map(|f| {
            let n = f.len();
            (Just(f), weights(n))
        })
    ) {
        let system = lisf_matroid(&fam).unwrap();
        let (greedy_set, greedy_total) = greedy_max_weight(&system, &ws).unwrap();
        let (_, best_total) = exhaustive_max_weight(&system, &ws).unwrap();
        prop_assert!(system.contains(&greedy_set));
        prop_assert!(greedy_total <= best_total);
    }

    #[test]
    fn greedy_is_optimal_on_line_instances(
        (seed, sets, ws) in (any::<u64>(), 1usize..=5, prop::num::u8::ANY)
            .prop_flat_map(|(seed, sets, _)| {
                (Just(seed), Just(sets), weights(sets))
            })
    ) {
        let fam = random_line_instance(seed, sets, 3, Field::Rationals, 2, 0.2).unwrap();
        let system = lisf_matroid(&fam).unwrap();
        let (_, greedy_total) = greedy_max_weight(&system, &ws).unwrap();
        let (_, best_total) = exhaustive_max_weight(&system, &ws).unwrap();
        prop_assert_eq!(greedy_total, best_total);
    }
}

/// The non-matroid fixture where the greedy gap is visible: weights
/// (3, 5, 3) make greedy stop at total 5 while the best member reaches 6.
#[test]
fn greedy_gap_on_the_disk_fixture() {
    let fam = lisf_matroid::constructions::disk_sample_family();
    let system = lisf_matroid(&fam).unwrap();
    let ws: Vec<BigRational> = [3, 5, 3]
        .iter()
        .map(|&w| BigRational::from_integer(w.into()))
        .collect();
    let (greedy_set, greedy_total) = greedy_max_weight(&system, &ws).unwrap();
    let (best_set, best_total) = exhaustive_max_weight(&system, &ws).unwrap();
    assert_eq!(greedy_set, Subset::from_elements(&[2]).unwrap());
    assert_eq!(best_set, Subset::from_elements(&[1, 3]).unwrap());
    assert!(greedy_total < best_total);
    assert!(!check_axioms(&system).is_matroid());
}

/// Fixture families are stable: rebuilding them twice gives identical
/// families and identical systems.
#[test]
fn fixture_families_are_reproducible() {
    use lisf_matroid::constructions::{disk_sample_family, plane_sample_family};
    assert_eq!(disk_sample_family(), disk_sample_family());
    assert_eq!(plane_sample_family(), plane_sample_family());
    let golden =
        IndependenceFamily::from_label_lists(3, &[&[], &[1], &[2], &[3], &[1, 3]]).unwrap();
    assert_eq!(lisf_matroid(&disk_sample_family()).unwrap(), golden);
    assert_eq!(lisf_matroid(&plane_sample_family()).unwrap(), golden);
}
