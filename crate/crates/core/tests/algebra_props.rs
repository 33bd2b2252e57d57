//! Property tests for the exact arithmetic layer. Structural facts (field
//! axioms, canonicity) are asserted directly; computed quantities (ranks,
//! kernels, sums, intersections) are cross checked against the independent
//! eliminations in `support`.

mod support;

use lisf_matroid::exactalg::{
    is_linearly_independent, subspace_sum, Field, Matrix, Scalar, Subspace, Vector,
};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(97).unwrap()),
    ]
}

fn scalars(field: Field) -> BoxedStrategy<Scalar> {
    match field {
        Field::Rationals => (-20i64..=20, 1i64..=12)
            .prop_map(move |(n, d)| Scalar::from_ratio(field, n.into(), d.into()).unwrap())
            .boxed(),
        Field::Prime(p) => (0..u64::from(p))
            .prop_map(move |r| Scalar::from_integer(field, r as i64))
            .boxed(),
    }
}

fn nonzero_scalars(field: Field) -> BoxedStrategy<Scalar> {
    scalars(field)
        .prop_filter("nonzero", |s| !s.is_zero())
        .boxed()
}

fn vectors(field: Field, dim: usize) -> BoxedStrategy<Vector> {
    prop::collection::vec(scalars(field), dim)
        .prop_map(move |cs| Vector::new(field, cs).unwrap())
        .boxed()
}

fn vector_lists() -> impl Strategy<Value = Vec<Vector>> {
    (fields(), 1usize..=4, 1usize..=5)
        .prop_flat_map(|(f, dim, count)| prop::collection::vec(vectors(f, dim), count))
}

fn q_subspaces() -> impl Strategy<Value = Subspace> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(dim, count)| {
        prop::collection::vec(vectors(Field::Rationals, dim), count)
            .prop_map(move |vs| Subspace::span(Field::Rationals, dim, &vs).unwrap())
    })
}

proptest! {
    #[test]
    fn addition_is_a_commutative_group(
        (a, b, c) in fields().prop_flat_map(|f| (scalars(f), scalars(f), scalars(f)))
    ) {
        let f = a.field();
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&Scalar::zero(f)).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg()).unwrap());
    }

    #[test]
    fn multiplication_distributes_and_inverts(
        (a, b, c) in fields().prop_flat_map(|f| (scalars(f), scalars(f), nonzero_scalars(f)))
    ) {
        let f = a.field();
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&Scalar::one(f)).unwrap(), a.clone());
        prop_assert!(c.mul(&c.inv().unwrap()).unwrap().is_one());
        prop_assert_eq!(a.div(&c).unwrap(), a.mul(&c.inv().unwrap()).unwrap());
    }

    #[test]
    fn scalar_display_round_trips(
        a in fields().prop_flat_map(scalars)
    ) {
        let parsed = Scalar::parse(a.field(), &a.to_string()).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn rank_matches_the_oracle(vs in vector_lists()) {
        let field = vs[0].field();
        let dim = vs[0].dim();
        let m = Matrix::from_rows(field, dim, &vs).unwrap();
        prop_assert_eq!(m.rank(), support::rank_of(&vs));
    }

    #[test]
    fn rref_is_idempotent_and_bounded(vs in vector_lists()) {
        let field = vs[0].field();
        let dim = vs[0].dim();
        let m = Matrix::from_rows(field, dim, &vs).unwrap();
        let r = m.rref();
        prop_assert!(r.rank <= m.rows().min(m.cols()));
        let again = r.reduced.rref();
        prop_assert_eq!(&again.reduced, &r.reduced);
        prop_assert_eq!(again.pivot_cols, r.pivot_cols);
    }

    #[test]
    fn kernel_basis_annihilates_and_has_the_right_size(vs in vector_lists()) {
        let field = vs[0].field();
        let dim = vs[0].dim();
        let m = Matrix::from_rows(field, dim, &vs).unwrap();
        let kernel = m.null_space();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for x in &kernel {
            prop_assert!(m.mul_vector(x).unwrap().is_zero());
        }
        if !kernel.is_empty() {
            prop_assert!(support::independent(&kernel));
        }
    }

    #[test]
    fn independence_agrees_with_the_oracle(vs in vector_lists()) {
        prop_assert_eq!(
            is_linearly_independent(&vs).unwrap(),
            support::independent(&vs)
        );
    }

    #[test]
    fn independence_survives_permutation_and_rescaling(
        (vs, shuffled) in vector_lists().prop_flat_map(|vs| {
            let s = Just(vs.clone()).prop_shuffle();
            (Just(vs), s)
        })
    ) {
        prop_assert_eq!(
            is_linearly_independent(&vs).unwrap(),
            is_linearly_independent(&shuffled).unwrap()
        );
    }

    #[test]
    fn rescaling_preserves_independence(
        (vs, scales) in vector_lists().prop_flat_map(|vs| {
            let f = vs[0].field();
            let n = vs.len();
            (Just(vs), prop::collection::vec(nonzero_scalars(f), n))
        })
    ) {
        let rescaled: Vec<Vector> = vs
            .iter()
            .zip(&scales)
            .map(|(v, c)| v.scale(c).unwrap())
            .collect();
        prop_assert_eq!(
            is_linearly_independent(&vs).unwrap(),
            is_linearly_independent(&rescaled).unwrap()
        );
    }

    #[test]
    fn span_is_canonical(
        (vs, shuffled, scales) in vector_lists().prop_flat_map(|vs| {
            let f = vs[0].field();
            let n = vs.len();
            (
                Just(vs.clone()),
                Just(vs).prop_shuffle(),
                prop::collection::vec(nonzero_scalars(f), n),
            )
        })
    ) {
        let field = vs[0].field();
        let dim = vs[0].dim();
        let rescaled: Vec<Vector> = shuffled
            .iter()
            .zip(&scales)
            .map(|(v, c)| v.scale(c).unwrap())
            .collect();
        let a = Subspace::span(field, dim, &vs).unwrap();
        let b = Subspace::span(field, dim, &rescaled).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.dim(), support::rank_of(&vs));
        for v in &vs {
            prop_assert!(a.contains(v).unwrap());
        }
    }

    #[test]
    fn sum_dimension_matches_the_oracle(
        (a, b) in (q_subspaces(), q_subspaces()).prop_filter(
            "same ambient space",
            |(a, b)| a.ambient_dim() == b.ambient_dim()
        )
    ) {
        let sum = subspace_sum(&[a.clone(), b.clone()]).unwrap();
        let mut stacked = a.basis_rows();
        stacked.extend(b.basis_rows());
        prop_assert_eq!(sum.dim(), support::rank_of(&stacked));
        prop_assert!(sum.contains_subspace(&a).unwrap());
        prop_assert!(sum.contains_subspace(&b).unwrap());
    }

    #[test]
    fn dimension_formula_holds(
        (a, b) in (q_subspaces(), q_subspaces()).prop_filter(
            "same ambient space",
            |(a, b)| a.ambient_dim() == b.ambient_dim()
        )
    ) {
        let sum = subspace_sum(&[a.clone(), b.clone()]).unwrap();
        let meet_basis = support::intersection_q(&a, &b);
        let meet_dim = support::rank_q(&meet_basis);
        prop_assert_eq!(sum.dim() + meet_dim, a.dim() + b.dim());
        // The intersection vectors really lie in both subspaces.
        for row in &meet_basis {
            let v = Vector::new(
                Field::Rationals,
                row.iter().map(|x| Scalar::from_rational(x.clone())).collect(),
            )
            .unwrap();
            prop_assert!(a.contains(&v).unwrap());
            prop_assert!(b.contains(&v).unwrap());
        }
    }

    #[test]
    fn projective_representative_is_scale_invariant(
        (v, c) in (fields(), 1usize..=4)
            .prop_flat_map(|(f, d)| (vectors(f, d), nonzero_scalars(f)))
    ) {
        let scaled = v.scale(&c).unwrap();
        prop_assert_eq!(v.projective_rep(), scaled.projective_rep());
        if let Some(rep) = v.projective_rep() {
            let lead = rep.coords().iter().find(|x| !x.is_zero()).unwrap();
            prop_assert!(lead.is_one());
        } else {
            prop_assert!(v.is_zero());
        }
    }
}
