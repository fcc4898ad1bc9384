use std::collections::BTreeSet;

use bruhat_core::coxeter::{CoxeterSystem, CoxeterType, Word};
use bruhat_core::fiber::BooleanCube;
use bruhat_core::hecke::{bruhat_leq, demazure, is_reduced, sorting_subword, subword, weak_leq, IndexSet};
use bruhat_core::oracle::PermutationModel;
use bruhat_core::poset::bruhat_lower_set;
use bruhat_core::subword::SubwordComplex;
use bruhat_core::totalpos::{verify_additive, verify_braid_identity};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn kinds() -> Vec<CoxeterType> {
    vec![
        CoxeterType::A(2),
        CoxeterType::A(3),
        CoxeterType::B(2),
        CoxeterType::B(3),
        CoxeterType::D(4),
        CoxeterType::I2(5),
        CoxeterType::I2(8),
    ]
}

fn kind_and_word(max_len: usize) -> impl Strategy<Value = (CoxeterType, Word)> {
    prop::sample::select(kinds()).prop_flat_map(move |kind| {
        let rank = kind.rank() as u8;
        prop::collection::vec(1..=rank, 0..=max_len).prop_map(move |w| (kind, Word::new(w)))
    })
}

fn system(kind: CoxeterType) -> CoxeterSystem {
    CoxeterSystem::named(kind).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=15).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_matches_permutation_model((kind, w) in kind_and_word(14), (_, v) in kind_and_word(14)) {
        let sys = system(kind);
        let rank = kind.rank() as u8;
        let v = Word::new(v.letters().iter().map(|&s| (s - 1) % rank + 1).collect());
        let model = PermutationModel::for_type(kind).unwrap();
        let (a, b) = (sys.canonicalize(&w).unwrap(), sys.canonicalize(&v).unwrap());
        prop_assert_eq!(a == b, model.product(&w) == model.product(&v));
        prop_assert_eq!(model.product(&w), model.product(a.canonical_word()));
        prop_assert!(is_reduced(&sys, a.canonical_word()).unwrap());
    }

    #[test]
    fn length_parity_and_bound((kind, w) in kind_and_word(16)) {
        let sys = system(kind);
        let e = sys.canonicalize(&w).unwrap();
        prop_assert!(e.length() <= w.len());
        prop_assert_eq!(e.length() % 2, w.len() % 2);
    }

    #[test]
    fn inverse_is_an_involution_reversing_words((kind, w) in kind_and_word(16)) {
        let sys = system(kind);
        let e = sys.canonicalize(&w).unwrap();
        let inv = sys.inverse(&e).unwrap();
        prop_assert_eq!(&inv, &sys.canonicalize(&w.reversed()).unwrap());
        prop_assert_eq!(sys.inverse(&inv).unwrap(), e.clone());
        prop_assert_eq!(inv.length(), e.length());
        prop_assert!(sys.multiply(&e, &inv).unwrap().is_identity());
    }

    #[test]
    fn left_descents_are_right_descents_of_inverse((kind, w) in kind_and_word(16)) {
        let sys = system(kind);
        let e = sys.canonicalize(&w).unwrap();
        let inv = sys.inverse(&e).unwrap();
        prop_assert_eq!(sys.left_descents(&e).unwrap(), sys.right_descents(&inv).unwrap());
        for s in sys.right_descents(&e).unwrap() {
            prop_assert_eq!(sys.mult_right(&e, s).unwrap().length() + 1, e.length());
        }
    }

    #[test]
    fn demazure_product_is_monotone_and_dominates((kind, w) in kind_and_word(12), mask in any::<u64>()) {
        let sys = system(kind);
        let top = demazure(&sys, &w).unwrap();
        let set = IndexSet::from_mask(mask & ((1u64 << w.len()) - 1));
        let sub = demazure(&sys, &subword(&w, &set).unwrap()).unwrap();
        prop_assert!(bruhat_leq(&sys, &sub, &top).unwrap());
        prop_assert!(bruhat_leq(&sys, &sys.canonicalize(&w).unwrap(), &top).unwrap());
        if is_reduced(&sys, &w).unwrap() {
            prop_assert_eq!(top, sys.canonicalize(&w).unwrap());
        }
    }

    #[test]
    fn weak_order_refines_into_bruhat((kind, w) in kind_and_word(10), (_, v) in kind_and_word(10)) {
        let sys = system(kind);
        let rank = kind.rank() as u8;
        let v = Word::new(v.letters().iter().map(|&s| (s - 1) % rank + 1).collect());
        let (a, b) = (sys.canonicalize(&w).unwrap(), sys.canonicalize(&v).unwrap());
        if weak_leq(&sys, &a, &b).unwrap() {
            prop_assert!(bruhat_leq(&sys, &a, &b).unwrap());
        }
        if bruhat_leq(&sys, &a, &b).unwrap() && bruhat_leq(&sys, &b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn additive_relation(i in 1usize..4, t1 in rational(), t2 in rational()) {
        prop_assert!(verify_additive(4, i, &t1, &t2).unwrap());
    }

    #[test]
    fn braid_identity(i in 1usize..3, t1 in rational(), t2 in rational(), t3 in rational()) {
        prop_assume!(&t1 + &t3 != BigRational::from_integer(BigInt::from(0)));
        prop_assert!(verify_braid_identity(4, i, &t1, &t2, &t3).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fibers_partition_the_cube((kind, w) in kind_and_word(9)) {
        let sys = system(kind);
        let q = sys.canonicalize(&w).unwrap().canonical_word().clone();
        let cube = BooleanCube::new(&sys, &q).unwrap();
        let mut seen = BTreeSet::new();
        let lower = bruhat_lower_set(&sys, cube.top()).unwrap();
        for u in &lower {
            let fiber = cube.fiber(u);
            prop_assert!(!fiber.is_empty(), "f must be onto [e, w]");
            for s in fiber {
                prop_assert!(seen.insert(s));
            }
        }
        prop_assert_eq!(seen.len(), 1usize << q.len());
    }

    #[test]
    fn sorting_subword_spells_u_and_fiber_duality((kind, w) in kind_and_word(8)) {
        let sys = system(kind);
        let q = sys.canonicalize(&w).unwrap().canonical_word().clone();
        let cube = BooleanCube::new(&sys, &q).unwrap();
        for u in bruhat_lower_set(&sys, cube.top()).unwrap() {
            let s = sorting_subword(&sys, &q, &u).unwrap();
            prop_assert_eq!(s.len(), u.length());
            prop_assert_eq!(&sys.canonicalize(&subword(&q, &s).unwrap()).unwrap(), &u);
            prop_assert_eq!(cube.f(&s).unwrap(), &u);
            prop_assert_eq!(cube.fiber_up(&u).unwrap(), cube.fiber_up_via_complex(&u).unwrap());
            let complex = SubwordComplex::build(&sys, &q, &u).unwrap();
            prop_assert_eq!(complex.dimension(), (q.len() - u.length()) as isize - 1);
        }
    }
}
