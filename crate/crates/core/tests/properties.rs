use std::sync::Arc;

use dhom_core::derived::{hyper_hom, indec_derived, same_orbit, ChainMap, DerivedIndec, ProjComplex, DERIVED_DIM_CAP};
use dhom_core::modcat::{global_dimension, indecomposables, DEFAULT_DIM_CAP};
use dhom_core::quivalg::{build_algebra, nakayama_dimension, nakayama_spec, AlgRef};
use proptest::prelude::*;

fn fixture_orbits() -> &'static Vec<DerivedIndec> {
    use std::sync::OnceLock;
    static ORBITS: OnceLock<Vec<DerivedIndec>> = OnceLock::new();
    ORBITS.get_or_init(|| {
        let a: AlgRef = Arc::new(build_algebra(&nakayama_spec(3, 2, 2)).unwrap());
        indec_derived(&a, 3, DERIVED_DIM_CAP).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nakayama_dimension_matches_closed_form(n in 1usize..6, l in 2usize..7) {
        let a = build_algebra(&nakayama_spec(n, l, 1)).unwrap();
        prop_assert_eq!(a.dim(), nakayama_dimension(n, l));
    }

    #[test]
    fn nakayama_module_count(n in 1usize..5, l in 2usize..6) {
        // k A_n / rad^l has one indecomposable per interval of length at most l
        let a: AlgRef = Arc::new(build_algebra(&nakayama_spec(n, l, 1)).unwrap());
        let count = indecomposables(&a, DEFAULT_DIM_CAP).unwrap().len();
        let expected: usize = (1..=n).map(|len| if len <= l { n - len + 1 } else { 0 }).sum();
        prop_assert_eq!(count, expected);
        let gl = global_dimension(&a).unwrap();
        prop_assert!(gl <= n);
    }

    #[test]
    fn shifts_are_invertible_and_move_homology(i in 0usize..6, n in -4i64..5) {
        let x = &fixture_orbits()[i].complex;
        let y = x.shift(n);
        prop_assert_eq!(&y.shift(-n), x);
        let hx: Vec<(i64, Vec<usize>)> = x.homology_dims().into_iter().map(|(p, d)| (p - n, d)).collect();
        prop_assert_eq!(y.homology_dims(), hx);
        prop_assert!(same_orbit(x, &y));
    }

    #[test]
    fn hom_is_shift_invariant(i in 0usize..6, j in 0usize..6, n in -3i64..4, k in -2i64..3) {
        let x = &fixture_orbits()[i].complex;
        let y = &fixture_orbits()[j].complex;
        prop_assert_eq!(hyper_hom(x, y, n), hyper_hom(&x.shift(k), &y.shift(k), n));
    }

    #[test]
    fn cone_of_identity_is_acyclic(i in 0usize..6, n in -2i64..3) {
        let x: ProjComplex = fixture_orbits()[i].complex.shift(n);
        prop_assert!(ChainMap::identity(&x).cone().is_acyclic());
    }

    #[test]
    fn distinct_orbits_stay_distinct(i in 0usize..6, j in 0usize..6, n in -3i64..4) {
        let x = &fixture_orbits()[i].complex;
        let y = fixture_orbits()[j].complex.shift(n);
        prop_assert_eq!(same_orbit(x, &y), i == j);
    }
}

#[test]
fn radical_one_is_not_admissible() {
    let err = build_algebra(&nakayama_spec(3, 1, 1)).err().expect("arrows in the ideal");
    assert!(matches!(err, dhom_core::Error::NonAdmissible(_)), "{err}");
}
