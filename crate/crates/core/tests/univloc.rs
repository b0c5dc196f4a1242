use std::sync::Arc;

use dhom_core::derived::{indec_derived, DerivedIndec, DERIVED_DIM_CAP};
use dhom_core::higher::HomologicalPair;
use dhom_core::homoepi::construct_homoepi;
use dhom_core::modcat::DEFAULT_DIM_CAP;
use dhom_core::quivalg::{build_algebra, nakayama_spec, AlgRef};
use dhom_core::univloc::*;

fn setup(n: usize, l: usize, d: usize) -> (HomologicalPair, Vec<DerivedIndec>) {
    let a: AlgRef = Arc::new(build_algebra(&nakayama_spec(n, l, d)).unwrap());
    let pair = HomologicalPair::from_search(&a, d, DEFAULT_DIM_CAP).unwrap();
    let cands = indec_derived(&a, pair.gldim + 1, DERIVED_DIM_CAP).unwrap();
    (pair, cands)
}

// candidate orbits: f1, f2, s2, f3, f4, x
const F1: usize = 0;
const F2: usize = 1;
const S2: usize = 2;
const F3: usize = 3;
const F4: usize = 4;
const X: usize = 5;

#[test]
fn localization_rows_on_fixture() {
    let (pair, cands) = setup(3, 2, 2);
    let expected: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = vec![
        (vec![0], vec![F1], vec![F2, F3, X]),
        (vec![1], vec![F2], vec![S2, F3, F4]),
        (vec![2], vec![F3], vec![F1, F4, X]),
        (vec![3], vec![F4], vec![F1, F2, S2]),
        (vec![0, 2], vec![F1, F3], vec![X]),
        (vec![1, 3], vec![F2, F4], vec![S2]),
        (vec![0, 1, 2, 3], vec![F1, F2, S2, F3, F4, X], vec![]),
    ];
    for (w, uperp, u) in expected {
        let epi = construct_homoepi(&pair, &pair.sub(&w)).unwrap();
        let data = u_from_phi(&epi.phi, &cands).unwrap();
        assert_eq!(data.u, u, "{w:?}");
        assert_eq!(data.uperp, uperp, "{w:?}");
        assert!(check_property_1(&data, &cands).pass);
        assert!(check_property_2(&data, &pair, &cands).unwrap().pass);
        assert!(intersection_lemma_check(&data, &pair, &cands, &epi.pushdown).unwrap().pass);
        assert!(is_thick(&data.u, &cands));
    }
}

#[test]
fn factorization_through_itself_is_identity() {
    let (pair, cands) = setup(3, 2, 2);
    let epi = construct_homoepi(&pair, &pair.sub(&[0, 2])).unwrap();
    let g = factor_through(&epi.phi, &epi.phi).unwrap();
    assert!(g.matrix.is_identity());
    let data = u_from_phi(&epi.phi, &cands).unwrap();
    let one = construct_homoepi(&pair, &pair.sub(&[0])).unwrap();
    let res = initiality_proxy(&data, &epi.phi, &cands, &[("phi_1".into(), one.phi.clone())]).unwrap();
    assert_eq!(res[0].outcome, InitialityOutcome::Factored { unique: true });
    let data1 = u_from_phi(&one.phi, &cands).unwrap();
    let res = initiality_proxy(&data1, &one.phi, &cands, &[("phi_5".into(), epi.phi.clone())]).unwrap();
    assert!(matches!(res[0].outcome, InitialityOutcome::Skipped { .. }));
}

#[test]
fn fixture_report() {
    let (pair, cands) = setup(3, 2, 2);
    let r = theorem_b_report(&pair, &cands).unwrap();
    assert_eq!(r.sizes, [7, 7, 7, 7]);
    assert!(r.pass(), "{:?}", r.anomalies);
    assert!(r.rows.iter().all(|row| row.round_trip));
}

#[test]
fn hereditary_report() {
    let (pair, cands) = setup(2, 0, 1);
    let r = theorem_b_report(&pair, &cands).unwrap();
    assert_eq!(r.sizes, [4, 4, 4, 4]);
    assert!(r.pass(), "{:?}", r.anomalies);
    assert!(r.rows.iter().all(|row| row.u_all_stalks));
}
