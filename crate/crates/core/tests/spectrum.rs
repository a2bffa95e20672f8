use ewsg::spectrum::{case12_generators, case1_table, case_spectrum, diag_spectrum, Chain};
use ewsg::weight::rank_of_weights;
use ewsg::Execution;

#[test]
fn case1_has_2n_free_generators() {
    for n in 2..=4 {
        let s = case_spectrum(1, n, 3, Execution::Parallel).unwrap();
        assert_eq!(s.indecomposables.len(), 2 * n);
        assert!(s.stable);
        let g = case12_generators(1, n).unwrap();
        assert_eq!(g, case1_table(n));
        assert_eq!(rank_of_weights(&g), 2 * n);
    }
}

#[test]
fn case2_has_n_free_generators() {
    for n in 3..=6 {
        let s = case_spectrum(2, n, 3, Execution::Parallel).unwrap();
        assert_eq!(s.indecomposables.len(), n);
        assert!(s.stable && s.multiplicity_free);
        assert_eq!(rank_of_weights(&case12_generators(2, n).unwrap()), n);
    }
}

#[test]
fn execution_modes_agree() {
    let a = ewsg::spectrum::diag_spectrum_with(Chain::Spin(6), 3, Execution::Sequential).unwrap();
    let b = ewsg::spectrum::diag_spectrum_with(Chain::Spin(6), 3, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, diag_spectrum(Chain::Spin(6), 3).unwrap());
}

#[test]
fn out_of_range() {
    assert!(case_spectrum(1, 1, 3, Execution::Sequential).is_err());
    assert!(case_spectrum(3, 3, 3, Execution::Sequential).is_err());
}
