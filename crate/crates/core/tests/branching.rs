use ewsg::branching::{branch_sl, weyl_dim};
use ewsg::spectrum::Chain;
use ewsg::Weight;
use proptest::prelude::*;

fn conserved(chain: Chain, c: Vec<i64>) -> Result<(), TestCaseError> {
    let (small, big) = chain.groups().unwrap();
    let lambda = Weight::new(&[big], vec![c]).unwrap();
    let b = chain.branch(&lambda).unwrap();
    let total: u128 = b
        .entries
        .iter()
        .map(|(mu, m)| weyl_dim(small, mu).unwrap() * u128::from(*m))
        .sum();
    prop_assert_eq!(total, weyl_dim(big, &lambda).unwrap());
    Ok(())
}

fn chain() -> impl Strategy<Value = Chain> {
    prop_oneof![(2usize..=5).prop_map(Chain::Sl), (3usize..=8).prop_map(Chain::Spin)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn dimension_is_conserved(
        (ch, c) in chain().prop_flat_map(|ch| {
            let r = ch.groups().unwrap().1.rank();
            (Just(ch), proptest::collection::vec(0i64..=3, r))
        })
    ) {
        conserved(ch, c)?;
    }
}

#[test]
fn sl3_adjoint_to_sl2() {
    let f = ewsg::FactorType::sl(3);
    let b = branch_sl(2, &Weight::new(&[f], vec![vec![1, 1]]).unwrap()).unwrap();
    assert_eq!(b.multiplicity(&[0]), 1);
    assert_eq!(b.multiplicity(&[1]), 2);
    assert_eq!(b.multiplicity(&[2]), 1);
    assert_eq!(b.total_multiplicity(), 4);
}

#[test]
fn spin_restrictions_are_multiplicity_free() {
    for n in 3..=8 {
        let ch = Chain::Spin(n);
        let big = ch.groups().unwrap().1;
        for c in ewsg::spectrum::dominant_up_to(big.rank(), 3) {
            let b = ch.branch(&Weight::new(&[big], vec![c]).unwrap()).unwrap();
            assert!(b.is_multiplicity_free(), "Spin {n}");
        }
    }
}

#[test]
fn non_dominant_input_is_rejected() {
    let f = ewsg::FactorType::sl(3);
    assert!(branch_sl(2, &Weight::new(&[f], vec![vec![-1, 0]]).unwrap()).is_err());
}
