use ewsg::branching::weyl_dim;
use ewsg::weight::{dual, TorusElement};
use ewsg::{FactorType, Weight, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn factor() -> impl Strategy<Value = FactorType> {
    prop_oneof![
        (2usize..=5).prop_map(FactorType::sl),
        (1usize..=3).prop_map(|k| FactorType::sp(2 * k)),
        (3usize..=8).prop_map(FactorType::so),
    ]
}

fn coeffs(f: FactorType, lo: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=3i64, f.rank())
}

fn nonzero_q() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=4)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn integral(w: &Weight) -> bool {
    w.to_epsilon_coords().iter().flatten().all(|x| x.is_integer())
}

fn torus(f: FactorType) -> impl Strategy<Value = TorusElement> {
    proptest::collection::vec(nonzero_q(), f.rank()).prop_map(move |p| TorusElement::new(&[f], vec![p]).unwrap())
}

proptest! {
    #[test]
    fn torus_evaluation_is_a_character(
        (f, c, t1, t2) in factor().prop_flat_map(|f| (Just(f), coeffs(f, -3), torus(f), torus(f)))
    ) {
        let w = Weight::new(&[f], vec![c]).unwrap();
        prop_assume!(integral(&w));
        let lhs = w.eval_on_torus(&t1.mul(&t2)).unwrap();
        let rhs = w.eval_on_torus(&t1).unwrap() * w.eval_on_torus(&t2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_add_on_the_torus(
        (f, a, b, t) in factor().prop_flat_map(|f| (Just(f), coeffs(f, -3), coeffs(f, -3), torus(f)))
    ) {
        let wa = Weight::new(&[f], vec![a]).unwrap();
        let wb = Weight::new(&[f], vec![b]).unwrap();
        prop_assume!(integral(&wa) && integral(&wb));
        let sum = &wa + &wb;
        prop_assert_eq!(
            sum.eval_on_torus(&t).unwrap(),
            wa.eval_on_torus(&t).unwrap() * wb.eval_on_torus(&t).unwrap()
        );
    }

    #[test]
    fn epsilon_round_trip((f, c) in factor().prop_flat_map(|f| (Just(f), coeffs(f, -3)))) {
        let w = Weight::new(&[f], vec![c]).unwrap();
        let eps = w.to_epsilon_coords();
        prop_assert_eq!(Weight::from_epsilon_coords(&[f], &eps).unwrap(), w);
    }

    #[test]
    fn duality_is_an_involution_preserving_dimension(
        (f, c) in factor().prop_flat_map(|f| (Just(f), coeffs(f, 0)))
    ) {
        let d = dual(f, &c);
        prop_assert_eq!(dual(f, &d), c.clone());
        let w = Weight::new(&[f], vec![c]).unwrap();
        let wd = Weight::new(&[f], vec![d]).unwrap();
        prop_assert_eq!(weyl_dim(f, &w).unwrap(), weyl_dim(f, &wd).unwrap());
    }
}

#[test]
fn spin_weights_do_not_evaluate_on_the_orthogonal_torus() {
    let f = FactorType::so(7);
    let spin = Weight::new(&[f], vec![vec![0, 0, 1]]).unwrap();
    let two = Q::from_integer(2.into());
    let t = TorusElement::new(&[f], vec![vec![two.clone(), two.clone(), two]]).unwrap();
    assert!(spin.eval_on_torus(&t).is_err());
}

#[test]
fn zero_torus_parameter_is_rejected() {
    let f = FactorType::sl(3);
    assert!(TorusElement::new(&[f], vec![vec![Q::zero(), Q::from_integer(1.into())]]).is_err());
}

#[test]
fn known_dimensions() {
    let cases: &[(FactorType, &[i64], u128)] = &[
        (FactorType::sl(3), &[1, 1], 8),
        (FactorType::sl(4), &[0, 1, 0], 6),
        (FactorType::sp(4), &[0, 1], 5),
        (FactorType::sp(6), &[1, 0, 0], 6),
        (FactorType::so(7), &[0, 0, 1], 8),
        (FactorType::so(8), &[0, 0, 0, 1], 8),
        (FactorType::so(5), &[2, 0], 14),
    ];
    for (f, c, d) in cases {
        let w = Weight::new(&[*f], vec![c.to_vec()]).unwrap();
        assert_eq!(weyl_dim(*f, &w).unwrap(), *d, "{f} {c:?}");
    }
}
