use ewsg::cases::{grid, CaseSpec, Params};
use ewsg::semigroup::{
    certify_case, check_irreducible_a1, presentation_for, sigma_set, solve_in_basis, SigmaSet, SplitOutcome,
};
use ewsg::{ExtendedWeight, Weight};
use proptest::prelude::*;

fn specs() -> Vec<CaseSpec> {
    (3..=8u8)
        .flat_map(|c| grid(c).into_iter().take(4).map(move |p| CaseSpec::new(c, p).unwrap()))
        .collect()
}

#[test]
fn generators_solve_to_unit_vectors() {
    for spec in specs() {
        let (pres, _) = presentation_for(&spec).unwrap();
        let gens = pres.gens();
        for (i, g) in gens.iter().enumerate() {
            let mut e = vec![0; gens.len()];
            e[i] = 1;
            assert_eq!(solve_in_basis(g, &pres).unwrap(), Some(e.clone()));
            for (j, h) in gens.iter().enumerate() {
                let mut f = e.clone();
                f[j] += 1;
                assert_eq!(solve_in_basis(&(g + h), &pres).unwrap(), Some(f));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn sigma_set_agrees_with_membership(idx in 0usize..24, seed in proptest::collection::vec(-2i64..=3, 12)) {
        let all = specs();
        let spec = &all[idx % all.len()];
        let (pres, _) = presentation_for(spec).unwrap();
        let f = &spec.factors;
        let mut it = seed.iter().copied().cycle();
        let coeffs: Vec<Vec<i64>> = f.iter().map(|x| (0..x.rank()).map(|_| it.next().unwrap()).collect()).collect();
        let mu = Weight::new(f, coeffs).unwrap();
        let s = sigma_set(&mu, &pres).unwrap();
        for sigma in -50..=50 {
            let member = solve_in_basis(&ExtendedWeight::new(mu.clone(), sigma), &pres).unwrap().is_some();
            prop_assert_eq!(s.contains(sigma), member, "sigma {} for {:?}", sigma, mu);
        }
    }
}

#[test]
fn case3_n3_progressions() {
    let spec = CaseSpec::new(3, Params::new(3, 1, 0)).unwrap();
    let (pres, names) = presentation_for(&spec).unwrap();
    let d = names.iter().position(|n| n == "D").unwrap();
    let cert = check_irreducible_a1(d, &pres).unwrap();
    assert!(cert.irreducible);
    let split = cert
        .splits
        .iter()
        .find(|s| s.mu1.coeffs()[0] == [0, 1])
        .expect("split pi_2 + phi_1");
    assert_eq!(split.s1.render(), "{-2 + 6s : s <= 0}");
    assert_eq!(split.s2.render(), "{-3 + 6s : s <= 0}");
    assert_eq!(split.outcome, SplitOutcome::NoCommonCharacter);
    for p in -5..=0 {
        assert!(split.s1.contains(6 * p - 2));
    }
    for q in 1..=5 {
        assert!(split.s2.contains(-6 * q + 3));
    }
    assert!(split.s1.intersect(&split.s2.reflect(1)).is_empty());
}

#[test]
fn witnesses_take_the_stated_values() {
    for (case, p) in [(3u8, Params::new(3, 2, 0)), (8, Params::new(2, 1, 0))] {
        let spec = CaseSpec::new(case, p).unwrap();
        let verdicts = certify_case(&spec).unwrap();
        let a2 = verdicts.iter().find_map(|v| v.a2.clone()).expect("witness");
        assert!(a2.unique_split);
        assert_eq!(a2.f_i, ewsg::matrix::q(-1));
        assert_eq!(a2.f_j, ewsg::matrix::q(0));
        assert!(a2.irreducible);
    }
}

#[test]
fn every_generator_is_certified() {
    for spec in specs() {
        for v in certify_case(&spec).unwrap() {
            assert!(v.irreducible, "case {} {}: {}", spec.case, spec.params, v.name);
        }
    }
}

#[test]
fn sigma_set_operations() {
    let p = SigmaSet::Progression { base: 4, step: 6, s_min: None, s_max: Some(0) };
    assert!(p.contains(4) && p.contains(-2) && !p.contains(10) && !p.contains(5));
    let r = p.reflect(1);
    assert!(r.contains(-3) && r.contains(3) && !r.contains(-9));
    assert_eq!(SigmaSet::Single { sigma: 3 }.intersect(&SigmaSet::Empty), SigmaSet::Empty);
}
