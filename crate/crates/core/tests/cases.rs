use ewsg::cases::{grid, CaseSpec, Params};
use ewsg::groups::{check_invariant_form, rng_for};
use ewsg::verify::{verify_central, verify_embedding, verify_equivariance, verify_left_u, verify_relations, verify_right_h0};
use ewsg::{Error, Execution};
use proptest::prelude::*;

fn small_specs() -> Vec<CaseSpec> {
    (1..=8u8)
        .flat_map(|c| grid(c).into_iter().take(2).map(move |p| CaseSpec::new(c, p).unwrap()))
        .collect()
}

#[test]
fn functions_are_equivariant_on_small_parameters() {
    for spec in small_specs() {
        for f in &spec.functions {
            for r in [
                verify_equivariance(&spec, &f.name, 4, 3, Execution::Parallel).unwrap(),
                verify_left_u(&spec, &f.name, 4, 3, Execution::Parallel).unwrap(),
                verify_right_h0(&spec, &f.name, 4, 3, Execution::Parallel).unwrap(),
            ] {
                assert!(r.passed, "case {} {}: {} {}", spec.case, spec.params, r.check, f.name);
            }
        }
    }
}

#[test]
fn relations_hold_and_balance() {
    for spec in small_specs() {
        for r in verify_relations(&spec, 5, 9, Execution::Sequential).unwrap() {
            assert!(r.passed, "case {} {}: {}", spec.case, spec.params, r.subject);
        }
        if let Some(r) = verify_central(&spec, 3, 9, Execution::Sequential).unwrap() {
            assert!(r.passed);
        }
    }
}

#[test]
fn stated_identities_are_registered() {
    let labels = |c: u8, p: Params| -> Vec<String> {
        CaseSpec::new(c, p).unwrap().relations.iter().map(|r| r.label()).collect()
    };
    assert!(labels(8, Params::new(1, 1, 0)).contains(&"Delta2 = -Delta1".to_string()));
    assert!(labels(6, Params::new(3, 0, 0)).contains(&"Delta4 = -D".to_string()));
    assert!(labels(3, Params::new(3, 1, 0)).iter().any(|l| l.starts_with("Phi1 = -")));
    assert!(labels(2, Params::new(4, 0, 0)).iter().any(|l| l.starts_with("delta2^2")));
}

#[test]
fn parameter_constraints() {
    assert!(matches!(CaseSpec::new(4, Params::new(4, 1, 0)), Err(Error::Parameters(_))));
    assert!(matches!(CaseSpec::new(6, Params::new(2, 0, 0)), Err(Error::Parameters(_))));
    assert!(matches!(CaseSpec::new(9, Params::new(2, 0, 0)), Err(Error::Unsupported(_))));
    assert!(CaseSpec::new(4, Params::new(5, 1, 0)).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn embedding_is_a_homomorphism(idx in 0usize..64, seed in any::<u64>()) {
        let all = small_specs();
        let spec = &all[idx % all.len()];
        let mut rng = rng_for(seed, 0);
        let a = spec.random_h(&mut rng, true);
        let b = spec.random_h(&mut rng, true);
        let ea = spec.embed_subgroup(&a).unwrap();
        let eb = spec.embed_subgroup(&b).unwrap();
        prop_assert_eq!(&ea * &eb, spec.embed_subgroup(&spec.h_mul(&a, &b)).unwrap());
        for (m, f) in ea.0.iter().zip(&spec.factors) {
            prop_assert!(check_invariant_form(m, *f).unwrap());
        }
    }
}

#[test]
fn embedding_suite_passes() {
    for spec in small_specs() {
        assert!(verify_embedding(&spec, 3, 1, Execution::Parallel).unwrap().passed);
    }
}
