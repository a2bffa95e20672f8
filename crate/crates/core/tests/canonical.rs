use ewsg::canonical::{
    function_values, lemma4_display, lemma4_reduce, reconstruct_check, reduce_to_canonical, template, Action,
};
use ewsg::cases::{grid, CaseSpec, Params};
use ewsg::groups::{check_invariant_form, random_element_rng, random_upper_unipotent, rng_for, WORD};
use ewsg::verify::sample_nonvanishing;
use ewsg::{Error, Execution, ExactMatrix, FactorType};
use num_traits::Zero;

fn names(spec: &CaseSpec) -> Vec<&str> {
    spec.functions.iter().map(|f| f.name.as_str()).collect()
}

#[test]
fn lemma4_both_variants_on_random_columns() {
    for m in 2..=4 {
        let f = FactorType::sp(2 * m);
        let mut rng = rng_for(11, m as u64);
        let mut done = 0;
        while done < 10 {
            let g = random_element_rng(f, &mut rng, WORD);
            let p = g.columns(&[1, 2 * m]);
            let (pm1, pm2) = (&p[(2 * m - 1, 0)], &p[(2 * m - 1, 1)]);
            let delta = &p[(2 * m - 2, 0)] * pm2 - &p[(2 * m - 2, 1)] * pm1;
            if pm1.is_zero() || delta.is_zero() {
                continue;
            }
            for variant in [1, 2] {
                let (u, red) = lemma4_reduce(&p, variant).unwrap();
                assert!(u.is_upper_unitriangular());
                assert!(check_invariant_form(&u, f).unwrap());
                assert_eq!(&u * &p, red);
                assert_eq!(red, lemma4_display(2 * m, pm1, pm2, &delta, variant));
            }
            done += 1;
        }
    }
}

#[test]
fn lemma4_rejects_bad_pairing() {
    let p = ExactMatrix::from_i64(&[&[0, -2], &[0, 0], &[0, 1], &[1, 4]]);
    assert!(matches!(lemma4_reduce(&p, 1), Err(Error::Precondition(_))));
    let small = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    assert!(matches!(lemma4_reduce(&small, 1), Err(Error::Shape(_))));
}

#[test]
fn reconstruction_on_case5_and_case7_grids() {
    for n in 1..=3 {
        for m in 1..=3 {
            let spec = CaseSpec::new(5, Params::new(n, m, 0)).unwrap();
            assert!(reconstruct_check(&spec, 20, 2, Execution::Parallel).unwrap().passed, "{}", spec.params);
        }
    }
    for n in 1..=2 {
        for m in 1..=2 {
            for l in 1..=2 {
                let spec = CaseSpec::new(7, Params::new(n, m, l)).unwrap();
                assert!(reconstruct_check(&spec, 20, 2, Execution::Parallel).unwrap().passed, "{}", spec.params);
            }
        }
    }
}

#[test]
fn case7_template_entries() {
    let spec = CaseSpec::new(7, Params::new(2, 2, 2)).unwrap();
    let t = template(&spec).unwrap();
    let all: Vec<String> = t.iter().flat_map(|s| s.entries.iter().flatten().map(|e| e.to_string())).collect();
    for e in [
        "Delta1/D1",
        "Delta2*Delta1/D1",
        "-D1/Delta1",
        "Delta1/D3",
        "Delta1*Delta3/D3",
        "-D3/Delta1",
        "-D2*Delta1/D1",
    ] {
        assert!(all.contains(&e.to_string()), "{e}");
    }
}

#[test]
fn case6_display_for_n4() {
    let spec = CaseSpec::new(6, Params::new(4, 0, 0)).unwrap();
    let t = &template(&spec).unwrap()[0];
    let nonzero: Vec<String> = t
        .entries
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .map(|e| e.to_string())
        .collect();
    assert_eq!(
        nonzero,
        ["-1/Delta1", "Delta1/Delta2", "D/Delta3", "-Delta4/Delta3", "Delta3/Delta2", "F/(Delta1*Delta2)", "-Delta2/Delta1", "D/Delta1", "Delta1"]
    );
    let mut rng = rng_for(4, 0);
    let (g, _) = sample_nonvanishing(&spec, &names(&spec), &mut rng).unwrap();
    let form = reduce_to_canonical(&spec, &g).unwrap();
    assert_eq!(form.slices[0].matrix, t.eval(&function_values(&spec, &g)).unwrap());
}

#[test]
fn reduction_is_idempotent() {
    for case in 3..=8u8 {
        for p in grid(case).into_iter().take(3) {
            let spec = CaseSpec::new(case, p).unwrap();
            let mut rng = rng_for(5, case as u64);
            let (g, _) = sample_nonvanishing(&spec, &names(&spec), &mut rng).unwrap();
            let once = reduce_to_canonical(&spec, &g).unwrap();
            let twice = reduce_to_canonical(&spec, &once.element).unwrap();
            assert_eq!(once.slices, twice.slices, "case {case} {p}");
            assert!(twice.transcript.iter().all(|s| s.is_identity()), "case {case} {p}");
        }
    }
}

#[test]
fn points_of_one_orbit_share_a_canonical_form() {
    for case in 3..=8u8 {
        for p in grid(case).into_iter().take(3) {
            let spec = CaseSpec::new(case, p).unwrap();
            let mut rng = rng_for(6, case as u64);
            let (g, _) = sample_nonvanishing(&spec, &names(&spec), &mut rng).unwrap();
            let u = random_upper_unipotent(&spec.factors, &mut rng);
            let h = spec.random_h(&mut rng, false);
            let moved = &(&u * &g) * &spec.embed_subgroup(&h).unwrap();
            let a = reduce_to_canonical(&spec, &g).unwrap();
            let b = reduce_to_canonical(&spec, &moved).unwrap();
            assert_eq!(a.slices, b.slices, "case {case} {p}");
        }
    }
}

#[test]
fn transcript_multipliers_lie_in_u_or_h() {
    let spec = CaseSpec::new(8, Params::new(2, 2, 0)).unwrap();
    let mut rng = rng_for(7, 0);
    let (g, _) = sample_nonvanishing(&spec, &names(&spec), &mut rng).unwrap();
    let form = reduce_to_canonical(&spec, &g).unwrap();
    let mut replay = g.clone();
    for s in &form.transcript {
        match &s.action {
            Action::LeftU { factor, matrix } => {
                assert!(matrix.is_upper_unitriangular());
                assert!(check_invariant_form(matrix, spec.factors[*factor]).unwrap());
                replay.0[*factor] = matrix * &replay.0[*factor];
            }
            Action::RightH { parts } => {
                let mut h = spec.h_identity();
                h.parts = parts.clone();
                replay = &replay * &spec.embed_subgroup(&h).unwrap();
            }
        }
    }
    assert_eq!(replay, form.element);
}

#[test]
fn degenerate_points_are_rejected() {
    let spec = CaseSpec::new(5, Params::new(2, 2, 0)).unwrap();
    let g = ewsg::groups::GroupElement::identity(&spec.factors);
    assert!(matches!(reduce_to_canonical(&spec, &g), Err(Error::Precondition(_))));
    let spec2 = CaseSpec::new(2, Params::new(3, 0, 0)).unwrap();
    assert!(matches!(template(&spec2), Err(Error::Unsupported(_))));
}
