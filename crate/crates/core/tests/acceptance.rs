//! Acceptance criteria, one PASS/FAIL line each. Exact arithmetic throughout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ewsg::branching::weyl_dim;
use ewsg::canonical::{lemma4_display, lemma4_reduce, reconstruct_check};
use ewsg::cases::{grid, CaseSpec, Params};
use ewsg::groups::{random_element_rng, rng_for, WORD};
use ewsg::matrix::q;
use ewsg::semigroup::{certify_case, check_irreducible_a1, presentation_for, SplitOutcome};
use ewsg::spectrum::{case12_generators, case1_character, case1_table, case2_table, case_spectrum, Chain};
use ewsg::suite::freeness;
use ewsg::verify::{verify_central, verify_equivariance, verify_gram, verify_relations};
use ewsg::weight::rank_of_weights;
use ewsg::{Execution, FactorType, Result, Weight};
use num_traits::Zero;
use rand::Rng;

const TRIALS: usize = 20;
const SEED: u64 = 2024;
const EXEC: Execution = Execution::Parallel;

type Criterion = fn() -> Result<(bool, String)>;

fn all_specs(cases: std::ops::RangeInclusive<u8>) -> Vec<CaseSpec> {
    cases
        .flat_map(|c| grid(c).into_iter().map(move |p| CaseSpec::new(c, p).expect("grid point")))
        .collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<(bool, String)>) -> (bool, String) {
    let start = Instant::now();
    let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let took = start.elapsed();
    let within = took <= limit;
    let note = format!("{detail}; {:.1}s (limit {}s)", took.as_secs_f64(), limit.as_secs());
    (ok && within, note)
}

fn criterion1() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 2..=5 {
        let s = case_spectrum(1, n, 3, EXEC)?;
        let mut expected: Vec<Weight> = case1_table(n).into_iter().map(|e| e.weight).collect();
        expected.sort();
        let lifts = case1_table(n)
            .iter()
            .all(|e| case1_character(n, &e.weight) == Some(e.char));
        ok &= s.indecomposables.len() == 2 * n && s.indecomposables == expected && s.stable && lifts;
        ok &= case12_generators(1, n).is_ok();
    }
    for n in 3..=8 {
        let s = case_spectrum(2, n, 3, EXEC)?;
        let mut expected = case2_table(n);
        expected.sort();
        ok &= s.indecomposables.len() == n && s.indecomposables == expected && s.stable && s.multiplicity_free;
    }
    Ok((ok, "Case 1 n=2..5, Case 2 n=3..8, bound 3 stable at 4".into()))
}

fn criterion2() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failed = Vec::new();
    for spec in all_specs(3..=8) {
        for f in &spec.functions {
            let r = verify_equivariance(&spec, &f.name, TRIALS, SEED, EXEC)?;
            checked += 1;
            if !r.passed {
                failed.push(format!("case {} {} {}", spec.case, spec.params, f.name));
            }
        }
    }
    Ok((failed.is_empty(), format!("{checked} functions x {TRIALS} trials, failures: {failed:?}")))
}

fn criterion3() -> Result<(bool, String)> {
    let wanted: Vec<(u8, Params, &str)> = vec![
        (2, Params::new(4, 0, 0), "delta2^2 = -2*Delta2*Phi"),
        (2, Params::new(6, 0, 0), "delta3^2 = -2*Delta3*Phi"),
        (2, Params::new(8, 0, 0), "delta4^2 = -2*Delta4*Phi"),
        (2, Params::new(5, 0, 0), "Delta2^2 = -delta3*Phi"),
        (2, Params::new(7, 0, 0), "Delta3^2 = delta4*Phi"),
        (8, Params::new(1, 1, 0), "Delta2 = -Delta1"),
        (6, Params::new(3, 0, 0), "Delta4 = -D"),
        (3, Params::new(3, 1, 0), "Phi1 = -delta*Delta"),
        (3, Params::new(3, 1, 0), "W = 1"),
        (4, Params::new(5, 1, 0), "W = 1"),
        (5, Params::new(1, 1, 0), "Delta = 1"),
        (5, Params::new(1, 1, 0), "delta = 1"),
    ];
    let mut ok = true;
    let mut missing = Vec::new();
    for (case, p, label) in &wanted {
        let spec = CaseSpec::new(*case, *p)?;
        let reports = verify_relations(&spec, TRIALS, SEED, EXEC)?;
        match reports.iter().find(|r| r.subject == *label) {
            Some(r) => ok &= r.passed,
            None => {
                ok = false;
                missing.push(format!("case {case} {p}: {label}"));
            }
        }
        ok &= reports.iter().all(|r| r.passed);
    }
    Ok((ok, format!("{} identities, missing: {missing:?}", wanted.len())))
}

fn criterion4() -> Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for spec in all_specs(3..=8) {
        for v in certify_case(&spec)? {
            count += 1;
            ok &= v.irreducible;
        }
    }
    let spec = CaseSpec::new(3, Params::new(3, 1, 0))?;
    let (pres, names) = presentation_for(&spec)?;
    let d = names.iter().position(|n| n == "D").expect("D");
    let cert = check_irreducible_a1(d, &pres)?;
    let split = cert.splits.iter().find(|s| s.mu1.coeffs()[0] == [0, 1]);
    let progressions = split.is_some_and(|s| {
        (-10..=0).all(|p| s.s1.contains(6 * p - 2))
            && (1..=10).all(|qq| s.s2.contains(-6 * qq + 3))
            && (-60..=60).filter(|x| s.s1.contains(*x)).all(|x| (x + 2) % 6 == 0 && x <= -2)
            && (-60..=60).filter(|x| s.s2.contains(*x)).all(|x| (x - 3) % 6 == 0 && x <= -3)
            && s.outcome == SplitOutcome::NoCommonCharacter
    });
    let mut witnesses = true;
    for (case, p) in [(3u8, Params::new(3, 1, 0)), (3, Params::new(3, 3, 0)), (8, Params::new(1, 1, 0)), (8, Params::new(3, 2, 0))] {
        let spec = CaseSpec::new(case, p)?;
        let a2: Vec<_> = certify_case(&spec)?.into_iter().filter_map(|v| v.a2).collect();
        witnesses &= !a2.is_empty() && a2.iter().all(|c| c.f_j.is_zero() && c.f_i == q(-1) && c.unique_split);
    }
    Ok((
        ok && progressions && witnesses,
        format!("{count} generators; progressions {progressions}; witnesses {witnesses}"),
    ))
}

fn criterion5() -> Result<(bool, String)> {
    let mut ok = true;
    let mut points = 0;
    for spec in all_specs(3..=8) {
        points += 1;
        ok &= reconstruct_check(&spec, TRIALS, SEED, EXEC)?.passed;
    }
    let mut lemma = 0;
    for m in 2..=4 {
        let f = FactorType::sp(2 * m);
        let mut rng = rng_for(SEED, 100 + m as u64);
        let mut done = 0;
        while done < TRIALS {
            let p = random_element_rng(f, &mut rng, WORD).columns(&[1, 2 * m]);
            let (p1, p2) = (&p[(2 * m - 1, 0)], &p[(2 * m - 1, 1)]);
            let delta = &p[(2 * m - 2, 0)] * p2 - &p[(2 * m - 2, 1)] * p1;
            if p1.is_zero() || delta.is_zero() {
                continue;
            }
            for variant in [1, 2] {
                let (u, red) = lemma4_reduce(&p, variant)?;
                ok &= u.is_upper_unitriangular()
                    && &u * &p == red
                    && red == lemma4_display(2 * m, p1, p2, &delta, variant);
                lemma += 1;
            }
            done += 1;
        }
    }
    Ok((ok, format!("{points} grid points x {TRIALS} trials; {lemma} lemma reductions")))
}

fn criterion6() -> Result<(bool, String)> {
    let mut chains: Vec<Chain> = (2..=6).map(Chain::Sl).collect();
    chains.extend((3..=12).map(Chain::Spin));
    let mut ok = true;
    let mut count = 0;
    for (k, ch) in chains.iter().enumerate() {
        let (small, big) = ch.groups()?;
        let mut rng = rng_for(SEED, 200 + k as u64);
        for _ in 0..50 {
            let c: Vec<i64> = (0..big.rank()).map(|_| rng.gen_range(0..=3)).collect();
            let lambda = Weight::new(&[big], vec![c])?;
            let b = ch.branch(&lambda)?;
            let mut total: u128 = 0;
            for (mu, mult) in &b.entries {
                total += weyl_dim(small, mu)? * u128::from(*mult);
            }
            ok &= total == weyl_dim(big, &lambda)?;
            count += 1;
        }
    }
    Ok((ok, format!("{} chains, {count} weights", chains.len())))
}

fn criterion7() -> Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for spec in all_specs(1..=8) {
        let r = freeness(&spec)?;
        let gens: Vec<_> = spec.table_generators()?.into_iter().map(|(_, w)| w).collect();
        ok &= r.passed && rank_of_weights(&gens) == gens.len();
        count += 1;
    }
    Ok((ok, format!("{count} grid points")))
}

fn criterion8() -> Result<(bool, String)> {
    let mut ok = true;
    let mut central = 0;
    let mut gram = 0;
    for spec in all_specs(1..=8) {
        if let Some(r) = verify_central(&spec, TRIALS, SEED, EXEC)? {
            ok &= r.passed;
            central += 1;
        }
        if let Some(r) = verify_gram(&spec, TRIALS, SEED, EXEC)? {
            ok &= r.passed;
            gram += 1;
        }
    }
    Ok((ok, format!("{central} grid points with central factors, {gram} with symplectic factors")))
}

fn main() -> ExitCode {
    let minute = Duration::from_secs(60);
    let criteria: Vec<(&str, Duration, Criterion)> = vec![
        ("table rows 1-2 from spectra", minute, criterion1),
        ("equivariance of every catalog function, cases 3-8", 5 * minute, criterion2),
        ("relation identities", 5 * minute, criterion3),
        ("irreducibility certificates", 5 * minute, criterion4),
        ("canonical-form reconstruction and Lemma 4", 5 * minute, criterion5),
        ("branching dimension oracle", 5 * minute, criterion6),
        ("freeness of generator lists", 5 * minute, criterion7),
        ("central invariance and Gram columns", 5 * minute, criterion8),
    ];
    let mut all = true;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (ok, note) = timed(limit, f);
        all &= ok;
        println!("{} criterion {}: {name} ({note})", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
