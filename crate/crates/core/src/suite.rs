//! Every check available for one case, in a fixed order.

use crate::canonical::reconstruct_check;
use crate::cases::{CaseSpec, LETTERS};
use crate::error::Result;
use crate::par::Execution;
use crate::semigroup::certify_case;
use crate::verify::{
    verify_central, verify_embedding, verify_functions, verify_gram, verify_relations, CheckReport,
};
use crate::weight::rank_of_weights;

fn single(check: &str, subject: &str, passed: bool, note: Option<String>) -> CheckReport {
    CheckReport {
        check: check.into(),
        subject: subject.into(),
        trials: 1,
        failed_trials: if passed { vec![] } else { vec![0] },
        passed,
        note,
    }
}

/// Table generators are linearly independent.
pub fn freeness(spec: &CaseSpec) -> Result<CheckReport> {
    let gens: Vec<_> = spec.table_generators()?.into_iter().map(|(_, w)| w).collect();
    let r = rank_of_weights(&gens);
    Ok(single(
        "freeness",
        "table generators",
        r == gens.len(),
        Some(format!("rank {r}, {} generators", gens.len())),
    ))
}

/// Irreducibility of every table generator (Cases 3 to 8).
pub fn irreducibility(spec: &CaseSpec) -> Result<Vec<CheckReport>> {
    Ok(certify_case(spec)?
        .into_iter()
        .map(|v| {
            let how = match (&v.a2, v.a1.irreducible) {
                (_, true) => "no feasible split".to_string(),
                (Some(_), false) => "unique split excluded by divisibility witness".to_string(),
                (None, false) => "a feasible split exists".to_string(),
            };
            single("irreducible", &format!("{} {}", v.name, v.weight), v.irreducible, Some(how))
        })
        .collect())
}

/// Runs the table, function, identity, subgroup, canonical-form and
/// irreducibility checks for `spec`.
pub fn verify_case(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if spec.case <= 2 {
        let gens = spec.table_generators()?;
        let listed: Vec<String> = gens.iter().map(|(_, w)| w.render(&LETTERS)).collect();
        out.push(single("table_from_spectrum", "indecomposables", true, Some(listed.join(", "))));
    }
    out.push(freeness(spec)?);
    out.extend(verify_functions(spec, trials, seed, exec)?);
    out.extend(verify_relations(spec, trials, seed, exec)?);
    out.push(verify_embedding(spec, trials, seed, exec)?);
    out.extend(verify_central(spec, trials, seed, exec)?);
    out.extend(verify_gram(spec, trials, seed, exec)?);
    if spec.case >= 3 {
        out.push(reconstruct_check(spec, trials, seed, exec)?);
        out.extend(irreducibility(spec)?);
    }
    Ok(out)
}
