//! Randomized exact checks: equivariance of every catalog function, the
//! identities among them, the embedding of `H`, and invariance under the
//! centrally embedded symplectic factors.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::cases::CaseSpec;
use crate::error::{Error, Result};
use crate::groups::{
    gram_columns_check, random_element_rng, random_group_element, random_torus,
    random_upper_unipotent, rng_for, GroupElement, WORD,
};
use crate::matrix::Q;
use crate::par::{par_map, Execution};
use crate::weight::FactorType;

pub const DEFAULT_TRIALS: usize = 20;
/// Resampling cap when a sample lands where a function vanishes.
pub const MAX_ATTEMPTS: usize = 50;

/// Outcome of one randomized check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub subject: String,
    pub trials: usize,
    pub failed_trials: Vec<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn from_trials(check: &str, subject: &str, outcomes: Vec<Result<bool>>) -> Result<Self> {
        let trials = outcomes.len();
        let mut failed_trials = Vec::new();
        for (i, o) in outcomes.into_iter().enumerate() {
            if !o? {
                failed_trials.push(i);
            }
        }
        Ok(Self {
            check: check.into(),
            subject: subject.into(),
            trials,
            passed: failed_trials.is_empty(),
            failed_trials,
            note: None,
        })
    }
}

#[derive(Clone, Copy)]
enum Suite {
    Equivariance = 1,
    LeftU,
    RightH0,
    Central,
    Relations,
    Embedding,
    Gram,
}

fn stream(suite: Suite, item: usize, trial: usize) -> u64 {
    ((suite as u64) << 48) | ((item as u64) << 24) | trial as u64
}

/// Random `g` with every listed function nonzero, and the number of attempts used.
pub fn sample_nonvanishing(spec: &CaseSpec, names: &[&str], rng: &mut impl Rng) -> Result<(GroupElement, usize)> {
    for attempt in 1..=MAX_ATTEMPTS {
        let g = random_group_element(&spec.factors, rng);
        let mut ok = true;
        for n in names {
            if spec.eval(n, &g)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((g, attempt));
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

fn trials_of<F>(exec: Execution, trials: usize, f: F) -> Vec<Result<bool>>
where
    F: Fn(usize) -> Result<bool> + Sync + Send,
{
    let idx: Vec<usize> = (0..trials).collect();
    par_map(exec, &idx, |&t| f(t))
}

fn function_index(spec: &CaseSpec, name: &str) -> Result<usize> {
    spec.functions
        .iter()
        .position(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFunction(name.into()))
}

/// Checks `f(t^-1 u^-1 g h) = lambda(t) chi(h) f(g)` exactly on random samples.
pub fn verify_equivariance(
    spec: &CaseSpec,
    name: &str,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<CheckReport> {
    let fi = function_index(spec, name)?;
    let f = &spec.functions[fi];
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::Equivariance, fi, trial));
        let (g, _) = sample_nonvanishing(spec, &[name], &mut rng)?;
        let u = random_upper_unipotent(&spec.factors, &mut rng);
        let t = random_torus(&spec.factors, &mut rng);
        let h = spec.random_h(&mut rng, true);
        let tinv = GroupElement(t.matrices()).inverse()?;
        let moved = &(&(&tinv * &u.inverse_in(&spec.factors)?) * &g) * &spec.embed_subgroup(&h)?;
        let lambda = f.weight.weight.eval_on_torus(&t)?;
        let chi = crate::weight::pow(&spec.chi0(&h.t), f.weight.char as i32);
        Ok(f.eval(&moved) == lambda * chi * f.eval(&g))
    });
    CheckReport::from_trials("equivariance", name, outcomes)
}

/// `f(u^-1 g) = f(g)` for upper unitriangular `u`.
pub fn verify_left_u(spec: &CaseSpec, name: &str, trials: usize, seed: u64, exec: Execution) -> Result<CheckReport> {
    let fi = function_index(spec, name)?;
    let f = &spec.functions[fi];
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::LeftU, fi, trial));
        let g = random_group_element(&spec.factors, &mut rng);
        let u = random_upper_unipotent(&spec.factors, &mut rng);
        Ok(f.eval(&(&u.inverse_in(&spec.factors)? * &g)) == f.eval(&g))
    });
    CheckReport::from_trials("left_u_invariance", name, outcomes)
}

/// `f(g h0) = f(g)` for `h0` in the kernel of the characters of `H`.
pub fn verify_right_h0(spec: &CaseSpec, name: &str, trials: usize, seed: u64, exec: Execution) -> Result<CheckReport> {
    let fi = function_index(spec, name)?;
    let f = &spec.functions[fi];
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::RightH0, fi, trial));
        let g = random_group_element(&spec.factors, &mut rng);
        let h0 = spec.random_h(&mut rng, false);
        Ok(f.eval(&(&g * &spec.embed_subgroup(&h0)?)) == f.eval(&g))
    });
    CheckReport::from_trials("right_h0_invariance", name, outcomes)
}

/// Every catalog function is unchanged by right multiplication with the
/// centrally embedded symplectic factors. `None` when there are none.
pub fn verify_central(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<Option<CheckReport>> {
    if !spec.h_factors.iter().any(|f| f.central) {
        return Ok(None);
    }
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::Central, 0, trial));
        let g = random_group_element(&spec.factors, &mut rng);
        let c = spec.random_central(&mut rng).expect("central factor");
        let moved = &g * &spec.embed_subgroup(&c)?;
        Ok(spec.functions.iter().all(|f| f.eval(&moved) == f.eval(&g)))
    });
    CheckReport::from_trials("central_invariance", "all", outcomes).map(Some)
}

/// Each identity: weight balance (when every factor is a catalog function)
/// and exact equality at random points.
pub fn verify_relations(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<Vec<CheckReport>> {
    spec.relations
        .iter()
        .enumerate()
        .map(|(k, rel)| {
            let balance = match (spec.monomial_weight(&rel.lhs), spec.monomial_weight(&rel.rhs)) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let outcomes = trials_of(exec, trials, |trial| {
                let mut rng = rng_for(seed, stream(Suite::Relations, k, trial));
                let g = random_group_element(&spec.factors, &mut rng);
                Ok(spec.eval_monomial(&rel.lhs, &g)? == spec.eval_monomial(&rel.rhs, &g)?)
            });
            let mut r = CheckReport::from_trials("relation", &rel.label(), outcomes)?;
            match balance {
                Some(true) => r.note = Some("weights balance".into()),
                Some(false) => {
                    r.passed = false;
                    r.note = Some("weights do not balance".into());
                }
                None => r.note = Some("involves a function outside the catalog".into()),
            }
            Ok(r)
        })
        .collect()
}

/// `embed(h) embed(h') = embed(h h')`.
pub fn verify_embedding(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<CheckReport> {
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::Embedding, 0, trial));
        let a = spec.random_h(&mut rng, true);
        let b = spec.random_h(&mut rng, true);
        let lhs = &spec.embed_subgroup(&a)? * &spec.embed_subgroup(&b)?;
        Ok(lhs == spec.embed_subgroup(&spec.h_mul(&a, &b))?)
    });
    CheckReport::from_trials("embedding_homomorphism", "H", outcomes)
}

/// `gram_columns_check` for every `k` on random samples of each symplectic factor.
pub fn verify_gram(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<Option<CheckReport>> {
    let sp: Vec<(usize, FactorType)> = spec
        .factors
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, f)| matches!(f, FactorType::Symplectic(_)))
        .collect();
    if sp.is_empty() {
        return Ok(None);
    }
    let outcomes = trials_of(exec, trials, |trial| {
        let mut rng = rng_for(seed, stream(Suite::Gram, 0, trial));
        Ok(sp.iter().all(|&(_, f)| {
            let m = random_element_rng(f, &mut rng, WORD);
            (1..=f.size() / 2).all(|k| gram_columns_check(&m, k))
        }))
    });
    CheckReport::from_trials("gram_columns", "symplectic factors", outcomes).map(Some)
}

/// Equivariance, left-`U` and right-`H_0` invariance for every catalog function.
pub fn verify_functions(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for f in &spec.functions {
        out.push(verify_equivariance(spec, &f.name, trials, seed, exec)?);
        out.push(verify_left_u(spec, &f.name, trials, seed, exec)?);
        out.push(verify_right_h0(spec, &f.name, trials, seed, exec)?);
    }
    Ok(out)
}

/// Evaluates every catalog function at `g`.
pub fn evaluate_all(spec: &CaseSpec, g: &GroupElement) -> Vec<(String, Q)> {
    spec.functions.iter().map(|f| (f.name.clone(), f.eval(g))).collect()
}
