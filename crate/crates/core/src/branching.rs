//! Restriction rules along `SL_n ⊂ SL_{n+1}`, `Spin_{2k} ⊂ Spin_{2k+1}` and
//! `Spin_{2k+1} ⊂ Spin_{2k+2}`, with the Weyl dimension formula as an oracle.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::{q, qf, Q};
use crate::weight::{FactorType, RootType, Weight};

/// Restriction constituents with multiplicities, sorted by coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchResult {
    pub group: FactorType,
    pub entries: Vec<(Weight, u64)>,
}

impl BranchResult {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, coeffs: &[i64]) -> u64 {
        self.entries
            .iter()
            .find(|(w, _)| w.coeffs()[0] == coeffs)
            .map_or(0, |(_, m)| *m)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m == 1)
    }
}

/// One summand of the input weight: the list of alternative images.
type Options = Vec<Vec<i64>>;

fn expand(group: FactorType, summands: &[Options]) -> BranchResult {
    let r = group.rank();
    let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    acc.insert(vec![0; r], 1);
    for opts in summands {
        let mut next = BTreeMap::new();
        for (base, mult) in &acc {
            for o in opts {
                let v: Vec<i64> = base.iter().zip(o).map(|(a, b)| a + b).collect();
                *next.entry(v).or_insert(0) += mult;
            }
        }
        acc = next;
    }
    let entries = acc
        .into_iter()
        .map(|(c, m)| (Weight::new(&[group], vec![c]).expect("rank"), m))
        .collect();
    BranchResult { group, entries }
}

fn unit(r: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; r];
    if i >= 1 && i <= r {
        v[i - 1] += c;
    }
    v
}

fn plus(a: Vec<i64>, b: Vec<i64>) -> Vec<i64> {
    a.iter().zip(&b).map(|(x, y)| x + y).collect()
}

/// `c pi_i -> a pi_{i-1} + b pi_i` with `a + b = c`; indices outside `1..=r` vanish.
fn ordinary(r: usize, i: usize, c: i64) -> Options {
    (0..=c).map(|a| plus(unit(r, i - 1, a), unit(r, i, c - a))).collect()
}

fn check_input(group: FactorType, lambda: &Weight) -> Result<Vec<i64>> {
    if lambda.factors() != [group] {
        return Err(Error::Shape(format!("expected a weight of {group}")));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant);
    }
    Ok(lambda.coeffs()[0].clone())
}

/// Restriction from `SL_{n+1}` to `SL_n`.
pub fn branch_sl(n: usize, lambda: &Weight) -> Result<BranchResult> {
    let c = check_input(FactorType::sl(n + 1), lambda)?;
    let out = FactorType::sl(n);
    let r = out.rank();
    let summands: Vec<Options> = c
        .iter()
        .enumerate()
        .map(|(i, &ci)| ordinary(r, i + 1, ci))
        .collect();
    Ok(expand(out, &summands))
}

/// Restriction from `Spin_{2k+1}` to `Spin_{2k}`, `k >= 2`.
pub fn branch_spin_odd(k: usize, lambda: &Weight) -> Result<BranchResult> {
    if k < 2 {
        return Err(Error::Parameters(format!("branch_spin_odd needs k >= 2, got {k}")));
    }
    let c = check_input(FactorType::so(2 * k + 1), lambda)?;
    let out = FactorType::so(2 * k);
    let summands: Vec<Options> = c
        .iter()
        .enumerate()
        .map(|(i0, &ci)| {
            let i = i0 + 1;
            if i == k - 1 {
                (0..=ci)
                    .map(|a| plus(unit(k, i - 1, a), plus(unit(k, k - 1, ci - a), unit(k, k, ci - a))))
                    .collect()
            } else {
                ordinary(k, i, ci)
            }
        })
        .collect();
    Ok(expand(out, &summands))
}

/// Restriction from `Spin_{2k+2}` to `Spin_{2k+1}`, `k >= 1`.
pub fn branch_spin_even(k: usize, lambda: &Weight) -> Result<BranchResult> {
    if k < 1 {
        return Err(Error::Parameters("branch_spin_even needs k >= 1".into()));
    }
    let mut c = check_input(FactorType::so(2 * k + 2), lambda)?;
    let out = FactorType::so(2 * k + 1);
    let d = c[k - 1].min(c[k]);
    c[k - 1] -= d;
    c[k] -= d;
    let mut summands: Vec<Options> = (1..k).map(|i| ordinary(k, i, c[i - 1])).collect();
    summands.push(vec![unit(k, k, c[k - 1] + c[k])]);
    summands.push((0..=d).map(|a| plus(unit(k, k - 1, a), unit(k, k, 2 * (d - a)))).collect());
    Ok(expand(out, &summands))
}

fn rho(rt: RootType) -> Vec<Q> {
    match rt {
        RootType::A(r) => (0..=r).map(|i| q((r - i) as i64)).collect(),
        RootType::B(k) => (0..k).map(|i| qf(2 * (k - i) as i64 - 1, 2)).collect(),
        RootType::C(m) => (0..m).map(|i| q((m - i) as i64)).collect(),
        RootType::D(k) => (0..k).map(|i| q((k - 1 - i) as i64)).collect(),
    }
}

fn positive_roots(rt: RootType) -> Vec<Vec<i64>> {
    let len = match rt {
        RootType::A(r) => r + 1,
        RootType::B(k) | RootType::C(k) | RootType::D(k) => k,
    };
    let e = |i: usize, s: i64, j: usize| {
        let mut v = vec![0; len];
        v[i] += 1;
        v[j] += s;
        v
    };
    let mut roots = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            roots.push(e(i, -1, j));
            if !matches!(rt, RootType::A(_)) {
                roots.push(e(i, 1, j));
            }
        }
        match rt {
            RootType::B(_) => roots.push(unit(len, i + 1, 1)),
            RootType::C(_) => roots.push(unit(len, i + 1, 2)),
            _ => {}
        }
    }
    roots
}

/// Dimension of the irreducible module with highest weight `lambda`
/// (spin modules included for orthogonal factors).
pub fn weyl_dim(factor: FactorType, lambda: &Weight) -> Result<u128> {
    check_input(factor, lambda)?;
    let rt = factor.root_type();
    let eps = &lambda.to_epsilon_coords()[0];
    let rho = rho(rt);
    let shifted: Vec<Q> = eps.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let pair = |v: &[Q], a: &[i64]| -> Q { v.iter().zip(a).map(|(x, &y)| x * q(y)).sum() };
    let mut d = Q::one();
    for a in positive_roots(rt) {
        d *= pair(&shifted, &a) / pair(&rho, &a);
    }
    assert!(d.is_integer(), "Weyl dimension is not an integer");
    d.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Parameters("dimension overflow".into()))
}
