//! Spectrum of `C[L x K]^L` for a diagonally embedded `L ⊂ K`, and the
//! indecomposable weights of Cases 1 and 2 read off from it.

use std::collections::HashSet;

use crate::branching::{branch_sl, branch_spin_even, branch_spin_odd, BranchResult};
use crate::error::{Error, Result};
use crate::par::{par_map, Execution};
use crate::weight::{dual, ExtendedWeight, FactorType, Weight};

pub const DEFAULT_DEGREE_BOUND: usize = 3;
/// Largest `n` accepted by [`case12_generators`].
pub const MAX_GRID_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// `SL_n ⊂ SL_{n+1}`.
    Sl(usize),
    /// `Spin_n ⊂ Spin_{n+1}`.
    Spin(usize),
    /// `L = K`, identity branching.
    Diagonal(FactorType),
}

impl Chain {
    /// `(L, K)`.
    pub fn groups(self) -> Result<(FactorType, FactorType)> {
        let (l, k) = match self {
            Chain::Sl(n) => (FactorType::sl(n), FactorType::sl(n + 1)),
            Chain::Spin(n) => (FactorType::so(n), FactorType::so(n + 1)),
            Chain::Diagonal(f) => (f, f),
        };
        let valid = match self {
            Chain::Sl(n) => n >= 2,
            Chain::Spin(n) => n >= 3,
            Chain::Diagonal(_) => true,
        };
        if !valid {
            return Err(Error::Unsupported(format!("chain {self:?}")));
        }
        Ok((l.validate()?, k.validate()?))
    }

    /// Restriction of a weight of `K` to `L`.
    pub fn branch(self, lambda: &Weight) -> Result<BranchResult> {
        match self {
            Chain::Sl(n) => branch_sl(n, lambda),
            Chain::Spin(n) if n % 2 == 0 => branch_spin_odd(n / 2, lambda),
            Chain::Spin(n) => branch_spin_even(n / 2, lambda),
            Chain::Diagonal(f) => Ok(BranchResult {
                group: f,
                entries: vec![(lambda.clone(), 1)],
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    /// Weight of `L x K`.
    pub weight: Weight,
    pub multiplicity: u64,
}

/// All nonnegative vectors of length `r` with entry sum at most `bound`.
pub fn dominant_up_to(r: usize, bound: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().sum();
            for c in 0..=(bound as i64 - used) {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Entries `mu + lambda^*` for every dominant `lambda` of `K` of degree at most
/// `degree_bound` and every constituent `mu` of its restriction to `L`.
pub fn diag_spectrum(chain: Chain, degree_bound: usize) -> Result<Vec<SpectrumEntry>> {
    diag_spectrum_with(chain, degree_bound, Execution::default())
}

pub fn diag_spectrum_with(
    chain: Chain,
    degree_bound: usize,
    exec: Execution,
) -> Result<Vec<SpectrumEntry>> {
    let (l, k) = chain.groups()?;
    let g = [l, k];
    let lambdas = dominant_up_to(k.rank(), degree_bound);
    let parts = par_map(exec, &lambdas, |c| -> Result<Vec<SpectrumEntry>> {
        let lambda = Weight::new(&[k], vec![c.clone()])?;
        let star = dual(k, c);
        let b = chain.branch(&lambda)?;
        Ok(b.entries
            .into_iter()
            .map(|(mu, m)| SpectrumEntry {
                weight: Weight::new(&g, vec![mu.coeffs()[0].clone(), star.clone()]).expect("rank"),
                multiplicity: m,
            })
            .collect())
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

/// Present weights that are not sums of two nonzero present weights.
/// Only entries whose last-factor degree is within `bound` are considered.
pub fn indecomposables_up_to_degree(entries: &[SpectrumEntry], bound: usize) -> Vec<Weight> {
    let within = |w: &Weight| {
        w.coeffs().last().map_or(0, |c| c.iter().sum::<i64>()) <= bound as i64
    };
    let present: Vec<&Weight> = entries
        .iter()
        .map(|e| &e.weight)
        .filter(|w| within(w) && !w.is_zero())
        .collect();
    let set: HashSet<Vec<i64>> = present.iter().map(|w| w.flat()).collect();
    let mut out: Vec<Weight> = present
        .iter()
        .filter(|w| {
            !present.iter().any(|u| {
                u.flat() != w.flat() && w.dominates(u) && set.contains(&(**w - *u).flat())
            })
        })
        .map(|w| (*w).clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Character multiple attached to a Case 1 indecomposable weight
/// (`pi` on `SL_n`, `phi` on `SL_{n+1}`).
pub fn case1_character(n: usize, w: &Weight) -> Option<i64> {
    case1_table(n)
        .into_iter()
        .find(|e| &e.weight == w)
        .map(|e| e.char)
}

fn case1_factors(n: usize) -> [FactorType; 2] {
    [FactorType::sl(n), FactorType::sl(n + 1)]
}

/// Case 1 generators in table order.
pub fn case1_table(n: usize) -> Vec<ExtendedWeight> {
    let f = case1_factors(n);
    let w = |terms: &[(usize, usize, i64)], c: i64| {
        ExtendedWeight::new(Weight::from_terms(&f, terms), c)
    };
    let n_ = n as i64;
    let mut out = vec![w(&[(1, 1, 1)], n_)];
    for i in (1..n).rev() {
        out.push(w(&[(0, i, 1), (1, n + 1 - i, 1)], i as i64));
    }
    for i in (2..=n).rev() {
        out.push(w(&[(0, i - 1, 1), (1, n + 1 - i, 1)], -((n + 1 - i) as i64)));
    }
    out.push(w(&[(1, n, 1)], -n_));
    out
}

/// Case 2 generators as listed in the table row for `Spin_n x Spin_{n+1}`.
pub fn case2_table(n: usize) -> Vec<Weight> {
    let f = [FactorType::so(n), FactorType::so(n + 1)];
    let w = |terms: &[(usize, usize, i64)]| Weight::from_terms(&f, terms);
    let k = n / 2;
    if n == 3 {
        return vec![w(&[(1, 1, 1), (1, 2, 1)]), w(&[(0, 1, 1), (1, 1, 1)]), w(&[(0, 1, 1), (1, 2, 1)])];
    }
    let mut out = vec![w(&[(1, 1, 1)])];
    if n.is_multiple_of(2) {
        for i in 1..=k.saturating_sub(2) {
            out.push(w(&[(0, i, 1), (1, i, 1)]));
            out.push(w(&[(0, i, 1), (1, i + 1, 1)]));
        }
        out.push(w(&[(0, k - 1, 1), (0, k, 1), (1, k - 1, 1)]));
        out.push(w(&[(0, k - 1, 1), (1, k, 1)]));
        out.push(w(&[(0, k, 1), (1, k, 1)]));
    } else {
        for i in 1..k {
            out.push(w(&[(0, i, 1), (1, i, 1)]));
            if i + 1 < k {
                out.push(w(&[(0, i, 1), (1, i + 1, 1)]));
            }
        }
        out.push(w(&[(0, k - 1, 1), (1, k, 1), (1, k + 1, 1)]));
        out.push(w(&[(0, k, 1), (1, k, 1)]));
        out.push(w(&[(0, k, 1), (1, k + 1, 1)]));
    }
    out
}

/// Indecomposables of Case 1 or 2, each checked to be multiplicity free and
/// stable when the degree bound grows by one.
#[derive(Clone, Debug)]
pub struct CaseSpectrum {
    pub case: u8,
    pub n: usize,
    pub degree_bound: usize,
    pub indecomposables: Vec<Weight>,
    pub multiplicity_free: bool,
    pub stable: bool,
}

pub fn case_spectrum(case: u8, n: usize, degree_bound: usize, exec: Execution) -> Result<CaseSpectrum> {
    let chain = match case {
        1 if (2..=MAX_GRID_N).contains(&n) => Chain::Sl(n),
        2 if (3..=MAX_GRID_N).contains(&n) => Chain::Spin(n),
        1 | 2 => return Err(Error::Parameters(format!("case {case} with n = {n}"))),
        _ => return Err(Error::Unsupported(format!("spectra for case {case}"))),
    };
    let entries = diag_spectrum_with(chain, degree_bound + 1, exec)?;
    let multiplicity_free = entries.iter().all(|e| e.multiplicity == 1);
    let at_bound = indecomposables_up_to_degree(&entries, degree_bound);
    let above = indecomposables_up_to_degree(&entries, degree_bound + 1);
    Ok(CaseSpectrum {
        case,
        n,
        degree_bound,
        stable: at_bound == above,
        indecomposables: at_bound,
        multiplicity_free,
    })
}

/// Generators of Cases 1 and 2 in table order, computed from the spectrum.
/// Fails if the computed set differs from the tabulated one.
pub fn case12_generators(case: u8, n: usize) -> Result<Vec<ExtendedWeight>> {
    let s = case_spectrum(case, n, DEFAULT_DEGREE_BOUND, Execution::default())?;
    let table: Vec<ExtendedWeight> = match case {
        1 => case1_table(n),
        _ => case2_table(n).into_iter().map(|w| ExtendedWeight::new(w, 0)).collect(),
    };
    let mut expected: Vec<Weight> = table.iter().map(|e| e.weight.clone()).collect();
    expected.sort();
    if expected != s.indecomposables {
        return Err(Error::Precondition(format!(
            "computed indecomposables of case {case}, n = {n} differ from the table"
        )));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_in_sl3_bound_one() {
        let e = diag_spectrum(Chain::Sl(2), 1).unwrap();
        let f = [FactorType::sl(2), FactorType::sl(3)];
        let target = Weight::from_terms(&f, &[(0, 1, 1), (1, 2, 1)]);
        assert!(e.iter().any(|x| x.weight == target && x.multiplicity == 1));
    }

    #[test]
    fn diagonal_mode() {
        let sl2 = FactorType::sl(2);
        let e = diag_spectrum(Chain::Diagonal(sl2), 1).unwrap();
        let target = Weight::from_terms(&[sl2, sl2], &[(0, 1, 1), (1, 1, 1)]);
        assert!(e.iter().any(|x| x.weight == target && x.multiplicity == 1));
    }

    #[test]
    fn bound_zero() {
        let e = diag_spectrum(Chain::Spin(3), 0).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].weight.is_zero());
        assert!(indecomposables_up_to_degree(&[], 3).is_empty());
    }

    #[test]
    fn case1_n2() {
        let g = case12_generators(1, 2).unwrap();
        let chars: Vec<i64> = g.iter().map(|e| e.char).collect();
        assert_eq!(chars, vec![2, 1, -1, -2]);
    }

    #[test]
    fn case2_small() {
        for n in 3..=6 {
            assert_eq!(case12_generators(2, n).unwrap().len(), n);
        }
        assert!(case12_generators(2, 2).is_err());
    }
}
