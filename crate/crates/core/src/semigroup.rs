//! Membership in `Z = <lattice gens> + S<semigroup gens>`, the sets of
//! characters `sigma` with `(mu, sigma)` in `Z`, and the two irreducibility
//! criteria built on them.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cases::{CaseSpec, LETTERS};
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::matrix::{fmt_q, kernel, q, solve_linear, Q};
use crate::weight::{rank_of_weights, ExtendedWeight, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    pub lattice_gens: Vec<ExtendedWeight>,
    pub semigroup_gens: Vec<ExtendedWeight>,
}

impl SemigroupPresentation {
    pub fn new(lattice_gens: Vec<ExtendedWeight>, semigroup_gens: Vec<ExtendedWeight>) -> Result<Self> {
        let p = Self {
            lattice_gens,
            semigroup_gens,
        };
        let all = p.gens();
        if let Some(first) = all.first() {
            if all.iter().any(|g| g.weight.factors() != first.weight.factors()) {
                return Err(Error::Shape("generators of different groups".into()));
            }
        }
        if rank_of_weights(&all) != all.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(p)
    }

    /// Lattice generators first, then semigroup generators.
    pub fn gens(&self) -> Vec<ExtendedWeight> {
        self.lattice_gens
            .iter()
            .chain(&self.semigroup_gens)
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.lattice_gens.len() + self.semigroup_gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_semigroup_index(&self, i: usize) -> bool {
        i >= self.lattice_gens.len()
    }

    fn columns(&self, with_char: bool) -> Vec<Vec<Q>> {
        let gens = self.gens();
        let Some(first) = gens.first() else {
            return vec![];
        };
        let dim = first.flat().len() - usize::from(!with_char);
        (0..dim)
            .map(|r| gens.iter().map(|g| q(g.flat()[r])).collect())
            .collect()
    }
}

fn to_int(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Coefficients of `target` in the generators, if `target` lies in `Z`.
pub fn solve_in_basis(target: &ExtendedWeight, pres: &SemigroupPresentation) -> Result<Option<Vec<i64>>> {
    if rank_of_weights(&pres.gens()) != pres.len() {
        return Err(Error::DependentGenerators);
    }
    if pres.is_empty() {
        return Ok(target.flat().iter().all(|&x| x == 0).then(Vec::new));
    }
    let b: Vec<Q> = target.flat().into_iter().map(q).collect();
    let Some(c) = solve_linear(&pres.columns(true), &b) else {
        return Ok(None);
    };
    let Some(c) = c.iter().map(to_int).collect::<Option<Vec<i64>>>() else {
        return Ok(None);
    };
    let signs_ok = c
        .iter()
        .enumerate()
        .all(|(i, &x)| !pres.is_semigroup_index(i) || x >= 0);
    Ok(signs_ok.then_some(c))
}

/// The set `{sigma : (mu, sigma) in Z}`.
///
/// A progression is `{base + step * s}` with `step > 0` and `s` ranging over
/// `s_min..=s_max` (missing bounds are infinite). When bounded above, `s_max`
/// is `0`, so `base` is the largest element; otherwise when bounded below
/// `s_min` is `0`; when unbounded `base` is the residue in `0..step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SigmaSet {
    Empty,
    Single { sigma: i64 },
    Progression {
        base: i64,
        step: i64,
        s_min: Option<i64>,
        s_max: Option<i64>,
    },
}

/// `{x : x = residue mod modulus, lo <= x <= hi}`.
#[derive(Clone, Copy, Debug)]
struct Congruence {
    residue: i128,
    modulus: i128,
    lo: Option<i128>,
    hi: Option<i128>,
}

impl Congruence {
    fn canonical(self) -> SigmaSet {
        let m = self.modulus;
        let r = self.residue.rem_euclid(m);
        let first = self.lo.map(|lo| lo + (r - lo).rem_euclid(m));
        let last = self.hi.map(|hi| hi - (hi - r).rem_euclid(m));
        let i = |x: i128| x as i64;
        match (first, last) {
            (Some(a), Some(b)) if a > b => SigmaSet::Empty,
            (Some(a), Some(b)) if a == b => SigmaSet::Single { sigma: i(a) },
            (Some(a), Some(b)) => SigmaSet::Progression {
                base: i(b),
                step: i(m),
                s_min: Some(i(-(b - a) / m)),
                s_max: Some(0),
            },
            (None, Some(b)) => SigmaSet::Progression {
                base: i(b),
                step: i(m),
                s_min: None,
                s_max: Some(0),
            },
            (Some(a), None) => SigmaSet::Progression {
                base: i(a),
                step: i(m),
                s_min: Some(0),
                s_max: None,
            },
            (None, None) => SigmaSet::Progression {
                base: i(r),
                step: i(m),
                s_min: None,
                s_max: None,
            },
        }
    }
}

fn max_opt(a: Option<i128>, b: Option<i128>) -> Option<i128> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<i128>, b: Option<i128>) -> Option<i128> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl SigmaSet {
    fn congruence(&self) -> Option<Congruence> {
        match *self {
            SigmaSet::Empty => None,
            SigmaSet::Single { sigma } => Some(Congruence {
                residue: 0,
                modulus: 1,
                lo: Some(sigma as i128),
                hi: Some(sigma as i128),
            }),
            SigmaSet::Progression {
                base,
                step,
                s_min,
                s_max,
            } => {
                let (b, st) = (base as i128, step as i128);
                Some(Congruence {
                    residue: b,
                    modulus: st,
                    lo: s_min.map(|s| b + st * s as i128),
                    hi: s_max.map(|s| b + st * s as i128),
                })
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SigmaSet::Empty)
    }

    pub fn contains(&self, sigma: i64) -> bool {
        self.congruence().is_some_and(|c| {
            let x = sigma as i128;
            (x - c.residue).rem_euclid(c.modulus) == 0
                && c.lo.is_none_or(|lo| x >= lo)
                && c.hi.is_none_or(|hi| x <= hi)
        })
    }

    /// `{chi - sigma : sigma in self}`.
    pub fn reflect(&self, chi: i64) -> SigmaSet {
        match self.congruence() {
            None => SigmaSet::Empty,
            Some(c) => {
                let x = chi as i128;
                Congruence {
                    residue: x - c.residue,
                    modulus: c.modulus,
                    lo: c.hi.map(|h| x - h),
                    hi: c.lo.map(|l| x - l),
                }
                .canonical()
            }
        }
    }

    pub fn intersect(&self, other: &SigmaSet) -> SigmaSet {
        let (Some(a), Some(b)) = (self.congruence(), other.congruence()) else {
            return SigmaSet::Empty;
        };
        let e = a.modulus.extended_gcd(&b.modulus);
        let g = e.gcd;
        let diff = b.residue - a.residue;
        if diff % g != 0 {
            return SigmaSet::Empty;
        }
        let lcm = a.modulus / g * b.modulus;
        let k = (diff / g * e.x).rem_euclid(b.modulus / g);
        Congruence {
            residue: (a.residue + a.modulus * k).rem_euclid(lcm),
            modulus: lcm,
            lo: max_opt(a.lo, b.lo),
            hi: min_opt(a.hi, b.hi),
        }
        .canonical()
    }

    /// Some element, preferring the canonical anchor.
    pub fn sample(&self) -> Option<i64> {
        match *self {
            SigmaSet::Empty => None,
            SigmaSet::Single { sigma } => Some(sigma),
            SigmaSet::Progression { base, .. } => Some(base),
        }
    }

    pub fn render(&self) -> String {
        match *self {
            SigmaSet::Empty => "{}".into(),
            SigmaSet::Single { sigma } => format!("{{{sigma}}}"),
            SigmaSet::Progression {
                base,
                step,
                s_min,
                s_max,
            } => {
                let range = match (s_min, s_max) {
                    (Some(a), Some(b)) => format!("{a} <= s <= {b}"),
                    (None, Some(b)) => format!("s <= {b}"),
                    (Some(a), None) => format!("s >= {a}"),
                    (None, None) => "s in Z".into(),
                };
                format!("{{{base} + {step}s : {range}}}")
            }
        }
    }
}

fn bezout(d: &[i64]) -> Vec<i64> {
    let mut w = vec![0i64; d.len()];
    let mut g = 0i64;
    for (i, &x) in d.iter().enumerate() {
        let e = g.extended_gcd(&x);
        for v in w.iter_mut().take(i) {
            *v *= e.x;
        }
        w[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        for v in &mut w {
            *v = -*v;
        }
    }
    w
}

fn primitive(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("small kernel vector"))
        .collect()
}

/// All `sigma` with `(mu, sigma)` in `Z`.
pub fn sigma_set(mu: &Weight, pres: &SemigroupPresentation) -> Result<SigmaSet> {
    if rank_of_weights(&pres.gens()) != pres.len() {
        return Err(Error::DependentGenerators);
    }
    let n = pres.len();
    if n == 0 {
        return Ok(if mu.is_zero() {
            SigmaSet::Single { sigma: 0 }
        } else {
            SigmaSet::Empty
        });
    }
    let a = pres.columns(false);
    let b: Vec<Q> = mu.flat().into_iter().map(q).collect();
    let Some(c0) = solve_linear(&a, &b) else {
        return Ok(SigmaSet::Empty);
    };
    let chars: Vec<i64> = pres.gens().iter().map(|g| g.char).collect();
    let ker = kernel(&a, n);
    let dot = |c: &[Q]| -> Q { c.iter().zip(&chars).map(|(x, &y)| x * q(y)).sum() };
    match ker.len() {
        0 => {
            let Some(c) = c0.iter().map(to_int).collect::<Option<Vec<i64>>>() else {
                return Ok(SigmaSet::Empty);
            };
            if (0..n).any(|i| pres.is_semigroup_index(i) && c[i] < 0) {
                return Ok(SigmaSet::Empty);
            }
            Ok(SigmaSet::Single {
                sigma: c.iter().zip(&chars).map(|(x, y)| x * y).sum(),
            })
        }
        1 => {
            let d = primitive(&ker[0]);
            let w = bezout(&d);
            let t0: Q = -c0.iter().zip(&w).map(|(x, &y)| x * q(y)).sum::<Q>();
            let c1: Vec<Q> = c0.iter().zip(&d).map(|(x, &y)| x + &t0 * q(y)).collect();
            let Some(c1) = c1.iter().map(to_int).collect::<Option<Vec<i64>>>() else {
                return Ok(SigmaSet::Empty);
            };
            let (mut lo, mut hi): (Option<i128>, Option<i128>) = (None, None);
            for i in (0..n).filter(|&i| pres.is_semigroup_index(i)) {
                let (c, di) = (c1[i] as i128, d[i] as i128);
                match di.cmp(&0) {
                    std::cmp::Ordering::Greater => lo = max_opt(lo, Some(Integer::div_ceil(&-c, &di))),
                    std::cmp::Ordering::Less => hi = min_opt(hi, Some(Integer::div_floor(&c, &-di))),
                    std::cmp::Ordering::Equal if c < 0 => return Ok(SigmaSet::Empty),
                    std::cmp::Ordering::Equal => {}
                }
            }
            let sigma1: i128 = c1.iter().zip(&chars).map(|(x, y)| (*x as i128) * (*y as i128)).sum();
            let dsigma = dot(&d.iter().map(|&x| q(x)).collect::<Vec<_>>())
                .to_integer()
                .to_i128()
                .expect("small");
            if dsigma == 0 {
                return Err(Error::DependentGenerators);
            }
            let at = |j: Option<i128>| j.map(|j| sigma1 + dsigma * j);
            let (slo, shi) = if dsigma > 0 { (at(lo), at(hi)) } else { (at(hi), at(lo)) };
            Ok(Congruence {
                residue: sigma1,
                modulus: dsigma.abs(),
                lo: slo,
                hi: shi,
            }
            .canonical())
        }
        _ => Err(Error::CharacterRank),
    }
}

/// Why a split `(mu1, sigma1) + (mu2, sigma2)` cannot have both parts in `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitOutcome {
    FirstOutside,
    SecondOutside,
    NoCommonCharacter,
    /// Both parts lie in `Z` for these `sigma1`.
    Feasible(SigmaSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCertificate {
    pub mu1: Weight,
    pub mu2: Weight,
    pub s1: SigmaSet,
    pub s2: SigmaSet,
    pub outcome: SplitOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A1Certificate {
    pub generator: usize,
    pub irreducible: bool,
    pub splits: Vec<SplitCertificate>,
}

/// Nonzero dominant `mu1` strictly between `0` and `lambda` coordinatewise.
fn proper_parts(lambda: &Weight) -> Vec<Weight> {
    let flat = lambda.flat();
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for &c in &flat {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c.max(0)).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let factors = lambda.factors().to_vec();
    let split = |v: &[i64]| {
        let mut it = v.iter().copied();
        factors
            .iter()
            .map(|f| (0..f.rank()).map(|_| it.next().expect("len")).collect())
            .collect::<Vec<Vec<i64>>>()
    };
    out.into_iter()
        .filter(|v| v.iter().any(|&x| x != 0) && *v != flat)
        .map(|v| Weight::new(&factors, split(&v)).expect("shape"))
        .collect()
}

fn all_splits(i: usize, pres: &SemigroupPresentation) -> Result<Vec<SplitCertificate>> {
    let gi = pres
        .gens()
        .get(i)
        .cloned()
        .ok_or_else(|| Error::Parameters(format!("generator index {i}")))?;
    proper_parts(&gi.weight)
        .into_iter()
        .map(|mu1| {
            let mu2 = &gi.weight - &mu1;
            let s1 = sigma_set(&mu1, pres)?;
            let s2 = sigma_set(&mu2, pres)?;
            let outcome = if s1.is_empty() {
                SplitOutcome::FirstOutside
            } else if s2.is_empty() {
                SplitOutcome::SecondOutside
            } else {
                let both = s1.intersect(&s2.reflect(gi.char));
                if both.is_empty() {
                    SplitOutcome::NoCommonCharacter
                } else {
                    SplitOutcome::Feasible(both)
                }
            };
            Ok(SplitCertificate {
                mu1,
                mu2,
                s1,
                s2,
                outcome,
            })
        })
        .collect()
}

/// Assertion 1): no split of generator `i` has both parts in `Z`.
pub fn check_irreducible_a1(i: usize, pres: &SemigroupPresentation) -> Result<A1Certificate> {
    let splits = all_splits(i, pres)?;
    Ok(A1Certificate {
        generator: i,
        irreducible: splits
            .iter()
            .all(|s| !matches!(s.outcome, SplitOutcome::Feasible(_))),
        splits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A2Certificate {
    pub generator: usize,
    pub divisor: usize,
    pub unique_split: bool,
    #[serde(serialize_with = "ser_q")]
    pub f_i: Q,
    #[serde(serialize_with = "ser_q")]
    pub f_j: Q,
    pub irreducible: bool,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// Assertion 2): the split through generator `j` is the only one with both
/// parts in `Z`, and `f_j` vanishes at the witness while `f_i` does not.
/// `eval(k, g)` evaluates the function attached to generator `k`.
pub fn check_irreducible_a2(
    i: usize,
    j: usize,
    pres: &SemigroupPresentation,
    witness: &GroupElement,
    eval: &dyn Fn(usize, &GroupElement) -> Result<Q>,
) -> Result<A2Certificate> {
    if i == j {
        return Err(Error::Precondition("assertion 2) needs i != j".into()));
    }
    let gens = pres.gens();
    let (gi, gj) = match (gens.get(i), gens.get(j)) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Parameters(format!("generator indices {i}, {j}"))),
    };
    let rest = &gi - &gj;
    let mut feasible: Vec<(Weight, SigmaSet)> = all_splits(i, pres)?
        .into_iter()
        .filter_map(|s| match s.outcome {
            SplitOutcome::Feasible(set) => Some((s.mu1, set)),
            _ => None,
        })
        .collect();
    feasible.sort_by(|a, b| a.0.cmp(&b.0));
    let mut expected = vec![
        (gj.weight.clone(), SigmaSet::Single { sigma: gj.char }),
        (rest.weight.clone(), SigmaSet::Single { sigma: rest.char }),
    ];
    expected.sort_by(|a, b| a.0.cmp(&b.0));
    expected.dedup();
    let unique_split = feasible == expected;
    let f_i = eval(i, witness)?;
    let f_j = eval(j, witness)?;
    Ok(A2Certificate {
        generator: i,
        divisor: j,
        unique_split,
        irreducible: unique_split && f_j.is_zero() && !f_i.is_zero(),
        f_i,
        f_j,
    })
}

/// Presentation of `Z` for a case, with the function name of each generator.
pub fn presentation_for(spec: &CaseSpec) -> Result<(SemigroupPresentation, Vec<String>)> {
    let ps = spec
        .presentation
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("case {} has no presentation of Z", spec.case)))?;
    let weights = |names: &[String]| -> Result<Vec<ExtendedWeight>> {
        names.iter().map(|n| Ok(spec.function(n)?.weight.clone())).collect()
    };
    let pres = SemigroupPresentation::new(weights(&ps.lattice)?, weights(&ps.semigroup)?)?;
    let names = ps.lattice.iter().chain(&ps.semigroup).cloned().collect();
    Ok((pres, names))
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorVerdict {
    pub name: String,
    pub weight: String,
    pub a1: A1Certificate,
    pub a2: Option<A2Certificate>,
    pub irreducible: bool,
}

/// Runs assertion 1) on every table generator, and assertion 2) where the case
/// supplies a witness.
pub fn certify_case(spec: &CaseSpec) -> Result<Vec<GeneratorVerdict>> {
    let (pres, names) = presentation_for(spec)?;
    let index = |n: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| Error::UnknownFunction(n.into()))
    };
    let eval = |k: usize, g: &GroupElement| spec.eval(&names[k], g);
    spec.generator_names
        .iter()
        .map(|name| {
            let i = index(name)?;
            let a1 = check_irreducible_a1(i, &pres)?;
            let a2 = match spec.divisibility.iter().find(|d| &d.i == name) {
                Some(d) => Some(check_irreducible_a2(i, index(&d.j)?, &pres, &d.witness, &eval)?),
                None => None,
            };
            let irreducible = a1.irreducible || a2.as_ref().is_some_and(|c| c.irreducible);
            Ok(GeneratorVerdict {
                name: name.clone(),
                weight: spec.function(name)?.weight.render(&LETTERS),
                a1,
                a2,
                irreducible,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::FactorType;

    fn case5_pres() -> (Vec<FactorType>, SemigroupPresentation) {
        let f = vec![FactorType::sp(4), FactorType::sp(4)];
        let w = |t: &[(usize, usize, i64)]| ExtendedWeight::new(Weight::from_terms(&f, t), 0);
        let p = SemigroupPresentation::new(
            vec![w(&[(0, 2, 1)]), w(&[(0, 1, 1), (1, 1, 1)])],
            vec![w(&[(1, 2, 1)])],
        )
        .unwrap();
        (f, p)
    }

    #[test]
    fn case5_membership() {
        let (f, p) = case5_pres();
        let pi1 = ExtendedWeight::new(Weight::from_terms(&f, &[(0, 1, 1)]), 0);
        assert_eq!(solve_in_basis(&pi1, &p).unwrap(), None);
        for (i, g) in p.gens().iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(solve_in_basis(g, &p).unwrap(), Some(e));
        }
        let neg = ExtendedWeight::new(Weight::from_terms(&f, &[(1, 2, -1)]), 0);
        assert_eq!(solve_in_basis(&neg, &p).unwrap(), None);
        assert!(check_irreducible_a1(1, &p).unwrap().irreducible);
        assert_eq!(sigma_set(&Weight::zero(&f), &p).unwrap(), SigmaSet::Single { sigma: 0 });
    }

    #[test]
    fn dependent_generators_are_reported() {
        let f = vec![FactorType::sl(3)];
        let w = ExtendedWeight::new(Weight::from_terms(&f, &[(0, 1, 1)]), 0);
        assert_eq!(
            SemigroupPresentation::new(vec![w.clone()], vec![w]),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn progression_arithmetic() {
        let a = SigmaSet::Progression {
            base: -2,
            step: 6,
            s_min: None,
            s_max: Some(0),
        };
        assert!(a.contains(-2) && a.contains(-8) && !a.contains(4) && !a.contains(-5));
        let r = a.reflect(1);
        assert_eq!(
            r,
            SigmaSet::Progression {
                base: 3,
                step: 6,
                s_min: Some(0),
                s_max: None
            }
        );
        assert!(a.intersect(&r).is_empty());
        let b = SigmaSet::Progression {
            base: 2,
            step: 4,
            s_min: None,
            s_max: None,
        };
        assert_eq!(
            a.intersect(&b),
            SigmaSet::Progression {
                base: -2,
                step: 12,
                s_min: None,
                s_max: Some(0)
            }
        );
        assert_eq!(
            SigmaSet::Single { sigma: 6 }.intersect(&b),
            SigmaSet::Single { sigma: 6 }
        );
    }

    #[test]
    fn bezout_vectors() {
        for d in [vec![3, -5], vec![0, 2, 3], vec![-1], vec![6, 10, 15]] {
            let w = bezout(&d);
            assert_eq!(w.iter().zip(&d).map(|(a, b)| a * b).sum::<i64>(), 1, "{d:?}");
        }
    }
}
