//! Weights of products of classical groups in fundamental-weight coordinates.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{q, qf, rank, ExactMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorType {
    SpecialLinear(usize),
    Symplectic(usize),
    SpecialOrthogonal(usize),
}

/// Root system type with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
}

impl FactorType {
    pub fn sl(n: usize) -> Self {
        Self::SpecialLinear(n)
    }

    pub fn sp(size: usize) -> Self {
        Self::Symplectic(size)
    }

    pub fn so(n: usize) -> Self {
        Self::SpecialOrthogonal(n)
    }

    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Self::SpecialLinear(n) => n >= 2,
            Self::Symplectic(n) => n >= 2 && n % 2 == 0,
            Self::SpecialOrthogonal(n) => n >= 3,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidFactor(self.to_string()))
        }
    }

    /// Matrix size.
    pub fn size(self) -> usize {
        match self {
            Self::SpecialLinear(n) | Self::Symplectic(n) | Self::SpecialOrthogonal(n) => n,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Self::SpecialLinear(n) => n - 1,
            Self::Symplectic(n) | Self::SpecialOrthogonal(n) => n / 2,
        }
    }

    pub fn root_type(self) -> RootType {
        match self {
            Self::SpecialLinear(n) => RootType::A(n - 1),
            Self::Symplectic(n) => RootType::C(n / 2),
            Self::SpecialOrthogonal(n) if n % 2 == 1 => RootType::B(n / 2),
            Self::SpecialOrthogonal(n) => RootType::D(n / 2),
        }
    }

    /// Number of epsilon coordinates (and of free torus parameters, plus one for SL).
    pub fn eps_len(self) -> usize {
        match self {
            Self::SpecialLinear(n) => n,
            _ => self.rank(),
        }
    }

    /// Epsilon coordinates of the `i`-th fundamental weight (1-based).
    pub fn fundamental_eps(self, i: usize) -> Vec<Q> {
        let len = self.eps_len();
        let ones = |k: usize| -> Vec<Q> { (0..len).map(|j| q(i64::from(j < k))).collect() };
        match self.root_type() {
            RootType::A(_) | RootType::C(_) => ones(i),
            RootType::B(k) => {
                if i < k {
                    ones(i)
                } else {
                    vec![qf(1, 2); k]
                }
            }
            RootType::D(k) => {
                if i + 2 <= k {
                    ones(i)
                } else if i + 1 == k {
                    let mut v = vec![qf(1, 2); k];
                    v[k - 1] = qf(-1, 2);
                    v
                } else {
                    vec![qf(1, 2); k]
                }
            }
        }
    }

    /// Diagonal of the torus element with free parameters `t`.
    pub fn torus_diagonal(self, t: &[Q]) -> Vec<Q> {
        match self {
            Self::SpecialLinear(_) => {
                let mut d = t.to_vec();
                let p: Q = t.iter().fold(Q::one(), |acc, x| acc * x);
                d.push(p.recip());
                d
            }
            _ => {
                let mut d = t.to_vec();
                if self.size() % 2 == 1 {
                    d.push(Q::one());
                }
                d.extend(t.iter().rev().map(Q::recip));
                d
            }
        }
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SpecialLinear(n) => write!(f, "SL{n}"),
            Self::Symplectic(n) => write!(f, "Sp{n}"),
            Self::SpecialOrthogonal(n) => write!(f, "SO{n}"),
        }
    }
}

impl Serialize for FactorType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A weight of a product of classical groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    factors: Vec<FactorType>,
    coeffs: Vec<Vec<i64>>,
}

impl Weight {
    pub fn zero(factors: &[FactorType]) -> Self {
        Self {
            factors: factors.to_vec(),
            coeffs: factors.iter().map(|f| vec![0; f.rank()]).collect(),
        }
    }

    pub fn new(factors: &[FactorType], coeffs: Vec<Vec<i64>>) -> Result<Self> {
        if coeffs.len() != factors.len() {
            return Err(Error::Length {
                expected: factors.len(),
                got: coeffs.len(),
            });
        }
        for (f, c) in factors.iter().zip(&coeffs) {
            if c.len() != f.rank() {
                return Err(Error::Length {
                    expected: f.rank(),
                    got: c.len(),
                });
            }
        }
        Ok(Self {
            factors: factors.to_vec(),
            coeffs,
        })
    }

    /// Weight supported on a single factor.
    pub fn on_factor(factors: &[FactorType], index: usize, coeffs: Vec<i64>) -> Result<Self> {
        let mut w = Self::zero(factors);
        let f = factors[index];
        if coeffs.len() != f.rank() {
            return Err(Error::Length {
                expected: f.rank(),
                got: coeffs.len(),
            });
        }
        w.coeffs[index] = coeffs;
        Ok(w)
    }

    /// Sum of `c * (i-th fundamental weight of factor k)` over `(k, i, c)`, `i` 1-based.
    /// Terms with `i == 0` are dropped.
    pub fn from_terms(factors: &[FactorType], terms: &[(usize, usize, i64)]) -> Self {
        let mut w = Self::zero(factors);
        for &(k, i, c) in terms {
            if i == 0 {
                continue;
            }
            assert!(i <= factors[k].rank(), "fundamental weight {i} of {}", factors[k]);
            w.coeffs[k][i - 1] += c;
        }
        w
    }

    pub fn factors(&self) -> &[FactorType] {
        &self.factors
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn flat(&self) -> Vec<i64> {
        self.coeffs.iter().flatten().copied().collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().flatten().sum()
    }

    pub fn to_epsilon_coords(&self) -> Vec<Vec<Q>> {
        self.factors
            .iter()
            .zip(&self.coeffs)
            .map(|(f, c)| {
                let mut v = vec![Q::zero(); f.eps_len()];
                for (i, &ci) in c.iter().enumerate() {
                    if ci == 0 {
                        continue;
                    }
                    for (x, e) in v.iter_mut().zip(f.fundamental_eps(i + 1)) {
                        *x += e * q(ci);
                    }
                }
                v
            })
            .collect()
    }

    /// Inverse of `to_epsilon_coords`.
    pub fn from_epsilon_coords(factors: &[FactorType], eps: &[Vec<Q>]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(factors.len());
        for (f, v) in factors.iter().zip(eps) {
            let r = f.rank();
            let basis: Vec<Vec<Q>> = (1..=r).map(|i| f.fundamental_eps(i)).collect();
            // Solve sum c_i basis_i = v.
            let a: Vec<Vec<Q>> = (0..f.eps_len())
                .map(|j| basis.iter().map(|b| b[j].clone()).collect())
                .collect();
            let sol = crate::matrix::solve_linear(&a, v)
                .ok_or_else(|| Error::Parse("not in the weight lattice".into()))?;
            let mut c = Vec::with_capacity(r);
            for x in sol {
                if !x.is_integer() {
                    return Err(Error::Parse("not in the weight lattice".into()));
                }
                c.push(i64::try_from(x.to_integer()).map_err(|_| Error::Parse("overflow".into()))?);
            }
            coeffs.push(c);
        }
        Self::new(factors, coeffs)
    }

    /// Value of the weight as a character on the torus element.
    pub fn eval_on_torus(&self, t: &TorusElement) -> Result<Q> {
        if t.factors != self.factors {
            return Err(Error::Shape("torus and weight factor types differ".into()));
        }
        let mut out = Q::one();
        for (k, (f, eps)) in self.factors.iter().zip(self.to_epsilon_coords()).enumerate() {
            let diag = f.torus_diagonal(&t.params[k]);
            for (e, x) in eps.iter().zip(&diag) {
                if !e.is_integer() {
                    return Err(Error::NonIntegral { factor: k });
                }
                let p = i32::try_from(e.to_integer()).map_err(|_| Error::NonIntegral { factor: k })?;
                out *= pow(x, p);
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.factors, other.factors, "weights of different groups");
        Self {
            factors: self.factors.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
                .collect(),
        }
    }

    /// True if `self - other` is dominant.
    pub fn dominates(&self, other: &Self) -> bool {
        (self - other).is_dominant()
    }

    pub fn scaled(&self, c: i64) -> Self {
        self.zip_with(self, |x, _| c * x)
    }

    /// Renders with letters `letters[k]` for factor `k`, e.g. `pi_1+phi_2`.
    pub fn render(&self, letters: &[&str]) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                let name = format!("{}_{}", letters.get(k).copied().unwrap_or("w"), i + 1);
                match x {
                    0 => {}
                    1 => parts.push(name),
                    _ => parts.push(format!("{x}{name}")),
                }
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push('-');
                s.push_str(rest);
            } else {
                s.push('+');
                s.push_str(p);
            }
        }
        s
    }
}

pub(crate) fn pow(x: &Q, p: i32) -> Q {
    if p >= 0 {
        num_traits::pow(x.clone(), p as usize)
    } else {
        num_traits::pow(x.recip(), (-p) as usize)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// A weight together with a multiple of the basis character of `H`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedWeight {
    pub weight: Weight,
    pub char: i64,
}

impl ExtendedWeight {
    pub fn new(weight: Weight, char: i64) -> Self {
        Self { weight, char }
    }

    pub fn zero(factors: &[FactorType]) -> Self {
        Self::new(Weight::zero(factors), 0)
    }

    /// Fundamental coordinates followed by the character coordinate.
    pub fn flat(&self) -> Vec<i64> {
        let mut v = self.weight.flat();
        v.push(self.char);
        v
    }

    pub fn render(&self, letters: &[&str]) -> String {
        match self.char {
            0 => self.weight.render(letters),
            1 => format!("({}, chi0)", self.weight.render(letters)),
            -1 => format!("({}, -chi0)", self.weight.render(letters)),
            c => format!("({}, {c}chi0)", self.weight.render(letters)),
        }
    }
}

impl Add for &ExtendedWeight {
    type Output = ExtendedWeight;
    fn add(self, rhs: &ExtendedWeight) -> ExtendedWeight {
        ExtendedWeight::new(&self.weight + &rhs.weight, self.char + rhs.char)
    }
}

impl Sub for &ExtendedWeight {
    type Output = ExtendedWeight;
    fn sub(self, rhs: &ExtendedWeight) -> ExtendedWeight {
        ExtendedWeight::new(&self.weight - &rhs.weight, self.char - rhs.char)
    }
}

impl fmt::Debug for ExtendedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.weight, self.char)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtendedWeight::new(self.clone(), 0).serialize(s)
    }
}

impl Serialize for ExtendedWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.weight.coeffs.len() + 1))?;
        for (k, c) in self.weight.coeffs.iter().enumerate() {
            map.serialize_entry(&k.to_string(), c)?;
        }
        map.serialize_entry("char", &self.char)?;
        map.end()
    }
}

/// Element of the diagonal torus of a product of classical groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    factors: Vec<FactorType>,
    params: Vec<Vec<Q>>,
}

impl TorusElement {
    /// `params[k]` holds `rank` nonzero parameters for SL, Sp and SO factors alike.
    pub fn new(factors: &[FactorType], params: Vec<Vec<Q>>) -> Result<Self> {
        if params.len() != factors.len() {
            return Err(Error::Length {
                expected: factors.len(),
                got: params.len(),
            });
        }
        for (f, p) in factors.iter().zip(&params) {
            if p.len() != f.rank() {
                return Err(Error::Length {
                    expected: f.rank(),
                    got: p.len(),
                });
            }
            if p.iter().any(Zero::is_zero) {
                return Err(Error::Precondition("torus parameter is zero".into()));
            }
        }
        Ok(Self {
            factors: factors.to_vec(),
            params,
        })
    }

    pub fn factors(&self) -> &[FactorType] {
        &self.factors
    }

    pub fn params(&self) -> &[Vec<Q>] {
        &self.params
    }

    pub fn matrices(&self) -> Vec<ExactMatrix> {
        self.factors
            .iter()
            .zip(&self.params)
            .map(|(f, p)| ExactMatrix::diagonal(&f.torus_diagonal(p)))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.factors, other.factors);
        Self {
            factors: self.factors.clone(),
            params: self
                .params
                .iter()
                .zip(&other.params)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
                .collect(),
        }
    }
}

/// Weight of a single factor from its fundamental coefficients.
pub fn weight_from_fundamental(factor: FactorType, coeffs: &[i64]) -> Result<Weight> {
    factor.validate()?;
    Weight::new(&[factor], vec![coeffs.to_vec()])
}

pub fn to_epsilon_coords(w: &Weight) -> Vec<Vec<Q>> {
    w.to_epsilon_coords()
}

pub fn eval_on_torus(w: &Weight, t: &TorusElement) -> Result<Q> {
    w.eval_on_torus(t)
}

/// Rank over the rationals of the coefficient vectors (character coordinate included).
pub fn rank_of_weights(ws: &[ExtendedWeight]) -> usize {
    let rows: Vec<Vec<Q>> = ws
        .iter()
        .map(|w| w.flat().into_iter().map(q).collect())
        .collect();
    rank(&rows)
}

/// Duality `lambda -> lambda^*` on fundamental coordinates (action of `-w_0`).
pub fn dual(factor: FactorType, coeffs: &[i64]) -> Vec<i64> {
    match factor.root_type() {
        RootType::A(_) => coeffs.iter().rev().copied().collect(),
        RootType::D(k) if k.is_odd() => {
            let mut c = coeffs.to_vec();
            c.swap(k - 2, k - 1);
            c
        }
        _ => coeffs.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_weights() {
        let d4 = FactorType::so(8);
        let w = weight_from_fundamental(d4, &[0, 0, 1, 1]).unwrap();
        assert_eq!(w.to_epsilon_coords()[0], vec![q(1), q(1), q(1), q(0)]);
        let c2 = FactorType::sp(4);
        let w = weight_from_fundamental(c2, &[0, 1]).unwrap();
        assert_eq!(w.to_epsilon_coords()[0], vec![q(1), q(1)]);
        assert!(weight_from_fundamental(c2, &[1]).is_err());
    }

    #[test]
    fn torus_values() {
        let sl2 = FactorType::sl(2);
        let w = weight_from_fundamental(sl2, &[1]).unwrap();
        let t = TorusElement::new(&[sl2], vec![vec![q(3)]]).unwrap();
        assert_eq!(w.eval_on_torus(&t).unwrap(), q(3));
        let sp4 = FactorType::sp(4);
        let w = weight_from_fundamental(sp4, &[0, 1]).unwrap();
        let t = TorusElement::new(&[sp4], vec![vec![q(2), q(5)]]).unwrap();
        assert_eq!(w.eval_on_torus(&t).unwrap(), q(10));
        let so6 = FactorType::so(6);
        let w = weight_from_fundamental(so6, &[0, 0, 1]).unwrap();
        let t = TorusElement::new(&[so6], vec![vec![q(2), q(3), q(5)]]).unwrap();
        assert_eq!(w.eval_on_torus(&t), Err(Error::NonIntegral { factor: 0 }));
    }

    #[test]
    fn duality() {
        assert_eq!(dual(FactorType::sl(4), &[1, 2, 3]), vec![3, 2, 1]);
        assert_eq!(dual(FactorType::so(6), &[1, 2, 3]), vec![1, 3, 2]);
        assert_eq!(dual(FactorType::so(8), &[1, 2, 3, 4]), vec![1, 2, 3, 4]);
        assert_eq!(dual(FactorType::so(7), &[1, 2, 3]), vec![1, 2, 3]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of_weights(&[]), 0);
        let f = [FactorType::sp(4), FactorType::sp(4)];
        let gens = [
            ExtendedWeight::new(Weight::from_terms(&f, &[(0, 2, 1)]), 0),
            ExtendedWeight::new(Weight::from_terms(&f, &[(1, 2, 1)]), 0),
            ExtendedWeight::new(Weight::from_terms(&f, &[(0, 1, 1), (1, 1, 1)]), 0),
        ];
        assert_eq!(rank_of_weights(&gens), 3);
    }
}
