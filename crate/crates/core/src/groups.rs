//! Exact matrix realizations of `SL_n`, `Sp_2m` (form `Omega_2m`) and `SO_n`
//! (form `F_n`), with reproducible random sampling.

use std::ops::Mul;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{q, ExactMatrix, Q};
use crate::weight::{FactorType, TorusElement};

/// Integer parameters of random generators are drawn from `-PARAM..=PARAM`.
pub const PARAM: i64 = 3;

/// RNG for stream `stream` of a run seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// One matrix per factor of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<ExactMatrix>);

impl GroupElement {
    pub fn identity(factors: &[FactorType]) -> Self {
        Self(factors.iter().map(|f| ExactMatrix::identity(f.size())).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self(self.0.iter().map(ExactMatrix::inverse).collect::<Result<_>>()?))
    }

    /// Inverse computed from the invariant forms where possible.
    pub fn inverse_in(&self, factors: &[FactorType]) -> Result<Self> {
        if factors.len() != self.0.len() {
            return Err(Error::Shape("factor count".into()));
        }
        self.0
            .iter()
            .zip(factors)
            .map(|(m, &f)| group_inverse(m, f))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn factor(&self, k: usize) -> &ExactMatrix {
        &self.0[k]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(ExactMatrix::is_identity)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.0.len(), rhs.0.len(), "factor count");
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a * b).collect())
    }
}

/// Matrix of the invariant form, if any.
pub fn invariant_form(factor: FactorType) -> Option<ExactMatrix> {
    match factor {
        FactorType::SpecialLinear(_) => None,
        FactorType::Symplectic(n) => Some(ExactMatrix::omega(n)),
        FactorType::SpecialOrthogonal(n) => Some(ExactMatrix::flip(n)),
    }
}

/// Inverse of an element of `factor`: `F M^T F` on `SO`, `-Omega M^T Omega`
/// on `Sp`, elimination on `SL`.
pub fn group_inverse(m: &ExactMatrix, factor: FactorType) -> Result<ExactMatrix> {
    match invariant_form(factor) {
        None => m.inverse(),
        Some(f) => Ok(&(&f.transpose() * &m.transpose()) * &f),
    }
}

/// True iff `m` satisfies the defining equations of `factor` exactly.
pub fn check_invariant_form(m: &ExactMatrix, factor: FactorType) -> Result<bool> {
    let n = factor.size();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!("{}x{} matrix for {factor}", m.rows(), m.cols())));
    }
    Ok(match invariant_form(factor) {
        None => m.det().is_one(),
        Some(f) => {
            let preserved = &(&m.transpose() * &f) * m == f;
            preserved && (matches!(factor, FactorType::Symplectic(_)) || m.det().is_one())
        }
    })
}

/// `diag(P, (P^{-1})^#)`.
pub fn symplectic_type1(p: &ExactMatrix) -> Result<ExactMatrix> {
    let m = p.rows();
    let low = p.inverse()?.sharp();
    let mut out = ExactMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = p[(i, j)].clone();
            out[(m + i, m + j)] = low[(i, j)].clone();
        }
    }
    Ok(out)
}

/// `[[E, C], [0, E]]` for antidiagonally symmetric `C`.
pub fn symplectic_type2(c: &ExactMatrix) -> Result<ExactMatrix> {
    if !c.is_square() {
        return Err(Error::Shape("type-2 block must be square".into()));
    }
    if c.sharp() != *c {
        return Err(Error::NotAntidiagonalSymmetric);
    }
    let m = c.rows();
    let mut out = ExactMatrix::identity(2 * m);
    for i in 0..m {
        for j in 0..m {
            out[(i, m + j)] = c[(i, j)].clone();
        }
    }
    Ok(out)
}

fn small(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-PARAM..=PARAM))
}

/// Random element of the upper (or lower) unipotent subgroup of `factor`.
pub fn random_unipotent(factor: FactorType, rng: &mut impl Rng, upper: bool) -> ExactMatrix {
    let n = factor.size();
    let mut a = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = small(rng);
            if upper {
                a[(i, j)] = x;
            } else {
                a[(j, i)] = x;
            }
        }
    }
    let id = ExactMatrix::identity(n);
    match invariant_form(factor) {
        None => &id + &a,
        Some(f) => {
            // Omega and F are orthogonal matrices.
            let finv = f.transpose();
            let x = &a - &(&(&finv * &a.transpose()) * &f);
            let cayley = (&id - &x).inverse().expect("nilpotent");
            &(&id + &x) * &cayley
        }
    }
}

/// Product of `length` unipotent factors alternating between upper and lower.
pub fn random_element_rng(factor: FactorType, rng: &mut impl Rng, length: usize) -> ExactMatrix {
    let mut g = ExactMatrix::identity(factor.size());
    for k in 0..length {
        g = &g * &random_unipotent(factor, rng, k % 2 == 0);
    }
    g
}

pub fn random_element(factor: FactorType, seed: u64, length: usize) -> ExactMatrix {
    random_element_rng(factor, &mut rng_for(seed, 0), length)
}

/// Default word length for generic samples.
pub const WORD: usize = 4;

pub fn random_group_element(factors: &[FactorType], rng: &mut impl Rng) -> GroupElement {
    GroupElement(factors.iter().map(|&f| random_element_rng(f, rng, WORD)).collect())
}

/// Nonzero rational with numerator and denominator in `1..=3` up to sign.
pub fn random_scalar(rng: &mut impl Rng) -> Q {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d = rng.gen_range(1..=3);
    crate::matrix::qf(n, d)
}

pub fn random_torus(factors: &[FactorType], rng: &mut impl Rng) -> TorusElement {
    let params = factors
        .iter()
        .map(|f| (0..f.rank()).map(|_| random_scalar(rng)).collect())
        .collect();
    TorusElement::new(factors, params).expect("nonzero parameters")
}

pub fn random_upper_unipotent(factors: &[FactorType], rng: &mut impl Rng) -> GroupElement {
    GroupElement(factors.iter().map(|&f| random_unipotent(f, rng, true)).collect())
}

/// True iff the first `k` and last `k` columns of `q` have Gram matrix `Omega_2k`
/// with respect to `Omega_2m`.
pub fn gram_columns_check(qm: &ExactMatrix, k: usize) -> bool {
    let n = qm.rows();
    if !n.is_multiple_of(2) || qm.cols() != n || k == 0 || 2 * k > n {
        return false;
    }
    let cols: Vec<usize> = (1..=k).chain(n - k + 1..=n).collect();
    let c = qm.columns(&cols);
    &(&c.transpose() * &ExactMatrix::omega(n)) * &c == ExactMatrix::omega(2 * k)
}

/// `h` written on rows and columns `1` and `size`.
pub fn first_last(size: usize, h: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::embed(size, &[1, size], h)
}

/// `h` written on the central block of size `size - 2k`.
pub fn central(size: usize, k: usize, h: &ExactMatrix) -> ExactMatrix {
    let idx: Vec<usize> = (k + 1..=size - k).collect();
    ExactMatrix::embed(size, &idx, h)
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}
