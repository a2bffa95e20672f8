//! Registry of the eight homogeneous spaces: factor types, embedding of `H`,
//! weight functions with their extended weights, identities among them, and
//! the data needed to certify irreducibility.

mod diagonal;
mod slsp;
mod symplectic;

pub use diagonal::tau_basis;
pub use symplectic::iota6;

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{check_invariant_form, random_element_rng, random_scalar, GroupElement, WORD};
use crate::matrix::{ExactMatrix, Q};
use crate::weight::{pow, ExtendedWeight, FactorType, Weight};

pub type EvalFn = Arc<dyn Fn(&GroupElement) -> Q + Send + Sync>;
type EmbedFn = Arc<dyn Fn(&[ExactMatrix], &Q) -> GroupElement + Send + Sync>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl Params {
    pub fn new(n: usize, m: usize, l: usize) -> Self {
        Self { n, m, l }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} l={}", self.n, self.m, self.l)
    }
}

#[derive(Clone)]
pub struct WeightFunction {
    pub name: String,
    pub weight: ExtendedWeight,
    eval: EvalFn,
}

impl WeightFunction {
    fn new(name: &str, weight: ExtendedWeight, eval: EvalFn) -> Self {
        Self {
            name: name.to_string(),
            weight,
            eval,
        }
    }

    pub fn eval(&self, g: &GroupElement) -> Q {
        (self.eval)(g)
    }
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.name, self.weight)
    }
}

/// A function that enters an identity but is not itself a catalog weight function.
#[derive(Clone)]
pub struct Auxiliary {
    pub name: String,
    eval: EvalFn,
}

/// `coeff * prod name^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub coeff: i64,
    pub powers: Vec<(String, u32)>,
}

impl Monomial {
    pub fn new(coeff: i64, powers: &[(&str, u32)]) -> Self {
        Self {
            coeff,
            powers: powers.iter().map(|(s, p)| (s.to_string(), *p)).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .powers
            .iter()
            .map(|(s, p)| if *p == 1 { s.clone() } else { format!("{s}^{p}") })
            .collect();
        let body = body.join("*");
        match (self.coeff, body.is_empty()) {
            (c, true) => write!(f, "{c}"),
            (1, false) => write!(f, "{body}"),
            (-1, false) => write!(f, "-{body}"),
            (c, false) => write!(f, "{c}*{body}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl Relation {
    fn new(lhs: Monomial, rhs: Monomial) -> Self {
        Self { lhs, rhs }
    }

    pub fn label(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }
}

/// A factor of `H` (the torus part excluded).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HFactor {
    pub group: FactorType,
    /// Embedded as a central symplectic block of one factor of `G`.
    pub central: bool,
}

/// A point of `H`: one matrix per factor of `H` and the torus parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    pub parts: Vec<ExactMatrix>,
    pub t: Q,
}

/// Lattice and semigroup generators, named by catalog functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationSpec {
    pub lattice: Vec<String>,
    pub semigroup: Vec<String>,
}

/// Data for the non-divisibility argument: `f_i` is not divisible by `f_j`.
#[derive(Clone, Debug)]
pub struct DivisibilitySpec {
    pub i: String,
    pub j: String,
    pub witness: GroupElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chi0 {
    Trivial,
    /// `chi_0(t) = t^e`.
    Power(i32),
}

#[derive(Clone)]
pub struct CaseSpec {
    pub case: u8,
    pub params: Params,
    pub factors: Vec<FactorType>,
    pub h_factors: Vec<HFactor>,
    pub functions: Vec<WeightFunction>,
    pub auxiliaries: Vec<Auxiliary>,
    pub relations: Vec<Relation>,
    /// Table generators by function name, in table order. Empty for Case 2,
    /// whose generators come from the spectrum.
    pub generator_names: Vec<String>,
    pub presentation: Option<PresentationSpec>,
    pub divisibility: Vec<DivisibilitySpec>,
    chi0: Chi0,
    embed: EmbedFn,
}

impl fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseSpec")
            .field("case", &self.case)
            .field("params", &self.params)
            .field("functions", &self.functions)
            .finish_non_exhaustive()
    }
}

/// Letters used for the fundamental weights of the factors of `G`.
pub const LETTERS: [&str; 3] = ["pi", "phi", "psi"];

impl CaseSpec {
    pub fn new(case: u8, params: Params) -> Result<Self> {
        validate(case, params)?;
        let p = params;
        Ok(match case {
            1 => diagonal::case1(p.n),
            2 => diagonal::case2(p.n),
            3 => slsp::case34(p.n, p.m, true),
            4 => slsp::case34(p.n, p.m, false),
            5 => symplectic::case5(p.n, p.m),
            6 => symplectic::case6(p.n),
            7 => symplectic::case7(p.n, p.m, p.l),
            _ => symplectic::case8(p.n, p.m),
        })
    }

    pub fn has_character(&self) -> bool {
        self.chi0 != Chi0::Trivial
    }

    pub fn function(&self, name: &str) -> Result<&WeightFunction> {
        self.functions
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFunction(name.into()))
    }

    pub fn has_function(&self, name: &str) -> bool {
        self.functions.iter().any(|f| f.name == name)
    }

    /// Evaluates a catalog or auxiliary function.
    pub fn eval(&self, name: &str, g: &GroupElement) -> Result<Q> {
        if let Some(f) = self.functions.iter().find(|f| f.name == name) {
            return Ok(f.eval(g));
        }
        self.auxiliaries
            .iter()
            .find(|a| a.name == name)
            .map(|a| (a.eval)(g))
            .ok_or_else(|| Error::UnknownFunction(name.into()))
    }

    pub fn eval_monomial(&self, mono: &Monomial, g: &GroupElement) -> Result<Q> {
        let mut v = crate::matrix::q(mono.coeff);
        for (name, p) in &mono.powers {
            v *= pow(&self.eval(name, g)?, *p as i32);
        }
        Ok(v)
    }

    /// Sum of extended weights of a monomial, if every factor is a catalog function.
    pub fn monomial_weight(&self, mono: &Monomial) -> Option<ExtendedWeight> {
        let mut w = ExtendedWeight::zero(&self.factors);
        for (name, p) in &mono.powers {
            let f = self.functions.iter().find(|f| &f.name == name)?;
            for _ in 0..*p {
                w = &w + &f.weight;
            }
        }
        Some(w)
    }

    /// Table generators as `(label, weight)`.
    pub fn table_generators(&self) -> Result<Vec<(String, ExtendedWeight)>> {
        match self.case {
            1 | 2 => {
                let gens = crate::spectrum::case12_generators(self.case, self.params.n)?;
                let names: Vec<String> = if self.case == 1 {
                    self.generator_names.clone()
                } else {
                    vec![String::new(); gens.len()]
                };
                Ok(names.into_iter().zip(gens).collect())
            }
            _ => self
                .generator_names
                .iter()
                .map(|n| Ok((n.clone(), self.function(n)?.weight.clone())))
                .collect(),
        }
    }

    /// Value of the basis character on the torus parameter.
    pub fn chi0(&self, t: &Q) -> Q {
        match self.chi0 {
            Chi0::Trivial => Q::one(),
            Chi0::Power(e) => pow(t, e),
        }
    }

    /// Image of `h` in `G`.
    pub fn embed_subgroup(&self, h: &HElement) -> Result<GroupElement> {
        if h.parts.len() != self.h_factors.len() {
            return Err(Error::Shape(format!(
                "expected {} factors of H, got {}",
                self.h_factors.len(),
                h.parts.len()
            )));
        }
        for (m, f) in h.parts.iter().zip(&self.h_factors) {
            if !check_invariant_form(m, f.group)? {
                return Err(Error::Precondition(format!("element is not in {}", f.group)));
            }
        }
        if h.t == Q::from_integer(0.into()) {
            return Err(Error::Precondition("torus parameter is zero".into()));
        }
        if !self.has_character() && !h.t.is_one() {
            return Err(Error::Precondition("this subgroup has no torus factor".into()));
        }
        Ok((self.embed)(&h.parts, &h.t))
    }

    pub fn h_identity(&self) -> HElement {
        HElement {
            parts: self
                .h_factors
                .iter()
                .map(|f| ExactMatrix::identity(f.group.size()))
                .collect(),
            t: Q::one(),
        }
    }

    /// Random element of `H`; with `with_torus` false the torus parameter is 1
    /// and the sample lies in `H_0`.
    pub fn random_h(&self, rng: &mut impl Rng, with_torus: bool) -> HElement {
        let parts = self
            .h_factors
            .iter()
            .map(|f| random_element_rng(f.group, rng, WORD))
            .collect();
        let t = if with_torus && self.has_character() {
            random_scalar(rng)
        } else {
            Q::one()
        };
        HElement { parts, t }
    }

    /// Random element of the central symplectic factors only.
    pub fn random_central(&self, rng: &mut impl Rng) -> Option<HElement> {
        if !self.h_factors.iter().any(|f| f.central) {
            return None;
        }
        let parts = self
            .h_factors
            .iter()
            .map(|f| {
                if f.central {
                    random_element_rng(f.group, rng, WORD)
                } else {
                    ExactMatrix::identity(f.group.size())
                }
            })
            .collect();
        Some(HElement { parts, t: Q::one() })
    }

    pub fn h_mul(&self, a: &HElement, b: &HElement) -> HElement {
        HElement {
            parts: a.parts.iter().zip(&b.parts).map(|(x, y)| x * y).collect(),
            t: &a.t * &b.t,
        }
    }
}

/// Checks the table constraints for a case.
pub fn validate(case: u8, p: Params) -> Result<()> {
    let bad = |msg: &str| Err(Error::Parameters(format!("case {case}: {msg}")));
    match case {
        1 if p.n < 2 => bad("n >= 2 required"),
        2 if p.n < 3 => bad("n >= 3 required"),
        3 if p.n < 3 || p.m < 1 => bad("n >= 3 and m >= 1 required"),
        4 if p.n < 5 || p.m < 1 => bad("n >= 5 and m >= 1 required"),
        5 if p.n < 1 || p.m < 1 => bad("n >= 1 and m >= 1 required"),
        6 if p.n < 3 => bad("n >= 3 required"),
        7 if p.n < 1 || p.m < 1 || p.l < 1 => bad("n, m, l >= 1 required"),
        8 if p.n < 1 || p.m < 1 => bad("n >= 1 and m >= 1 required"),
        1..=8 => Ok(()),
        _ => Err(Error::Unsupported(format!("case {case}"))),
    }
}

/// Parameter grid used by the test suites: every admissible point with
/// `n, m, l <= 4`, except Case 4 (which needs `n >= 5`) and the rank-one
/// cases, whose grids are listed explicitly.
pub fn grid(case: u8) -> Vec<Params> {
    let r = 1..=4usize;
    let mut out = Vec::new();
    match case {
        1 => out.extend((2..=5).map(|n| Params::new(n, 0, 0))),
        2 => out.extend((3..=8).map(|n| Params::new(n, 0, 0))),
        3 => {
            for n in 3..=4 {
                out.extend(r.clone().map(|m| Params::new(n, m, 0)));
            }
        }
        4 => {
            for n in 5..=6 {
                out.extend((1..=2).map(|m| Params::new(n, m, 0)));
            }
        }
        5 | 8 => {
            for n in r.clone() {
                out.extend(r.clone().map(|m| Params::new(n, m, 0)));
            }
        }
        6 => out.extend((3..=4).map(|n| Params::new(n, 0, 0))),
        7 => {
            for n in r.clone() {
                for m in r.clone() {
                    out.extend(r.clone().map(|l| Params::new(n, m, l)));
                }
            }
        }
        _ => {}
    }
    out
}

/// Helper for building weights: `(factor, index, coefficient)` terms.
pub(crate) fn ew(factors: &[FactorType], terms: &[(usize, usize, i64)], char: i64) -> ExtendedWeight {
    ExtendedWeight::new(Weight::from_terms(factors, terms), char)
}

pub(crate) fn func(f: impl Fn(&GroupElement) -> Q + Send + Sync + 'static) -> EvalFn {
    Arc::new(f)
}

pub(crate) fn aux(name: &str, f: impl Fn(&GroupElement) -> Q + Send + Sync + 'static) -> Auxiliary {
    Auxiliary {
        name: name.into(),
        eval: Arc::new(f),
    }
}

/// `a_{r1,1} a_{r2,c} - a_{r1,c} a_{r2,1}`: the 2x2 minor on rows `r1, r2`
/// and columns `1, c`.
pub(crate) fn first_last_minor(a: &ExactMatrix, r1: usize, r2: usize, c: usize) -> Q {
    a.at(r1, 1) * a.at(r2, c) - a.at(r1, c) * a.at(r2, 1)
}

/// `a_{ra,1} b_{rb,cb} - a_{ra,ca} b_{rb,1}`.
pub(crate) fn cross(a: &ExactMatrix, ra: usize, ca: usize, b: &ExactMatrix, rb: usize, cb: usize) -> Q {
    a.at(ra, 1) * b.at(rb, cb) - a.at(ra, ca) * b.at(rb, 1)
}

pub(crate) fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}
