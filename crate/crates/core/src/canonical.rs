//! Canonical representatives of generic `U x H_0`-orbits for Cases 3 to 8.
//!
//! Each pipeline multiplies `g` on the left by upper unitriangular elements of
//! single factors and on the right by embedded elements of `H_0`. The entries
//! of the resulting column slices are Laurent monomials in the values of the
//! catalog functions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cases::{iota6, CaseSpec};
use crate::error::{Error, Result};
use crate::groups::{
    check_invariant_form, group_inverse, rng_for, symplectic_type1, symplectic_type2, GroupElement,
};
use crate::matrix::{q, solve_linear, ExactMatrix, Q};
use crate::par::{par_map, Execution};
use crate::verify::{sample_nonvanishing, CheckReport};
use crate::weight::FactorType;

fn infeasible(step: impl Into<String>) -> Error {
    Error::Infeasible { step: step.into() }
}

fn rows_of(x: &ExactMatrix, rows: std::ops::Range<usize>) -> ExactMatrix {
    let r: Vec<usize> = rows.collect();
    let c: Vec<usize> = (0..x.cols()).collect();
    x.submatrix(&r, &c)
}

/// Upper unitriangular `u` with `(u x)[r][c] = 0` at every 0-based target.
pub fn sl_left_u(x: &ExactMatrix, targets: &[(usize, usize)]) -> Result<ExactMatrix> {
    let n = x.rows();
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        let ts: Vec<usize> = targets.iter().filter(|t| t.0 == i).map(|t| t.1).collect();
        if ts.is_empty() {
            continue;
        }
        let a: Vec<Vec<Q>> = ts
            .iter()
            .map(|&c| (i + 1..n).map(|j| x[(j, c)].clone()).collect())
            .collect();
        let b: Vec<Q> = ts.iter().map(|&c| -x[(i, c)].clone()).collect();
        let sol = solve_linear(&a, &b).ok_or_else(|| infeasible(format!("unitriangular row {i}")))?;
        for (j, v) in (i + 1..n).zip(sol) {
            u[(i, j)] = v;
        }
    }
    Ok(u)
}

/// Symplectic `diag(A, (A^-1)^#)`, `A` upper unitriangular, clearing targets
/// in the lower half of `x`.
pub fn sp_left_type1(x: &ExactMatrix, targets: &[(usize, usize)]) -> Result<ExactMatrix> {
    let m = x.rows() / 2;
    if targets.iter().any(|t| t.0 < m) {
        return Err(Error::Shape("type-1 targets must lie in the lower half".into()));
    }
    let shifted: Vec<(usize, usize)> = targets.iter().map(|&(r, c)| (r - m, c)).collect();
    let b = sl_left_u(&rows_of(x, m..2 * m), &shifted)?;
    symplectic_type1(&b.sharp().inverse()?)
}

fn antidiag_params(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|i| (0..m - i).map(move |j| (i, j)))
        .collect()
}

fn build_c(m: usize, vals: &[Q], reps: &[(usize, usize)]) -> ExactMatrix {
    let mut c = ExactMatrix::zeros(m, m);
    for (&(i, j), v) in reps.iter().zip(vals) {
        c[(i, j)] = v.clone();
        c[(m - 1 - j, m - 1 - i)] = v.clone();
    }
    c
}

fn mirror(m: usize, (i, j): (usize, usize)) -> Option<(usize, usize)> {
    let t = (m - 1 - j, m - 1 - i);
    (t != (i, j)).then_some(t)
}

/// Symplectic `[[E, C], [0, E]]` clearing targets in the upper half of `x`.
pub fn sp_left_type2(x: &ExactMatrix, targets: &[(usize, usize)]) -> Result<ExactMatrix> {
    let m = x.rows() / 2;
    if targets.is_empty() {
        return Ok(ExactMatrix::identity(2 * m));
    }
    let reps = antidiag_params(m);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &(r, c) in targets {
        if r >= m {
            return Err(Error::Shape("type-2 targets must lie in the upper half".into()));
        }
        let mut row = vec![Q::zero(); reps.len()];
        for (k, &(i, j)) in reps.iter().enumerate() {
            if i == r {
                row[k] += &x[(m + j, c)];
            }
            if let Some((i2, j2)) = mirror(m, (i, j)) {
                if i2 == r {
                    row[k] += &x[(m + j2, c)];
                }
            }
        }
        a.push(row);
        b.push(-x[(r, c)].clone());
    }
    let sol = solve_linear(&a, &b).ok_or_else(|| infeasible("left type-2"))?;
    symplectic_type2(&build_c(m, &sol, &reps))
}

/// Right multiplier `diag(A, (A^-1)^#)` clearing targets in the first half of
/// the columns of `x`.
pub fn sp_right_type1(x: &ExactMatrix, targets: &[(usize, usize)]) -> Result<ExactMatrix> {
    let m = x.cols() / 2;
    let mut a = ExactMatrix::identity(m);
    for c in 0..m {
        let ts: Vec<usize> = targets.iter().filter(|t| t.1 == c).map(|t| t.0).collect();
        if ts.is_empty() {
            continue;
        }
        let am: Vec<Vec<Q>> = ts.iter().map(|&r| (0..c).map(|j| x[(r, j)].clone()).collect()).collect();
        let b: Vec<Q> = ts.iter().map(|&r| -x[(r, c)].clone()).collect();
        let sol = solve_linear(&am, &b).ok_or_else(|| infeasible("right type-1"))?;
        for (j, v) in sol.into_iter().enumerate() {
            a[(j, c)] = v;
        }
    }
    symplectic_type1(&a)
}

/// Right multiplier `[[E, C], [0, E]]` clearing targets in the second half of
/// the columns of `x`.
pub fn sp_right_type2(x: &ExactMatrix, targets: &[(usize, usize)]) -> Result<ExactMatrix> {
    let m = x.cols() / 2;
    let reps = antidiag_params(m);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &(r, c) in targets {
        let cc = c.checked_sub(m).ok_or_else(|| Error::Shape("type-2 targets lie in the second half".into()))?;
        let mut row = vec![Q::zero(); reps.len()];
        for (k, &(i, j)) in reps.iter().enumerate() {
            if j == cc {
                row[k] += &x[(r, i)];
            }
            if let Some((i2, j2)) = mirror(m, (i, j)) {
                if j2 == cc {
                    row[k] += &x[(r, i2)];
                }
            }
        }
        a.push(row);
        b.push(-x[(r, c)].clone());
    }
    let sol = solve_linear(&a, &b).ok_or_else(|| infeasible("right type-2"))?;
    symplectic_type2(&build_c(m, &sol, &reps))
}

/// `h` in `SL_2` with `bp h = [[1, x], [0, dl]]` and `(r h)[1] = 0`.
pub fn h_norm(bp: &ExactMatrix, r: [&Q; 2], dl: &Q) -> Result<ExactMatrix> {
    let bi = bp.inverse()?;
    let s0 = r[0] * &bi[(0, 0)] + r[1] * &bi[(1, 0)];
    let s1 = r[0] * &bi[(0, 1)] + r[1] * &bi[(1, 1)];
    if s0.is_zero() {
        return Err(Error::Precondition("normalizing row vanishes".into()));
    }
    let x = -(s1 * dl) / s0;
    let t = ExactMatrix::from_rows(vec![vec![q(1), x], vec![q(0), dl.clone()]]);
    Ok(&bi * &t)
}

fn lemma4_targets(rows: usize, variant: u8) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let m = rows / 2;
    let extra = if variant == 1 { (0, 1) } else { (1, 0) };
    let keep = [(rows - 1, 0), (rows - 1, 1), (rows - 2, 1), extra];
    let free = |r: std::ops::Range<usize>| -> Vec<(usize, usize)> {
        r.flat_map(|r| (0..2).map(move |c| (r, c)))
            .filter(|t| !keep.contains(t))
            .collect()
    };
    (free(m..rows), free(0..m))
}

/// The matrix `u_1 P` (variant 1) or `u_2 P` (variant 2) of the lemma, from
/// `p = p_{2m,1}`, `p2 = p_{2m,2}` and the bottom `2 x 2` minor `delta`.
pub fn lemma4_display(rows: usize, p: &Q, p2: &Q, delta: &Q, variant: u8) -> ExactMatrix {
    let mut d = ExactMatrix::zeros(rows, 2);
    d[(rows - 1, 0)] = p.clone();
    d[(rows - 1, 1)] = p2.clone();
    d[(rows - 2, 1)] = -(delta / p);
    if variant == 1 {
        d[(0, 1)] = -p.recip();
    } else {
        d[(1, 0)] = -(p / delta);
    }
    d
}

/// Upper unitriangular symplectic `u` with `u P` in the lemma's display for
/// the given variant. `P` is `2m x 2` with `m >= 2`.
pub fn lemma4_reduce(p: &ExactMatrix, variant: u8) -> Result<(ExactMatrix, ExactMatrix)> {
    if variant != 1 && variant != 2 {
        return Err(Error::Parameters(format!("variant must be 1 or 2, got {variant}")));
    }
    let rows = p.rows();
    if p.cols() != 2 || !rows.is_multiple_of(2) || rows < 4 {
        return Err(Error::Shape(format!("expected a 2m x 2 matrix with m >= 2, got {rows} x {}", p.cols())));
    }
    let p1 = &p[(rows - 1, 0)];
    let p2 = &p[(rows - 1, 1)];
    if p1.is_zero() {
        return Err(Error::Precondition("p_{2m,1} = 0".into()));
    }
    let delta = &p[(rows - 2, 0)] * p2 - &p[(rows - 2, 1)] * p1;
    if delta.is_zero() {
        return Err(Error::Precondition("bottom 2 x 2 minor vanishes".into()));
    }
    let pairing = &(&p.columns(&[1]).transpose() * &ExactMatrix::omega(rows)) * &p.columns(&[2]);
    if !pairing[(0, 0)].is_one() {
        return Err(Error::Precondition("columns do not pair to 1 under Omega".into()));
    }
    let (low, up) = lemma4_targets(rows, variant);
    let u1 = sp_left_type1(p, &low)?;
    let x1 = &u1 * p;
    let u2 = sp_left_type2(&x1, &up)?;
    let reduced = &u2 * &x1;
    if reduced != lemma4_display(rows, p1, p2, &delta, variant) {
        return Err(infeasible("lemma 4 display"));
    }
    Ok((&u2 * &u1, reduced))
}

/// A signed Laurent monomial in catalog function names. Coefficient 0 is the
/// zero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub coeff: i64,
    pub powers: Vec<(String, i32)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self { coeff: 0, powers: vec![] }
    }

    pub fn constant(c: i64) -> Self {
        Self { coeff: c, powers: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }

    pub fn eval(&self, values: &BTreeMap<String, Q>) -> Result<Q> {
        let mut out = q(self.coeff);
        for (name, e) in &self.powers {
            let v = values.get(name).ok_or_else(|| Error::UnknownFunction(name.clone()))?;
            if *e < 0 && v.is_zero() {
                return Err(Error::Precondition(format!("{name} vanishes")));
            }
            out *= crate::weight::pow(v, *e);
        }
        Ok(out)
    }
}

fn product(parts: &[(String, i32)]) -> String {
    let s: Vec<String> = parts
        .iter()
        .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    s.join("*")
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff == 0 {
            return write!(f, "0");
        }
        let num: Vec<(String, i32)> = self.powers.iter().filter(|p| p.1 > 0).cloned().collect();
        let den: Vec<(String, i32)> = self
            .powers
            .iter()
            .filter(|p| p.1 < 0)
            .map(|(n, e)| (n.clone(), -e))
            .collect();
        let sign = if self.coeff < 0 { "-" } else { "" };
        let c = self.coeff.abs();
        let top = match (c, num.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => product(&num),
            (_, false) => format!("{c}*{}", product(&num)),
        };
        write!(f, "{sign}{top}")?;
        match den.len() {
            0 => Ok(()),
            1 if den[0].1 == 1 => write!(f, "/{}", den[0].0),
            _ => write!(f, "/({})", product(&den)),
        }
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Expected entries of one canonical slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceTemplate {
    pub name: String,
    pub entries: Vec<Vec<Laurent>>,
}

impl SliceTemplate {
    fn new(name: &str, rows: usize, cols: usize) -> Self {
        Self {
            name: name.into(),
            entries: vec![vec![Laurent::zero(); cols]; rows],
        }
    }

    fn set(&mut self, r: usize, c: usize, v: Laurent) {
        self.entries[r][c] = v;
    }

    pub fn eval(&self, values: &BTreeMap<String, Q>) -> Result<ExactMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(values)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::from_rows(rows))
    }
}

/// A factor of `G` (or Case 6's `P iota(Q)^-1`) restricted to some columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub name: String,
    /// 1-based.
    pub columns: Vec<usize>,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum Action {
    /// `g_k <- u g_k` with `u` upper unitriangular in factor `k`.
    LeftU { factor: usize, matrix: ExactMatrix },
    /// `g <- g embed(h)` with `h` in `H_0`.
    RightH { parts: Vec<ExactMatrix> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub label: String,
    #[serde(flatten)]
    pub action: Action,
}

impl Step {
    pub fn is_identity(&self) -> bool {
        match &self.action {
            Action::LeftU { matrix, .. } => matrix.is_identity(),
            Action::RightH { parts } => parts.iter().all(ExactMatrix::is_identity),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalForm {
    pub slices: Vec<Slice>,
    pub transcript: Vec<Step>,
    /// The transformed group element.
    #[serde(skip)]
    pub element: GroupElement,
}

struct Run<'a> {
    spec: &'a CaseSpec,
    g: GroupElement,
    steps: Vec<Step>,
}

impl Run<'_> {
    fn left(&mut self, label: &str, factor: usize, u: ExactMatrix) -> Result<()> {
        if !u.is_upper_unitriangular() || !check_invariant_form(&u, self.spec.factors[factor])? {
            return Err(Error::Precondition(format!("multiplier of `{label}` is not in U")));
        }
        self.g.0[factor] = &u * &self.g.0[factor];
        self.steps.push(Step {
            label: label.into(),
            action: Action::LeftU { factor, matrix: u },
        });
        Ok(())
    }

    fn right(&mut self, label: &str, parts: Vec<(usize, ExactMatrix)>) -> Result<()> {
        let mut h = self.spec.h_identity();
        for (k, m) in parts {
            h.parts[k] = m;
        }
        let e = self.spec.embed_subgroup(&h)?;
        self.g = &self.g * &e;
        self.steps.push(Step {
            label: label.into(),
            action: Action::RightH { parts: h.parts },
        });
        Ok(())
    }

    fn f(&self, k: usize) -> &ExactMatrix {
        self.g.factor(k)
    }

    fn first_last(&self, k: usize) -> ExactMatrix {
        let s = self.f(k).rows();
        self.f(k).columns(&[1, s])
    }

    /// `h_norm` from rows `r1, r2` and columns `c1, c2` (1-based) of factor
    /// `a`, normalizing the last row of factor `b`'s first and last columns.
    fn h_from(&self, a: usize, rr: [usize; 2], cc: [usize; 2], b: usize, dl: &Q) -> Result<ExactMatrix> {
        let x = self.f(a);
        let bp = x.submatrix(&[rr[0] - 1, rr[1] - 1], &[cc[0] - 1, cc[1] - 1]);
        let y = self.f(b);
        let s = y.rows();
        h_norm(&bp, [y.at(s, 1), y.at(s, s)], dl)
    }

    /// Lemma 4 (variant 1) for `m >= 2`, otherwise clearing the top-left entry.
    fn lemma4_or_small(&mut self, label: &str, k: usize) -> Result<()> {
        let xb = self.first_last(k);
        let u = if xb.rows() > 2 {
            lemma4_reduce(&xb, 1)?.0
        } else {
            sp_left_type2(&xb, &[(0, 0)])?
        };
        self.left(label, k, u)
    }

    /// First and last columns to the shape with `-1` at `(1,1)`, `1` at
    /// `(N-2,0)` and the bottom row `(0, *)`.
    fn reduce_first_last(&mut self, label: &str, k: usize) -> Result<()> {
        let xb = self.first_last(k);
        let nn = xb.rows();
        if nn == 2 {
            let u = sp_left_type2(&xb, &[(0, 1)])?;
            return self.left(label, k, u);
        }
        let n = nn / 2;
        let keep = [(nn - 2, 0), (nn - 1, 1), (1, 1)];
        let free = |r: std::ops::Range<usize>| -> Vec<(usize, usize)> {
            r.flat_map(|r| (0..2).map(move |c| (r, c)))
                .filter(|t| !keep.contains(t))
                .collect()
        };
        let u1 = sp_left_type1(&xb, &free(n..nn))?;
        self.left(&format!("{label}, lower half"), k, u1)?;
        let xb = self.first_last(k);
        let u2 = sp_left_type2(&xb, &free(0..n))?;
        self.left(&format!("{label}, upper half"), k, u2)
    }
}

/// Catalog function values at `g`, keyed by name.
pub fn function_values(spec: &CaseSpec, g: &GroupElement) -> BTreeMap<String, Q> {
    spec.functions.iter().map(|f| (f.name.clone(), f.eval(g))).collect()
}

fn value_or_one(v: &BTreeMap<String, Q>, name: &str) -> Q {
    v.get(name).cloned().unwrap_or_else(Q::one)
}

fn supported(spec: &CaseSpec) -> Result<()> {
    if spec.case < 3 {
        return Err(Error::Unsupported(format!(
            "case {} is described by its spectrum and has no canonical form",
            spec.case
        )));
    }
    Ok(())
}

/// Column slices that the canonical form fixes, computed from `g`.
pub fn canonical_slices(spec: &CaseSpec, g: &GroupElement) -> Result<Vec<Slice>> {
    supported(spec)?;
    let sl = |name: &str, k: usize, cols: Vec<usize>| Slice {
        name: name.into(),
        matrix: g.factor(k).columns(&cols),
        columns: cols,
    };
    let fl = |k: usize| vec![1, g.factor(k).rows()];
    Ok(match spec.case {
        3 | 4 => vec![sl("P", 0, (1..=spec.params.n).collect()), sl("Qbar", 1, fl(1))],
        5 => vec![sl("Pbar", 0, fl(0)), sl("Qbar", 1, fl(1))],
        6 => {
            let nn = 2 * spec.params.n;
            let r = g.factor(0) * &group_inverse(&iota6(spec.params.n, g.factor(1)), spec.factors[0])?;
            let cols = vec![1, 2, nn - 1, nn];
            vec![Slice {
                name: "Rbar".into(),
                matrix: r.columns(&cols),
                columns: cols,
            }]
        }
        7 => vec![sl("Pbar", 0, fl(0)), sl("Qbar", 1, fl(1)), sl("Rbar", 2, fl(2))],
        _ => vec![sl("Pbar", 0, fl(0)), sl("Q", 1, (1..=4).collect()), sl("Rbar", 2, fl(2))],
    })
}

/// Builds Laurent monomials, dropping names outside the catalog (the
/// functions that are identically 1 at these parameters).
struct Mono<'a>(&'a CaseSpec);

impl Mono<'_> {
    fn m(&self, coeff: i64, num: &[&str], den: &[&str]) -> Laurent {
        let mut powers: Vec<(String, i32)> = Vec::new();
        let terms = num.iter().map(|n| (*n, 1)).chain(den.iter().map(|n| (*n, -1)));
        for (name, e) in terms {
            if !self.0.has_function(name) {
                continue;
            }
            match powers.iter_mut().find(|p| p.0 == name) {
                Some(p) => p.1 += e,
                None => powers.push((name.to_string(), e)),
            }
        }
        powers.retain(|p| p.1 != 0);
        Laurent { coeff, powers }
    }
}

/// Expected canonical slices as Laurent monomials in the catalog functions.
pub fn template(spec: &CaseSpec) -> Result<Vec<SliceTemplate>> {
    supported(spec)?;
    let mono = Mono(spec);
    let m = |c, num: &[&str], den: &[&str]| mono.m(c, num, den);
    let one = Laurent::constant(1);
    let p = spec.params;
    let fl_pair = |name: &str, size: usize| SliceTemplate::new(name, size, 2);
    Ok(match spec.case {
        3 | 4 => {
            let n = p.n;
            let mm = 2 * p.m;
            let mut tp = SliceTemplate::new("P", n, n);
            if n == 3 {
                tp.set(0, 0, m(1, &[], &["Delta"]));
                tp.set(1, 0, m(1, &["Phi2"], &["D"]));
            } else {
                tp.set(0, n - 3, m(-1, &["delta"], &["Phi1"]));
                tp.set(1, n - 4, m(1, &["Phi1"], &["Delta", "delta"]));
                tp.set(1, n - 3, m(1, &["Phi2"], &["D"]));
                for i in 0..n - 3 {
                    tp.set(i + 2, i, one.clone());
                }
            }
            tp.set(n - 2, n - 2, one.clone());
            tp.set(n - 1, n - 3, m(1, &["delta"], &[]));
            tp.set(n - 1, n - 1, m(1, &["Delta"], &[]));
            let mut tq = fl_pair("Qbar", mm);
            tq.set(0, 1, m(1, &["Delta"], &["D"]));
            tq.set(mm - 1, 0, m(-1, &["D"], &["Delta"]));
            if p.m > 1 {
                tq.set(mm - 2, 1, m(1, &["W", "Delta"], &["D"]));
            }
            vec![tp, tq]
        }
        5 => {
            let (nn, mm) = (2 * p.n, 2 * p.m);
            let mut tp = fl_pair("Pbar", nn);
            if p.n > 1 {
                tp.set(1, 1, Laurent::constant(-1));
                tp.set(nn - 2, 0, one.clone());
                tp.set(nn - 1, 1, m(1, &["Delta"], &[]));
            } else {
                tp.set(0, 0, one.clone());
                tp.set(1, 1, one.clone());
            }
            let mut tq = fl_pair("Qbar", mm);
            tq.set(0, 1, m(1, &["Delta"], &["D"]));
            tq.set(mm - 1, 0, m(-1, &["D"], &["Delta"]));
            if p.m > 1 {
                tq.set(mm - 2, 1, m(1, &["delta", "Delta"], &["D"]));
            }
            vec![tp, tq]
        }
        6 => {
            let nn = 2 * p.n;
            let mut t = SliceTemplate::new("Rbar", nn, 4);
            t.set(0, 3, m(-1, &[], &["Delta1"]));
            t.set(1, 2, m(1, &["Delta1"], &["Delta2"]));
            t.set(2, 3, m(1, &["D"], &["Delta3"]));
            let a4 = if p.n == 3 {
                m(1, &["D"], &["Delta3"])
            } else {
                m(-1, &["Delta4"], &["Delta3"])
            };
            t.set(nn - 4, 3, a4);
            t.set(nn - 3, 2, m(1, &["Delta3"], &["Delta2"]));
            t.set(nn - 3, 3, m(1, &["F"], &["Delta1", "Delta2"]));
            t.set(nn - 2, 1, m(-1, &["Delta2"], &["Delta1"]));
            t.set(nn - 2, 3, m(1, &["D"], &["Delta1"]));
            t.set(nn - 1, 0, m(1, &["Delta1"], &[]));
            vec![t]
        }
        7 => {
            let (nn, mm, ll) = (2 * p.n, 2 * p.m, 2 * p.l);
            let mut tp = fl_pair("Pbar", nn);
            if p.n > 1 {
                tp.set(1, 1, Laurent::constant(-1));
                tp.set(nn - 2, 0, one.clone());
                tp.set(nn - 1, 1, m(1, &["Delta1"], &[]));
            } else {
                tp.set(0, 0, one.clone());
                tp.set(1, 1, one.clone());
            }
            let mut tq = fl_pair("Qbar", mm);
            tq.set(0, 1, m(1, &["Delta1"], &["D1"]));
            tq.set(mm - 1, 0, m(-1, &["D1"], &["Delta1"]));
            if p.m > 1 {
                tq.set(mm - 2, 1, m(1, &["Delta2", "Delta1"], &["D1"]));
            }
            let mut tr = fl_pair("Rbar", ll);
            tr.set(0, 1, m(1, &["Delta1"], &["D3"]));
            tr.set(ll - 1, 0, m(-1, &["D3"], &["Delta1"]));
            tr.set(ll - 1, 1, m(-1, &["D2", "Delta1"], &["D1"]));
            if p.l > 1 {
                tr.set(ll - 2, 1, m(1, &["Delta1", "Delta3"], &["D3"]));
            }
            vec![tp, tq, tr]
        }
        _ => {
            let side = |name: &str, k: usize, dd: &str, big: &str, aa: &str| {
                let kk = 2 * k;
                let mut t = fl_pair(name, kk);
                t.set(0, 1, m(-1, &[aa], &[dd]));
                t.set(kk - 1, 0, m(1, &[dd], &[aa]));
                if k > 1 {
                    t.set(kk - 2, 1, m(-1, &[big, aa], &[dd]));
                }
                t
            };
            let mut tq = SliceTemplate::new("Q", 4, 4);
            tq.set(0, 0, m(1, &[], &["Delta1"]));
            tq.set(0, 2, m(1, &["Delta"], &["delta1", "delta2"]));
            tq.set(1, 2, Laurent::constant(-1));
            tq.set(2, 0, one.clone());
            tq.set(2, 1, one.clone());
            tq.set(2, 3, m(1, &["Delta1", "Delta"], &["delta1", "delta2"]));
            tq.set(3, 2, m(1, &["Delta2"], &[]));
            tq.set(3, 3, m(1, &["Delta1"], &[]));
            vec![
                side("Pbar", p.n, "delta1", "D1", "Delta1"),
                tq,
                side("Rbar", p.m, "delta2", "D2", "Delta2"),
            ]
        }
    })
}

fn run_pipeline(run: &mut Run, v: &BTreeMap<String, Q>) -> Result<()> {
    let spec = run.spec;
    let p = spec.params;
    match spec.case {
        3 | 4 => {
            let n = p.n;
            let dl = &v["Delta"];
            let h = run.h_from(0, [n - 1, n], [n - 1, n], 1, dl)?;
            run.right("SL2 normalization", vec![(0, h)])?;
            run.lemma4_or_small("Q first and last columns", 1)?;
            let t3: Vec<(usize, usize)> = (0..n - 2)
                .map(|r| (r, n - 2))
                .chain((0..n - 1).map(|r| (r, n - 1)))
                .collect();
            let u = sl_left_u(run.f(0), &t3)?;
            run.left("P last two columns", 0, u)?;
            let rows: Vec<usize> = (2..n).collect();
            let cols: Vec<usize> = (0..n - 2).collect();
            let blk = run.f(0).submatrix(&rows, &cols);
            let mut d = vec![q(1); n - 2];
            d[n - 3] = v["delta"].clone();
            let h1 = &blk.inverse()? * &ExactMatrix::diagonal(&d);
            if n > 3 {
                run.right("SL(n-2) normalization", vec![(1, h1)])?;
            } else if !h1.is_identity() {
                return Err(infeasible("SL(n-2) normalization"));
            }
            if n >= 4 {
                let t5: Vec<(usize, usize)> = (0..n - 4)
                    .map(|c| (1, c))
                    .chain([(1, n - 2), (1, n - 1)])
                    .chain((0..n - 3).map(|c| (0, c)))
                    .chain([(0, n - 2), (0, n - 1)])
                    .collect();
                let u = sl_left_u(run.f(0), &t5)?;
                run.left("P first two rows", 0, u)?;
            }
        }
        5 => {
            let nn = 2 * p.n;
            let dl = value_or_one(v, "Delta");
            let h = run.h_from(0, [nn - 1, nn], [1, nn], 1, &dl)?;
            run.right("Sp2 normalization", vec![(0, h)])?;
            run.reduce_first_last("P first and last columns", 0)?;
            run.lemma4_or_small("Q first and last columns", 1)?;
        }
        6 => {
            let nn = 2 * p.n;
            let rbar = |run: &Run| -> Result<ExactMatrix> {
                Ok(canonical_slices(spec, &run.g)?.remove(0).matrix)
            };
            let low: Vec<(usize, usize)> = (p.n..nn)
                .flat_map(|r| (0..(nn - 1 - r).min(4)).map(move |c| (r, c)))
                .collect();
            let u = sp_left_type1(&rbar(run)?, &low)?;
            run.left("R lower staircase", 0, u)?;
            let sp4 = FactorType::sp(4);
            let a = sp_right_type1(&rbar(run)?, &[(nn - 1, 1)])?;
            run.left("R bottom row, type 1", 1, group_inverse(&a, sp4)?)?;
            let b = sp_right_type2(&rbar(run)?, &[(nn - 1, 2), (nn - 1, 3), (nn - 2, 2)])?;
            run.left("R bottom rows, type 2", 1, group_inverse(&b, sp4)?)?;
            let t = template(spec)?.remove(0);
            let up: Vec<(usize, usize)> = (0..p.n)
                .flat_map(|r| (0..4).map(move |c| (r, c)))
                .filter(|&(r, c)| t.entries[r][c].is_zero())
                .collect();
            let u = sp_left_type2(&rbar(run)?, &up)?;
            run.left("R upper half", 0, u)?;
        }
        7 => {
            let nn = 2 * p.n;
            let dl = value_or_one(v, "Delta1");
            let h = run.h_from(0, [nn - 1, nn], [1, nn], 1, &dl)?;
            run.right("Sp2 normalization", vec![(0, h)])?;
            run.reduce_first_last("P first and last columns", 0)?;
            run.lemma4_or_small("Q first and last columns", 1)?;
            run.lemma4_or_small("R first and last columns", 2)?;
        }
        _ => {
            let h2 = run.h_from(1, [3, 4], [1, 4], 0, &v["Delta1"])?;
            let h3 = run.h_from(1, [3, 4], [2, 3], 2, &v["Delta2"])?;
            run.right("Sp2 x Sp2 normalization", vec![(0, h2), (1, h3)])?;
            run.lemma4_or_small("P first and last columns", 0)?;
            run.lemma4_or_small("R first and last columns", 2)?;
            let u1 = sp_left_type1(run.f(1), &[(2, 2)])?;
            run.left("Q lower half", 1, u1)?;
            let u2 = sp_left_type2(run.f(1), &[(0, 1), (0, 3), (1, 0), (1, 1), (1, 3)])?;
            run.left("Q upper half", 1, u2)?;
        }
    }
    Ok(())
}

/// Reduces `g` to its canonical form. Every catalog function must be nonzero
/// at `g`.
pub fn reduce_to_canonical(spec: &CaseSpec, g: &GroupElement) -> Result<CanonicalForm> {
    supported(spec)?;
    if g.0.len() != spec.factors.len() {
        return Err(Error::Shape("factor count".into()));
    }
    for (m, &f) in g.0.iter().zip(&spec.factors) {
        if !check_invariant_form(m, f)? {
            return Err(Error::Precondition(format!("element is not in {f}")));
        }
    }
    let v = function_values(spec, g);
    if let Some((name, _)) = v.iter().find(|(_, x)| x.is_zero()) {
        return Err(Error::Precondition(format!("{name} vanishes")));
    }
    let mut run = Run {
        spec,
        g: g.clone(),
        steps: Vec::new(),
    };
    run_pipeline(&mut run, &v)?;
    Ok(CanonicalForm {
        slices: canonical_slices(spec, &run.g)?,
        transcript: run.steps,
        element: run.g,
    })
}

/// Compares the canonical slices of `g` with the template evaluated at the
/// function values of `g`, and checks that the pipeline kept those values.
pub fn reconstructs(spec: &CaseSpec, g: &GroupElement) -> Result<bool> {
    let form = reduce_to_canonical(spec, g)?;
    let v = function_values(spec, g);
    let expected = template(spec)?;
    for (s, t) in form.slices.iter().zip(&expected) {
        if s.matrix != t.eval(&v)? {
            return Ok(false);
        }
    }
    Ok(function_values(spec, &form.element) == v)
}

/// Reconstruction on random points where every catalog function is nonzero.
pub fn reconstruct_check(spec: &CaseSpec, trials: usize, seed: u64, exec: Execution) -> Result<CheckReport> {
    supported(spec)?;
    if trials == 0 {
        return Err(Error::Parameters("trials must be at least 1".into()));
    }
    let names: Vec<&str> = spec.functions.iter().map(|f| f.name.as_str()).collect();
    let idx: Vec<usize> = (0..trials).collect();
    let outcomes = par_map(exec, &idx, |&t| {
        let mut rng = rng_for(seed, (8 << 48) | t as u64);
        let (g, _) = sample_nonvanishing(spec, &names, &mut rng)?;
        reconstructs(spec, &g)
    });
    let mut failed = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        if !o? {
            failed.push(i);
        }
    }
    Ok(CheckReport {
        check: "canonical_reconstruction".into(),
        subject: format!("case {} {}", spec.case, spec.params),
        trials,
        passed: failed.is_empty(),
        failed_trials: failed,
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Params;

    #[test]
    fn lemma4_example() {
        for b in [-2, 0, 3] {
            for d in [-1, 0, 5] {
                let p = ExactMatrix::from_i64(&[&[0, -1], &[0, b], &[0, 1], &[1, d]]);
                let (u, red) = lemma4_reduce(&p, 1).unwrap();
                assert_eq!(red, ExactMatrix::from_i64(&[&[0, -1], &[0, 0], &[0, 1], &[1, d]]));
                assert!(u.is_upper_unitriangular());
                assert_eq!(&u * &p, red);
            }
        }
    }

    #[test]
    fn lemma4_fixed_point_and_preconditions() {
        let p = ExactMatrix::from_i64(&[&[0, -1], &[0, 0], &[0, 1], &[1, 4]]);
        let (u, _) = lemma4_reduce(&p, 1).unwrap();
        assert!(u.is_identity());
        let bad = ExactMatrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1], &[0, 4]]);
        assert!(matches!(lemma4_reduce(&bad, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn case5_example() {
        let spec = CaseSpec::new(5, Params::new(1, 1, 0)).unwrap();
        let g = GroupElement(vec![
            ExactMatrix::identity(2),
            ExactMatrix::from_i64(&[&[1, 1], &[-1, 0]]),
        ]);
        let form = reduce_to_canonical(&spec, &g).unwrap();
        assert_eq!(form.slices[1].matrix, ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert!(reconstructs(&spec, &g).unwrap());
    }

    #[test]
    fn spectral_cases_are_rejected() {
        let spec = CaseSpec::new(1, Params::new(2, 0, 0)).unwrap();
        let g = GroupElement::identity(&spec.factors);
        assert!(matches!(reduce_to_canonical(&spec, &g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn laurent_rendering() {
        let spec = CaseSpec::new(6, Params::new(4, 0, 0)).unwrap();
        let t = template(&spec).unwrap();
        assert_eq!(t[0].entries[0][3].to_string(), "-1/Delta1");
        assert_eq!(t[0].entries[5][3].to_string(), "F/(Delta1*Delta2)");
        assert_eq!(t[0].entries[4][3].to_string(), "-Delta4/Delta3");
    }
}
