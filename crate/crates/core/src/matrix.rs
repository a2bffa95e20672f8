//! Dense matrices over the rationals.
//!
//! Row and column indices are 0-based for `Index`; the `at` accessor and
//! `minor` take 1-based indices so formulas can be copied from matrix notation.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Antidiagonal matrix of ones.
    pub fn flip(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = Q::one();
        }
        m
    }

    /// The skew form `[[0, F_m], [-F_m, 0]]` of size `2m`.
    pub fn omega(size: usize) -> Self {
        assert!(size.is_multiple_of(2), "omega needs even size");
        let m = size / 2;
        let mut o = Self::zeros(size, size);
        for i in 0..m {
            o[(i, size - 1 - i)] = Q::one();
            o[(size - 1 - i, i)] = -Q::one();
        }
        o
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry with 1-based indices.
    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self[(i - 1, j - 1)]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Transpose about the antidiagonal.
    pub fn sharp(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let mut t = Self::zeros(c, r);
        for i in 0..c {
            for j in 0..r {
                t[(i, j)] = self[(r - 1 - j, c - 1 - i)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// 0-based submatrix.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// 1-based column slice.
    pub fn columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        self.submatrix(&rows, &cols)
    }

    /// Determinant of the submatrix on the given 1-based rows and columns,
    /// both taken in increasing order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Q {
        let mut r: Vec<usize> = rows.iter().map(|i| i - 1).collect();
        let mut c: Vec<usize> = cols.iter().map(|j| j - 1).collect();
        r.sort_unstable();
        c.sort_unstable();
        self.submatrix(&r, &c).det()
    }

    /// Identity of size `n` with `h` written on the 1-based index set `idx`.
    pub fn embed(n: usize, idx: &[usize], h: &ExactMatrix) -> Self {
        assert_eq!(idx.len(), h.rows, "block size");
        let mut m = Self::identity(n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(i - 1, j - 1)] = h[(a, b)].clone();
            }
        }
        m
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut d = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                d = -d;
            }
            let pivot = a[(c, c)].clone();
            d *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for j in c..n {
                    let v = &f * &a[(c, j)];
                    a[(r, j)] -= v;
                }
            }
        }
        d
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)].recip();
            a.scale_row(c, &pivot);
            inv.scale_row(c, &pivot);
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                a.axpy_row(r, c, &f);
                inv.axpy_row(r, c, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Q) {
        for j in 0..self.cols {
            self[(r, j)] *= s;
        }
    }

    // row[r] -= f * row[c]
    fn axpy_row(&mut self, r: usize, c: usize, f: &Q) {
        for j in 0..self.cols {
            let v = f * &self[(c, j)];
            self[(r, j)] -= v;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_one() && (0..i).all(|j| self[(i, j)].is_zero())
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows rendered as `p/q` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_q).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-Q::one())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_strings()).finish()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for row in self.to_strings() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Solves `a x = b`. Free variables are set to zero; `None` if inconsistent.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let v = &f * &m[r][j];
                m[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel of `a` (columns as unknowns).
pub fn kernel(a: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
