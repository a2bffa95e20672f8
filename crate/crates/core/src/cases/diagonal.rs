//! Cases 1 and 2: `SL_n x SL_{n+1}` and `Spin_n x Spin_{n+1}` modulo the
//! diagonal subgroup.

use std::sync::Arc;

use num_traits::One;

use super::{ew, func, CaseSpec, Chi0, HFactor, Monomial, Params, Relation, WeightFunction};
use crate::matrix::{q, ExactMatrix};
use crate::weight::{pow, FactorType};

pub(super) fn case1(n: usize) -> CaseSpec {
    let f = vec![FactorType::sl(n), FactorType::sl(n + 1)];
    let r = move |g: &crate::groups::GroupElement| {
        let pt = ExactMatrix::embed(n + 1, &(1..=n).collect::<Vec<_>>(), g.factor(0));
        g.factor(1) * &pt.inverse().expect("invertible")
    };
    let rows = move |i: usize| (n + 2 - i..=n + 1).collect::<Vec<_>>();
    let mut functions = Vec::new();
    for i in 1..=n {
        let weight = if i == n {
            ew(&f, &[(1, 1, 1)], n as i64)
        } else {
            ew(&f, &[(0, i, 1), (1, n + 1 - i, 1)], i as i64)
        };
        let cols: Vec<usize> = (1..=i).collect();
        let rr = rows(i);
        functions.push(WeightFunction::new(
            &format!("Delta{i}"),
            weight,
            func(move |g| r(g).minor(&rr, &cols)),
        ));
        let weight = ew(&f, &[(0, i - 1, 1), (1, n + 1 - i, 1)], -((n + 1 - i) as i64));
        let cols: Vec<usize> = (1..i).chain([n + 1]).collect();
        let rr = rows(i);
        functions.push(WeightFunction::new(
            &format!("delta{i}"),
            weight,
            func(move |g| r(g).minor(&rr, &cols)),
        ));
    }
    let generator_names = (1..=n)
        .rev()
        .map(|i| format!("Delta{i}"))
        .chain((1..=n).rev().map(|i| format!("delta{i}")))
        .collect();
    CaseSpec {
        case: 1,
        params: Params::new(n, 0, 0),
        factors: f,
        h_factors: vec![HFactor {
            group: FactorType::sl(n),
            central: false,
        }],
        functions,
        auxiliaries: vec![],
        relations: vec![],
        generator_names,
        presentation: None,
        divisibility: vec![],
        chi0: Chi0::Power(1),
        embed: Arc::new(move |parts, t| {
            let p = &parts[0];
            let mut big = ExactMatrix::embed(n + 1, &(1..=n).collect::<Vec<_>>(), &p.scale(t));
            big[(n, n)] = pow(t, -(n as i32));
            crate::groups::GroupElement(vec![p.clone(), big])
        }),
    }
}

/// Embedding of `SO_n` into `SO_{n+1}` as the stabilizer of a non-isotropic vector.
pub fn tau_basis(n: usize) -> (ExactMatrix, ExactMatrix) {
    let k = n / 2;
    let mut b = ExactMatrix::zeros(n + 1, n + 1);
    if n.is_multiple_of(2) {
        let idx: Vec<usize> = (0..k).chain(k + 1..=n).collect();
        for (a, &i) in idx.iter().enumerate() {
            b[(i, a)] = q(1);
        }
        b[(k, n)] = q(1);
    } else {
        for i in 0..k {
            b[(i, i)] = q(1);
        }
        b[(k, k)] = q(1);
        b[(k + 1, k)] = q(1);
        for j in 1..=k {
            b[(k + 1 + j, k + j)] = q(2);
        }
        b[(k + 1, n)] = q(1);
        b[(k, n)] = q(-1);
    }
    let inv = b.inverse().expect("basis is invertible");
    (b, inv)
}

fn tau(b: &ExactMatrix, binv: &ExactMatrix, p: &ExactMatrix) -> ExactMatrix {
    let n = p.rows();
    let pe = ExactMatrix::embed(n + 1, &(1..=n).collect::<Vec<_>>(), p);
    &(b * &pe) * binv
}

pub(super) fn case2(n: usize) -> CaseSpec {
    let f = vec![FactorType::so(n), FactorType::so(n + 1)];
    let k = n / 2;
    let (b, binv) = tau_basis(n);
    let (b, binv) = (Arc::new(b), Arc::new(binv));
    let r = {
        let (b, binv) = (b.clone(), binv.clone());
        Arc::new(move |g: &crate::groups::GroupElement| {
            let t = tau(&b, &binv, g.factor(0));
            g.factor(1) * &crate::groups::group_inverse(&t, FactorType::so(n + 1)).expect("invertible")
        })
    };
    let last = move |i: usize| (n + 2 - i..=n + 1).collect::<Vec<usize>>();
    let minor_fn = |rows: Vec<usize>, cols: Vec<usize>| {
        let r = r.clone();
        func(move |g| r(g).minor(&rows, &cols))
    };
    let head = |i: usize| (1..i).collect::<Vec<usize>>();
    let with = |i: usize, c: usize| head(i).into_iter().chain([c]).collect::<Vec<usize>>();
    let w = |p: &[(usize, i64)], qq: &[(usize, i64)]| {
        let terms: Vec<(usize, usize, i64)> = p
            .iter()
            .map(|&(i, c)| (0, i, c))
            .chain(qq.iter().map(|&(i, c)| (1, i, c)))
            .collect();
        ew(&f, &terms, 0)
    };
    let mut functions = Vec::new();
    let relation;
    if n.is_multiple_of(2) {
        for i in 1..=k {
            let wd = if i + 2 <= k {
                w(&[(i, 1)], &[(i, 1)])
            } else if i + 1 == k {
                w(&[(k - 1, 1), (k, 1)], &[(k - 1, 1)])
            } else {
                w(&[(k, 2)], &[(k, 2)])
            };
            functions.push(WeightFunction::new(
                &format!("Delta{i}"),
                wd,
                minor_fn(last(i), (1..=i).collect()),
            ));
            let ws = if i < k {
                w(&[(i - 1, 1)], &[(i, 1)])
            } else {
                w(&[(k - 1, 1), (k, 1)], &[(k, 2)])
            };
            functions.push(WeightFunction::new(
                &format!("delta{i}"),
                ws,
                minor_fn(last(i), with(i, k + 1)),
            ));
        }
        functions.push(WeightFunction::new(
            "Phi",
            w(&[(k - 1, 2)], &[(k, 2)]),
            minor_fn(last(k), with(k, k + 2)),
        ));
        relation = Relation::new(
            Monomial::new(1, &[(&format!("delta{k}"), 2)]),
            Monomial::new(-2, &[(&format!("Delta{k}"), 1), ("Phi", 1)]),
        );
    } else {
        for i in 1..=k {
            let wd = if i < k {
                w(&[(i, 1)], &[(i, 1)])
            } else {
                w(&[(k, 2)], &[(k, 1), (k + 1, 1)])
            };
            functions.push(WeightFunction::new(
                &format!("Delta{i}"),
                wd,
                minor_fn(last(i), (1..=i).collect()),
            ));
        }
        for i in 1..=k + 1 {
            let ws = if i < k {
                w(&[(i - 1, 1)], &[(i, 1)])
            } else if i == k {
                w(&[(k - 1, 1)], &[(k, 1), (k + 1, 1)])
            } else {
                w(&[(k, 2)], &[(k + 1, 2)])
            };
            let (rows, c1, c2) = (last(i), with(i, k + 1), with(i, k + 2));
            let r = r.clone();
            functions.push(WeightFunction::new(
                &format!("delta{i}"),
                ws,
                func(move |g| {
                    let m = r(g);
                    m.minor(&rows, &c1) - m.minor(&rows, &c2)
                }),
            ));
        }
        let c = if k.is_multiple_of(2) { k + 1 } else { k + 2 };
        let rows: Vec<usize> = (1..=k).chain([k + 2]).map(|s| n + 2 - s).collect();
        let cols: Vec<usize> = (1..=k).chain([c]).collect();
        functions.push(WeightFunction::new(
            "Phi",
            w(&[(k, 2)], &[(k, 2)]),
            minor_fn(rows, cols),
        ));
        let sign = if k % 2 == 1 { 1 } else { -1 };
        relation = Relation::new(
            Monomial::new(1, &[(&format!("Delta{k}"), 2)]),
            Monomial::new(sign, &[(&format!("delta{}", k + 1), 1), ("Phi", 1)]),
        );
    }
    CaseSpec {
        case: 2,
        params: Params::new(n, 0, 0),
        factors: f,
        h_factors: vec![HFactor {
            group: FactorType::so(n),
            central: false,
        }],
        functions,
        auxiliaries: vec![],
        relations: vec![relation],
        generator_names: vec![],
        presentation: None,
        divisibility: vec![],
        chi0: Chi0::Trivial,
        embed: Arc::new(move |parts, t| {
            debug_assert!(t.is_one());
            let p = &parts[0];
            crate::groups::GroupElement(vec![p.clone(), tau(&b, &binv, p)])
        }),
    }
}
