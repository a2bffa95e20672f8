//! Cases 3 and 4: `SL_n x Sp_2m`, with and without the one-dimensional torus.

use std::sync::Arc;

use super::{
    aux, ew, first_last_minor, func, names, CaseSpec, Chi0, DivisibilitySpec, HFactor,
    Monomial, Params, PresentationSpec, Relation, WeightFunction,
};
use crate::groups::{central, first_last, GroupElement};
use crate::matrix::{ExactMatrix, Q};
use crate::weight::{pow, FactorType};

fn inv_entry(p: &ExactMatrix, i: usize, j: usize) -> Q {
    p.inverse().expect("invertible").at(i, j).clone()
}

pub(super) fn case34(n: usize, m: usize, torus: bool) -> CaseSpec {
    let mm = 2 * m;
    let f = vec![FactorType::sl(n), FactorType::sp(mm)];
    let c = if torus { 1 } else { 0 };
    let mut functions = vec![
        WeightFunction::new(
            "Delta",
            ew(&f, &[(0, n - 2, 1)], 2 * c),
            func(move |g| {
                let p = g.factor(0);
                p.at(n - 1, n - 1) * p.at(n, n) - p.at(n - 1, n) * p.at(n, n - 1)
            }),
        ),
        WeightFunction::new(
            "D",
            ew(&f, &[(0, n - 1, 1), (1, 1, 1)], c),
            func(move |g| {
                let (p, qm) = (g.factor(0), g.factor(1));
                p.at(n, n - 1) * qm.at(mm, mm) - p.at(n, n) * qm.at(mm, 1)
            }),
        ),
        WeightFunction::new(
            "Phi1",
            ew(&f, &[(0, 1, 1), (0, n - 1, 1)], 0),
            func(move |g| {
                let p = g.factor(0);
                p.at(n, n - 1) * inv_entry(p, n - 1, 1) + p.at(n, n) * inv_entry(p, n, 1)
            }),
        ),
        WeightFunction::new(
            "Phi2",
            ew(&f, &[(0, 1, 1), (1, 1, 1)], -c),
            func(move |g| {
                let (p, qm) = (g.factor(0), g.factor(1));
                qm.at(mm, 1) * inv_entry(p, n - 1, 1) + qm.at(mm, mm) * inv_entry(p, n, 1)
            }),
        ),
        WeightFunction::new(
            "delta",
            ew(&f, &[(0, 2, 1)], -2 * c),
            func(move |g| {
                let rows: Vec<usize> = (3..=n).collect();
                let cols: Vec<usize> = (1..=n - 2).collect();
                g.factor(0).minor(&rows, &cols)
            }),
        ),
    ];
    let w_eval = move |g: &GroupElement| first_last_minor(g.factor(1), mm - 1, mm, mm);
    let mut auxiliaries = vec![];
    let mut relations = vec![];
    if m >= 2 {
        functions.push(WeightFunction::new("W", ew(&f, &[(1, 2, 1)], 0), func(w_eval)));
    } else {
        auxiliaries.push(aux("W", w_eval));
        relations.push(Relation::new(Monomial::new(1, &[("W", 1)]), Monomial::new(1, &[])));
    }
    if n == 3 {
        relations.push(Relation::new(
            Monomial::new(1, &[("Phi1", 1)]),
            Monomial::new(-1, &[("delta", 1), ("Delta", 1)]),
        ));
    }

    let mut generator_names = vec!["Delta"];
    if m >= 2 {
        generator_names.push("W");
    }
    generator_names.push("D");
    if n >= 4 {
        generator_names.push("Phi1");
    }
    generator_names.extend(["Phi2", "delta"]);

    let with_w = |mut v: Vec<&'static str>| {
        if m >= 2 {
            v.push("W");
        }
        names(&v)
    };
    let (presentation, divisibility) = if n >= 4 {
        (
            PresentationSpec {
                lattice: names(&["Delta", "D", "Phi1", "delta"]),
                semigroup: with_w(vec!["Phi2"]),
            },
            vec![],
        )
    } else {
        let mut neg_flip = ExactMatrix::flip(3);
        neg_flip = -&neg_flip;
        let div = if torus {
            vec![DivisibilitySpec {
                i: "Phi2".into(),
                j: "Delta".into(),
                witness: GroupElement(vec![neg_flip, ExactMatrix::identity(mm)]),
            }]
        } else {
            vec![]
        };
        (
            PresentationSpec {
                lattice: names(&["Delta", "D"]),
                semigroup: with_w(vec!["delta", "Phi2"]),
            },
            div,
        )
    };

    let mut h_factors = vec![HFactor {
        group: FactorType::sl(2),
        central: false,
    }];
    if n > 3 {
        h_factors.push(HFactor {
            group: FactorType::sl(n - 2),
            central: false,
        });
    }
    if m > 1 {
        h_factors.push(HFactor {
            group: FactorType::sp(mm - 2),
            central: true,
        });
    }
    let chi_exp = if n % 2 == 1 { n as i32 - 2 } else { (n as i32 - 2) / 2 };
    let embed = Arc::new(move |parts: &[ExactMatrix], t: &Q| {
        let h2 = &parts[0];
        let mut next = 1;
        let mut p = ExactMatrix::embed(n, &[n - 1, n], h2);
        let mut qm = first_last(mm, h2);
        if n > 3 {
            let idx: Vec<usize> = (1..=n - 2).collect();
            p = &p * &ExactMatrix::embed(n, &idx, &parts[next]);
            next += 1;
        }
        if m > 1 {
            qm = &qm * &central(mm, 1, &parts[next]);
        }
        if torus {
            let (a, b) = if n % 2 == 1 {
                (pow(t, -2), pow(t, n as i32 - 2))
            } else {
                (pow(t, -1), pow(t, (n as i32 - 2) / 2))
            };
            let d: Vec<Q> = (0..n).map(|i| if i < n - 2 { a.clone() } else { b.clone() }).collect();
            p = &p * &ExactMatrix::diagonal(&d);
        }
        GroupElement(vec![p, qm])
    });

    CaseSpec {
        case: if torus { 3 } else { 4 },
        params: Params::new(n, m, 0),
        factors: f,
        h_factors,
        functions,
        auxiliaries,
        relations,
        generator_names: names(&generator_names),
        presentation: Some(presentation),
        divisibility,
        chi0: if torus { Chi0::Power(chi_exp) } else { Chi0::Trivial },
        embed,
    }
}
