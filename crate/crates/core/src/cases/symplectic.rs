//! Cases 5 to 8: products of symplectic groups.

use std::sync::Arc;

use super::{
    aux, cross, ew, first_last_minor, func, names, Auxiliary, CaseSpec, Chi0, DivisibilitySpec,
    HFactor, Monomial, Params, PresentationSpec, Relation, WeightFunction,
};
use crate::groups::{central, first_last, group_inverse, GroupElement};
use crate::matrix::{ExactMatrix, Q};
use crate::weight::FactorType;

fn sp_factor(size: usize, central: bool) -> HFactor {
    HFactor {
        group: FactorType::sp(size),
        central,
    }
}

/// Either a catalog function or, when the block is `2 x 2`, an auxiliary
/// identically equal to one.
fn maybe<F>(
    present: bool,
    name: &str,
    weight: impl FnOnce() -> crate::weight::ExtendedWeight,
    eval: F,
    functions: &mut Vec<WeightFunction>,
    auxiliaries: &mut Vec<Auxiliary>,
    relations: &mut Vec<Relation>,
) where
    F: Fn(&GroupElement) -> Q + Send + Sync + 'static,
{
    if present {
        functions.push(WeightFunction::new(name, weight(), func(eval)));
    } else {
        auxiliaries.push(aux(name, eval));
        relations.push(Relation::new(Monomial::new(1, &[(name, 1)]), Monomial::new(1, &[])));
    }
}

fn with_central(size: usize, h: &ExactMatrix, c: Option<&ExactMatrix>) -> ExactMatrix {
    let base = first_last(size, h);
    match c {
        Some(c) => &base * &central(size, 1, c),
        None => base,
    }
}

pub(super) fn case5(n: usize, m: usize) -> CaseSpec {
    let (nn, mm) = (2 * n, 2 * m);
    let f = vec![FactorType::sp(nn), FactorType::sp(mm)];
    let (mut functions, mut auxiliaries, mut relations) = (vec![], vec![], vec![]);
    maybe(
        n >= 2,
        "Delta",
        || ew(&f, &[(0, 2, 1)], 0),
        move |g| first_last_minor(g.factor(0), nn - 1, nn, nn),
        &mut functions,
        &mut auxiliaries,
        &mut relations,
    );
    maybe(
        m >= 2,
        "delta",
        || ew(&f, &[(1, 2, 1)], 0),
        move |g| first_last_minor(g.factor(1), mm - 1, mm, mm),
        &mut functions,
        &mut auxiliaries,
        &mut relations,
    );
    functions.push(WeightFunction::new(
        "D",
        ew(&f, &[(0, 1, 1), (1, 1, 1)], 0),
        func(move |g| cross(g.factor(0), nn, nn, g.factor(1), mm, mm)),
    ));
    let generator_names: Vec<String> = functions.iter().map(|f| f.name.clone()).collect();
    let mut lattice = vec![];
    if n >= 2 {
        lattice.push("Delta");
    }
    lattice.push("D");
    let semigroup = if m >= 2 { vec!["delta"] } else { vec![] };

    let mut h_factors = vec![sp_factor(2, false)];
    if n > 1 {
        h_factors.push(sp_factor(nn - 2, true));
    }
    if m > 1 {
        h_factors.push(sp_factor(mm - 2, true));
    }
    let embed = Arc::new(move |parts: &[ExactMatrix], _t: &Q| {
        let mut rest = parts[1..].iter();
        let a = if n > 1 { rest.next() } else { None };
        let c = if m > 1 { rest.next() } else { None };
        GroupElement(vec![with_central(nn, &parts[0], a), with_central(mm, &parts[0], c)])
    });
    CaseSpec {
        case: 5,
        params: Params::new(n, m, 0),
        factors: f,
        h_factors,
        functions,
        auxiliaries,
        relations,
        generator_names,
        presentation: Some(PresentationSpec {
            lattice: names(&lattice),
            semigroup: names(&semigroup),
        }),
        divisibility: vec![],
        chi0: Chi0::Trivial,
        embed,
    }
}

/// `Q` written on rows and columns `1, 2, 2n-1, 2n`.
pub fn iota6(n: usize, qm: &ExactMatrix) -> ExactMatrix {
    let nn = 2 * n;
    ExactMatrix::embed(nn, &[1, 2, nn - 1, nn], qm)
}

pub(super) fn case6(n: usize) -> CaseSpec {
    let nn = 2 * n;
    let f = vec![FactorType::sp(nn), FactorType::sp(4)];
    let r = Arc::new(move |g: &GroupElement| {
        g.factor(0) * &group_inverse(&iota6(n, g.factor(1)), FactorType::sp(nn)).expect("invertible")
    });
    let cols = [1, 2, nn - 1, nn];
    let delta = move |r: &ExactMatrix, i: usize| {
        let rows: Vec<usize> = (nn + 1 - i..=nn).collect();
        r.minor(&rows, &cols[..i])
    };
    let d_of = move |r: &ExactMatrix| {
        let x = |i, j| r.at(i, j).clone();
        x(nn, 1) * x(nn - 1, nn) - x(nn - 1, 1) * x(nn, nn) + x(nn, 2) * x(nn - 1, nn - 1)
            - x(nn - 1, 2) * x(nn, nn - 1)
    };
    let mk = |i: usize| {
        let r = r.clone();
        func(move |g| delta(&r(g), i))
    };
    let mut functions = vec![
        WeightFunction::new("Delta1", ew(&f, &[(0, 1, 1), (1, 1, 1)], 0), mk(1)),
        WeightFunction::new("Delta2", ew(&f, &[(0, 2, 1), (1, 2, 1)], 0), mk(2)),
        WeightFunction::new("Delta3", ew(&f, &[(0, 3, 1), (1, 1, 1)], 0), mk(3)),
    ];
    let mut auxiliaries = vec![];
    let mut relations = vec![];
    if n >= 4 {
        functions.push(WeightFunction::new("Delta4", ew(&f, &[(0, 4, 1)], 0), mk(4)));
    } else {
        let r = r.clone();
        auxiliaries.push(aux("Delta4", move |g| delta(&r(g), 4)));
        relations.push(Relation::new(
            Monomial::new(1, &[("Delta4", 1)]),
            Monomial::new(-1, &[("D", 1)]),
        ));
    }
    {
        let r = r.clone();
        functions.push(WeightFunction::new(
            "D",
            ew(&f, &[(0, 2, 1)], 0),
            func(move |g| d_of(&r(g))),
        ));
    }
    {
        let r = r.clone();
        functions.push(WeightFunction::new(
            "F",
            ew(&f, &[(0, 1, 1), (0, 3, 1), (1, 2, 1)], 0),
            func(move |g| {
                let r = r(g);
                let phi = r.minor(&[nn - 2, nn - 1, nn], &[1, 2, nn]);
                delta(&r, 1) * phi + r.at(nn, 2) * delta(&r, 3)
            }),
        ));
    }
    let generator_names: Vec<String> = functions.iter().map(|f| f.name.clone()).collect();
    let mut semigroup = vec![];
    if n >= 4 {
        semigroup.push("Delta4");
    }
    semigroup.extend(["D", "F"]);
    let embed = Arc::new(move |parts: &[ExactMatrix], _t: &Q| {
        let p = &iota6(n, &parts[0]) * &central(nn, 2, &parts[1]);
        GroupElement(vec![p, parts[0].clone()])
    });
    CaseSpec {
        case: 6,
        params: Params::new(n, 0, 0),
        factors: f,
        h_factors: vec![sp_factor(4, false), sp_factor(nn - 4, true)],
        functions,
        auxiliaries,
        relations,
        generator_names,
        presentation: Some(PresentationSpec {
            lattice: names(&["Delta1", "Delta2", "Delta3"]),
            semigroup: names(&semigroup),
        }),
        divisibility: vec![],
        chi0: Chi0::Trivial,
        embed,
    }
}

pub(super) fn case7(n: usize, m: usize, l: usize) -> CaseSpec {
    let sizes = [2 * n, 2 * m, 2 * l];
    let f: Vec<FactorType> = sizes.iter().map(|&s| FactorType::sp(s)).collect();
    let (mut functions, mut auxiliaries, mut relations) = (vec![], vec![], vec![]);
    for k in 0..3 {
        let s = sizes[k];
        maybe(
            s >= 4,
            &format!("Delta{}", k + 1),
            || ew(&f, &[(k, 2, 1)], 0),
            move |g| first_last_minor(g.factor(k), s - 1, s, s),
            &mut functions,
            &mut auxiliaries,
            &mut relations,
        );
    }
    for (name, a, b) in [("D1", 0, 1), ("D2", 1, 2), ("D3", 0, 2)] {
        let (sa, sb) = (sizes[a], sizes[b]);
        functions.push(WeightFunction::new(
            name,
            ew(&f, &[(a, 1, 1), (b, 1, 1)], 0),
            func(move |g| cross(g.factor(a), sa, sa, g.factor(b), sb, sb)),
        ));
    }
    let generator_names: Vec<String> = functions.iter().map(|f| f.name.clone()).collect();
    let mut lattice = vec![];
    if n >= 2 {
        lattice.push("Delta1");
    }
    lattice.extend(["D1", "D3"]);
    let mut semigroup = vec![];
    if m >= 2 {
        semigroup.push("Delta2");
    }
    if l >= 2 {
        semigroup.push("Delta3");
    }
    semigroup.push("D2");

    let mut h_factors = vec![sp_factor(2, false)];
    for &s in &sizes {
        if s > 2 {
            h_factors.push(sp_factor(s - 2, true));
        }
    }
    let embed = Arc::new(move |parts: &[ExactMatrix], _t: &Q| {
        let mut rest = parts[1..].iter();
        GroupElement(
            sizes
                .iter()
                .map(|&s| with_central(s, &parts[0], if s > 2 { rest.next() } else { None }))
                .collect(),
        )
    });
    CaseSpec {
        case: 7,
        params: Params::new(n, m, l),
        factors: f,
        h_factors,
        functions,
        auxiliaries,
        relations,
        generator_names,
        presentation: Some(PresentationSpec {
            lattice: names(&lattice),
            semigroup: names(&semigroup),
        }),
        divisibility: vec![],
        chi0: Chi0::Trivial,
        embed,
    }
}

fn case8_delta1(g: &GroupElement) -> Q {
    first_last_minor(g.factor(1), 3, 4, 4)
}

fn case8_small(g: &GroupElement, nn: usize, mm: usize) -> (Q, Q) {
    let (p, qm, r) = (g.factor(0), g.factor(1), g.factor(2));
    let d1 = cross(p, nn, nn, qm, 4, 4);
    let d2 = r.at(mm, 1) * qm.at(4, 3) - r.at(mm, mm) * qm.at(4, 2);
    (d1, d2)
}

pub(super) fn case8(n: usize, m: usize) -> CaseSpec {
    let (nn, mm) = (2 * n, 2 * m);
    let f = vec![FactorType::sp(nn), FactorType::sp(4), FactorType::sp(mm)];
    let mut functions = vec![
        WeightFunction::new("Delta1", ew(&f, &[(1, 2, 1)], 0), func(case8_delta1)),
        WeightFunction::new(
            "Delta2",
            ew(&f, &[(1, 2, 1)], 0),
            func(|g| g.factor(1).minor(&[3, 4], &[2, 3])),
        ),
        WeightFunction::new(
            "delta1",
            ew(&f, &[(0, 1, 1), (1, 1, 1)], 0),
            func(move |g| case8_small(g, nn, mm).0),
        ),
        WeightFunction::new(
            "delta2",
            ew(&f, &[(1, 1, 1), (2, 1, 1)], 0),
            func(move |g| case8_small(g, nn, mm).1),
        ),
    ];
    let mut auxiliaries = vec![];
    let mut relations = vec![Relation::new(
        Monomial::new(1, &[("Delta2", 1)]),
        Monomial::new(-1, &[("Delta1", 1)]),
    )];
    maybe(
        n >= 2,
        "D1",
        || ew(&f, &[(0, 2, 1)], 0),
        move |g| first_last_minor(g.factor(0), nn - 1, nn, nn),
        &mut functions,
        &mut auxiliaries,
        &mut relations,
    );
    maybe(
        m >= 2,
        "D2",
        || ew(&f, &[(2, 2, 1)], 0),
        move |g| first_last_minor(g.factor(2), mm - 1, mm, mm),
        &mut functions,
        &mut auxiliaries,
        &mut relations,
    );
    functions.push(WeightFunction::new(
        "Delta",
        ew(&f, &[(0, 1, 1), (1, 2, 1), (2, 1, 1)], 0),
        func(move |g| {
            let (p, qm, r) = (g.factor(0), g.factor(1), g.factor(2));
            let (d1, d2) = case8_small(g, nn, mm);
            d2 * (p.at(nn, 1) * qm.at(3, 4) - p.at(nn, nn) * qm.at(3, 1))
                - d1 * (r.at(mm, 1) * qm.at(3, 3) - r.at(mm, mm) * qm.at(3, 2))
        }),
    ));
    let generator_names: Vec<String> = functions
        .iter()
        .map(|f| f.name.clone())
        .filter(|s| s != "Delta2")
        .collect();
    let mut semigroup = vec![];
    if n >= 2 {
        semigroup.push("D1");
    }
    if m >= 2 {
        semigroup.push("D2");
    }
    semigroup.push("Delta");

    let mut h_factors = vec![sp_factor(2, false), sp_factor(2, false)];
    if n > 1 {
        h_factors.push(sp_factor(nn - 2, true));
    }
    if m > 1 {
        h_factors.push(sp_factor(mm - 2, true));
    }
    let embed = Arc::new(move |parts: &[ExactMatrix], _t: &Q| {
        let (h2, h3) = (&parts[0], &parts[1]);
        let mut rest = parts[2..].iter();
        let a = if n > 1 { rest.next() } else { None };
        let c = if m > 1 { rest.next() } else { None };
        let qm = &ExactMatrix::embed(4, &[1, 4], h2) * &ExactMatrix::embed(4, &[2, 3], h3);
        GroupElement(vec![with_central(nn, h2, a), qm, with_central(mm, h3, c)])
    });
    let witness = GroupElement(vec![
        ExactMatrix::identity(nn),
        ExactMatrix::omega(4),
        ExactMatrix::identity(mm),
    ]);
    CaseSpec {
        case: 8,
        params: Params::new(n, m, 0),
        factors: f,
        h_factors,
        functions,
        auxiliaries,
        relations,
        generator_names,
        presentation: Some(PresentationSpec {
            lattice: names(&["Delta1", "delta1", "delta2"]),
            semigroup: names(&semigroup),
        }),
        divisibility: vec![DivisibilitySpec {
            i: "Delta".into(),
            j: "Delta1".into(),
            witness,
        }],
        chi0: Chi0::Trivial,
        embed,
    }
}
