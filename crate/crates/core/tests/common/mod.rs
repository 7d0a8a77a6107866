#![allow(dead_code)]

use num_bigint::BigUint;
use proptest::prelude::*;
use solgroup::catalog::{catalog, Entry};
use solgroup::construct::predicted_size;
use solgroup::{Config, ConstructedGroup, GroupExpr};

pub const TINY: u32 = 20_000;

/// Catalog entries small enough for the brute-force oracle.
pub fn tiny_catalog() -> Vec<(Entry, ConstructedGroup)> {
    catalog()
        .into_iter()
        .map(|e| (e, e.build().expect("catalog builds")))
        .filter(|(_, g)| g.group().order() <= &BigUint::from(TINY))
        .collect()
}

pub fn built_catalog() -> Vec<(Entry, ConstructedGroup)> {
    catalog()
        .into_iter()
        .map(|e| (e, e.build().expect("catalog builds")))
        .collect()
}

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        Just(GroupExpr::cyclic(2, 1)),
        Just(GroupExpr::cyclic(3, 1)),
        Just(GroupExpr::cyclic(5, 1)),
        Just(GroupExpr::cyclic(2, 2)),
        Just(GroupExpr::elem_abelian(2, 2)),
        Just(GroupExpr::elem_abelian(3, 2)),
    ]
}

/// Random expressions of degree at most `max_degree`, mixing direct,
/// natural and regular wreath products and short iterations.
pub fn small_expr(max_degree: u128) -> impl Strategy<Value = GroupExpr> {
    leaf()
        .prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| GroupExpr::direct(a, b)),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| GroupExpr::wreath(a, b, solgroup::Action::Natural)),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| GroupExpr::wreath(a, b, solgroup::Action::Regular)),
                inner.prop_map(|a| GroupExpr::iterated(a, 2)),
            ]
        })
        .prop_filter("degree budget", move |e| {
            predicted_size(e, &Config::default()).0 <= max_degree
        })
}

/// Degree and order from the textbook formulas: |A×B| = |A||B| on the
/// disjoint union, |A≀B| = |A|^d|B| on d copies, with d the degree of B
/// (natural) or |B| (regular).
pub fn formula_size(e: &GroupExpr, natural_it: bool) -> (u128, BigUint) {
    fn wreath(a: (u128, BigUint), b: (u128, BigUint), natural: bool) -> (u128, BigUint) {
        let d: u128 = if natural { b.0 } else { b.1.to_string().parse().expect("small") };
        (a.0 * d, a.1.pow(d as u32) * b.1)
    }
    match e {
        GroupExpr::Cyclic { p, k } => {
            let n = p.pow(*k);
            (n as u128, BigUint::from(n))
        }
        GroupExpr::ElemAbelian { p, k } => ((*p as u128) * (*k as u128), BigUint::from(p.pow(*k))),
        GroupExpr::Direct(a, b) => {
            let (da, oa) = formula_size(a, natural_it);
            let (db, ob) = formula_size(b, natural_it);
            (da + db, oa * ob)
        }
        GroupExpr::Wreath { base, top, action } => wreath(
            formula_size(base, natural_it),
            formula_size(top, natural_it),
            *action == solgroup::Action::Natural,
        ),
        GroupExpr::Iterated { inner, ell, action } => {
            let natural = action.map_or(natural_it, |a| a == solgroup::Action::Natural);
            let h = formula_size(inner, natural_it);
            let mut cur = h.clone();
            for _ in 1..*ell {
                cur = wreath(cur, h.clone(), natural);
            }
            cur
        }
    }
}
