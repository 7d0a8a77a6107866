mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use solgroup::bounds::{self, Cover, LemmaSweep, Status};
use solgroup::PrimeSet;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn pi(w: usize) -> PrimeSet {
    PrimeSet::new(PRIMES[..w].iter().copied()).unwrap()
}

fn check_remark_24(cover: &Cover) {
    let pi = cover.ground();
    let w = pi.len();
    let t = cover.t();
    let members: Vec<&PrimeSet> = cover.members().collect();
    // (a) each prime is missing from at most one member.
    for p in pi.iter() {
        assert!(members.iter().filter(|m| !m.contains(p)).count() <= 1, "{cover}");
    }
    // (b) Σ|ϱ_i| ≥ (t−1)·w.
    let total: usize = members.iter().map(|m| m.len()).sum();
    assert!(total >= (t - 1) * w, "{cover}");
    // (c) a nondegenerate cover has t ≤ w, and t = w forces every ϱ_i = π∖{p_i}.
    if !cover.is_degenerate() {
        assert!(t <= w, "{cover}");
        if t == w {
            assert!(members.iter().all(|m| m.len() == w - 1), "{cover}");
        }
    }
}

#[test]
fn remark_24_on_enumerated_covers() {
    let mut seen = 0;
    for w in 1..=5 {
        let pi = pi(w);
        for t in 3..=w + 2 {
            let nondeg = bounds::enumerate_covers(&pi, t, false);
            let all = bounds::enumerate_covers(&pi, t, true);
            assert!(nondeg.iter().all(|c| !c.is_degenerate()));
            assert!(nondeg.len() <= all.len());
            for c in &all {
                check_remark_24(c);
                let list: Vec<PrimeSet> = c.members().cloned().collect();
                assert_eq!(bounds::is_cover(&list, &pi), (true, c.is_degenerate()));
                seen += 1;
            }
            if t > w {
                assert!(nondeg.is_empty(), "w={w} t={t}");
            }
        }
    }
    assert!(seen > 100);
    // (d) for π = {p,q} the only 3-cover is {{p},{q},π}, degenerate.
    let two = pi(2);
    let covers = bounds::enumerate_covers(&two, 3, true);
    assert_eq!(covers.len(), 1);
    assert!(covers[0].is_degenerate());
    assert_eq!(covers[0].to_string(), "{{2},{2,3},{3}}");
}

/// Independent count of the covers of {2,3,5}: brute force over all
/// 3- and 4-element families of subsets.
#[test]
fn cover_counts_match_brute_force() {
    let pi = pi(3);
    let subsets = pi.subsets();
    for t in 3..=4 {
        let mut count = 0;
        let n = subsets.len();
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            let fam: Vec<&PrimeSet> = idx.iter().map(|&i| &subsets[i]).collect();
            let ok = (0..t).all(|i| (i + 1..t).all(|j| fam[i].union(fam[j]) == pi));
            if ok {
                count += 1;
            }
            // Next combination.
            let mut k = t;
            while k > 0 && idx[k - 1] == n - t + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
        assert_eq!(bounds::enumerate_covers(&pi, t, true).len(), count, "t={t}");
    }
}

#[test]
fn catalog_sweep() {
    for (e, cg) in common::built_catalog() {
        let r = bounds::check_all(&cg).unwrap();
        let w = r.primes.len();
        if let Some(v) = r.violations().next() {
            panic!("{}: {} {} actual {} bound {:?}", e.name, v.name, v.inputs, v.actual, v.value);
        }
        assert!(r.pass(), "{}", e.name);
        let applicable = |name| r.entries_named(name).filter(|x| x.status() != Status::NotApplicable).count();
        if w >= 3 {
            assert!(applicable(bounds::PROP31) > 0, "{}", e.name);
            assert!(applicable(bounds::THEOREM_A) > 0, "{}", e.name);
            assert_eq!(applicable(bounds::THEOREM_C), w - 2, "{}", e.name);
            assert_eq!(applicable(bounds::REMARK36), 1, "{}", e.name);
        }
        if w >= 4 {
            assert_eq!(applicable(bounds::THEOREM_B), 1, "{}", e.name);
        }
        if w >= 2 {
            assert_eq!(applicable(bounds::CJS), (1 << w) - 2, "{}", e.name);
        }
    }
}

/// Theorem A against Prop 2.2 over the same groups. Reported only: the
/// comparison is empirical.
#[test]
fn theorem_a_against_prop22() {
    let mut better = 0;
    let mut total = 0;
    for (_, cg) in common::built_catalog() {
        let r = bounds::check_all(&cg).unwrap();
        let best = |name| r.entries_named(name).filter_map(|x| x.value).min();
        if let (Some(a), Some(p)) = (best(bounds::THEOREM_A), best(bounds::PROP22)) {
            total += 1;
            if a <= p {
                better += 1;
            }
        }
    }
    eprintln!("theorem A at least as sharp as prop 2.2 on {better} of {total} groups");
    assert!(total > 0);
}

#[test]
fn lemma_sweep_holds() {
    let s = LemmaSweep::run();
    assert!(s.pass(), "{:?}", s.failures);
    assert_eq!(s.checked, 13 * 61);
}

proptest! {
    #[test]
    fn prop31_formula(theta in 3usize..200, t in 3usize..12) {
        let b = bounds::bound_prop31(theta, t).unwrap();
        prop_assert_eq!(b * Rational64::from_integer(t as i64 - 2), Rational64::from_integer(theta as i64 - 2));
    }

    #[test]
    fn theorem_c_formula(f in 1usize..100, l in 3usize..10) {
        let b = bounds::bound_theorem_c(f, l).unwrap();
        prop_assert_eq!(b, Rational64::new((l * f) as i64 - 2, l as i64 - 2));
    }

    #[test]
    fn lemma_inequality(w in 4i64..200, lambda in 4i64..200) {
        prop_assert!(bounds::lemma_theorem_b(w, lambda));
        prop_assert!(w * lambda - 4 <= 2 * (w - 2) * (lambda - 1));
    }
}
