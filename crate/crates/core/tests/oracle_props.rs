mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgroup::oracle::{self, TinyGroup};
use solgroup::{hall, Perm, PrimeSet};

/// Every normal subgroup, as joins of normal closures of single elements.
fn normal_subgroups(t: &TinyGroup) -> Vec<TinyGroup> {
    let key = |g: &TinyGroup| -> BTreeSet<usize> {
        g.elements().iter().map(|x| t.position(x).unwrap()).collect()
    };
    let mut found: Vec<TinyGroup> = Vec::new();
    let mut keys: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for x in t.elements() {
        let n = t.normal_closure(std::slice::from_ref(x)).unwrap();
        if keys.insert(key(&n)) {
            found.push(n);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let gens: Vec<Perm> = found[i].generators().iter().chain(found[j].generators()).cloned().collect();
            let n = t.subgroup(&gens).unwrap();
            if keys.insert(key(&n)) {
                found.push(n);
            }
        }
        i += 1;
    }
    found
}

#[test]
fn cores_against_normal_subgroup_scan() {
    for (e, cg) in common::tiny_catalog() {
        if cg.group().order() > &200u32.into() {
            continue;
        }
        let t = oracle::enumerate(cg.group(), 200).unwrap();
        let normals = normal_subgroups(&t);
        for n in &normals {
            assert!(n.is_normal_in(&t), "{}", e.name);
        }
        for sigma in t.primes().subsets() {
            let core = oracle::core_sigma(&t, &sigma);
            assert!(core.is_normal_in(&t), "{} {sigma}", e.name);
            assert!(core.is_sigma_group(&sigma), "{} {sigma}", e.name);
            for n in normals.iter().filter(|n| n.is_sigma_group(&sigma)) {
                assert!(n.is_subgroup_of(&core), "{} {sigma}", e.name);
            }
        }
    }
}

#[test]
fn fitting_is_the_product_of_p_cores() {
    for (e, cg) in common::tiny_catalog() {
        let t = oracle::enumerate(cg.group(), common::TINY as usize).unwrap();
        let f = oracle::fitting_subgroup(&t);
        let gens: Vec<Perm> = t
            .primes()
            .iter()
            .flat_map(|p| oracle::core_sigma(&t, &PrimeSet::singleton(p)).generators().to_vec())
            .collect();
        let join = t.subgroup(&gens).unwrap();
        assert_eq!(f.order(), join.order(), "{}", e.name);
        assert!(f.is_subgroup_of(&join) && join.is_subgroup_of(&f), "{}", e.name);
        let order: usize = t
            .primes()
            .iter()
            .map(|p| oracle::core_sigma(&t, &PrimeSet::singleton(p)).order())
            .product();
        assert_eq!(f.order(), order, "{}", e.name);
    }
}

#[test]
fn lemma_21_exhaustive() {
    let mut checked = 0;
    for (e, cg) in common::tiny_catalog() {
        let t = oracle::enumerate(cg.group(), common::TINY as usize).unwrap();
        for sigma in t.primes().subsets().into_iter().filter(|s| s.len() >= 2) {
            for p in sigma.iter() {
                for q in sigma.iter().filter(|&q| q != p) {
                    assert!(oracle::verify_lemma21(&t, &sigma, p, q).unwrap(), "{} {sigma} {p} {q}", e.name);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn hall_search_matches_the_system() {
    for (e, cg) in common::tiny_catalog() {
        let t = oracle::enumerate(cg.group(), common::TINY as usize).unwrap();
        for sigma in t.primes().subsets() {
            let found = oracle::hall_search(&t, &sigma).unwrap();
            let ours = hall::hall_subgroup(&cg, &sigma).unwrap();
            assert_eq!(num_bigint::BigUint::from(found.order()), *ours.order(), "{} {sigma}", e.name);
        }
    }
}

#[test]
fn product_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (e, cg) in common::tiny_catalog() {
        let t = oracle::enumerate(cg.group(), common::TINY as usize).unwrap();
        if t.order() > 3000 {
            continue;
        }
        for _ in 0..6 {
            let pick = |rng: &mut ChaCha8Rng| {
                let k = rng.gen_range(1..3);
                let gens: Vec<Perm> = (0..k).map(|_| t.elements()[rng.gen_range(0..t.order())].clone()).collect();
                t.subgroup(&gens).unwrap()
            };
            let h = pick(&mut rng);
            let k = pick(&mut rng);
            let meet = h.elements().iter().filter(|x| k.contains(x)).count();
            let hk = oracle::product_set_order(&h, &k, 10_000_000).unwrap();
            assert_eq!(hk * meet, h.order() * k.order(), "{}", e.name);
        }
    }
}

#[test]
fn caps_are_enforced() {
    let cg = solgroup::catalog::find("ex3.2a").unwrap().build().unwrap();
    assert!(matches!(
        oracle::enumerate(cg.group(), 1000),
        Err(solgroup::Error::OracleScale { .. })
    ));
}
