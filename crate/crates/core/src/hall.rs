//! Hall subgroups read off a Sylow system, and Fitting lengths over prime
//! subsets.
//!
//! For a Sylow system `{G_p}` the product `G_σ = Π_{p∈σ} G_p` is a Hall
//! σ-subgroup. Values are keyed by `σ ∩ π(G)`, so `G_{p'}` for a prime
//! outside `π(G)` is `G` itself.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::construct::{ConstructedGroup, SylowReport};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::par;
use crate::primes::{sigma_part, PrimeSet};
use crate::series;

/// `G_σ`, generated by the Sylow generators for the primes in `σ ∩ π(G)`.
/// Its order is measured exactly and must be the σ-part of `|G|`.
pub fn hall_subgroup(g: &ConstructedGroup, sigma: &PrimeSet) -> Result<PermGroup> {
    let group = g.group();
    let pi = group.primes();
    let inter = sigma.intersection(pi);
    if inter.is_empty() {
        return Ok(PermGroup::trivial(group.degree()));
    }
    if pi.is_subset(sigma) {
        return Ok(group.clone());
    }
    let gens = g.system().joined(&inter);
    let mut b = group.subgroup_builder();
    b.add_batch(gens.clone())?;
    let expected = sigma_part(group.order(), &inter);
    let measured = b.chain().order();
    if measured != expected {
        return Err(Error::SylowCorrupt(format!(
            "<G_σ> for σ = {inter} has order {measured}, expected {expected}"
        )));
    }
    Ok(PermGroup::from_builder(b))
}

/// `h(G_σ)` for a collection of prime sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HallProfile {
    values: BTreeMap<PrimeSet, usize>,
}

impl HallProfile {
    pub fn get(&self, sigma: &PrimeSet) -> Result<usize> {
        self.values
            .get(sigma)
            .copied()
            .ok_or_else(|| Error::MissingProfile(sigma.to_string()))
    }

    pub fn insert(&mut self, sigma: PrimeSet, h: usize) {
        self.values.insert(sigma, h);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeSet, usize)> {
        self.values.iter().map(|(s, &h)| (s, h))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Memoized `h(G_σ)` for one group. Each value is computed at most once
/// per profiler; distinct subsets are evaluated in parallel.
pub struct Profiler<'a> {
    group: &'a ConstructedGroup,
    cache: Mutex<HashMap<PrimeSet, usize>>,
}

impl<'a> Profiler<'a> {
    pub fn new(group: &'a ConstructedGroup) -> Profiler<'a> {
        Profiler {
            group,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &ConstructedGroup {
        self.group
    }

    fn key(&self, sigma: &PrimeSet) -> PrimeSet {
        sigma.intersection(self.group.group().primes())
    }

    fn cached(&self, key: &PrimeSet) -> Option<usize> {
        self.cache.lock().expect("cache lock").get(key).copied()
    }

    /// `h(G_σ)`.
    pub fn h(&self, sigma: &PrimeSet) -> Result<usize> {
        let key = self.key(sigma);
        if let Some(v) = self.cached(&key) {
            return Ok(v);
        }
        let v = series::fitting_length(&hall_subgroup(self.group, &key)?)?;
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    /// `h(G)`.
    pub fn h_total(&self) -> Result<usize> {
        self.h(&self.group.group().primes().clone())
    }

    /// The profile over `subsets`, missing values computed in parallel.
    pub fn profile(&self, subsets: &[PrimeSet]) -> Result<HallProfile> {
        let mut todo: Vec<PrimeSet> = subsets.iter().map(|s| self.key(s)).collect();
        todo.sort();
        todo.dedup();
        todo.retain(|k| self.cached(k).is_none());
        for r in par::map(&todo, |k| self.h(k)) {
            r?;
        }
        let mut out = HallProfile::default();
        for s in subsets {
            out.insert(s.clone(), self.h(s)?);
        }
        Ok(out)
    }

    /// `𝔥_ℓ(G)`, the largest `h(G_σ)` over `σ ⊆ π(G)` with `|σ| = ℓ`.
    pub fn frak(&self, ell: usize) -> Result<usize> {
        let pi = self.group.group().primes();
        if ell > pi.len() {
            return Err(Error::Usage(format!("ℓ = {ell} exceeds w(G) = {}", pi.len())));
        }
        let subsets = pi.subsets_of_size(ell);
        let profile = self.profile(&subsets)?;
        Ok(profile.iter().map(|(_, h)| h).max().unwrap_or(0))
    }
}

/// `h(G_σ)` for every σ in `subsets`.
pub fn hall_profile(g: &ConstructedGroup, subsets: &[PrimeSet]) -> Result<HallProfile> {
    Profiler::new(g).profile(subsets)
}

/// `𝔥_ℓ(G)`; `ℓ` must be at most `w(G)`.
pub fn frak_h(g: &ConstructedGroup, ell: usize) -> Result<usize> {
    Profiler::new(g).frak(ell)
}

/// Per-prime and per-pair order checks of the attached system.
pub fn verify_sylow_system(g: &ConstructedGroup) -> SylowReport {
    g.sylow_report().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, Config, GroupExpr};
    use num_bigint::BigUint;

    fn cg(s: &str) -> ConstructedGroup {
        build(&GroupExpr::parse(s).unwrap(), &Config::default()).unwrap()
    }

    fn ps(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_conventions() {
        let g = cg("W(C(2,1),W(C(3,1),C(5,1)))");
        assert_eq!(hall_subgroup(&g, &ps(&[2, 3, 5])).unwrap().order(), g.group().order());
        assert_eq!(hall_subgroup(&g, &ps(&[2, 3, 5, 7])).unwrap().order(), g.group().order());
        assert!(hall_subgroup(&g, &ps(&[11])).unwrap().is_trivial());
        assert!(hall_subgroup(&g, &ps(&[])).unwrap().is_trivial());
        let h23 = hall_subgroup(&g, &ps(&[2, 3])).unwrap();
        assert_eq!(h23.order(), &(BigUint::from(2u32).pow(15) * BigUint::from(243u32)));
    }

    #[test]
    fn profile_of_small_wreath() {
        let g = cg("W(C(2,1),C(3,1))");
        let p = Profiler::new(&g);
        assert_eq!(p.h(&ps(&[2])).unwrap(), 1);
        assert_eq!(p.h(&ps(&[3])).unwrap(), 1);
        assert_eq!(p.h(&ps(&[2, 3])).unwrap(), 2);
        assert_eq!(p.h(&ps(&[])).unwrap(), 0);
        assert_eq!(p.frak(0).unwrap(), 0);
        assert_eq!(p.frak(1).unwrap(), 1);
        assert_eq!(p.frak(2).unwrap(), 2);
        assert!(matches!(p.frak(3), Err(Error::Usage(_))));
        let prof = hall_profile(&g, &[ps(&[2]), ps(&[2, 3, 7])]).unwrap();
        assert_eq!(prof.get(&ps(&[2, 3, 7])).unwrap(), 2);
        assert!(matches!(prof.get(&ps(&[3])), Err(Error::MissingProfile(_))));
    }

    #[test]
    fn report_is_attached_one() {
        let g = cg("W(C(2,1),C(3,1))");
        assert!(verify_sylow_system(&g).pass());
    }
}
