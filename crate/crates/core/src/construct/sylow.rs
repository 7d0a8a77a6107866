use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::Result;
use crate::group::PermGroup;
use crate::par;
use crate::perm::Perm;
use crate::primes::{sigma_part, PrimeSet};

/// Generators of one Sylow subgroup per prime, pairwise permuting.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SylowSystem {
    gens: BTreeMap<u64, Vec<Perm>>,
}

impl SylowSystem {
    pub fn new(gens: BTreeMap<u64, Vec<Perm>>) -> SylowSystem {
        SylowSystem { gens }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.gens.keys().copied()
    }

    /// Generators of the Sylow p-subgroup; empty for primes not listed.
    pub fn generators(&self, p: u64) -> &[Perm] {
        self.gens.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn set_generators(&mut self, p: u64, gens: Vec<Perm>) {
        self.gens.insert(p, gens);
    }

    /// Union of the generators over the primes in `sigma`.
    pub fn joined(&self, sigma: &PrimeSet) -> Vec<Perm> {
        sigma.iter().flat_map(|p| self.generators(p).iter().cloned()).collect()
    }

    pub fn as_map(&self) -> &BTreeMap<u64, Vec<Perm>> {
        &self.gens
    }
}

/// Exact order of `<gens>`, all of which lie in `group`.
pub(crate) fn exact_order(group: &PermGroup, gens: &[Perm]) -> Result<BigUint> {
    let mut b = group.subgroup_builder();
    b.add_batch(gens.to_vec())?;
    Ok(b.chain().order())
}

/// One measured order against the order it should have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCheck {
    pub primes: PrimeSet,
    pub measured: BigUint,
    pub expected: BigUint,
}

impl OrderCheck {
    pub fn pass(&self) -> bool {
        self.measured == self.expected
    }
}

/// Per prime `|<G_p>|` against the p-part of `|G|`, and per pair
/// `|<G_p, G_q>|` against the {p,q}-part. The join of two Sylow subgroups
/// has exactly the {p,q}-part as order iff `G_p G_q = G_q G_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowReport {
    pub primes: Vec<OrderCheck>,
    pub pairs: Vec<OrderCheck>,
}

impl SylowReport {
    pub fn pass(&self) -> bool {
        self.primes.iter().chain(&self.pairs).all(OrderCheck::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrderCheck> {
        self.primes.iter().chain(&self.pairs).filter(|c| !c.pass())
    }
}

impl fmt::Display for SylowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.primes.iter().chain(&self.pairs) {
            writeln!(
                f,
                "{} {} expected {} {}",
                c.primes,
                c.measured,
                c.expected,
                if c.pass() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Checks `system` against `group` by exact orders. Generators outside the
/// group are an error.
pub fn verify(group: &PermGroup, system: &SylowSystem) -> Result<SylowReport> {
    for p in system.primes() {
        for g in system.generators(p) {
            if !group.contains(g)? {
                return Err(crate::Error::NotInGroup(g.to_string()));
            }
        }
    }
    let pi: Vec<u64> = group.primes().iter().collect();
    let mut sets: Vec<PrimeSet> = pi.iter().map(|&p| PrimeSet::singleton(p)).collect();
    for (i, &p) in pi.iter().enumerate() {
        for &q in &pi[i + 1..] {
            sets.push(PrimeSet::singleton(p).union(&PrimeSet::singleton(q)));
        }
    }
    let orders = par::map(&sets, |s| exact_order(group, &system.joined(s)));
    let mut primes = Vec::new();
    let mut pairs = Vec::new();
    for (s, m) in sets.into_iter().zip(orders) {
        let check = OrderCheck {
            expected: sigma_part(group.order(), &s),
            measured: m?,
            primes: s,
        };
        if check.primes.len() == 1 {
            primes.push(check);
        } else {
            pairs.push(check);
        }
    }
    Ok(SylowReport { primes, pairs })
}
