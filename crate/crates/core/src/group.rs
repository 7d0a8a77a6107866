use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{AmbientBase, StabChain};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::primes::{factorize, PrimeSet};
use crate::solvable::ChainBuilder;

/// A permutation group with a complete stabilizer chain.
///
/// Immutable after construction; clones share the chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Arc<Vec<Perm>>,
    chain: Arc<StabChain>,
    order: BigUint,
    primes: PrimeSet,
    small: Arc<OnceLock<Vec<Perm>>>,
    ambient: Arc<OnceLock<Arc<AmbientBase>>>,
}

impl PermGroup {
    /// The group generated by `generators`, with an exact chain.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        check_degrees(degree, &generators)?;
        let mut b = ChainBuilder::new(degree);
        b.add_batch(generators.clone())?;
        Ok(PermGroup::from_chain(degree, generators, b.into_chain()))
    }

    /// The group generated by `generators`, whose order the caller has
    /// already established (for instance from a construction formula that
    /// has been verified). The chain is complete once it reaches `order`.
    pub fn with_known_order(degree: usize, generators: Vec<Perm>, order: &BigUint) -> Result<PermGroup> {
        check_degrees(degree, &generators)?;
        let mut rng = ChaCha8Rng::seed_from_u64(order.bits());
        let chain = StabChain::with_known_order(degree, &generators, order, &mut rng)?;
        Ok(PermGroup::from_chain(degree, generators, chain))
    }

    pub(crate) fn from_chain(degree: usize, generators: Vec<Perm>, chain: StabChain) -> PermGroup {
        let order = chain.order();
        let mut primes = Vec::new();
        for s in chain.orbit_sizes() {
            primes.extend(factorize(s as u64).into_iter().map(|(p, _)| p));
        }
        PermGroup {
            degree,
            generators: Arc::new(generators),
            chain: Arc::new(chain),
            order,
            primes: PrimeSet::new(primes).expect("orbit size factors are prime"),
            small: Arc::new(OnceLock::new()),
            ambient: Arc::new(OnceLock::new()),
        }
    }

    /// Builds a group from a settled builder, keeping its generating set.
    pub(crate) fn from_builder(b: ChainBuilder) -> PermGroup {
        let degree = b.degree();
        let gens = b.generators().to_vec();
        PermGroup::from_chain(degree, gens, b.into_chain())
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_chain(degree, Vec::new(), StabChain::trivial(degree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// π(G), the prime divisors of the order.
    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// w(G) = |π(G)|.
    pub fn num_primes(&self) -> usize {
        self.primes.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.chain.contains(g))
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if !self.contains(g)? {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        let mut b = self.subgroup_builder();
        b.add_batch(gens.clone())?;
        Ok(PermGroup::from_chain(self.degree, gens, b.into_chain()))
    }

    /// True iff every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain.contains(g))
    }

    /// The base of the chain, for fast membership tests of elements known
    /// to lie in this group.
    pub(crate) fn ambient_base(&self) -> Arc<AmbientBase> {
        self.ambient
            .get_or_init(|| Arc::new(AmbientBase::new(self.degree, &self.chain.base())))
            .clone()
    }

    /// A builder for subgroups of this group.
    pub(crate) fn subgroup_builder(&self) -> ChainBuilder {
        ChainBuilder::within(self.degree, self.ambient_base())
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Perm {
        self.chain.random(rng)
    }

    /// The generators with redundant ones dropped: each kept generator is
    /// outside the group generated by the ones kept before it.
    pub fn small_generators(&self) -> &[Perm] {
        self.small.get_or_init(|| {
            if self.generators.len() <= 2 {
                return self.generators.to_vec();
            }
            let mut b = self.subgroup_builder();
            for g in self.generators.iter() {
                b.add(g.clone()).expect("generators share the degree");
                if b.chain().order() == self.order {
                    break;
                }
            }
            b.generators().to_vec()
        })
    }
}

fn check_degrees(degree: usize, gens: &[Perm]) -> Result<()> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    Ok(())
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order,
            self.generators.len()
        )
    }
}
