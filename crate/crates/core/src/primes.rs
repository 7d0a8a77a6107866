//! Small-prime arithmetic and the [`PrimeSet`] type.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorisation, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The `p`-adic valuation of `n` (`n` nonzero).
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    e
}

/// The largest divisor of `n` whose prime divisors all lie in `sigma`.
pub fn sigma_part(n: &BigUint, sigma: &PrimeSet) -> BigUint {
    let mut out = BigUint::one();
    for p in sigma.iter() {
        let e = valuation(n, p);
        out *= BigUint::from(p).pow(e);
    }
    out
}

/// True iff every prime divisor of `n` lies in `sigma`.
pub fn is_sigma_number(n: &BigUint, sigma: &PrimeSet) -> bool {
    let mut rest = n.clone();
    for p in sigma.iter() {
        let pb = BigUint::from(p);
        while !rest.is_zero() && rest.is_multiple_of(&pb) {
            rest /= &pb;
        }
    }
    rest.is_one()
}

/// Prime divisors of `n`, assuming none exceeds `bound`.
pub fn prime_divisors_bounded(n: &BigUint, bound: u64) -> PrimeSet {
    let mut out = BTreeSet::new();
    let mut rest = n.clone();
    for p in 2..=bound.max(2) {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if rest.is_multiple_of(&pb) {
            out.insert(p);
            while rest.is_multiple_of(&pb) {
                rest /= &pb;
            }
        }
    }
    if !rest.is_one() {
        if let Some(r) = rest.to_u64() {
            for (p, _) in factorize(r) {
                out.insert(p);
            }
        }
    }
    PrimeSet(out)
}

/// A sorted set of primes (the sets σ, τ, ϱ_i of the bound formulas).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet(BTreeSet::new())
    }

    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<PrimeSet> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(Error::Usage(format!("{p} is not a prime")));
            }
            set.insert(p);
        }
        Ok(PrimeSet(set))
    }

    pub fn singleton(p: u64) -> PrimeSet {
        assert!(is_prime(p));
        PrimeSet(BTreeSet::from([p]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn without(&self, p: u64) -> PrimeSet {
        let mut s = self.0.clone();
        s.remove(&p);
        PrimeSet(s)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// All subsets, ordered by size and then lexicographically.
    pub fn subsets(&self) -> Vec<PrimeSet> {
        let elems: Vec<u64> = self.iter().collect();
        let mut out: Vec<PrimeSet> = (0u64..(1u64 << elems.len()))
            .map(|mask| {
                PrimeSet(
                    elems
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn subsets_of_size(&self, k: usize) -> Vec<PrimeSet> {
        self.subsets().into_iter().filter(|s| s.len() == k).collect()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Accepts `{2,3}`, `2,3` or `2 3`; `{}` is the empty set.
    fn from_str(s: &str) -> Result<PrimeSet> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut primes = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: u64 = tok
                .parse()
                .map_err(|_| Error::Usage(format!("'{tok}' is not a number")))?;
            primes.push(p);
        }
        PrimeSet::new(primes)
    }
}

/// Formats `n` as a product of prime powers, e.g. `2^15·3^5·5`.
pub fn format_factored(n: &BigUint, bound: u64) -> String {
    if n.is_one() {
        return "1".to_string();
    }
    let primes = prime_divisors_bounded(n, bound);
    primes
        .iter()
        .map(|p| {
            let e = valuation(n, p);
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn sigma_parts() {
        let n = BigUint::from(2u64.pow(15) * 3u64.pow(5) * 5);
        let s = PrimeSet::new([2, 3]).unwrap();
        assert_eq!(sigma_part(&n, &s), BigUint::from(2u64.pow(15) * 3u64.pow(5)));
        assert!(!is_sigma_number(&n, &s));
        assert!(is_sigma_number(&BigUint::from(12u32), &s));
        assert_eq!(format_factored(&n, 10), "2^15·3^5·5");
    }

    #[test]
    fn prime_set_parsing() {
        let s: PrimeSet = "{2,3}".parse().unwrap();
        assert_eq!(s, PrimeSet::new([3, 2]).unwrap());
        assert!("{4}".parse::<PrimeSet>().is_err());
        assert!("{}".parse::<PrimeSet>().unwrap().is_empty());
        assert_eq!(s.subsets().len(), 4);
    }
}
