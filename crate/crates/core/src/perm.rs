//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Composition runs left to right: `a.compose(&b)` applies `a` first and then
//! `b`, so `(a*b)[i] = b[a[i]]`. Points are 0-based in memory and 1-based in
//! cycle notation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Point type. Degrees are limited to `MAX_DEGREE`.
pub type Point = u16;

/// Largest degree a [`Perm`] can have.
pub const MAX_DEGREE: usize = Point::MAX as usize + 1;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[Point]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree {degree} out of range");
        Perm {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&x| x as Point).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<Point>) -> Perm {
        debug_assert!(Perm::from_images(&images.iter().map(|&x| x as usize).collect::<Vec<_>>()).is_ok());
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {degree} out of range")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        x + 1
                    )));
                }
                if used[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice",
                        x + 1
                    )));
                }
                used[x] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Applies `self` then `other`; fails on a degree mismatch.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition, `self` first.
    #[inline]
    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        let b = &other.images;
        Perm {
            images: self.images.iter().map(|&x| b[x as usize]).collect(),
        }
    }

    /// `self = self * other` without allocating.
    #[inline]
    pub(crate) fn mul_assign(&mut self, other: &Perm) {
        let b = &other.images;
        for x in self.images.iter_mut() {
            *x = b[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `by^-1 * self * by`, the image of `self` under conjugation by `by`.
    pub fn conjugate(&self, by: &Perm) -> Perm {
        // (by^-1 self by)[by[i]] = by[self[i]]
        let mut out = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[by.images[i] as usize] = by.images[x as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        // a^-1 * a^b
        let ab = a.conjugate(b);
        let mut out = vec![0 as Point; a.degree()];
        for (i, &x) in a.images.iter().enumerate() {
            out[x as usize] = ab.images[i];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    /// Commutator test without allocation: true iff `a` and `b` commute.
    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest point, in order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Factorised element order: prime -> exponent.
    pub fn order_factors(&self) -> BTreeMap<u64, u32> {
        let mut out: BTreeMap<u64, u32> = BTreeMap::new();
        for c in self.cycles() {
            for (p, e) in crate::primes::factorize(c.len() as u64) {
                let slot = out.entry(p).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        out
    }

    /// Element order, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (p, e) in self.order_factors() {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// `self^k` for a non-negative exponent.
    pub fn pow(&self, k: u128) -> Perm {
        Powerer::new(self).pow(k)
    }

    /// Embeds `self` into a larger degree, moving point `i` to `offset + i`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<Point> = (0..degree).map(|i| i as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as Point;
        }
        Perm::from_raw(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    /// Without an explicit degree, the largest mentioned point is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        let max = cycles.iter().flatten().copied().max().map_or(1, |m| m + 1);
        let degree = degree.unwrap_or(max);
        if max > degree {
            return Err(Error::InvalidPermutation(format!(
                "point {max} exceeds degree {degree}"
            )));
        }
        Perm::from_cycles(degree, &cycles)
    }

    /// Parses a list of permutations in cycle notation separated by `,` or `;`
    /// at the top level, e.g. `(1 2),(1 2 3)`. All share one degree.
    pub fn parse_list(text: &str, degree: Option<usize>) -> Result<Vec<Perm>> {
        let mut pieces = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for ch in text.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    current.push(ch);
                }
                ',' | ';' if depth == 0 => pieces.push(std::mem::take(&mut current)),
                _ => current.push(ch),
            }
        }
        pieces.push(current);
        let pieces: Vec<String> = pieces
            .into_iter()
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mut parsed = Vec::new();
        for p in &pieces {
            parsed.push(parse_cycles(p)?);
        }
        let max = parsed
            .iter()
            .flatten()
            .flatten()
            .copied()
            .max()
            .map_or(1, |m| m + 1);
        let degree = degree.unwrap_or(max);
        if max > degree {
            return Err(Error::InvalidPermutation(format!(
                "point {max} exceeds degree {degree}"
            )));
        }
        parsed
            .iter()
            .map(|cycles| Perm::from_cycles(degree, cycles))
            .collect()
    }
}

/// Repeated powering of one permutation via its cycle decomposition.
pub(crate) struct Powerer {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl Powerer {
    pub(crate) fn new(g: &Perm) -> Powerer {
        Powerer {
            degree: g.degree(),
            cycles: g.cycles(),
        }
    }

    pub(crate) fn pow(&self, k: u128) -> Perm {
        let mut images: Vec<Point> = (0..self.degree).map(|i| i as Point).collect();
        for c in &self.cycles {
            let len = c.len();
            let shift = (k % len as u128) as usize;
            if shift == 0 {
                continue;
            }
            for (t, &x) in c.iter().enumerate() {
                images[x] = c[(t + shift) % len] as Point;
            }
        }
        Perm::from_raw(images)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut cycles = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(err(i, "expected '('"));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i].is_whitespace() || bytes[i] == ',') {
                i += 1;
            }
            if i >= bytes.len() {
                return Err(err(i, "unterminated cycle"));
            }
            if bytes[i] == ')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a point number"));
            }
            let s: String = bytes[start..i].iter().collect();
            let v: usize = s.parse().map_err(|_| err(start, "point number out of range"))?;
            if v == 0 {
                return Err(err(start, "points are numbered from 1"));
            }
            if v > MAX_DEGREE {
                return Err(err(start, "point number out of range"));
            }
            cycle.push(v - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn compose_left_then_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1 3 2)", 3));
    }

    #[test]
    fn identity_and_inverse() {
        let g = p("(1 4 2)(3 5)", 5);
        let e = Perm::identity(5);
        assert_eq!(e.compose(&g).unwrap(), g);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn cycle_printing() {
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert_eq!(p("(3 1 2)(4 5)", 6).to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse("(1 2", None).is_err());
        assert!(Perm::parse("(0 1)", None).is_err());
        assert!(Perm::parse("(1 2)(2 3)", None).is_err());
        assert!(Perm::parse("(1 5)", Some(3)).is_err());
        assert!(Perm::parse("x", None).is_err());
    }

    #[test]
    fn parse_list_shares_degree() {
        let v = Perm::parse_list("(1 2), (1 2 3 4)", None).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|g| g.degree() == 4));
    }

    #[test]
    fn conjugate_and_commutator_match_definitions() {
        let a = p("(1 2 3)", 4);
        let b = p("(1 2)(3 4)", 4);
        let conj = b.inverse().mul(&a).mul(&b);
        assert_eq!(a.conjugate(&b), conj);
        let comm = a.inverse().mul(&b.inverse()).mul(&a).mul(&b);
        assert_eq!(Perm::commutator(&a, &b), comm);
        assert_eq!(comm.is_identity(), a.commutes_with(&b));
    }

    #[test]
    fn powers_and_orders() {
        let g = p("(1 2 3)(4 5)", 5);
        assert_eq!(g.order(), Some(6));
        assert!(g.pow(6).is_identity());
        assert_eq!(g.pow(2), g.mul(&g));
        assert_eq!(g.pow(7), g);
    }
}
