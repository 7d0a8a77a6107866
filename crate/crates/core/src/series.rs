//! Derived, lower central and lower nilpotent series.
//!
//! Everything is computed inside the group, without quotients. Normal
//! subgroups are carried by normal generators: if `N = ncl_H(Y)` then
//! `[N, H] = ncl_H({[y, h] : y in Y, h a generator of H})`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Default bound on the number of steps of any series.
pub const STEP_CEILING: usize = 256;

/// Smallest subgroup of `g` containing `s` and normalized by `g`.
pub fn normal_closure(g: &PermGroup, s: &[Perm]) -> Result<PermGroup> {
    for x in s {
        if !g.contains(x)? {
            return Err(Error::NotInGroup(x.to_string()));
        }
    }
    Ok(closure_unchecked(g, s.to_vec()))
}

fn closure_unchecked(g: &PermGroup, s: Vec<Perm>) -> PermGroup {
    closure_with_gens(g, s).0
}

/// Normal closure in `g` together with a normal generating set: the inputs
/// that were outside the closure of the inputs kept before them.
fn closure_with_gens(g: &PermGroup, s: Vec<Perm>) -> (PermGroup, Vec<Perm>) {
    let conj = g.small_generators();
    let mut b = g.subgroup_builder();
    let mut normal_gens = Vec::new();
    let mut done = 0;
    for x in s {
        if !b.add(x.clone()).expect("degrees checked") {
            continue;
        }
        normal_gens.push(x);
        while done < b.generators().len() {
            let y = b.generators()[done].clone();
            done += 1;
            let images: Vec<Perm> = conj.iter().map(|c| y.conjugate(c)).collect();
            b.add_batch(images).expect("degrees checked");
        }
    }
    (PermGroup::from_builder(b), normal_gens)
}

/// `[H, K]`, the normal closure in `<H, K>` of the commutators of
/// generators. Both arguments must lie in `ambient`.
pub fn commutator_subgroup(h: &PermGroup, k: &PermGroup, ambient: &PermGroup) -> Result<PermGroup> {
    for x in h.generators().iter().chain(k.generators()) {
        if !ambient.contains(x)? {
            return Err(Error::NotInGroup(x.to_string()));
        }
    }
    let comms = commutators(h.small_generators(), k.small_generators());
    if h.is_subgroup_of(k) {
        return Ok(closure_unchecked(k, comms));
    }
    if k.is_subgroup_of(h) {
        return Ok(closure_unchecked(h, comms));
    }
    let mut join = h.generators().to_vec();
    join.extend(k.generators().iter().cloned());
    let join = PermGroup::new(h.degree(), join)?;
    Ok(closure_unchecked(&join, comms))
}

fn commutators(a: &[Perm], b: &[Perm]) -> Vec<Perm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if x.commutes_with(y) {
                continue;
            }
            let c = Perm::commutator(x, y);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// Which series a [`SubgroupSeries`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    LowerNilpotent,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower_central",
            SeriesKind::LowerNilpotent => "lower_nilpotent",
        })
    }
}

/// A descending chain of subgroups, `terms[0]` the input group, each term
/// strictly smaller than its predecessor.
#[derive(Debug, Clone)]
pub struct SubgroupSeries {
    pub kind: SeriesKind,
    pub terms: Vec<PermGroup>,
}

impl SubgroupSeries {
    /// Number of strict descents.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn last(&self) -> &PermGroup {
        self.terms.last().expect("series has the input term")
    }
}

/// The derived series down to the trivial group.
pub fn derived_series(g: &PermGroup) -> Result<SubgroupSeries> {
    let mut terms = vec![g.clone()];
    loop {
        let cur = terms.last().expect("nonempty");
        if cur.is_trivial() {
            break;
        }
        if terms.len() > STEP_CEILING {
            return Err(Error::NotSoluble);
        }
        let next = closure_unchecked(cur, commutators(cur.small_generators(), cur.small_generators()));
        if next.order() == cur.order() {
            return Err(Error::NotSoluble);
        }
        terms.push(next);
    }
    Ok(SubgroupSeries {
        kind: SeriesKind::Derived,
        terms,
    })
}

/// d(G): 0 for the trivial group, 1 for nontrivial abelian groups.
pub fn derived_length(g: &PermGroup) -> Result<usize> {
    Ok(derived_series(g)?.length())
}

/// The lower central series `L1 = H`, `L(k+1) = [Lk, H]`, up to
/// stabilization.
pub fn lower_central_series(h: &PermGroup) -> Result<SubgroupSeries> {
    let z = h.small_generators().to_vec();
    let terms = central_descent(h, h, &z, true)?.0;
    Ok(SubgroupSeries {
        kind: SeriesKind::LowerCentral,
        terms,
    })
}

/// Lower central series of `n = ncl_g(z)`, a normal subgroup of `g`. Every
/// term is normal in `g`, and for normal `A` we have
/// `[A, n] = ncl_g([gens A, z])`, so closures only ever conjugate by the
/// few generators of `g`. Returns the terms (all of them if `keep`, else
/// only the last) and normal generators of the last.
fn central_descent(g: &PermGroup, n: &PermGroup, z: &[Perm], keep: bool) -> Result<(Vec<PermGroup>, Vec<Perm>)> {
    let mut terms = vec![n.clone()];
    let mut last_gens = z.to_vec();
    let mut steps = 0;
    loop {
        let cur = terms.last().expect("nonempty");
        if cur.is_trivial() {
            break;
        }
        steps += 1;
        if steps > STEP_CEILING {
            return Err(Error::NotSoluble);
        }
        let (next, gens) = closure_with_gens(g, commutators(cur.generators(), z));
        if next.order() == cur.order() {
            break;
        }
        last_gens = gens;
        if !keep {
            terms.clear();
        }
        terms.push(next);
    }
    Ok((terms, last_gens))
}

/// Last term of the lower central series; trivial iff `h` is nilpotent.
pub fn nilpotent_residual(h: &PermGroup) -> Result<PermGroup> {
    Ok(lower_central_series(h)?.last().clone())
}

pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    Ok(nilpotent_residual(g)?.is_trivial())
}

/// Iterated nilpotent residuals down to the trivial group.
pub fn lower_nilpotent_series(g: &PermGroup) -> Result<SubgroupSeries> {
    let mut terms = vec![g.clone()];
    let mut z = g.small_generators().to_vec();
    loop {
        let cur = terms.last().expect("nonempty");
        if cur.is_trivial() {
            break;
        }
        if terms.len() > STEP_CEILING {
            return Err(Error::NotSoluble);
        }
        let (mut last, gens) = central_descent(g, cur, &z, false)?;
        let next = last.pop().expect("nonempty");
        if next.order() == cur.order() {
            return Err(Error::NotSoluble);
        }
        z = gens;
        terms.push(next);
    }
    Ok(SubgroupSeries {
        kind: SeriesKind::LowerNilpotent,
        terms,
    })
}

/// h(G), the length of the lower nilpotent series.
pub fn fitting_length(g: &PermGroup) -> Result<usize> {
    Ok(lower_nilpotent_series(g)?.length())
}
