//! Stabilizer chains (bases and strong generating sets).
//!
//! Transversals are stored explicitly as inverse coset representatives, so a
//! sift step is one composition. Three ways to complete a chain are provided:
//! the deterministic Schreier-Sims closure, random sifting up to an order that
//! is known in advance, and extension by an element normalizing the current
//! group (used by the soluble builder, where the new order is exactly known).

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{Perm, Point, Powerer};

const NONE: u32 = u32::MAX;

/// Consecutive useless random sifts before falling back to a deterministic
/// Schreier generator scan.
const FRUITLESS_LIMIT: usize = 48;

#[derive(Clone)]
struct StrongGen {
    perm: Perm,
    inv: Perm,
}

#[derive(Clone)]
struct Level {
    point: Point,
    gens: Vec<u32>,
    orbit: Vec<Point>,
    /// `inv_trans[k]` maps `orbit[k]` back to `point`.
    inv_trans: Vec<Perm>,
    pos: Vec<u32>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut pos = vec![NONE; degree];
        pos[point] = 0;
        Level {
            point: point as Point,
            gens: Vec::new(),
            orbit: vec![point as Point],
            inv_trans: vec![Perm::identity(degree)],
            pos,
        }
    }
}

#[derive(Clone)]
pub struct StabChain {
    degree: usize,
    gens: Vec<StrongGen>,
    levels: Vec<Level>,
    ambient: Option<Arc<AmbientBase>>,
    /// Every level point is a point of `ambient`.
    on_ambient: bool,
}

/// A base of a group `G` that contains every element a chain will be asked
/// about. Elements of `G` are determined by their images of these points,
/// which makes membership tests for them much cheaper than full sifting.
#[derive(Debug)]
pub(crate) struct AmbientBase {
    points: Vec<Point>,
    index: Vec<u32>,
}

impl AmbientBase {
    pub(crate) fn new(degree: usize, points: &[usize]) -> AmbientBase {
        let mut index = vec![NONE; degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i as u32;
        }
        AmbientBase {
            points: points.iter().map(|&p| p as Point).collect(),
            index,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    pub(crate) fn points(&self) -> &[Point] {
        &self.points
    }

    fn first_moved(&self, r: &Perm) -> Option<usize> {
        self.points
            .iter()
            .map(|&b| b as usize)
            .find(|&b| r.image(b) != b)
    }
}

impl StabChain {
    pub fn trivial(degree: usize) -> StabChain {
        StabChain {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
            ambient: None,
            on_ambient: true,
        }
    }

    /// Deterministic Schreier-Sims on an arbitrary generating set.
    pub fn from_generators(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain::trivial(degree);
        for g in gens {
            let (r, _) = chain.sift(g);
            if !r.is_identity() {
                chain.add_strong(r);
            }
        }
        chain.schreier_sims();
        chain
    }

    /// Random Schreier-Sims stopped at a group order the caller has proved.
    ///
    /// Every strong generator lies in the generated group, so a chain whose
    /// orbit product reaches `order` is complete. The caller must guarantee
    /// that `order` is the order of the generated group; an error is returned
    /// if the chain overshoots it or provably stops below it.
    pub fn with_known_order(
        degree: usize,
        gens: &[Perm],
        order: &BigUint,
        rng: &mut ChaCha8Rng,
    ) -> Result<StabChain> {
        let mut chain = StabChain::trivial(degree);
        for g in gens {
            let (r, _) = chain.sift(g);
            if !r.is_identity() {
                chain.add_strong(r);
            }
        }
        let mut current = chain.order();
        if &current == order {
            return Ok(chain);
        }
        let mut pr = ProductReplacement::new(degree, gens, rng);
        let mut fruitless = 0;
        while &current < order {
            let g = pr.next(rng);
            let (r, _) = chain.sift(&g);
            if r.is_identity() {
                fruitless += 1;
                if fruitless < FRUITLESS_LIMIT {
                    continue;
                }
                match chain.first_failing_schreier() {
                    Some(r) => {
                        chain.add_strong(r);
                    }
                    None => {
                        return Err(Error::Internal(format!(
                            "generated group has order {current}, expected {order}"
                        )))
                    }
                }
            } else {
                chain.add_strong(r);
            }
            fruitless = 0;
            current = chain.order();
        }
        if &current > order {
            return Err(Error::Internal(format!(
                "generated group has order above the expected {order}"
            )));
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point as usize).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for l in &self.levels {
            acc *= BigUint::from(l.orbit.len());
        }
        acc
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.gens.iter().map(|g| &g.perm)
    }

    /// Strong generators fixing the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<&Perm> {
        self.levels[level]
            .gens
            .iter()
            .map(|&i| &self.gens[i as usize].perm)
            .collect()
    }

    /// Sifts `g`; returns the residue and the level at which sifting stopped
    /// (`levels` when it went through every level).
    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g.clone(), 0)
    }

    fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(start) {
            let d = g.image(lvl.point as usize);
            if d == lvl.point as usize {
                continue;
            }
            let k = lvl.pos[d];
            if k == NONE {
                return (g, i);
            }
            g.mul_assign(&lvl.inv_trans[k as usize]);
        }
        let n = self.levels.len();
        (g, n)
    }

    /// Chooses new base points from `ambient` from now on.
    pub(crate) fn set_ambient(&mut self, ambient: Arc<AmbientBase>) {
        self.on_ambient = self.levels.iter().all(|l| ambient.index[l.point as usize] != NONE);
        self.ambient = Some(ambient);
    }

    /// Membership of an element of the ambient group given by its images of
    /// the ambient base points (in order); `None` if this chain has base
    /// points outside the ambient base.
    pub(crate) fn contains_images(&self, mut imgs: Vec<Point>) -> Option<bool> {
        let amb = self.ambient.as_ref()?;
        if !self.on_ambient {
            return None;
        }
        debug_assert_eq!(imgs.len(), amb.len());
        let mut active: Vec<u32> = (0..imgs.len() as u32).collect();
        let mut slot: Vec<u32> = (0..imgs.len() as u32).collect();
        for lvl in &self.levels {
            let q = amb.index[lvl.point as usize];
            let d = imgs[q as usize] as usize;
            if d != lvl.point as usize {
                let k = lvl.pos[d];
                if k == NONE {
                    return Some(false);
                }
                let t = lvl.inv_trans[k as usize].images();
                for &j in &active {
                    let v = &mut imgs[j as usize];
                    *v = t[*v as usize];
                }
            }
            // retire q: it is fixed from now on
            let s = slot[q as usize] as usize;
            let last = *active.last().expect("q is active");
            active[s] = last;
            slot[last as usize] = s as u32;
            active.pop();
        }
        Some(active.iter().all(|&j| imgs[j as usize] == amb.points[j as usize]))
    }

    /// Membership of `g`, which must lie in the ambient group if one is set.
    pub(crate) fn contains_in_ambient(&self, g: &Perm) -> bool {
        match &self.ambient {
            Some(a) if self.on_ambient => {
                let imgs = a.points.iter().map(|&b| g.images()[b as usize]).collect();
                self.contains_images(imgs).expect("levels on the ambient base")
            }
            _ => self.contains(g),
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift(g);
        r.is_identity()
    }

    /// Adds a non-identity sift residue as a strong generator and returns the
    /// deepest level it was added to.
    pub(crate) fn add_strong(&mut self, r: Perm) -> usize {
        debug_assert!(!r.is_identity());
        let j = match self
            .levels
            .iter()
            .position(|l| r.image(l.point as usize) != l.point as usize)
        {
            Some(j) => j,
            None => {
                let hinted = self.ambient.as_ref().and_then(|a| a.first_moved(&r));
                if hinted.is_none() {
                    self.on_ambient = false;
                }
                let p = hinted.or_else(|| r.first_moved()).expect("non-identity residue");
                self.levels.push(Level::new(p, self.degree));
                self.levels.len() - 1
            }
        };
        let inv = r.inverse();
        let gi = self.gens.len() as u32;
        self.gens.push(StrongGen { perm: r, inv });
        for i in 0..=j {
            self.extend_orbit(i, gi);
        }
        j
    }

    fn extend_orbit(&mut self, level: usize, gi: u32) {
        let gens = &self.gens;
        let lvl = &mut self.levels[level];
        lvl.gens.push(gi);
        let old_len = lvl.orbit.len();
        let mut idx = 0;
        while idx < lvl.orbit.len() {
            let delta = lvl.orbit[idx] as usize;
            let apply = |g: u32, lvl: &mut Level| {
                let sg = &gens[g as usize];
                let img = sg.perm.image(delta);
                if lvl.pos[img] == NONE {
                    let t = sg.inv.mul(&lvl.inv_trans[idx]);
                    lvl.pos[img] = lvl.orbit.len() as u32;
                    lvl.orbit.push(img as Point);
                    lvl.inv_trans.push(t);
                }
            };
            if idx < old_len {
                apply(gi, lvl);
            } else {
                for k in 0..lvl.gens.len() {
                    let g = lvl.gens[k];
                    apply(g, lvl);
                }
            }
            idx += 1;
        }
    }

    /// Uniformly random element. With `limits`, only the first `limits[i]`
    /// orbit points of level `i` are used (and levels past `limits` are
    /// skipped); because orbits only ever grow by appending, this samples the
    /// group the chain described when those lengths were recorded.
    pub(crate) fn random_element(&self, rng: &mut ChaCha8Rng, limits: Option<&[usize]>) -> Perm {
        let mut g = Perm::identity(self.degree);
        let nlev = limits.map_or(self.levels.len(), |l| l.len());
        for (i, lvl) in self.levels.iter().enumerate().take(nlev) {
            let len = limits.map_or(lvl.orbit.len(), |l| l[i]);
            if len <= 1 {
                continue;
            }
            let k = rng.gen_range(0..len);
            if k != 0 {
                g.mul_assign(&lvl.inv_trans[k]);
            }
        }
        g
    }

    /// A uniformly random element of the group described by the chain.
    pub fn random(&self, rng: &mut ChaCha8Rng) -> Perm {
        self.random_element(rng, None)
    }

    fn failing_schreier_at(&self, level: usize) -> Option<Perm> {
        let lvl = &self.levels[level];
        for k in 0..lvl.orbit.len() {
            let u = lvl.inv_trans[k].inverse();
            let delta = lvl.orbit[k] as usize;
            for &gi in &lvl.gens {
                let s = &self.gens[gi as usize].perm;
                let img = s.image(delta);
                let mut sg = u.mul(s);
                sg.mul_assign(&lvl.inv_trans[lvl.pos[img] as usize]);
                if sg.is_identity() {
                    continue;
                }
                let (r, _) = self.sift_from(sg, level + 1);
                if !r.is_identity() {
                    return Some(r);
                }
            }
        }
        None
    }

    /// The residue of some Schreier generator that does not sift, scanning
    /// from the deepest level; `None` certifies the chain is complete.
    pub(crate) fn first_failing_schreier(&self) -> Option<Perm> {
        (0..self.levels.len())
            .rev()
            .find_map(|i| self.failing_schreier_at(i))
    }

    /// Deterministic verification that the chain is complete.
    pub fn verify(&self) -> bool {
        self.first_failing_schreier().is_none()
    }

    /// Deterministic Schreier-Sims closure.
    pub fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.failing_schreier_at(i as usize) {
                Some(r) => {
                    let j = self.add_strong(r);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Least `k >= 1` with `x^k` in the group, by stripping primes off the
    /// element order.
    fn relative_order(&self, x: &Perm, pw: &Powerer) -> Result<u128> {
        let factors = x.order_factors();
        let mut m: u128 = 1;
        for (&p, &e) in &factors {
            for _ in 0..e {
                m = m
                    .checked_mul(p as u128)
                    .ok_or_else(|| Error::Internal("element order overflow".into()))?;
            }
        }
        for (&p, &e) in &factors {
            for _ in 0..e {
                let cand = m / p as u128;
                if self.contains(&pw.pow(cand)) {
                    m = cand;
                } else {
                    break;
                }
            }
        }
        Ok(m)
    }

    /// Extends a complete chain for `H` to one for `<H, x>`, where the caller
    /// has verified that `x` normalizes `H`. Then `|<H,x>| = k |H|` with `k`
    /// the order of `x` modulo `H`, which certifies the completed chain.
    /// Returns `k`.
    pub(crate) fn extend_normal(&mut self, x: &Perm, rng: &mut ChaCha8Rng) -> Result<u128> {
        let pw = Powerer::new(x);
        let k = self.relative_order(x, &pw)?;
        if k == 1 {
            return Ok(1);
        }
        let target = self.order() * BigUint::from(k);
        let limits: Vec<usize> = self.levels.iter().map(|l| l.orbit.len()).collect();
        let (r, _) = self.sift(x);
        self.add_strong(r);
        let mut current = self.order();
        let mut fruitless = 0;
        while current < target {
            let h = self.random_element(rng, Some(&limits));
            let j = if k == 2 { 1 } else { rng.gen_range(1..k) };
            let mut g = h;
            g.mul_assign(&pw.pow(j));
            let (r, _) = self.sift(&g);
            if r.is_identity() {
                fruitless += 1;
                if fruitless < FRUITLESS_LIMIT {
                    continue;
                }
                match self.first_failing_schreier() {
                    Some(r) => {
                        self.add_strong(r);
                    }
                    None => {
                        return Err(Error::Internal(
                            "normal extension stopped below its certified order".into(),
                        ))
                    }
                }
            } else {
                self.add_strong(r);
            }
            fruitless = 0;
            current = self.order();
        }
        if current > target {
            return Err(Error::Internal(
                "normal extension overshot its certified order".into(),
            ));
        }
        Ok(k)
    }
}

/// Product-replacement generator of (nearly uniform) random elements.
pub(crate) struct ProductReplacement {
    state: Vec<Perm>,
    acc: Perm,
}

impl ProductReplacement {
    pub(crate) fn new(degree: usize, gens: &[Perm], rng: &mut ChaCha8Rng) -> ProductReplacement {
        let mut state: Vec<Perm> = gens.to_vec();
        if state.is_empty() {
            state.push(Perm::identity(degree));
        }
        let base = state.clone();
        while state.len() < 11 {
            state.push(base[state.len() % base.len()].clone());
        }
        let mut pr = ProductReplacement {
            state,
            acc: Perm::identity(degree),
        };
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    pub(crate) fn next(&mut self, rng: &mut ChaCha8Rng) -> Perm {
        let n = self.state.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        if rng.gen_bool(0.5) {
            self.state[i].mul_assign(&other);
        } else {
            self.state[i] = other.mul(&self.state[i]);
        }
        self.acc.mul_assign(&self.state[i]);
        self.acc.clone()
    }
}
