//! Certified stabilizer chains for soluble groups.
//!
//! Generators are sorted into levels by derived depth: an element at level
//! `d` lies in the `d`-th derived subgroup of the generated group. The chain
//! for `<levels[d..]>` is grown from the chain for `<levels[d+1..]>` one
//! element at a time, and an element `x` is only added once every commutator
//! `[h, x]` with a current generator `h` is already a member, so `x`
//! normalizes the current group and the new order is `k` times the old one
//! for the exactly computed order `k` of `x` modulo it. Failing commutators
//! belong one derived step deeper and are queued at the next level.
//!
//! For a soluble group the depth is bounded by Dixon's bound on the derived
//! length of soluble subgroups of `S_n`; needing a deeper level proves the
//! group is not soluble. [`ChainBuilder`] then falls back to the general
//! deterministic Schreier-Sims closure.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{AmbientBase, StabChain};
use crate::error::{Error, Result};
use crate::perm::Perm;

const SEED: u64 = 0x0005_eed5_01ab_1e00;

/// Maximum derived length of a soluble permutation group of this degree.
pub fn derived_length_bound(degree: usize) -> usize {
    if degree <= 2 {
        return 1;
    }
    let b = 2.5 * (degree as f64).ln() / 3f64.ln();
    b.floor() as usize + 1
}

/// An element together with its inverse.
struct Elt {
    g: Perm,
    inv: Perm,
}

impl Elt {
    fn new(g: Perm) -> Elt {
        let inv = g.inverse();
        Elt { g, inv }
    }
}

struct SolvableState {
    levels: Vec<Vec<Elt>>,
    /// `chains[d]`: chain for `<levels[d+1..], levels[d][..processed]>`.
    chains: Vec<Option<(StabChain, usize)>>,
}

/// Incrementally maintained exact stabilizer chain for `<added elements>`.
pub struct ChainBuilder {
    degree: usize,
    rng: ChaCha8Rng,
    depth_limit: usize,
    mode: Mode,
    inputs: Vec<Perm>,
    ambient: Option<Arc<AmbientBase>>,
}

enum Mode {
    Soluble(SolvableState),
    General(StabChain),
}

impl ChainBuilder {
    pub fn new(degree: usize) -> ChainBuilder {
        ChainBuilder {
            degree,
            rng: ChaCha8Rng::seed_from_u64(SEED),
            depth_limit: derived_length_bound(degree),
            mode: Mode::Soluble(SolvableState {
                levels: vec![Vec::new()],
                chains: vec![Some((StabChain::trivial(degree), 0))],
            }),
            inputs: Vec::new(),
            ambient: None,
        }
    }

    /// Builder for subgroups of a group with base `base`. Every element
    /// later added must lie in that group.
    pub(crate) fn within(degree: usize, base: Arc<AmbientBase>) -> ChainBuilder {
        let mut b = ChainBuilder::new(degree);
        if let Mode::Soluble(s) = &mut b.mode {
            if let Some((c, _)) = &mut s.chains[0] {
                c.set_ambient(base.clone());
            }
        }
        b.ambient = Some(base);
        b
    }

    /// Builder that only accepts soluble groups.
    pub fn soluble_only(degree: usize) -> ChainBuilder {
        ChainBuilder::new(degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_soluble_mode(&self) -> bool {
        matches!(self.mode, Mode::Soluble(_))
    }

    /// The chain for everything added so far.
    pub fn chain(&self) -> &StabChain {
        match &self.mode {
            Mode::Soluble(s) => &s.chains[0].as_ref().expect("settled").0,
            Mode::General(c) => c,
        }
    }

    pub fn into_chain(self) -> StabChain {
        match self.mode {
            Mode::Soluble(mut s) => s.chains.swap_remove(0).expect("settled").0,
            Mode::General(c) => c,
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if self.ambient.is_some() {
            self.chain().contains_in_ambient(g)
        } else {
            self.chain().contains(g)
        }
    }

    /// Elements added that were not members at the time: a generating set
    /// for the current group.
    pub fn generators(&self) -> &[Perm] {
        &self.inputs
    }

    /// Adds one element; returns whether it enlarged the group.
    pub fn add(&mut self, g: Perm) -> Result<bool> {
        Ok(self.add_batch(vec![g])? > 0)
    }

    /// Adds a batch of elements and settles once; returns how many were new.
    pub fn add_batch(&mut self, gs: Vec<Perm>) -> Result<usize> {
        let mut fresh = Vec::new();
        for g in gs {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: g.degree(),
                });
            }
            if g.is_identity() || self.contains(&g) || fresh.contains(&g) {
                continue;
            }
            fresh.push(g);
        }
        if fresh.is_empty() {
            return Ok(0);
        }
        let n = fresh.len();
        self.inputs.extend(fresh.iter().cloned());
        match &mut self.mode {
            Mode::General(c) => {
                for g in fresh {
                    let (r, _) = c.sift(&g);
                    if !r.is_identity() {
                        c.add_strong(r);
                    }
                }
                c.schreier_sims();
            }
            Mode::Soluble(s) => {
                s.levels[0].extend(fresh.into_iter().map(Elt::new));
                let amb = self.ambient.as_ref();
                match settle(s, self.degree, amb, self.depth_limit, &mut self.rng) {
                    Ok(()) => {}
                    Err(Error::NotSoluble) => {
                        let mut c = StabChain::trivial(self.degree);
                        if let Some(a) = &self.ambient {
                            c.set_ambient(a.clone());
                        }
                        for g in &self.inputs {
                            let (r, _) = c.sift(g);
                            if !r.is_identity() {
                                c.add_strong(r);
                            }
                        }
                        c.schreier_sims();
                        self.mode = Mode::General(c);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(n)
    }

    /// Like [`ChainBuilder::add_batch`] but reports non-soluble input as an
    /// error instead of switching to the general algorithm.
    pub fn add_batch_soluble(&mut self, gs: Vec<Perm>) -> Result<usize> {
        let before = self.inputs.len();
        let n = self.add_batch(gs)?;
        if !self.is_soluble_mode() {
            self.inputs.truncate(before);
            return Err(Error::NotSoluble);
        }
        Ok(n)
    }
}

fn settle(
    s: &mut SolvableState,
    degree: usize,
    amb: Option<&Arc<AmbientBase>>,
    depth_limit: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    'outer: loop {
        let depth = s.levels.len();
        if s.chains.len() < depth {
            s.chains.resize_with(depth, || None);
        }
        for d in (0..depth).rev() {
            let fully_done = matches!(&s.chains[d], Some((_, p)) if *p == s.levels[d].len());
            if fully_done {
                continue;
            }
            let (mut chain, mut idx) = match s.chains[d].take() {
                Some(c) => c,
                None => {
                    let base = if d + 1 < depth {
                        s.chains[d + 1].as_ref().expect("deeper level settled").0.clone()
                    } else {
                        let mut c = StabChain::trivial(degree);
                        if let Some(a) = amb {
                            c.set_ambient(a.clone());
                        }
                        c
                    };
                    (base, 0)
                }
            };
            let mut pushed: Vec<Perm> = Vec::new();
            let mut accepted_here: Vec<usize> = (0..idx).collect();
            while idx < s.levels[d].len() {
                let x = &s.levels[d][idx];
                let member = match amb {
                    Some(_) => chain.contains_in_ambient(&x.g),
                    None => chain.contains(&x.g),
                };
                if member {
                    s.levels[d].remove(idx);
                    continue;
                }
                let mut bad = Vec::new();
                let mut normalizes = true;
                let deeper = s.levels[d + 1..].iter().flatten();
                let here = accepted_here.iter().map(|&i| &s.levels[d][i]);
                for h in deeper.chain(here) {
                    if commutator_in(&chain, amb.map(|a| &**a), h, x) {
                        continue;
                    }
                    normalizes = false;
                    let c = Perm::commutator(&h.g, &x.g);
                    if !bad.contains(&c) && !pushed.contains(&c) {
                        bad.push(c);
                    }
                }
                if normalizes {
                    let x = x.g.clone();
                    chain.extend_normal(&x, rng)?;
                    accepted_here.push(idx);
                } else {
                    pushed.extend(bad);
                }
                idx += 1;
            }
            if pushed.is_empty() {
                let n = s.levels[d].len();
                s.chains[d] = Some((chain, n));
                continue;
            }
            if d + 1 >= depth_limit {
                return Err(Error::NotSoluble);
            }
            if d + 1 == s.levels.len() {
                s.levels.push(Vec::new());
                s.chains.push(None);
            }
            s.levels[d + 1].extend(pushed.into_iter().map(Elt::new));
            for c in s.chains.iter_mut().take(d + 1) {
                *c = None;
            }
            continue 'outer;
        }
        return Ok(());
    }
}

/// Whether `[h, x] = h⁻¹x⁻¹hx` lies in the group of `chain`.
fn commutator_in(chain: &StabChain, amb: Option<&AmbientBase>, h: &Elt, x: &Elt) -> bool {
    if let Some(a) = amb {
        let (hi, xi, hg, xg) = (h.inv.images(), x.inv.images(), h.g.images(), x.g.images());
        let imgs = a
            .points()
            .iter()
            .map(|&b| xg[hg[xi[hi[b as usize] as usize] as usize] as usize])
            .collect::<Vec<_>>();
        if imgs.iter().zip(a.points()).all(|(u, v)| u == v) {
            return true;
        }
        if let Some(m) = chain.contains_images(imgs) {
            return m;
        }
    }
    if h.g.commutes_with(&x.g) {
        return true;
    }
    chain.contains(&Perm::commutator(&h.g, &x.g))
}
