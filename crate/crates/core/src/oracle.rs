//! Brute-force ground truth on tiny groups.
//!
//! Groups are fully enumerated. σ-cores come from normal closures of
//! conjugacy classes, the Fitting subgroup is the join of the p-cores, and
//! quotients are realized as the action on cosets. Nothing here scales;
//! everything here is simple enough to trust.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, Point};
use crate::primes::{factorize, PrimeSet};

/// A fully enumerated permutation group.
#[derive(Debug, Clone)]
pub struct TinyGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

/// All elements of `g`, provided `|g| ≤ cap`.
pub fn enumerate(g: &PermGroup, cap: usize) -> Result<TinyGroup> {
    if g.order() > &BigUint::from(cap) {
        return Err(Error::OracleScale {
            order: g.order().to_string(),
            cap,
        });
    }
    TinyGroup::generate(g.degree(), g.generators(), cap)
}

impl TinyGroup {
    pub fn trivial(degree: usize) -> TinyGroup {
        let id = Perm::identity(degree);
        TinyGroup {
            degree,
            gens: Vec::new(),
            index: HashMap::from([(id.clone(), 0)]),
            elements: vec![id],
        }
    }

    /// The group generated by `candidates`, keeping only generators that
    /// enlarge it.
    pub fn generate<'a, I>(degree: usize, candidates: I, cap: usize) -> Result<TinyGroup>
    where
        I: IntoIterator<Item = &'a Perm>,
    {
        let mut g = TinyGroup::trivial(degree);
        for c in candidates {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: c.degree(),
                });
            }
            if !g.contains(c) {
                g = g.extended(c, cap)?;
            }
        }
        Ok(g)
    }

    /// Breadth-first closure of the generators plus `x`.
    fn extended(&self, x: &Perm, cap: usize) -> Result<TinyGroup> {
        let mut gens = self.gens.clone();
        gens.push(x.clone());
        let mut elements = self.elements.clone();
        let mut index = self.index.clone();
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let y = elements[i].mul(s);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::OracleScale {
                        order: format!("more than {cap}"),
                        cap,
                    });
                }
                index.insert(y.clone(), elements.len() as u32);
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
        Ok(TinyGroup {
            degree: self.degree,
            gens,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn primes(&self) -> PrimeSet {
        PrimeSet::new(factorize(self.order() as u64).into_iter().map(|(p, _)| p)).expect("prime factors")
    }

    pub fn is_sigma_group(&self, sigma: &PrimeSet) -> bool {
        self.primes().is_subset(sigma)
    }

    pub fn is_subgroup_of(&self, other: &TinyGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Closed under conjugation by the generators of `other`.
    pub fn is_normal_in(&self, other: &TinyGroup) -> bool {
        self.is_subgroup_of(other)
            && self
                .gens
                .iter()
                .all(|x| other.gens.iter().all(|g| self.contains(&x.conjugate(g))))
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<TinyGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        TinyGroup::generate(self.degree, gens, self.order())
    }

    /// The conjugacy classes, each listed from its first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < class.len() {
                let x = &self.elements[class[k]];
                for g in &self.gens {
                    let y = self.index[&x.conjugate(g)] as usize;
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        class.push(y);
                    }
                }
                k += 1;
            }
            classes.push(class);
        }
        classes
    }

    /// The smallest normal subgroup containing `xs`.
    pub fn normal_closure(&self, xs: &[Perm]) -> Result<TinyGroup> {
        let mut n = self.subgroup(xs)?;
        loop {
            let outside: Vec<Perm> = n
                .gens
                .iter()
                .flat_map(|x| self.gens.iter().map(move |g| x.conjugate(g)))
                .filter(|y| !n.contains(y))
                .collect();
            if outside.is_empty() {
                return Ok(n);
            }
            let mut all = n.gens.clone();
            all.extend(outside);
            n = TinyGroup::generate(self.degree, &all, self.order())?;
        }
    }

    /// The same group as a [`PermGroup`].
    pub fn to_perm_group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.gens.clone()).expect("generators share the degree")
    }
}

fn is_sigma_element(x: &Perm, sigma: &PrimeSet) -> bool {
    x.order_factors().keys().all(|&p| sigma.contains(p))
}

/// O_σ(G): the join of all classes whose normal closure is a σ-group.
pub fn core_sigma(t: &TinyGroup, sigma: &PrimeSet) -> TinyGroup {
    let mut keep = Vec::new();
    for class in t.conjugacy_classes() {
        let rep = &t.elements[class[0]];
        if rep.is_identity() || !is_sigma_element(rep, sigma) {
            continue;
        }
        let members: Vec<Perm> = class.iter().map(|&i| t.elements[i].clone()).collect();
        let closure = TinyGroup::generate(t.degree, &members, t.order()).expect("within the group");
        if closure.is_sigma_group(sigma) {
            keep.extend(closure.gens);
        }
    }
    TinyGroup::generate(t.degree, &keep, t.order()).expect("within the group")
}

/// F(G), the join of the p-cores.
pub fn fitting_subgroup(t: &TinyGroup) -> TinyGroup {
    let gens: Vec<Perm> = t
        .primes()
        .iter()
        .flat_map(|p| core_sigma(t, &PrimeSet::singleton(p)).gens)
        .collect();
    TinyGroup::generate(t.degree, &gens, t.order()).expect("within the group")
}

/// G/N for normal N, acting on the cosets of N by right multiplication.
pub fn quotient(t: &TinyGroup, n: &TinyGroup) -> Result<TinyGroup> {
    if !n.is_normal_in(t) {
        return Err(Error::Usage("quotient by a subgroup that is not normal".into()));
    }
    let mut coset = vec![usize::MAX; t.order()];
    let mut reps = Vec::new();
    for i in 0..t.order() {
        if coset[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for f in &n.elements {
            coset[t.index[&f.mul(&t.elements[i])] as usize] = c;
        }
    }
    let images: Vec<Perm> = t
        .gens
        .iter()
        .map(|g| {
            Perm::from_raw(
                reps.iter()
                    .map(|&r| coset[t.index[&t.elements[r].mul(g)] as usize] as Point)
                    .collect(),
            )
        })
        .collect();
    TinyGroup::generate(reps.len(), &images, t.order() / n.order())
}

/// Length of the upper Fitting series, by iterated quotients G/F(G).
pub fn fitting_length_upper(t: &TinyGroup) -> Result<usize> {
    let mut cur = t.clone();
    let mut steps = 0;
    while !cur.is_trivial() {
        let f = fitting_subgroup(&cur);
        if f.is_trivial() {
            return Err(Error::NotSoluble);
        }
        cur = quotient(&cur, &f)?;
        steps += 1;
    }
    Ok(steps)
}

pub fn is_nilpotent(t: &TinyGroup) -> bool {
    fitting_subgroup(t).order() == t.order()
}

/// A Hall σ-subgroup, grown greedily from σ-elements. A σ-element refused
/// once is refused by every larger σ-subgroup, so one pass ends at a
/// maximal σ-subgroup, which in a soluble group is a Hall subgroup.
pub fn hall_search(t: &TinyGroup, sigma: &PrimeSet) -> Result<TinyGroup> {
    let mut h = TinyGroup::trivial(t.degree);
    for x in &t.elements {
        if h.contains(x) || !is_sigma_element(x, sigma) {
            continue;
        }
        let bigger = h.extended(x, t.order())?;
        if bigger.is_sigma_group(sigma) {
            h = bigger;
        }
    }
    let want: usize = factorize(t.order() as u64)
        .into_iter()
        .filter(|(p, _)| sigma.contains(*p))
        .map(|(p, e)| (p as usize).pow(e))
        .product();
    if h.order() != want {
        return Err(Error::Internal(format!(
            "no Hall {sigma}-subgroup found: best has order {}, want {want}",
            h.order()
        )));
    }
    Ok(h)
}

/// O_p(G_σ) ≤ O_{q'}(G) for distinct `p`, `q` in `sigma`.
pub fn verify_lemma21(t: &TinyGroup, sigma: &PrimeSet, p: u64, q: u64) -> Result<bool> {
    if p == q || !sigma.contains(p) || !sigma.contains(q) {
        return Err(Error::Usage(format!("need distinct p, q in {sigma}, got {p}, {q}")));
    }
    let hall = hall_search(t, sigma)?;
    let op = core_sigma(&hall, &PrimeSet::singleton(p));
    let oq = core_sigma(t, &t.primes().without(q));
    Ok(op.elements.iter().all(|x| oq.contains(x)))
}

fn product_set(h: &[Perm], k: &[Perm], budget: u64) -> Result<HashSet<Perm>> {
    let pairs = h.len() as u128 * k.len() as u128;
    if pairs > budget as u128 {
        return Err(Error::PairBudget { pairs, budget });
    }
    let mut out = HashSet::new();
    for a in h {
        for b in k {
            out.insert(a.mul(b));
        }
    }
    Ok(out)
}

/// |HK| by enumeration.
pub fn product_set_order(h: &TinyGroup, k: &TinyGroup, budget: u64) -> Result<usize> {
    Ok(product_set(&h.elements, &k.elements, budget)?.len())
}

/// Outcome of testing h(G) ≤ h(H)+h(K)+h(L)−2 for one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture37Report {
    pub order: usize,
    /// |HK|, |KL|, |LH|.
    pub products: [usize; 3],
    pub trifactorized: bool,
    pub h_g: usize,
    /// h(H), h(K), h(L).
    pub h_factors: [usize; 3],
    /// `None` when G = HK = KL = LH fails.
    pub inequality: Option<bool>,
    /// Whether G is nilpotent, recorded when all three factors are.
    pub kegel: Option<bool>,
}

/// Checks G = HK = KL = LH and evaluates the inequality as data. When all
/// three factors are nilpotent G must be nilpotent; anything else is an
/// internal error.
pub fn check_conjecture37(
    g: &TinyGroup,
    h: &[Perm],
    k: &[Perm],
    l: &[Perm],
    budget: u64,
) -> Result<Conjecture37Report> {
    let hs = [g.subgroup(h)?, g.subgroup(k)?, g.subgroup(l)?];
    let products = [
        product_set_order(&hs[0], &hs[1], budget)?,
        product_set_order(&hs[1], &hs[2], budget)?,
        product_set_order(&hs[2], &hs[0], budget)?,
    ];
    let trifactorized = products.iter().all(|&n| n == g.order());
    let h_g = fitting_length_upper(g)?;
    let h_factors = [
        fitting_length_upper(&hs[0])?,
        fitting_length_upper(&hs[1])?,
        fitting_length_upper(&hs[2])?,
    ];
    let (inequality, kegel) = if trifactorized {
        let rhs = h_factors.iter().sum::<usize>() as i64 - 2;
        let kegel = h_factors.iter().all(|&x| x <= 1).then_some(h_g <= 1);
        (Some(h_g as i64 <= rhs), kegel)
    } else {
        (None, None)
    };
    if kegel == Some(false) {
        return Err(Error::Internal(
            "product of three pairwise permuting nilpotent factors is not nilpotent".into(),
        ));
    }
    Ok(Conjecture37Report {
        order: g.order(),
        products,
        trifactorized,
        h_g,
        h_factors,
        inequality,
        kegel,
    })
}

/// Outcome of testing h(G) ≤ h(N1N2)+h(N2N3)+h(N3N1)−2 for one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture38Report {
    pub order: usize,
    pub nilpotent: [bool; 3],
    /// N1N2 = N2N1, N2N3 = N3N2, N3N1 = N1N3.
    pub permutable: [bool; 3],
    /// |N1N2N3|.
    pub triple_product: usize,
    pub hypothesis: bool,
    pub h_g: usize,
    /// h(N1N2), h(N2N3), h(N3N1), when the hypothesis holds.
    pub h_pairs: Option<[usize; 3]>,
    pub inequality: Option<bool>,
}

pub fn check_conjecture38(
    g: &TinyGroup,
    n1: &[Perm],
    n2: &[Perm],
    n3: &[Perm],
    budget: u64,
) -> Result<Conjecture38Report> {
    let ns = [g.subgroup(n1)?, g.subgroup(n2)?, g.subgroup(n3)?];
    let nilpotent = [is_nilpotent(&ns[0]), is_nilpotent(&ns[1]), is_nilpotent(&ns[2])];
    let mut permutable = [false; 3];
    for (slot, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
        let ij = product_set(&ns[i].elements, &ns[j].elements, budget)?;
        let ji = product_set(&ns[j].elements, &ns[i].elements, budget)?;
        permutable[slot] = ij == ji;
    }
    let n12: Vec<Perm> = product_set(&ns[0].elements, &ns[1].elements, budget)?
        .into_iter()
        .collect();
    let triple_product = product_set(&n12, &ns[2].elements, budget)?.len();
    let hypothesis =
        nilpotent.iter().all(|&b| b) && permutable.iter().all(|&b| b) && triple_product == g.order();
    let h_g = fitting_length_upper(g)?;
    let (h_pairs, inequality) = if hypothesis {
        let mut hp = [0; 3];
        for (slot, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
            let gens: Vec<Perm> = ns[i].gens.iter().chain(&ns[j].gens).cloned().collect();
            hp[slot] = fitting_length_upper(&g.subgroup(&gens)?)?;
        }
        let rhs = hp.iter().sum::<usize>() as i64 - 2;
        (Some(hp), Some(h_g as i64 <= rhs))
    } else {
        (None, None)
    };
    Ok(Conjecture38Report {
        order: g.order(),
        nilpotent,
        permutable,
        triple_product,
        hypothesis,
        h_g,
        h_pairs,
        inequality,
    })
}
