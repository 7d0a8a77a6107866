//! Covers of a prime set and the Fitting-length bounds built on them.
//!
//! A t-cover of π is a set of `t ≥ 3` subsets whose pairwise unions are all
//! π; it is degenerate when π itself is a member. Bound values are exact
//! rationals and every comparison is exact.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;

use crate::construct::ConstructedGroup;
use crate::error::{Error, Result};
use crate::hall::{HallProfile, Profiler};
use crate::primes::PrimeSet;
use crate::series;

/// Largest ground set for exhaustive cover enumeration (2^6 subsets).
pub const MAX_ENUM_W: usize = 6;

/// A cover of `ground`. Members form a set, so duplicates collapse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    ground: PrimeSet,
    members: BTreeSet<PrimeSet>,
}

impl Cover {
    /// Collapses duplicates and checks the cover conditions.
    pub fn new<I: IntoIterator<Item = PrimeSet>>(members: I, ground: &PrimeSet) -> Result<Cover> {
        let members: BTreeSet<PrimeSet> = members.into_iter().collect();
        let list: Vec<PrimeSet> = members.iter().cloned().collect();
        if !is_cover(&list, ground).0 {
            return Err(Error::Usage(format!(
                "{} is not a cover of {ground}",
                fmt_members(&list)
            )));
        }
        Ok(Cover {
            ground: ground.clone(),
            members,
        })
    }

    /// R* = {π∖{p} : p ∈ π}, a w-cover when `w ≥ 3`.
    pub fn canonical(ground: &PrimeSet) -> Result<Cover> {
        Cover::new(ground.iter().map(|p| ground.without(p)), ground)
    }

    pub fn t(&self) -> usize {
        self.members.len()
    }

    pub fn ground(&self) -> &PrimeSet {
        &self.ground
    }

    pub fn members(&self) -> impl Iterator<Item = &PrimeSet> {
        self.members.iter()
    }

    pub fn is_degenerate(&self) -> bool {
        self.members.contains(&self.ground)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<PrimeSet> = self.members.iter().cloned().collect();
        f.write_str(&fmt_members(&list))
    }
}

fn fmt_members(list: &[PrimeSet]) -> String {
    let parts: Vec<String> = list.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Whether `subsets` (as a set) is a cover of `pi`, and whether it is
/// degenerate.
pub fn is_cover(subsets: &[PrimeSet], pi: &PrimeSet) -> (bool, bool) {
    let set: BTreeSet<&PrimeSet> = subsets.iter().collect();
    let list: Vec<&PrimeSet> = set.into_iter().collect();
    if list.len() < 3 || !list.iter().all(|s| s.is_subset(pi)) {
        return (false, false);
    }
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            if a.union(b) != *pi {
                return (false, false);
            }
        }
    }
    (true, list.contains(&pi))
}

/// Θ = Σ h(G_ϱ) over the members.
pub fn weight(cover: &Cover, profile: &HallProfile) -> Result<usize> {
    cover.members().map(|s| profile.get(s)).sum()
}

/// Every cover of `pi` of order `t`, in a fixed order. Exhaustive for
/// `|pi| ≤ MAX_ENUM_W`; above that only R* is produced (when `t = |pi|`).
pub fn enumerate_covers(pi: &PrimeSet, t: usize, include_degenerate: bool) -> Vec<Cover> {
    if t < 3 {
        return Vec::new();
    }
    if pi.len() > MAX_ENUM_W {
        return if t == pi.len() {
            Cover::canonical(pi).into_iter().collect()
        } else {
            Vec::new()
        };
    }
    let subsets: Vec<PrimeSet> = pi
        .subsets()
        .into_iter()
        .filter(|s| include_degenerate || s != pi)
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(t);
    extend_cover(&subsets, pi, t, 0, &mut chosen, &mut out);
    out
}

fn extend_cover(
    subsets: &[PrimeSet],
    pi: &PrimeSet,
    t: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Cover>,
) {
    if chosen.len() == t {
        let members = chosen.iter().map(|&i| subsets[i].clone());
        out.push(Cover::new(members, pi).expect("pairwise unions checked"));
        return;
    }
    // Remaining members must fit in the remaining candidates.
    for i in from..=subsets.len().saturating_sub(t - chosen.len()) {
        if chosen.iter().all(|&j| subsets[j].union(&subsets[i]) == *pi) {
            chosen.push(i);
            extend_cover(subsets, pi, t, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// (Θ−2)/(t−2).
pub fn bound_prop31(theta: usize, t: usize) -> Result<Rational64> {
    if t < 3 {
        return Err(Error::Usage(format!("cover order t = {t} is below 3")));
    }
    Ok(Rational64::new(theta as i64 - 2, t as i64 - 2))
}

/// h(G_σ)+h(G_τ)+h(G_υ)−2, or `None` unless the three pairwise unions
/// are all π.
pub fn bound_theorem_a(
    profile: &HallProfile,
    pi: &PrimeSet,
    sigma: &PrimeSet,
    tau: &PrimeSet,
    upsilon: &PrimeSet,
) -> Result<Option<i64>> {
    if sigma.union(tau) != *pi || tau.union(upsilon) != *pi || upsilon.union(sigma) != *pi {
        return Ok(None);
    }
    let sum = profile.get(sigma)? + profile.get(tau)? + profile.get(upsilon)?;
    Ok(Some(sum as i64 - 2))
}

/// The pair chosen for the bound h(G_{p'})+h(G_{q'})−1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremB {
    pub p: u64,
    pub q: u64,
    /// λ = h(G_{p'}) + h(G_{q'}).
    pub lambda: i64,
    pub bound: i64,
}

/// From the values `(p, h(G_{p'}))` for every p in π: the two largest
/// values, ties broken by the smaller prime. `None` when `w < 4`.
pub fn bound_theorem_b(values: &[(u64, usize)]) -> Option<TheoremB> {
    if values.len() < 4 {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let lambda = (v[0].1 + v[1].1) as i64;
    Some(TheoremB {
        p: v[0].0,
        q: v[1].0,
        lambda,
        bound: lambda - 1,
    })
}

/// (ℓ·𝔥_(ℓ−1) − 2)/(ℓ−2), a bound on 𝔥_ℓ.
pub fn bound_theorem_c(frak_prev: usize, ell: usize) -> Result<Rational64> {
    if ell < 3 {
        return Err(Error::Usage(format!("ℓ = {ell} is below 3")));
    }
    Ok(Rational64::new((ell * frak_prev) as i64 - 2, ell as i64 - 2))
}

/// w(w−1)/2 · (𝔥_2 − 1) + 1.
pub fn bound_remark36(frak2: usize, w: usize) -> Result<i64> {
    if w < 3 {
        return Err(Error::Usage(format!("w = {w} is below 3")));
    }
    Ok((w * (w - 1) / 2) as i64 * (frak2 as i64 - 1) + 1)
}

/// s(r+1), where `s` bounds h(G_{p'}) and h(G_{q'}) and `r` bounds
/// h(G_{p,q}).
pub fn bound_prop22(s: usize, r: usize) -> i64 {
    (s * (r + 1)) as i64
}

/// h(A)+h(B)+4d(B)−1 for G = AB with Hall subgroups A and B.
pub fn bound_cjs(h_a: usize, h_b: usize, d_b: usize) -> i64 {
    (h_a + h_b + 4 * d_b) as i64 - 1
}

/// wλ − 4 ≤ 2(w−2)(λ−1).
pub fn lemma_theorem_b(w: i64, lambda: i64) -> bool {
    w * lambda - 4 <= 2 * (w - 2) * (lambda - 1)
}

/// The lemma over `4 ≤ w ≤ 16`, `4 ≤ λ ≤ 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSweep {
    pub checked: usize,
    pub failures: Vec<(i64, i64)>,
}

impl LemmaSweep {
    pub fn run() -> LemmaSweep {
        let mut checked = 0;
        let mut failures = Vec::new();
        for w in 4..=16 {
            for lambda in 4..=64 {
                checked += 1;
                if !lemma_theorem_b(w, lambda) {
                    failures.push((w, lambda));
                }
            }
        }
        LemmaSweep { checked, failures }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The quantity a bound is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounded {
    /// h(G).
    Fitting,
    /// 𝔥_ℓ(G).
    Frak(usize),
}

impl fmt::Display for Bounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Fitting => f.write_str("h"),
            Bounded::Frak(l) => write!(f, "frak_{l}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violation,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Violation => "VIOLATION",
            Status::NotApplicable => "n/a",
        })
    }
}

/// One evaluated bound. `value` is `None` when its hypothesis is unmet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub inputs: String,
    pub bounded: Bounded,
    pub actual: i64,
    pub value: Option<Rational64>,
}

impl BoundEntry {
    pub fn status(&self) -> Status {
        match self.value {
            None => Status::NotApplicable,
            Some(v) if Rational64::from_integer(self.actual) <= v => Status::Pass,
            Some(_) => Status::Violation,
        }
    }

    /// bound − actual.
    pub fn slack(&self) -> Option<Rational64> {
        self.value.map(|v| v - self.actual)
    }

    /// The largest integer not above the bound.
    pub fn floor(&self) -> Option<i64> {
        self.value.map(|v| v.floor().to_integer())
    }
}

/// Which covers and triples [`check_all_with`] evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest cover order enumerated; defaults to `w + 1`.
    pub max_t: Option<usize>,
    /// Extra covers to evaluate besides the enumerated ones.
    pub covers: Vec<Cover>,
    /// Include h(A)+h(B)+4d(B)−1 over complementary Hall pairs.
    pub cjs: bool,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            max_t: None,
            covers: Vec::new(),
            cjs: true,
        }
    }
}

/// h(G), its Hall profile and every applicable bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub group: String,
    pub h_actual: usize,
    pub primes: PrimeSet,
    pub profile: HallProfile,
    pub entries: Vec<BoundEntry>,
    pub lemma: LemmaSweep,
}

impl BoundReport {
    /// No violation among applicable entries and the lemma sweep holds.
    pub fn pass(&self) -> bool {
        self.lemma.pass() && self.violations().next().is_none()
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.status() == Status::Violation)
    }

    pub fn entries_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a BoundEntry> {
        self.entries.iter().filter(move |e| e.name == name)
    }
}

pub const PROP31: &str = "prop3.1";
pub const THEOREM_A: &str = "theoremA";
pub const THEOREM_B: &str = "theoremB";
pub const THEOREM_C: &str = "theoremC";
pub const THEOREM_C_W3: &str = "theoremC.w3";
pub const THEOREM_C_W4: &str = "theoremC.w4";
pub const REMARK36: &str = "remark3.6";
pub const PROP22: &str = "prop2.2";
pub const CJS: &str = "cjs";

/// [`check_all_with`] under default options.
pub fn check_all(g: &ConstructedGroup) -> Result<BoundReport> {
    check_all_with(g, &CheckOptions::default())
}

/// Computes h(G) and the profile over all subsets of π(G), then evaluates
/// every bound. The system attached to `g` must be valid.
pub fn check_all_with(g: &ConstructedGroup, opts: &CheckOptions) -> Result<BoundReport> {
    if !g.system_is_valid() {
        return Err(Error::SylowCorrupt(g.sylow_report().to_string()));
    }
    let pi = g.group().primes().clone();
    let w = pi.len();
    let profiler = Profiler::new(g);
    let all = pi.subsets();
    let profile = profiler.profile(&all)?;
    let h = profile.get(&pi)?;
    let hi = h as i64;
    let mut entries = Vec::new();
    let na = |name, inputs: String, bounded| BoundEntry {
        name,
        inputs,
        bounded,
        actual: hi,
        value: None,
    };

    // Covers of every order, plus R* and anything supplied.
    let max_t = opts.max_t.unwrap_or(w + 1);
    let mut covers: BTreeSet<Cover> = BTreeSet::new();
    for t in 3..=max_t {
        covers.extend(enumerate_covers(&pi, t, true));
    }
    if w >= 3 {
        covers.insert(Cover::canonical(&pi)?);
    }
    for c in &opts.covers {
        if c.ground() != &pi {
            return Err(Error::Usage(format!("cover {c} is not over {pi}")));
        }
        covers.insert(c.clone());
    }
    for c in &covers {
        let theta = weight(c, &profile)?;
        entries.push(BoundEntry {
            name: PROP31,
            inputs: format!("R={c} t={} Θ={theta}", c.t()),
            bounded: Bounded::Fitting,
            actual: hi,
            value: Some(bound_prop31(theta, c.t())?),
        });
    }

    // Theorem A over triples of distinct subsets, the 3-covers its proof
    // runs through. Read with repeats, (∅, π, π) would give 2h−2 < h at h = 1.
    let mut any_a = false;
    for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate().skip(i + 1) {
            for u in all.iter().skip(j + 1) {
                if w > 4 && !is_specialization(&pi, s, t, u) {
                    continue;
                }
                if let Some(v) = bound_theorem_a(&profile, &pi, s, t, u)? {
                    any_a = true;
                    entries.push(BoundEntry {
                        name: THEOREM_A,
                        inputs: format!("σ={s} τ={t} υ={u}"),
                        bounded: Bounded::Fitting,
                        actual: hi,
                        value: Some(Rational64::from_integer(v)),
                    });
                }
            }
        }
    }
    if !any_a {
        entries.push(na(THEOREM_A, "no three distinct subsets with pairwise unions π".into(), Bounded::Fitting));
    }

    // Theorem B.
    let primed: Vec<(u64, usize)> = pi
        .iter()
        .map(|p| Ok((p, profile.get(&pi.without(p))?)))
        .collect::<Result<_>>()?;
    match bound_theorem_b(&primed) {
        Some(b) => entries.push(BoundEntry {
            name: THEOREM_B,
            inputs: format!("p={} q={} λ={}", b.p, b.q, b.lambda),
            bounded: Bounded::Fitting,
            actual: hi,
            value: Some(Rational64::from_integer(b.bound)),
        }),
        None => entries.push(na(THEOREM_B, format!("w={w} < 4"), Bounded::Fitting)),
    }

    // Theorem C, its printed specializations, Remark 3.6.
    let frak = |l: usize| -> usize {
        pi.subsets_of_size(l)
            .iter()
            .map(|s| profile.get(s).expect("profile covers all subsets"))
            .max()
            .unwrap_or(0)
    };
    if w >= 3 {
        for l in 3..=w {
            let prev = frak(l - 1);
            entries.push(BoundEntry {
                name: THEOREM_C,
                inputs: format!("ℓ={l} frak_{}={prev}", l - 1),
                bounded: Bounded::Frak(l),
                actual: frak(l) as i64,
                value: Some(bound_theorem_c(prev, l)?),
            });
        }
        let prev = frak(w - 1);
        if w == 3 {
            entries.push(BoundEntry {
                name: THEOREM_C_W3,
                inputs: format!("3·frak_2−2, frak_2={prev}"),
                bounded: Bounded::Fitting,
                actual: hi,
                value: Some(Rational64::from_integer(3 * prev as i64 - 2)),
            });
        } else {
            entries.push(BoundEntry {
                name: THEOREM_C_W4,
                inputs: format!("2·frak_{}−1, frak_{}={prev}", w - 1, w - 1),
                bounded: Bounded::Fitting,
                actual: hi,
                value: Some(Rational64::from_integer(2 * prev as i64 - 1)),
            });
        }
        let f2 = frak(2);
        entries.push(BoundEntry {
            name: REMARK36,
            inputs: format!("w={w} frak_2={f2}"),
            bounded: Bounded::Fitting,
            actual: hi,
            value: Some(Rational64::from_integer(bound_remark36(f2, w)?)),
        });
    } else {
        for name in [THEOREM_C, REMARK36] {
            entries.push(na(name, format!("w={w} < 3"), Bounded::Fitting));
        }
    }

    // Prop 2.2 over pairs, with the smallest admissible s and r.
    let plist: Vec<u64> = pi.iter().collect();
    for (i, &p) in plist.iter().enumerate() {
        for &q in &plist[i + 1..] {
            let s = profile.get(&pi.without(p))?.max(profile.get(&pi.without(q))?);
            let pq = PrimeSet::new([p, q])?;
            let r = profile.get(&pq)?;
            entries.push(BoundEntry {
                name: PROP22,
                inputs: format!("p={p} q={q} s={s} r={r}"),
                bounded: Bounded::Fitting,
                actual: hi,
                value: Some(Rational64::from_integer(bound_prop22(s, r))),
            });
        }
    }
    if plist.len() < 2 {
        entries.push(na(PROP22, format!("w={w} < 2"), Bounded::Fitting));
    }

    // G = AB over complementary Hall subgroups.
    if opts.cjs {
        for a in &all {
            let b = pi.difference(a);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let d_b = series::derived_length(&crate::hall::hall_subgroup(g, &b)?)?;
            let (h_a, h_b) = (profile.get(a)?, profile.get(&b)?);
            entries.push(BoundEntry {
                name: CJS,
                inputs: format!("A=G_{a} B=G_{b} h(A)={h_a} h(B)={h_b} d(B)={d_b}"),
                bounded: Bounded::Fitting,
                actual: hi,
                value: Some(Rational64::from_integer(bound_cjs(h_a, h_b, d_b))),
            });
        }
    }

    Ok(BoundReport {
        group: g.expr().to_string(),
        h_actual: h,
        primes: pi,
        profile,
        entries,
        lemma: LemmaSweep::run(),
    })
}

/// Whether (σ, τ, υ) is, up to order, (π∖{p}, π∖{q}, {p,q}) for `p ≠ q`.
fn is_specialization(pi: &PrimeSet, s: &PrimeSet, t: &PrimeSet, u: &PrimeSet) -> bool {
    let sets = [s, t, u];
    for k in 0..3 {
        let pair = sets[k];
        if pair.len() != 2 {
            continue;
        }
        let others: Vec<&PrimeSet> = (0..3).filter(|&i| i != k).map(|i| sets[i]).collect();
        let want: BTreeSet<PrimeSet> = pair.iter().map(|p| pi.without(p)).collect();
        let have: BTreeSet<PrimeSet> = others.into_iter().cloned().collect();
        if want == have {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn cover_recognition() {
        let pi = ps(&[2, 3, 5]);
        let tri = [ps(&[2, 3]), ps(&[3, 5]), ps(&[2, 5])];
        assert_eq!(is_cover(&tri, &pi), (true, false));
        assert_eq!(is_cover(&tri[..2], &pi), (false, false));
        let pq = ps(&[2, 3]);
        assert_eq!(is_cover(&[ps(&[2]), ps(&[3]), pq.clone()], &pq), (true, true));
        // Duplicates collapse before counting.
        let dup = [ps(&[2, 3]), ps(&[2, 3]), ps(&[3, 5])];
        assert_eq!(is_cover(&dup, &pi), (false, false));
        assert!(Cover::new(dup, &pi).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let pi = ps(&[2, 3, 5]);
        let nd = enumerate_covers(&pi, 3, false);
        assert_eq!(nd.len(), 1);
        assert_eq!(nd[0], Cover::canonical(&pi).unwrap());
        let pq = ps(&[2, 3]);
        let c = enumerate_covers(&pq, 3, true);
        assert_eq!(c.len(), 1);
        assert!(c[0].is_degenerate());
        assert!(enumerate_covers(&pq, 3, false).is_empty());
        assert!(enumerate_covers(&pi, 4, false).is_empty());
    }

    #[test]
    fn formulas() {
        assert_eq!(bound_prop31(5, 5).unwrap(), Rational64::from_integer(1));
        assert_eq!(bound_prop31(6, 3).unwrap(), Rational64::from_integer(4));
        assert!(bound_prop31(6, 2).is_err());
        assert_eq!(bound_theorem_c(1, 4).unwrap(), Rational64::from_integer(1));
        assert_eq!(bound_theorem_c(2, 4).unwrap(), Rational64::new(3, 1));
        assert!(bound_theorem_c(2, 2).is_err());
        assert_eq!(bound_remark36(1, 5).unwrap(), 1);
        assert_eq!(bound_remark36(2, 3).unwrap(), 4);
        assert_eq!(bound_remark36(4, 3).unwrap(), 10);
        assert!(bound_remark36(4, 2).is_err());
        assert_eq!(bound_prop22(2, 0), 2);
        assert_eq!(bound_prop22(2, 2), 6);
        assert_eq!(bound_cjs(1, 1, 1), 5);
        let b = bound_theorem_b(&[(2, 1), (3, 1), (5, 1), (7, 1)]).unwrap();
        assert_eq!((b.p, b.q, b.bound), (2, 3, 1));
        assert!(bound_theorem_b(&[(2, 1), (3, 1), (5, 1)]).is_none());
        assert!(LemmaSweep::run().pass());
    }

    #[test]
    fn entry_status() {
        let e = BoundEntry {
            name: PROP31,
            inputs: String::new(),
            bounded: Bounded::Fitting,
            actual: 3,
            value: Some(Rational64::new(7, 2)),
        };
        assert_eq!(e.status(), Status::Pass);
        assert_eq!(e.floor(), Some(3));
        assert_eq!(e.slack(), Some(Rational64::new(1, 2)));
        let v = BoundEntry { actual: 4, ..e.clone() };
        assert_eq!(v.status(), Status::Violation);
        let n = BoundEntry { value: None, ..e };
        assert_eq!(n.status(), Status::NotApplicable);
    }
}
