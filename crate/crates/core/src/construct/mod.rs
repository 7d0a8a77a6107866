//! Constructions of soluble groups with a Sylow system attached.
//!
//! Leaves are cyclic and elementary abelian p-groups. A wreath product
//! `A ≀ B` on `d` coordinates places coordinate `i` of the base on the
//! points `[i·deg(A), (i+1)·deg(A))`; the top group moves these blocks
//! rigidly. Its Sylow p-subgroup is `A_p^d ⋊ B_p`, generated by copies of
//! the generators of `A_p` at one coordinate per `B_p`-orbit together with
//! `B_p` acting on the blocks.

mod expr;
mod sylow;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use expr::{parse, Action, GroupExpr};
pub use sylow::{verify, OrderCheck, SylowReport, SylowSystem};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, Point, MAX_DEGREE};

/// Limits and defaults shared by constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest permutation degree a construction may produce.
    pub max_degree: usize,
    /// Action used by `IT`.
    pub action: Action,
    /// Largest group order the brute-force oracle will enumerate.
    pub oracle_cap: usize,
    /// Largest `|H|·|K|` the oracle will multiply out.
    pub pair_budget: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            max_degree: 4096,
            action: Action::Natural,
            oracle_cap: 20_000,
            pair_budget: 10_000_000,
        }
    }
}

const REGULAR_HINT: &str = "; the regular action multiplies the degree by the order of the top group, \
     the natural action (W, IT) keeps it small";

/// A permutation group with the expression it was built from and a Sylow
/// system whose validity has been checked by exact orders.
#[derive(Debug, Clone)]
pub struct ConstructedGroup {
    group: PermGroup,
    expr: GroupExpr,
    system: SylowSystem,
    report: SylowReport,
}

impl ConstructedGroup {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn system(&self) -> &SylowSystem {
        &self.system
    }

    /// The verification of the attached system.
    pub fn sylow_report(&self) -> &SylowReport {
        &self.report
    }

    pub fn system_is_valid(&self) -> bool {
        self.report.pass()
    }

    /// The same group with a different system attached, verified again.
    /// The result may carry an invalid system; see
    /// [`ConstructedGroup::system_is_valid`].
    pub fn with_system(&self, system: SylowSystem) -> Result<ConstructedGroup> {
        let report = sylow::verify(&self.group, &system)?;
        Ok(ConstructedGroup {
            group: self.group.clone(),
            expr: self.expr.clone(),
            system,
            report,
        })
    }
}

/// Degree and order of `expr` under `cfg`, without building it. The degree
/// saturates at `u128::MAX`. The order is `None` once some intermediate
/// degree exceeds [`MAX_DEGREE`]: such a group cannot be built, and its
/// order can have more digits than memory holds.
pub fn predicted_size(expr: &GroupExpr, cfg: &Config) -> (u128, Option<BigUint>) {
    match expr {
        GroupExpr::Cyclic { p, k } => {
            let n = BigUint::from(*p).pow(*k);
            (n.to_u128().unwrap_or(u128::MAX), Some(n))
        }
        GroupExpr::ElemAbelian { p, k } => (
            (*p as u128).saturating_mul(*k as u128),
            Some(BigUint::from(*p).pow(*k)),
        ),
        GroupExpr::Direct(a, b) => {
            let (da, oa) = predicted_size(a, cfg);
            let (db, ob) = predicted_size(b, cfg);
            let degree = da.saturating_add(db);
            (degree, bounded(degree, oa.zip(ob).map(|(x, y)| x * y)))
        }
        GroupExpr::Wreath { base, top, action } => {
            let a = predicted_size(base, cfg);
            let b = predicted_size(top, cfg);
            wreath_size(a, b, *action)
        }
        GroupExpr::Iterated { inner, ell, action } => {
            let action = action.unwrap_or(cfg.action);
            let h = predicted_size(inner, cfg);
            let mut cur = h.clone();
            for _ in 1..*ell {
                cur = wreath_size(cur, h.clone(), action);
                if cur.0 == u128::MAX {
                    break;
                }
            }
            cur
        }
    }
}

fn bounded(degree: u128, order: Option<BigUint>) -> Option<BigUint> {
    order.filter(|_| degree <= MAX_DEGREE as u128)
}

fn wreath_size(
    a: (u128, Option<BigUint>),
    b: (u128, Option<BigUint>),
    action: Action,
) -> (u128, Option<BigUint>) {
    let d = match action {
        Action::Natural => b.0,
        Action::Regular => b.1.as_ref().and_then(|o| o.to_u128()).unwrap_or(u128::MAX),
    };
    let degree = a.0.saturating_mul(d);
    let order = match (a.1, b.1) {
        // d ≤ degree ≤ MAX_DEGREE here, so the power stays small.
        (Some(oa), Some(ob)) if degree <= MAX_DEGREE as u128 => Some(oa.pow(d as u32) * ob),
        _ => None,
    };
    (degree, order)
}

fn uses_regular(expr: &GroupExpr, cfg: &Config) -> bool {
    match expr {
        GroupExpr::Cyclic { .. } | GroupExpr::ElemAbelian { .. } => false,
        GroupExpr::Direct(a, b) => uses_regular(a, cfg) || uses_regular(b, cfg),
        GroupExpr::Wreath { base, top, action } => {
            *action == Action::Regular || uses_regular(base, cfg) || uses_regular(top, cfg)
        }
        GroupExpr::Iterated { inner, ell, action } => {
            (*ell > 1 && action.unwrap_or(cfg.action) == Action::Regular) || uses_regular(inner, cfg)
        }
    }
}

fn check_budget(required: u128, cfg: &Config, regular: bool) -> Result<()> {
    let max = cfg.max_degree.min(MAX_DEGREE);
    if required > max as u128 {
        return Err(Error::DegreeBudget {
            required,
            max,
            hint: if regular { REGULAR_HINT } else { "" },
        });
    }
    Ok(())
}

/// Builds the group described by `expr`, checking the degree budget first
/// and verifying the propagated Sylow system afterwards.
pub fn build(expr: &GroupExpr, cfg: &Config) -> Result<ConstructedGroup> {
    expr.validate()?;
    let (degree, _) = predicted_size(expr, cfg);
    check_budget(degree, cfg, uses_regular(expr, cfg))?;
    let raw = raw_build(expr, cfg)?;
    finish(raw, expr.clone())
}

pub fn direct_product(a: &ConstructedGroup, b: &ConstructedGroup, cfg: &Config) -> Result<ConstructedGroup> {
    let ra = Raw::from_constructed(a);
    let rb = Raw::from_constructed(b);
    check_budget((ra.degree + rb.degree) as u128, cfg, false)?;
    finish(
        raw_direct(&ra, &rb),
        GroupExpr::direct(a.expr.clone(), b.expr.clone()),
    )
}

pub fn wreath_product(
    a: &ConstructedGroup,
    b: &ConstructedGroup,
    action: Action,
    cfg: &Config,
) -> Result<ConstructedGroup> {
    let ra = Raw::from_constructed(a);
    let rb = Raw::from_constructed(b);
    let top = TopAction::new(&rb, action, cfg)?;
    check_budget(ra.degree as u128 * top.d as u128, cfg, action == Action::Regular)?;
    finish(
        raw_wreath(&ra, &top),
        GroupExpr::wreath(a.expr.clone(), b.expr.clone(), action),
    )
}

/// `[H]_ell` with the configured action: `[H]_1 = H`,
/// `[H]_(k+1) = [H]_k ≀ H`.
pub fn iterated(h: &ConstructedGroup, ell: u32, cfg: &Config) -> Result<ConstructedGroup> {
    let expr = GroupExpr::iterated(h.expr.clone(), ell);
    expr.validate()?;
    let (degree, _) = predicted_size(&expr, cfg);
    check_budget(degree, cfg, cfg.action == Action::Regular && ell > 1)?;
    let rh = Raw::from_constructed(h);
    finish(raw_iterate(&rh, ell, cfg.action, cfg)?, expr)
}

/// Generators, proven order and Sylow generators of a construction.
#[derive(Clone)]
struct Raw {
    degree: usize,
    gens: Vec<Perm>,
    order: BigUint,
    system: BTreeMap<u64, Vec<Perm>>,
}

impl Raw {
    fn from_constructed(c: &ConstructedGroup) -> Raw {
        Raw {
            degree: c.group.degree(),
            gens: c.group.generators().to_vec(),
            order: c.group.order().clone(),
            system: c.system.as_map().clone(),
        }
    }
}

fn finish(raw: Raw, expr: GroupExpr) -> Result<ConstructedGroup> {
    let group = PermGroup::with_known_order(raw.degree, raw.gens, &raw.order)?;
    let system = SylowSystem::new(raw.system);
    let report = sylow::verify(&group, &system)?;
    if !report.pass() {
        let first = report.failures().next().expect("failing report");
        return Err(Error::SylowCorrupt(format!(
            "propagated system for {expr}: {} has order {}, expected {}",
            first.primes, first.measured, first.expected
        )));
    }
    Ok(ConstructedGroup {
        group,
        expr,
        system,
        report,
    })
}

fn raw_build(expr: &GroupExpr, cfg: &Config) -> Result<Raw> {
    match expr {
        GroupExpr::Cyclic { p, k } => {
            let n = (*p as usize).pow(*k);
            let g = Perm::from_cycles(n, &[(0..n).collect()])?;
            Ok(Raw {
                degree: n,
                gens: vec![g.clone()],
                order: BigUint::from(n),
                system: BTreeMap::from([(*p, vec![g])]),
            })
        }
        GroupExpr::ElemAbelian { p, k } => {
            let p = *p as usize;
            let n = p * *k as usize;
            let gens = (0..*k as usize)
                .map(|i| Perm::from_cycles(n, &[(i * p..(i + 1) * p).collect()]))
                .collect::<Result<Vec<_>>>()?;
            Ok(Raw {
                degree: n,
                order: BigUint::from(p).pow(*k),
                system: BTreeMap::from([(p as u64, gens.clone())]),
                gens,
            })
        }
        GroupExpr::Direct(a, b) => Ok(raw_direct(&raw_build(a, cfg)?, &raw_build(b, cfg)?)),
        GroupExpr::Wreath { base, top, action } => {
            let a = raw_build(base, cfg)?;
            let b = raw_build(top, cfg)?;
            let top = TopAction::new(&b, *action, cfg)?;
            Ok(raw_wreath(&a, &top))
        }
        GroupExpr::Iterated { inner, ell, action } => {
            let h = raw_build(inner, cfg)?;
            raw_iterate(&h, *ell, action.unwrap_or(cfg.action), cfg)
        }
    }
}

fn raw_iterate(h: &Raw, ell: u32, action: Action, cfg: &Config) -> Result<Raw> {
    if ell < 1 {
        return Err(Error::Usage(format!(
            "iteration count must be at least 1, got {ell}"
        )));
    }
    let top = TopAction::new(h, action, cfg)?;
    let mut cur = h.clone();
    for _ in 1..ell {
        cur = raw_wreath(&cur, &top);
    }
    Ok(cur)
}

fn raw_direct(a: &Raw, b: &Raw) -> Raw {
    let n = a.degree + b.degree;
    let mut gens: Vec<Perm> = a.gens.iter().map(|g| g.shifted(0, n)).collect();
    gens.extend(b.gens.iter().map(|g| g.shifted(a.degree, n)));
    let mut system: BTreeMap<u64, Vec<Perm>> = BTreeMap::new();
    for (p, s) in &a.system {
        system.entry(*p).or_default().extend(s.iter().map(|g| g.shifted(0, n)));
    }
    for (p, s) in &b.system {
        system
            .entry(*p)
            .or_default()
            .extend(s.iter().map(|g| g.shifted(a.degree, n)));
    }
    Raw {
        degree: n,
        gens,
        order: &a.order * &b.order,
        system,
    }
}

/// The top group of a wreath product as it acts on the coordinates.
struct TopAction {
    d: usize,
    gens: Vec<Perm>,
    order: BigUint,
    system: BTreeMap<u64, Vec<Perm>>,
}

impl TopAction {
    fn new(b: &Raw, action: Action, cfg: &Config) -> Result<TopAction> {
        match action {
            Action::Natural => Ok(TopAction {
                d: b.degree,
                gens: b.gens.clone(),
                order: b.order.clone(),
                system: b.system.clone(),
            }),
            Action::Regular => {
                let max = cfg.max_degree.min(MAX_DEGREE);
                let n = b.order.to_u128().unwrap_or(u128::MAX);
                check_budget(n, cfg, true)?;
                let reg = Regular::new(b, max)?;
                Ok(TopAction {
                    d: reg.elements.len(),
                    gens: b.gens.iter().map(|g| reg.translation(g)).collect(),
                    order: b.order.clone(),
                    system: b
                        .system
                        .iter()
                        .map(|(p, s)| (*p, s.iter().map(|g| reg.translation(g)).collect()))
                        .collect(),
                })
            }
        }
    }
}

/// The elements of a small group, indexed for its right regular action.
struct Regular {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl Regular {
    fn new(b: &Raw, max: usize) -> Result<Regular> {
        let id = Perm::identity(b.degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut i = 0;
        while i < elements.len() {
            for g in &b.gens {
                let y = elements[i].mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= max {
                        return Err(Error::DegreeBudget {
                            required: b.order.to_u128().unwrap_or(u128::MAX),
                            max,
                            hint: REGULAR_HINT,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        Ok(Regular { elements, index })
    }

    /// `x ↦ x·g` on the indexed elements.
    fn translation(&self, g: &Perm) -> Perm {
        let images: Vec<Point> = self
            .elements
            .iter()
            .map(|x| self.index[&x.mul(g)] as Point)
            .collect();
        Perm::from_raw(images)
    }
}

/// Orbit representatives of `<gens>` on `0..d`, smallest point first.
fn orbit_representatives(d: usize, gens: &[Perm]) -> Vec<usize> {
    let mut seen = vec![false; d];
    let mut reps = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Moves the blocks of size `a` rigidly as `t` moves the coordinates.
fn lift(t: &Perm, a: usize) -> Perm {
    let d = t.degree();
    let mut images: Vec<Point> = Vec::with_capacity(a * d);
    for i in 0..d {
        let base = t.image(i) * a;
        images.extend((0..a).map(|j| (base + j) as Point));
    }
    Perm::from_raw(images)
}

fn raw_wreath(a: &Raw, top: &TopAction) -> Raw {
    let n = a.degree * top.d;
    let mut gens = Vec::new();
    for r in orbit_representatives(top.d, &top.gens) {
        gens.extend(a.gens.iter().map(|g| g.shifted(r * a.degree, n)));
    }
    gens.extend(top.gens.iter().map(|t| lift(t, a.degree)));
    let mut system: BTreeMap<u64, Vec<Perm>> = BTreeMap::new();
    let primes: Vec<u64> = a.system.keys().chain(top.system.keys()).copied().collect();
    for p in primes {
        if system.contains_key(&p) {
            continue;
        }
        let tp: &[Perm] = top.system.get(&p).map_or(&[], Vec::as_slice);
        let mut gp = Vec::new();
        if let Some(ap) = a.system.get(&p) {
            for r in orbit_representatives(top.d, tp) {
                gp.extend(ap.iter().map(|g| g.shifted(r * a.degree, n)));
            }
        }
        gp.extend(tp.iter().map(|t| lift(t, a.degree)));
        system.insert(p, gp);
    }
    let d = u32::try_from(top.d).expect("degree budget bounds d");
    Raw {
        degree: n,
        gens,
        order: a.order.pow(d) * &top.order,
        system,
    }
}
