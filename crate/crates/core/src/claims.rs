//! Printed values for the example families, as functions of ℓ, with
//! p, q, r, s = 2, 3, 5, 7 and every p-group taken cyclic of order p.
//!
//! Group-level runs are feasible only at ℓ = 1. For every ℓ the printed
//! values can still be checked against each other and against the bound
//! formulas, which is what [`arithmetic`] does.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::primes::PrimeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExampleId {
    /// P ≀ [Q ≀ R]_ℓ.
    E32a,
    /// P × [Q ≀ R]_ℓ.
    E32b,
    /// [P ≀ Q]_ℓ ≀ [R ≀ Q]_ℓ.
    E33,
    /// [P ≀ Q]_ℓ ≀ [R ≀ P]_ℓ ≀ [Q ≀ R]_ℓ, left-associated.
    E34,
    /// Six iterated factors over four primes; arithmetic only.
    E35,
}

impl ExampleId {
    pub const ALL: [ExampleId; 5] = [
        ExampleId::E32a,
        ExampleId::E32b,
        ExampleId::E33,
        ExampleId::E34,
        ExampleId::E35,
    ];
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleId::E32a => "3.2a",
            ExampleId::E32b => "3.2b",
            ExampleId::E33 => "3.3",
            ExampleId::E34 => "3.4",
            ExampleId::E35 => "3.5-arith",
        })
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExampleId> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.to_string() == s || (s == "3.5" && *id == ExampleId::E35))
            .ok_or_else(|| Error::Usage(format!("unknown example {s:?}; expected 3.2a, 3.2b, 3.3, 3.4 or 3.5-arith")))
    }
}

const P: u64 = 2;
const Q: u64 = 3;
const R: u64 = 5;
const S: u64 = 7;

fn wr(a: u64, b: u64) -> String {
    format!("W(C({a},1),C({b},1))")
}

fn it(inner: &str, ell: u32) -> String {
    format!("IT({inner},{ell})")
}

/// The group expression, or `None` for the arithmetic-only family.
pub fn expression(id: ExampleId, ell: u32) -> Option<String> {
    match id {
        ExampleId::E32a => Some(format!("W(C({P},1),{})", it(&wr(Q, R), ell))),
        ExampleId::E32b => Some(format!("D(C({P},1),{})", it(&wr(Q, R), ell))),
        ExampleId::E33 => Some(format!("W({},{})", it(&wr(P, Q), ell), it(&wr(R, Q), ell))),
        ExampleId::E34 => Some(format!(
            "W(W({},{}),{})",
            it(&wr(P, Q), ell),
            it(&wr(R, P), ell),
            it(&wr(Q, R), ell)
        )),
        ExampleId::E35 => None,
    }
}

/// Whether a group-level run is within desk scale.
pub fn group_level_feasible(id: ExampleId, ell: u32) -> bool {
    ell == 1 && id != ExampleId::E35
}

/// A printed quantity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Quantity {
    /// h(G).
    H,
    /// h(G_σ).
    Hall(PrimeSet),
    /// Θ − 2 for the cover {{p,q},{q,r},{r,p}}.
    ThetaMinus2,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::H => f.write_str("h(G)"),
            Quantity::Hall(s) => write!(f, "h(G_{s})"),
            Quantity::ThetaMinus2 => f.write_str("Θ-2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub quantity: Quantity,
    /// The formula as printed, in ℓ.
    pub formula: &'static str,
    pub value: i64,
}

fn primed(p: u64, primes: &[u64]) -> PrimeSet {
    PrimeSet::new(primes.iter().copied().filter(|&x| x != p)).expect("primes")
}

fn pair(a: u64, b: u64) -> PrimeSet {
    PrimeSet::new([a, b]).expect("primes")
}

fn claim(quantity: Quantity, formula: &'static str, value: i64) -> Claim {
    Claim {
        quantity,
        formula,
        value,
    }
}

/// The printed values at `ell`.
pub fn claims(id: ExampleId, ell: u32) -> Vec<Claim> {
    let l = ell as i64;
    let pqr = [P, Q, R];
    let hall = |p| Quantity::Hall(primed(p, &pqr));
    match id {
        ExampleId::E32a => vec![
            claim(Quantity::H, "2ℓ+1", 2 * l + 1),
            claim(hall(R), "2", 2),
            claim(hall(Q), "2", 2),
            claim(hall(P), "2ℓ", 2 * l),
            claim(Quantity::ThetaMinus2, "2ℓ+2", 2 * l + 2),
        ],
        ExampleId::E32b => vec![
            claim(Quantity::H, "2ℓ", 2 * l),
            claim(hall(R), "1", 1),
            claim(hall(Q), "1", 1),
            claim(hall(P), "2ℓ", 2 * l),
            claim(Quantity::ThetaMinus2, "2ℓ", 2 * l),
        ],
        ExampleId::E33 => vec![
            claim(Quantity::H, "4ℓ", 4 * l),
            claim(hall(R), "2ℓ", 2 * l),
            claim(hall(P), "2ℓ+1", 2 * l + 1),
            claim(hall(Q), "2", 2),
            claim(Quantity::ThetaMinus2, "4ℓ+1", 4 * l + 1),
        ],
        ExampleId::E34 => vec![
            claim(Quantity::H, "6ℓ", 6 * l),
            claim(hall(P), "2ℓ+2", 2 * l + 2),
            claim(hall(Q), "2ℓ+2", 2 * l + 2),
            claim(hall(R), "2ℓ+2", 2 * l + 2),
        ],
        ExampleId::E35 => {
            let pqrs = [P, Q, R, S];
            vec![
                claim(Quantity::H, "12ℓ", 12 * l),
                claim(Quantity::Hall(primed(P, &pqrs)), "4ℓ+3", 4 * l + 3),
                claim(Quantity::Hall(primed(Q, &pqrs)), "4ℓ+2", 4 * l + 2),
                claim(Quantity::Hall(pair(P, Q)), "4ℓ+2", 4 * l + 2),
            ]
        }
    }
}

/// One arithmetic statement about printed values. `expected` is whether
/// the statement is supposed to hold; the check passes when it matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithCheck {
    pub name: String,
    pub lhs: i64,
    pub relation: &'static str,
    pub rhs: i64,
    pub holds: bool,
    pub expected: bool,
}

impl ArithCheck {
    pub fn pass(&self) -> bool {
        self.holds == self.expected
    }
}

fn le(name: impl Into<String>, lhs: i64, rhs: i64) -> ArithCheck {
    ArithCheck {
        name: name.into(),
        lhs,
        relation: "<=",
        rhs,
        holds: lhs <= rhs,
        expected: true,
    }
}

fn eq(name: impl Into<String>, lhs: i64, rhs: i64) -> ArithCheck {
    ArithCheck {
        name: name.into(),
        lhs,
        relation: "=",
        rhs,
        holds: lhs == rhs,
        expected: true,
    }
}

fn value(cs: &[Claim], q: &Quantity) -> i64 {
    cs.iter().find(|c| &c.quantity == q).map(|c| c.value).expect("claimed")
}

/// Consistency of the printed values with each other and with every bound
/// that applies to them.
pub fn arithmetic(id: ExampleId, ell: u32) -> Vec<ArithCheck> {
    let cs = claims(id, ell);
    let l = ell as i64;
    let h = value(&cs, &Quantity::H);
    let mut out = Vec::new();
    if id == ExampleId::E35 {
        let pqrs = [P, Q, R, S];
        let hp = value(&cs, &Quantity::Hall(primed(P, &pqrs)));
        let hq = value(&cs, &Quantity::Hall(primed(Q, &pqrs)));
        let hpq = value(&cs, &Quantity::Hall(pair(P, Q)));
        out.push(eq("h(G_p')+h(G_q')+h(G_{p,q})-2 = 12ℓ+5", hp + hq + hpq - 2, 12 * l + 5));
        out.push(le("theoremA: h <= 12ℓ+5", h, hp + hq + hpq - 2));
        // (Θ(R*)−2)/2 = 12ℓ+2 fixes h(G_r')+h(G_s').
        let rest = 2 * (12 * l + 2) + 2 - hp - hq;
        out.push(eq("implied h(G_r')+h(G_s') = 16ℓ+1", rest, 16 * l + 1));
        out.push(le("prop3.1 with R*: h <= 12ℓ+2", h, 12 * l + 2));
        // max(h(G_r'), h(G_s')) is at least half their sum, so the top two
        // of all four values sum to at least the top two of these three.
        let mut lower = [hp, hq, (rest + 1) / 2];
        lower.sort_unstable_by(|a, b| b.cmp(a));
        out.push(le("theoremB: h <= λ-1 for the top two", h, lower[0] + lower[1] - 1));
        return out;
    }
    let pqr = [P, Q, R];
    let halls: Vec<i64> = pqr
        .iter()
        .map(|&p| value(&cs, &Quantity::Hall(primed(p, &pqr))))
        .collect();
    let theta2 = halls.iter().sum::<i64>() - 2;
    if let Some(c) = cs.iter().find(|c| c.quantity == Quantity::ThetaMinus2) {
        out.push(eq(format!("Θ-2 = {}", c.formula), theta2, c.value));
    }
    out.push(le("prop3.1 triangle: h <= Θ-2", h, theta2));
    let frak2 = *halls.iter().max().expect("three values");
    out.push(le("theoremC.w3: h <= 3·frak_2-2", h, 3 * frak2 - 2));
    out.push(le("remark3.6: h <= 3·(frak_2-1)+1", h, 3 * (frak2 - 1) + 1));
    if id == ExampleId::E34 {
        // The four-prime bound h <= h(G_p')+h(G_q')-1 with w = 3: fails
        // exactly from ℓ = 2 on.
        let mut b = le("theoremB form at w=3: 6ℓ <= 2(2ℓ+2)-1", h, halls[0] + halls[1] - 1);
        b.expected = ell < 2;
        out.push(b);
    }
    out
}
