use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// How the top group of a wreath product acts on the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Action {
    /// The top group acts on its own points.
    #[default]
    Natural,
    /// The top group acts on itself by right translation.
    Regular,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Natural => "natural",
            Action::Regular => "regular",
        })
    }
}

impl FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Action> {
        match s {
            "natural" => Ok(Action::Natural),
            "regular" => Ok(Action::Regular),
            other => Err(Error::Usage(format!(
                "unknown action {other:?}, expected natural or regular"
            ))),
        }
    }
}

/// A group built from cyclic and elementary abelian p-groups by direct
/// products, wreath products and iterated wreath powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    /// Cyclic of order `p^k` on `p^k` points.
    Cyclic { p: u64, k: u32 },
    /// `k` copies of `C_p`, on `k·p` points.
    ElemAbelian { p: u64, k: u32 },
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    Wreath {
        base: Box<GroupExpr>,
        top: Box<GroupExpr>,
        action: Action,
    },
    /// `[H]_ell`, left nested. `None` uses the configured action.
    Iterated {
        inner: Box<GroupExpr>,
        ell: u32,
        action: Option<Action>,
    },
}

impl GroupExpr {
    pub fn cyclic(p: u64, k: u32) -> GroupExpr {
        GroupExpr::Cyclic { p, k }
    }

    pub fn elem_abelian(p: u64, k: u32) -> GroupExpr {
        GroupExpr::ElemAbelian { p, k }
    }

    pub fn direct(a: GroupExpr, b: GroupExpr) -> GroupExpr {
        GroupExpr::Direct(Box::new(a), Box::new(b))
    }

    pub fn wreath(base: GroupExpr, top: GroupExpr, action: Action) -> GroupExpr {
        GroupExpr::Wreath {
            base: Box::new(base),
            top: Box::new(top),
            action,
        }
    }

    pub fn iterated(inner: GroupExpr, ell: u32) -> GroupExpr {
        GroupExpr::Iterated {
            inner: Box::new(inner),
            ell,
            action: None,
        }
    }

    /// Parses the expression language; see [`parse`].
    pub fn parse(text: &str) -> Result<GroupExpr> {
        parse(text)
    }

    /// Checks primes, exponents and iteration counts.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupExpr::Cyclic { p, k } | GroupExpr::ElemAbelian { p, k } => {
                if !is_prime(*p) {
                    return Err(Error::Usage(format!("{p} is not a prime")));
                }
                if *k < 1 {
                    return Err(Error::Usage(format!("exponent must be at least 1 in {self}")));
                }
                Ok(())
            }
            GroupExpr::Direct(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupExpr::Wreath { base, top, .. } => {
                base.validate()?;
                top.validate()
            }
            GroupExpr::Iterated { inner, ell, .. } => {
                if *ell < 1 {
                    return Err(Error::Usage(format!(
                        "iteration count must be at least 1, got {ell}"
                    )));
                }
                inner.validate()
            }
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupExpr> {
        parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic { p, k } => write!(f, "C({p},{k})"),
            GroupExpr::ElemAbelian { p, k } => write!(f, "EA({p},{k})"),
            GroupExpr::Direct(a, b) => write!(f, "D({a},{b})"),
            GroupExpr::Wreath {
                base,
                top,
                action: Action::Natural,
            } => write!(f, "W({base},{top})"),
            GroupExpr::Wreath {
                base,
                top,
                action: Action::Regular,
            } => write!(f, "WR({base},{top})"),
            GroupExpr::Iterated { inner, ell, action } => {
                let name = match action {
                    None => "IT",
                    Some(Action::Natural) => "ITN",
                    Some(Action::Regular) => "ITR",
                };
                write!(f, "{name}({inner},{ell})")
            }
        }
    }
}

/// Parses expressions such as `W(C(2,1), IT(W(C(3,1),C(5,1)),2))`.
///
/// Grammar: `C(p,k)`, `EA(p,k)`, `D(x,y)`, `W(x,y)` (natural action),
/// `WR(x,y)` (regular action), `IT(x,l)` (configured action), and `ITN` /
/// `ITR` to force natural / regular iteration. Whitespace is ignored.
/// Positions in errors are 0-based byte offsets.
pub fn parse(text: &str) -> Result<GroupExpr> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    e.validate()?;
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constructor name"));
        }
        let s: &'a [u8] = self.s;
        let name = std::str::from_utf8(&s[start..self.pos]).expect("ascii");
        Ok((start, name))
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "number too large".into(),
        })
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.number()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: start,
            msg: "number too large".into(),
        })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let (start, name) = self.ident()?;
        let e = match name {
            "C" | "EA" => {
                self.expect(b'(')?;
                let p = self.number()?;
                self.expect(b',')?;
                let k = self.small()?;
                self.expect(b')')?;
                if name == "C" {
                    GroupExpr::Cyclic { p, k }
                } else {
                    GroupExpr::ElemAbelian { p, k }
                }
            }
            "D" | "W" | "WR" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                match name {
                    "D" => GroupExpr::direct(a, b),
                    "W" => GroupExpr::wreath(a, b, Action::Natural),
                    _ => GroupExpr::wreath(a, b, Action::Regular),
                }
            }
            "IT" | "ITN" | "ITR" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b',')?;
                let ell = self.small()?;
                self.expect(b')')?;
                let action = match name {
                    "IT" => None,
                    "ITN" => Some(Action::Natural),
                    _ => Some(Action::Regular),
                };
                GroupExpr::Iterated {
                    inner: Box::new(inner),
                    ell,
                    action,
                }
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown constructor {other:?}"),
                })
            }
        };
        Ok(e)
    }
}
