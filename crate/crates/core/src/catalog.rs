//! A fixed list of constructed groups used by tests, sweeps and the CLI.

use crate::construct::{build, Config, ConstructedGroup, GroupExpr};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub name: &'static str,
    pub expr: &'static str,
}

impl Entry {
    pub fn parse(&self) -> GroupExpr {
        GroupExpr::parse(self.expr).expect("catalog expressions parse")
    }

    pub fn build(&self) -> Result<ConstructedGroup> {
        build(&self.parse(), &Config::default())
    }
}

const fn e(name: &'static str, expr: &'static str) -> Entry {
    Entry { name, expr }
}

/// Example expressions at ℓ = 1 with p, q, r = 2, 3, 5.
pub const EXAMPLE_3_2A: &str = "W(C(2,1),IT(W(C(3,1),C(5,1)),1))";
pub const EXAMPLE_3_2B: &str = "D(C(2,1),IT(W(C(3,1),C(5,1)),1))";
pub const EXAMPLE_3_3: &str = "W(IT(W(C(2,1),C(3,1)),1),IT(W(C(5,1),C(3,1)),1))";
pub const EXAMPLE_3_4: &str =
    "W(W(IT(W(C(2,1),C(3,1)),1),IT(W(C(5,1),C(2,1)),1)),IT(W(C(3,1),C(5,1)),1))";

/// Three primes, with Sylow 2- and 3-subgroups both in a regular top group
/// C6, so both move every coordinate of the base C5^6. Conjugating one of
/// them by a base element breaks permutability. With the top factors on
/// disjoint blocks (as in `W(C(2,1),D(C(3,1),C(5,1)))`) no conjugate can.
pub const CORRUPTIBLE: &str = "WR(C(5,1),D(C(2,1),C(3,1)))";

/// The catalog, ordered by number of primes. Orders range from 2 to
/// 2^105·3^35·5^7·7; the Example 3.4 group is not included (see
/// [`EXAMPLE_3_4`]).
pub fn catalog() -> Vec<Entry> {
    vec![
        e("c2", "C(2,1)"),
        e("c25", "C(5,2)"),
        e("ea9", "EA(3,2)"),
        e("d8", "W(C(2,1),C(2,1))"),
        e("c6", "D(C(2,1),C(3,1))"),
        e("c2wc3", "W(C(2,1),C(3,1))"),
        e("c3wc2", "W(C(3,1),C(2,1))"),
        e("v4wc3", "W(EA(2,2),C(3,1))"),
        e("c3wc2_it2", "IT(W(C(3,1),C(2,1)),2)"),
        e("c30", "D(C(2,1),D(C(3,1),C(5,1)))"),
        e("c2wc3_x_c5", "D(W(C(2,1),C(3,1)),C(5,1))"),
        e("c2wc15", "W(C(2,1),D(C(3,1),C(5,1)))"),
        e("ex3.2a", EXAMPLE_3_2A),
        e("ex3.2b", EXAMPLE_3_2B),
        e("ex3.3", EXAMPLE_3_3),
        e("c210", "D(D(C(2,1),C(3,1)),D(C(5,1),C(7,1)))"),
        e("c2wc3_x_c35", "D(W(C(2,1),C(3,1)),D(C(5,1),C(7,1)))"),
        e("c2wc3wc5wc7", "W(C(2,1),W(C(3,1),W(C(5,1),C(7,1))))"),
    ]
}

pub fn find(name: &str) -> Option<Entry> {
    catalog().into_iter().find(|e| e.name == name)
}
