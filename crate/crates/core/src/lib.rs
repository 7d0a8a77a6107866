//! Finite soluble permutation groups.
//!
//! Stabilizer chains over `u16` points, subgroup series and Fitting length,
//! wreath-product constructions carrying a Sylow system, Hall subgroups, and
//! the Fitting-length bounds phrased in terms of Hall subgroups over covers of
//! the prime set. A brute-force oracle cross-checks everything on tiny groups.

pub mod bounds;
pub mod catalog;
pub mod chain;
pub mod claims;
pub mod construct;
pub mod error;
pub mod group;
pub mod hall;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod primes;
pub mod series;
pub mod solvable;

pub use chain::StabChain;
pub use construct::{build, Action, Config, ConstructedGroup, GroupExpr, SylowSystem};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Perm;
pub use primes::PrimeSet;
