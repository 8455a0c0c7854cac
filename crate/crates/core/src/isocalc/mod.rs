//! The calculus S, its arithmetic interpretation and an exploration harness
//! comparing the two.

mod arith;
mod normal;
mod scan;
mod search;

use thiserror::Error;

pub use arith::{
    arith_equal, arith_eval, arith_value, assignments, format_assignment, parse_assignment,
    ArithValue, ArithVerdict, Assignment, CAP_BITS,
};
pub use normal::{normalize_s, s_equal, Factor, NormalForm};
pub use scan::{conjecture_scan, enumerate_formulae, PairCounts, ScanConfig, ScanPair, ScanReport};
pub use search::{bounded_iso_search, MAX_ISO_DEPTH};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("{0} is outside the ∧/⊤/→ fragment")]
    NotInFragment(String),
    #[error("letter `{0}` has no value in the assignment")]
    UnboundLetter(String),
    #[error("the value of {0} is at least 2^{CAP_BITS} and is only known modulo a few primes")]
    TooLarge(String),
    #[error("invalid assignment item `{0}` (expected `letter=natural`)")]
    Assignment(String),
    #[error("search depth {depth} is over the cap of {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("cannot start worker pool: {0}")]
    Workers(String),
}
