//! Finite pointed sets and point-preserving maps: the model `Set_*` at finite
//! scale, evaluation of arrow terms in it, and the passage to partial functions.

mod check;
mod eval;
mod map;
mod naturality;
mod set;

use thiserror::Error;

use crate::syntax::TypeError;

pub use check::{
    check_equation, check_maps, check_terms, default_valuations, valuations_over, Counterexample,
    Verdict, DEFAULT_VALUATION_LIMIT,
};
pub use eval::{eval_term, interp_formula, EvalConfig, Evaluator, Valuation};
pub use map::{all_maps, from_partial, map_equal, to_partial, PartialFn, PointedMap};
pub use naturality::{naturality_failure_witness, smash_projection, NaturalityWitness, Side};
pub use set::{coproduct, internal_hom, iso_check, product, smash, InternalHom, PointedSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("letter `{0}` has no value in the valuation")]
    UnboundLetter(String),
    #[error("size of {0} does not fit in a machine word")]
    Overflow(String),
    #[error("{formula} has {size} elements, over the evaluation budget of {budget}")]
    TooLarge {
        formula: String,
        size: usize,
        budget: usize,
    },
    #[error("letter `{letter}` is assigned a set of size {size}, over the cap of {cap}")]
    SizeCap {
        letter: String,
        size: usize,
        cap: usize,
    },
    #[error("cannot evaluate the hole `{0}`")]
    Hole(String),
    #[error("maps have different domains or codomains")]
    ShapeMismatch,
    #[error("a pointed set needs at least the point")]
    EmptySet,
    #[error("map does not send the point to the point")]
    PointNotPreserved,
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("invalid valuation: {0}")]
    Valuation(String),
}
