//! Workbench for free symmetric monoidal closed and relevant categories.
//!
//! The crate is split along the lines of the mathematics:
//!
//! * [`syntax`]: formulae, arrow terms, the surface grammar and type inference.
//! * [`theories`]: the equational catalogs of SyMon, ReMon, SMC, RMC and the
//!   additive extension, with instantiation and random instance generation.
//! * [`pointedsets`]: the finite pointed-set model (smash product, internal hom,
//!   products and coproducts) and evaluation of arrow terms in it.
//! * [`relcoherence`]: the relational semantics deciding equality in ReMon.
//! * [`isocalc`]: the calculus S, its arithmetic interpretation and the
//!   exploration harness around isomorphism of formulae.
//! * [`cli`]: the `relcat` command-line front end.

pub mod cli;
pub mod isocalc;
pub mod pointedsets;
pub mod relcoherence;
pub mod syntax;
pub mod theories;

pub use isocalc::{arith_equal, arith_eval, normalize_s, s_equal, ArithVerdict, NormalForm};
pub use pointedsets::{
    check_equation, eval_term, interp_formula, PointedMap, PointedSet, Valuation, Verdict,
};
pub use relcoherence::{decide_remon_eq, rel_of, Relation, RemonVerdict};
pub use syntax::{parse_arrow_term, parse_equation, parse_formula, ArrowTerm, ArrowType, Formula};
pub use theories::{axioms, instantiate, AxiomSchema, Equation, Theory};
