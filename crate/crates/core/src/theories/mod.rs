//! Equational theories of the free categories.
//!
//! Every equation is stored as an [`AxiomSchema`]: a pair of arrow terms over
//! formula metavariables (capital letters `A`, `B`, ...) and typed holes
//! (`?f[A, B]`) standing for arbitrary arrows of the given type. An instance
//! is obtained by substituting formulae for the metavariables and arrow terms
//! for the holes.
//!
//! (bcw) is included even though some presentations of relevant monoidal
//! categories omit it.

mod catalog;
mod random;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{ArrowTerm, ArrowType, Formula, TypeError};

pub use catalog::{axioms, mid_interchange};
pub use random::{
    random_axiom_instances, random_formula, random_schema_instances, GenerationError,
    InstanceConfig, TermGenerator,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theory {
    SyMon,
    ReMon,
    #[serde(rename = "SMC")]
    Smc,
    #[serde(rename = "RMC")]
    Rmc,
    Additive,
}

impl Theory {
    pub const ALL: [Theory; 5] = [
        Theory::SyMon,
        Theory::ReMon,
        Theory::Smc,
        Theory::Rmc,
        Theory::Additive,
    ];

    /// Has the diagonal `w`.
    pub fn is_relevant(self) -> bool {
        matches!(self, Theory::ReMon | Theory::Rmc | Theory::Additive)
    }

    /// Has `→`, `ε` and `η`.
    pub fn is_closed(self) -> bool {
        matches!(self, Theory::Smc | Theory::Rmc | Theory::Additive)
    }

    pub fn has_additives(self) -> bool {
        self == Theory::Additive
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::SyMon => "SyMon",
            Theory::ReMon => "ReMon",
            Theory::Smc => "SMC",
            Theory::Rmc => "RMC",
            Theory::Additive => "Additive",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Theory, String> {
        Theory::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown theory `{s}` (expected SyMon, ReMon, SMC, RMC or Additive)")
            })
    }
}

/// An equation `f = g` between arrow terms of the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: ArrowTerm,
    pub rhs: ArrowTerm,
    /// Name of the schema this is an instance of, when there is one.
    pub origin: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("sides have different types: {lhs} versus {rhs}")]
    Unbalanced { lhs: ArrowType, rhs: ArrowType },
}

impl Equation {
    pub fn new(lhs: ArrowTerm, rhs: ArrowTerm) -> Result<Equation, EquationError> {
        let lt = lhs.infer_type()?;
        let rt = rhs.infer_type()?;
        if lt != rt {
            return Err(EquationError::Unbalanced { lhs: lt, rhs: rt });
        }
        Ok(Equation {
            lhs,
            rhs,
            origin: None,
        })
    }

    pub fn arrow_type(&self) -> ArrowType {
        self.lhs
            .infer_type()
            .expect("equations are type-checked on construction")
    }

    pub fn letters(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for side in [&self.lhs, &self.rhs] {
            side.for_each_subterm(&mut |t| {
                for a in t.subscripts() {
                    a.collect_letters(&mut out);
                }
            });
        }
        out
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: &'static str,
    /// The theory that introduces this schema.
    pub theory: Theory,
    pub metavariables: Vec<Arc<str>>,
    pub holes: Vec<(Arc<str>, ArrowType)>,
    pub lhs: ArrowTerm,
    pub rhs: ArrowTerm,
}

impl AxiomSchema {
    pub(crate) fn new(
        name: &'static str,
        theory: Theory,
        lhs: ArrowTerm,
        rhs: ArrowTerm,
    ) -> AxiomSchema {
        let mut metas = BTreeSet::new();
        let mut holes: Vec<(Arc<str>, ArrowType)> = Vec::new();
        for side in [&lhs, &rhs] {
            side.for_each_subterm(&mut |t| {
                for a in t.subscripts() {
                    a.collect_letters(&mut metas);
                }
                if let ArrowTerm::Hole(n, ty) = t {
                    match holes.iter().find(|(m, _)| m == n) {
                        Some((_, seen)) => {
                            assert_eq!(seen, &**ty, "hole ?{n} used at two types in {name}")
                        }
                        None => holes.push((n.clone(), (**ty).clone())),
                    }
                }
            });
        }
        AxiomSchema {
            name,
            theory,
            metavariables: metas.into_iter().collect(),
            holes,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// Formulae for metavariables and arrow terms for holes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: BTreeMap<Arc<str>, Formula>,
    pub terms: BTreeMap<Arc<str>, ArrowTerm>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn formula(mut self, meta: &str, a: Formula) -> Substitution {
        self.formulas.insert(Arc::from(meta), a);
        self
    }

    pub fn term(mut self, hole: &str, t: ArrowTerm) -> Substitution {
        self.terms.insert(Arc::from(hole), t);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("no formula given for metavariable {0}")]
    MissingMetavariable(Arc<str>),
    #[error("no arrow term given for hole ?{0}")]
    MissingHole(Arc<str>),
    #[error("hole ?{hole} needs an arrow of type {expected}, got one of type {found}")]
    HoleType {
        hole: Arc<str>,
        expected: ArrowType,
        found: ArrowType,
    },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Equation(#[from] EquationError),
}

pub fn instantiate(
    schema: &AxiomSchema,
    subst: &Substitution,
) -> Result<Equation, InstantiateError> {
    for m in &schema.metavariables {
        if !subst.formulas.contains_key(m) {
            return Err(InstantiateError::MissingMetavariable(m.clone()));
        }
    }
    for (h, ty) in &schema.holes {
        let term = subst
            .terms
            .get(h)
            .ok_or_else(|| InstantiateError::MissingHole(h.clone()))?;
        let expected = ArrowType::new(
            ty.source.substitute(&subst.formulas),
            ty.target.substitute(&subst.formulas),
        );
        let found = term.infer_type()?;
        if found != expected {
            return Err(InstantiateError::HoleType {
                hole: h.clone(),
                expected,
                found,
            });
        }
    }
    let lhs = schema.lhs.substitute(&subst.formulas, &subst.terms);
    let rhs = schema.rhs.substitute(&subst.formulas, &subst.terms);
    let mut eq = Equation::new(lhs, rhs)?;
    eq.origin = Some(schema.name);
    Ok(eq)
}

/// Consequences of `eq` under the congruence rules: composition with each
/// composable context arrow on either side, tensoring with it on either
/// side, and `A → -` for each formula of `prefixes`.
pub fn congruence_consequences(
    eq: &Equation,
    contexts: &[ArrowTerm],
    prefixes: &[Formula],
) -> Vec<Equation> {
    let ty = eq.arrow_type();
    let mut out = Vec::new();
    let wrap = |f: &dyn Fn(&ArrowTerm) -> ArrowTerm| Equation {
        lhs: f(&eq.lhs),
        rhs: f(&eq.rhs),
        origin: eq.origin,
    };
    for h in contexts {
        let Ok(ht) = h.infer_type() else { continue };
        if ht.source == ty.target {
            out.push(wrap(&|s| ArrowTerm::comp(h.clone(), s.clone())));
        }
        if ht.target == ty.source {
            out.push(wrap(&|s| ArrowTerm::comp(s.clone(), h.clone())));
        }
        out.push(wrap(&|s| ArrowTerm::tens(h.clone(), s.clone())));
        out.push(wrap(&|s| ArrowTerm::tens(s.clone(), h.clone())));
    }
    for a in prefixes {
        out.push(wrap(&|s| ArrowTerm::hom(a.clone(), s.clone())));
    }
    out
}

/// JSON form of a schema, with both sides in surface syntax.
#[derive(Clone, Debug, Serialize)]
pub struct SchemaRecord {
    pub name: String,
    pub theory: Theory,
    pub lhs: String,
    pub rhs: String,
}

pub fn catalog_json(theory: Theory) -> serde_json::Value {
    let records: Vec<SchemaRecord> = axioms(theory)
        .into_iter()
        .map(|s| SchemaRecord {
            name: s.name.to_string(),
            theory: s.theory,
            lhs: s.lhs.to_string(),
            rhs: s.rhs.to_string(),
        })
        .collect();
    serde_json::to_value(records).expect("schema records serialize")
}
