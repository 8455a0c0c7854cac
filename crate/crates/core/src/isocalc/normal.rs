//! Normal forms for the calculus S.
//!
//! A formula of the ∧/⊤/→ fragment normalizes to a multiset of factors. A
//! factor is a letter or an implication `(X₁ ∧ … ∧ Xₖ) → C` whose antecedent
//! is a nonempty multiset of factors and whose body `C` is a normal form that
//! is not itself a single implication. Currying `X → (Y → D) = (Y ∧ X) → D`
//! merges nested implications into one antecedent multiset, and `⊤ → C = C`
//! is the case of an empty antecedent.
//!
//! Normalization is one structural recursion, so it terminates. Each step it
//! takes is an S-equation, and it is invariant under every S axiom applied in
//! any context, so two formulae are S-equal iff their normal forms coincide.

use std::fmt;
use std::sync::Arc;

use crate::syntax::Formula;

use super::IsoError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Letter(Arc<str>),
    Arrow {
        antecedents: Vec<Factor>,
        body: NormalForm,
    },
}

/// Sorted multiset of factors; empty is `⊤`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Vec<Factor>);

impl NormalForm {
    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn merge(mut self, other: NormalForm) -> NormalForm {
        self.0.extend(other.0);
        self.0.sort();
        self
    }

    fn single_arrow(&self) -> Option<(&[Factor], &NormalForm)> {
        match self.0.as_slice() {
            [Factor::Arrow { antecedents, body }] => Some((antecedents, body)),
            _ => None,
        }
    }

    /// `antecedent → body`, curried into canonical shape.
    fn implication(antecedent: NormalForm, body: NormalForm) -> NormalForm {
        let (mut antecedents, body) = match body.single_arrow() {
            Some((inner, inner_body)) => (
                antecedent.merge(NormalForm(inner.to_vec())).0,
                inner_body.clone(),
            ),
            None => (antecedent.0, body),
        };
        if antecedents.is_empty() {
            return body;
        }
        antecedents.sort();
        NormalForm(vec![Factor::Arrow { antecedents, body }])
    }

    /// A formula reading: factors joined right-nested by ∧, `⊤` when empty.
    pub fn to_formula(&self) -> Formula {
        conjoin(self.0.iter().map(Factor::to_formula).collect())
    }
}

impl Factor {
    pub fn to_formula(&self) -> Formula {
        match self {
            Factor::Letter(p) => Formula::Letter(p.clone()),
            Factor::Arrow { antecedents, body } => Formula::implies(
                conjoin(antecedents.iter().map(Factor::to_formula).collect()),
                body.to_formula(),
            ),
        }
    }
}

fn conjoin(mut parts: Vec<Formula>) -> Formula {
    let Some(mut acc) = parts.pop() else {
        return Formula::Top;
    };
    while let Some(next) = parts.pop() {
        acc = Formula::conj(next, acc);
    }
    acc
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

pub fn normalize_s(a: &Formula) -> Result<NormalForm, IsoError> {
    Ok(match a {
        Formula::Letter(p) => NormalForm(vec![Factor::Letter(p.clone())]),
        Formula::Top => NormalForm::default(),
        Formula::Conj(l, r) => normalize_s(l)?.merge(normalize_s(r)?),
        Formula::Impl(l, r) => NormalForm::implication(normalize_s(l)?, normalize_s(r)?),
        Formula::AddUnit | Formula::Prod(..) | Formula::Coprod(..) => {
            return Err(IsoError::NotInFragment(a.to_string()))
        }
    })
}

pub fn s_equal(a: &Formula, b: &Formula) -> Result<bool, IsoError> {
    Ok(normalize_s(a)? == normalize_s(b)?)
}
