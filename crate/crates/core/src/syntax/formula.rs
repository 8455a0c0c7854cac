use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Objects of the free categories: formulae over propositional letters.
///
/// Equality is syntactic. `p ∧ (q ∧ r)` and `(p ∧ q) ∧ r` are different
/// formulae; only the b-arrows relate them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Letter(Arc<str>),
    /// Multiplicative unit `⊤`.
    Top,
    /// Additive unit `⊤ₐ`, the zero object of the bicartesian structure.
    AddUnit,
    Conj(Arc<Formula>, Arc<Formula>),
    Impl(Arc<Formula>, Arc<Formula>),
    /// Additive conjunction `⊓` (product).
    Prod(Arc<Formula>, Arc<Formula>),
    /// Additive disjunction `⊔` (coproduct).
    Coprod(Arc<Formula>, Arc<Formula>),
}

/// One occurrence of a letter, numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub letter: Arc<str>,
    pub position: usize,
}

impl Formula {
    pub fn letter(name: &str) -> Formula {
        Formula::Letter(Arc::from(name))
    }

    pub fn conj(a: Formula, b: Formula) -> Formula {
        Formula::Conj(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Arc::new(a), Arc::new(b))
    }

    pub fn prod(a: Formula, b: Formula) -> Formula {
        Formula::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn coprod(a: Formula, b: Formula) -> Formula {
        Formula::Coprod(Arc::new(a), Arc::new(b))
    }

    /// Number of binary connectives.
    pub fn size(&self) -> usize {
        match self {
            Formula::Letter(_) | Formula::Top | Formula::AddUnit => 0,
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Prod(a, b)
            | Formula::Coprod(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn letters(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    pub(crate) fn collect_letters(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Letter(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::AddUnit => {}
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Prod(a, b)
            | Formula::Coprod(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    /// Letter occurrences in left-to-right order. `⊤` contributes none.
    pub fn occurrences(&self) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.push_occurrences(&mut out);
        out
    }

    fn push_occurrences(&self, out: &mut Vec<Occurrence>) {
        match self {
            Formula::Letter(p) => {
                let position = out.len();
                out.push(Occurrence {
                    letter: p.clone(),
                    position,
                });
            }
            Formula::Top | Formula::AddUnit => {}
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Prod(a, b)
            | Formula::Coprod(a, b) => {
                a.push_occurrences(out);
                b.push_occurrences(out);
            }
        }
    }

    pub fn occurrence_count(&self) -> usize {
        match self {
            Formula::Letter(_) => 1,
            Formula::Top | Formula::AddUnit => 0,
            Formula::Conj(a, b)
            | Formula::Impl(a, b)
            | Formula::Prod(a, b)
            | Formula::Coprod(a, b) => a.occurrence_count() + b.occurrence_count(),
        }
    }

    /// True iff no letter occurs more than once.
    pub fn is_diversified(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.occurrences()
            .into_iter()
            .all(|o| seen.insert(o.letter))
    }

    /// Letters, `⊤` and `∧` only.
    pub fn is_monoidal(&self) -> bool {
        match self {
            Formula::Letter(_) | Formula::Top => true,
            Formula::Conj(a, b) => a.is_monoidal() && b.is_monoidal(),
            _ => false,
        }
    }

    /// No additive connective or constant occurs.
    pub fn is_multiplicative(&self) -> bool {
        match self {
            Formula::Letter(_) | Formula::Top => true,
            Formula::Conj(a, b) | Formula::Impl(a, b) => {
                a.is_multiplicative() && b.is_multiplicative()
            }
            Formula::AddUnit | Formula::Prod(..) | Formula::Coprod(..) => false,
        }
    }

    /// Simultaneous substitution of formulae for letters.
    pub fn substitute(&self, map: &BTreeMap<Arc<str>, Formula>) -> Formula {
        match self {
            Formula::Letter(p) => map.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Top | Formula::AddUnit => self.clone(),
            Formula::Conj(a, b) => Formula::conj(a.substitute(map), b.substitute(map)),
            Formula::Impl(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Prod(a, b) => Formula::prod(a.substitute(map), b.substitute(map)),
            Formula::Coprod(a, b) => Formula::coprod(a.substitute(map), b.substitute(map)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Impl(..) => 0,
            Formula::Coprod(..) => 1,
            Formula::Prod(..) => 2,
            Formula::Conj(..) => 3,
            _ => 4,
        }
    }

    /// Writes the formula so that it parses back at precedence `min`. Operands
    /// of binary connectives are bracketed unless atomic, except a right-nested →.
    pub(crate) fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Letter(p) => f.write_str(p)?,
            Formula::Top => f.write_str("⊤")?,
            Formula::AddUnit => f.write_str("⊤ₐ")?,
            Formula::Impl(a, b) => {
                a.fmt_at(f, 4)?;
                f.write_str("→")?;
                b.fmt_at(
                    f,
                    if matches!(**b, Formula::Impl(..)) {
                        0
                    } else {
                        4
                    },
                )?;
            }
            Formula::Coprod(a, b) => {
                a.fmt_at(f, 4)?;
                f.write_str(" ⊔ ")?;
                b.fmt_at(f, 4)?;
            }
            Formula::Prod(a, b) => {
                a.fmt_at(f, 4)?;
                f.write_str(" ⊓ ")?;
                b.fmt_at(f, 4)?;
            }
            Formula::Conj(a, b) => {
                a.fmt_at(f, 4)?;
                f.write_str(" ∧ ")?;
                b.fmt_at(f, 4)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// The type `A ⊢ B` of an arrow term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowType {
    pub source: Formula,
    pub target: Formula,
}

impl ArrowType {
    pub fn new(source: Formula, target: Formula) -> ArrowType {
        ArrowType { source, target }
    }
}

impl fmt::Display for ArrowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊢ {}", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn occurrences_left_to_right() {
        let f = parse_formula("p ∧ (q ∧ p)").unwrap();
        let names: Vec<_> = f
            .occurrences()
            .iter()
            .map(|o| o.letter.to_string())
            .collect();
        assert_eq!(names, ["p", "q", "p"]);
        assert!(Formula::Top.occurrences().is_empty());
        let f = parse_formula("T /\\ p").unwrap();
        assert_eq!(f.occurrences().len(), 1);
    }

    #[test]
    fn diversified_examples() {
        assert!(parse_formula("p ∧ (q → r)").unwrap().is_diversified());
        assert!(!parse_formula("p ∧ p").unwrap().is_diversified());
        assert!(Formula::Top.is_diversified());
        assert!(parse_formula("T /\\ (T -> p)").unwrap().is_diversified());
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let f = parse_formula("(p /\\ q) -> r").unwrap();
        assert_eq!(f.to_string(), "(p ∧ q)→r");
        let f = parse_formula("p -> q /\\ r").unwrap();
        assert_eq!(f.to_string(), "p→(q ∧ r)");
        let f = parse_formula("p -> (q -> r)").unwrap();
        assert_eq!(f.to_string(), "p→q→r");
        let f = parse_formula("(p -> q) -> r").unwrap();
        assert_eq!(f.to_string(), "(p→q)→r");
        let f = parse_formula("p /\\ (p -> q)").unwrap();
        assert_eq!(f.to_string(), "p ∧ (p→q)");
    }
}
