use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::formula::{ArrowType, Formula};

/// Arrow terms of the free categories, plus the additive structure arrows
/// and typed holes used as term metavariables in axiom schemata.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowTerm {
    /// `1_A : A ⊢ A`
    Id(Formula),
    /// `b→_{A,B,C} : A ∧ (B ∧ C) ⊢ (A ∧ B) ∧ C`
    BAssocR(Formula, Formula, Formula),
    /// `b←_{A,B,C} : (A ∧ B) ∧ C ⊢ A ∧ (B ∧ C)`
    BAssocL(Formula, Formula, Formula),
    /// `c_{A,B} : A ∧ B ⊢ B ∧ A`
    CSym(Formula, Formula),
    /// `d→_A : A ∧ ⊤ ⊢ A`
    DUnitR(Formula),
    /// `d←_A : A ⊢ A ∧ ⊤`
    DUnitL(Formula),
    /// `w_A : A ⊢ A ∧ A`
    WDiag(Formula),
    /// `ε_{A,B} : A ∧ (A → B) ⊢ B`
    Eps(Formula, Formula),
    /// `η_{A,B} : B ⊢ A → (A ∧ B)`
    Eta(Formula, Formula),
    /// `f ∘ g`
    Comp(Arc<ArrowTerm>, Arc<ArrowTerm>),
    /// `f ∧ g`
    Tens(Arc<ArrowTerm>, Arc<ArrowTerm>),
    /// `A → f`
    HomFun(Formula, Arc<ArrowTerm>),
    Proj1(Formula, Formula),
    Proj2(Formula, Formula),
    Pair(Arc<ArrowTerm>, Arc<ArrowTerm>),
    Inj1(Formula, Formula),
    Inj2(Formula, Formula),
    Copair(Arc<ArrowTerm>, Arc<ArrowTerm>),
    /// `A ⊢ ⊤ₐ`
    ToTerminal(Formula),
    /// `⊤ₐ ⊢ A`
    FromInitial(Formula),
    /// A named arrow variable of fixed type; only appears in schemata.
    Hole(Arc<str>, Box<ArrowType>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("composition mismatch: outer arrow has source {outer_source} but inner arrow has target {inner_target}")]
    Composition {
        outer_source: Formula,
        inner_target: Formula,
    },
    #[error("pairing mismatch: components have sources {left} and {right}")]
    Pairing { left: Formula, right: Formula },
    #[error("copairing mismatch: components have targets {left} and {right}")]
    Copairing { left: Formula, right: Formula },
}

impl ArrowTerm {
    pub fn comp(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Comp(Arc::new(f), Arc::new(g))
    }

    pub fn tens(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Tens(Arc::new(f), Arc::new(g))
    }

    pub fn hom(a: Formula, f: ArrowTerm) -> ArrowTerm {
        ArrowTerm::HomFun(a, Arc::new(f))
    }

    pub fn pair(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Pair(Arc::new(f), Arc::new(g))
    }

    pub fn copair(f: ArrowTerm, g: ArrowTerm) -> ArrowTerm {
        ArrowTerm::Copair(Arc::new(f), Arc::new(g))
    }

    pub fn hole(name: &str, ty: ArrowType) -> ArrowTerm {
        ArrowTerm::Hole(Arc::from(name), Box::new(ty))
    }

    /// Composes a non-empty sequence right to left: `[f, g, h]` gives `f ∘ (g ∘ h)`.
    pub fn compose_all(mut terms: Vec<ArrowTerm>) -> ArrowTerm {
        let mut acc = terms.pop().expect("compose_all needs at least one arrow");
        while let Some(t) = terms.pop() {
            acc = ArrowTerm::comp(t, acc);
        }
        acc
    }

    /// Infers the unique type of the term.
    pub fn infer_type(&self) -> Result<ArrowType, TypeError> {
        use ArrowTerm::*;
        use Formula as F;
        let ty = |s, t| Ok(ArrowType::new(s, t));
        match self {
            Id(a) => ty(a.clone(), a.clone()),
            BAssocR(a, b, c) => ty(
                F::conj(a.clone(), F::conj(b.clone(), c.clone())),
                F::conj(F::conj(a.clone(), b.clone()), c.clone()),
            ),
            BAssocL(a, b, c) => ty(
                F::conj(F::conj(a.clone(), b.clone()), c.clone()),
                F::conj(a.clone(), F::conj(b.clone(), c.clone())),
            ),
            CSym(a, b) => ty(F::conj(a.clone(), b.clone()), F::conj(b.clone(), a.clone())),
            DUnitR(a) => ty(F::conj(a.clone(), F::Top), a.clone()),
            DUnitL(a) => ty(a.clone(), F::conj(a.clone(), F::Top)),
            WDiag(a) => ty(a.clone(), F::conj(a.clone(), a.clone())),
            Eps(a, b) => ty(
                F::conj(a.clone(), F::implies(a.clone(), b.clone())),
                b.clone(),
            ),
            Eta(a, b) => ty(
                b.clone(),
                F::implies(a.clone(), F::conj(a.clone(), b.clone())),
            ),
            Comp(f, g) => {
                let tf = f.infer_type()?;
                let tg = g.infer_type()?;
                if tf.source != tg.target {
                    return Err(TypeError::Composition {
                        outer_source: tf.source,
                        inner_target: tg.target,
                    });
                }
                ty(tg.source, tf.target)
            }
            Tens(f, g) => {
                let tf = f.infer_type()?;
                let tg = g.infer_type()?;
                ty(F::conj(tf.source, tg.source), F::conj(tf.target, tg.target))
            }
            HomFun(a, f) => {
                let tf = f.infer_type()?;
                ty(
                    F::implies(a.clone(), tf.source),
                    F::implies(a.clone(), tf.target),
                )
            }
            Proj1(a, b) => ty(F::prod(a.clone(), b.clone()), a.clone()),
            Proj2(a, b) => ty(F::prod(a.clone(), b.clone()), b.clone()),
            Pair(f, g) => {
                let tf = f.infer_type()?;
                let tg = g.infer_type()?;
                if tf.source != tg.source {
                    return Err(TypeError::Pairing {
                        left: tf.source,
                        right: tg.source,
                    });
                }
                ty(tf.source, F::prod(tf.target, tg.target))
            }
            Inj1(a, b) => ty(a.clone(), F::coprod(a.clone(), b.clone())),
            Inj2(a, b) => ty(b.clone(), F::coprod(a.clone(), b.clone())),
            Copair(f, g) => {
                let tf = f.infer_type()?;
                let tg = g.infer_type()?;
                if tf.target != tg.target {
                    return Err(TypeError::Copairing {
                        left: tf.target,
                        right: tg.target,
                    });
                }
                ty(F::coprod(tf.source, tg.source), tf.target)
            }
            ToTerminal(a) => ty(a.clone(), F::AddUnit),
            FromInitial(a) => ty(F::AddUnit, a.clone()),
            Hole(_, t) => Ok((**t).clone()),
        }
    }

    /// Calls `visit` on every subterm, this one included, outermost first.
    pub fn for_each_subterm<'a>(&'a self, visit: &mut dyn FnMut(&'a ArrowTerm)) {
        visit(self);
        match self {
            ArrowTerm::Comp(f, g)
            | ArrowTerm::Tens(f, g)
            | ArrowTerm::Pair(f, g)
            | ArrowTerm::Copair(f, g) => {
                f.for_each_subterm(visit);
                g.for_each_subterm(visit);
            }
            ArrowTerm::HomFun(_, f) => f.for_each_subterm(visit),
            _ => {}
        }
    }

    /// Formulae written as subscripts of primitives (and hole types).
    pub fn subscripts(&self) -> Vec<&Formula> {
        use ArrowTerm::*;
        match self {
            Id(a)
            | DUnitR(a)
            | DUnitL(a)
            | WDiag(a)
            | ToTerminal(a)
            | FromInitial(a)
            | HomFun(a, _) => vec![a],
            BAssocR(a, b, c) | BAssocL(a, b, c) => vec![a, b, c],
            CSym(a, b)
            | Eps(a, b)
            | Eta(a, b)
            | Proj1(a, b)
            | Proj2(a, b)
            | Inj1(a, b)
            | Inj2(a, b) => vec![a, b],
            Hole(_, t) => vec![&t.source, &t.target],
            Comp(..) | Tens(..) | Pair(..) | Copair(..) => vec![],
        }
    }

    /// The primitive name used by the surface syntax, if this is a primitive.
    pub fn primitive_name(&self) -> Option<&'static str> {
        use ArrowTerm::*;
        Some(match self {
            Id(_) => "id",
            BAssocR(..) => "bR",
            BAssocL(..) => "bL",
            CSym(..) => "c",
            DUnitR(_) => "dR",
            DUnitL(_) => "dL",
            WDiag(_) => "w",
            Eps(..) => "eps",
            Eta(..) => "eta",
            Proj1(..) => "p1",
            Proj2(..) => "p2",
            Inj1(..) => "i1",
            Inj2(..) => "i2",
            ToTerminal(_) => "term",
            FromInitial(_) => "init",
            _ => return None,
        })
    }

    /// Substitutes formulae for letters everywhere and arrow terms for holes.
    /// Holes not in `holes` are kept, with their types substituted.
    pub fn substitute(
        &self,
        formulas: &BTreeMap<Arc<str>, Formula>,
        holes: &BTreeMap<Arc<str>, ArrowTerm>,
    ) -> ArrowTerm {
        use ArrowTerm::*;
        let s = |a: &Formula| a.substitute(formulas);
        let t = |f: &Arc<ArrowTerm>| Arc::new(f.substitute(formulas, holes));
        match self {
            Id(a) => Id(s(a)),
            BAssocR(a, b, c) => BAssocR(s(a), s(b), s(c)),
            BAssocL(a, b, c) => BAssocL(s(a), s(b), s(c)),
            CSym(a, b) => CSym(s(a), s(b)),
            DUnitR(a) => DUnitR(s(a)),
            DUnitL(a) => DUnitL(s(a)),
            WDiag(a) => WDiag(s(a)),
            Eps(a, b) => Eps(s(a), s(b)),
            Eta(a, b) => Eta(s(a), s(b)),
            Comp(f, g) => Comp(t(f), t(g)),
            Tens(f, g) => Tens(t(f), t(g)),
            HomFun(a, f) => HomFun(s(a), t(f)),
            Proj1(a, b) => Proj1(s(a), s(b)),
            Proj2(a, b) => Proj2(s(a), s(b)),
            Pair(f, g) => Pair(t(f), t(g)),
            Inj1(a, b) => Inj1(s(a), s(b)),
            Inj2(a, b) => Inj2(s(a), s(b)),
            Copair(f, g) => Copair(t(f), t(g)),
            ToTerminal(a) => ToTerminal(s(a)),
            FromInitial(a) => FromInitial(s(a)),
            Hole(name, ty) => match holes.get(name) {
                Some(term) => term.clone(),
                None => Hole(
                    name.clone(),
                    Box::new(ArrowType::new(s(&ty.source), s(&ty.target))),
                ),
            },
        }
    }

    pub fn has_holes(&self) -> bool {
        let mut found = false;
        self.for_each_subterm(&mut |t| found |= matches!(t, ArrowTerm::Hole(..)));
        found
    }

    fn precedence(&self) -> u8 {
        match self {
            ArrowTerm::Comp(..) => 0,
            ArrowTerm::Tens(..) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            ArrowTerm::Comp(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" ∘ ")?;
                b.fmt_at(f, 1)?;
            }
            ArrowTerm::Tens(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" ∧ ")?;
                b.fmt_at(f, 2)?;
            }
            ArrowTerm::HomFun(a, g) => {
                f.write_str("(")?;
                a.fmt_at(f, 1)?;
                f.write_str(" → ")?;
                g.fmt_at(f, 0)?;
                f.write_str(")")?;
            }
            ArrowTerm::Pair(a, b) | ArrowTerm::Copair(a, b) => {
                let name = if matches!(self, ArrowTerm::Pair(..)) {
                    "pair"
                } else {
                    "copair"
                };
                write!(f, "{name}(")?;
                a.fmt_at(f, 0)?;
                f.write_str(", ")?;
                b.fmt_at(f, 0)?;
                f.write_str(")")?;
            }
            ArrowTerm::Hole(name, ty) => write!(f, "?{name}[{}, {}]", ty.source, ty.target)?,
            prim => {
                let name = prim
                    .primitive_name()
                    .expect("remaining variants are primitives");
                write!(f, "{name}[")?;
                for (i, a) in prim.subscripts().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ArrowTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Convenience wrapper over [`ArrowTerm::infer_type`].
pub fn infer_type(t: &ArrowTerm) -> Result<ArrowType, TypeError> {
    t.infer_type()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_arrow_term, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn ty(t: &str) -> String {
        parse_arrow_term(t)
            .unwrap()
            .infer_type()
            .unwrap()
            .to_string()
    }

    #[test]
    fn primitive_types() {
        assert_eq!(ty("w[p]"), "p ⊢ p ∧ p");
        assert_eq!(ty("eta[p, q]"), "q ⊢ p→(p ∧ q)");
        assert_eq!(ty("eps[p, q]"), "p ∧ (p→q) ⊢ q");
        assert_eq!(ty("bR[p, q, r]"), "p ∧ (q ∧ r) ⊢ (p ∧ q) ∧ r");
        assert_eq!(ty("bL[p, q, r]"), "(p ∧ q) ∧ r ⊢ p ∧ (q ∧ r)");
        assert_eq!(ty("dR[p]"), "p ∧ ⊤ ⊢ p");
        assert_eq!(ty("dL[p]"), "p ⊢ p ∧ ⊤");
        assert_eq!(ty("c[p, q]"), "p ∧ q ⊢ q ∧ p");
        assert_eq!(ty("(p -> w[q])"), "p→q ⊢ p→(q ∧ q)");
        assert_eq!(ty("p1[p, q]"), "p ⊓ q ⊢ p");
        assert_eq!(ty("i2[p, q]"), "q ⊢ p ⊔ q");
        assert_eq!(ty("term[p]"), "p ⊢ ⊤ₐ");
        assert_eq!(ty("init[p]"), "⊤ₐ ⊢ p");
        assert_eq!(ty("pair(id[p], w[p])"), "p ⊢ p ⊓ (p ∧ p)");
        assert_eq!(ty("copair(id[p], id[p])"), "p ⊔ p ⊢ p");
    }

    #[test]
    fn composition_mismatch_reports_both_formulae() {
        let t = ArrowTerm::comp(ArrowTerm::Eps(f("p"), f("q")), ArrowTerm::WDiag(f("p")));
        match t.infer_type() {
            Err(TypeError::Composition {
                outer_source,
                inner_target,
            }) => {
                assert_eq!(outer_source, f("p ∧ (p → q)"));
                assert_eq!(inner_target, f("p ∧ p"));
            }
            other => panic!("expected a composition error, got {other:?}"),
        }
    }

    #[test]
    fn copair_and_pair_mismatches() {
        assert!(matches!(
            parse_arrow_term("pair(id[p], id[q])").unwrap().infer_type(),
            Err(TypeError::Pairing { .. })
        ));
        assert!(matches!(
            parse_arrow_term("copair(id[p], id[q])")
                .unwrap()
                .infer_type(),
            Err(TypeError::Copairing { .. })
        ));
    }

    #[test]
    fn substitution_fills_holes_and_letters() {
        let t = parse_arrow_term("?f[A, B] . id[A]").unwrap();
        let mut fm = BTreeMap::new();
        fm.insert(Arc::from("A"), f("p"));
        fm.insert(Arc::from("B"), f("p ∧ p"));
        let mut hm = BTreeMap::new();
        hm.insert(Arc::from("f"), parse_arrow_term("w[p]").unwrap());
        let s = t.substitute(&fm, &hm);
        assert_eq!(s, parse_arrow_term("w[p] . id[p]").unwrap());
        assert!(!s.has_holes());
    }
}
