//! The relational semantics of ReMon and the decision procedure it yields.
//!
//! An arrow `A ⊢ B` of the ∧/⊤/w fragment denotes a relation between the letter
//! occurrences of `A` and those of `B`, numbered left to right. `⊤` has no
//! occurrences. The structural isomorphisms denote the evident bijections and
//! `w_A` relates each occurrence of `A` to both of its copies.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{ArrowTerm, ArrowType, Formula, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub src_size: usize,
    pub tgt_size: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(
        src_size: usize,
        tgt_size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Relation {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        assert!(
            pairs.iter().all(|&(i, j)| i < src_size && j < tgt_size),
            "relation pair out of bounds"
        );
        Relation {
            src_size,
            tgt_size,
            pairs,
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation::new(n, n, (0..n).map(|i| (i, i)))
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(
            self.tgt_size, other.src_size,
            "relations are not composable"
        );
        let mut pairs = BTreeSet::new();
        for &(i, j) in &self.pairs {
            for &(_, k) in other.pairs.range((j, 0)..=(j, usize::MAX)) {
                pairs.insert((i, k));
            }
        }
        Relation {
            src_size: self.src_size,
            tgt_size: other.tgt_size,
            pairs,
        }
    }

    /// Disjoint union, `other` placed after `self` on both sides.
    pub fn juxtapose(&self, other: &Relation) -> Relation {
        let shifted = other
            .pairs
            .iter()
            .map(|&(i, j)| (i + self.src_size, j + self.tgt_size));
        Relation {
            src_size: self.src_size + other.src_size,
            tgt_size: self.tgt_size + other.tgt_size,
            pairs: self.pairs.iter().copied().chain(shifted).collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, j)) in self.pairs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}} : {} → {}", self.src_size, self.tgt_size)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoherenceError {
    #[error("`{0}` is outside the ∧/⊤/w fragment")]
    OutOfFragment(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

fn occurrences_in_fragment(a: &Formula) -> Result<usize, CoherenceError> {
    match a {
        Formula::Letter(_) => Ok(1),
        Formula::Top => Ok(0),
        Formula::Conj(l, r) => Ok(occurrences_in_fragment(l)? + occurrences_in_fragment(r)?),
        _ => Err(CoherenceError::OutOfFragment(a.to_string())),
    }
}

/// The relation denoted by a ReMon arrow term.
pub fn rel_of(t: &ArrowTerm) -> Result<Relation, CoherenceError> {
    use ArrowTerm::*;
    let n = occurrences_in_fragment;
    Ok(match t {
        Id(a) => Relation::identity(n(a)?),
        BAssocR(a, b, c) | BAssocL(a, b, c) => Relation::identity(n(a)? + n(b)? + n(c)?),
        DUnitR(a) | DUnitL(a) => Relation::identity(n(a)?),
        CSym(a, b) => {
            let (na, nb) = (n(a)?, n(b)?);
            let left = (0..na).map(|i| (i, nb + i));
            let right = (0..nb).map(|j| (na + j, j));
            Relation::new(na + nb, na + nb, left.chain(right))
        }
        WDiag(a) => {
            let na = n(a)?;
            Relation::new(na, 2 * na, (0..na).flat_map(|i| [(i, i), (i, i + na)]))
        }
        Comp(f, g) => {
            t.infer_type()?;
            rel_of(g)?.then(&rel_of(f)?)
        }
        Tens(f, g) => rel_of(f)?.juxtapose(&rel_of(g)?),
        _ => return Err(CoherenceError::OutOfFragment(t.to_string())),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unequal {
    Type { lhs: ArrowType, rhs: ArrowType },
    Relation { lhs: Relation, rhs: Relation },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RemonVerdict {
    Equal(Relation),
    Unequal(Unequal),
}

impl RemonVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, RemonVerdict::Equal(_))
    }
}

impl fmt::Display for RemonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RemonVerdict::Equal(r) => write!(f, "Equal\n  relation: {r}"),
            RemonVerdict::Unequal(Unequal::Type { lhs, rhs }) => {
                write!(f, "Unequal (type)\n  lhs type: {lhs}\n  rhs type: {rhs}")
            }
            RemonVerdict::Unequal(Unequal::Relation { lhs, rhs }) => {
                write!(
                    f,
                    "Unequal (relation)\n  lhs relation: {lhs}\n  rhs relation: {rhs}"
                )
            }
        }
    }
}

/// Decides `f = g` in ReMon: same type and same relation.
pub fn decide_remon_eq(f: &ArrowTerm, g: &ArrowTerm) -> Result<RemonVerdict, CoherenceError> {
    let (rf, rg) = (rel_of(f)?, rel_of(g)?);
    let (tf, tg) = (f.infer_type()?, g.infer_type()?);
    if tf != tg {
        return Ok(RemonVerdict::Unequal(Unequal::Type { lhs: tf, rhs: tg }));
    }
    if rf != rg {
        return Ok(RemonVerdict::Unequal(Unequal::Relation {
            lhs: rf,
            rhs: rg,
        }));
    }
    Ok(RemonVerdict::Equal(rf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_arrow_term;
    use crate::theories::{
        axioms, mid_interchange, random_schema_instances, InstanceConfig, Theory,
    };

    fn rel(s: &str) -> Relation {
        rel_of(&parse_arrow_term(s).unwrap()).unwrap()
    }

    fn decide(l: &str, r: &str) -> RemonVerdict {
        decide_remon_eq(&parse_arrow_term(l).unwrap(), &parse_arrow_term(r).unwrap()).unwrap()
    }

    #[test]
    fn primitive_relations() {
        assert_eq!(rel("w[p]"), Relation::new(1, 2, [(0, 0), (0, 1)]));
        assert_eq!(rel("c[p, q]"), Relation::new(2, 2, [(0, 1), (1, 0)]));
        assert_eq!(rel("dR[p]"), Relation::identity(1));
        assert_eq!(rel("dL[p /\\ q]"), Relation::identity(2));
        assert_eq!(rel("w[p]").to_string(), "{(0,0), (0,1)} : 1 → 2");
    }

    #[test]
    fn contraction_equalities() {
        assert!(decide("w[p]", "c[p, p] . w[p]").is_equal());
        let (p, q) = (Formula::letter("p"), Formula::letter("q"));
        let bcw = ArrowTerm::comp(
            mid_interchange(&p, &p, &q, &q),
            ArrowTerm::tens(ArrowTerm::WDiag(p.clone()), ArrowTerm::WDiag(q.clone())),
        );
        let w = ArrowTerm::WDiag(Formula::conj(p, q));
        assert!(decide_remon_eq(&w, &bcw).unwrap().is_equal());
    }

    #[test]
    fn separations() {
        assert!(matches!(
            decide("id[p] * w[p]", "w[p]"),
            RemonVerdict::Unequal(Unequal::Type { .. })
        ));
        assert!(matches!(
            decide("c[p, p]", "id[p /\\ p]"),
            RemonVerdict::Unequal(Unequal::Relation { .. })
        ));
        assert!(matches!(
            decide("(w[p] * id[p]) . w[p]", "(id[p] * w[p]) . w[p]"),
            RemonVerdict::Unequal(Unequal::Type { .. })
        ));
    }

    #[test]
    fn outside_the_fragment() {
        let eps = parse_arrow_term("eps[p, q]").unwrap();
        assert!(matches!(
            rel_of(&eps),
            Err(CoherenceError::OutOfFragment(_))
        ));
        let id = parse_arrow_term("id[p -> q]").unwrap();
        assert!(matches!(rel_of(&id), Err(CoherenceError::OutOfFragment(_))));
    }

    #[test]
    fn composition_is_relational() {
        let f = parse_arrow_term("w[p] * id[q]").unwrap();
        let g = parse_arrow_term("c[q, p]").unwrap();
        let fg = ArrowTerm::comp(f.clone(), g.clone());
        assert_eq!(
            rel_of(&fg).unwrap(),
            rel_of(&g).unwrap().then(&rel_of(&f).unwrap())
        );
        // (0,1),(1,0) then w ∧ 1
        assert_eq!(
            rel_of(&fg).unwrap(),
            Relation::new(2, 3, [(0, 2), (1, 0), (1, 1)])
        );
    }

    #[test]
    fn remon_axioms_are_sound() {
        let cfg = InstanceConfig {
            seed: 7,
            ..InstanceConfig::default()
        };
        for schema in axioms(Theory::ReMon) {
            let eqs = random_schema_instances(&schema, Theory::ReMon, &cfg, 20, |_| true).unwrap();
            for eq in eqs {
                assert_eq!(
                    rel_of(&eq.lhs).unwrap(),
                    rel_of(&eq.rhs).unwrap(),
                    "{}: {eq}",
                    schema.name
                );
            }
        }
    }

    #[test]
    fn diagonal_is_relationally_natural() {
        for f in [
            "c[p, q]",
            "w[p] * id[q]",
            "(id[p] * w[q]) . c[q, p]",
            "dR[p /\\ q] . dL[p /\\ q]",
        ] {
            let f = parse_arrow_term(f).unwrap();
            let ty = f.infer_type().unwrap();
            let lhs = ArrowTerm::comp(
                ArrowTerm::tens(f.clone(), f.clone()),
                ArrowTerm::WDiag(ty.source),
            );
            let rhs = ArrowTerm::comp(ArrowTerm::WDiag(ty.target), f);
            assert!(decide_remon_eq(&lhs, &rhs).unwrap().is_equal());
        }
    }
}
