//! Object and arrow languages: formulae, arrow terms, parsing, printing and
//! type inference.

mod formula;
mod parse;
mod term;

pub use formula::{ArrowType, Formula, Occurrence};
pub use parse::{parse_arrow_term, parse_arrow_type, parse_equation, parse_formula, ParseError};
pub use term::{infer_type, ArrowTerm, TypeError};

/// Letter occurrences of `a`, left to right.
pub fn occurrences(a: &Formula) -> Vec<Occurrence> {
    a.occurrences()
}

/// True iff no letter occurs more than once in `a`.
pub fn diversified(a: &Formula) -> bool {
    a.is_diversified()
}

#[cfg(test)]
mod roundtrip {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["p", "q", "r", "w", "id"]).prop_map(Formula::letter),
            Just(Formula::Top),
            Just(Formula::AddUnit),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::prod(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::coprod(a, b)),
            ]
        })
    }

    fn arb_term() -> impl Strategy<Value = ArrowTerm> {
        let f = arb_formula;
        let leaf = prop_oneof![
            f().prop_map(ArrowTerm::Id),
            (f(), f(), f()).prop_map(|(a, b, c)| ArrowTerm::BAssocR(a, b, c)),
            (f(), f(), f()).prop_map(|(a, b, c)| ArrowTerm::BAssocL(a, b, c)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::CSym(a, b)),
            f().prop_map(ArrowTerm::DUnitR),
            f().prop_map(ArrowTerm::DUnitL),
            f().prop_map(ArrowTerm::WDiag),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Eps(a, b)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Eta(a, b)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Proj1(a, b)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Proj2(a, b)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Inj1(a, b)),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::Inj2(a, b)),
            f().prop_map(ArrowTerm::ToTerminal),
            f().prop_map(ArrowTerm::FromInitial),
            (f(), f()).prop_map(|(a, b)| ArrowTerm::hole("f", ArrowType::new(a, b))),
        ];
        leaf.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ArrowTerm::comp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ArrowTerm::tens(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ArrowTerm::pair(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ArrowTerm::copair(a, b)),
                (arb_formula(), inner).prop_map(|(a, t)| ArrowTerm::hom(a, t)),
            ]
        })
    }

    proptest! {
        #[test]
        fn formula_print_parse_roundtrip(a in arb_formula()) {
            prop_assert_eq!(parse_formula(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn term_print_parse_roundtrip(t in arb_term()) {
            prop_assert_eq!(parse_arrow_term(&t.to_string()).unwrap(), t);
        }

        #[test]
        fn occurrences_of_conjunction_concatenate(a in arb_formula(), b in arb_formula()) {
            let mut expected: Vec<_> = a.occurrences().into_iter().map(|o| o.letter).collect();
            expected.extend(b.occurrences().into_iter().map(|o| o.letter));
            let got: Vec<_> = Formula::conj(a, b).occurrences().into_iter().map(|o| o.letter).collect();
            prop_assert_eq!(got, expected);
        }
    }
}
