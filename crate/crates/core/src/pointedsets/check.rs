use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::syntax::ArrowTerm;
use crate::theories::Equation;

use super::eval::{EvalConfig, Evaluator, Valuation};
use super::map::PointedMap;
use super::set::PointedSet;
use super::ModelError;

/// Where two sides of an equation come apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub valuation: Valuation,
    pub element: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Holds => json!({ "verdict": "holds" }),
            Verdict::Fails(c) => json!({
                "verdict": "fails",
                "valuation": c.valuation.to_string(),
                "element": c.element,
                "lhs": c.lhs,
                "rhs": c.rhs,
            }),
        }
    }
}

/// The first element on which `lhs` and `rhs` differ, with both values.
pub fn check_maps(
    lhs: &PointedMap,
    rhs: &PointedMap,
) -> Result<Option<(usize, usize, usize)>, ModelError> {
    if lhs.dom().size() != rhs.dom().size() || lhs.cod().size() != rhs.cod().size() {
        return Err(ModelError::ShapeMismatch);
    }
    Ok(lhs
        .table()
        .iter()
        .zip(rhs.table())
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(i, (&l, &r))| (i, l, r)))
}

/// Evaluates both sides under each valuation and reports the first disagreement.
///
/// Valuations are evaluated in parallel; the reported counterexample (or
/// error) is always the one for the earliest valuation in `valuations`.
pub fn check_terms(
    lhs: &ArrowTerm,
    rhs: &ArrowTerm,
    valuations: &[Valuation],
    config: EvalConfig,
) -> Result<Verdict, ModelError> {
    let outcomes: Vec<Result<Option<Counterexample>, ModelError>> = valuations
        .par_iter()
        .map(|v| {
            let mut e = Evaluator::new(v, config)?;
            let (l, r) = (e.eval(lhs)?, e.eval(rhs)?);
            Ok(
                check_maps(&l, &r)?.map(|(element, lhs, rhs)| Counterexample {
                    valuation: v.clone(),
                    element,
                    lhs,
                    rhs,
                }),
            )
        })
        .collect();
    for outcome in outcomes {
        if let Some(c) = outcome? {
            return Ok(Verdict::Fails(c));
        }
    }
    Ok(Verdict::Holds)
}

pub fn check_equation(eq: &Equation, valuations: &[Valuation]) -> Result<Verdict, ModelError> {
    check_terms(&eq.lhs, &eq.rhs, valuations, EvalConfig::default())
}

/// Largest number of valuations [`default_valuations`] produces.
pub const DEFAULT_VALUATION_LIMIT: usize = 27;

/// All assignments of sizes from `sizes` to `letters` in lexicographic order,
/// truncated to the first `limit`.
pub fn valuations_over(
    letters: &BTreeSet<Arc<str>>,
    sizes: &[usize],
    limit: usize,
) -> Vec<Valuation> {
    let letters: Vec<&Arc<str>> = letters.iter().collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; letters.len()];
    if sizes.is_empty() {
        return out;
    }
    while out.len() < limit {
        let mut v = Valuation::new();
        for (l, &d) in letters.iter().zip(&digits) {
            v.insert(l, PointedSet::new(sizes[d]).expect("sizes are at least 1"));
        }
        out.push(v);
        // odometer, last letter fastest
        let mut i = letters.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < sizes.len() {
                break;
            }
            digits[i] = 0;
        }
    }
    out
}

/// Sizes `{1, 2, 3}` over `letters`, at most 27 valuations.
pub fn default_valuations(letters: &BTreeSet<Arc<str>>) -> Vec<Valuation> {
    valuations_over(letters, &[1, 2, 3], DEFAULT_VALUATION_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_equation;

    fn eq(s: &str) -> Equation {
        let (l, r) = parse_equation(s).unwrap();
        Equation::new(l, r).unwrap()
    }

    fn letters(names: &[&str]) -> BTreeSet<Arc<str>> {
        names.iter().map(|&n| Arc::from(n)).collect()
    }

    #[test]
    fn default_family() {
        assert_eq!(default_valuations(&letters(&["p"])).len(), 3);
        assert_eq!(default_valuations(&letters(&["p", "q", "r"])).len(), 27);
        let four = default_valuations(&letters(&["p", "q", "r", "s"]));
        assert_eq!(four.len(), 27);
        assert_eq!(four[0].to_string(), "p=1,q=1,r=1,s=1");
        assert_eq!(four[1].to_string(), "p=1,q=1,r=1,s=2");
        // no letters: one empty valuation
        assert_eq!(default_valuations(&BTreeSet::new()).len(), 1);
    }

    #[test]
    fn axioms_hold_and_non_axioms_fail() {
        let cw = eq("c[p, p] . w[p] = w[p]");
        assert_eq!(
            check_equation(&cw, &default_valuations(&cw.letters())).unwrap(),
            Verdict::Holds
        );
        let bad = eq("c[p, p] = id[p /\\ p]");
        match check_equation(&bad, &default_valuations(&bad.letters())).unwrap() {
            Verdict::Fails(c) => {
                assert_eq!(c.valuation.to_string(), "p=3");
                assert_ne!(c.element, 0);
                assert_ne!(c.lhs, c.rhs);
            }
            Verdict::Holds => panic!("symmetry is not the identity at size 3"),
        }
    }

    #[test]
    fn no_valuations_hold_vacuously() {
        let bad = eq("c[p, p] = id[p /\\ p]");
        assert_eq!(check_equation(&bad, &[]).unwrap(), Verdict::Holds);
    }

    #[test]
    fn verdict_json() {
        assert_eq!(Verdict::Holds.to_json()["verdict"], "holds");
    }
}
