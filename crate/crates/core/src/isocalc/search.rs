//! Bounded breadth-first search for inverse pairs of structural arrows.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::pointedsets::{default_valuations, interp_formula, EvalConfig, Evaluator};
use crate::syntax::{ArrowTerm, Formula};

use super::IsoError;

/// Deepest search [`bounded_iso_search`] accepts.
pub const MAX_ISO_DEPTH: usize = 6;

/// One rewriting step `X ⊢ Y` together with its inverse `Y ⊢ X`.
struct Step {
    target: Formula,
    forward: ArrowTerm,
    backward: ArrowTerm,
}

fn root_steps(x: &Formula) -> Vec<Step> {
    use ArrowTerm::*;
    let mut out = Vec::new();
    if let Formula::Conj(a, bc) = x {
        let (a, bc) = ((**a).clone(), (**bc).clone());
        if let Formula::Conj(b, c) = &bc {
            let (b, c) = ((**b).clone(), (**c).clone());
            out.push(Step {
                target: Formula::conj(Formula::conj(a.clone(), b.clone()), c.clone()),
                forward: BAssocR(a.clone(), b.clone(), c.clone()),
                backward: BAssocL(a.clone(), b, c),
            });
        }
        if let Formula::Conj(a1, b1) = &a {
            let (a1, b1) = ((**a1).clone(), (**b1).clone());
            out.push(Step {
                target: Formula::conj(a1.clone(), Formula::conj(b1.clone(), bc.clone())),
                forward: BAssocL(a1.clone(), b1.clone(), bc.clone()),
                backward: BAssocR(a1, b1, bc.clone()),
            });
        }
        out.push(Step {
            target: Formula::conj(bc.clone(), a.clone()),
            forward: CSym(a.clone(), bc.clone()),
            backward: CSym(bc.clone(), a.clone()),
        });
        if bc == Formula::Top {
            out.push(Step {
                target: a.clone(),
                forward: DUnitR(a.clone()),
                backward: DUnitL(a),
            });
        }
    }
    out.push(Step {
        target: Formula::conj(x.clone(), Formula::Top),
        forward: DUnitL(x.clone()),
        backward: DUnitR(x.clone()),
    });
    out
}

fn steps(x: &Formula) -> Vec<Step> {
    let mut out = root_steps(x);
    match x {
        Formula::Conj(a, b) => {
            for s in steps(a) {
                out.push(Step {
                    target: Formula::conj(s.target, (**b).clone()),
                    forward: ArrowTerm::tens(s.forward, ArrowTerm::Id((**b).clone())),
                    backward: ArrowTerm::tens(s.backward, ArrowTerm::Id((**b).clone())),
                });
            }
            for s in steps(b) {
                out.push(Step {
                    target: Formula::conj((**a).clone(), s.target),
                    forward: ArrowTerm::tens(ArrowTerm::Id((**a).clone()), s.forward),
                    backward: ArrowTerm::tens(ArrowTerm::Id((**a).clone()), s.backward),
                });
            }
        }
        Formula::Impl(a, b) => {
            for s in steps(b) {
                out.push(Step {
                    target: Formula::implies((**a).clone(), s.target),
                    forward: ArrowTerm::hom((**a).clone(), s.forward),
                    backward: ArrowTerm::hom((**a).clone(), s.backward),
                });
            }
        }
        _ => {}
    }
    out
}

fn is_identity_everywhere(t: &ArrowTerm, letters: &BTreeSet<std::sync::Arc<str>>) -> bool {
    default_valuations(letters).iter().all(|v| {
        Evaluator::new(v, EvalConfig::default())
            .and_then(|mut e| e.eval(t))
            .is_ok_and(|m| m.is_identity())
    })
}

/// Looks for `f : A ⊢ B` and `g : B ⊢ A` among composites of at most `depth`
/// structural steps (associativity, symmetry, unit) applied at covariant
/// positions, accepting the first pair whose composites evaluate to
/// identities on the small valuation family. `None` proves nothing.
pub fn bounded_iso_search(
    a: &Formula,
    b: &Formula,
    depth: usize,
) -> Result<Option<(ArrowTerm, ArrowTerm)>, IsoError> {
    if depth > MAX_ISO_DEPTH {
        return Err(IsoError::DepthCap {
            depth,
            cap: MAX_ISO_DEPTH,
        });
    }
    let mut letters = a.letters();
    letters.extend(b.letters());
    for v in default_valuations(&letters) {
        match (interp_formula(a, &v), interp_formula(b, &v)) {
            (Ok(x), Ok(y)) if x.size() != y.size() => return Ok(None),
            _ => {}
        }
    }
    if a == b {
        return Ok(Some((ArrowTerm::Id(a.clone()), ArrowTerm::Id(a.clone()))));
    }
    let size_limit = a.size().max(b.size()) + 1;
    let mut seen = HashSet::from([a.clone()]);
    let mut queue: VecDeque<(Formula, ArrowTerm, ArrowTerm, usize)> = VecDeque::new();
    for s in steps(a) {
        if s.target.size() <= size_limit && seen.insert(s.target.clone()) {
            queue.push_back((s.target, s.forward, s.backward, 1));
        }
    }
    while let Some((x, f, g, d)) = queue.pop_front() {
        if x == *b {
            let there_and_back = ArrowTerm::comp(g.clone(), f.clone());
            let back_and_there = ArrowTerm::comp(f.clone(), g.clone());
            if is_identity_everywhere(&there_and_back, &letters)
                && is_identity_everywhere(&back_and_there, &letters)
            {
                return Ok(Some((f, g)));
            }
            continue;
        }
        if d == depth {
            continue;
        }
        for s in steps(&x) {
            if s.target.size() <= size_limit && seen.insert(s.target.clone()) {
                queue.push_back((
                    s.target,
                    ArrowTerm::comp(s.forward, f.clone()),
                    ArrowTerm::comp(g.clone(), s.backward),
                    d + 1,
                ));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_arrow_term, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn units_and_symmetry_at_depth_one() {
        let (d1, d2) = bounded_iso_search(&f("p /\\ T"), &f("p"), 1)
            .unwrap()
            .unwrap();
        assert_eq!(d1, parse_arrow_term("dR[p]").unwrap());
        assert_eq!(d2, parse_arrow_term("dL[p]").unwrap());
        let (c1, c2) = bounded_iso_search(&f("p /\\ q"), &f("q /\\ p"), 1)
            .unwrap()
            .unwrap();
        assert_eq!(c1, parse_arrow_term("c[p, q]").unwrap());
        assert_eq!(c2, parse_arrow_term("c[q, p]").unwrap());
    }

    #[test]
    fn deeper_and_absent() {
        let (fw, bw) = bounded_iso_search(&f("(p /\\ q) /\\ r"), &f("r /\\ (q /\\ p)"), 3)
            .unwrap()
            .unwrap();
        let ty = fw.infer_type().unwrap();
        assert_eq!(
            (ty.source, ty.target),
            (f("(p /\\ q) /\\ r"), f("r /\\ (q /\\ p)"))
        );
        assert!(bw.infer_type().is_ok());
        assert_eq!(bounded_iso_search(&f("p"), &f("q"), 4).unwrap(), None);
        assert!(bounded_iso_search(&f("p -> (q /\\ T)"), &f("p -> q"), 1)
            .unwrap()
            .is_some());
        assert!(matches!(
            bounded_iso_search(&f("p"), &f("p"), 9),
            Err(IsoError::DepthCap { .. })
        ));
    }
}
