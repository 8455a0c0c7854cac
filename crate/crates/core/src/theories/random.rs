//! Seeded generation of random formulae, arrow terms and schema instances.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::syntax::{ArrowTerm, Formula};

use super::{axioms, instantiate, AxiomSchema, Equation, Substitution, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    /// Maximum number of connectives in each formula substituted for a metavariable.
    pub size_bound: usize,
    /// Each instance draws its letters from an alphabet whose size is uniform in this range.
    pub min_letters: usize,
    pub max_letters: usize,
    /// Hole fillers are composites of at most this many steps.
    pub term_steps: usize,
    /// Attempts per instance before giving up (only matters when a filter rejects instances).
    pub max_attempts: usize,
    pub seed: u64,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        InstanceConfig {
            size_bound: 3,
            min_letters: 2,
            max_letters: 3,
            term_steps: 2,
            max_attempts: 10_000,
            seed: 42,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no acceptable instance of {schema} after {attempts} attempts")]
pub struct GenerationError {
    pub schema: &'static str,
    pub attempts: usize,
}

const ALPHABET: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

/// Random formula with at most `max_connectives` connectives, using only the
/// connectives available in `theory`.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    letters: &[Arc<str>],
    max_connectives: usize,
    theory: Theory,
) -> Formula {
    let k = rng.gen_range(0..=max_connectives);
    formula_with(rng, letters, k, theory)
}

fn formula_with<R: Rng>(
    rng: &mut R,
    letters: &[Arc<str>],
    connectives: usize,
    theory: Theory,
) -> Formula {
    if connectives == 0 {
        let roll = rng.gen_range(0..8);
        return match roll {
            0 => Formula::Top,
            1 if theory.has_additives() => Formula::AddUnit,
            _ => Formula::Letter(letters.choose(rng).expect("non-empty alphabet").clone()),
        };
    }
    let left = rng.gen_range(0..connectives);
    let a = formula_with(rng, letters, left, theory);
    let b = formula_with(rng, letters, connectives - 1 - left, theory);
    let mut ops: Vec<fn(Formula, Formula) -> Formula> = vec![Formula::conj];
    if theory.is_closed() {
        ops.push(Formula::implies);
    }
    if theory.has_additives() {
        ops.push(Formula::prod);
        ops.push(Formula::coprod);
    }
    let op = *ops.choose(rng).unwrap();
    op(a, b)
}

/// Random well-typed arrow terms with a prescribed source.
pub struct TermGenerator<'r, R: Rng> {
    pub rng: &'r mut R,
    pub theory: Theory,
    pub letters: Vec<Arc<str>>,
    pub size_bound: usize,
    pub max_steps: usize,
}

impl<'r, R: Rng> TermGenerator<'r, R> {
    pub fn formula(&mut self) -> Formula {
        random_formula(self.rng, &self.letters, self.size_bound, self.theory)
    }

    fn letter(&mut self) -> Formula {
        Formula::Letter(
            self.letters
                .choose(self.rng)
                .expect("non-empty alphabet")
                .clone(),
        )
    }

    /// A composite of between one and `max_steps` steps out of `src`.
    pub fn forward(&mut self, src: &Formula) -> ArrowTerm {
        let n = self.rng.gen_range(1..=self.max_steps.max(1));
        let mut term = self.step(src, 1);
        for _ in 1..n {
            let mid = term
                .infer_type()
                .expect("generated terms are well typed")
                .target;
            let next = self.step(&mid, 1);
            term = ArrowTerm::comp(next, term);
        }
        term
    }

    /// One primitive step, possibly a tensor or `A → -` of steps when `nest > 0`.
    pub fn step(&mut self, src: &Formula, nest: usize) -> ArrowTerm {
        use ArrowTerm::*;
        let th = self.theory;
        let mut options: Vec<ArrowTerm> = vec![Id(src.clone()), DUnitL(src.clone())];
        if th.is_relevant() {
            options.push(WDiag(src.clone()));
        }
        if th.is_closed() {
            let y = self.letter();
            options.push(Eta(y, src.clone()));
        }
        if th.has_additives() {
            options.push(ToTerminal(src.clone()));
            let y = self.letter();
            options.push(Inj1(src.clone(), y.clone()));
            options.push(Inj2(y, src.clone()));
            if nest > 0 {
                let f = self.step(src, nest - 1);
                let g = self.step(src, nest - 1);
                options.push(ArrowTerm::pair(f, g));
            }
        }
        match src {
            Formula::Conj(a, b) => {
                options.push(CSym((**a).clone(), (**b).clone()));
                if nest > 0 {
                    let f = self.step(a, nest - 1);
                    let g = self.step(b, nest - 1);
                    options.push(ArrowTerm::tens(f, g));
                }
                if let Formula::Conj(b1, b2) = &**b {
                    options.push(BAssocR((**a).clone(), (**b1).clone(), (**b2).clone()));
                }
                if let Formula::Conj(a1, a2) = &**a {
                    options.push(BAssocL((**a1).clone(), (**a2).clone(), (**b).clone()));
                }
                if **b == Formula::Top {
                    options.push(DUnitR((**a).clone()));
                }
                if let Formula::Impl(ant, cons) = &**b {
                    if ant == a && th.is_closed() {
                        options.push(Eps((**a).clone(), (**cons).clone()));
                    }
                }
            }
            Formula::Impl(a, b) if th.is_closed() && nest > 0 => {
                let f = self.step(b, nest - 1);
                options.push(ArrowTerm::hom((**a).clone(), f));
            }
            Formula::Prod(a, b) => {
                options.push(Proj1((**a).clone(), (**b).clone()));
                options.push(Proj2((**a).clone(), (**b).clone()));
            }
            Formula::Coprod(a, b) => {
                // the coproduct symmetry
                options.push(ArrowTerm::copair(
                    Inj2((**b).clone(), (**a).clone()),
                    Inj1((**b).clone(), (**a).clone()),
                ));
            }
            Formula::AddUnit => {
                let y = self.formula();
                options.push(FromInitial(y));
            }
            _ => {}
        }
        options.swap_remove(self.rng.gen_range(0..options.len()))
    }

    /// A term out of `src` whose target matches `pattern`, binding the
    /// metavariables of `pattern` that are still free.
    fn into_pattern(
        &mut self,
        src: &Formula,
        pattern: &Formula,
        bound: &mut BTreeMap<Arc<str>, Formula>,
    ) -> Option<ArrowTerm> {
        let free: Vec<Arc<str>> = pattern
            .letters()
            .into_iter()
            .filter(|m| !bound.contains_key(m))
            .collect();
        if free.is_empty() {
            return self.into_exact(src, &pattern.substitute(bound));
        }
        match pattern {
            Formula::Letter(m) => {
                let t = self.forward(src);
                bound.insert(m.clone(), t.infer_type().ok()?.target);
                Some(t)
            }
            Formula::Prod(p, q) => {
                let f = self.into_pattern(src, p, bound)?;
                let g = self.into_pattern(src, q, bound)?;
                Some(ArrowTerm::pair(f, g))
            }
            Formula::Coprod(p, q) => {
                let f = self.into_pattern(src, p, bound)?;
                for m in q.letters() {
                    if !bound.contains_key(&m) {
                        let a = self.formula();
                        bound.insert(m, a);
                    }
                }
                Some(ArrowTerm::comp(
                    ArrowTerm::Inj1(p.substitute(bound), q.substitute(bound)),
                    f,
                ))
            }
            _ => None,
        }
    }

    fn into_exact(&mut self, src: &Formula, target: &Formula) -> Option<ArrowTerm> {
        if *target == Formula::AddUnit && self.theory.has_additives() {
            let k = self.forward(src);
            let mid = k.infer_type().ok()?.target;
            return Some(ArrowTerm::comp(ArrowTerm::ToTerminal(mid), k));
        }
        for _ in 0..16 {
            let t = self.forward(src);
            if t.infer_type().ok()?.target == *target {
                return Some(t);
            }
        }
        if src == target {
            return Some(ArrowTerm::Id(src.clone()));
        }
        if self.theory.has_additives() {
            // zero arrow through ⊤ₐ
            return Some(ArrowTerm::comp(
                ArrowTerm::FromInitial(target.clone()),
                ArrowTerm::ToTerminal(src.clone()),
            ));
        }
        None
    }

    /// One random instance of `schema`; `None` when the hole types could not be met.
    pub fn instance(&mut self, schema: &AxiomSchema) -> Option<Equation> {
        let mut bound: BTreeMap<Arc<str>, Formula> = BTreeMap::new();
        let mut terms = BTreeMap::new();
        let mut remaining = schema.holes.clone();
        while !remaining.is_empty() {
            let i = next_hole(&remaining, &bound);
            let (name, ty) = remaining.remove(i);
            for m in ty.source.letters() {
                if !bound.contains_key(&m) {
                    let a = self.formula();
                    bound.insert(m, a);
                }
            }
            let src = ty.source.substitute(&bound);
            let t = self.into_pattern(&src, &ty.target, &mut bound)?;
            terms.insert(name, t);
        }
        for m in &schema.metavariables {
            if !bound.contains_key(m) {
                let a = self.formula();
                bound.insert(m.clone(), a);
            }
        }
        instantiate(
            schema,
            &Substitution {
                formulas: bound,
                terms,
            },
        )
        .ok()
    }
}

/// Holes are filled in an order that lets each one be generated forwards
/// from its source: first a hole whose source is known and target is not,
/// then the start of a chain, then anything else.
fn next_hole(
    remaining: &[(Arc<str>, crate::syntax::ArrowType)],
    bound: &BTreeMap<Arc<str>, Formula>,
) -> usize {
    let known = |a: &Formula| a.letters().iter().all(|m| bound.contains_key(m));
    if let Some(i) = remaining
        .iter()
        .position(|(_, t)| known(&t.source) && !known(&t.target))
    {
        return i;
    }
    let targets: BTreeSet<Arc<str>> = remaining
        .iter()
        .flat_map(|(_, t)| t.target.letters())
        .collect();
    if let Some(i) = remaining.iter().position(|(_, t)| {
        !known(&t.target) && t.source.letters().iter().all(|m| !targets.contains(m))
    }) {
        return i;
    }
    remaining
        .iter()
        .position(|(_, t)| !known(&t.target))
        .unwrap_or(0)
}

fn alphabet<R: Rng>(rng: &mut R, cfg: &InstanceConfig) -> Vec<Arc<str>> {
    let lo = cfg.min_letters.clamp(1, ALPHABET.len());
    let hi = cfg.max_letters.clamp(lo, ALPHABET.len());
    let n = rng.gen_range(lo..=hi);
    ALPHABET[..n].iter().map(|s| Arc::from(*s)).collect()
}

/// `count` instances of one schema, each passing `accept`. Deterministic in `cfg.seed`.
pub fn random_schema_instances(
    schema: &AxiomSchema,
    theory: Theory,
    cfg: &InstanceConfig,
    count: usize,
    mut accept: impl FnMut(&Equation) -> bool,
) -> Result<Vec<Equation>, GenerationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > cfg.max_attempts {
                return Err(GenerationError {
                    schema: schema.name,
                    attempts: cfg.max_attempts,
                });
            }
            let letters = alphabet(&mut rng, cfg);
            let mut gen = TermGenerator {
                rng: &mut rng,
                theory,
                letters,
                size_bound: cfg.size_bound,
                max_steps: cfg.term_steps,
            };
            if let Some(eq) = gen.instance(schema) {
                if accept(&eq) {
                    out.push(eq);
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `count` instances of schemata of `theory`, the schema chosen uniformly for each.
pub fn random_axiom_instances(
    theory: Theory,
    size_bound: usize,
    count: usize,
    seed: u64,
) -> Vec<Equation> {
    let size_bound = size_bound.max(1);
    let schemata = axioms(theory);
    let cfg = InstanceConfig {
        size_bound,
        ..InstanceConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let schema = &schemata[rng.gen_range(0..schemata.len())];
        let letters = alphabet(&mut rng, &cfg);
        let mut gen = TermGenerator {
            rng: &mut rng,
            theory,
            letters,
            size_bound,
            max_steps: cfg.term_steps,
        };
        if let Some(eq) = gen.instance(schema) {
            out.push(eq);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mentions(eq: &Equation, pred: fn(&ArrowTerm) -> bool) -> bool {
        let mut hit = false;
        for side in [&eq.lhs, &eq.rhs] {
            side.for_each_subterm(&mut |t| hit |= pred(t));
        }
        hit
    }

    #[test]
    fn instances_are_balanced_and_deterministic() {
        let a = random_axiom_instances(Theory::Rmc, 3, 100, 42);
        let b = random_axiom_instances(Theory::Rmc, 3, 100, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        for eq in &a {
            assert_eq!(eq.lhs.infer_type().unwrap(), eq.rhs.infer_type().unwrap());
            assert!(!eq.lhs.has_holes() && !eq.rhs.has_holes());
        }
        let c = random_axiom_instances(Theory::Rmc, 3, 100, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn rmc_instances_mix_diagonals_and_closure() {
        let eqs = random_axiom_instances(Theory::Rmc, 3, 300, 7);
        let both = eqs.iter().any(|e| {
            mentions(e, |t| matches!(t, ArrowTerm::WDiag(_)))
                && mentions(e, |t| matches!(t, ArrowTerm::Eps(..)))
        });
        assert!(both);
    }

    #[test]
    fn symon_instances_avoid_relevant_and_closed_primitives() {
        for eq in random_axiom_instances(Theory::SyMon, 4, 300, 11) {
            assert!(!mentions(&eq, |t| matches!(
                t,
                ArrowTerm::WDiag(_) | ArrowTerm::Eps(..) | ArrowTerm::Eta(..)
            )));
            assert!(eq.arrow_type().source.is_monoidal());
        }
    }

    #[test]
    fn every_additive_schema_can_be_instantiated() {
        let cfg = InstanceConfig {
            max_attempts: 50,
            ..InstanceConfig::default()
        };
        for schema in axioms(Theory::Additive) {
            let eqs =
                random_schema_instances(&schema, Theory::Additive, &cfg, 5, |_| true).unwrap();
            assert_eq!(eqs.len(), 5);
            assert!(eqs.iter().all(|e| e.origin == Some(schema.name)));
        }
    }

    #[test]
    fn formula_sizes_respect_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let letters: Vec<Arc<str>> = vec![Arc::from("p"), Arc::from("q")];
        for _ in 0..200 {
            let f = random_formula(&mut rng, &letters, 4, Theory::Rmc);
            assert!(f.size() <= 4);
            assert!(f.is_multiplicative());
        }
    }
}
