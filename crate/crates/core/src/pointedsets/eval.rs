use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::syntax::{ArrowTerm, Formula};

use super::map::PointedMap;
use super::set::{
    coproduct_in_right, coproduct_size, coproduct_split, hom_size, product_pair, product_size,
    product_unpair, smash_pair, smash_size, smash_unpair, HomCode, PointedSet, Summand,
};
use super::ModelError;

/// An assignment of pointed sets to letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    sets: BTreeMap<Arc<str>, PointedSet>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn from_sizes<'a>(
        sizes: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Valuation, ModelError> {
        let mut v = Valuation::new();
        for (name, size) in sizes {
            v.insert(name, PointedSet::new(size)?);
        }
        Ok(v)
    }

    pub fn insert(&mut self, letter: &str, set: PointedSet) {
        self.sets.insert(Arc::from(letter), set);
    }

    pub fn get(&self, letter: &str) -> Option<&PointedSet> {
        self.sets.get(letter)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<str>, &PointedSet)> {
        self.sets.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Letter sizes with the point removed, as used by the arithmetic interpretation.
    pub fn non_point_counts(&self) -> BTreeMap<Arc<str>, u64> {
        self.sets
            .iter()
            .map(|(k, s)| (k.clone(), s.non_point_count() as u64))
            .collect()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, s)) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}={}", s.size())?;
        }
        Ok(())
    }
}

impl FromStr for Valuation {
    type Err = ModelError;

    /// `p=3,q=4`; sizes count the point.
    fn from_str(s: &str) -> Result<Valuation, ModelError> {
        let mut v = Valuation::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (name, size) = item.split_once('=').ok_or_else(|| {
                ModelError::Valuation(format!("expected `letter=size`, found `{item}`"))
            })?;
            let size: usize = size
                .trim()
                .parse()
                .map_err(|_| ModelError::Valuation(format!("`{}` is not a size", size.trim())))?;
            v.insert(name.trim(), PointedSet::new(size)?);
        }
        Ok(v)
    }
}

/// The pointed set interpreting `a`, computed with checked arithmetic and no budget.
pub fn interp_formula(a: &Formula, v: &Valuation) -> Result<PointedSet, ModelError> {
    let size = checked_size(a, v)?;
    if *a == Formula::Top {
        return Ok(PointedSet::top());
    }
    PointedSet::new(size)
}

fn checked_size(a: &Formula, v: &Valuation) -> Result<usize, ModelError> {
    let over = || ModelError::Overflow(a.to_string());
    Ok(match a {
        Formula::Letter(p) => v
            .get(p)
            .ok_or_else(|| ModelError::UnboundLetter(p.to_string()))?
            .size(),
        Formula::Top => 2,
        Formula::AddUnit => 1,
        Formula::Conj(l, r) => {
            smash_size(checked_size(l, v)?, checked_size(r, v)?).ok_or_else(over)?
        }
        Formula::Impl(l, r) => {
            hom_size(checked_size(l, v)?, checked_size(r, v)?).ok_or_else(over)?
        }
        Formula::Prod(l, r) => {
            product_size(checked_size(l, v)?, checked_size(r, v)?).ok_or_else(over)?
        }
        Formula::Coprod(l, r) => {
            coproduct_size(checked_size(l, v)?, checked_size(r, v)?).ok_or_else(over)?
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Largest object, in elements, that evaluation will build a table over.
    pub budget: usize,
    /// Largest set a valuation may assign to a letter.
    pub size_cap: usize,
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig {
            budget: 1 << 16,
            size_cap: 6,
        }
    }
}

/// Evaluates arrow terms under one valuation, memoizing object sizes.
pub struct Evaluator<'v> {
    valuation: &'v Valuation,
    config: EvalConfig,
    sizes: HashMap<Formula, usize>,
}

impl<'v> Evaluator<'v> {
    pub fn new(valuation: &'v Valuation, config: EvalConfig) -> Result<Evaluator<'v>, ModelError> {
        for (letter, set) in valuation.iter() {
            if set.size() > config.size_cap {
                return Err(ModelError::SizeCap {
                    letter: letter.to_string(),
                    size: set.size(),
                    cap: config.size_cap,
                });
            }
        }
        Ok(Evaluator {
            valuation,
            config,
            sizes: HashMap::new(),
        })
    }

    /// Size of the interpretation of `a`, refusing anything over budget.
    pub fn size(&mut self, a: &Formula) -> Result<usize, ModelError> {
        if let Some(&n) = self.sizes.get(a) {
            return Ok(n);
        }
        let over = || ModelError::Overflow(a.to_string());
        let n = match a {
            Formula::Letter(p) => self
                .valuation
                .get(p)
                .ok_or_else(|| ModelError::UnboundLetter(p.to_string()))?
                .size(),
            Formula::Top => 2,
            Formula::AddUnit => 1,
            Formula::Conj(l, r) => smash_size(self.size(l)?, self.size(r)?).ok_or_else(over)?,
            Formula::Impl(l, r) => hom_size(self.size(l)?, self.size(r)?).ok_or_else(over)?,
            Formula::Prod(l, r) => product_size(self.size(l)?, self.size(r)?).ok_or_else(over)?,
            Formula::Coprod(l, r) => {
                coproduct_size(self.size(l)?, self.size(r)?).ok_or_else(over)?
            }
        };
        if n > self.config.budget {
            return Err(ModelError::TooLarge {
                formula: a.to_string(),
                size: n,
                budget: self.config.budget,
            });
        }
        self.sizes.insert(a.clone(), n);
        Ok(n)
    }

    fn set(&mut self, a: &Formula) -> Result<PointedSet, ModelError> {
        PointedSet::new(self.size(a)?)
    }

    /// Checks that every object the evaluation of `t` would touch is within budget.
    pub fn admits(&mut self, t: &ArrowTerm) -> Result<(), ModelError> {
        let mut objects = Vec::new();
        let mut hole = None;
        t.for_each_subterm(&mut |s| {
            if let ArrowTerm::Hole(name, _) = s {
                hole.get_or_insert_with(|| name.to_string());
            }
            objects.extend(s.subscripts().into_iter().cloned());
            if let Ok(ty) = s.infer_type() {
                objects.push(ty.source);
                objects.push(ty.target);
            }
        });
        if let Some(name) = hole {
            return Err(ModelError::Hole(name));
        }
        t.infer_type()?;
        for a in &objects {
            self.size(a)?;
        }
        Ok(())
    }

    pub fn eval(&mut self, t: &ArrowTerm) -> Result<PointedMap, ModelError> {
        use ArrowTerm::*;
        match t {
            Id(a) => Ok(PointedMap::identity(&self.set(a)?)),
            BAssocR(_, b, c) => {
                let (nb, nc) = (self.size(b)?, self.size(c)?);
                let nbc = self.size(&Formula::conj(b.clone(), c.clone()))?;
                self.tabulate(t, |z| {
                    let (x, yz) = smash_unpair(z, nbc);
                    let (y, w) = smash_unpair(yz, nc);
                    smash_pair(smash_pair(x, y, nb), w, nc)
                })
            }
            BAssocL(_, b, c) => {
                let (nb, nc) = (self.size(b)?, self.size(c)?);
                let nbc = self.size(&Formula::conj(b.clone(), c.clone()))?;
                self.tabulate(t, |z| {
                    let (xy, w) = smash_unpair(z, nc);
                    let (x, y) = smash_unpair(xy, nb);
                    smash_pair(x, smash_pair(y, w, nc), nbc)
                })
            }
            CSym(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                self.tabulate(t, |z| {
                    let (x, y) = smash_unpair(z, nb);
                    smash_pair(y, x, na)
                })
            }
            // The non-point element of ⊤ is 1, so x ↔ (x, 1) is the unit law.
            DUnitR(_) => self.tabulate(t, |z| smash_unpair(z, 2).0),
            DUnitL(_) => self.tabulate(t, |x| smash_pair(x, 1, 2)),
            WDiag(a) => {
                let na = self.size(a)?;
                self.tabulate(t, |x| smash_pair(x, x, na))
            }
            Eps(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                let nh = self.size(&Formula::implies(a.clone(), b.clone()))?;
                let code =
                    HomCode::new(na, nb).ok_or_else(|| ModelError::Overflow(t.to_string()))?;
                self.tabulate(t, |z| {
                    let (x, h) = smash_unpair(z, nh);
                    code.apply(h, x)
                })
            }
            Eta(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                let nab = self.size(&Formula::conj(a.clone(), b.clone()))?;
                let code =
                    HomCode::new(na, nab).ok_or_else(|| ModelError::Overflow(t.to_string()))?;
                self.tabulate(t, |y| code.encode((0..na).map(|x| smash_pair(x, y, nb))))
            }
            Comp(f, g) => {
                let (mf, mg) = (self.eval(f)?, self.eval(g)?);
                mf.after(&mg)
            }
            Tens(f, g) => {
                let (mf, mg) = (self.eval(f)?, self.eval(g)?);
                let ty = t.infer_type()?;
                self.size(&ty.source)?;
                self.size(&ty.target)?;
                PointedMap::smash(&mf, &mg)
            }
            HomFun(a, f) => {
                let mf = self.eval(f)?;
                let ty = t.infer_type()?;
                let dom = self.set(&ty.source)?;
                let cod = self.set(&ty.target)?;
                let na = self.size(a)?;
                let over = || ModelError::Overflow(t.to_string());
                let src = HomCode::new(na, mf.dom().size()).ok_or_else(over)?;
                let tgt = HomCode::new(na, mf.cod().size()).ok_or_else(over)?;
                let table = (0..dom.size())
                    .map(|h| tgt.encode((0..na).map(|x| mf.apply(src.apply(h, x)))))
                    .collect();
                Ok(PointedMap::from_parts(dom, cod, table))
            }
            Proj1(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                self.tabulate(t, |z| product_unpair(z, na, nb).0)
            }
            Proj2(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                self.tabulate(t, |z| product_unpair(z, na, nb).1)
            }
            Pair(f, g) => {
                let (mf, mg) = (self.eval(f)?, self.eval(g)?);
                let (na, nb) = (mf.cod().size(), mg.cod().size());
                self.tabulate(t, |z| product_pair(mf.apply(z), mg.apply(z), na, nb))
            }
            Inj1(_, _) => self.tabulate(t, |x| x),
            Inj2(a, _) => {
                let na = self.size(a)?;
                self.tabulate(t, |y| coproduct_in_right(y, na))
            }
            Copair(f, g) => {
                let (mf, mg) = (self.eval(f)?, self.eval(g)?);
                let na = mf.dom().size();
                self.tabulate(t, |z| match coproduct_split(z, na) {
                    Summand::Point => 0,
                    Summand::Left(x) => mf.apply(x),
                    Summand::Right(y) => mg.apply(y),
                })
            }
            ToTerminal(_) | FromInitial(_) => self.tabulate(t, |_| 0),
            Hole(name, _) => Err(ModelError::Hole(name.to_string())),
        }
    }

    /// The map of type `infer_type(t)` whose value at each element is `value`.
    fn tabulate(
        &mut self,
        t: &ArrowTerm,
        value: impl Fn(usize) -> usize,
    ) -> Result<PointedMap, ModelError> {
        let ty = t.infer_type()?;
        let dom = self.set(&ty.source)?;
        let cod = self.set(&ty.target)?;
        let table: Vec<usize> = (0..dom.size()).map(value).collect();
        debug_assert!(
            table.iter().all(|&y| y < cod.size()),
            "{t} left its codomain"
        );
        Ok(PointedMap::from_parts(dom, cod, table))
    }
}

/// Evaluates `t` under `v` with the default budget and size cap.
pub fn eval_term(t: &ArrowTerm, v: &Valuation) -> Result<PointedMap, ModelError> {
    Evaluator::new(v, EvalConfig::default())?.eval(t)
}
