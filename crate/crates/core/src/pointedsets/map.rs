use std::fmt;

use super::set::{smash, smash_pair, smash_unpair, PointedSet};
use super::ModelError;

/// A point-preserving map between finite pointed sets, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMap {
    dom: PointedSet,
    cod: PointedSet,
    table: Vec<usize>,
}

impl PointedMap {
    pub fn new(
        dom: PointedSet,
        cod: PointedSet,
        table: Vec<usize>,
    ) -> Result<PointedMap, ModelError> {
        if table.len() != dom.size() || table.iter().any(|&v| v >= cod.size()) {
            return Err(ModelError::ShapeMismatch);
        }
        if table[0] != 0 {
            return Err(ModelError::PointNotPreserved);
        }
        Ok(PointedMap { dom, cod, table })
    }

    pub(crate) fn from_parts(dom: PointedSet, cod: PointedSet, table: Vec<usize>) -> PointedMap {
        debug_assert_eq!(table.len(), dom.size());
        debug_assert_eq!(table.first(), Some(&0));
        PointedMap { dom, cod, table }
    }

    pub fn identity(a: &PointedSet) -> PointedMap {
        PointedMap::from_parts(a.clone(), a.clone(), (0..a.size()).collect())
    }

    pub fn constant_point(a: &PointedSet, b: &PointedSet) -> PointedMap {
        PointedMap::from_parts(a.clone(), b.clone(), vec![0; a.size()])
    }

    pub fn dom(&self) -> &PointedSet {
        &self.dom
    }

    pub fn cod(&self) -> &PointedSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_identity(&self) -> bool {
        self.dom.size() == self.cod.size() && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PointedMap) -> Result<PointedMap, ModelError> {
        if inner.cod.size() != self.dom.size() {
            return Err(ModelError::ShapeMismatch);
        }
        let table = inner.table.iter().map(|&y| self.table[y]).collect();
        Ok(PointedMap::from_parts(
            inner.dom.clone(),
            self.cod.clone(),
            table,
        ))
    }

    /// `f ⊗ g`: `(x, y) ↦ (f x, g y)`, which is `∗` as soon as either image is.
    pub fn smash(f: &PointedMap, g: &PointedMap) -> Result<PointedMap, ModelError> {
        let dom = smash(&f.dom, &g.dom)?;
        let cod = smash(&f.cod, &g.cod)?;
        let (gd, gc) = (g.dom.size(), g.cod.size());
        let table = (0..dom.size())
            .map(|z| {
                let (x, y) = smash_unpair(z, gd);
                smash_pair(f.table[x], g.table[y], gc)
            })
            .collect();
        Ok(PointedMap::from_parts(dom, cod, table))
    }
}

/// Table equality. Maps between differently sized sets are a shape error.
pub fn map_equal(f: &PointedMap, g: &PointedMap) -> Result<bool, ModelError> {
    if f.dom.size() != g.dom.size() || f.cod.size() != g.cod.size() {
        return Err(ModelError::ShapeMismatch);
    }
    Ok(f.table == g.table)
}

impl fmt::Display for PointedMap {
    /// One line `i -> j` per element of the domain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &j) in self.table.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{i} -> {j}")?;
        }
        Ok(())
    }
}

/// Every point-preserving map `a → b`, in lexicographic order of value tables.
pub fn all_maps(a: &PointedSet, b: &PointedSet) -> impl Iterator<Item = PointedMap> {
    let (a, b) = (a.clone(), b.clone());
    let n = a.non_point_count();
    let total = (b.size() as u128)
        .checked_pow(n as u32)
        .expect("map space too large to enumerate");
    (0..total).map(move |mut code| {
        let mut table = vec![0; a.size()];
        for x in (1..a.size()).rev() {
            table[x] = (code % b.size() as u128) as usize;
            code /= b.size() as u128;
        }
        PointedMap::from_parts(a.clone(), b.clone(), table)
    })
}

/// A partial function between plain finite sets `0..dom_size` and `0..cod_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFn {
    pub dom_size: usize,
    pub cod_size: usize,
    pub graph: Vec<Option<usize>>,
}

impl PartialFn {
    pub fn new(
        dom_size: usize,
        cod_size: usize,
        graph: Vec<Option<usize>>,
    ) -> Result<PartialFn, ModelError> {
        if graph.len() != dom_size || graph.iter().flatten().any(|&v| v >= cod_size) {
            return Err(ModelError::ShapeMismatch);
        }
        Ok(PartialFn {
            dom_size,
            cod_size,
            graph,
        })
    }

    /// `self ∘ inner`, undefined wherever either step is.
    pub fn after(&self, inner: &PartialFn) -> Result<PartialFn, ModelError> {
        if inner.cod_size != self.dom_size {
            return Err(ModelError::ShapeMismatch);
        }
        let graph = inner
            .graph
            .iter()
            .map(|y| y.and_then(|y| self.graph[y]))
            .collect();
        Ok(PartialFn {
            dom_size: inner.dom_size,
            cod_size: self.cod_size,
            graph,
        })
    }

    pub fn is_nowhere_defined(&self) -> bool {
        self.graph.iter().all(Option::is_none)
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.graph.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match v {
                Some(j) => write!(f, "{i} -> {j}")?,
                None => write!(f, "{i} -> undef")?,
            }
        }
        Ok(())
    }
}

/// Strips the point: non-point element `i` becomes `i − 1`; `f` is undefined where it hits `∗`.
pub fn to_partial(f: &PointedMap) -> PartialFn {
    let graph = f.table[1..].iter().map(|&v| v.checked_sub(1)).collect();
    PartialFn {
        dom_size: f.dom.size() - 1,
        cod_size: f.cod.size() - 1,
        graph,
    }
}

/// Inverse of [`to_partial`]: adjoins a point and sends undefined inputs to it.
pub fn from_partial(p: &PartialFn) -> PointedMap {
    let dom = PointedSet::new(p.dom_size + 1).expect("non-empty");
    let cod = PointedSet::new(p.cod_size + 1).expect("non-empty");
    let table = std::iter::once(0)
        .chain(p.graph.iter().map(|v| v.map_or(0, |j| j + 1)))
        .collect();
    PointedMap::from_parts(dom, cod, table)
}
