//! Finite pointed sets and the element encodings of ⊗, ⊠, ⊞ and the internal hom.
//!
//! Elements of a pointed set of size `n` are `0..n`; `0` is the point `∗`.
//!
//! * `a ⊗ b`: `∗ ↦ 0`, `(x, y)` with `x, y ≥ 1` ↦ `(x−1)·(|b|−1) + (y−1) + 1`.
//! * `a ⊠ b`: the smash block as above, then `(x, ∗)` for `x ≥ 1`, then `(∗, y)` for `y ≥ 1`.
//! * `a ⊞ b`: `∗`, then the non-point elements of `a`, then those of `b`.
//! * `a → b`: a map `h` with value vector `(h(1), ..., h(|a|−1))` is the number
//!   with those digits in base `|b|`, most significant first. The constant-∗
//!   map is `0`, which is the point, so the numbering is the lexicographic
//!   order of value vectors.

use std::fmt;
use std::sync::Arc;

use super::map::PointedMap;
use super::ModelError;

#[derive(Clone, Debug)]
pub struct PointedSet {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl PartialEq for PointedSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for PointedSet {}

impl PointedSet {
    pub fn new(size: usize) -> Result<PointedSet, ModelError> {
        if size == 0 {
            return Err(ModelError::EmptySet);
        }
        Ok(PointedSet { size, labels: None })
    }

    /// A pointed set whose elements display as `labels`; `labels[0]` names the point.
    pub fn with_labels(labels: Vec<String>) -> Result<PointedSet, ModelError> {
        let size = labels.len();
        if size == 0 {
            return Err(ModelError::EmptySet);
        }
        Ok(PointedSet {
            size,
            labels: Some(labels.into()),
        })
    }

    /// `I = {∗}`.
    pub fn unit() -> PointedSet {
        PointedSet {
            size: 1,
            labels: None,
        }
    }

    /// The interpretation of `⊤`: `I ∪ {x}`.
    pub fn top() -> PointedSet {
        PointedSet {
            size: 2,
            labels: Some(vec!["∗".to_string(), "x".to_string()].into()),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn non_point_count(&self) -> usize {
        self.size - 1
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None if i == 0 => "∗".to_string(),
            None => i.to_string(),
        }
    }
}

impl fmt::Display for PointedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for i in 0..self.size.min(16) {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.label(i))?;
        }
        if self.size > 16 {
            write!(f, ", … ({} elements)", self.size)?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn smash_size(a: usize, b: usize) -> Option<usize> {
    (a - 1).checked_mul(b - 1)?.checked_add(1)
}

pub(crate) fn product_size(a: usize, b: usize) -> Option<usize> {
    a.checked_mul(b)
}

pub(crate) fn coproduct_size(a: usize, b: usize) -> Option<usize> {
    (a - 1).checked_add(b - 1)?.checked_add(1)
}

pub(crate) fn hom_size(a: usize, b: usize) -> Option<usize> {
    let exp = u32::try_from(a - 1).ok();
    match (b, exp) {
        (1, _) => Some(1),
        (_, Some(e)) => b.checked_pow(e),
        (_, None) => None,
    }
}

#[inline]
pub(crate) fn smash_pair(x: usize, y: usize, right: usize) -> usize {
    if x == 0 || y == 0 {
        0
    } else {
        (x - 1) * (right - 1) + (y - 1) + 1
    }
}

#[inline]
pub(crate) fn smash_unpair(z: usize, right: usize) -> (usize, usize) {
    if z == 0 {
        (0, 0)
    } else {
        let k = z - 1;
        (k / (right - 1) + 1, k % (right - 1) + 1)
    }
}

#[inline]
pub(crate) fn product_pair(x: usize, y: usize, left: usize, right: usize) -> usize {
    let block = (left - 1) * (right - 1);
    match (x, y) {
        (0, 0) => 0,
        (x, 0) => block + x,
        (0, y) => block + (left - 1) + y,
        (x, y) => smash_pair(x, y, right),
    }
}

#[inline]
pub(crate) fn product_unpair(z: usize, left: usize, right: usize) -> (usize, usize) {
    let block = (left - 1) * (right - 1);
    if z <= block {
        smash_unpair(z, right)
    } else if z <= block + (left - 1) {
        (z - block, 0)
    } else {
        (0, z - block - (left - 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Summand {
    Point,
    Left(usize),
    Right(usize),
}

#[inline]
pub(crate) fn coproduct_in_right(y: usize, left: usize) -> usize {
    if y == 0 {
        0
    } else {
        left - 1 + y
    }
}

#[inline]
pub(crate) fn coproduct_split(z: usize, left: usize) -> Summand {
    if z == 0 {
        Summand::Point
    } else if z < left {
        Summand::Left(z)
    } else {
        Summand::Right(z - (left - 1))
    }
}

/// Base-`cod` digit arithmetic for elements of an internal hom `dom → cod`.
#[derive(Clone, Debug)]
pub(crate) struct HomCode {
    pub(crate) dom: usize,
    pub(crate) cod: usize,
    /// `powers[i]` is the place value of input `i` (inputs `1..dom`).
    powers: Vec<usize>,
}

impl HomCode {
    pub(crate) fn new(dom: usize, cod: usize) -> Option<HomCode> {
        hom_size(dom, cod)?;
        let mut powers = vec![0; dom];
        let mut place = 1usize;
        for i in (1..dom).rev() {
            powers[i] = place;
            place = place.saturating_mul(cod);
        }
        Some(HomCode { dom, cod, powers })
    }

    #[inline]
    pub(crate) fn apply(&self, h: usize, x: usize) -> usize {
        if x == 0 || self.cod == 1 {
            0
        } else {
            (h / self.powers[x]) % self.cod
        }
    }

    pub(crate) fn decode(&self, h: usize) -> Vec<usize> {
        (0..self.dom).map(|x| self.apply(h, x)).collect()
    }

    pub(crate) fn encode(&self, values: impl Iterator<Item = usize>) -> usize {
        if self.cod == 1 {
            return 0;
        }
        values
            .enumerate()
            .skip(1)
            .map(|(x, v)| v * self.powers[x])
            .sum()
    }
}

fn overflow(op: &str, a: &PointedSet, b: &PointedSet) -> ModelError {
    ModelError::Overflow(format!("|{}| {op} |{}|", a.size, b.size))
}

pub fn smash(a: &PointedSet, b: &PointedSet) -> Result<PointedSet, ModelError> {
    PointedSet::new(smash_size(a.size, b.size).ok_or_else(|| overflow("⊗", a, b))?)
}

pub fn product(a: &PointedSet, b: &PointedSet) -> Result<PointedSet, ModelError> {
    PointedSet::new(product_size(a.size, b.size).ok_or_else(|| overflow("⊠", a, b))?)
}

pub fn coproduct(a: &PointedSet, b: &PointedSet) -> Result<PointedSet, ModelError> {
    PointedSet::new(coproduct_size(a.size, b.size).ok_or_else(|| overflow("⊠", a, b))?)
}

/// `a → b` together with its element codec.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub dom: PointedSet,
    pub cod: PointedSet,
    pub set: PointedSet,
    code: HomCode,
}

impl InternalHom {
    /// The map named by a non-point element; `None` for the point.
    pub fn decode(&self, element: usize) -> Option<PointedMap> {
        if element == 0 || element >= self.set.size() {
            return None;
        }
        let table = self.code.decode(element);
        Some(PointedMap::from_parts(
            self.dom.clone(),
            self.cod.clone(),
            table,
        ))
    }

    /// The element naming `f`; the constant-∗ map is the point.
    pub fn encode(&self, f: &PointedMap) -> Result<usize, ModelError> {
        if f.dom().size() != self.dom.size() || f.cod().size() != self.cod.size() {
            return Err(ModelError::ShapeMismatch);
        }
        Ok(self.code.encode(f.table().iter().copied()))
    }
}

pub fn internal_hom(a: &PointedSet, b: &PointedSet) -> Result<InternalHom, ModelError> {
    let size = hom_size(a.size, b.size).ok_or_else(|| overflow("→", a, b))?;
    let code = HomCode::new(a.size, b.size).ok_or_else(|| overflow("→", a, b))?;
    Ok(InternalHom {
        dom: a.clone(),
        cod: b.clone(),
        set: PointedSet::new(size)?,
        code,
    })
}

/// Finite pointed sets are isomorphic iff they have the same size.
pub fn iso_check(a: &PointedSet, b: &PointedSet) -> bool {
    a.size == b.size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointedsets::map::all_maps;

    fn set(n: usize) -> PointedSet {
        PointedSet::new(n).unwrap()
    }

    #[test]
    fn smash_sizes() {
        // oracle: count pairs of non-point elements, plus the point
        let pairs = (1..3).flat_map(|x| (1..4).map(move |y| (x, y))).count();
        assert_eq!(pairs + 1, 7);
        assert_eq!(smash(&set(3), &set(4)).unwrap().size(), 7);
        assert_eq!(smash(&PointedSet::unit(), &set(5)).unwrap().size(), 1);
        assert_eq!(smash(&PointedSet::top(), &set(5)).unwrap().size(), 5);
    }

    #[test]
    fn smash_encoding_is_a_bijection() {
        for (a, b) in [(3, 4), (2, 2), (4, 1), (5, 3)] {
            let n = smash_size(a, b).unwrap();
            let mut seen = vec![false; n];
            seen[smash_pair(0, 0, b)] = true;
            for x in 1..a {
                for y in 1..b {
                    let z = smash_pair(x, y, b);
                    assert!(!seen[z]);
                    seen[z] = true;
                    assert_eq!(smash_unpair(z, b), (x, y));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn hom_sizes_match_map_count() {
        // oracle: enumerate point-preserving maps, drop the constant one, add the point
        let maps = all_maps(&set(3), &set(4)).count();
        assert_eq!(maps, 16);
        let h = internal_hom(&set(3), &set(4)).unwrap();
        assert_eq!(h.set.size(), maps - 1 + 1);
        assert_eq!(h.set.non_point_count(), 15);
        assert_eq!(
            internal_hom(&PointedSet::unit(), &set(4))
                .unwrap()
                .set
                .size(),
            1
        );
    }

    #[test]
    fn hom_elements_enumerate_maps_lexicographically() {
        let h = internal_hom(&set(3), &set(3)).unwrap();
        let mut expected: Vec<Vec<usize>> = all_maps(&set(3), &set(3))
            .map(|m| m.table().to_vec())
            .collect();
        expected.sort();
        let decoded: Vec<Vec<usize>> = (1..h.set.size())
            .map(|e| h.decode(e).unwrap().table().to_vec())
            .collect();
        assert_eq!(decoded, expected[1..]);
        for e in 1..h.set.size() {
            assert_eq!(h.encode(&h.decode(e).unwrap()).unwrap(), e);
        }
        assert!(h.decode(0).is_none());
        let constant = PointedMap::constant_point(&set(3), &set(3));
        assert_eq!(h.encode(&constant).unwrap(), 0);
    }

    #[test]
    fn product_and_coproduct_sizes() {
        // 7 smash pairs and point + 2 left-only + 3 right-only
        assert_eq!(7 + 2 + 3, 12);
        assert_eq!(product(&set(3), &set(4)).unwrap().size(), 12);
        assert_eq!(coproduct(&set(3), &set(4)).unwrap().size(), 2 + 3 + 1);
        let i = PointedSet::unit();
        assert!(iso_check(&product(&i, &set(5)).unwrap(), &set(5)));
        assert!(iso_check(&coproduct(&i, &set(5)).unwrap(), &set(5)));
    }

    #[test]
    fn product_encoding_is_a_bijection() {
        for (a, b) in [(3, 4), (1, 3), (2, 1), (4, 4)] {
            let n = product_size(a, b).unwrap();
            let mut seen = vec![false; n];
            for x in 0..a {
                for y in 0..b {
                    let z = product_pair(x, y, a, b);
                    assert!(!seen[z], "collision at {a}x{b}: ({x},{y})");
                    seen[z] = true;
                    assert_eq!(product_unpair(z, a, b), (x, y));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn coproduct_encoding() {
        assert_eq!(coproduct_split(0, 3), Summand::Point);
        assert_eq!(coproduct_split(2, 3), Summand::Left(2));
        assert_eq!(
            coproduct_split(coproduct_in_right(1, 3), 3),
            Summand::Right(1)
        );
        assert_eq!(
            coproduct_split(coproduct_in_right(3, 3), 3),
            Summand::Right(3)
        );
    }

    #[test]
    fn distribution_is_not_an_isomorphism() {
        let two = set(2);
        let lhs = product(&two, &coproduct(&two, &two).unwrap()).unwrap();
        let rhs = coproduct(&product(&two, &two).unwrap(), &product(&two, &two).unwrap()).unwrap();
        assert_eq!(lhs.size(), 6);
        assert_eq!(rhs.size(), 7);
        assert!(!iso_check(&lhs, &rhs));
    }

    #[test]
    fn empty_sets_are_rejected() {
        assert_eq!(PointedSet::new(0), Err(ModelError::EmptySet));
        assert!(iso_check(&set(7), &set(7)));
        assert!(!iso_check(&set(1), &set(2)));
    }
}
