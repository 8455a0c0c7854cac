use std::fmt;

use super::check::check_maps;
use super::map::{all_maps, PointedMap};
use super::set::{smash, smash_unpair, PointedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The projection `a ⊗ b → a` (or `→ b`): `(x, y) ↦ x`, `∗ ↦ ∗`.
pub fn smash_projection(side: Side, a: &PointedSet, b: &PointedSet) -> PointedMap {
    let dom = smash(a, b).expect("small sets");
    let table = (0..dom.size())
        .map(|z| {
            let (x, y) = smash_unpair(z, b.size());
            match side {
                Side::Left => x,
                Side::Right => y,
            }
        })
        .collect();
    let cod = match side {
        Side::Left => a.clone(),
        Side::Right => b.clone(),
    };
    PointedMap::from_parts(dom, cod, table)
}

/// Maps `f : a → a′`, `g : b → b′` on which the square
/// `proj ∘ (f ⊗ g) = f ∘ proj` fails, and the element where it does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityWitness {
    pub f: PointedMap,
    pub g: PointedMap,
    pub element: usize,
    /// `proj ∘ (f ⊗ g)` at `element`.
    pub lhs: usize,
    /// `f ∘ proj` at `element`.
    pub rhs: usize,
}

impl NaturalityWitness {
    fn sides(f: &PointedMap, g: &PointedMap) -> (PointedMap, PointedMap) {
        let fg = PointedMap::smash(f, g).expect("small sets");
        let lhs = smash_projection(Side::Left, f.cod(), g.cod())
            .after(&fg)
            .expect("composable");
        let rhs = f
            .after(&smash_projection(Side::Left, f.dom(), g.dom()))
            .expect("composable");
        (lhs, rhs)
    }

    /// Recomputes both sides of the square and checks they differ as recorded.
    pub fn verify(&self) -> bool {
        let (lhs, rhs) = NaturalityWitness::sides(&self.f, &self.g);
        matches!(check_maps(&lhs, &rhs), Ok(Some((e, l, r))) if e == self.element && l == self.lhs && r == self.rhs)
    }
}

impl fmt::Display for NaturalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f : {} → {}", self.f.dom().size(), self.f.cod().size())?;
        writeln!(f, "{}", self.f)?;
        writeln!(f, "g : {} → {}", self.g.dom().size(), self.g.cod().size())?;
        writeln!(f, "{}", self.g)?;
        let (x, y) = smash_unpair(self.element, self.g.dom().size());
        write!(
            f,
            "at element {} = ({x}, {y}): proj1 ∘ (f ⊗ g) gives {}, f ∘ proj1 gives {}",
            self.element, self.lhs, self.rhs
        )
    }
}

/// Searches maps between sets of size at most 3 for a non-commuting
/// projection square. The first witness in size order is returned.
pub fn naturality_failure_witness() -> NaturalityWitness {
    let sets: Vec<PointedSet> = (1..=3)
        .map(|n| PointedSet::new(n).expect("non-empty"))
        .collect();
    for a in &sets {
        for a2 in &sets {
            for b in &sets {
                for b2 in &sets {
                    for f in all_maps(a, a2) {
                        for g in all_maps(b, b2) {
                            let (lhs, rhs) = NaturalityWitness::sides(&f, &g);
                            if let Some((element, l, r)) =
                                check_maps(&lhs, &rhs).expect("same shape")
                            {
                                return NaturalityWitness {
                                    f,
                                    g,
                                    element,
                                    lhs: l,
                                    rhs: r,
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    panic!("no non-natural projection square among sets of size at most 3");
}
