use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::group::{DirectProduct, FiniteGroup};
use crate::ratio::Ratio;

/// The first `L` levels `G*_0 × … × G*_{L−1}` of a profinite product.
#[derive(Clone, Debug)]
pub struct ProductTruncation<G> {
    product: DirectProduct<G>,
}

impl<G: FiniteGroup> ProductTruncation<G> {
    pub fn new(levels: Vec<G>) -> Result<Self> {
        Ok(ProductTruncation {
            product: DirectProduct::new(levels)?,
        })
    }

    pub fn depth(&self) -> usize {
        self.product.levels().len()
    }

    pub fn levels(&self) -> &[G] {
        self.product.levels()
    }

    pub fn level(&self, i: usize) -> &G {
        self.product.level(i)
    }

    pub fn product(&self) -> &DirectProduct<G> {
        &self.product
    }

    pub fn order(&self) -> BigUint {
        self.product.order()
    }

    /// `π_i`
    pub fn project(&self, x: &[G::Elem], i: usize) -> G::Elem {
        self.product.project(x, i)
    }
}

/// `⋂_i π_i⁻¹(B_i)`; `None` stands for the full level.
#[derive(Clone, Debug)]
pub struct CylinderSet<'t, G: FiniteGroup> {
    truncation: &'t ProductTruncation<G>,
    sets: Vec<Option<BTreeSet<G::Elem>>>,
}

impl<'t, G: FiniteGroup> CylinderSet<'t, G> {
    pub fn new(
        truncation: &'t ProductTruncation<G>,
        sets: Vec<Option<Vec<G::Elem>>>,
    ) -> Result<Self> {
        if sets.len() != truncation.depth() {
            return Err(Error::ArityMismatch {
                expected: truncation.depth(),
                got: sets.len(),
            });
        }
        let mut out = Vec::with_capacity(sets.len());
        for (i, s) in sets.into_iter().enumerate() {
            let g = truncation.level(i);
            out.push(match s {
                None => None,
                Some(items) => {
                    if let Some(bad) = items.iter().find(|a| !g.contains(a)) {
                        return Err(Error::GroupMismatch(format!("{bad:?} is not in level {i}")));
                    }
                    Some(items.into_iter().collect())
                }
            });
        }
        Ok(CylinderSet {
            truncation,
            sets: out,
        })
    }

    /// The whole truncated product.
    pub fn full(truncation: &'t ProductTruncation<G>) -> Self {
        CylinderSet {
            truncation,
            sets: vec![None; truncation.depth()],
        }
    }

    pub fn truncation(&self) -> &'t ProductTruncation<G> {
        self.truncation
    }

    pub fn contains(&self, x: &[G::Elem]) -> bool {
        x.len() == self.sets.len()
            && self
                .sets
                .iter()
                .zip(x)
                .enumerate()
                .all(|(i, (s, a))| match s {
                    None => self.truncation.level(i).contains(a),
                    Some(s) => s.contains(a),
                })
    }

    /// `(|B_i|, |G*_i|)` per level.
    pub fn level_sizes(&self) -> Vec<(BigUint, BigUint)> {
        self.sets
            .iter()
            .zip(self.truncation.levels())
            .map(|(s, g)| {
                let order = g.order();
                let size = s
                    .as_ref()
                    .map_or_else(|| order.clone(), |s| BigUint::from(s.len()));
                (size, order)
            })
            .collect()
    }
}

/// `∏ |B_i| / |G*_i|`
pub fn cylinder_measure<G: FiniteGroup>(c: &CylinderSet<'_, G>) -> Ratio {
    let (num, den) = c.level_sizes().into_iter().fold(
        (BigUint::from(1u8), BigUint::from(1u8)),
        |(p, q), (b, g)| (p * b, q * g),
    );
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// `ν = (ν(i) : i < L)`, each `ν(i)` a set of exactly `k_i` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slalom<E> {
    sets: Vec<Vec<E>>,
}

impl<E: Clone + Ord> Slalom<E> {
    /// Rejects repeated points within a level.
    pub fn new(sets: Vec<Vec<E>>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            let distinct: BTreeSet<&E> = s.iter().collect();
            if distinct.len() != s.len() {
                return Err(Error::Invalid(format!("slalom level {i} repeats a point")));
            }
        }
        Ok(Slalom { sets })
    }

    pub fn depth(&self) -> usize {
        self.sets.len()
    }

    pub fn level(&self, i: usize) -> &[E] {
        &self.sets[i]
    }

    pub fn widths(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// `η(i) ∈ ν(i)` for every level `i`.
    pub fn captures(&self, eta: &[E]) -> bool {
        eta.len() == self.sets.len() && self.sets.iter().zip(eta).all(|(s, a)| s.contains(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementaryAbelian2;
    use crate::group::{Perm, Symmetric};
    use crate::ratio::ratio_u64;
    use proptest::prelude::*;

    #[test]
    fn full_and_singleton() {
        let t =
            ProductTruncation::new(vec![Symmetric::new(2).unwrap(), Symmetric::new(3).unwrap()])
                .unwrap();
        assert_eq!(cylinder_measure(&CylinderSet::full(&t)), ratio_u64(1, 1));
        let c = CylinderSet::new(&t, vec![Some(vec![Perm::identity(2)]), None]).unwrap();
        assert_eq!(cylinder_measure(&c), ratio_u64(1, 2));
        assert!(c.contains(&[Perm::identity(2), Perm::identity(3)]));
        assert!(CylinderSet::new(&t, vec![None]).is_err());
        assert!(CylinderSet::new(&t, vec![Some(vec![Perm::identity(3)]), None]).is_err());
    }

    #[test]
    fn slalom_levels_are_sets() {
        assert!(Slalom::new(vec![vec![1, 1]]).is_err());
        let s = Slalom::new(vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(s.widths(), [2, 1]);
        assert!(s.captures(&[2, 1]));
        assert!(!s.captures(&[1, 1]));
    }

    proptest! {
        /// A level-0 split and its complement have measures summing to the rest.
        #[test]
        fn complementary_splits_sum_to_one(mask in 0u64..16, rest in 0u64..8) {
            let t = ProductTruncation::new(vec![
                ElementaryAbelian2::new(4).unwrap(),
                ElementaryAbelian2::new(3).unwrap(),
            ]).unwrap();
            let inside: Vec<u64> = (0..16).filter(|a| mask >> (a % 4) & 1 == 1 && (a ^ rest) % 3 != 0).collect();
            let outside: Vec<u64> = (0..16).filter(|a| !inside.contains(a)).collect();
            let a = CylinderSet::new(&t, vec![Some(inside), None]).unwrap();
            let b = CylinderSet::new(&t, vec![Some(outside), None]).unwrap();
            prop_assert_eq!(cylinder_measure(&a) + cylinder_measure(&b), ratio_u64(1, 1));
            // measure equals the counted fraction of the product
            let els = t.product().elements().unwrap();
            let inside_count = els.iter().filter(|x| a.contains(x)).count() as u64;
            prop_assert_eq!(cylinder_measure(&a), ratio_u64(inside_count, els.len() as u64));
        }
    }
}
