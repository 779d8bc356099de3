use num_bigint::BigUint;
use rand::RngCore;

use super::{enumeration_guard, FiniteGroup, GroupKind};
use crate::error::{Error, Result};

/// `G_0 × … × G_{L−1}` with coordinatewise law.
#[derive(Clone, Debug)]
pub struct DirectProduct<G> {
    levels: Vec<G>,
}

impl<G: FiniteGroup> DirectProduct<G> {
    pub fn new(levels: Vec<G>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid(
                "direct product needs at least one level".into(),
            ));
        }
        Ok(DirectProduct { levels })
    }

    pub fn levels(&self) -> &[G] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &G {
        &self.levels[i]
    }

    /// The `i`-th coordinate projection `π_i`.
    pub fn project(&self, x: &[G::Elem], i: usize) -> G::Elem {
        x[i].clone()
    }
}

impl<G: FiniteGroup> FiniteGroup for DirectProduct<G> {
    type Elem = Vec<G::Elem>;

    fn kind(&self) -> GroupKind {
        GroupKind::DirectProduct
    }

    fn order(&self) -> BigUint {
        self.levels.iter().map(|g| g.order()).product()
    }

    fn identity(&self) -> Self::Elem {
        self.levels.iter().map(|g| g.identity()).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.levels
            .iter()
            .zip(a.iter().zip(b))
            .map(|(g, (x, y))| g.mul(x, y))
            .collect()
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.levels.iter().zip(a).map(|(g, x)| g.inv(x)).collect()
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.len() == self.levels.len() && self.levels.iter().zip(a).all(|(g, x)| g.contains(x))
    }

    /// Lexicographic in the coordinates, last coordinate fastest.
    fn elements(&self) -> Result<Vec<Self::Elem>> {
        enumeration_guard(self)?;
        let per_level = self
            .levels
            .iter()
            .map(|g| g.elements())
            .collect::<Result<Vec<_>>>()?;
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for level in &per_level {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    level.iter().map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x.clone());
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.levels.iter().map(|g| g.random_element(rng)).collect()
    }

    /// Coordinates joined by ` | `.
    fn generators(&self) -> Option<Vec<Self::Elem>> {
        let id = self.identity();
        let mut gens = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            for g in level.generators()? {
                let mut x = id.clone();
                x[i] = g;
                gens.push(x);
            }
        }
        Some(gens)
    }

    fn format_element(&self, a: &Self::Elem) -> String {
        self.levels
            .iter()
            .zip(a)
            .map(|(g, x)| g.format_element(x))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        let parts: Vec<&str> = text.split('|').collect();
        if parts.len() != self.levels.len() {
            return Err(Error::ArityMismatch {
                expected: self.levels.len(),
                got: parts.len(),
            });
        }
        self.levels
            .iter()
            .zip(parts)
            .map(|(g, p)| g.parse_element(p))
            .collect()
    }

    fn centralizer_order(&self, s: &Self::Elem) -> Option<BigUint> {
        self.levels
            .iter()
            .zip(s)
            .map(|(g, x)| g.centralizer_order(x))
            .product()
    }
}
