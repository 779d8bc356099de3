use std::collections::HashMap;

use super::{FiniteGroup, Perm, Symmetric};
use crate::error::{Error, Result};

pub const DEFAULT_REGULAR_CAP: usize = 5000;

/// Left-regular embedding `g ↦ λ_g` of a finite group into `Sym(|G|)`,
/// where `λ_g(i) = index(g · elements[i])`.
///
/// The ambient symmetric group is never enumerated.
#[derive(Clone, Debug)]
pub struct RegularRepresentation<'a, G: FiniteGroup> {
    group: &'a G,
    sym: Symmetric,
    elements: Vec<G::Elem>,
    index: HashMap<G::Elem, u32>,
}

impl<'a, G: FiniteGroup> RegularRepresentation<'a, G> {
    pub fn new(group: &'a G, cap: usize) -> Result<Self> {
        let order = group.order();
        if order > cap.into() {
            return Err(Error::too_large(
                "regular representation carrier",
                order,
                cap,
            ));
        }
        let elements = group.elements()?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        Ok(RegularRepresentation {
            group,
            sym: Symmetric::new(elements.len())?,
            elements,
            index,
        })
    }

    pub fn symmetric_group(&self) -> &Symmetric {
        &self.sym
    }

    pub fn carrier(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn image(&self, g: &G::Elem) -> Result<Perm> {
        if !self.group.contains(g) {
            return Err(Error::GroupMismatch(self.group.describe()));
        }
        let images = self
            .elements
            .iter()
            .map(|x| self.index[&self.group.mul(g, x)])
            .collect();
        Perm::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutes, ElementaryAbelian2, Gf2Matrix, Semidirect};

    #[test]
    fn cyclic_two_maps_to_transposition() {
        let g = ElementaryAbelian2::new(1).unwrap();
        let rep = RegularRepresentation::new(&g, DEFAULT_REGULAR_CAP).unwrap();
        assert_eq!(rep.symmetric_group().degree(), 2);
        assert_eq!(rep.image(&0).unwrap(), Perm::identity(2));
        assert_eq!(rep.image(&1).unwrap().cycle_notation(), "(0 1)");
    }

    #[test]
    fn klein_four_gives_commuting_involutions() {
        let g = ElementaryAbelian2::new(2).unwrap();
        let rep = RegularRepresentation::new(&g, DEFAULT_REGULAR_CAP).unwrap();
        let sym = rep.symmetric_group();
        let imgs: Vec<Perm> = (0..4).map(|x| rep.image(&x).unwrap()).collect();
        for a in &imgs[1..] {
            assert_eq!(sym.mul(a, a), Perm::identity(4));
            for b in &imgs {
                assert!(commutes(sym, a, b));
            }
        }
    }

    #[test]
    fn homomorphism_and_injective_on_nonabelian() {
        let cycle = Gf2Matrix::from_columns(2, vec![2, 3]).unwrap();
        let g = Semidirect::new(2, vec![cycle], 10).unwrap();
        let rep = RegularRepresentation::new(&g, DEFAULT_REGULAR_CAP).unwrap();
        let els = g.elements().unwrap();
        let imgs: Vec<Perm> = els.iter().map(|x| rep.image(x).unwrap()).collect();
        let mut distinct = imgs.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), els.len());
        for (a, ia) in els.iter().zip(&imgs) {
            for (b, ib) in els.iter().zip(&imgs) {
                assert_eq!(rep.image(&g.mul(a, b)).unwrap(), ia.compose(ib));
            }
        }
    }

    #[test]
    fn carrier_cap() {
        let g = ElementaryAbelian2::new(13).unwrap();
        assert!(RegularRepresentation::new(&g, DEFAULT_REGULAR_CAP).is_err());
    }
}
