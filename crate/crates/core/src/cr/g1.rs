use std::collections::BTreeMap;

use crate::bits::{format_mask, k_subsets, parse_mask};
use crate::error::{Error, Result};
use crate::group::file::{read_named_elements, GroupFile, GroupIo};
use crate::group::{FiniteGroup, Gf2Matrix, Perm, RegularRepresentation, Semidirect, Symmetric};

use super::pi::build_pi;

/// A candidate CR triple `(G, ȳ, z̄)` for shape `(n, m)`: `ȳ = (y_i : i < n)`
/// and `z̄ = (z_I : I ∈ [n]ᵐ)` keyed by index mask.
#[derive(Clone, Debug)]
pub struct CrWitness<G: FiniteGroup> {
    pub group: G,
    pub n: usize,
    pub m: usize,
    pub y: Vec<G::Elem>,
    pub z: BTreeMap<u64, G::Elem>,
}

impl<G: FiniteGroup> CrWitness<G> {
    pub fn y_of(&self, mask: u64) -> Result<G::Elem> {
        crate::group::product_over(&self.group, &self.y, mask)
    }

    pub fn z_of(&self, mask: u64) -> Option<&G::Elem> {
        self.z.get(&mask)
    }

    /// The same triple pushed through the left-regular embedding into `Sym(|G|)`.
    pub fn embed_regular(&self, cap: usize) -> Result<CrWitness<Symmetric>> {
        let rep = RegularRepresentation::new(&self.group, cap)?;
        let y = self
            .y
            .iter()
            .map(|e| rep.image(e))
            .collect::<Result<Vec<Perm>>>()?;
        let z = self
            .z
            .iter()
            .map(|(k, e)| Ok((*k, rep.image(e)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(CrWitness {
            group: rep.symmetric_group().clone(),
            n: self.n,
            m: self.m,
            y,
            z,
        })
    }
}

impl<G: FiniteGroup + GroupIo> CrWitness<G> {
    pub fn to_group_file(&self) -> GroupFile {
        let mut f = self.group.to_group_file();
        f.push("cr.n", self.n);
        f.push("cr.m", self.m);
        for (i, y) in self.y.iter().enumerate() {
            f.push(format!("y.{i}"), self.group.format_element(y));
        }
        for (mask, z) in &self.z {
            f.push(
                format!("z.{}", format_mask(*mask)),
                self.group.format_element(z),
            );
        }
        f
    }

    pub fn from_group_file(file: &GroupFile) -> Result<Self> {
        let group = G::from_group_file(file)?;
        let n = file.require_usize("cr.n")?;
        let m = file.require_usize("cr.m")?;
        let mut y = vec![None; n];
        for (label, e) in read_named_elements(&group, file, "y")? {
            let i: usize = label
                .parse()
                .map_err(|_| Error::Invalid(format!("bad y label `{label}`")))?;
            let slot = y
                .get_mut(i)
                .ok_or(Error::IndexOutOfRange { index: i, len: n })?;
            *slot = Some(e);
        }
        let y = y
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::Invalid(format!("missing y.{i}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut z = BTreeMap::new();
        for (label, e) in read_named_elements(&group, file, "z")? {
            z.insert(parse_mask(&label, n)?, e);
        }
        Ok(CrWitness { group, n, m, y, z })
    }
}

/// `G₁ = G₀ ⋊ H` with `G₀ = (Z/2)^{2n}` and `H` the closure of
/// `{π_I : I ∈ [n]ᵐ}`; `y_i ↦ (id, e_i)` and `z_I ↦ (π_I, 0)`.
pub fn build_g1(n: usize, m: usize, cap: usize) -> Result<CrWitness<Semidirect>> {
    if n == 0 || m == 0 || m > n || 2 * n > crate::group::gf2::MAX_DIM {
        return Err(Error::Invalid(format!("invalid shape n={n}, m={m}")));
    }
    let subsets = k_subsets(n, m);
    let pis: Vec<(u64, Gf2Matrix)> = subsets
        .iter()
        .map(|&s| Ok((s, build_pi(n, s)?.into_matrix())))
        .collect::<Result<_>>()?;
    let mut gens: Vec<Gf2Matrix> = Vec::new();
    for (_, p) in &pis {
        if !gens.contains(p) {
            gens.push(p.clone());
        }
    }
    let group = Semidirect::new(2 * n, gens, cap)?;
    let y = (0..n).map(|i| group.vector(1u64 << i)).collect();
    let z = pis
        .iter()
        .map(|(s, p)| Ok((*s, group.acting_by(p)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CrWitness { group, n, m, y, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::commutator;
    use num_bigint::BigUint;

    #[test]
    fn n1_m1() {
        let w = build_g1(1, 1, 1000).unwrap();
        let h = w.group.automorphism_count();
        assert_eq!(w.group.order(), BigUint::from(4 * h));
    }

    #[test]
    fn conjugating_y_by_z_applies_pi() {
        let w = build_g1(3, 1, 1_000_000).unwrap();
        let g = &w.group;
        for (&mask, z) in &w.z {
            let pi = build_pi(3, mask).unwrap();
            for i in 0..3 {
                let conj = g.mul(&g.mul(&g.inv(z), &w.y[i]), z);
                assert_eq!(conj, g.vector(pi.apply(1 << i)));
            }
        }
    }

    #[test]
    fn commutation_criterion() {
        let w = build_g1(3, 1, 1_000_000).unwrap();
        for i in 0..8u64 {
            for (&j, z) in &w.z {
                let c = commutator(&w.group, &w.y_of(i).unwrap(), z);
                assert_eq!(c == w.group.identity(), i == 0 || i == j);
            }
        }
    }

    #[test]
    fn witness_file_round_trip() {
        let w = build_g1(2, 1, 10_000).unwrap();
        let back = CrWitness::<Semidirect>::from_group_file(&w.to_group_file()).unwrap();
        assert_eq!(back.y, w.y);
        assert_eq!(back.z, w.z);
        assert_eq!(back.group.order(), w.group.order());
    }
}
