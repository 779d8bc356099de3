use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use rand::RngCore;

use super::gf2::Gf2Matrix;
use super::{enumeration_guard, FiniteGroup, GroupKind};
use crate::bits::full_mask;
use crate::error::{Error, Result};

/// Element `h·v` of `G₀ ⋊ H` with `h ∈ H` (by index) and `v ∈ G₀`.
///
/// The automorphism stored for `h` is the conjugation action
/// `v ↦ h⁻¹·v·h`, so `(h, v)·(k, w) = (hk, M_k(v) + w)` with
/// `M_{hk} = M_k ∘ M_h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdElem {
    pub auto: u32,
    pub vec: u64,
}

/// Multiplication tables are precomputed when `|H|` is at most this.
const TABLE_CAP: usize = 1024;

/// `G₀ ⋊ H` where `G₀ = (Z/2)^dim` and `H ≤ GL(dim, 2)` is the closure of a
/// generating set, computed breadth-first in a deterministic order.
#[derive(Clone, Debug)]
pub struct Semidirect {
    dim: usize,
    generators: Vec<Gf2Matrix>,
    autos: Vec<Gf2Matrix>,
    index: HashMap<Gf2Matrix, u32>,
    inverse_index: Vec<u32>,
    // table[h * |H| + k] = index of M_k ∘ M_h, when small
    table: Option<Vec<u32>>,
}

impl Semidirect {
    pub fn new(dim: usize, generators: Vec<Gf2Matrix>, cap: usize) -> Result<Self> {
        if dim > super::gf2::MAX_DIM {
            return Err(Error::too_large("dimension", dim, super::gf2::MAX_DIM));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::Invalid(format!(
                    "generator of dimension {} in semidirect product of dimension {dim}",
                    g.dim()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::Invalid("generator is not invertible".into()));
            }
        }
        let id = Gf2Matrix::identity(dim);
        let mut autos = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in &generators {
                let next = g.compose(&autos[cur]);
                if index.contains_key(&next) {
                    continue;
                }
                if autos.len() >= cap {
                    return Err(Error::ClosureExceeded {
                        reached: autos.len(),
                        cap,
                    });
                }
                index.insert(next.clone(), autos.len() as u32);
                queue.push_back(autos.len());
                autos.push(next);
            }
        }
        let inverse_index = autos
            .iter()
            .map(|m| index[&m.inverse().expect("closure of invertible maps")])
            .collect();
        let table = (autos.len() <= TABLE_CAP).then(|| {
            let h = autos.len();
            let mut t = vec![0u32; h * h];
            for a in 0..h {
                for b in 0..h {
                    t[a * h + b] = index[&autos[b].compose(&autos[a])];
                }
            }
            t
        });
        Ok(Semidirect {
            dim,
            generators,
            autos,
            index,
            inverse_index,
            table,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn automorphism_generators(&self) -> &[Gf2Matrix] {
        &self.generators
    }

    /// `|H|`.
    pub fn automorphism_count(&self) -> usize {
        self.autos.len()
    }

    pub fn automorphism(&self, h: u32) -> &Gf2Matrix {
        &self.autos[h as usize]
    }

    pub fn automorphism_index(&self, m: &Gf2Matrix) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// The element `(id, v)` of the normal subgroup `G₀`.
    pub fn vector(&self, v: u64) -> SdElem {
        SdElem { auto: 0, vec: v }
    }

    /// The element `(h, 0)` acting by `m` under conjugation.
    pub fn acting_by(&self, m: &Gf2Matrix) -> Result<SdElem> {
        let auto = self
            .automorphism_index(m)
            .ok_or_else(|| Error::Invalid("automorphism not in the closure".into()))?;
        Ok(SdElem { auto, vec: 0 })
    }

    fn compose_index(&self, h: u32, k: u32) -> u32 {
        match &self.table {
            Some(t) => t[h as usize * self.autos.len() + k as usize],
            None => self.index[&self.autos[k as usize].compose(&self.autos[h as usize])],
        }
    }
}

impl FiniteGroup for Semidirect {
    type Elem = SdElem;

    fn kind(&self) -> GroupKind {
        GroupKind::Semidirect
    }

    fn order(&self) -> BigUint {
        (BigUint::from(1u8) << self.dim) * BigUint::from(self.autos.len())
    }

    fn identity(&self) -> SdElem {
        SdElem { auto: 0, vec: 0 }
    }

    fn mul(&self, a: &SdElem, b: &SdElem) -> SdElem {
        SdElem {
            auto: self.compose_index(a.auto, b.auto),
            vec: self.autos[b.auto as usize].apply(a.vec) ^ b.vec,
        }
    }

    fn inv(&self, a: &SdElem) -> SdElem {
        let inv = self.inverse_index[a.auto as usize];
        SdElem {
            auto: inv,
            vec: self.autos[inv as usize].apply(a.vec),
        }
    }

    fn contains(&self, a: &SdElem) -> bool {
        (a.auto as usize) < self.autos.len() && a.vec & !full_mask(self.dim) == 0
    }

    fn elements(&self) -> Result<Vec<SdElem>> {
        enumeration_guard(self)?;
        let mut out = Vec::new();
        for auto in 0..self.autos.len() as u32 {
            for vec in 0..(1u64 << self.dim) {
                out.push(SdElem { auto, vec });
            }
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> SdElem {
        SdElem {
            auto: (rng.next_u64() % self.autos.len() as u64) as u32,
            vec: rng.next_u64() & full_mask(self.dim),
        }
    }

    /// `h:v` with `h` the closure index and `v` in hex.
    fn generators(&self) -> Option<Vec<SdElem>> {
        let mut gens: Vec<SdElem> = (0..self.dim).map(|i| self.vector(1u64 << i)).collect();
        for m in self.automorphism_generators() {
            gens.push(self.acting_by(m).expect("generator lies in the closure"));
        }
        Some(gens)
    }

    fn format_element(&self, a: &SdElem) -> String {
        format!(
            "{}:{:0width$x}",
            a.auto,
            a.vec,
            width = self.dim.div_ceil(4).max(1)
        )
    }

    fn parse_element(&self, text: &str) -> Result<SdElem> {
        let t = text.trim();
        let (h, v) = t
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("expected `h:v`, got `{t}`")))?;
        let auto: u32 = h
            .parse()
            .map_err(|_| Error::parse(0, format!("bad automorphism index `{h}`")))?;
        let vec = u64::from_str_radix(v, 16)
            .map_err(|_| Error::parse(h.len() + 1, format!("bad hex vector `{v}`")))?;
        let e = SdElem { auto, vec };
        if !self.contains(&e) {
            return Err(Error::GroupMismatch(self.describe()));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::commutator;

    fn swap01(dim: usize) -> Gf2Matrix {
        let mut cols: Vec<u64> = (0..dim).map(|j| 1u64 << j).collect();
        cols.swap(0, 1);
        Gf2Matrix::from_columns(dim, cols).unwrap()
    }

    #[test]
    fn closure_of_a_swap_has_two_elements() {
        let g = Semidirect::new(3, vec![swap01(3)], 100).unwrap();
        assert_eq!(g.automorphism_count(), 2);
        assert_eq!(g.order(), BigUint::from(16u32));
    }

    #[test]
    fn conjugation_acts_by_the_automorphism() {
        let m = swap01(3);
        let g = Semidirect::new(3, vec![m.clone()], 100).unwrap();
        let z = g.acting_by(&m).unwrap();
        let y = g.vector(0b001);
        let conj = g.mul(&g.mul(&g.inv(&z), &y), &z);
        assert_eq!(conj, g.vector(m.apply(0b001)));
        // [y, z] = y + π(y) inside G₀
        assert_eq!(commutator(&g, &y, &z), g.vector(0b011));
    }

    #[test]
    fn closure_cap_is_reported() {
        let cycle = Gf2Matrix::from_columns(4, vec![2, 4, 8, 1]).unwrap();
        let err = Semidirect::new(4, vec![cycle, swap01(4)], 5).unwrap_err();
        assert!(matches!(err, Error::ClosureExceeded { cap: 5, .. }));
    }

    #[test]
    fn group_axioms_hold_exhaustively() {
        let cycle = Gf2Matrix::from_columns(3, vec![2, 4, 1]).unwrap();
        let g = Semidirect::new(3, vec![cycle, swap01(3)], 100).unwrap();
        assert_eq!(g.automorphism_count(), 6);
        let report =
            crate::group::check_group_axioms(&g, crate::group::CheckMode::Exhaustive, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn element_text() {
        let g = Semidirect::new(5, vec![swap01(5)], 10).unwrap();
        let e = SdElem { auto: 1, vec: 0x13 };
        assert_eq!(g.format_element(&e), "1:13");
        assert_eq!(g.parse_element("1:13").unwrap(), e);
        assert!(g.parse_element("2:13").is_err());
        assert!(g.parse_element("113").is_err());
    }
}
