use num_bigint::BigUint;
use rand::RngCore;

use super::{enumeration_guard, FiniteGroup, GroupKind};
use crate::bits::full_mask;
use crate::error::{Error, Result};

/// `(Z/2)^dim` with elements packed into a `u64`; the law is XOR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryAbelian2 {
    dim: usize,
}

impl ElementaryAbelian2 {
    pub fn new(dim: usize) -> Result<Self> {
        if dim > super::gf2::MAX_DIM {
            return Err(Error::too_large("dimension", dim, super::gf2::MAX_DIM));
        }
        Ok(ElementaryAbelian2 { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The standard basis vector `e_i`.
    pub fn basis(&self, i: usize) -> Result<u64> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.dim,
            });
        }
        Ok(1 << i)
    }

    fn hex_width(&self) -> usize {
        self.dim.div_ceil(4).max(1)
    }
}

impl FiniteGroup for ElementaryAbelian2 {
    type Elem = u64;

    fn kind(&self) -> GroupKind {
        GroupKind::ElementaryAbelian2
    }

    fn order(&self) -> BigUint {
        BigUint::from(1u8) << self.dim
    }

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }

    fn inv(&self, a: &u64) -> u64 {
        *a
    }

    fn contains(&self, a: &u64) -> bool {
        a & !full_mask(self.dim) == 0
    }

    fn elements(&self) -> Result<Vec<u64>> {
        let n = enumeration_guard(self)?;
        Ok((0..n).collect())
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() & full_mask(self.dim)
    }

    fn generators(&self) -> Option<Vec<u64>> {
        Some((0..self.dim).map(|i| 1u64 << i).collect())
    }

    fn analytic_max_centralizer(&self) -> Option<Result<BigUint>> {
        Some(Ok(if self.dim == 0 {
            BigUint::from(0u8)
        } else {
            self.order()
        }))
    }

    fn format_element(&self, a: &u64) -> String {
        format!("{:0width$x}", a, width = self.hex_width())
    }

    fn parse_element(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        let v = u64::from_str_radix(t, 16)
            .map_err(|_| Error::parse(0, format!("bad hex element `{t}`")))?;
        if !self.contains(&v) {
            return Err(Error::GroupMismatch(self.describe()));
        }
        Ok(v)
    }
}
