use num_bigint::BigUint;
use rand::RngCore;

use super::{enumeration_guard, FiniteGroup, GroupKind};
use crate::error::{Error, Result};

/// `Z/order` written additively as residues; elements print in decimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclic {
    order: u64,
}

impl Cyclic {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        Ok(Cyclic { order })
    }

    pub fn modulus(&self) -> u64 {
        self.order
    }
}

impl FiniteGroup for Cyclic {
    type Elem = u64;

    fn kind(&self) -> GroupKind {
        GroupKind::Cyclic
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.order)
    }

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.order as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.order - a) % self.order
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.order
    }

    fn elements(&self) -> Result<Vec<u64>> {
        let n = enumeration_guard(self)?;
        Ok((0..n).collect())
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.order
    }

    fn generators(&self) -> Option<Vec<u64>> {
        Some(if self.order > 1 { vec![1] } else { vec![] })
    }

    fn analytic_max_centralizer(&self) -> Option<Result<BigUint>> {
        Some(Ok(if self.order == 1 {
            BigUint::from(0u8)
        } else {
            self.order()
        }))
    }

    fn format_element(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_element(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        let v: u64 = t
            .parse()
            .map_err(|_| Error::parse(0, format!("bad residue `{t}`")))?;
        if !self.contains(&v) {
            return Err(Error::GroupMismatch(self.describe()));
        }
        Ok(v)
    }

    fn centralizer_order(&self, _s: &u64) -> Option<BigUint> {
        Some(self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{check_group_axioms, CheckMode};

    #[test]
    fn z4() {
        let g = Cyclic::new(4).unwrap();
        assert_eq!(g.mul(&3, &3), 2);
        assert_eq!(g.inv(&1), 3);
        assert_eq!(g.inv(&0), 0);
        assert!(check_group_axioms(&g, CheckMode::Exhaustive, 0)
            .unwrap()
            .passed());
        assert!(g.parse_element("4").is_err());
    }
}
