use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Checked product: both factors must be well-formed elements of `g`.
pub fn multiply<G: FiniteGroup + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<G::Elem> {
    if !g.contains(a) || !g.contains(b) {
        return Err(Error::GroupMismatch(g.describe()));
    }
    Ok(g.mul(a, b))
}

/// `[a, b] = a⁻¹·b⁻¹·a·b`.
pub fn commutator<G: FiniteGroup + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> G::Elem {
    let ai = g.inv(a);
    let bi = g.inv(b);
    g.mul(&g.mul(&g.mul(&ai, &bi), a), b)
}

pub fn checked_commutator<G: FiniteGroup + ?Sized>(
    g: &G,
    a: &G::Elem,
    b: &G::Elem,
) -> Result<G::Elem> {
    if !g.contains(a) || !g.contains(b) {
        return Err(Error::GroupMismatch(g.describe()));
    }
    Ok(commutator(g, a, b))
}

pub fn commutes<G: FiniteGroup + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> bool {
    g.mul(a, b) == g.mul(b, a)
}

/// `g_I = ∏_{i ∈ I} seq[i]` in increasing index order; the empty product is `e`.
pub fn product_over<G: FiniteGroup + ?Sized>(g: &G, seq: &[G::Elem], mask: u64) -> Result<G::Elem> {
    let mut acc = g.identity();
    for i in crate::bits::indices(mask) {
        let y = seq.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: seq.len(),
        })?;
        acc = g.mul(&acc, y);
    }
    Ok(acc)
}

/// Order of `a` as an element, by repeated multiplication up to `limit`.
pub fn element_order<G: FiniteGroup + ?Sized>(g: &G, a: &G::Elem, limit: u64) -> Option<u64> {
    let e = g.identity();
    let mut cur = a.clone();
    for k in 1..=limit {
        if cur == e {
            return Some(k);
        }
        cur = g.mul(&cur, a);
    }
    None
}

/// `|{t ∈ G : [s, t] = e}|`.
///
/// Realizations with an analytic formula (the cycle-type formula for
/// symmetric groups) use it; everything else is counted by enumeration.
pub fn centralizer_count<G: FiniteGroup + ?Sized>(g: &G, s: &G::Elem) -> Result<BigUint> {
    if !g.contains(s) {
        return Err(Error::GroupMismatch(g.describe()));
    }
    if let Some(c) = g.centralizer_order(s) {
        return Ok(c);
    }
    centralizer_count_enumerated(g, s).map(BigUint::from)
}

/// Centralizer order by scanning every element, split across workers.
pub fn centralizer_count_enumerated<G: FiniteGroup + ?Sized>(g: &G, s: &G::Elem) -> Result<u64> {
    let els = g.elements()?;
    Ok(centralizer_count_in(g, &els, s))
}

/// As [`centralizer_count_enumerated`] with a pre-enumerated element list.
pub fn centralizer_count_in<G: FiniteGroup + ?Sized>(g: &G, els: &[G::Elem], s: &G::Elem) -> u64 {
    els.par_iter().filter(|t| commutes(g, s, t)).count() as u64
}

/// Upper limit on `|G|²` for the pairwise centralizer scan used when no
/// generating set is known.
pub const PAIRWISE_CENTRALIZER_CAP: u64 = 1 << 28;

/// Conjugacy class sizes, via orbits of conjugation by a generating set.
pub fn class_sizes<G: FiniteGroup + ?Sized>(
    g: &G,
    gens: &[G::Elem],
) -> Result<Vec<(G::Elem, u64)>> {
    let els = g.elements()?;
    let index: HashMap<&G::Elem, usize> = els.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let inv: Vec<G::Elem> = gens.iter().map(|h| g.inv(h)).collect();
    let mut seen = vec![false; els.len()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..els.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0u64;
        while let Some(i) = stack.pop() {
            size += 1;
            for (h, hi) in gens.iter().zip(&inv) {
                let c = g.mul(&g.mul(hi, &els[i]), h);
                let j = *index
                    .get(&c)
                    .ok_or_else(|| Error::Invalid("conjugate outside the enumeration".into()))?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push((els[start].clone(), size));
    }
    Ok(out)
}

/// `max_{s ≠ e} |C_G(s)|`, or 0 for the trivial group.
///
/// Uses the realization's closed form when it has one, then conjugacy-class
/// orbits under a generating set (`|C(s)| = |G| / |s^G|`), then a pairwise scan.
pub fn max_nontrivial_centralizer<G: FiniteGroup + ?Sized>(g: &G) -> Result<BigUint> {
    if let Some(r) = g.analytic_max_centralizer() {
        return r;
    }
    let order = g.order();
    let e = g.identity();
    if let Some(gens) = g.generators() {
        let classes = class_sizes(g, &gens)?;
        let smallest = classes
            .iter()
            .filter(|(x, _)| *x != e)
            .map(|(_, n)| *n)
            .min();
        return Ok(smallest.map_or(BigUint::from(0u8), |n| &order / n));
    }
    if order.pow(2) > BigUint::from(PAIRWISE_CENTRALIZER_CAP) {
        return Err(Error::too_large(
            "pairwise centralizer scan |G|^2",
            order.pow(2),
            PAIRWISE_CENTRALIZER_CAP,
        ));
    }
    let els = g.elements()?;
    Ok(BigUint::from(
        els.iter()
            .filter(|s| **s != e)
            .map(|s| centralizer_count_in(g, &els, s))
            .max()
            .unwrap_or(0),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub elements_checked: u64,
    pub triples_checked: u64,
    pub identity_failures: u64,
    pub inverse_failures: u64,
    pub associativity_failures: u64,
    pub enumeration_matches_order: Option<bool>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0
            && self.inverse_failures == 0
            && self.associativity_failures == 0
            && self.enumeration_matches_order != Some(false)
    }
}

/// Identity, inverse and associativity laws, exhaustive over all triples or
/// on `samples` seeded random triples.
pub fn check_group_axioms<G: FiniteGroup + ?Sized>(
    g: &G,
    mode: CheckMode,
    seed: u64,
) -> Result<AxiomReport> {
    let e = g.identity();
    let mut report = AxiomReport::default();
    match mode {
        CheckMode::Exhaustive => {
            let els = g.elements()?;
            report.enumeration_matches_order = Some(BigUint::from(els.len()) == g.order());
            report.elements_checked = els.len() as u64;
            for x in &els {
                if g.mul(&e, x) != *x || g.mul(x, &e) != *x {
                    report.identity_failures += 1;
                }
                if g.mul(x, &g.inv(x)) != e || g.mul(&g.inv(x), x) != e {
                    report.inverse_failures += 1;
                }
            }
            let failures: u64 = els
                .par_iter()
                .map(|a| {
                    let mut bad = 0;
                    for b in &els {
                        let ab = g.mul(a, b);
                        for c in &els {
                            if g.mul(&ab, c) != g.mul(a, &g.mul(b, c)) {
                                bad += 1;
                            }
                        }
                    }
                    bad
                })
                .sum();
            report.associativity_failures = failures;
            report.triples_checked = (els.len() as u64).pow(3);
        }
        CheckMode::Sampled(samples) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let a = g.random_element(&mut rng);
                let b = g.random_element(&mut rng);
                let c = g.random_element(&mut rng);
                if g.mul(&e, &a) != a || g.mul(&a, &e) != a {
                    report.identity_failures += 1;
                }
                if g.mul(&a, &g.inv(&a)) != e {
                    report.inverse_failures += 1;
                }
                if g.mul(&g.mul(&a, &b), &c) != g.mul(&a, &g.mul(&b, &c)) {
                    report.associativity_failures += 1;
                }
            }
            report.elements_checked = samples;
            report.triples_checked = samples;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ElementaryAbelian2, Perm, Symmetric};

    #[test]
    fn class_orbits_match_pairwise_scan() {
        let s = Symmetric::new(5).unwrap();
        let classes = class_sizes(&s, &s.generators().unwrap()).unwrap();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.1).sum::<u64>(), 120);
        let els = s.elements().unwrap();
        for (x, size) in &classes {
            assert_eq!(centralizer_count_in(&s, &els, x) * size, 120);
        }
        assert_eq!(
            max_nontrivial_centralizer(&s).unwrap(),
            BigUint::from(12u32)
        );
        let sd = crate::cr::toys::named_semidirect("sd512").unwrap();
        let g1 = sd.g1();
        let els = g1.elements().unwrap();
        let e = g1.identity();
        let scan = els
            .iter()
            .filter(|x| **x != e)
            .map(|x| centralizer_count_in(g1, &els, x))
            .max()
            .unwrap();
        assert_eq!(max_nontrivial_centralizer(g1).unwrap(), BigUint::from(scan));
    }

    #[test]
    fn commutator_trivial_cases() {
        let s = Symmetric::new(4).unwrap();
        for x in s.elements().unwrap() {
            assert_eq!(commutator(&s, &s.identity(), &x), s.identity());
            assert_eq!(commutator(&s, &x, &x), s.identity());
        }
    }

    #[test]
    fn commutator_convention() {
        let s = Symmetric::new(3).unwrap();
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let expected = s.mul(&s.mul(&s.mul(&s.inv(&a), &s.inv(&b)), &a), &b);
        assert_eq!(commutator(&s, &a, &b), expected);
        assert_ne!(commutator(&s, &a, &b), s.identity());
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let g = ElementaryAbelian2::new(2).unwrap();
        assert!(multiply(&g, &0b100, &0b1).is_err());
        assert_eq!(multiply(&g, &0b10, &0b11).unwrap(), 0b01);
        let s = Symmetric::new(3).unwrap();
        assert!(checked_commutator(&s, &Perm::identity(4), &Perm::identity(3)).is_err());
    }

    #[test]
    fn indexed_products() {
        let g = ElementaryAbelian2::new(3).unwrap();
        let basis: Vec<u64> = (0..3).map(|i| g.basis(i).unwrap()).collect();
        assert_eq!(product_over(&g, &basis, 0).unwrap(), 0);
        assert_eq!(product_over(&g, &basis, 0b101).unwrap(), 0b101);
        assert_eq!(product_over(&g, &basis, 0b010).unwrap(), basis[1]);
        assert!(product_over(&g, &basis, 0b1000).is_err());
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let s = Symmetric::new(4).unwrap();
        assert_eq!(
            centralizer_count(&s, &s.identity()).unwrap(),
            BigUint::from(24u32)
        );
        let g = ElementaryAbelian2::new(3).unwrap();
        assert_eq!(centralizer_count(&g, &5).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn centralizer_formula_matches_enumeration_up_to_six() {
        for n in 1..=6 {
            let s = Symmetric::new(n).unwrap();
            let els = s.elements().unwrap();
            for x in &els {
                let formula = s.centralizer_order(x).unwrap();
                assert_eq!(formula, BigUint::from(centralizer_count_in(&s, &els, x)));
            }
        }
    }

    #[test]
    fn element_orders() {
        let s = Symmetric::new(5).unwrap();
        let p = Perm::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(element_order(&s, &p, 100), Some(6));
    }

    #[test]
    fn sampled_axioms() {
        let s = Symmetric::new(9).unwrap();
        let r = check_group_axioms(&s, CheckMode::Sampled(500), 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.triples_checked, 500);
    }
}
