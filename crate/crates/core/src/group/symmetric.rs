use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::RngCore;

use super::{enumeration_guard, FiniteGroup, GroupKind};
use crate::error::{Error, Result};

/// A permutation of `[0, degree)` in one-line notation: `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut p: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::IndexOutOfRange {
                        index: a.max(b) as usize,
                        len: degree,
                    });
                }
                if moved[a as usize] {
                    return Err(Error::Invalid(format!("point {a} repeated in cycles")));
                }
                moved[a as usize] = true;
                p[a as usize] = b;
            }
        }
        Ok(Perm(p))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            r[p as usize] = i as u32;
        }
        Perm(r)
    }

    /// Cycles of length ≥ 2, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut cur = self.0[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur as u32);
                cur = self.0[cur] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// `counts[j]` is the number of `j`-cycles, fixed points included as 1-cycles.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        let moved: usize = self.cycles().iter().map(|c| c.len()).sum();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        let fixed = self.0.len() - moved;
        if fixed > 0 {
            counts.insert(1, fixed);
        }
        counts
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        let mut cycles = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            match bytes[pos] {
                b' ' | b'\t' => pos += 1,
                b'(' => {
                    let close = text[pos..]
                        .find(')')
                        .map(|o| pos + o)
                        .ok_or_else(|| Error::parse(pos, "unclosed cycle"))?;
                    let body = &text[pos + 1..close];
                    let points = body
                        .split([' ', ','])
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<u32>()
                                .map_err(|_| Error::parse(pos, format!("bad point `{s}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if !points.is_empty() {
                        cycles.push(points);
                    }
                    pos = close + 1;
                }
                _ => return Err(Error::parse(pos, "expected `(`")),
            }
        }
        Perm::from_cycles(degree, &cycles)
    }
}

/// `∏_j j^{c_j} · c_j!` for a cycle type with `c_j` cycles of length `j`.
pub fn centralizer_order_from_cycle_type(cycle_type: &BTreeMap<usize, usize>) -> BigUint {
    let mut total = BigUint::from(1u8);
    for (&len, &count) in cycle_type {
        total *= BigUint::from(len).pow(count as u32);
        total *= factorial(count);
    }
    total
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u8), |acc, k| acc * BigUint::from(k))
}

/// Partitions of `n` as cycle-type maps, each a multiset of part sizes.
pub fn partitions(n: usize) -> Vec<BTreeMap<usize, usize>> {
    fn go(
        rest: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        if rest == 0 {
            let mut m = BTreeMap::new();
            for &p in cur.iter() {
                *m.entry(p).or_insert(0) += 1;
            }
            out.push(m);
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The symmetric group on `[0, degree)`; multiplication is composition
/// `(a·b)(i) = a(b(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetric {
    degree: usize,
}

/// Largest degree whose partitions we enumerate for analytic maxima.
pub const PARTITION_DEGREE_CAP: usize = 60;

impl Symmetric {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > u32::MAX as usize {
            return Err(Error::too_large("degree", degree, u32::MAX));
        }
        Ok(Symmetric { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `max_{s ≠ e} |C(s)|` via the cycle-type formula over all partitions.
    pub fn max_nontrivial_centralizer(&self) -> Result<BigUint> {
        if self.degree < 2 {
            return Ok(BigUint::from(0u8));
        }
        if self.degree > PARTITION_DEGREE_CAP {
            // For degree ≥ 5 the transpositions form the smallest nontrivial
            // class; the tests confirm the closed form against the partition
            // scan up to the cap.
            return Ok(BigUint::from(2u8) * factorial(self.degree - 2));
        }
        Ok(partitions(self.degree)
            .iter()
            .filter(|ct| ct.get(&1) != Some(&self.degree))
            .map(centralizer_order_from_cycle_type)
            .max()
            .expect("degree ≥ 2 has a nontrivial class"))
    }
}

impl FiniteGroup for Symmetric {
    type Elem = Perm;

    fn kind(&self) -> GroupKind {
        GroupKind::Symmetric
    }

    fn order(&self) -> BigUint {
        factorial(self.degree)
    }

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }

    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }

    fn contains(&self, a: &Perm) -> bool {
        a.degree() == self.degree
    }

    /// Lexicographic order of one-line notation.
    fn elements(&self) -> Result<Vec<Perm>> {
        enumeration_guard(self)?;
        let mut cur: Vec<u32> = (0..self.degree as u32).collect();
        let mut out = vec![Perm(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Perm(cur.clone()));
        }
        Ok(out)
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> Perm {
        let mut v: Vec<u32> = (0..self.degree as u32).collect();
        v.shuffle(rng);
        Perm(v)
    }

    fn generators(&self) -> Option<Vec<Perm>> {
        if self.degree < 2 {
            return Some(vec![]);
        }
        let swap = Perm::from_cycles(self.degree, &[vec![0, 1]]).expect("valid transposition");
        let cycle: Vec<u32> = (0..self.degree as u32).collect();
        let long = Perm::from_cycles(self.degree, &[cycle]).expect("valid cycle");
        Some(vec![swap, long])
    }

    fn analytic_max_centralizer(&self) -> Option<Result<BigUint>> {
        Some(self.max_nontrivial_centralizer())
    }

    fn format_element(&self, a: &Perm) -> String {
        a.cycle_notation()
    }

    fn parse_element(&self, text: &str) -> Result<Perm> {
        Perm::parse_cycles(self.degree, text)
    }

    fn centralizer_order(&self, s: &Perm) -> Option<BigUint> {
        Some(centralizer_order_from_cycle_type(&s.cycle_type()))
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_n_factorial() {
        let s = Symmetric::new(4).unwrap();
        let els = s.elements().unwrap();
        assert_eq!(els.len(), 24);
        assert_eq!(els[0], s.identity());
        let mut sorted = els.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::from_cycles(6, &[vec![0, 3, 1], vec![4, 5]]).unwrap();
        assert_eq!(p.cycle_notation(), "(0 3 1)(4 5)");
        assert_eq!(Perm::parse_cycles(6, "(0 3 1)(4 5)").unwrap(), p);
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
        assert!(Perm::parse_cycles(3, "(0 3)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
    }

    #[test]
    fn composition_applies_right_first() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn cycle_type_formula_small_cases() {
        let s5 = Symmetric::new(5).unwrap();
        let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        assert_eq!(s5.centralizer_order(&t).unwrap(), BigUint::from(12u32));
        let c5 = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(s5.centralizer_order(&c5).unwrap(), BigUint::from(5u32));
        assert_eq!(
            s5.centralizer_order(&s5.identity()).unwrap(),
            BigUint::from(120u32)
        );
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn max_centralizer_is_transposition_class() {
        // 2·(N−2)! for N ≥ 4
        let s = Symmetric::new(7).unwrap();
        assert_eq!(
            s.max_nontrivial_centralizer().unwrap(),
            BigUint::from(240u32)
        );
    }

    #[test]
    fn transposition_closed_form_up_to_cap() {
        for n in 5..=PARTITION_DEGREE_CAP {
            let s = Symmetric::new(n).unwrap();
            assert_eq!(
                s.max_nontrivial_centralizer().unwrap(),
                BigUint::from(2u8) * factorial(n - 2),
                "degree {n}"
            );
        }
        let big = Symmetric::new(3840).unwrap();
        assert_eq!(
            big.max_nontrivial_centralizer().unwrap(),
            BigUint::from(2u8) * factorial(3838)
        );
    }
}
