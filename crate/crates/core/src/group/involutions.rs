use std::collections::HashSet;

use super::{commutes, product_over, FiniteGroup};
use crate::error::{Error, Result};

/// Largest sequence length whose generated subgroup we enumerate (`2^n` products).
pub const MAX_INVOLUTION_SEQUENCE: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvolutionReport {
    pub length: usize,
    /// Indices `i` with `y_i = e` or `y_i² ≠ e`.
    pub not_order_two: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, with `[y_i, y_j] ≠ e`.
    pub not_commuting: Vec<(usize, usize)>,
    /// Number of distinct products `y_I`, `I ⊆ [0, n)`.
    pub generated_order: u64,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.not_order_two.is_empty()
            && self.not_commuting.is_empty()
            && self.generated_order == 1u64 << self.length
    }
}

/// Checks order 2, pairwise commutation and `|⟨ȳ⟩| = 2ⁿ`.
///
/// When the first two hold, `⟨ȳ⟩ = {y_I}` so counting distinct `y_I` gives its order.
pub fn involution_report<G: FiniteGroup + ?Sized>(
    g: &G,
    seq: &[G::Elem],
) -> Result<InvolutionReport> {
    let n = seq.len();
    if n > MAX_INVOLUTION_SEQUENCE {
        return Err(Error::too_large(
            "involution sequence",
            n,
            MAX_INVOLUTION_SEQUENCE,
        ));
    }
    if let Some(bad) = seq.iter().position(|y| !g.contains(y)) {
        return Err(Error::GroupMismatch(format!(
            "{} (entry {bad})",
            g.describe()
        )));
    }
    let e = g.identity();
    let mut report = InvolutionReport {
        length: n,
        ..Default::default()
    };
    for (i, y) in seq.iter().enumerate() {
        if *y == e || g.mul(y, y) != e {
            report.not_order_two.push(i);
        }
        for (j, w) in seq.iter().enumerate().skip(i + 1) {
            if !commutes(g, y, w) {
                report.not_commuting.push((i, j));
            }
        }
    }
    let mut seen = HashSet::new();
    for mask in 0..(1u64 << n) {
        seen.insert(product_over(g, seq, mask)?);
    }
    report.generated_order = seen.len() as u64;
    Ok(report)
}

/// `ȳ = (y_i : i < n)`: pairwise commuting involutions generating a subgroup of order `2ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingInvolutionSequence<E> {
    elems: Vec<E>,
}

impl<E: Clone> CommutingInvolutionSequence<E> {
    pub fn new<G: FiniteGroup<Elem = E> + ?Sized>(g: &G, elems: Vec<E>) -> Result<Self> {
        let report = involution_report(g, &elems)?;
        if !report.passed() {
            return Err(Error::Invalid(format!(
                "not a commuting involution sequence: order-2 failures {:?}, non-commuting pairs {:?}, generated order {} (want {})",
                report.not_order_two,
                report.not_commuting,
                report.generated_order,
                1u64 << report.length
            )));
        }
        Ok(CommutingInvolutionSequence { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<E> {
        self.elems
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ElementaryAbelian2, Perm, Symmetric};

    #[test]
    fn basis_is_a_commuting_involution_sequence() {
        let g = ElementaryAbelian2::new(3).unwrap();
        let seq = CommutingInvolutionSequence::new(&g, vec![1, 2, 4]).unwrap();
        assert_eq!(seq.len(), 3);
    }

    #[test]
    fn dependent_involutions_generate_too_little() {
        let g = ElementaryAbelian2::new(3).unwrap();
        let r = involution_report(&g, &[1, 2, 3]).unwrap();
        assert_eq!(r.generated_order, 4);
        assert!(!r.passed());
    }

    #[test]
    fn noncommuting_transpositions_are_flagged() {
        let s = Symmetric::new(3).unwrap();
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let r = involution_report(&s, &[a, b]).unwrap();
        assert_eq!(r.not_commuting, vec![(0, 1)]);
        assert!(CommutingInvolutionSequence::new(&s, vec![s.identity()]).is_err());
    }
}
