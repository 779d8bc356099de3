use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Exact measure of `X_n = {η : ⋁_{n ≤ i < L} η(i) ∈ ν(i)}` and the union bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailMeasure {
    pub from: usize,
    pub measure: Ratio,
    /// `Σ_{i ≥ n} m*_i / m**_i`
    pub bound: Ratio,
}

impl TailMeasure {
    pub fn within_bound(&self) -> bool {
        self.measure <= self.bound
    }
}

/// `1 − ∏_{n ≤ i < L} (1 − m*_i/m**_i)`, with `|ν(i)| = m*_i` points out of `m**_i`.
///
/// Only the widths of `ν` matter, so the slalom is given by them.
pub fn tail_cover_measure(
    sizes: &[BigUint],
    widths: &[BigUint],
    from: usize,
) -> Result<TailMeasure> {
    if sizes.len() != widths.len() {
        return Err(Error::ArityMismatch {
            expected: sizes.len(),
            got: widths.len(),
        });
    }
    if from > sizes.len() {
        return Err(Error::IndexOutOfRange {
            index: from,
            len: sizes.len(),
        });
    }
    let mut miss = Ratio::one();
    let mut bound = Ratio::zero();
    for (i, (size, width)) in sizes.iter().zip(widths).enumerate().skip(from) {
        if size.is_zero() || width > size {
            return Err(Error::Invalid(format!(
                "level {i}: need 0 <= m* <= m** and m** > 0, got m* = {width}, m** = {size}"
            )));
        }
        let p = Ratio::new(BigInt::from(width.clone()), BigInt::from(size.clone()));
        miss *= Ratio::one() - &p;
        bound += p;
    }
    Ok(TailMeasure {
        from,
        measure: Ratio::one() - miss,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio_u64;
    use proptest::prelude::*;

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn five_eighths() {
        let t = tail_cover_measure(&big(&[2, 4]), &big(&[1, 1]), 0).unwrap();
        assert_eq!(t.measure, ratio_u64(5, 8));
        assert_eq!(t.bound, ratio_u64(3, 4));
        assert!(t.within_bound());
    }

    #[test]
    fn empty_disjunction_and_errors() {
        let t = tail_cover_measure(&big(&[2, 4]), &big(&[1, 1]), 2).unwrap();
        assert_eq!(t.measure, ratio_u64(0, 1));
        assert!(tail_cover_measure(&big(&[2]), &big(&[3]), 0).is_err());
        assert!(tail_cover_measure(&big(&[2]), &big(&[1]), 2).is_err());
        assert!(tail_cover_measure(&big(&[2, 3]), &big(&[1]), 0).is_err());
    }

    /// Counts `η ∈ ∏ [m**_i]` hitting `ν(i) = {0, …, m*_i − 1}` at some `i ≥ n`.
    fn enumerate(sizes: &[u64], widths: &[u64], from: usize) -> Ratio {
        let total: u64 = sizes.iter().product();
        let mut hits = 0;
        for code in 0..total {
            let mut c = code;
            let mut hit = false;
            for (i, (&s, &w)) in sizes.iter().zip(widths).enumerate() {
                let eta = c % s;
                c /= s;
                hit |= i >= from && eta < w;
            }
            hits += hit as u64;
        }
        ratio_u64(hits, total)
    }

    proptest! {
        #[test]
        fn matches_enumeration_and_stays_below_bound(
            levels in prop::collection::vec((1u64..6, 0u64..6), 1..5),
            from in 0usize..5,
        ) {
            let sizes: Vec<u64> = levels.iter().map(|l| l.0).collect();
            let widths: Vec<u64> = levels.iter().map(|l| l.1.min(l.0)).collect();
            let from = from.min(sizes.len());
            let t = tail_cover_measure(&big(&sizes), &big(&widths), from).unwrap();
            prop_assert_eq!(&t.measure, &enumerate(&sizes, &widths, from));
            prop_assert!(t.within_bound());
            let nontrivial = sizes.iter().zip(&widths).skip(from).filter(|(_, &w)| w > 0).count();
            if nontrivial >= 2 {
                prop_assert!(t.measure < t.bound);
            } else {
                prop_assert_eq!(&t.measure, &t.bound);
            }
            if from < sizes.len() {
                let next = tail_cover_measure(&big(&sizes), &big(&widths), from + 1).unwrap();
                prop_assert!(next.measure <= t.measure);
            }
        }
    }
}
