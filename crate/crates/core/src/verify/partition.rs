use crate::bits::full_mask;
use crate::cr::{G2Elem, G2Group};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// The outcome of the partition-lemma procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionChoice {
    pub istar: u64,
    /// `η` with `η(ℓ)` at index `ℓ`.
    pub eta: Vec<bool>,
    /// `|I_η|` for every `η`, indexed by the integer whose bit `k-1-ℓ` is `η(ℓ)`.
    pub class_sizes: Vec<usize>,
}

/// `I_* ⊆ [0, n)` with `|I_*| = n/2ᵏ` and `𝒰₂(x_ℓ) ∩ I_* ∈ {∅, I_*}` for all `ℓ`.
///
/// Splits `[0, n)` into the classes `I_η`, takes the lexicographically least
/// `η` (comparing `η(0)` first) among those of maximal size, and keeps its
/// `n/2ᵏ` smallest indices.
pub fn find_partition_istar<G: FiniteGroup>(
    g2: &G2Group<G>,
    xs: &[G2Elem<G::Elem>],
    k: usize,
) -> Result<PartitionChoice> {
    let n = g2.n();
    if k == 0 || k >= 64 {
        return Err(Error::Invalid(format!("k = {k} must be in [1, 64)")));
    }
    if xs.len() != k {
        return Err(Error::ArityMismatch {
            expected: k,
            got: xs.len(),
        });
    }
    if k > 16 || !n.is_multiple_of(1usize << k) {
        return Err(Error::Invalid(format!("2^{k} does not divide n = {n}")));
    }
    let target = n >> k;
    let classes = 1usize << k;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for i in 0..n {
        let mut code = 0usize;
        for x in xs {
            code = (code << 1) | ((x.u2 >> i) & 1) as usize;
        }
        members[code].push(i);
    }
    let sizes: Vec<usize> = members.iter().map(Vec::len).collect();
    let best = *sizes.iter().max().expect("at least one class");
    // integer order of the code is the lexicographic order of η
    let code = sizes
        .iter()
        .position(|&s| s == best)
        .expect("maximum exists");
    debug_assert!(best >= target);
    let istar = members[code][..target]
        .iter()
        .fold(0u64, |m, &i| m | 1 << i);
    let eta = (0..k).map(|l| (code >> (k - 1 - l)) & 1 == 1).collect();
    debug_assert_eq!(istar & !full_mask(n), 0);
    Ok(PartitionChoice {
        istar,
        eta,
        class_sizes: sizes,
    })
}

/// Partition-lemma clauses (a) and (b) for a candidate `I_*`.
pub fn partition_holds<E>(n: usize, k: usize, xs: &[G2Elem<E>], istar: u64) -> bool {
    istar.count_ones() as usize == n >> k
        && xs.iter().all(|x| {
            let cut = x.u2 & istar;
            cut == 0 || cut == istar
        })
}
