use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{full_mask, indices};
use crate::error::{Error, Result};
use crate::group::gf2::{EchelonBasis, Gf2Automorphism, Gf2Matrix};

const RETRIES: u64 = 32;

/// Outcome of checking a candidate `π_I` on `G₀ = (Z/2)^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiReport {
    pub invertible: bool,
    pub fixes_y_i: bool,
    /// Masks `J ⊆ [0, n)`, `J ∉ {∅, I}`, with `π(y_J) = y_J`.
    pub fixed_violations: Vec<u64>,
    pub subsets_checked: u64,
}

impl PiReport {
    pub fn passed(&self) -> bool {
        self.invertible && self.fixes_y_i && self.fixed_violations.is_empty()
    }
}

/// `y_J` is the first-block vector with support `J`, so `y_J == J` as a mask.
pub fn verify_pi(pi: &Gf2Matrix, n: usize, istar: u64) -> Result<PiReport> {
    if pi.dim() != 2 * n {
        return Err(Error::Invalid(format!(
            "π has dimension {}, expected {}",
            pi.dim(),
            2 * n
        )));
    }
    if istar & !full_mask(n) != 0 {
        return Err(Error::Invalid("I is not a subset of [0, n)".into()));
    }
    let mut fixed_violations = Vec::new();
    for j in 1..(1u64 << n) {
        if j != istar && pi.apply(j) == j {
            fixed_violations.push(j);
        }
    }
    Ok(PiReport {
        invertible: pi.is_invertible(),
        fixes_y_i: pi.apply(istar) == istar,
        fixed_violations,
        subsets_checked: 1u64 << n,
    })
}

/// An automorphism of `(Z/2)^{2n}` fixing `y_I` and moving every other nonzero `y_J`.
///
/// The first block is written in a basis `(y_I, b_1, …, b_{n−1})` and each
/// `b_ℓ` is sent to `e_{n+ℓ}`; for `I = ∅` the whole first block is swapped
/// into the second. The second block is then completed greedily, preferring
/// the swap partners so the result is an involution when possible, and
/// falls back to seeded random completions if verification ever fails.
pub fn build_pi(n: usize, istar: u64) -> Result<Gf2Automorphism> {
    if n == 0 || 2 * n > crate::group::gf2::MAX_DIM {
        return Err(Error::Invalid(format!("n = {n} out of range for build_pi")));
    }
    if istar & !full_mask(n) != 0 {
        return Err(Error::Invalid("I is not a subset of [0, n)".into()));
    }
    let dim = 2 * n;
    let (first_domain, first_images) = first_block(n, istar);
    for attempt in 0..=RETRIES {
        let mut rng = (attempt > 0).then(|| ChaCha8Rng::seed_from_u64(attempt));
        let mut domain = first_domain.clone();
        let mut images = first_images.clone();
        let mut span = EchelonBasis::default();
        for &v in &images {
            span.insert(v);
        }
        for l in 0..n {
            let preferred = if istar == 0 {
                1u64 << l
            } else if l == 0 {
                1u64 << n
            } else {
                first_domain[l]
            };
            let pick = match rng.as_mut() {
                None => std::iter::once(preferred)
                    .chain((0..dim).map(|j| 1u64 << j))
                    .find(|&c| !span.contains(c)),
                Some(r) => (0..1024)
                    .map(|_| r.gen::<u64>() & full_mask(dim))
                    .find(|&c| !span.contains(c)),
            };
            let Some(pick) = pick else {
                break;
            };
            span.insert(pick);
            domain.push(1u64 << (n + l));
            images.push(pick);
        }
        if images.len() != dim {
            continue;
        }
        let m = Gf2Matrix::from_basis_images(dim, &domain, &images)?;
        if verify_pi(&m, n, istar)?.passed() {
            return Gf2Automorphism::new(m);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no valid π for n={n}, I={} after {RETRIES} retries",
        crate::bits::format_mask(istar)
    )))
}

fn first_block(n: usize, istar: u64) -> (Vec<u64>, Vec<u64>) {
    if istar == 0 {
        let domain = (0..n).map(|j| 1u64 << j).collect();
        let images = (0..n).map(|j| 1u64 << (n + j)).collect();
        return (domain, images);
    }
    let j0 = indices(istar).next().expect("nonempty");
    let mut domain = vec![istar];
    let mut images = vec![istar];
    let mut l = 1;
    for j in (0..n).filter(|&j| j != j0) {
        domain.push(1u64 << j);
        images.push(1u64 << (n + l));
        l += 1;
    }
    (domain, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::k_subsets;

    #[test]
    fn n1_fixes_e0() {
        let pi = build_pi(1, 0b1).unwrap();
        assert_eq!(pi.apply(0b01), 0b01);
        assert!(verify_pi(pi.matrix(), 1, 0b1).unwrap().passed());
    }

    #[test]
    fn n3_i01_moves_every_other_subset() {
        let pi = build_pi(3, 0b011).unwrap();
        assert_eq!(pi.apply(0b011), 0b011);
        // oracle: scan all 2³ subsets directly
        for j in 1u64..8 {
            if j != 0b011 {
                assert_ne!(pi.apply(j), j, "J = {j:03b}");
            }
        }
    }

    #[test]
    fn identity_fails_verification() {
        let r = verify_pi(&Gf2Matrix::identity(4), 2, 0b01).unwrap();
        assert!(!r.passed());
        assert!(r.fixes_y_i);
        assert!(r.fixed_violations.contains(&0b10));
    }

    #[test]
    fn block_swap_passes_for_empty_i() {
        let n = 3;
        let mut cols = vec![0u64; 2 * n];
        for i in 0..n {
            cols[i] = 1 << (n + i);
            cols[n + i] = 1 << i;
        }
        let swap = Gf2Matrix::from_columns(2 * n, cols).unwrap();
        assert!(verify_pi(&swap, n, 0).unwrap().passed());
        assert!(!verify_pi(&swap, n, 0b001).unwrap().passed());
    }

    #[test]
    fn sweep_small_n() {
        for n in 1..=6 {
            for m in 1..=n {
                for istar in k_subsets(n, m) {
                    let pi = build_pi(n, istar).unwrap();
                    assert!(verify_pi(pi.matrix(), n, istar).unwrap().passed());
                }
            }
            assert!(verify_pi(build_pi(n, 0).unwrap().matrix(), n, 0)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn preferred_completion_is_an_involution() {
        for istar in [0b0001u64, 0b0110, 0b1111, 0] {
            let pi = build_pi(4, istar).unwrap();
            let sq = pi.matrix().compose(pi.matrix());
            assert_eq!(sq, Gf2Matrix::identity(8));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_pi(0, 0).is_err());
        assert!(build_pi(2, 0b100).is_err());
        assert!(verify_pi(&Gf2Matrix::identity(3), 2, 0).is_err());
    }
}
