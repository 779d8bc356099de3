use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::bits::k_subsets;
use crate::error::{Error, Result};

/// Exhaustive search runs only below these sizes.
pub const COVER_POINT_CAP: u64 = 16;
pub const COVER_CANDIDATE_CAP: u64 = 10_000;

/// Bounds on the least number of slaloms `ν` with `|ν(i)| = k_i` covering
/// every `η ∈ ∏ [N_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverBounds {
    /// `⌈∏N_i / ∏k_i⌉`
    pub lower: BigUint,
    /// `∏⌈N_i / k_i⌉` from the grid construction.
    pub upper: BigUint,
    pub exact: Option<u64>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub fn slalom_cover_bounds(sizes: &[u64], widths: &[u64]) -> Result<CoverBounds> {
    if sizes.len() != widths.len() {
        return Err(Error::ArityMismatch {
            expected: sizes.len(),
            got: widths.len(),
        });
    }
    if let Some(i) = (0..sizes.len()).find(|&i| widths[i] == 0 || widths[i] > sizes[i]) {
        return Err(Error::Invalid(format!(
            "level {i}: need 1 <= k <= N, got k = {}, N = {}",
            widths[i], sizes[i]
        )));
    }
    let points: BigUint = sizes.iter().map(|&n| BigUint::from(n)).product();
    let width: BigUint = widths.iter().map(|&k| BigUint::from(k)).product();
    let lower = points.div_ceil(&width);
    let upper: BigUint = sizes
        .iter()
        .zip(widths)
        .map(|(&n, &k)| BigUint::from(n.div_ceil(k)))
        .product();
    let candidates = sizes
        .iter()
        .zip(widths)
        .try_fold(1u64, |acc, (&n, &k)| acc.checked_mul(binomial(n, k)));
    let small = points <= BigUint::from(COVER_POINT_CAP)
        && candidates.is_some_and(|c| c <= COVER_CANDIDATE_CAP);
    let exact = small.then(|| exact_cover(sizes, widths));
    Ok(CoverBounds {
        lower,
        upper,
        exact,
    })
}

/// Every box `ν(0) × … × ν(L−1)` as a bitmask over the mixed-radix points.
fn boxes(sizes: &[u64], widths: &[u64]) -> Vec<u32> {
    let mut out = vec![0u32];
    let mut stride = 1u64;
    let mut first = true;
    for (&n, &k) in sizes.iter().zip(widths) {
        let subsets = k_subsets(n as usize, k as usize);
        let mut next = Vec::with_capacity(out.len() * subsets.len());
        for &acc in &out {
            for &s in &subsets {
                // extend the box one coordinate at a time
                let mut mask = 0u32;
                for a in 0..n {
                    if s >> a & 1 == 0 {
                        continue;
                    }
                    if first {
                        mask |= 1 << a;
                    } else {
                        for p in 0..stride {
                            if acc >> p & 1 == 1 {
                                mask |= 1 << (p + a * stride);
                            }
                        }
                    }
                }
                next.push(mask);
            }
        }
        out = next;
        stride *= n;
        first = false;
    }
    out
}

fn exact_cover(sizes: &[u64], widths: &[u64]) -> u64 {
    let total: u64 = sizes.iter().product();
    let all = (1u32 << total) - 1;
    let cands = boxes(sizes, widths);
    let per_box: u64 = widths.iter().product();
    let mut failed = HashSet::new();
    let mut t = total.div_ceil(per_box);
    loop {
        if cover_within(&cands, all, per_box, 0, t, &mut failed) {
            return t;
        }
        t += 1;
    }
}

/// Whether `budget` more boxes can cover `all` starting from `covered`.
fn cover_within(
    cands: &[u32],
    all: u32,
    per_box: u64,
    covered: u32,
    budget: u64,
    failed: &mut HashSet<(u32, u64)>,
) -> bool {
    let open = !covered & all;
    if open == 0 {
        return true;
    }
    if u64::from(open.count_ones()) > budget * per_box || failed.contains(&(covered, budget)) {
        return false;
    }
    let point = open.trailing_zeros();
    for &b in cands.iter().filter(|&&b| b >> point & 1 == 1) {
        if cover_within(cands, all, per_box, covered | b, budget - 1, failed) {
            return true;
        }
    }
    failed.insert((covered, budget));
    false
}
