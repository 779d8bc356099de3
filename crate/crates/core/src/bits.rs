//! Index subsets of `[0, n)` packed into a `u64` mask (bit `i` set iff `i ∈ I`).

use crate::error::{Error, Result};

pub const MAX_INDEX_BITS: usize = 64;

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_from_indices(indices: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &i in indices {
        if i >= MAX_INDEX_BITS {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: MAX_INDEX_BITS,
            });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

pub fn indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// All submasks of `mask`, starting with `0` and ascending numerically.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// All `k`-element subsets of `[0, n)` in increasing numeric order of masks.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 63, "k_subsets supports n < 64");
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Comma-separated ascending indices; the empty set renders as the empty string.
pub fn format_mask(mask: u64) -> String {
    indices(mask)
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Inverse of [`format_mask`], also accepting `{...}` braces and whitespace.
pub fn parse_mask(text: &str, n: usize) -> Result<u64> {
    let t = text.trim();
    let t = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(t)
        .trim();
    let mut mask = 0u64;
    if t.is_empty() {
        return Ok(0);
    }
    for part in t.split(',') {
        let part = part.trim();
        let i: usize = part
            .parse()
            .map_err(|_| Error::parse(0, format!("bad index `{part}`")))?;
        if i >= n || i >= MAX_INDEX_BITS {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_enumerates_all() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(4, 0), vec![0]);
        assert!(k_subsets(3, 4).is_empty());
        assert!(k_subsets(6, 3).iter().all(|m| m.count_ones() == 3));
    }

    #[test]
    fn mask_text_round_trip() {
        let m = mask_from_indices(&[0, 3, 5]).unwrap();
        assert_eq!(format_mask(m), "0,3,5");
        assert_eq!(parse_mask("0,3,5", 6).unwrap(), m);
        assert_eq!(parse_mask("{}", 6).unwrap(), 0);
        assert!(parse_mask("6", 6).is_err());
    }
}
