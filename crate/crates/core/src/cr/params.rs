use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A triple `(k, m, n)` satisfying the four admissibility clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrParams {
    pub k: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamClause {
    /// `0 < k < m < n`
    Ordering,
    /// `2 ≤ 4m ≤ n`
    FourM,
    /// `2ᵏ·m = n`
    PowerProduct,
    /// `2/2ᵐ + 1/n² < 1/m`
    Fractions,
}

impl ParamClause {
    pub fn label(self) -> &'static str {
        match self {
            ParamClause::Ordering => "(a) 0 < k < m < n",
            ParamClause::FourM => "(b) 2 <= 4m <= n",
            ParamClause::PowerProduct => "(c) 2^k*m = n",
            ParamClause::Fractions => "(d) 2/2^m + 1/n^2 < 1/m",
        }
    }
}

impl fmt::Display for ParamClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamViolation {
    pub clause: ParamClause,
    pub detail: String,
}

fn fractions_hold(m: usize, n: usize) -> bool {
    if m == 0 || n == 0 {
        return false;
    }
    // 2/2^m + 1/n^2 < 1/m  ⇔  2·m·n² + m·2^m < 2^m·n²
    let two_m = BigUint::from(1u8) << m;
    let n2 = BigUint::from(n) * BigUint::from(n);
    let lhs = BigUint::from(2 * m) * &n2 + BigUint::from(m) * &two_m;
    lhs < two_m * n2
}

fn four_m_holds(m: usize, n: usize) -> bool {
    m.checked_mul(4).is_some_and(|fm| 2 <= fm && fm <= n)
}

/// Violations of the CR-class shape constraints on `(n, m)`: `2 ≤ 4m ≤ n` and the fraction bound.
pub fn check_cr_shape(n: usize, m: usize) -> Vec<ParamViolation> {
    let mut out = Vec::new();
    if !four_m_holds(m, n) {
        out.push(ParamViolation {
            clause: ParamClause::FourM,
            detail: format!("4m = {} not in [2, {n}]", 4 * m),
        });
    }
    if !fractions_hold(m, n) {
        out.push(ParamViolation {
            clause: ParamClause::Fractions,
            detail: format!("2/2^{m} + 1/{n}^2 >= 1/{m}"),
        });
    }
    out
}

impl CrParams {
    /// All violated clauses; empty when the triple is admissible.
    pub fn violations(k: usize, m: usize, n: usize) -> Vec<ParamViolation> {
        let mut out = Vec::new();
        if !(0 < k && k < m && m < n) {
            out.push(ParamViolation {
                clause: ParamClause::Ordering,
                detail: format!("k={k}, m={m}, n={n}"),
            });
        }
        if !four_m_holds(m, n) {
            out.push(ParamViolation {
                clause: ParamClause::FourM,
                detail: format!("4m = {} not in [2, {n}]", 4 * m),
            });
        }
        let product = (k < 64).then(|| (1usize << k).checked_mul(m)).flatten();
        if product != Some(n) {
            out.push(ParamViolation {
                clause: ParamClause::PowerProduct,
                detail: format!("2^{k}*{m} != {n}"),
            });
        }
        if !fractions_hold(m, n) {
            out.push(ParamViolation {
                clause: ParamClause::Fractions,
                detail: format!("2/2^{m} + 1/{n}^2 >= 1/{m}"),
            });
        }
        out
    }

    pub fn new(k: usize, m: usize, n: usize) -> Result<Self> {
        let v = Self::violations(k, m, n);
        if let Some(first) = v.first() {
            return Err(Error::Invalid(format!(
                "({k},{m},{n}) violates {}: {}",
                first.clause, first.detail
            )));
        }
        Ok(CrParams { k, m, n })
    }
}

impl fmt::Display for CrParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.m, self.n)
    }
}

/// Every admissible `(k, m, n)` with `n ≤ n_max`, sorted by `n` then `k`.
///
/// Since `n = 2ᵏ·m`, only `k < log₂ n_max` and `m = n / 2ᵏ` need scanning.
pub fn smallest_params(n_max: usize) -> Vec<CrParams> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let mut k = 1;
        while k < 64 && (1usize << k) <= n {
            if n % (1 << k) == 0 {
                let m = n >> k;
                if CrParams::violations(k, m, n).is_empty() {
                    out.push(CrParams { k, m, n });
                }
            }
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent scan over every triple, not using the `n = 2^k m` shortcut.
    fn brute_force(n_max: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for m in 0..=n {
                for k in 0..=n {
                    let ordering = 0 < k && k < m && m < n;
                    let four_m = 2 <= 4 * m && 4 * m <= n;
                    let power = k < 63 && (1u128 << k) * m as u128 == n as u128;
                    // 2/2^m + 1/n^2 < 1/m with exact integers
                    let frac = m > 0 && m < 100 && {
                        let tm = 1u128 << m;
                        let n2 = (n * n) as u128;
                        2 * m as u128 * n2 + m as u128 * tm < tm * n2
                    };
                    if ordering && four_m && power && frac {
                        out.push((k, m, n));
                    }
                }
            }
        }
        out.sort_by_key(|&(k, m, n)| (n, k, m));
        out
    }

    #[test]
    fn scan_matches_brute_force() {
        let fast: Vec<_> = smallest_params(64)
            .iter()
            .map(|p| (p.k, p.m, p.n))
            .collect();
        assert_eq!(fast, brute_force(64));
        assert_eq!(fast[0], (2, 3, 12));
    }

    #[test]
    fn rejects_1_2_4_on_the_4m_clause() {
        let v = CrParams::violations(1, 2, 4);
        let clauses: Vec<_> = v.iter().map(|x| x.clause).collect();
        // 2/4 + 1/16 is not below 1/2 either
        assert_eq!(clauses, [ParamClause::FourM, ParamClause::Fractions]);
        assert!(CrParams::new(1, 2, 4).is_err());
    }

    #[test]
    fn fraction_clause_at_2_3_12() {
        // 2/8 + 1/144 = 37/144 < 48/144
        assert!(fractions_hold(3, 12));
        assert!(!fractions_hold(2, 8));
        assert_eq!(CrParams::new(2, 3, 12).unwrap().to_string(), "(2,3,12)");
    }

    #[test]
    fn cr_shape() {
        assert!(check_cr_shape(12, 3).is_empty());
        let v = check_cr_shape(4, 1);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].clause, ParamClause::Fractions);
    }
}
