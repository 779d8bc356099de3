//! Exact fractions for densities and measures.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Ratio = BigRational;

pub fn ratio(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Ratio {
    Ratio::new(BigInt::from(num.into()), BigInt::from(den.into()))
}

pub fn ratio_u64(num: u64, den: u64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Ratio {
    Ratio::one()
}

pub fn zero() -> Ratio {
    Ratio::zero()
}

/// Renders as `p/q` in lowest terms, always with a denominator.
pub fn format_ratio(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(text: &str) -> Option<Ratio> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Ratio::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_ratio(&one()), "1/1");
        assert_eq!(format_ratio(&ratio_u64(10, 16)), "5/8");
        assert_eq!(parse_ratio("5/8"), Some(ratio_u64(5, 8)));
        assert_eq!(parse_ratio("3"), Some(ratio_u64(3, 1)));
        assert_eq!(parse_ratio("1/0"), None);
    }
}
