use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use super::ProductTruncation;
use crate::error::{Error, Result};
use crate::group::{commutes, FiniteGroup};
use crate::ratio::{ratio, Ratio};
use crate::word::{WordTerm, DENSITY_ENUMERATION_CAP};

/// Pair counts of `w(x, y, c̄) = e` over one finite group, with `x = x1`, `y = x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub order: BigUint,
    /// `|{x : some y solves}|`; at finite depth this is `X_c̄`.
    pub x_positive: BigUint,
    /// `|{x : every y solves}|`
    pub x_full: BigUint,
    pub pair_solutions: BigUint,
    pub pair_density: Ratio,
    pub method: &'static str,
}

fn uses_var(w: &WordTerm, i: usize) -> bool {
    match w {
        WordTerm::Var(j) => *j == i,
        WordTerm::Identity | WordTerm::Param(_) => false,
        WordTerm::Inverse(a) => uses_var(a, i),
        WordTerm::Product(a, b) | WordTerm::Commutator(a, b) => uses_var(a, i) || uses_var(b, i),
    }
}

/// `u` when `w = [u, y]` or `[y, u]` with `u` free of `y`.
fn commutator_with_y(w: &WordTerm) -> Option<&WordTerm> {
    match w {
        WordTerm::Commutator(a, b) if **b == WordTerm::Var(2) && !uses_var(a, 2) => Some(a),
        WordTerm::Commutator(a, b) if **a == WordTerm::Var(2) && !uses_var(b, 2) => Some(b),
        _ => None,
    }
}

/// Counts per `x` of the `y` with `w(x, y, c̄) = e`.
///
/// Words of the form `[u(x, c̄), y]` reduce to centralizer sizes of the
/// distinct values of `u`; other words are enumerated pair by pair.
pub fn pair_counts<G: FiniteGroup + ?Sized>(
    g: &G,
    w: &WordTerm,
    params: &[G::Elem],
) -> Result<PairCounts> {
    if w.var_count() > 2 || w.param_count() > params.len() {
        return Err(Error::ArityMismatch {
            expected: w.param_count(),
            got: params.len(),
        });
    }
    if let Some(bad) = params.iter().find(|c| !g.contains(c)) {
        return Err(Error::GroupMismatch(format!("parameter {bad:?}")));
    }
    let els = g.elements()?;
    let e = g.identity();
    let (per_x, method): (Vec<u64>, _) = match commutator_with_y(w) {
        Some(inner) => {
            let values: Vec<G::Elem> = els
                .par_iter()
                .map(|x| inner.eval_unchecked(g, std::slice::from_ref(x), params))
                .collect();
            let mut distinct: Vec<&G::Elem> = values.iter().collect();
            distinct.sort();
            distinct.dedup();
            let sizes: HashMap<&G::Elem, u64> = distinct
                .par_iter()
                .map(|v| {
                    let c = if **v == e {
                        els.len() as u64
                    } else {
                        els.iter().filter(|y| commutes(g, v, y)).count() as u64
                    };
                    (*v, c)
                })
                .collect();
            (values.iter().map(|v| sizes[v]).collect(), "centralizer")
        }
        None => {
            let pairs = (els.len() as u128).pow(2);
            if pairs > DENSITY_ENUMERATION_CAP as u128 {
                return Err(Error::too_large(
                    "pair space",
                    pairs,
                    DENSITY_ENUMERATION_CAP,
                ));
            }
            let counts = els
                .par_iter()
                .map(|x| {
                    let mut xy = [x.clone(), e.clone()];
                    els.iter()
                        .filter(|y| {
                            xy[1] = (*y).clone();
                            w.eval_unchecked(g, &xy, params) == e
                        })
                        .count() as u64
                })
                .collect();
            (counts, "pairs")
        }
    };
    let n = els.len() as u64;
    let order = BigUint::from(n);
    let pair_solutions: BigUint = per_x.iter().map(|&c| BigUint::from(c)).sum();
    Ok(PairCounts {
        x_positive: BigUint::from(per_x.iter().filter(|&&c| c > 0).count()),
        x_full: BigUint::from(per_x.iter().filter(|&&c| c == n).count()),
        pair_density: ratio(pair_solutions.clone(), &order * &order),
        pair_solutions,
        order,
        method,
    })
}

/// `X_c̄`, full-density points and pair density over a truncated product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XcbarReport {
    /// Per-level counts (levelwise) or a single entry for the whole product (naive).
    pub levels: Vec<PairCounts>,
    pub order: BigUint,
    pub x_positive: BigUint,
    pub x_full: BigUint,
    pub pair_solutions: BigUint,
    pub pair_density: Ratio,
    /// Finite stand-in for the null condition: `pair_density ≤ threshold`.
    pub threshold: Option<Ratio>,
    pub method: &'static str,
}

impl XcbarReport {
    fn assemble(levels: Vec<PairCounts>, threshold: Option<Ratio>, method: &'static str) -> Self {
        let prod = |f: fn(&PairCounts) -> &BigUint| -> BigUint {
            levels.iter().map(|l| f(l).clone()).product()
        };
        let order = prod(|l| &l.order);
        let pair_solutions = prod(|l| &l.pair_solutions);
        XcbarReport {
            x_positive: prod(|l| &l.x_positive),
            x_full: prod(|l| &l.x_full),
            pair_density: Ratio::new(
                BigInt::from(pair_solutions.clone()),
                BigInt::from(&order * &order),
            ),
            pair_solutions,
            order,
            threshold,
            method,
            levels,
        }
    }

    /// Whether `c̄` passes the finite null test; `None` without a threshold.
    pub fn below_threshold(&self) -> Option<bool> {
        self.threshold.as_ref().map(|t| self.pair_density <= *t)
    }
}

fn level_params<E: Clone>(c1: &[E], c2: &[E], i: usize) -> Vec<E> {
    vec![c1[i].clone(), c2[i].clone()]
}

fn check_cbar<G: FiniteGroup>(
    t: &ProductTruncation<G>,
    c1: &[G::Elem],
    c2: &[G::Elem],
) -> Result<()> {
    for c in [c1, c2] {
        if c.len() != t.depth() {
            return Err(Error::ArityMismatch {
                expected: t.depth(),
                got: c.len(),
            });
        }
    }
    Ok(())
}

/// Levelwise computation: every word evaluates coordinatewise on a direct
/// product, so all counts are products of per-level counts.
pub fn x_cbar<G: FiniteGroup>(
    t: &ProductTruncation<G>,
    c1: &[G::Elem],
    c2: &[G::Elem],
    w: &WordTerm,
    threshold: Option<Ratio>,
) -> Result<XcbarReport> {
    check_cbar(t, c1, c2)?;
    let levels = t
        .levels()
        .iter()
        .enumerate()
        .map(|(i, g)| pair_counts(g, w, &level_params(c1, c2, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(XcbarReport::assemble(levels, threshold, "levelwise"))
}

/// The same quantities by enumerating the product group itself.
pub fn x_cbar_naive<G: FiniteGroup>(
    t: &ProductTruncation<G>,
    c1: &[G::Elem],
    c2: &[G::Elem],
    w: &WordTerm,
    threshold: Option<Ratio>,
) -> Result<XcbarReport> {
    check_cbar(t, c1, c2)?;
    let counts = pair_counts(t.product(), w, &[c1.to_vec(), c2.to_vec()])?;
    Ok(XcbarReport::assemble(vec![counts], threshold, "naive"))
}

/// `∏ 1/m_i`
pub fn default_threshold(ms: &[usize]) -> Ratio {
    ms.iter().fold(Ratio::one(), |acc, &m| {
        acc / Ratio::from_integer(BigInt::from(m))
    })
}
