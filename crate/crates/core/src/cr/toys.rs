//! Small stand-in instances of `G₂` used by tests, the acceptance suite and
//! the command line.

use std::collections::BTreeMap;

use super::{build_g1, build_g2, build_pi, G2Group};
use crate::error::{Error, Result};
use crate::group::{ElementaryAbelian2, FiniteGroup, Gf2Matrix, Semidirect};

/// `G₂` over `G₁ = (Z/2)^{g1_dim}` with `ȳ¹` the first `n` basis vectors.
pub fn elementary_g2(n: usize, g1_dim: usize) -> Result<G2Group<ElementaryAbelian2>> {
    if g1_dim < n {
        return Err(Error::Invalid(format!(
            "G1 dimension {g1_dim} cannot hold {n} independent involutions"
        )));
    }
    let g1 = ElementaryAbelian2::new(g1_dim)?;
    let y1 = (0..n).map(|i| 1u64 << i).collect();
    build_g2(g1, y1, n)
}

/// `π_I` on the first `2n` coordinates of `(Z/2)^dim`, identity elsewhere.
pub fn padded_pi(n: usize, istar: u64, dim: usize) -> Result<Gf2Matrix> {
    if dim < 2 * n {
        return Err(Error::Invalid(format!("dimension {dim} < 2n = {}", 2 * n)));
    }
    let pi = build_pi(n, istar)?;
    let cols = (0..dim)
        .map(|j| if j < 2 * n { pi.apply(1 << j) } else { 1 << j })
        .collect();
    Gf2Matrix::from_columns(dim, cols)
}

/// The coordinate permutation `e_{cycle[j]} ↦ e_{cycle[j+1]}` (cyclically) on `(Z/2)^dim`.
pub fn coordinate_cycle(dim: usize, cycle: &[usize]) -> Result<Gf2Matrix> {
    let mut cols: Vec<u64> = (0..dim).map(|j| 1u64 << j).collect();
    for (j, &a) in cycle.iter().enumerate() {
        let b = cycle[(j + 1) % cycle.len()];
        if a >= dim || b >= dim {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                len: dim,
            });
        }
        cols[a] = 1 << b;
    }
    Gf2Matrix::from_columns(dim, cols)
}

/// `G₂` over `G₁ = (Z/2)^{g1_dim} ⋊ ⟨σ⟩` with `σ` permuting the coordinates
/// in `cycle`. `ȳ¹` must consist of `σ`-fixed vectors, so that it is central
/// in `G₁`. Every nonempty `I ⊆ [0, n)` gets `z¹_I = (σ, e_{cycle[0]})`.
pub fn permutation_g2(
    n: usize,
    g1_dim: usize,
    cycle: &[usize],
    y1: &[u64],
) -> Result<G2Group<Semidirect>> {
    if n > 16 || y1.len() != n || cycle.is_empty() {
        return Err(Error::Invalid(format!(
            "need n <= 16, {n} vectors in y1 and a nonempty cycle"
        )));
    }
    let sigma = coordinate_cycle(g1_dim, cycle)?;
    let g1 = Semidirect::new(g1_dim, vec![sigma.clone()], cycle.len().max(2))?;
    let z = g1.mul(&g1.acting_by(&sigma)?, &g1.vector(1u64 << cycle[0]));
    let y1: Vec<_> = y1.iter().map(|&v| g1.vector(v)).collect();
    if let Some(bad) = y1.iter().find(|y| !g1.contains(y)) {
        return Err(Error::GroupMismatch(format!("{bad:?} is not in G1")));
    }
    let z1: BTreeMap<u64, _> = (1u64..1 << n).map(|s| (s, z)).collect();
    Ok(build_g2(g1, y1, n)?.with_z1(z1))
}

/// `G₂` over the first-stage group from [`build_g1`].
pub fn cr_g2(n: usize, m: usize, cap: usize) -> Result<G2Group<Semidirect>> {
    G2Group::from_witness(build_g1(n, m, cap)?)
}

/// Named elementary toys: `toy64` (n=2), `toy512` (n=3), `toy4096` (n=4).
pub fn named_elementary(name: &str) -> Option<G2Group<ElementaryAbelian2>> {
    let n = match name {
        "toy64" => 2,
        "toy512" => 3,
        "toy4096" => 4,
        _ => return None,
    };
    elementary_g2(n, n).ok()
}

/// Named toys with a nonabelian `G₁` (see [`permutation_g2`]):
///
/// - `sd96`: n=1, `G₁ = (Z/2)^3 ⋊ C₃` (order 24), `y¹_0 = e_0+e_1+e_2`;
/// - `sd512`: n=2, `G₁ = (Z/2)^4 ⋊ C₂` (order 32, nilpotency class 2);
/// - `sd4096`: n=2, `G₁ = (Z/2)^6 ⋊ C₄` (order 256, nilpotency class 4).
pub fn named_semidirect(name: &str) -> Option<G2Group<Semidirect>> {
    match name {
        "sd96" => permutation_g2(1, 3, &[0, 1, 2], &[0b111]),
        "sd512" => permutation_g2(2, 4, &[2, 3], &[0b01, 0b10]),
        "sd4096" => permutation_g2(2, 6, &[2, 3, 4, 5], &[0b01, 0b10]),
        _ => return None,
    }
    .ok()
}

/// Every name accepted by [`named_elementary`] and [`named_semidirect`].
pub const TOY_NAMES: [&str; 6] = ["toy64", "toy512", "toy4096", "sd96", "sd512", "sd4096"];
