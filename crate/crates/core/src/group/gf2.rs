//! Linear algebra over the two-element field on vectors packed into a `u64`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

fn dim_mask(dim: usize) -> u64 {
    crate::bits::full_mask(dim)
}

/// A `dim × dim` matrix stored by columns: `cols[j]` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    dim: usize,
    cols: Vec<u64>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[{}]({})", self.dim, self.to_hex())
    }
}

impl Gf2Matrix {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        Gf2Matrix {
            dim,
            cols: (0..dim).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn from_columns(dim: usize, cols: Vec<u64>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::too_large("GF(2) dimension", dim, MAX_DIM));
        }
        if cols.len() != dim {
            return Err(Error::Invalid(format!(
                "expected {dim} columns, got {}",
                cols.len()
            )));
        }
        if let Some(c) = cols.iter().find(|&&c| c & !dim_mask(dim) != 0) {
            return Err(Error::Invalid(format!(
                "column {c:x} has bits beyond dimension {dim}"
            )));
        }
        Ok(Gf2Matrix { dim, cols })
    }

    /// Builds the matrix sending `domain[j] ↦ images[j]`; `domain` must be a basis.
    pub fn from_basis_images(dim: usize, domain: &[u64], images: &[u64]) -> Result<Self> {
        let d = Self::from_columns(dim, domain.to_vec())?;
        let i = Self::from_columns(dim, images.to_vec())?;
        let d_inv = d
            .inverse()
            .ok_or_else(|| Error::Invalid("domain vectors are not a basis".into()))?;
        Ok(i.compose(&d_inv))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        for j in crate::bits::indices(v) {
            out ^= self.cols[j];
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Gf2Matrix {
            dim: self.dim,
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut cols = vec![0u64; self.dim];
        for (j, &c) in self.cols.iter().enumerate() {
            for i in crate::bits::indices(c) {
                cols[i] |= 1 << j;
            }
        }
        Gf2Matrix {
            dim: self.dim,
            cols,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    /// Gauss–Jordan elimination on the columns, carrying the identity along.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        // Column operations: A·E = I  ⇒  E = A⁻¹.
        let mut a = self.cols.clone();
        let mut e: Vec<u64> = (0..self.dim).map(|j| 1u64 << j).collect();
        for row in 0..self.dim {
            let pivot = (row..self.dim).find(|&j| a[j] >> row & 1 == 1)?;
            a.swap(row, pivot);
            e.swap(row, pivot);
            for j in 0..self.dim {
                if j != row && a[j] >> row & 1 == 1 {
                    a[j] ^= a[row];
                    e[j] ^= e[row];
                }
            }
        }
        Some(Gf2Matrix {
            dim: self.dim,
            cols: e,
        })
    }

    /// Columns as comma-separated hex words.
    pub fn to_hex(&self) -> String {
        self.cols
            .iter()
            .map(|c| format!("{c:x}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_hex(dim: usize, text: &str) -> Result<Self> {
        let cols = text
            .split(',')
            .map(|t| {
                u64::from_str_radix(t.trim(), 16)
                    .map_err(|_| Error::parse(0, format!("bad hex column `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(dim, cols)
    }
}

/// Rank of the span of `vectors`.
pub fn rank_of(vectors: &[u64]) -> usize {
    let mut basis = EchelonBasis::default();
    vectors.iter().filter(|&&v| basis.insert(v)).count()
}

/// Incremental reduced basis used for independence tests during completion.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    // (pivot bit, vector) with distinct pivots
    rows: Vec<(u32, u64)>,
}

impl EchelonBasis {
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &(p, r) in &self.rows {
            if v >> p & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Inserts `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = 63 - r.leading_zeros();
        for row in &mut self.rows {
            if row.1 >> p & 1 == 1 {
                row.1 ^= r;
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// An invertible matrix over GF(2), acting on an elementary abelian 2-group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Automorphism(Gf2Matrix);

impl Gf2Automorphism {
    pub fn new(matrix: Gf2Matrix) -> Result<Self> {
        if matrix.is_invertible() {
            Ok(Gf2Automorphism(matrix))
        } else {
            Err(Error::Invalid("matrix is not invertible over GF(2)".into()))
        }
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Gf2Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.0.apply(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_is_invertible() {
        let id = Gf2Matrix::identity(5);
        assert_eq!(id.inverse().unwrap(), id);
        assert_eq!(id.apply(0b10110), 0b10110);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Gf2Matrix::from_columns(3, vec![0b001, 0b001, 0b100]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_none());
        assert!(Gf2Automorphism::new(m).is_err());
    }

    #[test]
    fn basis_images_define_the_map() {
        let domain = [0b011, 0b010, 0b100];
        let images = [0b011, 0b100, 0b010];
        let m = Gf2Matrix::from_basis_images(3, &domain, &images).unwrap();
        for (d, i) in domain.iter().zip(images) {
            assert_eq!(m.apply(*d), i);
        }
    }

    #[test]
    fn hex_round_trip() {
        let m = Gf2Matrix::from_columns(4, vec![0x2, 0x1, 0xc, 0x8]).unwrap();
        assert_eq!(Gf2Matrix::parse_hex(4, &m.to_hex()).unwrap(), m);
        assert!(Gf2Matrix::parse_hex(2, "1,4").is_err());
    }

    fn invertible(dim: usize) -> impl Strategy<Value = Gf2Matrix> {
        proptest::collection::vec(any::<u64>(), dim)
            .prop_map(move |cols| {
                let cols = cols.into_iter().map(|c| c & dim_mask(dim)).collect();
                Gf2Matrix::from_columns(dim, cols).unwrap()
            })
            .prop_filter("invertible", |m| m.is_invertible())
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(m in invertible(7)) {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.compose(&inv), Gf2Matrix::identity(7));
            prop_assert_eq!(inv.compose(&m), Gf2Matrix::identity(7));
        }

        #[test]
        fn apply_is_linear(m in invertible(6), a in 0u64..64, b in 0u64..64) {
            prop_assert_eq!(m.apply(a ^ b), m.apply(a) ^ m.apply(b));
        }

        #[test]
        fn transpose_is_involutive(m in invertible(5)) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }
    }
}
