//! The finite-group abstraction and its concrete realizations.

mod cyclic;
mod elementary;
pub mod file;
pub mod gf2;
mod involutions;
mod ops;
mod product;
mod regular;
mod semidirect;
mod symmetric;

use std::fmt::{self, Debug};
use std::hash::Hash;

use num_bigint::BigUint;
use rand::RngCore;

use crate::error::{Error, Result};

pub use cyclic::Cyclic;
pub use elementary::ElementaryAbelian2;
pub use gf2::{Gf2Automorphism, Gf2Matrix};
pub use involutions::{involution_report, CommutingInvolutionSequence, InvolutionReport};
pub use ops::*;
pub use product::DirectProduct;
pub use regular::{RegularRepresentation, DEFAULT_REGULAR_CAP};
pub use semidirect::{SdElem, Semidirect};
pub use symmetric::{
    centralizer_order_from_cycle_type, factorial, partitions, Perm, Symmetric, PARTITION_DEGREE_CAP,
};

/// Groups with more elements than this refuse to enumerate.
pub const ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    ElementaryAbelian2,
    Semidirect,
    Symmetric,
    NormalFormG2,
    DirectProduct,
    Cyclic,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::ElementaryAbelian2 => "elementary-abelian-2",
            GroupKind::Semidirect => "semidirect",
            GroupKind::Symmetric => "symmetric",
            GroupKind::NormalFormG2 => "normal-form-g2",
            GroupKind::DirectProduct => "direct-product",
            GroupKind::Cyclic => "cyclic",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text.trim() {
            "elementary-abelian-2" => GroupKind::ElementaryAbelian2,
            "semidirect" => GroupKind::Semidirect,
            "symmetric" => GroupKind::Symmetric,
            "normal-form-g2" => GroupKind::NormalFormG2,
            "direct-product" => GroupKind::DirectProduct,
            "cyclic" => GroupKind::Cyclic,
            other => return Err(Error::Invalid(format!("unknown group kind `{other}`"))),
        })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite group with canonical, value-like elements.
///
/// Two elements are equal iff their payloads are equal, so elements can be
/// stored in sets and used as map keys. Groups are immutable once built and
/// may be shared across threads.
pub trait FiniteGroup: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn kind(&self) -> GroupKind;

    fn order(&self) -> BigUint;

    fn identity(&self) -> Self::Elem;

    /// Unchecked group law; callers guarantee membership.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Whether the payload is a well-formed element of this group.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// All elements in a fixed canonical order (identity first).
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn format_element(&self, a: &Self::Elem) -> String;

    fn parse_element(&self, text: &str) -> Result<Self::Elem>;

    /// Analytic centralizer order when the realization has one.
    fn centralizer_order(&self, _s: &Self::Elem) -> Option<BigUint> {
        None
    }

    /// A generating set, when the realization knows one.
    fn generators(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// `max_{s ≠ e} |C(s)|` computed without enumeration, when available.
    fn analytic_max_centralizer(&self) -> Option<Result<BigUint>> {
        None
    }

    fn describe(&self) -> String {
        format!("{} of order {}", self.kind(), self.order())
    }

    fn is_enumerable(&self) -> bool {
        self.order() <= BigUint::from(ENUMERATION_CAP)
    }
}

pub(crate) fn enumeration_guard<G: FiniteGroup + ?Sized>(g: &G) -> Result<u64> {
    let order = g.order();
    if order > BigUint::from(ENUMERATION_CAP) {
        return Err(Error::too_large(
            format!("enumeration of {}", g.kind()),
            order,
            ENUMERATION_CAP,
        ));
    }
    Ok(u64::try_from(order).expect("order below cap"))
}
