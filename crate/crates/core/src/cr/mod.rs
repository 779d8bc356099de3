//! Construction of the CR-class groups: parameter scans, the automorphisms
//! `π_I`, the first-stage group `G₁ = G₀ ⋊ H`, and the normal-form group `G₂`.

mod g1;
mod g2;
mod params;
mod pi;
pub mod toys;

pub use g1::{build_g1, CrWitness};
pub use g2::{build_g2, G2Elem, G2Group, G2Law, RelationFamily, RelationReport};
pub use params::{check_cr_shape, smallest_params, CrParams, ParamClause, ParamViolation};
pub use pi::{build_pi, verify_pi, PiReport};
