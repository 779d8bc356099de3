//! Finite truncations of profinite products and the measure arithmetic on them.

mod cover;
mod profile;
mod tail;
mod truncation;
mod witness;
mod xcbar;

pub use cover::{slalom_cover_bounds, CoverBounds, COVER_CANDIDATE_CAP, COVER_POINT_CAP};
pub use profile::{
    parse_profile, ratio_step, tower_less, validate_profile, CrLevel, Num, ProfileParams,
    ProfileReport, ProfileRow, RatioOutcome, MATERIALIZE_BITS,
};
pub use tail::{tail_cover_measure, TailMeasure};
pub use truncation::{cylinder_measure, CylinderSet, ProductTruncation, Slalom};
pub use witness::{build_witness_cbar, LevelWitness, WitnessReport, CAPTURED_TUPLE_CAP};
pub use xcbar::{default_threshold, pair_counts, x_cbar, x_cbar_naive, PairCounts, XcbarReport};
