//! Exhaustive and structured verifiers for the CR axioms, the partition
//! lemma, equation (⋆), the `B_I` partition and the crucial-lemma counts.

mod axioms;
mod count;
pub(crate) mod crucial;
mod partition;

pub use axioms::{check_cr_axioms, CrAxiomReport};
pub use count::{
    count_x_naive, count_x_structured, count_x_structured_degenerate, count_x_structured_with,
    CountMethod, CountReport, NAIVE_PAIR_CAP,
};
pub use crucial::{
    bound_hypotheses, check_b_partition, check_equation_star, crucial_witness,
    stage1_clause_d_violations, stage1_clause_e, CrucialReport, CrucialWitness, PartitionReport,
    STAR_SAMPLES,
};
pub use partition::{find_partition_istar, partition_holds, PartitionChoice};
