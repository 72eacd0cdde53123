//! The verification engine: weight decompositions, distribution operators,
//! weight-chain witnesses, fixed-space filtrations, faithfulness sweeps,
//! Jordan types, centralizer dimensions, and the Gaussian-integer example.

mod distops;
mod faithful;
mod filtration;
mod gauss;
mod jordan;
mod weights;

pub use distops::{
    distribution_table, table_indices, weight_chain_witness, ChainWitness, DistLawError,
    DistTable, NoWitness, SpecializationFailure,
};
pub use faithful::{
    faithfulness_enum, faithfulness_criterion, FaithfulnessError, FaithfulnessReport,
    FaithfulnessCriterion,
};
pub use filtration::{fixed_space_filtration, FiltrationError, FiltrationReport};
pub use gauss::{gaussian_example_report, witt_sqrt_minus_one, GaussReport};
pub use jordan::{centralizer_dim, jordan_block, jordan_matrix, jordan_type, JordanError, JordanType};
pub use weights::{weight_decomposition, WeightDecomposition, WeightError};
