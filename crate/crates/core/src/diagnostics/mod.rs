//! The quantities the scheme provably controls, and ℓ¹ errors against exact solutions.

pub mod bounds;
pub mod checker;
pub mod entropy;
pub mod l1;

pub use bounds::{
    equilibrium_gap_l1, grid_total_variation, l1_norm, moment_gap_l1, time_variation,
    total_variation, BoundReport,
};
pub use checker::{CheckMode, InvariantChecker, Tolerances};
pub use entropy::{
    entropy_fields, entropy_production, production_l1, EntropyFields, EntropyReport,
    DOMAIN_TOLERANCE,
};
pub use l1::{exact_cell_averages, l1_error, L1Error};
