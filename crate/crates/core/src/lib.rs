//! Cascaded group testing.
//!
//! A cascaded test is an ordered list of items; running it returns the first
//! defective item in the list, or nothing. This crate provides the test
//! semantics and decoder, feasibility checks for non-adaptive designs,
//! reduction to systematic form, explicit and randomized constructions, the
//! adaptive search, bounds on the optimal design size, and an exhaustive
//! solver for tiny instances.
//!
//! ```
//! use cascade::{decode, design_for, run_design, DefectiveSet};
//!
//! let design = design_for(9, 3).unwrap();
//! let hidden = DefectiveSet::from_items([2, 5, 9]).unwrap();
//! let outputs = run_design(&design, &hidden).unwrap();
//! assert_eq!(decode(&outputs), hidden);
//! ```

pub mod adaptive;
pub mod bounds;
pub mod budget;
pub mod compose;
pub mod construct;
pub mod design;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod format;
pub mod outcome;
pub mod systematic;
mod tower;

pub use adaptive::{
    adaptive_identify, adaptive_trace, AdaptiveOutcome, CascadeOracle, Query, SimulatedOracle,
};
pub use bounds::{
    bounds_summary, lower_bound_alpha_beta, lower_bound_corollary, lower_bound_es,
    lower_bound_thm4, upper_bound_randomized, upper_bound_recursive, BoundsSummary,
};
pub use budget::Budget;
pub use compose::compose;
pub use construct::{
    anchor_k3, design_for, design_k1, design_k2, procedure_a, randomized_design, rotations, Seed,
    RNG_NAME,
};
pub use design::{DefectiveSet, Design, ItemId, TestSeq};
pub use error::{Error, Result};
pub use exact::{exact_optimal_t, Certificate, ExactOptions, ExactResult};
pub use feasibility::{
    check_feasible_thm1, check_injective_oracle, check_systematic_thm3, f_count, is_systematic,
    FeasibilityReport, LeaderIndex, Witness,
};
pub use format::{parse_design, write_design};
pub use outcome::{decode, run_design, run_test, OutputVector};
pub use systematic::{strip_leader, to_systematic};
