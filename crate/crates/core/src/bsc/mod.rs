//! Block codes over the binary symmetric and erasure channels.

mod channel;
mod code;
mod pairwise;
mod ties;

pub use channel::{bec_joint, bec_joint_with, bsc_joint, bsc_joint_with, BscParams, Limits, CEILING_ENV, ERASURE};
pub use code::{BlockCode, Word};
pub use pairwise::{
    binomial, count_dominated, count_dominated_closed_form, count_equidistant, dominated_at_distance,
    omega_by_flips, omega_exact_probability, omega_lower_bound, pair_tie_probability, pairwise_bound, PairwiseBound,
};
pub use ties::{
    nearest_codeword_pairs, theorem1_gap_check, tie_cover_bounds, tie_report, tie_report_with, CodewordTies,
    GapCheck, TieReport,
};
