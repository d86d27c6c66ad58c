//! Finite-alphabet multihypothesis testing: joint laws, posteriors, the MAP
//! error and its lower bounds.

pub mod approx;
mod bounds;
mod joint;
mod posterior;

pub use bounds::{
    asymptotic_pv_bound, bound_report, generalized_pv_bound, generalized_vh_at_optimum, information_density,
    map_equality_set, map_error_probability, pv_event_mass, theta_stabilization, theta_stabilization_with,
    verdu_han_bound, BoundReport, GeneralizedVerduHan, Stabilization, StabilizationConfig, VerduHan,
};
pub use joint::{build_joint, JointDistribution};
pub use posterior::{posterior, tilted_posterior, PosteriorColumn};
