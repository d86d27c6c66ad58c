//! Exact lower bounds on the error probability of multihypothesis testing,
//! and the tie / no-tie decomposition of MAP decoding for block codes over
//! the binary symmetric channel.
//!
//! Every routine is generic over [`Scalar`]. Instantiated with [`Rational`]
//! all sums and comparisons are exact, which is what the bound inequalities
//! need; `f64` and `f32` give fast approximate evaluation of the same code.
//!
//! ```
//! use pvlab::{bsc, hypothesis, ExactProbability};
//!
//! let code = bsc::BlockCode::from_strs(&["00", "11"]).unwrap();
//! let params = bsc::BscParams::new(ExactProbability::parse("1/4").unwrap()).unwrap();
//! let joint = bsc::bsc_joint(&code, &params).unwrap();
//! assert_eq!(hypothesis::map_error_probability(&joint).to_string(), "1/4");
//! assert_eq!(hypothesis::asymptotic_pv_bound(&joint).to_string(), "1/16");
//! ```

pub mod bsc;
pub mod error;
pub mod exponent;
pub mod hypothesis;
pub mod io;
pub mod probability;
pub mod scalar;

pub use error::{Error, Result};
pub use probability::{parse_rational, Probability};
pub use scalar::Scalar;

/// Arbitrary-precision rational; the exact scalar.
pub type Rational = num_rational::BigRational;

pub type ExactProbability = Probability<Rational>;
pub type ExactJoint = hypothesis::JointDistribution<Rational>;
pub type ExactBscParams = bsc::BscParams<Rational>;
pub type ExactTieReport = bsc::TieReport<Rational>;
pub type ExactSeries = exponent::ExponentSeries<Rational>;

pub type JointF64 = hypothesis::JointDistribution<f64>;
pub type JointF32 = hypothesis::JointDistribution<f32>;
pub type BscParamsF64 = bsc::BscParams<f64>;
