//! Weighted homogeneous surface singularities `k[x,y,z]/(f)` classified by a-invariant.

pub mod arith;
pub mod dpd;
pub mod enumerator;
pub mod error;
pub mod graded_ring;
pub mod paper;
pub mod resolution;

pub use arith::{cf_evaluate, hj_expansion, solve_branch_congruence, HjExpansion, Rational};
pub use dpd::{Branch, DimsVerdict, FractionalDivisor};
pub use enumerator::{classify, ClassificationEntry, ClassifyOptions};
pub use error::{Error, Result};
pub use graded_ring::WeightedType;
pub use resolution::ResolutionGraph;
