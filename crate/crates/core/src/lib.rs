//! Exact z-measures on partitions, Ewens-type measures on perfect matchings,
//! and the zonal spherical functions of the Gelfand pair `(S(2n), H(n))`.
//!
//! All arithmetic is exact: weights are Gaussian rationals
//! ([`scalar::ExactScalar`]) and every identity is checked with `==`.

pub mod error;
pub mod matching;
pub mod partition;
pub mod perm;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod spherical;
pub mod symfunc;
pub mod verify;
pub mod zmeasure;

pub use error::{Error, Result};
pub use partition::Partition;
pub use report::{Report, Status};
pub use scalar::ExactScalar;
