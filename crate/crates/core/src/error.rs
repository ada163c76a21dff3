//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument or field violated its domain requirement.
    #[error("{name} must be {requirement}, got {value}")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A result left the representable range even in log-domain arithmetic.
    #[error("{what} exceeds the representable range")]
    Overflow { what: &'static str },

    /// The requested loss lies at or below the irreducible floor, so no finite
    /// compute reaches it. Carries the floor so callers can display the gap.
    #[error("target loss {target} is not above the irreducible floor {floor}")]
    InfeasibleTarget { target: f64, floor: f64 },

    /// An operation needed the optional vendor peak throughput and the
    /// efficiency state does not carry one.
    #[error("efficiency state has no peak throughput; utilization is undefined")]
    PeakThroughputMissing,

    /// Not enough run records to determine the requested law.
    #[error("fit needs at least {needed} records, got {got}")]
    TooFewRecords { needed: usize, got: usize },

    /// A record lacked the logical-compute field required by the compute-only
    /// fit. `index` is the zero-based position in the input slice.
    #[error("record {index} has no logical-compute value")]
    MissingCompute { index: usize },

    /// The run records carry no usable spread along one or both fit axes.
    #[error("degenerate run design: no spread along {axis}")]
    DegenerateDesign { axis: &'static str },

    /// Compute values in the records do not satisfy the span rule.
    #[error(
        "records span {decades:.2} decades of compute over {distinct} distinct values; \
         need at least 2 decades and 3 distinct values"
    )]
    InsufficientSpan { decades: f64, distinct: usize },
}
