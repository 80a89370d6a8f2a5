use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed validation (out of range, wrong sign, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact integer arithmetic exceeded the widest available integer.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// The requested scheme does not define the operation.
    #[error("unsupported scheme: {0}")]
    UnsupportedScheme(String),

    /// No closed form is implemented for this branching degree.
    #[error("no closed form for degree d={0}; use the quadrature oracle for general d")]
    UnsupportedDegree(u32),

    /// The offspring mean exceeds 1, so extinction is not almost sure.
    #[error("supercritical input: offspring mean {mean} exceeds 1")]
    Supercritical { mean: f64 },

    /// Every replica hit the event cap; no extinction time was observed.
    #[error("all {replicas} replicas were censored at event cap {event_cap}")]
    AllCensored { replicas: u64, event_cap: u64 },

    /// A numerical procedure failed (singular system, lost bracket, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
