use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: u32, found: usize },
    #[error("field order {p}^{m} exceeds the supported ceiling {ceiling}")]
    FieldTooLarge { p: u32, m: u32, ceiling: u64 },
    #[error("{n} does not divide the multiplicative group order {order}")]
    NoRootOfUnity { n: u64, order: u64 },
    #[error("subfield degree {sub} does not divide {top}")]
    NotSubfield { sub: u32, top: u32 },
    #[error("element is not in the expected subfield")]
    OutsideSubfield,
    #[error("zero has no {0}")]
    ZeroElement(&'static str),
    #[error("length {n} is not coprime to the field order {q}")]
    NotCoprime { n: u64, q: u64 },
    #[error("exponent {exponent} out of range for length {n}")]
    ExponentOutOfRange { exponent: i64, n: usize },
    #[error("defining set is not closed under multiplication by {q} modulo {n}")]
    NotClosed { n: usize, q: u64 },
    #[error("stride {b} is not coprime to {n}")]
    BadStride { b: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("expected {expected} symbols, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("defining set has size {achieved}, expected {expected} (overlap |L ∩ D| = {overlap})")]
    DefiningSetSize { expected: usize, achieved: usize, overlap: usize },
    #[error("erasure pattern not locally repairable: {0}")]
    Repair(String),
    #[error("enumeration of {words} words exceeds the ceiling {ceiling}")]
    EnumerationCeiling { words: u128, ceiling: u128 },
    #[error("hypothesis does not hold: {0}")]
    Hypothesis(String),
    #[error("degenerate certificate: {0}")]
    Degenerate(String),
    #[error("certificate failed verification: {0}")]
    CertificateRejected(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("search space of {size} candidates exceeds the limit {limit}")]
    SearchTooLarge { size: u128, limit: u128 },
    #[error("malformed code spec: {0}")]
    Spec(String),
}

impl Error {
    /// Resource ceilings are reported separately from usage errors by the CLI.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCeiling { .. } | Error::FieldTooLarge { .. } | Error::SearchTooLarge { .. }
        )
    }

    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::CertificateRejected(_))
    }
}
