use num_bigint::BigUint;
use thiserror::Error;

/// Errors surfaced by the library.
///
/// Everything here is a caller mistake or a documented range limit, never an
/// internal inconsistency; internal invariant breaks panic instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Multiplicative order is only defined for units mod `modulus`.
    #[error("base {base} is not coprime to modulus {modulus}")]
    NotCoprime { base: u64, modulus: u64 },

    /// Exponent bounds above the hard ceiling are refused rather than
    /// silently clamped.
    #[error("exponent bound {bound} exceeds ceiling {ceiling}")]
    BoundTooLarge { bound: u32, ceiling: u32 },

    /// A certificate constructor that requires a prime target was handed a
    /// composite.
    #[error("{n} is not prime")]
    NotPrime { n: BigUint },

    /// Mersenne reports only accept exponents whose 2^p - 1 is prime.
    #[error("2^{p} - 1 is not prime")]
    NotMersennePrime { p: u32 },

    /// Deterministic primality testing is exact below 2^64 only.
    #[error("primality test out of range for {n} (supported below 2^64)")]
    PrimalityRange { n: BigUint },

    /// The requested certificate family does not apply to this form.
    #[error("certificate family does not support this form")]
    UnsupportedForm,

    /// Malformed configuration file or option value.
    #[error("config error: {0}")]
    Config(String),

    /// Malformed serialized document (bad JSON, unknown kind, unparseable
    /// number); the message carries position info where available.
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
