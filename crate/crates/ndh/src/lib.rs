//! Differences of 3-smooth numbers, with machine-checkable certificates.
//!
//! A *3-smooth* (here: *harmonic*) number is `2^a * 3^b`. This crate decides,
//! for a positive integer `n`, whether `n` can be written as a difference of
//! two harmonic numbers, and backs each verdict with a certificate that an
//! independent checker re-derives from scratch:
//!
//! * **Representable** — an explicit, certified-complete list of all
//!   representations `n = m - s`, or a list complete up to a search bound.
//! * **Non-difference** — one closed case per smooth divisor of `n`, each a
//!   residue-rectangle obstruction, a prime-splitting argument with its
//!   finite census, a multiplicative-order chain, a successor smoothness
//!   check, or the bounded consecutive-pair fact for the unit case.
//!
//! The decision procedure factors `n = g * t` over every smooth divisor `g`
//! and studies the primitive values `2^x - 3^y`, `3^y - 2^x`, and
//! `2^x * 3^y - 1` modulo a configurable pool of moduli. Beyond single
//! classifications the crate scans ranges, reports on structured families
//! (Fermat and Mersenne primes, multiples of 41, primes `48k + 41`, pairwise
//! prime sums), and audits abc-triple quality over harmonic numbers extended
//! by those families.
//!
//! The `ndh` binary exposes all of this on the command line; see
//! [`cli::run`]. Certificates serialize to a stable JSON document format
//! (see [`document`]) so that verification can happen in a separate process
//! from classification.

pub mod cache;
pub mod cert;
pub mod cli;
pub mod config;
pub mod document;
pub mod error;
pub mod families;
pub mod repr;
pub mod smooth;
pub mod table;

pub use cert::{classify, Analysis, CaseReport, CaseStatus, Certificate, Classification, Classifier};
pub use config::Config;
pub use error::{Error, Result};
pub use repr::{CompletenessStatus, FormTag, PrimitiveForm, Representation};
pub use smooth::{enumerate_smooth, is_smooth, SmoothNumber};
