//! The even-exponent factorization route to exact solution lists.
//!
//! When a residue grid forces both exponents of a periodic-region solution
//! to be even, the shape value factors over integers: with x = 2l, y = 2k,
//!
//!   2^x - 3^y = (2^l - 3^k)(2^l + 3^k)
//!   3^y - 2^x = (3^k - 2^l)(3^k + 2^l)
//!
//! so a prime target forces the smaller factor to be 1. The equations
//! 2^l - 3^k = 1 and 3^k - 2^l = 1 have only the classical solution pairs,
//! which caps the possible prime targets at two per shape. Everything below
//! the grid's preperiods is swept exactly, so the union is a complete
//! solution list.

use num_bigint::BigUint;

use crate::cert::rectangle::{small_region_solutions, FormRectangle, Parity, RectangleOutcome};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::repr::FormTag;
use crate::smooth::is_prime;

/// All (s, u) with 3^s - 2^u = 1.
pub const UNIT_GAP_32: [(u32, u32); 2] = [(1, 1), (2, 3)];

/// All (l, k) with 2^l - 3^k = 1.
pub const UNIT_GAP_23: [(u32, u32); 2] = [(1, 0), (2, 1)];

/// The only primes reachable by an all-even periodic-region solution.
pub fn catalan_targets(tag: FormTag) -> Result<[u64; 2]> {
    match tag {
        // t = (2^l + 3^k) over 2^l - 3^k = 1.
        FormTag::A => Ok([3, 7]),
        // t = (3^k + 2^l) over 3^k - 2^l = 1.
        FormTag::B => Ok([5, 17]),
        FormTag::C => Err(Error::UnsupportedForm),
    }
}

/// The even-exponent solutions attached to each reachable prime target.
pub fn catalan_solutions(tag: FormTag, t: &BigUint) -> Vec<(u32, u32)> {
    let t64 = match u64::try_from(t) {
        Ok(v) => v,
        Err(_) => return Vec::new(),
    };
    match (tag, t64) {
        (FormTag::A, 3) => vec![(2, 0)],
        (FormTag::A, 7) => vec![(4, 2)],
        (FormTag::B, 5) => vec![(2, 2)],
        (FormTag::B, 17) => vec![(6, 4)],
        _ => Vec::new(),
    }
}

/// Complete solution list for a prime t whose grid forces even exponents:
/// the exact strip sweep plus the even-exponent solutions.
pub fn split_census(tag: FormTag, t: &BigUint, rho2: u32, rho3: u32) -> Vec<(u32, u32)> {
    let mut out = small_region_solutions(tag, t, rho2, rho3);
    out.extend(catalan_solutions(tag, t));
    out.sort_unstable();
    out.dedup();
    out
}

/// Try to close a prime target via the even-exponent factorization.
///
/// Returns Ok(None) when this modulus does not force both parities even;
/// composite targets are an error because the factorization argument only
/// bounds prime values.
pub fn prime_split(tag: FormTag, t: &BigUint, modulus: u64) -> Result<Option<Certificate>> {
    let targets = catalan_targets(tag)?;
    if !is_prime(t)? {
        return Err(Error::NotPrime { n: t.clone() });
    }
    let rect = FormRectangle::build(tag, modulus);
    match rect.outcome(t) {
        RectangleOutcome::Attainable {
            forced_parities: Some((Parity::Even, Parity::Even)),
            ..
        } => {
            let solutions = split_census(tag, t, rect.rho2, rect.rho3);
            Ok(Some(Certificate::PrimeSplit {
                form: tag,
                t: t.clone(),
                modulus,
                catalan_targets: targets,
                solutions,
            }))
        }
        _ => Ok(None),
    }
}
