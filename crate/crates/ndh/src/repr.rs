//! Differences of 3-smooth numbers.
//!
//! Any equation n = h1 - h2 with both sides 3-smooth factors as n = g * t
//! where g = gcd(h1, h2) is 3-smooth and t is the value of one of three
//! coprime primitive shapes:
//!
//!   A: 2^x - 3^y      with x >= 1, y >= 0
//!   B: 3^y - 2^x      with y >= 1, x >= 0
//!   C: 2^x * 3^y - 1  with x >= 1, y >= 1
//!
//! Searching over these shapes per smooth divisor g of n enumerates every
//! representation of n up to an exponent bound.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, Zero};

use crate::config::{Config, HARD_BOUND_CEILING};
use crate::error::{Error, Result};
use crate::smooth::{
    enumerate_smooth, is_power_of_three, is_power_of_two, is_smooth, smooth_divisors, SmoothNumber,
};

/// Which of the three primitive shapes a value was written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormTag {
    A,
    B,
    C,
}

impl FormTag {
    pub const ALL: [FormTag; 3] = [FormTag::A, FormTag::B, FormTag::C];

    pub fn as_str(self) -> &'static str {
        match self {
            FormTag::A => "A",
            FormTag::B => "B",
            FormTag::C => "C",
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(FormTag::A),
            "B" => Ok(FormTag::B),
            "C" => Ok(FormTag::C),
            other => Err(Error::Config(format!("unknown form {other:?}"))),
        }
    }
}

/// A primitive shape instance with concrete exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveForm {
    pub tag: FormTag,
    pub x: u32,
    pub y: u32,
}

impl PrimitiveForm {
    pub fn new(tag: FormTag, x: u32, y: u32) -> Self {
        PrimitiveForm { tag, x, y }
    }

    /// Exponents of the smooth minuend contributed by this shape.
    pub fn minuend_part(&self) -> (u32, u32) {
        match self.tag {
            FormTag::A => (self.x, 0),
            FormTag::B => (0, self.y),
            FormTag::C => (self.x, self.y),
        }
    }

    /// Exponents of the smooth subtrahend contributed by this shape.
    pub fn subtrahend_part(&self) -> (u32, u32) {
        match self.tag {
            FormTag::A => (0, self.y),
            FormTag::B => (self.x, 0),
            FormTag::C => (0, 0),
        }
    }

    /// The positive integer this shape denotes, or None when the difference
    /// is not positive or an exponent violates the shape's domain.
    pub fn value(&self) -> Option<BigUint> {
        let domain_ok = match self.tag {
            FormTag::A => self.x >= 1,
            FormTag::B => self.y >= 1,
            FormTag::C => self.x >= 1 && self.y >= 1,
        };
        if !domain_ok {
            return None;
        }
        let (ma, mb) = self.minuend_part();
        let (sa, sb) = self.subtrahend_part();
        let minuend = SmoothNumber::new(ma, mb);
        let subtrahend = SmoothNumber::new(sa, sb);
        let v = minuend.value().checked_sub(subtrahend.value())?;
        if v.is_zero() {
            None
        } else {
            Some(v)
        }
    }
}

/// One way of writing n as a difference of two 3-smooth numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    minuend: SmoothNumber,
    subtrahend: SmoothNumber,
    n: BigUint,
    scale: SmoothNumber,
    primitive: PrimitiveForm,
}

impl Representation {
    /// Assemble a representation from its smooth scale and primitive part.
    ///
    /// Panics if the primitive has no positive value; the identity
    /// minuend - subtrahend = scale * primitive is true by construction.
    pub fn from_parts(scale: SmoothNumber, primitive: PrimitiveForm) -> Self {
        let t = primitive
            .value()
            .expect("primitive form must denote a positive integer");
        let (ma, mb) = primitive.minuend_part();
        let (sa, sb) = primitive.subtrahend_part();
        let minuend = SmoothNumber::new(scale.two_exp() + ma, scale.three_exp() + mb);
        let subtrahend = SmoothNumber::new(scale.two_exp() + sa, scale.three_exp() + sb);
        let n = scale.value() * t;
        debug_assert_eq!(minuend.value() - subtrahend.value(), n);
        Representation {
            minuend,
            subtrahend,
            n,
            scale,
            primitive,
        }
    }

    pub fn minuend(&self) -> &SmoothNumber {
        &self.minuend
    }

    pub fn subtrahend(&self) -> &SmoothNumber {
        &self.subtrahend
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn scale(&self) -> &SmoothNumber {
        &self.scale
    }

    pub fn primitive(&self) -> &PrimitiveForm {
        &self.primitive
    }
}

impl PartialOrd for Representation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Representation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.minuend.value(), self.subtrahend.value())
            .cmp(&(other.minuend.value(), other.subtrahend.value()))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.minuend.value(), self.subtrahend.value())
    }
}

/// Whether a representation list is known to be exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessStatus {
    Proven,
    UpToBound(u32),
}

/// Solve shape C exactly: t = 2^x * 3^y - 1 has a solution with x, y >= 1
/// iff t + 1 is 3-smooth with both exponents positive.
pub fn solve_succ_smooth(t: &BigUint) -> Option<(u32, u32)> {
    match is_smooth(&(t + 1u32)) {
        Some((x, y)) if x >= 1 && y >= 1 => Some((x, y)),
        _ => None,
    }
}

fn check_bound(bound_bits: u32) -> Result<()> {
    if bound_bits > HARD_BOUND_CEILING {
        return Err(Error::BoundTooLarge {
            bound: bound_bits,
            ceiling: HARD_BOUND_CEILING,
        });
    }
    Ok(())
}

/// All exponent pairs (x, y) within the bound whose shape value equals t.
///
/// The bound caps the power values at 2^bound_bits, so the search is
/// exhaustive only below that line.
pub fn search_form(tag: FormTag, t: &BigUint, bound_bits: u32) -> Result<Vec<(u32, u32)>> {
    check_bound(bound_bits)?;
    let mut out = Vec::new();
    match tag {
        FormTag::A => {
            let mut pow2 = BigUint::from(2u32);
            for x in 1..=bound_bits {
                if let Some(d) = pow2.checked_sub(t) {
                    if !d.is_zero() {
                        if let Some(y) = is_power_of_three(&d) {
                            out.push((x, y));
                        }
                    }
                }
                pow2 <<= 1;
            }
        }
        FormTag::B => {
            let cap = BigUint::one() << bound_bits;
            let mut pow3 = BigUint::from(3u32);
            let mut y = 1u32;
            while pow3 <= cap {
                if let Some(d) = pow3.checked_sub(t) {
                    if !d.is_zero() {
                        if let Some(x) = is_power_of_two(&d) {
                            out.push((x, y));
                        }
                    }
                }
                pow3 *= 3u32;
                y += 1;
            }
        }
        FormTag::C => {
            let succ = t + 1u32;
            if succ <= (BigUint::one() << bound_bits) {
                if let Some((x, y)) = solve_succ_smooth(t) {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every representation of n with power values below 2^bound_bits, found by
/// direct search. Sorted by minuend.
pub fn bounded_representations(n: &BigUint, bound_bits: u32) -> Result<Vec<Representation>> {
    check_bound(bound_bits)?;
    assert!(!n.is_zero(), "only positive integers have representations");
    let mut reps = Vec::new();
    for g in smooth_divisors(n) {
        let t = n / g.value();
        let t_even = (&t % 2u32).is_zero();
        for tag in FormTag::ALL {
            // Shapes A and C have odd values, as does B with x >= 1, so an
            // even t can only come from B with x = 0.
            if t_even && tag != FormTag::B {
                continue;
            }
            for (x, y) in search_form(tag, &t, bound_bits)? {
                reps.push(Representation::from_parts(
                    g.clone(),
                    PrimitiveForm::new(tag, x, y),
                ));
            }
        }
    }
    reps.sort();
    reps.dedup_by(|a, b| a.minuend == b.minuend && a.subtrahend == b.subtrahend);
    Ok(reps)
}

/// Representations of n together with a completeness verdict.
///
/// Runs the certificate pipeline; when every case closes with a certificate
/// the returned list is provably complete, otherwise it is complete up to
/// the configured bound.
pub fn all_representations(
    n: &BigUint,
    cfg: &Config,
) -> Result<(Vec<Representation>, CompletenessStatus)> {
    Ok(match crate::cert::classify(n, cfg)? {
        crate::cert::Classification::Representable { reps, completeness } => (reps, completeness),
        crate::cert::Classification::Ndh { .. } => (Vec::new(), CompletenessStatus::Proven),
        crate::cert::Classification::Unknown { searched_bound } => {
            (Vec::new(), CompletenessStatus::UpToBound(searched_bound))
        }
    })
}

/// Pairs of consecutive 3-smooth numbers up to `limit`.
pub fn consecutive_pairs(limit: &BigUint) -> Vec<(SmoothNumber, SmoothNumber)> {
    let all = enumerate_smooth(limit);
    let mut out = Vec::new();
    for w in all.windows(2) {
        if w[1].value() - w[0].value() == BigUint::one() {
            out.push((w[0].clone(), w[1].clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn form_values_follow_their_defining_differences() {
        assert_eq!(PrimitiveForm::new(FormTag::A, 2, 1).value(), Some(big(1)));
        assert_eq!(PrimitiveForm::new(FormTag::A, 5, 3).value(), Some(big(5)));
        assert_eq!(PrimitiveForm::new(FormTag::B, 6, 4).value(), Some(big(17)));
        assert_eq!(PrimitiveForm::new(FormTag::C, 4, 2).value(), Some(big(143)));
        // Negative differences and out-of-domain exponents denote nothing.
        assert_eq!(PrimitiveForm::new(FormTag::B, 4, 2).value(), None);
        assert_eq!(PrimitiveForm::new(FormTag::A, 0, 0).value(), None);
        assert_eq!(PrimitiveForm::new(FormTag::C, 1, 0).value(), None);
        assert_eq!(PrimitiveForm::new(FormTag::A, 1, 1).value(), None);
    }

    #[test]
    fn searches_match_hand_enumerated_solutions() {
        assert_eq!(
            search_form(FormTag::A, &big(5), 128).unwrap(),
            vec![(3, 1), (5, 3)]
        );
        assert_eq!(search_form(FormTag::B, &big(5), 128).unwrap(), vec![(2, 2)]);
        assert_eq!(
            search_form(FormTag::B, &big(17), 128).unwrap(),
            vec![(6, 4)]
        );
        assert_eq!(
            search_form(FormTag::A, &big(7), 128).unwrap(),
            vec![(3, 0), (4, 2)]
        );
        assert_eq!(search_form(FormTag::A, &big(41), 128).unwrap(), vec![]);
        assert_eq!(search_form(FormTag::B, &big(41), 128).unwrap(), vec![]);
        assert_eq!(search_form(FormTag::C, &big(41), 128).unwrap(), vec![]);
        assert_eq!(
            search_form(FormTag::C, &big(143), 128).unwrap(),
            vec![(4, 2)]
        );
    }

    #[test]
    fn oversized_bounds_are_refused() {
        assert!(matches!(
            search_form(FormTag::A, &big(5), HARD_BOUND_CEILING + 1),
            Err(Error::BoundTooLarge { .. })
        ));
        assert!(matches!(
            bounded_representations(&big(5), 10_000),
            Err(Error::BoundTooLarge { .. })
        ));
    }

    fn rep_pairs(n: u64, bound: u32) -> Vec<(u64, u64)> {
        bounded_representations(&big(n), bound)
            .unwrap()
            .iter()
            .map(|r| {
                (
                    u64::try_from(r.minuend().value()).unwrap(),
                    u64::try_from(r.subtrahend().value()).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn small_censuses_match_hand_enumeration() {
        assert_eq!(rep_pairs(1, 40), vec![(2, 1), (3, 2), (4, 3), (9, 8)]);
        assert_eq!(
            rep_pairs(2, 40),
            vec![(3, 1), (4, 2), (6, 4), (8, 6), (18, 16)]
        );
        assert_eq!(rep_pairs(5, 40), vec![(6, 1), (8, 3), (9, 4), (32, 27)]);
        assert_eq!(rep_pairs(7, 40), vec![(8, 1), (9, 2), (16, 9)]);
        assert_eq!(rep_pairs(41, 40), vec![]);
        assert_eq!(rep_pairs(17, 40), vec![(18, 1), (81, 64)]);
        assert_eq!(rep_pairs(727, 40), vec![(729, 2)]);
    }

    #[test]
    fn representations_expose_consistent_parts() {
        for rep in bounded_representations(&big(10), 40).unwrap() {
            assert_eq!(rep.minuend().value() - rep.subtrahend().value(), big(10));
            let t = rep.primitive().value().unwrap();
            assert_eq!(rep.scale().value() * &t, big(10));
        }
    }

    #[test]
    fn consecutive_smooth_pairs_stop_at_eight_nine() {
        let pairs = consecutive_pairs(&big(1_000_000));
        let values: Vec<(u64, u64)> = pairs
            .iter()
            .map(|(a, b)| {
                (
                    u64::try_from(a.value()).unwrap(),
                    u64::try_from(b.value()).unwrap(),
                )
            })
            .collect();
        assert_eq!(values, vec![(1, 2), (2, 3), (3, 4), (8, 9)]);
    }

    #[test]
    fn successor_solver_requires_both_exponents_positive() {
        assert_eq!(solve_succ_smooth(&big(5)), Some((1, 1)));
        assert_eq!(solve_succ_smooth(&big(143)), Some((4, 2)));
        assert_eq!(solve_succ_smooth(&big(7)), None);
        assert_eq!(solve_succ_smooth(&big(8)), None);
        assert_eq!(solve_succ_smooth(&big(41)), None);
    }

    proptest! {
        // Constructed differences are always recovered by the bounded search.
        #[test]
        fn constructed_differences_are_found(ma in 0u32..10, mb in 0u32..7, sa in 0u32..10, sb in 0u32..7) {
            let minuend = SmoothNumber::new(ma, mb);
            let subtrahend = SmoothNumber::new(sa, sb);
            prop_assume!(minuend.value() > subtrahend.value());
            let n = minuend.value() - subtrahend.value();
            let reps = bounded_representations(&n, 64).unwrap();
            let found = reps.iter().any(|r| {
                r.minuend().value() == minuend.value()
                    && r.subtrahend().value() == subtrahend.value()
            });
            prop_assert!(found, "missing {}-{}", minuend.value(), subtrahend.value());
        }

        // Every reported representation really is a difference equal to n.
        #[test]
        fn reported_representations_are_valid(n in 1u64..400) {
            let n = big(n);
            for rep in bounded_representations(&n, 48).unwrap() {
                prop_assert_eq!(&(rep.minuend().value() - rep.subtrahend().value()), &n);
                prop_assert_eq!(&(rep.scale().value() * rep.primitive().value().unwrap()), &n);
            }
        }
    }
}
