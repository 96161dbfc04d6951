//! 3-smooth numbers (integers of the form 2^a * 3^b) and the modular
//! arithmetic primitives built on top of them: valuations, smooth divisor
//! enumeration, deterministic primality below 2^64, multiplicative orders,
//! and eventually-periodic power orbits modulo a fixed modulus.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A positive integer of the form 2^a * 3^b, carried together with its
/// exponent pair.
///
/// The value is redundant with the exponents but keeping it materialized
/// makes comparisons and arithmetic on enumeration paths cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothNumber {
    two_exp: u32,
    three_exp: u32,
    value: BigUint,
}

impl SmoothNumber {
    pub fn new(two_exp: u32, three_exp: u32) -> Self {
        let value = (BigUint::one() << two_exp) * BigUint::from(3u32).pow(three_exp);
        SmoothNumber {
            two_exp,
            three_exp,
            value,
        }
    }

    pub fn two_exp(&self) -> u32 {
        self.two_exp
    }

    pub fn three_exp(&self) -> u32 {
        self.three_exp
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    fn times2(&self) -> Self {
        SmoothNumber {
            two_exp: self.two_exp + 1,
            three_exp: self.three_exp,
            value: &self.value * 2u32,
        }
    }

    fn times3(&self) -> Self {
        SmoothNumber {
            two_exp: self.two_exp,
            three_exp: self.three_exp + 1,
            value: &self.value * 3u32,
        }
    }
}

impl PartialOrd for SmoothNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SmoothNumber {
    // Value order; equal values force equal exponents by unique factorization,
    // so this is consistent with Eq.
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for SmoothNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// All 3-smooth numbers up to and including `limit`, in increasing order.
pub fn enumerate_smooth(limit: &BigUint) -> Vec<SmoothNumber> {
    if limit.is_zero() {
        return Vec::new();
    }
    let mut out = vec![SmoothNumber::new(0, 0)];
    // Classic two-pointer merge of the *2 and *3 streams.
    let mut i2 = 0usize;
    let mut i3 = 0usize;
    loop {
        let c2 = out[i2].times2();
        let c3 = out[i3].times3();
        let next = c2.value().min(c3.value()).clone();
        if next > *limit {
            break;
        }
        let take2 = *c2.value() == next;
        let take3 = *c3.value() == next;
        if take2 {
            i2 += 1;
        }
        if take3 {
            i3 += 1;
        }
        // On a tie both constructions denote the same number.
        out.push(if take2 { c2 } else { c3 });
    }
    out
}

/// The 2-adic and 3-adic parts of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuations {
    pub v2: u32,
    pub v3: u32,
    pub cofactor: BigUint,
}

pub fn valuations(n: &BigUint) -> Valuations {
    assert!(!n.is_zero(), "valuations of zero are undefined");
    let v2 = n.trailing_zeros().unwrap_or(0) as u32;
    let mut rest = n >> v2;
    let mut v3 = 0u32;
    let three = BigUint::from(3u32);
    while (&rest % &three).is_zero() {
        rest /= &three;
        v3 += 1;
    }
    Valuations {
        v2,
        v3,
        cofactor: rest,
    }
}

/// Exponent pair (a, b) when n = 2^a * 3^b, else None.
pub fn is_smooth(n: &BigUint) -> Option<(u32, u32)> {
    if n.is_zero() {
        return None;
    }
    let v = valuations(n);
    if v.cofactor.is_one() {
        Some((v.v2, v.v3))
    } else {
        None
    }
}

/// Every 3-smooth divisor of n, in increasing order.
pub fn smooth_divisors(n: &BigUint) -> Vec<SmoothNumber> {
    let v = valuations(n);
    let mut out = Vec::with_capacity((v.v2 as usize + 1) * (v.v3 as usize + 1));
    for a in 0..=v.v2 {
        for b in 0..=v.v3 {
            out.push(SmoothNumber::new(a, b));
        }
    }
    out.sort();
    out
}

pub(crate) fn is_power_of_two(n: &BigUint) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let k = n.trailing_zeros().unwrap_or(0);
    if (n >> k).is_one() {
        Some(k as u32)
    } else {
        None
    }
}

pub(crate) fn is_power_of_three(n: &BigUint) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let three = BigUint::from(3u32);
    let mut k = 0u32;
    while !rest.is_one() {
        if !(&rest % &three).is_zero() {
            return None;
        }
        rest /= &three;
        k += 1;
    }
    Some(k)
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test, exact for n < 2^64.
///
/// Larger inputs are refused; callers that can see bigger numbers must keep
/// their prime-dependent reasoning below that line.
pub fn is_prime(n: &BigUint) -> Result<bool> {
    let n64 = match u64::try_from(n) {
        Ok(v) => v,
        Err(_) => return Err(Error::PrimalityRange { n: n.clone() }),
    };
    Ok(is_prime_u64(n64))
}

// Miller-Rabin over the first twelve primes is exact for all 64-bit inputs.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, k: &mut u32| {
        if *k > 0 {
            out.push((p, *k));
            *k = 0;
        }
    };
    let mut k = 0u32;
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    push(2, &mut k);
    let mut p = 3u64;
    while p.checked_mul(p).map_or(false, |sq| sq <= n) {
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        push(p, &mut k);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize_u64(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Least e >= 1 with base^e == 1 (mod modulus). Requires gcd(base, modulus) = 1.
pub fn multiplicative_order(base: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::NotCoprime { base, modulus });
    }
    if modulus == 1 {
        return Ok(1);
    }
    if gcd_u64(base % modulus, modulus) != 1 {
        return Err(Error::NotCoprime { base, modulus });
    }
    let mut order = euler_phi(modulus);
    for (p, _) in factorize_u64(order) {
        while order % p == 0 && pow_mod(base, order / p, modulus) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// The eventually periodic sequence base^0, base^1, ... modulo `modulus`.
///
/// `residues` holds the first `preperiod + period` terms; everything after
/// index `preperiod` repeats with the stated period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOrbit {
    pub base: u64,
    pub modulus: u64,
    pub preperiod: u32,
    pub period: u64,
    pub residues: Vec<u64>,
}

impl PowerOrbit {
    pub fn residue_at(&self, e: u64) -> u64 {
        let pre = self.preperiod as u64;
        if e < pre {
            self.residues[e as usize]
        } else {
            self.residues[(pre + (e - pre) % self.period) as usize]
        }
    }
}

/// Walk powers of `base` mod `modulus` until the first repeated residue.
pub fn power_orbit(base: u64, modulus: u64) -> PowerOrbit {
    assert!(modulus >= 1, "modulus must be positive");
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut residues = Vec::new();
    let mut r = 1 % modulus;
    loop {
        if let Some(&first) = seen.get(&r) {
            return PowerOrbit {
                base,
                modulus,
                preperiod: first as u32,
                period: (residues.len() - first) as u64,
                residues,
            };
        }
        seen.insert(r, residues.len());
        residues.push(r);
        r = mul_mod(r, base % modulus, modulus);
    }
}
