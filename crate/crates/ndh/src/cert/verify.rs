//! Independent certificate checking.
//!
//! Everything here recomputes the facts a certificate claims using
//! different algorithms from the builder side: Brent cycle detection for
//! orbits instead of a first-seen map, a different deterministic
//! Miller-Rabin base set, iterative order computation instead of totient
//! reduction, and multiply-and-compare power tests instead of repeated
//! division. A certificate is accepted only if every claim reproduces.

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, Zero};

use crate::cert::chain::{verify_order_chain, ChainStep, OrderChain};
use crate::cert::{Certificate, SuccessorOutcome};
use crate::repr::FormTag;

fn vf_mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn vf_pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = vf_mul_mod(acc, b, m);
        }
        b = vf_mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

// Seven-base deterministic Miller-Rabin, exact for all 64-bit inputs.
const VF_MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

fn vf_is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for base in VF_MR_BASES {
        let a = base % n;
        if a == 0 {
            continue;
        }
        let mut x = vf_pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = vf_mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Cycle structure of e -> base^e mod m by Brent's algorithm.
fn vf_orbit_brent(base: u64, m: u64) -> (u64, u64) {
    let step = |r: u64| vf_mul_mod(r, base % m, m);
    let start = 1 % m;
    // Find the cycle length.
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = start;
    let mut hare = step(start);
    while tortoise != hare {
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare);
        lam += 1;
    }
    // Find the first index on the cycle.
    let mut tortoise = start;
    let mut hare = start;
    for _ in 0..lam {
        hare = step(hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = step(tortoise);
        hare = step(hare);
        mu += 1;
    }
    (mu, lam)
}

/// Least e >= 1 with base^e = 1 mod m, found by stepping; None when no
/// power of the base returns to 1.
fn vf_order_iterative(base: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(1);
    }
    let mut acc = base % m;
    for e in 1..=m {
        if acc == 1 {
            return Some(e);
        }
        acc = vf_mul_mod(acc, base % m, m);
    }
    None
}

fn vf_is_pow2(v: &BigUint) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let k = (v.bits() - 1) as u32;
    if (BigUint::one() << k) == *v {
        Some(k)
    } else {
        None
    }
}

fn vf_is_pow3(v: &BigUint) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let mut acc = BigUint::one();
    let mut k = 0u32;
    while acc < *v {
        acc *= 3u32;
        k += 1;
    }
    if acc == *v {
        Some(k)
    } else {
        None
    }
}

fn vf_shape_residue(tag: FormTag, r2: u64, r3: u64, m: u64) -> u64 {
    match tag {
        FormTag::A => (r2 + m - r3) % m,
        FormTag::B => (r3 + m - r2) % m,
        FormTag::C => (vf_mul_mod(r2, r3, m) + m - 1) % m,
    }
}

/// Exponent classes in the periodic region attaining residue `rt`.
fn vf_attaining_classes(tag: FormTag, rt: u64, m: u64) -> (u64, u64, u64, u64, Vec<(u64, u64)>) {
    let (rho2, p2) = vf_orbit_brent(2, m);
    let (rho3, p3) = vf_orbit_brent(3, m);
    let mut classes = Vec::new();
    for i in 0..p2 {
        let r2 = vf_pow_mod(2, rho2 + i, m);
        for j in 0..p3 {
            let r3 = vf_pow_mod(3, rho3 + j, m);
            if vf_shape_residue(tag, r2, r3, m) == rt {
                classes.push(((rho2 + i) % p2, (rho3 + j) % p3));
            }
        }
    }
    (rho2, p2, rho3, p3, classes)
}

/// Exact strip solutions below the preperiods, rebuilt with the verifier's
/// own power tests.
fn vf_strip_solutions(tag: FormTag, t: &BigUint, rho2: u64, rho3: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    match tag {
        FormTag::A => {
            for x in 1..rho2 as u32 {
                if let Some(d) = (BigUint::one() << x).checked_sub(t) {
                    if !d.is_zero() {
                        if let Some(y) = vf_is_pow3(&d) {
                            out.push((x, y));
                        }
                    }
                }
            }
            for y in 0..rho3 as u32 {
                if let Some(x) = vf_is_pow2(&(t + BigUint::from(3u32).pow(y))) {
                    out.push((x, y));
                }
            }
        }
        FormTag::B => {
            for x in 0..rho2 as u32 {
                if let Some(y) = vf_is_pow3(&(t + (BigUint::one() << x))) {
                    out.push((x, y));
                }
            }
            for y in 1..rho3 as u32 {
                if let Some(d) = BigUint::from(3u32).pow(y).checked_sub(t) {
                    if !d.is_zero() {
                        if let Some(x) = vf_is_pow2(&d) {
                            out.push((x, y));
                        }
                    }
                }
            }
        }
        FormTag::C => {
            if let Some((x, y)) = vf_succ_solution(t) {
                if (x as u64) < rho2 || (y as u64) < rho3 {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The unique (x, y) with x, y >= 1 and 2^x 3^y = t + 1, if any.
fn vf_succ_solution(t: &BigUint) -> Option<(u32, u32)> {
    let mut v = t + 1u32;
    let mut x = 0u32;
    let two = BigUint::from(2u32);
    while (&v % &two).is_zero() {
        v /= &two;
        x += 1;
    }
    let y = vf_is_pow3(&v)?;
    if x >= 1 && y >= 1 {
        Some((x, y))
    } else {
        None
    }
}

/// Bounded search for consecutive smooth pairs with both members < 2^64.
///
/// Returns the pairs as (x, y) exponent data: ((a2, b2), (a3, b3)) for the
/// smaller and larger member.
fn vf_consecutive_pairs_64() -> Vec<((u32, u32), (u32, u32))> {
    let mut values: Vec<(u128, u32, u32)> = Vec::new();
    for a in 0..64u32 {
        let mut v = 1u128 << a;
        let mut b = 0u32;
        while v < (1u128 << 64) {
            values.push((v, a, b));
            v *= 3;
            b += 1;
        }
    }
    values.sort_unstable();
    let mut pairs = Vec::new();
    for w in values.windows(2) {
        if w[1].0 - w[0].0 == 1 {
            pairs.push(((w[0].1, w[0].2), (w[1].1, w[1].2)));
        }
    }
    pairs
}

/// The consecutive-pair base fact, checked by bounded search: exactly
/// (1,2), (2,3), (3,4), (8,9) below 2^64.
pub fn gersonides_bounded_check() -> bool {
    let pairs = vf_consecutive_pairs_64();
    let values: Vec<(u128, u128)> = pairs
        .iter()
        .map(|&((a2, b2), (a3, b3))| {
            (
                (1u128 << a2) * 3u128.pow(b2),
                (1u128 << a3) * 3u128.pow(b3),
            )
        })
        .collect();
    values == vec![(1, 2), (2, 3), (3, 4), (8, 9)]
}

fn vf_gersonides_solutions(tag: FormTag) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for ((a_lo, b_lo), (a_hi, b_hi)) in vf_consecutive_pairs_64() {
        match tag {
            // 2^x - 3^y = 1 wants a pure power of 3 below a pure power of 2.
            FormTag::A => {
                if b_hi == 0 && a_lo == 0 && a_hi >= 1 {
                    out.push((a_hi, b_lo));
                }
            }
            // 3^y - 2^x = 1 wants the reverse, with y >= 1.
            FormTag::B => {
                if a_hi == 0 && b_lo == 0 && b_hi >= 1 {
                    out.push((a_lo, b_hi));
                }
            }
            FormTag::C => {}
        }
    }
    out.sort_unstable();
    out
}

fn vf_form_value(tag: FormTag, x: u32, y: u32) -> Option<BigUint> {
    let domain_ok = match tag {
        FormTag::A => x >= 1,
        FormTag::B => y >= 1,
        FormTag::C => x >= 1 && y >= 1,
    };
    if !domain_ok {
        return None;
    }
    let pow2 = BigUint::one() << x;
    let pow3 = BigUint::from(3u32).pow(y);
    let v = match tag {
        FormTag::A => pow2.checked_sub(&pow3)?,
        FormTag::B => pow3.checked_sub(&pow2)?,
        FormTag::C => pow2 * pow3 - 1u32,
    };
    if v.is_zero() {
        None
    } else {
        Some(v)
    }
}

fn vf_residue_rectangle(form: FormTag, t: &BigUint, modulus: u64, solutions: &[(u32, u32)]) -> bool {
    if modulus < 2 {
        return false;
    }
    let rt = match u64::try_from(t % modulus) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let (rho2, _, rho3, _, classes) = vf_attaining_classes(form, rt, modulus);
    if !classes.is_empty() {
        return false;
    }
    vf_strip_solutions(form, t, rho2, rho3) == solutions
}

fn vf_prime_split(
    form: FormTag,
    t: &BigUint,
    modulus: u64,
    targets: [u64; 2],
    solutions: &[(u32, u32)],
) -> bool {
    let expected_targets = match form {
        FormTag::A => [3u64, 7],
        FormTag::B => [5u64, 17],
        FormTag::C => return false,
    };
    if targets != expected_targets {
        return false;
    }
    let t64 = match u64::try_from(t) {
        Ok(v) => v,
        Err(_) => return false,
    };
    if !vf_is_prime_u64(t64) {
        return false;
    }
    if modulus < 2 {
        return false;
    }
    let (rho2, p2, rho3, p3, classes) = vf_attaining_classes(form, t64 % modulus, modulus);
    if p2 % 2 != 0 || p3 % 2 != 0 {
        return false;
    }
    if classes.iter().any(|&(cx, cy)| cx % 2 != 0 || cy % 2 != 0) {
        return false;
    }
    // Complete census: exact strip plus the tabulated even-exponent hits,
    // each re-checked as a genuine solution.
    let mut expected = vf_strip_solutions(form, t, rho2, rho3);
    for target in targets {
        if t64 == target {
            let hit = match (form, target) {
                (FormTag::A, 3) => (2, 0),
                (FormTag::A, 7) => (4, 2),
                (FormTag::B, 5) => (2, 2),
                (FormTag::B, 17) => (6, 4),
                _ => return false,
            };
            expected.push(hit);
        }
    }
    expected.sort_unstable();
    expected.dedup();
    if expected != solutions {
        return false;
    }
    solutions
        .iter()
        .all(|&(x, y)| vf_form_value(form, x, y).as_ref() == Some(t))
}

fn vf_chain(chain: &OrderChain, solutions: &[(u32, u32)]) -> bool {
    if !verify_order_chain(chain) {
        return false;
    }
    // Re-check every arithmetic fact with the verifier's own primitives.
    for step in &chain.steps {
        match *step {
            ChainStep::OrderFact { base, modulus, order } => {
                if vf_order_iterative(base, modulus) != Some(order) {
                    return false;
                }
            }
            ChainStep::DividesFact { divisor, base, exponent } => {
                if divisor < 2 || vf_pow_mod(base, exponent, divisor) != 1 {
                    return false;
                }
            }
            ChainStep::NotDividesFact { modulus, base, exponent } => {
                if modulus < 2 || vf_pow_mod(base, exponent, modulus) == 1 {
                    return false;
                }
            }
            _ => {}
        }
    }
    // Independent sweep below the anchor.
    let (x0, _) = chain.anchor;
    let mut expected = Vec::new();
    let x_min = match chain.form {
        FormTag::A => 1,
        FormTag::B => 0,
        FormTag::C => return false,
    };
    for x in x_min..=x0 {
        for y in 0..=200u32 {
            if vf_form_value(chain.form, x, y).as_ref() == Some(&chain.t) {
                expected.push((x, y));
            }
            // Past the target the difference only grows with y for shape B;
            // for shape A larger y only shrinks 2^x - 3^y.
            if BigUint::from(3u32).pow(y) > (BigUint::one() << x0.max(40)) + &chain.t {
                break;
            }
        }
    }
    expected.sort_unstable();
    expected == solutions
}

fn vf_successor(t: &BigUint, outcome: &SuccessorOutcome, solutions: &[(u32, u32)]) -> bool {
    let succ = t + 1u32;
    match *outcome {
        SuccessorOutcome::NotSmooth { blocking_prime } => {
            blocking_prime > 3
                && vf_is_prime_u64(blocking_prime)
                && (&succ % blocking_prime).is_zero()
                && solutions.is_empty()
        }
        SuccessorOutcome::Smooth { two_exp, three_exp } => {
            let rebuilt = (BigUint::one() << two_exp) * BigUint::from(3u32).pow(three_exp);
            if rebuilt != succ {
                return false;
            }
            let expected: Vec<(u32, u32)> = if two_exp >= 1 && three_exp >= 1 {
                vec![(two_exp, three_exp)]
            } else {
                Vec::new()
            };
            expected == solutions
        }
    }
}

fn vf_gersonides(form: FormTag, solutions: &[(u32, u32)]) -> bool {
    if form == FormTag::C {
        return false;
    }
    if !gersonides_bounded_check() {
        return false;
    }
    vf_gersonides_solutions(form) == solutions
}

/// Check a certificate from scratch. True means every claim reproduced.
pub fn verify(cert: &Certificate) -> bool {
    match cert {
        Certificate::ResidueRectangle {
            form,
            t,
            modulus,
            solutions,
        } => vf_residue_rectangle(*form, t, *modulus, solutions),
        Certificate::PrimeSplit {
            form,
            t,
            modulus,
            catalan_targets,
            solutions,
        } => vf_prime_split(*form, t, *modulus, *catalan_targets, solutions),
        Certificate::OrderChain { chain, solutions } => vf_chain(chain, solutions),
        Certificate::SuccessorSmoothness {
            t,
            outcome,
            solutions,
        } => vf_successor(t, outcome, solutions),
        Certificate::GersonidesAxiom { form, solutions } => vf_gersonides(*form, solutions),
    }
}
