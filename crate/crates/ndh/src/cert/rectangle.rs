//! Residue analysis of the primitive shapes modulo a fixed m.
//!
//! Powers of 2 and 3 are eventually periodic mod m, so the residues a shape
//! can take on the region x >= rho2, y >= rho3 are determined by a finite
//! grid of exponent classes. Outside that region one exponent is pinned
//! below its preperiod and the other is solved exactly, so the leftover
//! L-shaped strip contributes a finite, explicitly computable solution set.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::CheckedSub;

use crate::repr::{solve_succ_smooth, FormTag};
use crate::smooth::{
    is_power_of_three, is_power_of_two, mul_mod, power_orbit, PowerOrbit,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(v: u64) -> Parity {
        if v % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// What the residue grid says about solutions of shape = t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RectangleOutcome {
    /// No solutions at all: the periodic region misses t's residue and the
    /// strip has none either.
    Obstruction,
    /// The periodic region misses t's residue, so the strip solutions listed
    /// here are all of them.
    ExactComplete(Vec<(u32, u32)>),
    /// The periodic region can attain t's residue on these exponent classes
    /// (x mod p2, y mod p3). When both periods are even and every class
    /// agrees, the parities of any periodic-region solution are forced.
    Attainable {
        classes: BTreeSet<(u64, u64)>,
        forced_parities: Option<(Parity, Parity)>,
    },
}

/// The residues a shape attains on its periodic exponent region mod one m.
#[derive(Debug, Clone)]
pub struct FormRectangle {
    pub tag: FormTag,
    pub modulus: u64,
    pub rho2: u32,
    pub p2: u64,
    pub rho3: u32,
    pub p3: u64,
    attain: HashMap<u64, Vec<(u64, u64)>>,
}

fn shape_residue(tag: FormTag, r2: u64, r3: u64, m: u64) -> u64 {
    match tag {
        FormTag::A => (r2 + m - r3) % m,
        FormTag::B => (r3 + m - r2) % m,
        FormTag::C => (mul_mod(r2, r3, m) + m - 1) % m,
    }
}

impl FormRectangle {
    pub fn build_with(tag: FormTag, orbit2: &PowerOrbit, orbit3: &PowerOrbit) -> Self {
        assert_eq!(orbit2.base, 2);
        assert_eq!(orbit3.base, 3);
        assert_eq!(orbit2.modulus, orbit3.modulus);
        let m = orbit2.modulus;
        let (rho2, p2) = (orbit2.preperiod, orbit2.period);
        let (rho3, p3) = (orbit3.preperiod, orbit3.period);
        let mut attain: HashMap<u64, Vec<(u64, u64)>> = HashMap::new();
        for i in 0..p2 {
            let r2 = orbit2.residues[(rho2 as u64 + i) as usize];
            let cx = (rho2 as u64 + i) % p2;
            for j in 0..p3 {
                let r3 = orbit3.residues[(rho3 as u64 + j) as usize];
                let cy = (rho3 as u64 + j) % p3;
                let r = shape_residue(tag, r2, r3, m);
                attain.entry(r).or_default().push((cx, cy));
            }
        }
        for classes in attain.values_mut() {
            classes.sort_unstable();
            classes.dedup();
        }
        FormRectangle {
            tag,
            modulus: m,
            rho2,
            p2,
            rho3,
            p3,
            attain,
        }
    }

    pub fn build(tag: FormTag, modulus: u64) -> Self {
        let orbit2 = power_orbit(2, modulus);
        let orbit3 = power_orbit(3, modulus);
        Self::build_with(tag, &orbit2, &orbit3)
    }

    pub fn classes_for(&self, residue: u64) -> &[(u64, u64)] {
        self.attain.get(&residue).map_or(&[], Vec::as_slice)
    }

    pub fn outcome(&self, t: &BigUint) -> RectangleOutcome {
        let r = u64::try_from(t % self.modulus).expect("residue fits in u64");
        let classes = self.classes_for(r);
        if classes.is_empty() {
            let sols = small_region_solutions(self.tag, t, self.rho2, self.rho3);
            if sols.is_empty() {
                RectangleOutcome::Obstruction
            } else {
                RectangleOutcome::ExactComplete(sols)
            }
        } else {
            let forced = self.forced_parities(classes);
            RectangleOutcome::Attainable {
                classes: classes.iter().copied().collect(),
                forced_parities: forced,
            }
        }
    }

    fn forced_parities(&self, classes: &[(u64, u64)]) -> Option<(Parity, Parity)> {
        // Exponent parity is only pinned by its class when the period is even.
        if self.p2 % 2 != 0 || self.p3 % 2 != 0 {
            return None;
        }
        let first = (Parity::of(classes[0].0), Parity::of(classes[0].1));
        for &(cx, cy) in &classes[1..] {
            if (Parity::of(cx), Parity::of(cy)) != first {
                return None;
            }
        }
        Some(first)
    }
}

/// Build the grid for one shape and modulus and classify t against it.
pub fn rectangle_analysis(tag: FormTag, t: &BigUint, modulus: u64) -> RectangleOutcome {
    FormRectangle::build(tag, modulus).outcome(t)
}

/// Exact solutions with x below rho2 or y below rho3.
///
/// Fixing the low exponent pins the other side of the equation to a single
/// candidate power, so each strip cell is decided outright.
pub fn small_region_solutions(
    tag: FormTag,
    t: &BigUint,
    rho2: u32,
    rho3: u32,
) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    match tag {
        FormTag::A => {
            for x in 1..rho2 {
                let pow2 = BigUint::from(1u32) << x;
                if let Some(d) = pow2.checked_sub(t) {
                    if d != BigUint::from(0u32) {
                        if let Some(y) = is_power_of_three(&d) {
                            out.push((x, y));
                        }
                    }
                }
            }
            for y in 0..rho3 {
                let v = t + BigUint::from(3u32).pow(y);
                if let Some(x) = is_power_of_two(&v) {
                    out.push((x, y));
                }
            }
        }
        FormTag::B => {
            for x in 0..rho2 {
                let v = t + (BigUint::from(1u32) << x);
                if let Some(y) = is_power_of_three(&v) {
                    out.push((x, y));
                }
            }
            for y in 1..rho3 {
                let pow3 = BigUint::from(3u32).pow(y);
                if let Some(d) = pow3.checked_sub(t) {
                    if d != BigUint::from(0u32) {
                        if let Some(x) = is_power_of_two(&d) {
                            out.push((x, y));
                        }
                    }
                }
            }
        }
        FormTag::C => {
            if let Some((x, y)) = solve_succ_smooth(t) {
                if x < rho2 || y < rho3 {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
