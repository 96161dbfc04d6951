//! Scans and censuses over structured families: ranges of integers, the
//! 41-multiples, 48k+41 primes, Fermat and Mersenne primes, pairwise sums,
//! and abc-triple audits over 3-smooth member sets.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::cert::{CaseStatus, Classification, Classifier};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::smooth::{enumerate_smooth, factorize_u64, gcd_u64, is_prime, is_smooth};

/// The integers below 100 that are not differences of 3-smooth numbers.
pub const NDH_BELOW_100: [u64; 11] = [41, 43, 59, 67, 82, 83, 85, 86, 89, 91, 97];

/// The five known Fermat primes.
pub const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];

/// Exponents p with 2^p - 1 prime, kept to desk scale.
pub const MERSENNE_EXPONENTS: [u32; 8] = [2, 3, 5, 7, 13, 17, 19, 31];

/// One classified integer in a range scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n: u64,
    pub classification: Classification,
    /// Certificate kinds used by the closed cases, first-use order.
    pub kinds: Vec<&'static str>,
    pub rep_count: usize,
}

fn scan_one(classifier: &Classifier, n: u64) -> Result<ScanRow> {
    let analysis = classifier.analyze(&BigUint::from(n))?;
    let mut kinds: Vec<&'static str> = Vec::new();
    for case in &analysis.cases {
        if let CaseStatus::Closed(cert) = &case.status {
            let kind = cert.kind();
            if !kinds.contains(&kind) {
                kinds.push(kind);
            }
        }
    }
    let rep_count = match &analysis.classification {
        Classification::Representable { reps, .. } => reps.len(),
        _ => 0,
    };
    Ok(ScanRow {
        n,
        classification: analysis.classification,
        kinds,
        rep_count,
    })
}

/// Classify every integer in [lo, hi], in order. Partitioned over worker
/// threads when the configuration asks for more than one job.
pub fn ndh_scan(lo: u64, hi: u64, cfg: &Config) -> Result<Vec<ScanRow>> {
    if lo == 0 || lo > hi {
        return Err(Error::Config(format!(
            "scan range must satisfy 1 <= lo <= hi, got {lo}..{hi}"
        )));
    }
    let classifier = Classifier::new(cfg.clone())?;
    let ns: Vec<u64> = (lo..=hi).collect();
    if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
        pool.install(|| {
            ns.par_iter()
                .map(|&n| scan_one(&classifier, n))
                .collect::<Result<Vec<_>>>()
        })
    } else {
        ns.iter().map(|&n| scan_one(&classifier, n)).collect()
    }
}

/// Which prime power multiplies 41 in a 41-family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Pow2,
    Pow3,
}

impl FromStr for PowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PowerKind> {
        match s {
            "pow2" => Ok(PowerKind::Pow2),
            "pow3" => Ok(PowerKind::Pow3),
            other => Err(Error::Config(format!(
                "unknown power kind {other:?}, expected pow2 or pow3"
            ))),
        }
    }
}

/// Classify base^e * 41 for e = 0..=max_exp.
pub fn family_x41(
    kind: PowerKind,
    max_exp: u32,
    cfg: &Config,
) -> Result<Vec<(BigUint, Classification)>> {
    let base = match kind {
        PowerKind::Pow2 => 2u32,
        PowerKind::Pow3 => 3u32,
    };
    let classifier = Classifier::new(cfg.clone())?;
    let mut out = Vec::with_capacity(max_exp as usize + 1);
    for e in 0..=max_exp {
        let n = BigUint::from(base).pow(e) * 41u32;
        let analysis = classifier.analyze(&n)?;
        out.push((n, analysis.classification));
    }
    Ok(out)
}

/// The first `count` primes congruent to 41 mod 48, unclassified.
pub fn primes_48k41_list(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 41u64;
    while out.len() < count {
        if is_prime(&BigUint::from(p)).unwrap_or(false) {
            out.push(p);
        }
        p += 48;
    }
    out
}

/// Classify the first `count` primes congruent to 41 mod 48.
pub fn primes_48k41(count: usize, cfg: &Config) -> Result<Vec<(u64, Classification)>> {
    if count == 0 {
        return Err(Error::Config("prime count must be at least 1".into()));
    }
    let classifier = Classifier::new(cfg.clone())?;
    primes_48k41_list(count)
        .into_iter()
        .map(|p| {
            let analysis = classifier.analyze(&BigUint::from(p))?;
            Ok((p, analysis.classification))
        })
        .collect()
}

/// Classify every known Fermat prime.
pub fn fermat_report(cfg: &Config) -> Result<Vec<(u64, Classification)>> {
    let classifier = Classifier::new(cfg.clone())?;
    FERMAT_PRIMES
        .iter()
        .map(|&p| {
            let analysis = classifier.analyze(&BigUint::from(p))?;
            Ok((p, analysis.classification))
        })
        .collect()
}

/// Classify 2^p - 1 for each requested exponent, refusing exponents whose
/// 2^p - 1 is not prime.
pub fn mersenne_report(
    exponents: &[u32],
    cfg: &Config,
) -> Result<Vec<(u32, BigUint, Classification)>> {
    let classifier = Classifier::new(cfg.clone())?;
    let mut out = Vec::with_capacity(exponents.len());
    for &p in exponents {
        let value = (BigUint::one() << p) - 1u32;
        if !MERSENNE_EXPONENTS.contains(&p) && !is_prime(&value)? {
            return Err(Error::NotMersennePrime { p });
        }
        let analysis = classifier.analyze(&value)?;
        out.push((p, value, analysis.classification));
    }
    Ok(out)
}

/// Which fixed prime family a pairwise-sum scan draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumFamily {
    Fermat,
    Mersenne,
}

impl FromStr for SumFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<SumFamily> {
        match s {
            "fermat" => Ok(SumFamily::Fermat),
            "mersenne" => Ok(SumFamily::Mersenne),
            other => Err(Error::Config(format!(
                "unknown sum family {other:?}, expected fermat or mersenne"
            ))),
        }
    }
}

/// One pairwise sum with its 3-smoothness verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumRow {
    pub p: u64,
    pub q: u64,
    pub sum: u64,
    pub smooth: bool,
}

/// All unordered pairwise sums (self-pairs included) over a fixed family.
pub fn sum_scan(family: SumFamily) -> Vec<SumRow> {
    let members: Vec<u64> = match family {
        SumFamily::Fermat => FERMAT_PRIMES.to_vec(),
        SumFamily::Mersenne => MERSENNE_EXPONENTS
            .iter()
            .map(|&p| (1u64 << p) - 1)
            .collect(),
    };
    let mut out = Vec::new();
    for (i, &p) in members.iter().enumerate() {
        for &q in &members[i..] {
            let sum = p + q;
            out.push(SumRow {
                p,
                q,
                sum,
                smooth: is_smooth(&BigUint::from(sum)).is_some(),
            });
        }
    }
    out
}

/// Optional member-set extensions for an abc audit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AbcExtensions {
    /// Join the eleven certified values below 100.
    pub ndh_numbers: bool,
    /// Join this many 48k+41 primes (0 = none).
    pub primes_48k41: usize,
    pub fermat: bool,
    pub mersenne: bool,
}

/// A coprime triple a + b = c over the audited member set.
#[derive(Debug, Clone, PartialEq)]
pub struct AbcTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    /// Product of the distinct primes of a * b * c, exact.
    pub radical: BigUint,
    /// log(c) / log(radical), for reporting only.
    pub quality: f64,
    /// c > radical, decided by exact integer comparison.
    pub exceptional: bool,
}

fn radical_of(a: u64, b: u64, c: u64) -> BigUint {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for v in [a, b, c] {
        for (p, _) in factorize_u64(v) {
            primes.insert(p);
        }
    }
    let mut rad = BigUint::one();
    for p in primes {
        rad *= p;
    }
    rad
}

/// Every coprime triple a + b = c with all members in the audited set and
/// c at most `value_bound`, with exact radicals.
pub fn abc_audit(ext: &AbcExtensions, value_bound: u64) -> Result<Vec<AbcTriple>> {
    if value_bound < 9 {
        return Err(Error::Config(format!(
            "abc audit bound must be at least 9, got {value_bound}"
        )));
    }
    let mut members: BTreeSet<u64> = enumerate_smooth(&BigUint::from(value_bound))
        .iter()
        .map(|s| s.value().to_u64().expect("bounded by a u64"))
        .collect();
    if ext.ndh_numbers {
        members.extend(NDH_BELOW_100.iter().filter(|&&v| v <= value_bound));
    }
    members.extend(
        primes_48k41_list(ext.primes_48k41)
            .into_iter()
            .filter(|&v| v <= value_bound),
    );
    if ext.fermat {
        members.extend(FERMAT_PRIMES.iter().filter(|&&v| v <= value_bound));
    }
    if ext.mersenne {
        members.extend(
            MERSENNE_EXPONENTS
                .iter()
                .map(|&p| (1u64 << p) - 1)
                .filter(|&v| v <= value_bound),
        );
    }
    let mut out = Vec::new();
    for &c in &members {
        if c < 2 {
            continue;
        }
        for &a in members.range(1..=c / 2) {
            let b = c - a;
            if !members.contains(&b) || gcd_u64(a, b) != 1 {
                continue;
            }
            let radical = radical_of(a, b, c);
            let rad_f = radical.to_f64().unwrap_or(f64::INFINITY);
            let quality = if rad_f > 1.0 {
                (c as f64).ln() / rad_f.ln()
            } else {
                f64::INFINITY
            };
            let exceptional = BigUint::from(c) > radical;
            out.push(AbcTriple {
                a,
                b,
                c,
                radical,
                quality,
                exceptional,
            });
        }
    }
    Ok(out)
}

/// Outcome of checking that each member has a decided double or triple
/// that is also a certified non-difference.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DoubleTripleReport {
    /// Members whose 2x and 3x are both decided representable.
    pub violations: Vec<u64>,
    /// Members with an undecided double or triple and no certified one.
    pub undecided: Vec<u64>,
}

/// For each x in the set, check that 2x or 3x is certified as a
/// non-difference; undecided doubles are reported separately.
pub fn double_or_triple_check(ndh_set: &[u64], cfg: &Config) -> Result<DoubleTripleReport> {
    let classifier = Classifier::new(cfg.clone())?;
    let mut report = DoubleTripleReport::default();
    for &x in ndh_set {
        let doubled = classifier.analyze(&BigUint::from(2 * x))?.classification;
        let tripled = classifier.analyze(&BigUint::from(3 * x))?.classification;
        let is_ndh = |c: &Classification| matches!(c, Classification::Ndh { .. });
        let is_unknown = |c: &Classification| matches!(c, Classification::Unknown { .. });
        if is_ndh(&doubled) || is_ndh(&tripled) {
            continue;
        }
        if is_unknown(&doubled) || is_unknown(&tripled) {
            report.undecided.push(x);
        } else {
            report.violations.push(x);
        }
    }
    Ok(report)
}
