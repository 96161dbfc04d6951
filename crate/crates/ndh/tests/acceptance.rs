//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test prints a single `ACCEPTANCE PASS:`/`ACCEPTANCE FAIL:` line
//! before asserting, so a plain test run doubles as a checklist. Runtime
//! ceilings and expected values are pinned as constants here.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;

use ndh::cert::chain::{fixture_five, verify_order_chain, ChainStep, ChainUnknown, OrderChain};
use ndh::cert::verify::verify;
use ndh::cert::{CaseStatus, Certificate, Classification, Classifier, SuccessorOutcome};
use ndh::config::Config;
use ndh::families::{
    abc_audit, double_or_triple_check, family_x41, fermat_report, mersenne_report, ndh_scan,
    primes_48k41, primes_48k41_list, AbcExtensions, PowerKind, FERMAT_PRIMES, MERSENNE_EXPONENTS,
    NDH_BELOW_100,
};
use ndh::repr::{all_representations, consecutive_pairs, CompletenessStatus, FormTag};
use ndh::smooth::enumerate_smooth;

const SMALL_SCAN_CEILING: Duration = Duration::from_secs(10);
const PAIR_SEARCH_CEILING: Duration = Duration::from_secs(1);
const ORACLE_CEILING: Duration = Duration::from_secs(60);
const ORACLE_RANGE: u64 = 2000;
const ORACLE_BOUND_BITS: u32 = 40;
const ABC_VALUE_BOUND: u64 = 1_000_000;

fn report(criterion: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("ACCEPTANCE PASS: criterion {criterion} — {what}");
    } else {
        println!(
            "ACCEPTANCE FAIL: criterion {criterion} — {what}: {}",
            failures.join("; ")
        );
    }
    assert!(failures.is_empty(), "criterion {criterion}: {failures:?}");
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rep_strings(n: u64, cfg: &Config) -> (Vec<String>, CompletenessStatus) {
    let (reps, completeness) = all_representations(&big(n), cfg).unwrap();
    (reps.iter().map(|r| r.to_string()).collect(), completeness)
}

#[test]
fn criterion_01_small_range_census() {
    let cfg = Config::default();
    let start = Instant::now();
    let rows = ndh_scan(1, 100, &cfg).unwrap();
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    let ndh: Vec<u64> = rows
        .iter()
        .filter(|r| r.classification.status_str() == "ndh")
        .map(|r| r.n)
        .collect();
    let representable = rows
        .iter()
        .filter(|r| r.classification.status_str() == "representable")
        .count();
    let unknown = rows
        .iter()
        .filter(|r| r.classification.status_str() == "unknown")
        .count();
    if ndh != NDH_BELOW_100 {
        failures.push(format!("non-difference set was {ndh:?}"));
    }
    if representable != 89 {
        failures.push(format!("expected 89 representable, got {representable}"));
    }
    if unknown != 0 {
        failures.push(format!("{unknown} undecided entries"));
    }
    if elapsed > SMALL_SCAN_CEILING {
        failures.push(format!("took {elapsed:?}"));
    }
    report(1, "scan of 1..=100 finds exactly the eleven non-differences", &failures);
}

#[test]
fn criterion_02_consecutive_pairs() {
    let limit = BigUint::from(10u64).pow(12);
    let start = Instant::now();
    let pairs: Vec<(u64, u64)> = consecutive_pairs(&limit)
        .iter()
        .map(|(a, b)| {
            (
                u64::try_from(a.value()).unwrap(),
                u64::try_from(b.value()).unwrap(),
            )
        })
        .collect();
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    if pairs != [(1, 2), (2, 3), (3, 4), (8, 9)] {
        failures.push(format!("pairs were {pairs:?}"));
    }
    if elapsed > PAIR_SEARCH_CEILING {
        failures.push(format!("took {elapsed:?}"));
    }
    report(2, "the only consecutive 3-smooth pairs below 10^12", &failures);
}

#[test]
fn criterion_03_fermat_census() {
    let cfg = Config::default();
    let mut failures = Vec::new();

    let expected: [(u64, &[&str]); 3] = [
        (3, &["4-1", "6-3", "9-6", "12-9", "27-24"]),
        (5, &["6-1", "8-3", "9-4", "32-27"]),
        (17, &["18-1", "81-64"]),
    ];
    for (member, want) in expected {
        let (reps, completeness) = rep_strings(member, &cfg);
        if reps != want {
            failures.push(format!("{member} gave {reps:?}"));
        }
        if completeness != CompletenessStatus::Proven {
            failures.push(format!("{member} census not certified complete"));
        }
    }

    // The difference-form case of 5 admits values modulo every pooled
    // modulus, so only the shipped order chain can close it.
    let analysis = Classifier::new(cfg.clone()).unwrap().analyze(&big(5)).unwrap();
    let five_a = analysis
        .cases
        .iter()
        .find(|c| c.form == FormTag::A && c.divisor.value() == &BigUint::one());
    match five_a.map(|c| &c.status) {
        Some(CaseStatus::Closed(Certificate::OrderChain { chain, .. }))
            if chain.t == big(5) && chain.anchor == (5, 3) => {}
        other => failures.push(format!("5's difference case closed by {other:?}")),
    }

    for report_row in fermat_report(&cfg).unwrap() {
        let (member, classification) = report_row;
        match (member, &classification) {
            (3 | 5 | 17, Classification::Representable { .. }) => {}
            (257 | 65537, Classification::Ndh { certificates }) => {
                for case in certificates {
                    if !verify(&case.certificate) {
                        failures.push(format!("{member} case ({}, {}) unverified", case.divisor, case.form));
                    }
                }
            }
            _ => failures.push(format!("{member} classified as {}", classification.status_str())),
        }
    }
    report(3, "census over the five Fermat primes", &failures);
}

#[test]
fn criterion_04_mersenne_census() {
    let cfg = Config::default();
    let mut failures = Vec::new();
    let expected: [(u64, &[&str]); 4] = [
        (7, &["8-1", "9-2", "16-9"]),
        (31, &["32-1"]),
        (127, &["128-1"]),
        (8191, &["8192-1"]),
    ];
    for (member, want) in expected {
        let (reps, completeness) = rep_strings(member, &cfg);
        if reps != want {
            failures.push(format!("{member} gave {reps:?}"));
        }
        if completeness != CompletenessStatus::Proven {
            failures.push(format!("{member} census not certified complete"));
        }
    }
    let rows = mersenne_report(&MERSENNE_EXPONENTS, &cfg).unwrap();
    if rows.len() != MERSENNE_EXPONENTS.len() {
        failures.push(format!("report covered {} exponents", rows.len()));
    }
    report(4, "censuses of 2^p - 1 for the desk-scale exponents", &failures);
}

/// Multiplicative order by bare repeated multiplication; panics if the base
/// is not a unit.
fn ord_by_stepping(base: u64, modulus: u64) -> u64 {
    let mut acc = base % modulus;
    let mut k = 1u64;
    while acc != 1 {
        acc = acc * base % modulus;
        k += 1;
        assert!(k <= modulus, "no order of {base} mod {modulus}");
    }
    k
}

#[test]
fn criterion_05_order_chain_arithmetic() {
    let mut failures = Vec::new();
    let order_facts = [
        (2u64, 27u64, 18u64),
        (2, 81, 54),
        (3, 32, 8),
        (2, 41, 20),
        (3, 11, 5),
        (3, 7, 6),
        (2, 271, 135),
    ];
    for (base, modulus, want) in order_facts {
        let got = ord_by_stepping(base, modulus);
        if got != want {
            failures.push(format!("ord({base}, {modulus}) = {got}, wanted {want}"));
        }
    }
    let factor_facts: [(BigUint, u64, u64); 3] = [
        (BigUint::from(3u64).pow(8) - 1u32, 41, 160),
        ((BigUint::one() << 20) - 1u32, 11, 95325),
        (BigUint::from(3u64).pow(30) - 1u32, 271, 759_745_874_888),
    ];
    for (value, p, q) in factor_facts {
        if value != big(p) * big(q) {
            failures.push(format!("{value} != {p} * {q}"));
        }
    }
    let chain = fixture_five();
    if !verify_order_chain(&chain) {
        failures.push("shipped chain does not conclude a contradiction".into());
    }
    report(5, "every arithmetic fact in the shipped order chain", &failures);
}

#[test]
fn criterion_06_41_multiples() {
    let cfg = Config::default();
    let mut failures = Vec::new();
    for (kind, max_exp) in [(PowerKind::Pow2, 10u32), (PowerKind::Pow3, 6)] {
        for (n, classification) in family_x41(kind, max_exp, &cfg).unwrap() {
            match classification {
                Classification::Ndh { certificates } => {
                    for case in &certificates {
                        if !verify(&case.certificate) {
                            failures.push(format!("{n}: case ({}, {}) unverified", case.divisor, case.form));
                        }
                    }
                }
                other => failures.push(format!("{n} classified as {}", other.status_str())),
            }
        }
    }
    for (guard, needed) in [(728u64, "729-1"), (255, "256-1")] {
        let (reps, completeness) = rep_strings(guard, &cfg);
        if !reps.iter().any(|r| r == needed) {
            failures.push(format!("{guard} gave {reps:?}, missing {needed}"));
        }
        if completeness != CompletenessStatus::Proven {
            failures.push(format!("{guard} census not certified complete"));
        }
    }
    report(6, "2^e*41 (e <= 10) and 3^e*41 (e <= 6) with their guard cases", &failures);
}

/// Primality by unoptimized trial division, as a cross-check generator.
fn trial_division_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[test]
fn criterion_07_48k41_primes() {
    let cfg = Config::default();
    let mut failures = Vec::new();

    let mut expected = Vec::new();
    let mut p = 41u64;
    while expected.len() < 10 {
        if trial_division_prime(p) {
            expected.push(p);
        }
        p += 48;
    }
    let listed = primes_48k41_list(10);
    if listed != expected {
        failures.push(format!("prime list was {listed:?}, trial division says {expected:?}"));
    }
    if listed[..6] != [41, 89, 137, 233, 281, 521] {
        failures.push(format!("leading primes were {:?}", &listed[..6]));
    }

    for (prime, classification) in primes_48k41(10, &cfg).unwrap() {
        match classification {
            Classification::Ndh { certificates } => {
                for case in &certificates {
                    if !verify(&case.certificate) {
                        failures.push(format!("{prime}: case ({}, {}) unverified", case.divisor, case.form));
                    }
                }
            }
            other => failures.push(format!("{prime} classified as {}", other.status_str())),
        }
    }
    report(7, "the first ten primes of the form 48k + 41", &failures);
}

#[test]
fn criterion_08_abc_audit() {
    let mut failures = Vec::new();

    let base = abc_audit(&AbcExtensions::default(), ABC_VALUE_BOUND).unwrap();
    let base_exceptional: Vec<(u64, u64, u64)> = base
        .iter()
        .filter(|t| t.exceptional)
        .map(|t| (t.a, t.b, t.c))
        .collect();
    if base_exceptional != [(1, 8, 9)] {
        failures.push(format!("3-smooth-only exceptional set was {base_exceptional:?}"));
    }
    if let Some(t) = base.iter().find(|t| (t.a, t.b, t.c) == (1, 8, 9)) {
        if t.radical != big(6) {
            failures.push(format!("(1,8,9) radical was {}", t.radical));
        }
    }

    let extensions: [(&str, AbcExtensions); 4] = [
        ("ndh", AbcExtensions { ndh_numbers: true, ..Default::default() }),
        ("48k+41", AbcExtensions { primes_48k41: 10, ..Default::default() }),
        ("fermat", AbcExtensions { fermat: true, ..Default::default() }),
        ("mersenne", AbcExtensions { mersenne: true, ..Default::default() }),
    ];
    for (label, ext) in &extensions {
        let triples = abc_audit(ext, ABC_VALUE_BOUND).unwrap();
        let extra: Vec<(u64, u64, u64)> = triples
            .iter()
            .filter(|t| t.exceptional && (t.a, t.b, t.c) != (1, 8, 9))
            .map(|t| (t.a, t.b, t.c))
            .collect();
        if !extra.is_empty() {
            failures.push(format!("{label} extension adds exceptional {extra:?}"));
        }
        if *label == "fermat" {
            match triples.iter().find(|t| (t.a, t.b, t.c) == (3, 5, 8)) {
                Some(t) if !t.exceptional => {}
                Some(_) => failures.push("(3,5,8) flagged exceptional".into()),
                None => failures.push("(3,5,8) missing from the fermat extension".into()),
            }
        }
    }
    report(8, "abc quality audit at bound 10^6 over all extensions", &failures);
}

#[test]
fn criterion_09_oracle_equivalence() {
    let cfg = Config {
        exponent_bound: ORACLE_BOUND_BITS,
        ..Config::default()
    };
    let start = Instant::now();

    // Oracle: every difference of two enumerated 3-smooth values. The
    // enumeration is sorted, so inner differences grow monotonically.
    let values: Vec<BigUint> = enumerate_smooth(&(BigUint::one() << ORACLE_BOUND_BITS))
        .iter()
        .map(|s| s.value().clone())
        .collect();
    let range = big(ORACLE_RANGE);
    let mut by_n: Vec<BTreeSet<(BigUint, BigUint)>> =
        vec![BTreeSet::new(); ORACLE_RANGE as usize + 1];
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let diff = &values[j] - &values[i];
            if diff > range {
                break;
            }
            let n = u64::try_from(&diff).unwrap() as usize;
            by_n[n].insert((values[j].clone(), values[i].clone()));
        }
    }

    let mut mismatches = 0u64;
    let mut first = String::new();
    for n in 1..=ORACLE_RANGE {
        let (reps, _) = all_representations(&big(n), &cfg).unwrap();
        let got: BTreeSet<(BigUint, BigUint)> = reps
            .iter()
            .map(|r| (r.minuend().value().clone(), r.subtrahend().value().clone()))
            .collect();
        if got != by_n[n as usize] {
            mismatches += 1;
            if first.is_empty() {
                first = format!("first at n = {n}: {got:?} vs {:?}", by_n[n as usize]);
            }
        }
    }
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    if mismatches != 0 {
        failures.push(format!("{mismatches} mismatches; {first}"));
    }
    if elapsed > ORACLE_CEILING {
        failures.push(format!("took {elapsed:?}"));
    }
    report(9, "pipeline output equals brute force for n <= 2000 at bound 2^40", &failures);
}

#[test]
fn criterion_10_certificate_robustness() {
    let cfg = Config::default();
    let classifier = Classifier::new(cfg).unwrap();
    let mut failures = Vec::new();

    let mut targets: Vec<BigUint> = (1u64..=1000).map(big).collect();
    targets.extend([big(728), big(255)]);
    targets.extend(FERMAT_PRIMES.map(big));
    targets.extend(MERSENNE_EXPONENTS.map(|p| (BigUint::one() << p) - 1u32));
    targets.extend((0u32..=10).map(|e| big(41) << e));
    targets.extend((0u32..=6).map(|e| big(41) * big(3u64.pow(e))));
    targets.extend(primes_48k41_list(10).into_iter().map(big));

    let mut checked = 0u64;
    for n in &targets {
        for case in &classifier.analyze(n).unwrap().cases {
            if let CaseStatus::Closed(cert) = &case.status {
                checked += 1;
                if !verify(cert) {
                    failures.push(format!("emitted case ({}, {}) of {n} rejected", case.divisor, case.form));
                }
            }
        }
    }
    if checked < 2500 {
        failures.push(format!("only {checked} certificates exercised"));
    }

    let rect = |form, t: u64, modulus, solutions: Vec<(u32, u32)>| Certificate::ResidueRectangle {
        form,
        t: big(t),
        modulus,
        solutions,
    };
    let split = |form, t: u64, modulus, catalan_targets, solutions: Vec<(u32, u32)>| {
        Certificate::PrimeSplit {
            form,
            t: big(t),
            modulus,
            catalan_targets,
            solutions,
        }
    };
    let chain_mut = |f: &dyn Fn(&mut OrderChain)| {
        let mut c = fixture_five();
        f(&mut c);
        Certificate::OrderChain {
            solutions: vec![(3, 1), (5, 3)],
            chain: c,
        }
    };
    let mutations: Vec<(&str, Certificate)> = vec![
        ("attainable modulus", rect(FormTag::A, 41, 7, vec![])),
        ("wrong target", rect(FormTag::A, 45, 8, vec![])),
        ("dropped strip solution", rect(FormTag::B, 5, 8, vec![])),
        ("invented strip solution", rect(FormTag::B, 5, 8, vec![(2, 2), (3, 3)])),
        ("split without parity forcing", split(FormTag::B, 41, 8, [5, 17], vec![])),
        ("split on oddly-attained target", split(FormTag::B, 43, 24, [5, 17], vec![])),
        ("split dropping a census entry", split(FormTag::B, 17, 24, [5, 17], vec![])),
        ("split with swapped target table", split(FormTag::B, 41, 24, [3, 7], vec![])),
        ("split on a composite", split(FormTag::B, 91, 24, [5, 17], vec![])),
        (
            "chain with false order fact",
            chain_mut(&|c| {
                c.steps[0] = ChainStep::OrderFact {
                    base: 2,
                    modulus: 27,
                    order: 9,
                }
            }),
        ),
        ("chain missing conclusion", chain_mut(&|c| {
            c.steps.pop();
        })),
        ("chain missing a transfer", chain_mut(&|c| {
            c.steps.remove(7);
        })),
        ("chain with wrong anchor", chain_mut(&|c| c.anchor = (5, 2))),
        (
            "chain with unjustified non-divisor",
            chain_mut(&|c| {
                c.steps[3] = ChainStep::NonDivisorConstraint {
                    unknown: ChainUnknown::A,
                    divisor: 5,
                }
            }),
        ),
        (
            "chain with false divides fact",
            chain_mut(&|c| {
                c.steps[16] = ChainStep::DividesFact {
                    divisor: 271,
                    base: 3,
                    exponent: 15,
                }
            }),
        ),
        (
            "successor witness not dividing",
            Certificate::SuccessorSmoothness {
                t: big(41),
                outcome: SuccessorOutcome::NotSmooth { blocking_prime: 11 },
                solutions: vec![],
            },
        ),
        (
            "successor witness composite",
            Certificate::SuccessorSmoothness {
                t: big(41),
                outcome: SuccessorOutcome::NotSmooth { blocking_prime: 6 },
                solutions: vec![],
            },
        ),
        (
            "successor with wrong exponents",
            Certificate::SuccessorSmoothness {
                t: big(17),
                outcome: SuccessorOutcome::Smooth {
                    two_exp: 2,
                    three_exp: 2,
                },
                solutions: vec![(2, 2)],
            },
        ),
        (
            "axiom dropping a base solution",
            Certificate::GersonidesAxiom {
                form: FormTag::A,
                solutions: vec![(1, 0)],
            },
        ),
        (
            "axiom inventing a base solution",
            Certificate::GersonidesAxiom {
                form: FormTag::B,
                solutions: vec![(1, 1), (2, 2), (3, 2)],
            },
        ),
    ];
    assert_eq!(mutations.len(), 20);
    for (name, cert) in &mutations {
        if verify(cert) {
            failures.push(format!("mutation accepted: {name}"));
        }
    }
    report(10, "all emitted certificates verify and all 20 mutations are rejected", &failures);
}

#[test]
fn criterion_11_double_or_triple() {
    let cfg = Config::default();
    let mut failures = Vec::new();
    let certified: Vec<u64> = ndh_scan(1, 1000, &cfg)
        .unwrap()
        .iter()
        .filter(|r| r.classification.status_str() == "ndh")
        .map(|r| r.n)
        .collect();
    if certified.len() < NDH_BELOW_100.len() {
        failures.push(format!("only {} certified non-differences", certified.len()));
    }
    let outcome = double_or_triple_check(&certified, &cfg).unwrap();
    if !outcome.violations.is_empty() {
        failures.push(format!("decided violations at {:?}", outcome.violations));
    }
    if failures.is_empty() {
        println!(
            "ACCEPTANCE PASS: criterion 11 — no certified x <= 1000 has both 2x and 3x representable ({} undecided doubles reported)",
            outcome.undecided.len()
        );
        return;
    }
    report(11, "doubling or tripling preserves non-difference status", &failures);
}
