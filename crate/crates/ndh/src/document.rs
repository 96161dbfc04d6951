//! JSON documents for classifications and order chains.
//!
//! All numbers are carried as decimal strings so downstream tools never
//! truncate values past 53 bits. Field order is fixed by the struct
//! definitions; unknown fields are rejected on decode.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cert::chain::{ChainStep, ChainUnknown, OrderChain};
use crate::cert::verify::verify;
use crate::cert::{Analysis, CaseStatus, Certificate, Classification, SuccessorOutcome};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::repr::{CompletenessStatus, FormTag, PrimitiveForm};
use crate::smooth::{smooth_divisors, SmoothNumber};

/// Serialized classification of one integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CertificateDocument {
    pub n: String,
    pub status: StatusDoc,
    pub cases: Vec<CaseDoc>,
    pub tool_version: String,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct StatusDoc {
    /// "ndh", "representable", or "unknown".
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven: Option<bool>,
    /// Search bound exponent, present when a bound qualifies the result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CaseDoc {
    pub divisor: String,
    pub form: String,
    /// Certificate kind, or "open" for an uncertified case.
    pub kind: String,
    pub parameters: ParamsDoc,
    /// Representations this case contributes, as [minuend, subtrahend]
    /// value pairs.
    pub solutions: Vec<[String; 2]>,
}

/// Kind-specific certificate data. Exactly the fields belonging to the
/// case's kind are present.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ParamsDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalan_targets: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<ChainStepDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    /// Exponent pairs (x, y) behind the case's solutions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct WitnessDoc {
    /// "blockingPrime" or "exponents".
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_exp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_exp: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ChainStepDoc {
    pub step: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<String>,
    /// "a" or "b".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknown: Option<String>,
}

/// Standalone serialized order chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ChainDocument {
    pub form: String,
    pub t: String,
    pub anchor: [String; 2],
    pub steps: Vec<ChainStepDoc>,
}

fn doc_err(what: impl std::fmt::Display) -> Error {
    Error::Document(what.to_string())
}

fn parse_big(s: &str, what: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| doc_err(format!("{what} is not a decimal integer: {s:?}")))
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| doc_err(format!("{what} is not a decimal integer: {s:?}")))
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| doc_err(format!("{what} is not a decimal integer: {s:?}")))
}

fn require<T>(field: Option<T>, what: &str) -> Result<T> {
    field.ok_or_else(|| doc_err(format!("missing field {what}")))
}

fn exponent_doc(solutions: &[(u32, u32)]) -> Vec<[String; 2]> {
    solutions
        .iter()
        .map(|&(x, y)| [x.to_string(), y.to_string()])
        .collect()
}

fn parse_exponents(doc: &[[String; 2]]) -> Result<Vec<(u32, u32)>> {
    doc.iter()
        .map(|[x, y]| Ok((parse_u32(x, "exponent")?, parse_u32(y, "exponent")?)))
        .collect()
}

/// Minuend and subtrahend values of one scaled solution.
fn value_pair(scale: &SmoothNumber, form: FormTag, x: u32, y: u32) -> [String; 2] {
    let pf = PrimitiveForm::new(form, x, y);
    let (mx, my) = pf.minuend_part();
    let (sx, sy) = pf.subtrahend_part();
    let pow = |a: u32, b: u32| (BigUint::one() << a) * BigUint::from(3u32).pow(b);
    let minuend = scale.value() * pow(mx, my);
    let subtrahend = scale.value() * pow(sx, sy);
    [minuend.to_string(), subtrahend.to_string()]
}

fn value_pairs(scale: &SmoothNumber, form: FormTag, sols: &[(u32, u32)]) -> Vec<[String; 2]> {
    sols.iter()
        .map(|&(x, y)| value_pair(scale, form, x, y))
        .collect()
}

fn chain_step_doc(step: &ChainStep) -> ChainStepDoc {
    let unknown_str = |u: ChainUnknown| match u {
        ChainUnknown::A => "a".to_string(),
        ChainUnknown::B => "b".to_string(),
    };
    match *step {
        ChainStep::OrderFact { base, modulus, order } => ChainStepDoc {
            step: "orderFact".into(),
            base: Some(base.to_string()),
            modulus: Some(modulus.to_string()),
            order: Some(order.to_string()),
            ..ChainStepDoc::default()
        },
        ChainStep::DividesFact { divisor, base, exponent } => ChainStepDoc {
            step: "dividesFact".into(),
            divisor: Some(divisor.to_string()),
            base: Some(base.to_string()),
            exponent: Some(exponent.to_string()),
            ..ChainStepDoc::default()
        },
        ChainStep::NotDividesFact { modulus, base, exponent } => ChainStepDoc {
            step: "notDividesFact".into(),
            modulus: Some(modulus.to_string()),
            base: Some(base.to_string()),
            exponent: Some(exponent.to_string()),
            ..ChainStepDoc::default()
        },
        ChainStep::DivisorConstraint { unknown, divisor } => ChainStepDoc {
            step: "divisorConstraint".into(),
            unknown: Some(unknown_str(unknown)),
            divisor: Some(divisor.to_string()),
            ..ChainStepDoc::default()
        },
        ChainStep::NonDivisorConstraint { unknown, divisor } => ChainStepDoc {
            step: "nonDivisorConstraint".into(),
            unknown: Some(unknown_str(unknown)),
            divisor: Some(divisor.to_string()),
            ..ChainStepDoc::default()
        },
        ChainStep::Conclusion => ChainStepDoc {
            step: "conclusion".into(),
            ..ChainStepDoc::default()
        },
    }
}

fn parse_chain_step(doc: &ChainStepDoc) -> Result<ChainStep> {
    let unknown = |s: &Option<String>| -> Result<ChainUnknown> {
        match require(s.as_deref(), "unknown")? {
            "a" => Ok(ChainUnknown::A),
            "b" => Ok(ChainUnknown::B),
            other => Err(doc_err(format!("unknown gap label {other:?}"))),
        }
    };
    let num = |s: &Option<String>, what: &str| -> Result<u64> {
        parse_u64(require(s.as_deref(), what)?, what)
    };
    match doc.step.as_str() {
        "orderFact" => Ok(ChainStep::OrderFact {
            base: num(&doc.base, "base")?,
            modulus: num(&doc.modulus, "modulus")?,
            order: num(&doc.order, "order")?,
        }),
        "dividesFact" => Ok(ChainStep::DividesFact {
            divisor: num(&doc.divisor, "divisor")?,
            base: num(&doc.base, "base")?,
            exponent: num(&doc.exponent, "exponent")?,
        }),
        "notDividesFact" => Ok(ChainStep::NotDividesFact {
            modulus: num(&doc.modulus, "modulus")?,
            base: num(&doc.base, "base")?,
            exponent: num(&doc.exponent, "exponent")?,
        }),
        "divisorConstraint" => Ok(ChainStep::DivisorConstraint {
            unknown: unknown(&doc.unknown)?,
            divisor: num(&doc.divisor, "divisor")?,
        }),
        "nonDivisorConstraint" => Ok(ChainStep::NonDivisorConstraint {
            unknown: unknown(&doc.unknown)?,
            divisor: num(&doc.divisor, "divisor")?,
        }),
        "conclusion" => Ok(ChainStep::Conclusion),
        other => Err(doc_err(format!("unknown chain step {other:?}"))),
    }
}

fn case_doc(
    divisor: &SmoothNumber,
    form: FormTag,
    status: &CaseStatus,
) -> (String, ParamsDoc, Vec<[String; 2]>) {
    match status {
        CaseStatus::Closed(cert) => {
            let sols = cert.solutions();
            let params = match cert {
                Certificate::ResidueRectangle { modulus, .. } => ParamsDoc {
                    modulus: Some(modulus.to_string()),
                    exponents: Some(exponent_doc(sols)),
                    ..ParamsDoc::default()
                },
                Certificate::PrimeSplit {
                    modulus,
                    catalan_targets,
                    ..
                } => ParamsDoc {
                    modulus: Some(modulus.to_string()),
                    catalan_targets: Some([
                        catalan_targets[0].to_string(),
                        catalan_targets[1].to_string(),
                    ]),
                    exponents: Some(exponent_doc(sols)),
                    ..ParamsDoc::default()
                },
                Certificate::OrderChain { chain, .. } => ParamsDoc {
                    anchor: Some([chain.anchor.0.to_string(), chain.anchor.1.to_string()]),
                    steps: Some(chain.steps.iter().map(chain_step_doc).collect()),
                    exponents: Some(exponent_doc(sols)),
                    ..ParamsDoc::default()
                },
                Certificate::SuccessorSmoothness { outcome, .. } => {
                    let witness = match *outcome {
                        SuccessorOutcome::NotSmooth { blocking_prime } => WitnessDoc {
                            kind: "blockingPrime".into(),
                            prime: Some(blocking_prime.to_string()),
                            two_exp: None,
                            three_exp: None,
                        },
                        SuccessorOutcome::Smooth { two_exp, three_exp } => WitnessDoc {
                            kind: "exponents".into(),
                            prime: None,
                            two_exp: Some(two_exp.to_string()),
                            three_exp: Some(three_exp.to_string()),
                        },
                    };
                    ParamsDoc {
                        witness: Some(witness),
                        exponents: Some(exponent_doc(sols)),
                        ..ParamsDoc::default()
                    }
                }
                Certificate::GersonidesAxiom { .. } => ParamsDoc {
                    exponents: Some(exponent_doc(sols)),
                    ..ParamsDoc::default()
                },
            };
            (cert.kind().to_string(), params, value_pairs(divisor, form, sols))
        }
        CaseStatus::Open { bound, found } => (
            "open".to_string(),
            ParamsDoc {
                exponents: Some(exponent_doc(found)),
                bound: Some(bound.to_string()),
                ..ParamsDoc::default()
            },
            value_pairs(divisor, form, found),
        ),
    }
}

/// Build the serialized form of a classification run.
pub fn document_from_analysis(analysis: &Analysis, cfg: &Config) -> CertificateDocument {
    let status = match &analysis.classification {
        Classification::Ndh { .. } => StatusDoc {
            kind: "ndh".into(),
            proven: None,
            bound: None,
        },
        Classification::Representable { completeness, .. } => match completeness {
            CompletenessStatus::Proven => StatusDoc {
                kind: "representable".into(),
                proven: Some(true),
                bound: None,
            },
            CompletenessStatus::UpToBound(b) => StatusDoc {
                kind: "representable".into(),
                proven: Some(false),
                bound: Some(b.to_string()),
            },
        },
        Classification::Unknown { searched_bound } => StatusDoc {
            kind: "unknown".into(),
            proven: None,
            bound: Some(searched_bound.to_string()),
        },
    };
    let cases = analysis
        .cases
        .iter()
        .map(|case| {
            let (kind, parameters, solutions) = case_doc(&case.divisor, case.form, &case.status);
            CaseDoc {
                divisor: case.divisor.value().to_string(),
                form: case.form.to_string(),
                kind,
                parameters,
                solutions,
            }
        })
        .collect();
    CertificateDocument {
        n: analysis.n.to_string(),
        status,
        cases,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: cfg.hash(),
    }
}

/// Render a document as pretty JSON with a trailing newline.
pub fn encode(doc: &CertificateDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization cannot fail");
    s.push('\n');
    s
}

const CASE_KINDS: [&str; 6] = [
    "residueRectangle",
    "primeSplit",
    "orderChain",
    "successorSmoothness",
    "gersonidesAxiom",
    "open",
];

/// Parse and structurally validate a document: fields known, kinds known,
/// numbers decimal. Semantic checking is `verify_document`.
pub fn decode(text: &str) -> Result<CertificateDocument> {
    let doc: CertificateDocument = serde_json::from_str(text).map_err(doc_err)?;
    parse_big(&doc.n, "n")?;
    if !["ndh", "representable", "unknown"].contains(&doc.status.kind.as_str()) {
        return Err(doc_err(format!("unknown status kind {:?}", doc.status.kind)));
    }
    for case in &doc.cases {
        if !CASE_KINDS.contains(&case.kind.as_str()) {
            return Err(doc_err(format!("unknown case kind {:?}", case.kind)));
        }
        rebuild_case(case).map(|_| ())?;
    }
    Ok(doc)
}

/// Reconstruct the in-memory certificate (None for an open case) plus the
/// exponent solutions a case claims.
fn rebuild_case(case: &CaseDoc) -> Result<(Option<CertificateSkeleton>, Vec<(u32, u32)>)> {
    let p = &case.parameters;
    let exponents = parse_exponents(require(p.exponents.as_ref(), "exponents")?)?;
    let skeleton = match case.kind.as_str() {
        "residueRectangle" => Some(CertificateSkeleton::Rectangle {
            modulus: parse_u64(require(p.modulus.as_deref(), "modulus")?, "modulus")?,
        }),
        "primeSplit" => {
            let targets = require(p.catalan_targets.as_ref(), "catalanTargets")?;
            Some(CertificateSkeleton::Split {
                modulus: parse_u64(require(p.modulus.as_deref(), "modulus")?, "modulus")?,
                targets: [
                    parse_u64(&targets[0], "catalanTargets")?,
                    parse_u64(&targets[1], "catalanTargets")?,
                ],
            })
        }
        "orderChain" => {
            let anchor = require(p.anchor.as_ref(), "anchor")?;
            let steps = require(p.steps.as_ref(), "steps")?;
            Some(CertificateSkeleton::Chain {
                anchor: (
                    parse_u32(&anchor[0], "anchor")?,
                    parse_u32(&anchor[1], "anchor")?,
                ),
                steps: steps.iter().map(parse_chain_step).collect::<Result<_>>()?,
            })
        }
        "successorSmoothness" => {
            let witness = require(p.witness.as_ref(), "witness")?;
            let outcome = match witness.kind.as_str() {
                "blockingPrime" => SuccessorOutcome::NotSmooth {
                    blocking_prime: parse_u64(require(witness.prime.as_deref(), "prime")?, "prime")?,
                },
                "exponents" => SuccessorOutcome::Smooth {
                    two_exp: parse_u32(require(witness.two_exp.as_deref(), "twoExp")?, "twoExp")?,
                    three_exp: parse_u32(
                        require(witness.three_exp.as_deref(), "threeExp")?,
                        "threeExp",
                    )?,
                },
                other => return Err(doc_err(format!("unknown witness type {other:?}"))),
            };
            Some(CertificateSkeleton::Successor { outcome })
        }
        "gersonidesAxiom" => Some(CertificateSkeleton::Gersonides),
        "open" => {
            parse_u32(require(p.bound.as_deref(), "bound")?, "bound")?;
            None
        }
        other => return Err(doc_err(format!("unknown case kind {other:?}"))),
    };
    Ok((skeleton, exponents))
}

/// Kind-specific data with the target value still unbound.
enum CertificateSkeleton {
    Rectangle { modulus: u64 },
    Split { modulus: u64, targets: [u64; 2] },
    Chain { anchor: (u32, u32), steps: Vec<ChainStep> },
    Successor { outcome: SuccessorOutcome },
    Gersonides,
}

impl CertificateSkeleton {
    fn into_certificate(self, form: FormTag, t: BigUint, solutions: Vec<(u32, u32)>) -> Certificate {
        match self {
            CertificateSkeleton::Rectangle { modulus } => Certificate::ResidueRectangle {
                form,
                t,
                modulus,
                solutions,
            },
            CertificateSkeleton::Split { modulus, targets } => Certificate::PrimeSplit {
                form,
                t,
                modulus,
                catalan_targets: targets,
                solutions,
            },
            CertificateSkeleton::Chain { anchor, steps } => Certificate::OrderChain {
                chain: OrderChain {
                    form,
                    t,
                    anchor,
                    steps,
                },
                solutions,
            },
            CertificateSkeleton::Successor { outcome } => Certificate::SuccessorSmoothness {
                t,
                outcome,
                solutions,
            },
            CertificateSkeleton::Gersonides => Certificate::GersonidesAxiom { form, solutions },
        }
    }
}

/// Semantically check a decoded document: the case grid matches the
/// divisor lattice, every certificate re-verifies against t = n/divisor,
/// claimed solutions reproduce, and the status summarizes the cases.
///
/// Ok(false) means a well-formed document whose claims do not hold.
pub fn verify_document(doc: &CertificateDocument) -> Result<bool> {
    let n = parse_big(&doc.n, "n")?;
    let divisors = smooth_divisors(&n);
    if doc.cases.len() != divisors.len() * FormTag::ALL.len() {
        return Ok(false);
    }
    let mut all_closed = true;
    let mut any_solution = false;
    for (i, case) in doc.cases.iter().enumerate() {
        let divisor = &divisors[i / 3];
        let form = FormTag::ALL[i % 3];
        if case.divisor != divisor.value().to_string() || case.form != form.to_string() {
            return Ok(false);
        }
        let t = &n / divisor.value();
        let (skeleton, exponents) = rebuild_case(case)?;
        // The claimed value pairs must be exactly the scaled solutions.
        if case.solutions != value_pairs(divisor, form, &exponents) {
            return Ok(false);
        }
        if !exponents.is_empty() {
            any_solution = true;
        }
        match skeleton {
            Some(skeleton) => {
                let cert = skeleton.into_certificate(form, t, exponents);
                if !verify(&cert) {
                    return Ok(false);
                }
            }
            None => {
                all_closed = false;
                // Open cases may only list genuine bounded-search hits.
                for &(x, y) in &exponents {
                    if PrimitiveForm::new(form, x, y).value() != Some(t.clone()) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    let expected_kind = if any_solution {
        "representable"
    } else if all_closed {
        "ndh"
    } else {
        "unknown"
    };
    if doc.status.kind != expected_kind {
        return Ok(false);
    }
    let status_consistent = match expected_kind {
        "representable" => {
            doc.status.proven == Some(all_closed)
                && (all_closed == doc.status.bound.is_none())
        }
        "ndh" => doc.status.proven.is_none() && doc.status.bound.is_none(),
        _ => doc.status.proven.is_none() && doc.status.bound.is_some(),
    };
    Ok(status_consistent)
}

/// Serialize a standalone order chain.
pub fn chain_document(chain: &OrderChain) -> ChainDocument {
    ChainDocument {
        form: chain.form.to_string(),
        t: chain.t.to_string(),
        anchor: [chain.anchor.0.to_string(), chain.anchor.1.to_string()],
        steps: chain.steps.iter().map(chain_step_doc).collect(),
    }
}

/// Parse a standalone order chain document.
pub fn decode_chain(text: &str) -> Result<OrderChain> {
    let doc: ChainDocument = serde_json::from_str(text).map_err(doc_err)?;
    let form: FormTag = doc
        .form
        .parse()
        .map_err(|_| doc_err(format!("unknown form {:?}", doc.form)))?;
    Ok(OrderChain {
        form,
        t: parse_big(&doc.t, "t")?,
        anchor: (
            parse_u32(&doc.anchor[0], "anchor")?,
            parse_u32(&doc.anchor[1], "anchor")?,
        ),
        steps: doc
            .steps
            .iter()
            .map(parse_chain_step)
            .collect::<Result<_>>()?,
    })
}

/// Render a standalone order chain as pretty JSON.
pub fn encode_chain(chain: &OrderChain) -> String {
    let mut s = serde_json::to_string_pretty(&chain_document(chain))
        .expect("chain serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::chain::fixture_five;
    use crate::cert::Classifier;

    fn doc_for(n: u64, cfg: &Config) -> CertificateDocument {
        let analysis = Classifier::new(cfg.clone())
            .unwrap()
            .analyze(&BigUint::from(n))
            .unwrap();
        document_from_analysis(&analysis, cfg)
    }

    #[test]
    fn documents_roundtrip_and_verify() {
        let cfg = Config::default();
        for n in [1u64, 5, 6, 17, 41, 82, 96, 255, 728] {
            let doc = doc_for(n, &cfg);
            let text = encode(&doc);
            let back = decode(&text).unwrap();
            assert_eq!(back, doc, "roundtrip for {n}");
            assert!(verify_document(&back).unwrap(), "document for {n}");
        }
    }

    #[test]
    fn known_documents_have_the_expected_shape() {
        let cfg = Config::default();
        let doc = doc_for(41, &cfg);
        assert_eq!(doc.n, "41");
        assert_eq!(doc.status.kind, "ndh");
        assert_eq!(doc.cases.len(), 3);
        assert_eq!(doc.cases[0].kind, "residueRectangle");
        assert_eq!(doc.cases[1].kind, "primeSplit");
        assert_eq!(
            doc.cases[1].parameters.catalan_targets,
            Some(["5".to_string(), "17".to_string()])
        );
        assert_eq!(doc.cases[2].kind, "successorSmoothness");
        assert_eq!(doc.config_hash, cfg.hash());

        let doc17 = doc_for(17, &cfg);
        assert_eq!(doc17.status.kind, "representable");
        assert_eq!(doc17.status.proven, Some(true));
        let mut pairs: Vec<[String; 2]> = doc17
            .cases
            .iter()
            .flat_map(|c| c.solutions.clone())
            .collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                ["18".to_string(), "1".to_string()],
                ["81".to_string(), "64".to_string()]
            ]
        );
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        let cfg = Config::default();
        let text = encode(&doc_for(41, &cfg));
        let with_extra = text.replacen("\"n\":", "\"nn\": \"1\",\n  \"n\":", 1);
        assert!(decode(&with_extra).is_err());

        let tampered_kind = text.replacen("residueRectangle", "residueTriangle", 1);
        assert!(decode(&tampered_kind).is_err());

        let tampered_status = text.replacen("\"ndh\"", "\"open\"", 1);
        assert!(decode(&tampered_status).is_err());

        assert!(decode("{").is_err());
    }

    #[test]
    fn semantic_tampering_flips_verification_not_decoding() {
        let cfg = Config::default();
        let text = encode(&doc_for(41, &cfg));

        // Claim a different target: cases no longer match n = 43's grid.
        let wrong_n = text.replacen("\"n\": \"41\"", "\"n\": \"43\"", 1);
        let doc = decode(&wrong_n).unwrap();
        assert!(!verify_document(&doc).unwrap());

        // Swap the rectangle modulus for one that does not obstruct.
        let wrong_modulus = text.replacen("\"modulus\": \"8\"", "\"modulus\": \"13\"", 1);
        let doc = decode(&wrong_modulus).unwrap();
        assert!(!verify_document(&doc).unwrap());

        // Downgrade the status of a fully closed empty classification.
        let wrong_status = text.replacen(
            "\"kind\": \"ndh\"",
            "\"kind\": \"unknown\",\n    \"bound\": \"96\"",
            1,
        );
        let doc = decode(&wrong_status).unwrap();
        assert!(!verify_document(&doc).unwrap());
    }

    #[test]
    fn representable_documents_catch_dropped_solutions() {
        let cfg = Config::default();
        // Dropping a claimed value pair desynchronizes it from the
        // certificate's exponents.
        let mut doc = doc_for(17, &cfg);
        let idx = doc
            .cases
            .iter()
            .position(|c| !c.solutions.is_empty())
            .unwrap();
        doc.cases[idx].solutions.clear();
        assert!(!verify_document(&doc).unwrap());

        // Forging an extra exponent pair (with matching values) fails the
        // certificate itself.
        let mut doc = doc_for(17, &cfg);
        let exps = doc.cases[idx].parameters.exponents.as_mut().unwrap();
        exps.push(["10".to_string(), "7".to_string()]);
        doc.cases[idx]
            .solutions
            .push(["2187".to_string(), "1024".to_string()]);
        assert!(!verify_document(&doc).unwrap());
    }

    #[test]
    fn chain_documents_roundtrip() {
        let chain = fixture_five();
        let text = encode_chain(&chain);
        let back = decode_chain(&text).unwrap();
        assert_eq!(back, chain);
        assert!(crate::cert::chain::verify_order_chain(&back));

        let tampered = text.replacen("\"18\"", "\"19\"", 1);
        let bad = decode_chain(&tampered).unwrap();
        assert!(!crate::cert::chain::verify_order_chain(&bad));

        assert!(decode_chain("{\"form\": \"A\"}").is_err());
    }
}
