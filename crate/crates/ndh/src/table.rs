//! CSV and JSON table rendering for scans, audits, and enumerations.

use serde_json::json;

use crate::cert::Classification;
use crate::error::{Error, Result};
use crate::families::{AbcTriple, ScanRow, SumRow};
use crate::repr::CompletenessStatus;
use crate::smooth::SmoothNumber;

fn csv_from_records(header: &[&str], records: Vec<Vec<String>>) -> Result<String> {
    let csv_err = |e: &dyn std::fmt::Display| Error::Document(format!("csv: {e}"));
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(|e| csv_err(&e))?;
    for record in &records {
        writer.write_record(record).map_err(|e| csv_err(&e))?;
    }
    let bytes = writer.into_inner().map_err(|e| csv_err(&e))?;
    String::from_utf8(bytes).map_err(|e| csv_err(&e))
}

fn rep_list(row: &ScanRow) -> Vec<String> {
    match &row.classification {
        Classification::Representable { reps, .. } => {
            reps.iter().map(|r| r.to_string()).collect()
        }
        _ => Vec::new(),
    }
}

/// Scan rows as CSV: n, status, kinds, repCount, reps.
pub fn scan_csv(rows: &[ScanRow]) -> Result<String> {
    let records = rows
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                row.classification.status_str().to_string(),
                row.kinds.join(";"),
                row.rep_count.to_string(),
                rep_list(row).join(";"),
            ]
        })
        .collect();
    csv_from_records(&["n", "status", "kinds", "repCount", "reps"], records)
}

/// Scan rows as a JSON array with decimal-string numbers.
pub fn scan_json(rows: &[ScanRow]) -> String {
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut value = json!({
                "n": row.n.to_string(),
                "status": row.classification.status_str(),
                "kinds": row.kinds,
                "repCount": row.rep_count.to_string(),
                "reps": rep_list(row),
            });
            if let Classification::Representable { completeness, .. } = &row.classification {
                value["proven"] =
                    json!(matches!(completeness, CompletenessStatus::Proven));
            }
            value
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&values).expect("scan rows serialize");
    s.push('\n');
    s
}

/// abc triples as CSV: a, b, c, radical, quality, exceptional.
pub fn abc_csv(triples: &[AbcTriple]) -> Result<String> {
    let records = triples
        .iter()
        .map(|t| {
            vec![
                t.a.to_string(),
                t.b.to_string(),
                t.c.to_string(),
                t.radical.to_string(),
                format!("{:.4}", t.quality),
                t.exceptional.to_string(),
            ]
        })
        .collect();
    csv_from_records(
        &["a", "b", "c", "radical", "quality", "exceptional"],
        records,
    )
}

/// Pairwise sums as CSV: p, q, sum, smooth.
pub fn sums_csv(rows: &[SumRow]) -> Result<String> {
    let records = rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.q.to_string(),
                r.sum.to_string(),
                r.smooth.to_string(),
            ]
        })
        .collect();
    csv_from_records(&["p", "q", "sum", "smooth"], records)
}

/// Smooth numbers as CSV: value, twoExp, threeExp.
pub fn enumerate_csv(values: &[SmoothNumber]) -> Result<String> {
    let records = values
        .iter()
        .map(|s| {
            vec![
                s.value().to_string(),
                s.two_exp().to_string(),
                s.three_exp().to_string(),
            ]
        })
        .collect();
    csv_from_records(&["value", "twoExp", "threeExp"], records)
}
