use serde::Deserialize;

use super::parse_error;
use crate::error::Result;
use crate::fano_data::{RowReport, RowStatus, TableRow, VerificationReport};
use crate::intersect::TwoFanoVerdict;
use crate::ratlin::{parse_rational, LatticeVector};

#[derive(Deserialize)]
struct Record {
    name: String,
    rays: String,
    collections: String,
    surface: String,
    expected: String,
}

fn integers<T: std::str::FromStr>(field: &str, location: &str) -> Result<Vec<T>> {
    field
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(location, format!("`{t}` is not an integer"))))
        .collect()
}

fn vectors<T: std::str::FromStr>(field: &str, location: &str) -> Result<Vec<Vec<T>>> {
    field.split(';').filter(|s| !s.trim().is_empty()).map(|s| integers(s, location)).collect()
}

/// Parses the dataset CSV: `name,rays,collections,surface,expected`.
///
/// Vectors and index sets are space-separated and joined by `;`; indices are zero-based.
pub fn parse_dataset(text: &str) -> Result<Vec<TableRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (k, record) in reader.deserialize::<Record>().enumerate() {
        let line = k + 2;
        let r = record.map_err(|e| parse_error(format!("line {line}"), e.to_string()))?;
        let at = |field: &str| format!("line {line}, field {field}");
        let rays: Vec<LatticeVector> = vectors::<i64>(&r.rays, &at("rays"))?.into_iter().map(LatticeVector::new).collect();
        let Some(dim) = rays.first().map(LatticeVector::dim) else {
            return Err(parse_error(at("rays"), "no rays"));
        };
        if let Some(bad) = rays.iter().find(|v| v.dim() != dim || !v.is_primitive()) {
            return Err(parse_error(at("rays"), format!("{bad} is not a primitive vector of length {dim}")));
        }
        let collections = vectors::<usize>(&r.collections, &at("collections"))?;
        let surface = integers::<usize>(&r.surface, &at("surface"))?;
        let surface: [usize; 2] =
            surface.try_into().map_err(|_| parse_error(at("surface"), "expected two ray indices"))?;
        if collections.iter().flatten().chain(&surface).any(|&i| i >= rays.len()) {
            return Err(parse_error(at("surface"), "ray index out of range"));
        }
        let expected = parse_rational(&r.expected)
            .map_err(|_| parse_error(at("expected"), format!("`{}` is not a rational p/q", r.expected)))?;
        rows.push(TableRow {
            name: r.name,
            rays,
            collections: (!collections.is_empty()).then_some(collections),
            surface,
            expected,
        });
    }
    Ok(rows)
}

fn join_vectors<T: ToString>(vs: impl Iterator<Item = Vec<T>>) -> String {
    vs.map(|v| v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";")
}

pub fn emit_dataset(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "rays", "collections", "surface", "expected"])?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            join_vectors(r.rays.iter().map(|v| v.as_slice().to_vec())),
            join_vectors(r.collections.iter().flatten().cloned()),
            format!("{} {}", r.surface[0], r.surface[1]),
            r.expected.to_string(),
        ])?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn status(r: &RowReport) -> String {
    match &r.status {
        RowStatus::Verified => "verified".into(),
        RowStatus::Mismatch => "mismatch".into(),
        RowStatus::Failed(e) => format!("error: {e}"),
    }
}

/// CSV columns `name,status,computed,expected,match,global_min,min_witness`.
pub fn emit_report_csv(report: &VerificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "status", "computed", "expected", "match", "global_min", "min_witness"])?;
    for r in &report.rows {
        let (min, witness) = match &r.global_minimum {
            Some(m) => (m.value.to_string(), join_vectors(std::iter::once(m.surface.clone()))),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.name.clone(),
            status(r),
            r.computed.as_ref().map(ToString::to_string).unwrap_or_default(),
            r.expected.to_string(),
            r.matched.to_string(),
            min,
            witness,
        ])?;
    }
    finish(w)
}

/// One line per row and a closing tally.
pub fn emit_report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for r in &report.rows {
        let computed = r.computed.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        let min = r.global_minimum.as_ref().map(|m| format!("{} at {:?}", m.value, m.surface)).unwrap_or_default();
        out.push_str(&format!(
            "{:<6} {:<9} computed {:>5}  expected {:>5}  min {}\n",
            r.name,
            status(r),
            computed,
            r.expected,
            min
        ));
    }
    out.push_str(&format!(
        "{} rows: {} verified, {} mismatches, {} errors\n",
        report.rows.len(),
        report.matches,
        report.mismatches,
        report.errors
    ));
    out
}

/// CSV of every invariant surface of a 2-Fano scan: `surface,value`.
pub fn emit_surfaces_csv(verdict: &TwoFanoVerdict) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["surface", "value"])?;
    for s in &verdict.values {
        w.write_record([join_vectors(std::iter::once(s.surface.clone())), s.value.to_string()])?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fano_data::{load_builtin_table, verify_table};
    use crate::ratlin::int;

    const E1: &str = "name,rays,collections,surface,expected\n\
        E_1,1 0 0 0;0 1 0 0;0 0 1 0;0 0 0 1;2 -1 -1 -1;1 1 0 0;-1 0 0 0,0 6;0 1;5 6;1 2 3 4;2 3 4 5,1 2,-2\n";

    #[test]
    fn parses_a_row() {
        let rows = parse_dataset(E1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].name, "E_1");
        assert_eq!(rows[0].rays.len(), 7);
        assert_eq!(rows[0].collections.as_ref().unwrap()[3], vec![1, 2, 3, 4]);
        assert_eq!(rows[0].expected, int(-2));
    }

    #[test]
    fn dataset_round_trip() {
        let rows = load_builtin_table();
        let text = emit_dataset(&rows).unwrap();
        assert_eq!(parse_dataset(&text).unwrap(), rows);
        assert_eq!(emit_dataset(&parse_dataset(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn bad_rows() {
        let bad = E1.replace("1 2,-2", "1 9,-2");
        assert!(matches!(parse_dataset(&bad), Err(Error::Parse { .. })));
        let bad = E1.replace("1 2,-2", "1 2,x");
        assert!(matches!(parse_dataset(&bad), Err(Error::Parse { location, .. }) if location == "line 2, field expected"));
        let bad = E1.replace("2 -1 -1 -1", "2 -2 -2 -2");
        assert!(parse_dataset(&bad).is_err());
    }

    #[test]
    fn report_columns() {
        let report = verify_table(&parse_dataset(E1).unwrap());
        let csv = emit_report_csv(&report).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("name,status,computed,expected,match,global_min,min_witness"));
        assert!(lines.next().unwrap().starts_with("E_1,verified,-2,-2,true,"));
        assert!(emit_report_text(&report).ends_with("1 rows: 1 verified, 0 mismatches, 0 errors\n"));
    }
}
