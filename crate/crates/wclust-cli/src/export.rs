//! Deterministic CSV and JSON emission.
//!
//! Floats are serialized with 17 significant digits so parsing the
//! output reproduces the exact bit pattern. Undefined values become an
//! empty CSV field or a JSON `null`, never 0. CSV files start with `#`
//! metadata comments (graph fingerprint, seed).

use std::fmt::Write as _;

use crate::report::{ComparisonReport, MetricTable};

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn metadata_comments(fingerprint: u64, seed: Option<u64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# graph_fingerprint={fingerprint:016x}");
    if let Some(seed) = seed {
        let _ = writeln!(out, "# seed={seed}");
    }
    out
}

pub fn metric_table_csv(t: &MetricTable) -> String {
    let mut out = metadata_comments(t.fingerprint, t.seed);
    out.push_str("node,method,mode,value\n");
    for row in &t.rows {
        let value = row.value.map(fmt_float).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", row.node, row.method, row.mode, value);
    }
    out
}

pub fn metric_table_json(t: &MetricTable) -> String {
    let mut out = String::from("{\"spec_version\":1,");
    let _ = write!(
        out,
        "\"graph_fingerprint\":{},",
        json_string(&format!("{:016x}", t.fingerprint))
    );
    if let Some(seed) = t.seed {
        let _ = write!(out, "\"seed\":{seed},");
    }
    out.push_str("\"rows\":[");
    for (i, row) in t.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let value = row
            .value
            .map(fmt_float)
            .unwrap_or_else(|| "null".to_string());
        let _ = write!(
            out,
            "{{\"node\":{},\"method\":{},\"mode\":{},\"value\":{}}}",
            json_string(&row.node),
            json_string(&row.method),
            json_string(&row.mode),
            value
        );
    }
    out.push_str("]}\n");
    out
}

pub fn report_csv(r: &ComparisonReport, fingerprint: u64, seed: Option<u64>) -> String {
    let mut out = metadata_comments(fingerprint, seed);
    out.push_str("statistic,key,value\n");
    let _ = writeln!(out, "n_joint,,{}", r.n_joint);
    let _ = writeln!(out, "r_squared,,{}", fmt_float(r.r_squared));
    if let Some(s) = r.spearman {
        let _ = writeln!(out, "spearman,,{}", fmt_float(s));
    }
    for (k, f) in &r.topk_retention {
        let _ = writeln!(out, "topk_retention,{k},{}", fmt_float(*f));
    }
    for (group, ra, rb) in &r.rank_table {
        let _ = writeln!(out, "median_rank_a,{group},{}", fmt_float(*ra));
        let _ = writeln!(out, "median_rank_b,{group},{}", fmt_float(*rb));
    }
    out
}

pub fn report_json(r: &ComparisonReport, fingerprint: u64, seed: Option<u64>) -> String {
    let mut out = String::from("{\"spec_version\":1,");
    let _ = write!(
        out,
        "\"graph_fingerprint\":{},",
        json_string(&format!("{fingerprint:016x}"))
    );
    if let Some(seed) = seed {
        let _ = write!(out, "\"seed\":{seed},");
    }
    let _ = write!(out, "\"n_joint\":{},", r.n_joint);
    let _ = write!(out, "\"r_squared\":{},", fmt_float(r.r_squared));
    if let Some(s) = r.spearman {
        let _ = write!(out, "\"spearman\":{},", fmt_float(s));
    }
    out.push_str("\"topk_retention\":{");
    for (i, (k, f)) in r.topk_retention.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "\"{k}\":{}", fmt_float(*f));
    }
    out.push_str("},\"rank_table\":{");
    for (i, (group, ra, rb)) in r.rank_table.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{}:{{\"median_rank_a\":{},\"median_rank_b\":{}}}",
            json_string(group),
            fmt_float(*ra),
            fmt_float(*rb)
        );
    }
    out.push_str("}}\n");
    out
}

/// Parse a metric-table CSV produced by [`metric_table_csv`] back into
/// `(node, method, mode, value)` rows.
pub fn parse_metric_csv(text: &str) -> Result<Vec<(String, String, String, Option<f64>)>, String> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "node,method,mode,value" {
                return Err(format!("line {}: unexpected header '{line}'", lineno + 1));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(format!("line {}: expected 4 fields", lineno + 1));
        }
        let value = if fields[3].is_empty() {
            None
        } else {
            Some(
                fields[3]
                    .parse::<f64>()
                    .map_err(|_| format!("line {}: bad value '{}'", lineno + 1, fields[3]))?,
            )
        };
        rows.push((
            fields[0].to_string(),
            fields[1].to_string(),
            fields[2].to_string(),
            value,
        ));
    }
    if !saw_header {
        return Err("no header line found".to_string());
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::MetricRow;

    fn table() -> MetricTable {
        MetricTable {
            rows: vec![
                MetricRow {
                    node: "a".into(),
                    method: "zhang".into(),
                    mode: "undirected".into(),
                    value: Some(0.123456789012345678),
                },
                MetricRow {
                    node: "b".into(),
                    method: "zhang".into(),
                    mode: "undirected".into(),
                    value: None,
                },
            ],
            fingerprint: 0xdead_beef,
            seed: Some(42),
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = table();
        let text = metric_table_csv(&t);
        let rows = parse_metric_csv(&text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].3, t.rows[0].value);
        assert_eq!(rows[1].3, None);
    }

    #[test]
    fn undefined_is_empty_field_not_zero() {
        let text = metric_table_csv(&table());
        let line = text.lines().last().unwrap();
        assert_eq!(line, "b,zhang,undirected,");
    }

    #[test]
    fn csv_has_metadata_comments() {
        let text = metric_table_csv(&table());
        assert!(text.starts_with("# graph_fingerprint=00000000deadbeef\n# seed=42\n"));
    }

    #[test]
    fn json_has_spec_version_and_null() {
        let text = metric_table_json(&table());
        assert!(text.starts_with("{\"spec_version\":1,"));
        assert!(text.contains("\"value\":null"));
    }
}
