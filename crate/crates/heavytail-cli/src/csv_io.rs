//! CSV ingestion and the numeric output convention.
//!
//! Output cells use `.` as the decimal separator, no grouping, 17
//! significant digits in scientific notation and LF line endings; missing
//! values are empty cells.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

/// Format a value for CSV output: 17 significant digits, empty for NaN.
pub fn cell(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}

/// Format an optional value, empty when absent.
pub fn opt_cell(x: Option<f64>) -> String {
    x.map_or_else(String::new, cell)
}

/// Append a CSV row (LF terminated).
pub fn push_row(out: &mut String, fields: &[String]) {
    let _ = writeln!(out, "{}", fields.join(","));
}

/// Read one column of positive reals from a CSV file.
///
/// Without `column` the file must be headerless with the values in the first
/// field of each row; with `column` the first row is a header naming the
/// fields. Rows that fail to parse or are not strictly positive are collected
/// and reported with their 1-based line numbers.
pub fn read_positive_column(path: &Path, column: Option<&str>) -> Result<Vec<f64>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(column.is_some())
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;

    let col_idx = match column {
        None => 0,
        Some(name) => {
            let headers = rdr
                .headers()
                .map_err(|e| CliError::Usage(format!("bad CSV header: {e}")))?;
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| CliError::Usage(format!("no column named `{name}` in the header")))?
        }
    };
    let first_data_line = if column.is_some() { 2 } else { 1 };

    let mut values = Vec::new();
    let mut bad_lines = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let line_no = first_data_line + i;
        let record = record.map_err(|e| CliError::Usage(format!("CSV error: {e}")))?;
        let field = record.get(col_idx).unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => values.push(v),
            _ => bad_lines.push(line_no),
        }
    }
    if !bad_lines.is_empty() {
        let shown: Vec<String> = bad_lines.iter().take(20).map(|l| l.to_string()).collect();
        let more = if bad_lines.len() > 20 {
            format!(" (+{} more)", bad_lines.len() - 20)
        } else {
            String::new()
        };
        return Err(CliError::Usage(format!(
            "{} row(s) are not positive numbers, at line(s) {}{more}",
            bad_lines.len(),
            shown.join(", ")
        )));
    }
    if values.is_empty() {
        return Err(CliError::Usage(format!(
            "no data rows in {}",
            path.display()
        )));
    }
    Ok(values)
}
