//! Plain-text Q-table snapshots.
//!
//! A header line `# boxpush-qtable v1 <config-hash>` followed by one row per
//! state, six space-separated values in shortest round-trip form.

use std::fmt::Write as _;

use super::ReportError;
use crate::qlearn::QTable;

const MAGIC: &str = "# boxpush-qtable v1";

pub fn qtable_text(table: &QTable, config_hash: &str) -> String {
    let mut out = format!("{MAGIC} {config_hash}\n");
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).expect("write to String");
    }
    out
}

/// Parses a snapshot, returning the table and the recorded config hash.
pub fn parse_qtable(text: &str) -> Result<(QTable, String), ReportError> {
    let bad = |line: usize, message: String| ReportError::Malformed { file: "qtable".into(), line, message };
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let hash = header
        .strip_prefix(MAGIC)
        .map(|h| h.trim().to_string())
        .ok_or_else(|| bad(1, format!("expected `{MAGIC} <hash>`")))?;
    let mut values = Vec::with_capacity(QTable::STATES * QTable::ACTIONS);
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(' ').collect();
        if cells.len() != QTable::ACTIONS {
            return Err(bad(i + 2, format!("expected {} values", QTable::ACTIONS)));
        }
        for c in cells {
            values.push(c.parse::<f64>().map_err(|_| bad(i + 2, format!("bad value `{c}`")))?);
        }
    }
    let table = QTable::from_values(values)
        .ok_or_else(|| bad(QTable::STATES + 1, format!("expected {} rows", QTable::STATES)))?;
    Ok((table, hash))
}
