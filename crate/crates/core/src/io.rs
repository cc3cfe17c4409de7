//! Loading and saving multiplication tables.
//!
//! Text format: `#` comment lines anywhere, first non-comment line is the
//! order, then `n` lines of `n` whitespace-separated entries in `0..n`. A
//! JSON alternative with fields `{order, table, labels}` is selected by a
//! `.json` extension.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{named, FiniteSemigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn load(path: &Path) -> Result<FiniteSemigroup, TableIoError> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        load_json(&text)
    } else {
        load_text(&text)
    }
}

fn load_json(text: &str) -> Result<FiniteSemigroup, TableIoError> {
    let file: TableFile = serde_json::from_str(text)?;
    let mut s = FiniteSemigroup::from_table(file.order, &file.table)?;
    if let Some(labels) = file.labels {
        s = s.with_labels(labels);
    }
    Ok(s)
}

fn load_text(text: &str) -> Result<FiniteSemigroup, TableIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let (line, order_text) = lines.next().ok_or(TableIoError::Parse {
        line: 1,
        message: "missing order line".into(),
    })?;
    let order: usize = order_text.trim().parse().map_err(|_| TableIoError::Parse {
        line: line + 1,
        message: format!("expected the order, got `{}`", order_text.trim()),
    })?;
    let mut table: Vec<Vec<usize>> = Vec::with_capacity(order);
    for _ in 0..order {
        let (line, row_text) = lines.next().ok_or(TableIoError::Parse {
            line: text.lines().count(),
            message: format!("expected {order} table rows"),
        })?;
        let row: Vec<usize> = row_text
            .split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| TableIoError::Parse {
                    line: line + 1,
                    message: format!("bad table entry `{tok}`"),
                })
            })
            .collect::<Result<_, _>>()?;
        if row.len() != order {
            return Err(TableIoError::Parse {
                line: line + 1,
                message: format!("expected {order} entries, got {}", row.len()),
            });
        }
        table.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(TableIoError::Parse {
            line: line + 1,
            message: "trailing content after the table".into(),
        });
    }
    Ok(FiniteSemigroup::from_table(order, &table)?)
}

pub fn save(s: &FiniteSemigroup, path: &Path) -> Result<(), TableIoError> {
    let content = if path.extension().is_some_and(|e| e == "json") {
        let file = TableFile {
            order: s.order(),
            table: s.rows(),
            labels: s.labels().map(|l| l.to_vec()),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        text
    } else {
        render_text(s)
    };
    fs::write(path, content)?;
    Ok(())
}

/// The text table format as a string.
pub fn render_text(s: &FiniteSemigroup) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{}", s.order());
    for row in s.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Resolves a CLI source: named family specs (`cyclic:3`, `trivial`, ...)
/// take precedence, anything else is treated as a file path.
pub fn load_spec_or_path(source: &str) -> Result<FiniteSemigroup, TableIoError> {
    let is_named = source == "trivial"
        || matches!(
            source.split_once(':').map(|(f, _)| f),
            Some("cyclic" | "leftzero" | "rightzero" | "chain" | "null")
        );
    if is_named {
        Ok(named(source)?)
    } else {
        load(Path::new(source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::named;

    #[test]
    fn text_round_trip() {
        let dir = std::env::temp_dir().join("cayley-machina-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chain2.tbl");
        let s = named("chain:2").unwrap();
        save(&s, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.flat_table(), s.flat_table());
    }

    #[test]
    fn json_round_trip_with_labels() {
        let dir = std::env::temp_dir().join("cayley-machina-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rz3.json");
        let s = named("rightzero:3")
            .unwrap()
            .with_labels(vec!["a".into(), "b".into(), "c".into()]);
        save(&s, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.flat_table(), s.flat_table());
        assert_eq!(back.labels(), s.labels());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let s = load_text("# a comment\n\n2\n# rows follow\n0 0\n0 1\n").unwrap();
        assert_eq!(s.flat_table(), &[0, 0, 0, 1]);
    }

    #[test]
    fn out_of_range_entry_reported() {
        let err = load_text("2\n0 2\n0 1\n").unwrap_err();
        assert!(matches!(
            err,
            TableIoError::Semigroup(SemigroupError::OutOfRange { row: 0, col: 1, value: 2, .. })
        ));
    }

    #[test]
    fn nonassociative_table_passes_through_validation() {
        let err = load_text("2\n0 1\n0 0\n").unwrap_err();
        assert!(matches!(
            err,
            TableIoError::Semigroup(SemigroupError::NonAssociative { a: 1, b: 0, c: 1 })
        ));
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err = load_text("2\n0 x\n0 1\n").unwrap_err();
        match err {
            TableIoError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn named_specs_resolve_without_touching_disk() {
        assert_eq!(load_spec_or_path("rightzero:2").unwrap().order(), 2);
        assert_eq!(load_spec_or_path("trivial").unwrap().order(), 1);
        assert!(load_spec_or_path("cyclic:0").is_err());
        assert!(load_spec_or_path("no-such-file.tbl").is_err());
    }
}
