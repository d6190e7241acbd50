//! Rendering of results in the three output formats.
//!
//! `md` is the human-readable default, `csv` is line-oriented with a
//! header row, and `json` serializes the underlying structures. Table
//! emission is byte-deterministic: equal inputs produce equal output.

use std::path::Path;

use buchstaber::invariants::{InvariantResult, InvariantValue, Method, NonexistenceEvidence};
use clap::ValueEnum;
use serde_json::json;

/// Output format selected with `--format`.
#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    /// Human-readable text / Markdown tables.
    #[default]
    Md,
    /// Comma-separated values with a header row.
    Csv,
    /// JSON documents.
    Json,
}

/// One cell of a skeleton table.
#[derive(Debug, Clone, Copy)]
pub struct TableCell {
    pub m: u32,
    pub k: u32,
    pub lo: u32,
    pub hi: u32,
    /// Whether `lo == hi` was certified (false means the budget ran out).
    pub exact: bool,
    /// Whether this cell appears among the published reference values.
    pub published: bool,
}

/// Short label for how a result was obtained.
pub fn method_label(method: &Method) -> String {
    match method {
        Method::ClosedForm(rule) => format!("closed form: {rule}"),
        Method::Search => "search".to_string(),
        Method::Cached => "cached".to_string(),
        Method::Registry => "registry".to_string(),
    }
}

/// Renders a single invariant result; `witness_written` names the file the
/// witness map was saved to, when it was.
pub fn render_invariant(
    result: &InvariantResult,
    witness_written: Option<&Path>,
    format: Format,
) -> String {
    match format {
        Format::Md => {
            let mut out = String::new();
            let subject = format!("s_{}({})", result.p.get(), result.complex);
            let label = method_label(&result.method);
            match result.value {
                InvariantValue::Exact(v) => {
                    out.push_str(&format!("{subject} = {v} ({label})\n"));
                }
                InvariantValue::Interval { lo, hi } => {
                    out.push_str(&format!("{subject} ∈ [{lo}, {hi}] ({label})\n"));
                }
            }
            if let Some(witness) = &result.certificate.witness {
                let note = witness_written
                    .map(|path| format!(" — written to {}", path.display()))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "witness: nondegenerate map into X(F_{}^{}){note}\n",
                    witness.prime().get(),
                    witness.r(),
                ));
            }
            match &result.certificate.nonexistence {
                Some(NonexistenceEvidence::DimensionFloor { r }) => out.push_str(&format!(
                    "nonexistence at r = {r}: target dimension below the largest simplex\n"
                )),
                Some(NonexistenceEvidence::Exhausted { r, nodes }) => out.push_str(&format!(
                    "nonexistence at r = {r}: exhaustive search, {nodes} nodes\n"
                )),
                Some(NonexistenceEvidence::ClosedForm { r, rule }) => {
                    out.push_str(&format!("nonexistence at r = {r}: closed form ({rule})\n"))
                }
                None => {}
            }
            if result.value.exact().is_none() {
                out.push_str(
                    "inconclusive: the budget ran out before the exhaustive half completed\n",
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("complex,p,lo,hi,exact,method\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&result.complex.to_string()),
                result.p.get(),
                result.value.lo(),
                result.value.hi(),
                result.value.exact().is_some(),
                csv_field(&method_label(&result.method)),
            ));
            out
        }
        Format::Json => pretty_json(&serde_json::to_value(result).expect("result serializes")),
    }
}

/// Renders a full skeleton table. `have_reference` says whether any
/// published reference values exist for this modulus; when they do, cells
/// outside them are starred.
pub fn render_table(
    p: u32,
    max_m: u32,
    cells: &[TableCell],
    have_reference: bool,
    format: Format,
) -> String {
    match format {
        Format::Md => {
            let mut out = format!("s_{p} of the skeleta Δ^m_(k), 1 ≤ m ≤ {max_m}, 0 ≤ k ≤ m\n\n");
            out.push_str("| m\\k |");
            for k in 0..=max_m {
                out.push_str(&format!(" {k} |"));
            }
            out.push('\n');
            out.push_str("|---:|");
            for _ in 0..=max_m {
                out.push_str("---:|");
            }
            out.push('\n');
            let mut starred = false;
            let mut bracketed = false;
            for m in 1..=max_m {
                out.push_str(&format!("| {m} |"));
                for k in 0..=max_m {
                    match cells.iter().find(|c| c.m == m && c.k == k) {
                        Some(cell) => {
                            let value = if cell.exact {
                                format!("{}", cell.lo)
                            } else {
                                bracketed = true;
                                format!("[{},{}]", cell.lo, cell.hi)
                            };
                            let star = if have_reference && !cell.published {
                                starred = true;
                                "*"
                            } else {
                                ""
                            };
                            out.push_str(&format!(" {value}{star} |"));
                        }
                        None => out.push_str("  |"),
                    }
                }
                out.push('\n');
            }
            if starred {
                out.push_str("\n\\* computed here; not among the published reference values\n");
            }
            if !have_reference {
                out.push_str(&format!(
                    "\nno published reference table for p = {p}; all cells are computed values\n"
                ));
            }
            if bracketed {
                out.push_str(
                    "\n[lo,hi] marks a cell left inconclusive by the budget; the exact value lies inside\n",
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("m,k,p,lo,hi,exact,published\n");
            for cell in cells {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    cell.m, cell.k, p, cell.lo, cell.hi, cell.exact, cell.published
                ));
            }
            out
        }
        Format::Json => {
            let cell_values: Vec<_> = cells
                .iter()
                .map(|c| {
                    json!({
                        "m": c.m,
                        "k": c.k,
                        "lo": c.lo,
                        "hi": c.hi,
                        "exact": c.exact,
                        "published": c.published,
                    })
                })
                .collect();
            pretty_json(&json!({ "p": p, "max_m": max_m, "cells": cell_values }))
        }
    }
}

/// Escapes one CSV field (RFC 4180 quoting).
pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Pretty-prints a JSON value with a trailing newline.
pub fn pretty_json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_fields_quote_commas_and_quotes() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn table_markdown_marks_unpublished_and_inconclusive_cells() {
        let cells = [
            TableCell {
                m: 1,
                k: 0,
                lo: 1,
                hi: 1,
                exact: true,
                published: false,
            },
            TableCell {
                m: 1,
                k: 1,
                lo: 0,
                hi: 2,
                exact: false,
                published: true,
            },
        ];
        let text = render_table(3, 1, &cells, true, Format::Md);
        assert!(text.contains("| 1 | 1* | [0,2] |"), "got:\n{text}");
        assert!(text.contains("not among the published reference values"));
        assert!(text.contains("inconclusive by the budget"));
    }

    #[test]
    fn table_markdown_without_reference_notes_it_once() {
        let cells = [TableCell {
            m: 1,
            k: 0,
            lo: 1,
            hi: 1,
            exact: true,
            published: false,
        }];
        let text = render_table(11, 1, &cells, false, Format::Md);
        assert!(text.contains("no published reference table for p = 11"));
        assert!(!text.contains('*'));
    }
}
