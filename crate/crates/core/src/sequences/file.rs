//! Text format for sequences: one term per line as comma-separated canonical
//! indices; blank lines and `#` comments are skipped; a repeated line adds
//! multiplicity.

use crate::error::{Error, Result};
use crate::semigroup::{Element, ProductSpec};
use crate::sequences::Seq;

pub fn parse_seq_file(spec: &ProductSpec, text: &str) -> Result<Seq> {
    let mut terms = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let idx = line
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| Error::SeqFile {
                    line: line_no,
                    msg: format!("expected a positive integer, found {:?}", part.trim()),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        let a = Element::new(idx);
        spec.validate(&a).map_err(|e| Error::SeqFile { line: line_no, msg: e.to_string() })?;
        terms.push(a);
    }
    Ok(Seq::new(terms))
}

pub fn format_seq_file(t: &Seq) -> String {
    let mut out = String::new();
    for a in t.terms() {
        out.push_str(&a.to_string());
        out.push('\n');
    }
    out
}
