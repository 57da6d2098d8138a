//! Canonical JSON form of a fusion table.
//!
//! ```text
//! {
//!   "k": 0,
//!   "basis": [
//!     {"label": "beta3", "grade": "NN", "conjugate": "gamma3"},
//!     ...
//!   ],
//!   "coefficients": [
//!     {"x": "beta3", "y": "beta3", "z": "alpha2", "n": 1},
//!     ...
//!   ]
//! }
//! ```
//!
//! The basis is listed in canonical order and must match it on input.
//! Coefficients are the nonzero `N_{x,y}^z`, sorted by the basis positions
//! of `(x, y, z)`; on input any order is accepted and absent triples are
//! zero. Output is byte-for-byte deterministic, two-space indented, one
//! object per line, with a trailing newline.

use std::fmt::Write as _;

use fusionk_core::fusion::canonical_basis;
use fusionk_core::{FusionTable, Grade, Simple};
use serde::Deserialize;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("k = {0} is too large for a fusion table")]
    BadK(u64),

    #[error("basis entry {index}: {message}")]
    Basis { index: usize, message: String },

    #[error("coefficient entry {index}: {message}")]
    Coefficient { index: usize, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    k: u64,
    basis: Vec<BasisEntry>,
    coefficients: Vec<CoefficientEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    label: String,
    grade: String,
    conjugate: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientEntry {
    x: String,
    y: String,
    z: String,
    n: u64,
}

pub fn to_string(t: &FusionTable) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("strings always serialize");
    let mut out = String::new();
    let _ = writeln!(out, "{{\n  \"k\": {},\n  \"basis\": [", t.k());
    let basis = t.basis();
    for (i, b) in basis.iter().enumerate() {
        let sep = if i + 1 < basis.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"label\": {}, \"grade\": {}, \"conjugate\": {}}}{sep}",
            q(&b.label.to_string()),
            q(b.grade.as_str()),
            q(&b.conjugate.to_string()),
        );
    }
    out.push_str("  ],\n  \"coefficients\": [\n");
    let entries: Vec<_> = t.entries().collect();
    for (i, (x, y, z, n)) in entries.iter().enumerate() {
        let sep = if i + 1 < entries.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"x\": {}, \"y\": {}, \"z\": {}, \"n\": {n}}}{sep}",
            q(&x.to_string()),
            q(&y.to_string()),
            q(&z.to_string()),
        );
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn from_str(text: &str) -> Result<FusionTable, LoadError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| LoadError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let k = usize::try_from(doc.k).ok().filter(|&k| k <= 1 << 20).ok_or(LoadError::BadK(doc.k))?;

    let expected = canonical_basis(k);
    if doc.basis.len() != expected.len() {
        return Err(LoadError::Basis {
            index: doc.basis.len().min(expected.len()),
            message: format!("expected {} basis elements for k = {k}, found {}", expected.len(), doc.basis.len()),
        });
    }
    for (index, (entry, want)) in doc.basis.iter().zip(&expected).enumerate() {
        let err = |message: String| LoadError::Basis { index, message };
        let label: Simple = entry.label.parse().map_err(|_| err(format!("unknown label {:?}", entry.label)))?;
        let grade: Grade = entry.grade.parse().map_err(|_| err(format!("unknown grade {:?}", entry.grade)))?;
        let conjugate: Simple =
            entry.conjugate.parse().map_err(|_| err(format!("unknown label {:?}", entry.conjugate)))?;
        if label != want.label {
            return Err(err(format!("expected {}, found {label}", want.label)));
        }
        if grade != want.grade {
            return Err(err(format!("{label} has grade {}, not {grade}", want.grade)));
        }
        if conjugate != want.conjugate {
            return Err(err(format!("{label} has conjugate {}, not {conjugate}", want.conjugate)));
        }
    }

    let mut t = FusionTable::empty(k);
    for (index, c) in doc.coefficients.iter().enumerate() {
        let err = |message: String| LoadError::Coefficient { index, message };
        let parse = |s: &str| -> Result<Simple, LoadError> {
            let x: Simple = s.parse().map_err(|_| err(format!("unknown label {s:?}")))?;
            t.index_of(x).map(|_| x).ok_or_else(|| err(format!("{x} is not in the basis for k = {k}")))
        };
        let (x, y, z) = (parse(&c.x)?, parse(&c.y)?, parse(&c.z)?);
        if t.get(x, y, z).is_some_and(|n| n != 0) {
            return Err(err(format!("duplicate coefficient for ({x}, {y}, {z})")));
        }
        t.set(x, y, z, c.n).map_err(|e| err(e.to_string()))?;
    }
    Ok(t)
}

// serde_json appends " at line L column C"; the position is reported separately
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> FusionTable {
        let mut t = FusionTable::empty(0);
        t.set(Simple::Alpha(0), Simple::Alpha(0), Simple::Alpha(0), 1).unwrap();
        t.set(Simple::G, Simple::G, Simple::G, 2).unwrap();
        t
    }

    #[test]
    fn round_trip() {
        let t = small();
        let text = to_string(&t);
        assert_eq!(from_str(&text).unwrap(), t);
        assert_eq!(to_string(&from_str(&text).unwrap()), text);
        assert!(text.ends_with("]\n}\n"));
    }

    #[test]
    fn truncated_input_reports_position() {
        let text = to_string(&small());
        let cut = &text[..text.len() / 2];
        match from_str(cut) {
            Err(LoadError::Syntax { line, .. }) => assert!(line > 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_carry_the_entry() {
        let text = to_string(&small());
        let bad = text.replacen("\"gamma3\"}", "\"beta3\"}", 1);
        assert!(matches!(from_str(&bad), Err(LoadError::Basis { index: 0, .. })));

        let bad = text.replace("\"z\": \"g\", \"n\": 2", "\"z\": \"beta2\", \"n\": 2");
        assert!(matches!(from_str(&bad), Err(LoadError::Coefficient { index: 1, .. })));

        let bad = text.replace("\"n\": 2", "\"n\": -2");
        assert!(matches!(from_str(&bad), Err(LoadError::Syntax { .. })));

        let bad = text.replace("\"k\": 0", "\"k\": 1");
        assert!(matches!(from_str(&bad), Err(LoadError::Basis { .. })));
    }

    #[test]
    fn duplicates_and_unknown_fields_are_rejected() {
        let text = to_string(&small());
        let line = "    {\"x\": \"g\", \"y\": \"g\", \"z\": \"g\", \"n\": 2}";
        let dup = text.replace(line, &format!("{line},\n{line}"));
        assert!(matches!(from_str(&dup), Err(LoadError::Coefficient { index: 2, .. })));
        let extra = text.replace("\"k\": 0,", "\"k\": 0, \"extra\": 1,");
        assert!(matches!(from_str(&extra), Err(LoadError::Syntax { .. })));
    }
}
