//! Text formats: the line-oriented code file and weight-enumerator input.
//!
//! Code file:
//!
//! ```text
//! q <q>
//! n <n>
//! k <k>
//! <k lines, each n space-separated integers in [0, q)>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode, WeightEnumerator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("{0}")]
    Invalid(String),
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Serde adapter for an optional `BigInt` written as a decimal string.
pub mod opt_bigint_string {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(D::Error::custom)).transpose()
    }
}

fn header(lines: &mut impl Iterator<Item = (usize, String)>, key: &str) -> Result<(usize, u64), ParseError> {
    let (no, text) = lines.next().ok_or_else(|| ParseError::Eof(format!("missing `{key}` header")))?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map(|x| (no, x))
            .map_err(|_| line_err(no, format!("`{key}` expects a non-negative integer, got `{v}`"))),
        _ => Err(line_err(no, format!("expected `{key} <integer>`, got `{text}`"))),
    }
}

/// Parses a code file. The rank of the rows is checked; failures name the
/// line responsible where there is one.
pub fn parse_code(text: &str) -> Result<LinearCode, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (q_line, q) = header(&mut lines, "q")?;
    let (_, n) = header(&mut lines, "n")?;
    let (k_line, k) = header(&mut lines, "k")?;
    let q = u32::try_from(q).map_err(|_| line_err(q_line, "q out of range"))?;
    let n = n as usize;

    let mut rows = Vec::with_capacity(k as usize);
    let mut row_lines = Vec::with_capacity(k as usize);
    for r in 0..k {
        let (no, text) =
            lines.next().ok_or_else(|| ParseError::Eof(format!("expected {k} rows after line {k_line}, found {r}")))?;
        let row = text
            .split_whitespace()
            .map(|tok| {
                let v: u32 = tok.parse().map_err(|_| line_err(no, format!("`{tok}` is not a field symbol")))?;
                if v >= q {
                    return Err(line_err(no, format!("symbol {v} out of range for q = {q}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<u32>, _>>()?;
        if row.len() != n {
            return Err(line_err(no, format!("row has {} entries, expected n = {n}", row.len())));
        }
        rows.push(row);
        row_lines.push(no);
    }
    if let Some((no, text)) = lines.next() {
        return Err(line_err(no, format!("trailing content `{text}`")));
    }
    LinearCode::from_indices(q, n, &rows).map_err(|e| match e {
        CodeError::Field(f) => line_err(q_line, f.to_string()),
        CodeError::RankDeficient { .. } => {
            let last = row_lines.last().copied().unwrap_or(k_line);
            line_err(last, format!("{e}"))
        }
        other => ParseError::Invalid(other.to_string()),
    })
}

/// Canonical text form; `parse_code(&emit_code(c)) == c`.
pub fn emit_code(code: &LinearCode) -> String {
    let mut out = String::new();
    writeln!(out, "q {}", code.field().order()).unwrap();
    writeln!(out, "n {}", code.length()).unwrap();
    writeln!(out, "k {}", code.dimension()).unwrap();
    for row in code.generator() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

/// JSON form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
}

impl From<&LinearCode> for CodeRecord {
    fn from(c: &LinearCode) -> Self {
        CodeRecord {
            q: c.field().order(),
            n: c.length(),
            k: c.dimension(),
            generator: c.generator().iter().map(|r| r.iter().map(|&v| u32::from(v)).collect()).collect(),
        }
    }
}

impl TryFrom<&CodeRecord> for LinearCode {
    type Error = CodeError;

    fn try_from(r: &CodeRecord) -> Result<Self, CodeError> {
        if r.generator.len() != r.k {
            return Err(CodeError::RankDeficient { rank: r.generator.len(), rows: r.k });
        }
        LinearCode::from_indices(r.q, r.n, &r.generator)
    }
}

/// Reads an enumerator either as the JSON record `{"n": .., "coeffs": [..]}`
/// or as whitespace/comma separated integers `a_0 a_1 .. a_n`.
pub fn parse_enumerator(text: &str) -> Result<WeightEnumerator, ParseError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| ParseError::Invalid(e.to_string()));
    }
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap();
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: BigInt = tok.parse().map_err(|_| line_err(i + 1, format!("`{tok}` is not an integer")))?;
            coeffs.push(v);
        }
    }
    WeightEnumerator::new(coeffs).map_err(|e| ParseError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_repetition_code_over_gf3() {
        let c = parse_code("q 3\nn 2\nk 1\n1 1\n").unwrap();
        assert_eq!(c, LinearCode::from_indices(3, 2, &[vec![1, 1]]).unwrap());
    }

    #[test]
    fn out_of_range_symbol_names_the_line() {
        let err = parse_code("q 4\nn 3\nk 1\n1 5 0\n").unwrap_err();
        assert_eq!(err, ParseError::Line { line: 4, message: "symbol 5 out of range for q = 4".into() });
        assert!(err.to_string().starts_with("line 4:"));
    }

    #[test]
    fn header_and_shape_errors() {
        assert!(matches!(parse_code("q x\n"), Err(ParseError::Line { line: 1, .. })));
        assert!(matches!(parse_code("n 3\n"), Err(ParseError::Line { line: 1, .. })));
        assert!(matches!(parse_code("q 2\nn 3\nk 2\n1 0 1\n"), Err(ParseError::Eof(_))));
        assert!(matches!(parse_code("q 2\nn 3\nk 1\n1 0\n"), Err(ParseError::Line { line: 4, .. })));
        assert!(matches!(parse_code("q 6\nn 1\nk 1\n1\n"), Err(ParseError::Line { line: 1, .. })));
        assert!(matches!(parse_code("q 2\nn 2\nk 2\n1 1\n1 1\n"), Err(ParseError::Line { line: 5, .. })));
    }

    #[test]
    fn zero_code_file() {
        let c = parse_code("q 5\nn 4\nk 0\n").unwrap();
        assert_eq!(c.dimension(), 0);
        assert_eq!(c.enumerate_weights().unwrap(), WeightEnumerator::monomial(4));
    }

    #[test]
    fn emit_parse_roundtrip_and_record() {
        for c in [
            crate::rm::reed_muller(4, 2, 2).unwrap(),
            crate::rm::projective_reed_muller(3, 2, 2).unwrap(),
            crate::rm::reed_muller(2, 1, 4).unwrap(),
        ] {
            assert_eq!(parse_code(&emit_code(&c)).unwrap(), c);
            let rec = CodeRecord::from(&c);
            let json = serde_json::to_string(&rec).unwrap();
            let back: CodeRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(LinearCode::try_from(&back).unwrap(), c);
        }
    }

    #[test]
    fn enumerator_inputs() {
        let plain = parse_enumerator("1 0 0 0 14 0 0 0 1").unwrap();
        let json = parse_enumerator(r#"{"n":8,"coeffs":["1","0","0","0","14","0","0","0","1"]}"#).unwrap();
        assert_eq!(plain, json);
        assert!(parse_enumerator("1 x").is_err());
    }
}
