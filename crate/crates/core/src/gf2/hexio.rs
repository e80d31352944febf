//! Hex row text format and JSON code records.
//!
//! A row value is read least-significant bit first: bit `b` is coordinate
//! `b + 1`. Text files hold one `0x...` value per row; an optional
//! `length <n>` line fixes the code length, and `#` starts a comment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::vector::{limb_count, Limbs};
use super::{Gf2Vector, LinearCode};

/// Parses a single row value such as `0xC75001` into a vector of length `n`.
pub fn parse_hex_row(token: &str, n: usize) -> Result<Gf2Vector> {
    let t = token.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .ok_or_else(|| Error::Parse(format!("row {t:?} lacks a 0x prefix")))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("row {t:?} is not hexadecimal")));
    }
    let digits = digits.trim_start_matches('0');
    let nlimbs = limb_count(n);
    if digits.len().div_ceil(16) > nlimbs {
        return Err(Error::Parse(format!("row {t:?} exceeds {n} bits")));
    }
    let mut limbs: Limbs = smallvec::smallvec![0; nlimbs];
    let bytes = digits.as_bytes();
    let mut end = bytes.len();
    let mut li = 0;
    while end > 0 {
        let start = end.saturating_sub(16);
        let chunk = std::str::from_utf8(&bytes[start..end]).expect("ascii");
        limbs[li] = u64::from_str_radix(chunk, 16).expect("validated hex");
        li += 1;
        end = start;
    }
    let v = Gf2Vector::from_limbs(n, limbs.clone());
    if v.limbs() != &limbs[..] {
        return Err(Error::Parse(format!("row {t:?} exceeds {n} bits")));
    }
    Ok(v)
}

/// `0x` followed by `ceil(n / 4)` uppercase hex digits.
pub fn emit_hex_row(v: &Gf2Vector) -> String {
    let width = v.len().div_ceil(4).max(1);
    let mut s = String::with_capacity(width);
    for &l in v.limbs().iter().rev() {
        s.push_str(&format!("{l:016X}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    let cut = s.len().saturating_sub(width);
    format!("0x{}", &s[cut..])
}

/// Builds a code of length `n <= 64` from integer row values.
pub fn parse_hex_rows(values: &[u64], n: usize) -> Result<LinearCode> {
    LinearCode::from_u64_rows(n, values)
}

/// The stored echelon basis as integers; `None` when the length exceeds 64.
pub fn emit_hex_rows(code: &LinearCode) -> Option<Vec<u64>> {
    code.basis_u64()
}

/// Parses the text format described in the module docs.
pub fn parse_hex_text(text: &str, length: Option<usize>) -> Result<LinearCode> {
    let mut n = length;
    let mut tokens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("length") {
            let v: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad length line {line:?}")))?;
            if v == 0 {
                return Err(Error::Parse("length must be positive".into()));
            }
            if n.is_some_and(|m| m != v) {
                return Err(Error::Parse("conflicting lengths".into()));
            }
            n = Some(v);
            continue;
        }
        tokens.extend(
            line.split(|c: char| c.is_whitespace() || matches!(c, ',' | '[' | ']'))
                .filter(|t| !t.is_empty())
                .map(str::to_owned),
        );
    }
    let n = n.ok_or_else(|| Error::Parse("code length not given".into()))?;
    let rows = tokens
        .iter()
        .map(|t| parse_hex_row(t, n))
        .collect::<Result<Vec<_>>>()?;
    LinearCode::new(n, rows)
}

/// Text form of the stored basis, with a `length` line.
pub fn emit_hex_text(code: &LinearCode) -> String {
    let mut out = format!("length {}\n", code.length());
    for r in code.basis() {
        out.push_str(&emit_hex_row(r));
        out.push('\n');
    }
    out
}

/// JSON code record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub length: usize,
    pub dim: usize,
    pub rows_hex: Vec<String>,
    pub weight_enumerator: Vec<u64>,
}

impl CodeRecord {
    pub fn from_code(code: &LinearCode) -> Result<Self> {
        Ok(CodeRecord {
            length: code.length(),
            dim: code.dim(),
            rows_hex: code.basis().iter().map(emit_hex_row).collect(),
            weight_enumerator: code.weight_enumerator()?.coeffs().to_vec(),
        })
    }

    /// Record without the enumerator, for codes too large to enumerate.
    pub fn from_code_unenumerated(code: &LinearCode) -> Self {
        CodeRecord {
            length: code.length(),
            dim: code.dim(),
            rows_hex: code.basis().iter().map(emit_hex_row).collect(),
            weight_enumerator: Vec::new(),
        }
    }

    /// Rebuilds the code, checking `dim` and the shape of the enumerator.
    /// An empty enumerator is accepted.
    pub fn to_code(&self) -> Result<LinearCode> {
        if self.length == 0 {
            return Err(Error::Parse("length must be positive".into()));
        }
        let rows = self
            .rows_hex
            .iter()
            .map(|t| parse_hex_row(t, self.length))
            .collect::<Result<Vec<_>>>()?;
        let code = LinearCode::new(self.length, rows)?;
        if code.dim() != self.dim {
            return Err(Error::Parse(format!(
                "record claims dim {} but rows span dim {}",
                self.dim,
                code.dim()
            )));
        }
        let we = &self.weight_enumerator;
        if !we.is_empty() {
            let total = we.iter().try_fold(0u64, |a, &c| a.checked_add(c));
            if we.len() != self.length + 1
                || we[0] != 1
                || self.dim >= 64
                || total != Some(1u64 << self.dim)
            {
                return Err(Error::Parse("inconsistent weight enumerator".into()));
            }
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_first_row() {
        let v = parse_hex_row("0xC75001", 24).unwrap();
        let support: Vec<usize> = v.support().iter().map(|i| i + 1).collect();
        assert_eq!(support, vec![1, 13, 15, 17, 18, 19, 23, 24]);
        assert_eq!(v.weight(), 8);
        assert_eq!(emit_hex_row(&v), "0xC75001");
    }

    #[test]
    fn long_rows_round_trip() {
        let v = Gf2Vector::from_support(100, &[0, 63, 64, 99]).unwrap();
        let s = emit_hex_row(&v);
        assert_eq!(s.len(), 2 + 25);
        assert_eq!(parse_hex_row(&s, 100).unwrap(), v);
    }

    #[test]
    fn oversized_rows_are_rejected() {
        assert!(parse_hex_row("0x1000000", 24).is_err());
        assert!(parse_hex_row("0x00FFFFFF", 24).is_ok());
        assert!(parse_hex_row("12", 24).is_err());
        assert!(parse_hex_row("0x", 24).is_err());
    }

    #[test]
    fn text_needs_length() {
        assert!(parse_hex_text("0x1\n", None).is_err());
        let c = parse_hex_text("length 8\n0xFF # all ones\n", None).unwrap();
        assert_eq!(c.dim(), 1);
    }
}
