//! Run-length notation for coefficient lists: `101^3` is `1 + x^2 + x^3 + x^4`.
//!
//! A token is a digit optionally followed by `^<count>` or `^{<count>}`; tokens
//! list coefficients in ascending order.

use crate::error::{Error, Result};
use crate::gfpoly::PrimeField;

/// Expands abbreviated notation into ascending coefficients.
pub fn parse_abbrev(text: &str, field: PrimeField) -> Result<Vec<u8>> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if !c.is_ascii_digit() {
            return Err(Error::Parse(format!(
                "expected a digit at offset {i} in {s:?}"
            )));
        }
        let digit = c - b'0';
        if digit >= field.p() {
            return Err(Error::Parse(format!(
                "digit {digit} is not an element of {field}"
            )));
        }
        i += 1;
        let mut count = 1usize;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let braced = i < bytes.len() && bytes[i] == b'{';
            if braced {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Parse(format!(
                    "missing run length at offset {start} in {s:?}"
                )));
            }
            count = s[start..i]
                .parse()
                .map_err(|_| Error::Parse(format!("run length too large in {s:?}")))?;
            if count == 0 {
                return Err(Error::Parse(format!("zero run length in {s:?}")));
            }
            if braced {
                if i >= bytes.len() || bytes[i] != b'}' {
                    return Err(Error::Parse(format!("unclosed brace in {s:?}")));
                }
                i += 1;
            }
        }
        out.extend(std::iter::repeat(digit).take(count));
    }
    Ok(out)
}

/// Canonical notation: `^{k}` for runs of two or more, a bare digit otherwise.
/// Trailing zeros are dropped and the zero polynomial is written `0`.
pub fn emit_abbrev(coeffs: &[u8]) -> String {
    let end = coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    if end == 0 {
        return "0".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < end {
        let c = coeffs[i];
        let mut j = i;
        while j < end && coeffs[j] == c {
            j += 1;
        }
        s.push((b'0' + c) as char);
        if j - i >= 2 {
            s.push_str(&format!("^{{{}}}", j - i));
        }
        i = j;
    }
    s
}

/// Accepts abbreviated notation, or comma-separated ascending coefficients when the text contains a comma.
pub fn parse_poly_text(text: &str, field: PrimeField) -> Result<Vec<u8>> {
    if !text.contains(',') {
        return parse_abbrev(text, field);
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let v: u32 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))?;
            if v >= field.p() as u32 {
                return Err(Error::Parse(format!("coefficient {v} is not an element of {field}")));
            }
            Ok(v as u8)
        })
        .collect()
}
