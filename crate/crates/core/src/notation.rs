//! Superscript notation shared by patterns, colored words and block forms.
//!
//! An element is written `VALUE^COLOR`, where `VALUE` is a run of decimal
//! digits and `COLOR` is either a single digit or a braced run of digits
//! (`^{12}`), the way a TeX superscript binds. This keeps `1^12^2` readable
//! as `1^1 2^2` instead of `1^{12} ^2`. Whitespace between elements is
//! ignored. Both numbers must be at least 1.

use crate::error::{Error, Result};

/// One parsed `VALUE^COLOR` element together with its byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Element {
    pub value: u32,
    pub color: u32,
    pub pos: usize,
}

pub(crate) fn parse_elements(text: &str, base: usize) -> Result<Vec<Element>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return Err(malformed(base + i, "expected a decimal value"));
        }
        let value = parse_number(&text[start..i], base + start)?;
        if i >= bytes.len() || bytes[i] != b'^' {
            return Err(malformed(base + i, "expected '^' after value"));
        }
        i += 1;
        let color_pos = i;
        let color = if i < bytes.len() && bytes[i] == b'{' {
            let open = i;
            i += 1;
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits || i >= bytes.len() || bytes[i] != b'}' {
                return Err(malformed(base + open, "unterminated braced color"));
            }
            let c = parse_number(&text[digits..i], base + digits)?;
            i += 1;
            c
        } else if i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
            u32::from(bytes[i - 1] - b'0')
        } else {
            return Err(malformed(base + i, "expected a color after '^'"));
        };
        if value == 0 {
            return Err(malformed(base + start, "values start at 1"));
        }
        if color == 0 {
            return Err(malformed(base + color_pos, "colors start at 1"));
        }
        out.push(Element {
            value,
            color,
            pos: base + start,
        });
    }
    Ok(out)
}

fn parse_number(digits: &str, pos: usize) -> Result<u32> {
    digits
        .parse::<u32>()
        .map_err(|_| malformed(pos, "number too large"))
}

fn malformed(pos: usize, msg: &str) -> Error {
    Error::MalformedToken {
        pos,
        msg: msg.to_string(),
    }
}

pub(crate) fn write_element(out: &mut String, value: u32, color: u32) {
    use std::fmt::Write;
    if color < 10 {
        let _ = write!(out, "{value}^{color}");
    } else {
        let _ = write!(out, "{value}^{{{color}}}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_digit_colors_bind_tightly() {
        let els = parse_elements("1^12^21^13^2", 0).unwrap();
        let pairs: Vec<_> = els.iter().map(|e| (e.value, e.color)).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 2), (1, 1), (3, 2)]);
    }

    #[test]
    fn braced_and_multi_digit() {
        let els = parse_elements("10^{11} 2^3", 0).unwrap();
        let pairs: Vec<_> = els.iter().map(|e| (e.value, e.color)).collect();
        assert_eq!(pairs, vec![(10, 11), (2, 3)]);
        let mut s = String::new();
        write_element(&mut s, 10, 11);
        assert_eq!(s, "10^{11}");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_elements("1^1x", 0),
            Err(Error::MalformedToken {
                pos: 3,
                msg: "expected a decimal value".into()
            })
        );
        assert!(matches!(
            parse_elements("1^", 4),
            Err(Error::MalformedToken { pos: 6, .. })
        ));
        assert!(matches!(
            parse_elements("1^0", 0),
            Err(Error::MalformedToken { pos: 2, .. })
        ));
        assert!(matches!(
            parse_elements("12", 0),
            Err(Error::MalformedToken { pos: 2, .. })
        ));
    }
}
