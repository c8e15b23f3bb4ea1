//! Text input: polynomials, rationals, ranges, matrices and vectors.

use std::sync::Arc;

use crate::error::{Error, Result};
use num_rational::Rational64;

use crate::field_poly::{Monomial, Polynomial, Ring};
use crate::groebner::Matrix;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            msg: msg.into(),
            col: self.col(),
        })
    }

    fn nat(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match text.parse() {
            Ok(v) => Ok(Some(v)),
            Err(_) => {
                self.pos = start;
                self.err(format!("number {text} too large"))
            }
        }
    }

    fn ident(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Some((
                std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string(),
                start + 1,
            ))
        } else {
            None
        }
    }
}

/// Parses a polynomial such as `x^2*y + 3*x - 1` in the given ring.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    if lx.peek().is_none() {
        return lx.err("empty input");
    }
    let field = *ring.field();
    let n = ring.nvars();
    let mut terms: Vec<(Monomial, u64)> = Vec::new();
    let mut sign_neg = false;
    if lx.peek() == Some(b'-') {
        lx.pos += 1;
        sign_neg = true;
    } else if lx.peek() == Some(b'+') {
        lx.pos += 1;
    }
    loop {
        let mut coeff = 1u64;
        let mut mono = Monomial::one(n);
        loop {
            if let Some(c) = lx.nat()? {
                coeff = field.mul(coeff, c % field.p());
            } else if let Some((name, col)) = lx.ident() {
                let Some(i) = ring.var_index(&name) else {
                    return Err(Error::Parse {
                        msg: format!("unknown identifier {name}"),
                        col,
                    });
                };
                let mut k = 1u32;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    match lx.nat()? {
                        Some(v) => match u32::try_from(v) {
                            Ok(v) => k = v,
                            Err(_) => return lx.err("exponent too large"),
                        },
                        None => return lx.err("malformed exponent"),
                    }
                }
                mono = mono.mul(&Monomial::var(n, i, k));
            } else {
                return match lx.peek() {
                    None => lx.err("unexpected end of input"),
                    Some(c) => lx.err(format!("unexpected character '{}'", c as char)),
                };
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if sign_neg {
            coeff = field.neg(coeff);
        }
        terms.push((mono, coeff));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                sign_neg = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                sign_neg = true;
            }
            Some(c) => return lx.err(format!("unexpected character '{}'", c as char)),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// An exact rational `a/b` or integer `a`; decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let s = text.trim();
    let bad = |msg: &str| Error::InvalidInput(format!("{msg}: {s:?}"));
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(bad("t must be an exact fraction a/b, not a decimal"));
    }
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let a: i64 = a.parse().map_err(|_| bad("malformed numerator"))?;
    let b: i64 = b.parse().map_err(|_| bad("malformed denominator"))?;
    if b <= 0 {
        return Err(bad("denominator must be positive"));
    }
    Ok(Rational64::new(a, b))
}

/// `lo..hi` with exact endpoints.
pub fn parse_range(text: &str) -> Result<(Rational64, Rational64)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Error::InvalidInput(format!("range {text:?} must look like lo..hi")))?;
    let (lo, hi) = (parse_rational(a)?, parse_rational(b)?);
    if hi < lo {
        return Err(Error::InvalidInput(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}

/// Comma-separated variable names; the empty string gives no variables.
pub fn parse_vars(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Rows separated by ';', entries by ','.
pub fn parse_rows(text: &str, ring: &Arc<Ring>) -> Result<Vec<Vec<Polynomial>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| parse_polynomial(e, ring))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

pub fn parse_matrix(text: &str, ring: &Arc<Ring>) -> Result<Matrix> {
    let rows = parse_rows(text, ring)?;
    let r = rows.len();
    if rows.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidInput(format!("matrix {text:?} is not square")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_examples() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        assert_eq!(parse_polynomial("x^2*y + 3*x", &r).unwrap().to_string(), "x^2*y+3*x");
        let r3 = Ring::new(3, &["x", "y"]).unwrap();
        assert_eq!(parse_polynomial("y^2 - x^3", &r3).unwrap().to_string(), "2*x^3+y^2");
        assert_eq!(
            parse_polynomial("x^2*z", &r).unwrap_err().to_string(),
            "unknown identifier z at column 5"
        );
        assert!(matches!(parse_polynomial("  ", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(Error::Parse { col: 3, .. })));
        assert_eq!(parse_polynomial("-x + 7", &r).unwrap().to_string(), "4*x+2");
        assert!(parse_polynomial("2*3*x - 6*x", &r).unwrap().is_zero());
    }

    #[test]
    fn rationals_and_ranges() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_rational("2").unwrap(), Rational64::from_integer(2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(
            parse_range("0..3/2").unwrap(),
            (Rational64::from_integer(0), Rational64::new(3, 2))
        );
        assert!(parse_range("2..1").is_err());
    }

    #[test]
    fn matrices() {
        let r = Ring::new(3, &["x"]).unwrap();
        let m = parse_matrix("0,1;1,0", &r).unwrap();
        assert_eq!(m[0][1].to_string(), "1");
        assert!(parse_matrix("1,0", &r).is_err());
    }
}
