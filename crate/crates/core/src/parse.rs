//! Text input format.
//!
//! ```text
//! n=3
//! x; y; x+y      # statements split on newlines or ';'
//! (x - 2z)^3     # multiplicity
//! y = 1/2        # affine offset
//! ```
//!
//! Variables are `x1..xn`; for `n <= 4` the aliases `x, y, z, w` also work.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::symbolic::Q;

/// `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    (!d.is_zero()).then(|| Q::new(n, d))
}

struct Statement<'a> {
    line: usize,
    text: &'a str,
}

fn statements(text: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        for part in body.split(';') {
            let t = part.trim();
            if !t.is_empty() {
                out.push(Statement { line: i + 1, text: t });
            }
        }
    }
    out
}

pub fn parse_text(text: &str) -> Result<Arrangement> {
    let stmts = statements(text);
    let first = stmts.first().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let n = parse_header(first)?;
    let mut raw = Vec::with_capacity(stmts.len() - 1);
    for st in &stmts[1..] {
        raw.push(parse_hyperplane(st, n)?);
    }
    Arrangement::new(n, raw)
}

fn parse_header(st: &Statement<'_>) -> Result<usize> {
    let err = || Error::Parse { line: st.line, msg: format!("expected `n=<int>`, got `{}`", st.text) };
    let (key, val) = st.text.split_once('=').ok_or_else(err)?;
    if key.trim() != "n" {
        return Err(err());
    }
    match val.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(err()),
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    n: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, n: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, n }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Option<Q>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.peek() == Some('.') {
            return Err(self.err("decimal coefficients are not supported; use p/q"));
        }
        let mut value: Q = Q::from_integer(num.parse().unwrap());
        if self.eat('/') {
            let den = self.digits().ok_or_else(|| self.err("expected denominator after `/`"))?;
            let d: BigInt = den.parse().unwrap();
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            value /= Q::from_integer(d);
        }
        Ok(Some(value))
    }

    fn variable(&mut self) -> Result<Option<usize>> {
        self.skip_ws();
        let Some(&c) = self.chars.get(self.pos) else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        self.pos += 1;
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let idx: String = self.chars[start..self.pos].iter().collect();
        let index = if idx.is_empty() {
            let alias = match c {
                'x' => 1,
                'y' => 2,
                'z' => 3,
                'w' => 4,
                _ => return Err(self.err(format!("unknown variable `{c}`"))),
            };
            if self.n > 4 {
                return Err(self.err("aliases x, y, z, w need n <= 4; use x1..xn"));
            }
            alias
        } else {
            if c != 'x' {
                return Err(self.err(format!("unknown variable `{c}{idx}`")));
            }
            idx.parse::<usize>().map_err(|_| self.err("bad variable index"))?
        };
        if index == 0 || index > self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: index });
        }
        Ok(Some(index - 1))
    }

    /// Sum of signed terms; returns (linear coefficients, constant).
    fn expr(&mut self) -> Result<(Vec<Q>, Q)> {
        let mut coeffs = vec![Q::zero(); self.n];
        let mut constant = Q::zero();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let c = self.number()?;
            if c.is_some() {
                self.eat('*');
            }
            let v = self.variable()?;
            let c = c.unwrap_or_else(|| Q::from_integer(1.into())) * Q::from_integer(sign.into());
            match v {
                Some(i) => coeffs[i] += c,
                None if self.peek().is_some_and(|ch| ch.is_ascii_alphanumeric()) => {
                    return Err(self.err("malformed term"));
                }
                None => constant += c,
            }
            // the loop only continues on an explicit sign
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok((coeffs, constant))
    }
}

fn parse_hyperplane(st: &Statement<'_>, n: usize) -> Result<(Vec<Q>, Q, u32)> {
    let mut cur = Cursor::new(st.text, st.line, n);
    let (normal, constant) = if cur.eat('(') {
        let e = cur.expr()?;
        if !cur.eat(')') {
            return Err(cur.err("expected `)`"));
        }
        e
    } else {
        cur.expr()?
    };
    let mut mult = 1u32;
    if cur.eat('^') {
        let d = cur.digits().ok_or_else(|| cur.err("expected multiplicity after `^`"))?;
        mult = d.parse().map_err(|_| cur.err("multiplicity too large"))?;
        if mult == 0 {
            return Err(cur.err("multiplicity must be positive"));
        }
    }
    let mut rhs = Q::zero();
    if cur.eat('=') {
        let neg = cur.eat('-');
        let v = cur.number()?.ok_or_else(|| cur.err("expected rational offset after `=`"))?;
        rhs = if neg { -v } else { v };
    }
    if let Some(c) = cur.peek() {
        return Err(cur.err(format!("unexpected `{c}`")));
    }
    Ok((normal, rhs - constant, mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::poly::{q, qf};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(qf(-1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
    }

    #[test]
    fn forms_with_coefficients() {
        let a = parse_text("n=3\nx+2y+z\n2y+z\n3/2*x - y = 1").unwrap();
        let h = &a.hyperplanes()[2];
        assert_eq!(h.normal(), &[q(3), q(-2), q(0)]);
        assert_eq!(h.offset(), &q(2));
    }

    #[test]
    fn constant_term_moves_to_offset() {
        let a = parse_text("n=2; y - 1").unwrap();
        assert_eq!(a.hyperplanes()[0].offset(), &q(1));
    }

    #[test]
    fn indexed_variables() {
        let a = parse_text("n=5; x1 - x5; (x2 + x3)^2").unwrap();
        assert_eq!(a.degree(), 3);
        assert!(parse_text("n=5; x").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let a = parse_text("# header\nn=2\n\nx # first\ny\n").unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn header_required() {
        assert!(parse_text("x; y").is_err());
        assert!(parse_text("").is_err());
        assert!(parse_text("n=0").is_err());
    }
}
