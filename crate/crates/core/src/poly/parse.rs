//! Polynomial text grammar.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' digits)?
//! coeff  := digits
//! ```
//!
//! Whitespace is ignored, coefficients are reduced mod p and variable names
//! must be declared by the ring.

use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, col0: usize) -> Self {
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            pos: 0,
            line,
            col0,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        let idx = self
            .chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map(|&(i, _)| i + 1).unwrap_or(0));
        self.col0 + idx
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn ident(&mut self) -> Option<String> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }
}

fn reduce_decimal(digits: &str, p: u32) -> i64 {
    digits
        .bytes()
        .fold(0i64, |acc, b| (acc * 10 + (b - b'0') as i64) % p as i64)
}

pub(super) fn parse_polynomial(
    ring: &PolyRing,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let mut cur = Cursor::new(text, line, column);
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    match cur.peek() {
        Some('-') => {
            sign = -1;
            cur.pos += 1;
        }
        Some('+') => cur.pos += 1,
        _ => {}
    }
    loop {
        let (c, m) = parse_term(ring, &mut cur)?;
        terms.push((sign * c, m));
        match cur.peek() {
            None => break,
            Some('+') => sign = 1,
            Some('-') => sign = -1,
            Some(ch) => return Err(cur.error(format!("unexpected '{ch}'"))),
        }
        cur.pos += 1;
    }
    ring.from_terms(terms)
}

fn parse_term(ring: &PolyRing, cur: &mut Cursor<'_>) -> Result<(i64, Monomial)> {
    let nvars = ring.nvars();
    let mut exps = vec![0u32; nvars];
    let mut coeff = 1i64;
    let mut need_factor = true;
    if let Some(d) = cur.digits() {
        coeff = reduce_decimal(&d, ring.p());
        if cur.peek() == Some('*') {
            cur.pos += 1;
        } else {
            return Ok((coeff, Monomial::new(&exps)));
        }
    }
    while need_factor {
        let col = cur.column();
        let name = cur
            .ident()
            .ok_or_else(|| cur.error("expected a variable or coefficient"))?;
        let idx = ring.names().iter().position(|n| *n == name).ok_or(Error::Parse {
            line: cur.line,
            column: col,
            message: format!("undeclared variable '{name}'"),
        })?;
        let mut e = 1u32;
        if cur.peek() == Some('^') {
            cur.pos += 1;
            let d = cur.digits().ok_or_else(|| cur.error("expected exponent"))?;
            e = d.parse().map_err(|_| cur.error("exponent too large"))?;
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| cur.error("exponent overflow"))?;
        need_factor = cur.peek() == Some('*');
        if need_factor {
            cur.pos += 1;
        }
    }
    Ok((coeff, Monomial::new(&exps)))
}
