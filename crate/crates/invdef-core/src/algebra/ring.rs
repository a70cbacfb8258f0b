//! Variable names, grading, parsing and canonical printing.

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::rational::{self, Rational};
use std::collections::HashMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unexpected character `{0}` at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring, ParseError> {
        let mut index = HashMap::new();
        let mut out = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if !valid_name(&n) {
                return Err(ParseError::InvalidName(n));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(ParseError::DuplicateVariable(n));
            }
            out.push(n);
        }
        Ok(Ring { names: out, index })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The ring with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring, ParseError> {
        let mut names: Vec<String> = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&names)
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, ParseError> {
        Parser {
            ring: self,
            src: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Terms in decreasing `order`, coefficients printed exactly.
    pub fn format_with(&self, p: &Polynomial, order: &MonomialOrder) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, Rational)> = p.terms().iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = rational::is_negative(c);
            let a = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if rational::is_one(&a) {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.format_with(p, &MonomialOrder::GrevLex)
    }

    /// Canonical generator form: integer coefficients with content one and a
    /// positive leading coefficient.
    pub fn format_generator(&self, p: &Polynomial) -> String {
        self.format(&p.primitive(&MonomialOrder::GrevLex))
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::Unexpected(c, self.pos),
            None => ParseError::Eof,
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.ring.nvars();
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(ParseError::Eof),
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.unexpected()),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            acc = &acc + &Polynomial::term(m, c);
        }
        if acc.nvars().is_some_and(|k| k != n) {
            unreachable!();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let n = self.ring.nvars();
        let mut coeff = rational::one();
        let mut mono = Monomial::one(n);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.number()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = self.ident();
                    let i = self
                        .ring
                        .index_of(&name)
                        .ok_or(ParseError::UnknownVariable(name))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.digits();
                        e = d.parse().map_err(|_| ParseError::BadNumber(d))?;
                    }
                    let cur = mono.exp(i);
                    mono.set_exp(i, cur + e);
                }
                _ => return Err(self.unexpected()),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok((mono, coeff))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let num = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            let text = format!("{num}/{den}");
            if den.is_empty() || den.bytes().all(|b| b == b'0') {
                return Err(ParseError::BadNumber(text));
            }
            return Rational::from_str(&text).map_err(|_| ParseError::BadNumber(text));
        }
        Rational::from_str(&num).map_err(|_| ParseError::BadNumber(num))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    fn ring() -> Ring {
        Ring::new(&["x", "y", "t1"]).unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let r = ring();
        let p = r.parse("2/3*x^2*y - y + 5 - x*t1").unwrap();
        assert_eq!(p.coeff(&Monomial::from_exps(&[2, 1, 0])), frac(2, 3));
        let s = r.format(&p);
        assert_eq!(r.parse(&s).unwrap(), p);
        assert_eq!(s, "2/3*x^2*y-x*t1-y+5");
    }

    #[test]
    fn generator_form_is_primitive() {
        let r = ring();
        let p = r.parse("-1/2*x*y + 3/4*t1").unwrap();
        assert_eq!(r.format_generator(&p), "2*x*y-3*t1");
    }

    #[test]
    fn errors() {
        let r = ring();
        assert_eq!(r.parse("x*z"), Err(ParseError::UnknownVariable("z".into())));
        assert!(r.parse("x + ").is_err());
        assert!(r.parse("1/0*x").is_err());
        assert!(r.parse("x y").is_err());
        assert!(Ring::new(&["x", "x"]).is_err());
        assert!(Ring::new(&["1x"]).is_err());
    }

    #[test]
    fn whitespace_insignificant() {
        let r = ring();
        assert_eq!(r.parse(" x ^ 2 *  y").unwrap(), r.parse("x^2*y").unwrap());
    }
}
