//! Literal syntax for elements of A and K.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | 'x' | '(' expr ')'
//! ```
//!
//! Integers are read in the prime subfield; `x` is the generator of a
//! prime-power field.

use super::field::Fq;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Parser<'a> {
    field: &'a Fq,
    src: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        while self.pos < self.src.len() && self.src[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        let s: String = self.src.iter().collect();
        Error::Parse(format!("{msg} at offset {} in {s:?}", self.pos))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = &acc * &d.inv().map_err(|_| self.err("division by zero"))?;
                }
                Some(c) if c == '(' || c == 't' || c == 'x' || c.is_ascii_digit() => {
                    acc = &acc * &self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            return base.pow(n as i64).map_err(|_| self.err("bad power"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.src[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(RatFunc::t(self.field))
            }
            Some('x') => {
                self.pos += 1;
                let g = self.field.generator().ok_or_else(|| self.err("'x' is only defined for prime-power fields"))?;
                Ok(RatFunc::constant(self.field, g))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::from_int(self.field, (n % self.field.p() as u64) as i64))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parses a literal into an element of K.
pub fn parse_ratfunc(field: &Fq, s: &str) -> Result<RatFunc> {
    let mut p = Parser { field, src: s.chars().collect(), pos: 0 };
    if p.peek().is_none() {
        return Err(Error::Parse("empty literal".into()));
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses a literal that must denote an element of A.
pub fn parse_poly(field: &Fq, s: &str) -> Result<Poly> {
    let r = parse_ratfunc(field, s)?;
    r.as_poly().cloned().ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial")))
}

/// Parses the F_p-modulus of a prime-power field written in `x`.
pub fn parse_modulus(p: u32, s: &str) -> Result<Vec<u8>> {
    let fp = Fq::prime(p)?;
    // read the literal with 't' standing in for 'x'
    let swapped: String = s.chars().map(|c| if c == 'x' { 't' } else { c }).collect();
    let poly = parse_poly(&fp, &swapped)?;
    Ok(poly.coeffs().to_vec())
}
