//! The ASCII polynomial grammar.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := integer ["/" integer] | name ["^" integer]
//! ```
//!
//! Printing emits `c*x1^e1*...` terms in descending order, omitting unit coefficients,
//! so `parse(print(f)) == f` exactly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

pub fn parse_polynomial(src: &str, vars: &[String], field: Field, order: MonomialOrder) -> Result<Polynomial> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, vars, field };
    let terms = p.poly()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(Polynomial::from_terms(order, terms))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Vec<(Monomial, Scalar)>> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(self.err("empty polynomial")),
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { c.neg() } else { c }));
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut coeff = BigRational::one();
        let mut exps = [0u32; MAX_VARS];
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut q = BigRational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den == BigInt::from(0) {
                            return Err(self.err("zero denominator"));
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                    let idx = self.vars.iter().position(|v| v == name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let n = self.integer()?;
                        e = u32::try_from(n).map_err(|_| self.err("exponent out of range"))?;
                    }
                    exps[idx] += e;
                    if exps[idx] > u16::MAX as u32 {
                        return Err(self.err("exponent out of range"));
                    }
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let c = self.field.from_rational(&coeff)?;
        Ok((Monomial::from_exponents(&exps), c))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse().expect("digits"))
    }
}

fn write_monomial(out: &mut String, m: &Monomial, vars: &[String]) {
    let mut first = true;
    for (i, v) in vars.iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(v);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (neg, mag) = match c {
            Scalar::Rat(q) if q.is_negative() => (true, Scalar::Rat(-q)),
            _ => (false, c.clone()),
        };
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if m.is_one() {
            let _ = write!(out, "{mag}");
        } else {
            if !mag.is_one() {
                let _ = write!(out, "{mag}*");
            }
            write_monomial(&mut out, m, vars);
        }
    }
    out
}
