//! Polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' natural)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is ignored everywhere. Errors report a byte offset.

use num_bigint::BigInt;

use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

pub fn parse_poly<F: Field>(ring: &Ring<F>, text: &str) -> Result<Polynomial<F>> {
    let mut p = Parser::new(ring, text);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Comma-separated expressions; parentheses may contain commas only inside
/// nested expressions, so a top-level split is unambiguous.
pub fn parse_poly_list<F: Field>(ring: &Ring<F>, text: &str) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut p = Parser::new(ring, text);
    loop {
        out.push(p.expr()?);
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            None => break,
            Some(_) => return Err(p.error("expected `,` or end of input")),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Ring<F>,
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(ring: &'a Ring<F>, text: &'a str) -> Self {
        Parser { ring, src: text.as_bytes(), text, pos: 0 }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.error("expected a natural exponent after `^`"));
            }
            let e: u32 =
                digits.parse().map_err(|_| Error::Parse { offset: start, message: "exponent too large".into() })?;
            return base.try_pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_text = self.digits();
                    if den_text.is_empty() {
                        return Err(self.error("expected a denominator after `/`"));
                    }
                    let den: BigInt = den_text.parse().expect("digits");
                    let at = self.pos;
                    let c = self
                        .ring
                        .field()
                        .from_ratio(&num, &den)
                        .map_err(|e| Error::Parse { offset: at, message: e.to_string() })?;
                    return Ok(Polynomial::constant(self.ring, c));
                }
                self.pos = save;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::Parse { offset: start, message: format!("unknown variable `{name}`") }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::poly::RingContext;

    #[test]
    fn parses_rational_literals() {
        let r = RingContext::new(Rationals, &["x", "y"]).unwrap();
        let f = parse_poly(&r, " 2/27 * x^2 -  y ").unwrap();
        assert_eq!(f.to_string(), "2/27*x^2 - y");
    }

    #[test]
    fn reports_positions() {
        let r = RingContext::new(Rationals, &["x"]).unwrap();
        match parse_poly(&r, "x^") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_poly(&r, "x + q") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 4);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reduces_modulo_p() {
        let r = RingContext::new(PrimeField::new(2).unwrap(), &["x", "y"]).unwrap();
        let f = parse_poly(&r, "(x + y)^2").unwrap();
        assert_eq!(f.to_string(), "x^2 + y^2");
    }

    #[test]
    fn lists() {
        let r = RingContext::new(Rationals, &["x", "y", "z"]).unwrap();
        let gens = parse_poly_list(&r, "x^2 - y^3, x*y - z^3").unwrap();
        assert_eq!(gens.len(), 2);
    }
}
