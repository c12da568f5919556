//! Text form of elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor := ident ['^' nat]
//! coeff  := int ['/' nat]
//! ident  := [A-Za-z_@][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Dotted generators are written `@name`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::Scalar;

/// Parses `text` into an element of `alg`.
pub fn parse_element(alg: &Algebra, text: &str) -> Result<Element> {
    let mut p = Parser {
        alg,
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Canonical text form; `parse_element` inverts it.
pub fn format_element(alg: &Algebra, e: &Element) -> String {
    e.display(alg).to_string()
}

struct Parser<'a> {
    alg: &'a Algebra,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<Element> {
        let mut out = Element::zero();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            let sign = if negative { -Scalar::one() } else { Scalar::one() };
            out.add_scaled(&t, &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() != Some(b'*') {
                    return Ok(Element::scalar(c));
                }
                self.pos += 1;
                Element::scalar(c)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'@' => Element::one(),
            Some(_) => return Err(self.err("expected a coefficient or generator")),
            None => return Err(self.err("unexpected end of input")),
        };
        loop {
            let f = self.factor()?;
            acc = &acc * &f;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>().map_err(|_| self.err("bad number"))
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.nat()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.nat()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Scalar::new(num, den))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' || *c == b'@' => self.pos += 1,
            _ => return Err(self.err("expected a generator name")),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
        let index = self
            .alg
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.nat()?;
            exp = u32::try_from(n).map_err(|_| Error::Syntax {
                column: at + 1,
                message: "exponent too large".into(),
            })?;
            let g = self.alg.generator(index);
            if exp > 1 && (g.is_odd() || g.dotted) {
                return Err(Error::Syntax {
                    column: at + 1,
                    message: format!("exponent {exp} on the odd or dotted generator {name}"),
                });
            }
        }
        Ok(self.alg.gen(index).pow(exp))
    }
}
