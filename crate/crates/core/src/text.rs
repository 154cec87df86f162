//! Canonical text form of polynomials: `3*x^2*y - 1/2*z`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

pub fn format_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let vars = f.ring().vars();
    let mut out = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        let mut coeff = t.coeff.clone();
        if coeff.is_negative() {
            coeff = coeff.neg();
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        let mut factors = Vec::new();
        if !coeff.is_one() || t.mono.is_one() {
            factors.push(coeff.to_string());
        }
        for (v, e) in vars.iter().zip(t.mono.exponents()) {
            match e {
                0 => {}
                1 => factors.push(v.clone()),
                e => factors.push(format!("{v}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Parses `+ - * / ^`, integer and `a/b` literals, variables of `ring`, and parentheses.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat(b'-') {
            self.product()?.neg()
        } else {
            self.eat(b'+');
            self.product()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n: u32 = digits.parse().map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut lit = self.take_while(|c| c.is_ascii_digit());
                // `a/b` is a literal only when both sides are integers
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        self.pos = save;
                        return Err(self.error("expected denominator"));
                    }
                    lit = format!("{lit}/{den}");
                }
                let c = self.ring.field().parse_scalar(&lit)?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::Parse(format!("unknown variable `{name}`"))),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
