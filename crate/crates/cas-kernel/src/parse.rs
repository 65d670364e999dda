//! Parser for rational-function expressions such as `2*(x-1)^2/(x*y) - 3/4`.
//!
//! Grammar: sums and differences of products and quotients of powers, with
//! integer exponents (`^-1` allowed), integer literals, parentheses and the
//! variables of a context. Multiplication must be explicit.

use crate::poly::Context;
use crate::ratfunc::RF;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` at byte {pos}: {msg}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    ctx: &'a Context,
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { input: self.src.to_string(), pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.b.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RF, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RF, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    acc = acc.div(&d);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RF, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RF, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: i32 = match self.src[start..self.pos].parse() {
                Ok(n) => n,
                Err(_) => return self.err("expected an integer exponent"),
            };
            if neg && base.is_zero() {
                return self.err("negative power of zero");
            }
            return Ok(base.pow(if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RF, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(RF::constant(self.ctx, crate::coeff::Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.b.len() && (self.b[self.pos].is_ascii_alphanumeric() || self.b[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.ctx.index(name) {
                    Some(i) => Ok(RF::var(self.ctx, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a rational function over `ctx`.
pub fn parse_rf(ctx: &Context, src: &str) -> Result<RF, ParseError> {
    let mut p = Parser { ctx, src, b: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Like [`parse_rf`] but panics on malformed input; meant for formulas
/// embedded in source code.
pub fn rf(ctx: &Context, src: &str) -> RF {
    parse_rf(ctx, src).unwrap_or_else(|e| panic!("{e}"))
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(ctx: &Context, src: &str) -> Result<crate::poly::Polynomial, ParseError> {
    let f = parse_rf(ctx, src)?;
    if !f.is_polynomial() {
        return Err(ParseError { input: src.into(), pos: 0, msg: "not a polynomial".into() });
    }
    Ok(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let c = Context::new(&["x", "y", "l0"]);
        let f = rf(&c, "(x^2 - y^2)/(x - y)");
        assert_eq!(f.render(), "x + y");
        let g = rf(&c, "-2*(x-1)*(x+y-1)/x");
        assert_eq!(g.render(), "(-2*x^2 - 2*x*y + 4*x + 2*y - 2)/(x)");
        assert_eq!(rf(&c, "x^-2*x^3").render(), "x");
        assert_eq!(rf(&c, "3/4 - 1/4").render(), "1/2");
        assert_eq!(rf(&c, "- l0 * - 1").render(), "l0");
    }

    #[test]
    fn errors_carry_position() {
        let c = Context::new(&["x"]);
        let e = parse_rf(&c, "x + q").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_rf(&c, "x/(x-x)").is_err());
        assert!(parse_rf(&c, "(x").is_err());
        assert!(parse_rf(&c, "2x").is_err());
        assert!(parse_poly(&c, "1/x").is_err());
    }
}
