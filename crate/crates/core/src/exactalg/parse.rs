//! Text grammar for polynomials and rational functions in q:
//! integers, `q`, `+ - * /`, `^` with a nonnegative integer exponent, parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{QPolynomial, ZPolynomial};
use super::ratfunc::QRationalFunction;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<QRationalFunction> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QRationalFunction> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).ok_or_else(|| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QRationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<QRationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QRationalFunction::q())
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(QRationalFunction::from_rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_rational_function(s: &str) -> Result<QRationalFunction> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_qpoly(s: &str) -> Result<QPolynomial> {
    let r = parse_rational_function(s)?;
    r.as_poly().cloned().ok_or_else(|| Error::Parse(format!("`{s}` is not a polynomial")))
}

pub fn parse_zpoly(s: &str) -> Result<ZPolynomial> {
    parse_qpoly(s)?.to_z().ok_or_else(|| Error::Parse(format!("`{s}` has non-integer coefficients")))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let p = parse_qpoly(s)?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("`{s}` is not a constant")));
    }
    Ok(p.constant_term())
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    let c = parse_rational(s)?;
    if !c.is_integer() {
        return Err(Error::Parse(format!("`{s}` is not an integer")));
    }
    Ok(c.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let p = parse_zpoly("1-2*q+q^3").unwrap();
        assert_eq!(p.to_string(), "1-2*q+q^3");
        assert_eq!(parse_zpoly("-(1-q)").unwrap().to_string(), "-1+q");
        assert_eq!(parse_zpoly("-q^2*(1-q)").unwrap().to_string(), "-q^2+q^3");
        assert_eq!(parse_zpoly(" ( q + 1 ) ^ 2 ").unwrap().to_string(), "1+2*q+q^2");
        assert_eq!(parse_qpoly("1/2*q").unwrap().to_string(), "1/2*q");
        let r = parse_rational_function("1/(1-q)").unwrap();
        assert_eq!(parse_rational_function(&r.to_string()).unwrap(), r);
        assert!(parse_zpoly("1/2").is_err());
        assert!(parse_zpoly("x").is_err());
        assert!(parse_zpoly("1/0").is_err());
        assert!(parse_zpoly("(1").is_err());
        assert_eq!(parse_integer("-7").unwrap(), BigInt::from(-7));
    }
}
