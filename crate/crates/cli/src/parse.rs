//! Recursive-descent parser for exact polynomial expressions.
//!
//! Grammar: integer/rational literals, one variable symbol, `+ - * ^`, and
//! parentheses. Floating-point literals are rejected; syntax errors carry the
//! byte position.

use isofib_core::rat::Rat;
use isofib_core::unipoly::UniPoly;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<UniPoly, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<UniPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UniPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            if e > 64 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<UniPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name != self.var {
                    self.pos = start;
                    return self.err(format!("unknown variable '{}' (expected '{}')", name, self.var));
                }
                Ok(UniPoly::x(self.var))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an exponent");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError { position: start, message: "bad exponent".into() })
    }

    fn number(&mut self) -> Result<UniPoly, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(ParseError {
                position: self.pos,
                message: "floating-point literals are forbidden; use exact rationals like 1/2".into(),
            });
        }
        // optional /denominator (kept distinct from polynomial division,
        // which the grammar does not have)
        let mut text = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.src.get(self.pos) == Some(&b'.') {
                return Err(ParseError {
                    position: self.pos,
                    message: "floating-point literals are forbidden; use exact rationals like 1/2".into(),
                });
            }
            if dstart == self.pos {
                // not a rational literal after all
                self.pos = save;
            } else {
                let den = std::str::from_utf8(&self.src[dstart..self.pos]).unwrap();
                text = format!("{}/{}", text, den);
            }
        }
        let r = Rat::from_str(&text).map_err(|e| ParseError {
            position: start,
            message: e.to_string(),
        })?;
        Ok(UniPoly::constant(self.var, r))
    }
}

/// Parse an expression into a polynomial in the given variable.
pub fn parse_poly(text: &str, var: &str) -> Result<UniPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, var };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_polynomials() {
        let p = parse_poly("t^4 - 1", "t").unwrap();
        assert_eq!(p, UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]));
        let q = parse_poly("(t-1)*(t+1)", "t").unwrap();
        assert_eq!(q, UniPoly::from_ints("t", &[-1, 0, 1]));
        let r = parse_poly("1/2*t + 3", "t").unwrap();
        assert_eq!(r.coeff(1), Rat::new(1, 2));
        assert_eq!(r.coeff(0), Rat::from_int(3));
    }

    #[test]
    fn floats_rejected() {
        let e = parse_poly("0.5*t", "t").unwrap_err();
        assert!(e.message.contains("floating-point"));
    }

    #[test]
    fn unknown_variable() {
        let e = parse_poly("x^2", "t").unwrap_err();
        assert!(e.message.contains("unknown variable"));
        assert_eq!(e.position, 0);
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_poly("t^", "t").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_poly("t +", "t").is_err());
        assert!(parse_poly("(t", "t").is_err());
        assert!(parse_poly("t 5", "t").is_err());
    }

    #[test]
    fn print_parse_stability() {
        for src in ["t^4 - 1", "-3*t^2 + 1/2*t - 7", "(t^2+1)*(t-2)"] {
            let p = parse_poly(src, "t").unwrap();
            let reparsed = parse_poly(&p.to_string(), "t").unwrap();
            assert_eq!(p, reparsed);
        }
    }
}
