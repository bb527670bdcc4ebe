//! Text syntax for trace polynomials.
//!
//! ```text
//! sum     := ['+' | '-'] product (('+' | '-') product)*
//! product := factor (['*'] factor)*            juxtaposition multiplies
//! factor  := '-' factor | atom ['^' integer]
//! atom    := 'X' integer | 'c' integer '(' sum ')' | 'tr(' sum ')'
//!          | integer ['/' integer] | '[' integers ']' | '1' | '(' sum ')'
//! ```
//!
//! Scalars are read in the given field, so `1/2` is `4` in `F7`.

use crate::algebra::ncpoly::NcPoly;
use crate::algebra::trace::TracePoly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Parses a trace polynomial such as `c2(X1*X2) * X1 - 3*X2`.
pub fn parse_trace(field: &Field, src: &str) -> Result<TracePoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field };
    let t = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses a polynomial without central symbols.
pub fn parse_nc(field: &Field, src: &str) -> Result<NcPoly> {
    parse_trace(field, src)?
        .as_nc()
        .ok_or_else(|| Error::Parse(format!("`{src}` contains central symbols")))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn index(&mut self) -> Result<usize> {
        self.digits()?.parse().map_err(|_| self.error("index too large"))
    }

    fn sum(&mut self) -> Result<TracePoly> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
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

    fn starts_factor(&mut self) -> bool {
        matches!(
            self.peek(),
            Some(b'X' | b'c' | b't' | b'(' | b'[' | b'0'..=b'9')
        )
    }

    fn product(&mut self) -> Result<TracePoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') || self.starts_factor() {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<TracePoly> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e: u32 = self.digits()?.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TracePoly> {
        let f = self.field;
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                let i = self.index()?;
                if i == 0 {
                    return Err(self.error("generators are numbered from X1"));
                }
                Ok(TracePoly::generator(f, i - 1))
            }
            Some(b'c') => {
                self.pos += 1;
                let s = self.index()?;
                if s == 0 {
                    return Err(self.error("central symbols are numbered from c1"));
                }
                self.expect(b'(')?;
                let arg = self.sum()?;
                self.expect(b')')?;
                Ok(TracePoly::central(s, arg))
            }
            Some(b't') => {
                if !self.src[self.pos..].starts_with(b"tr") {
                    return Err(self.error("unknown symbol"));
                }
                self.pos += 2;
                self.expect(b'(')?;
                let arg = self.sum()?;
                self.expect(b')')?;
                Ok(TracePoly::trace(arg))
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'[') => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos] != b']' {
                    self.pos += 1;
                }
                self.expect(b']')?;
                let lit = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(TracePoly::constant(f, f.parse_elem(lit)?))
            }
            Some(b'0'..=b'9') => {
                let num = self.digits()?.to_string();
                let lit = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    format!("{num}/{}", self.digits()?)
                } else {
                    num
                };
                Ok(TracePoly::constant(f, f.parse_elem(&lit)?))
            }
            _ => Err(self.error("expected a generator, scalar, central symbol or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word::Word;

    #[test]
    fn parses_examples() {
        let f = Field::rationals();
        let t = parse_trace(&f, "c2(X1*X2) * X1 - 3*X2").unwrap();
        let expected = NcPoly::word(&f, Word::from_generators(&[1, 2]))
            .cs(2)
            .mul(&TracePoly::generator(&f, 0))
            .sub(&TracePoly::generator(&f, 1).scale(&f.from_i64(3)));
        assert_eq!(t, expected);
        let juxt = parse_nc(&f, "X1X2 - X2 X1").unwrap();
        assert_eq!(juxt, parse_nc(&f, "X1*X2 - X2*X1").unwrap());
        assert_eq!(parse_nc(&f, "X1^2 - 1").unwrap(), parse_nc(&f, "X1*X1 - 1").unwrap());
        assert_eq!(parse_nc(&f, "1/2*X1").unwrap().to_string(), "1/2*X1");
        assert_eq!(parse_trace(&f, "tr(X1)").unwrap(), parse_trace(&f, "c1(X1)").unwrap());
    }

    #[test]
    fn scalars_follow_the_field() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(parse_nc(&f7, "1/2").unwrap(), parse_nc(&f7, "4").unwrap());
        let gf4: Field = "F2^2:1,1,1".parse().unwrap();
        let p = parse_nc(&gf4, "[0,1]*X1").unwrap();
        assert_eq!(p.to_string(), "[0,1]*X1");
    }

    #[test]
    fn rejects_garbage() {
        let f = Field::rationals();
        assert!(parse_trace(&f, "X0").is_err());
        assert!(parse_trace(&f, "c2(X1").is_err());
        assert!(parse_trace(&f, "X1 +").is_err());
        assert!(parse_trace(&f, "Y1").is_err());
        assert!(parse_nc(&f, "c1(X1)").is_err());
    }
}
