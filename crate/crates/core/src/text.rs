//! Parsing of polynomial text.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Parses `src` as a polynomial in `ring`. Columns in errors are 1-based.
pub fn parse_polynomial(ring: &RingRef, src: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(1, "empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(
            p.pos + 1,
            format!("unexpected `{}`", p.src[p.pos] as char),
        ));
    }
    Ok(f)
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
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

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
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
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let col = self.pos + 1;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::parse(col, "expected exponent"));
            }
            let k: u32 = digits
                .parse()
                .map_err(|_| Error::parse(col, "exponent too large"))?;
            if let Some(m) = base.leading_monomial().filter(|_| base.is_monomial()) {
                // fast path keeps huge monomial powers cheap
                let m = m
                    .try_scale(k as u64)
                    .map_err(|_| Error::parse(col, "exponent too large"))?;
                let c = base.ring().field().pow(base.leading_coeff(), k as u64);
                return Ok(Polynomial::monomial(self.ring, m, c));
            }
            return Ok(base.pow(k as u64));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = {
            self.skip_ws();
            self.pos + 1
        };
        match self.peek() {
            None => Err(Error::parse(col, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos + 1, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let p = self.ring.characteristic();
                let value = digits
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::parse(col, format!("unknown variable `{name}`"))),
                }
            }
            Some(c) => Err(Error::parse(col, format!("unexpected `{}`", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};

    fn r() -> RingRef {
        Ring::new(3, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn canonical_round_trip() {
        let ring = r();
        let f = parse_polynomial(&ring, " 2*z + x^3 * y ").unwrap();
        assert_eq!(f.to_string(), "x^3*y+2*z");
        assert_eq!(parse_polynomial(&ring, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn signs_and_parentheses() {
        let ring = r();
        let f = parse_polynomial(&ring, "-(x-y)^2").unwrap();
        assert_eq!(f.to_string(), "2*x^2+2*x*y+2*y^2");
        assert!(parse_polynomial(&ring, "x - x").unwrap().is_zero());
        assert_eq!(parse_polynomial(&ring, "10").unwrap().to_string(), "1");
    }

    #[test]
    fn errors_carry_columns() {
        let ring = r();
        match parse_polynomial(&ring, "x + w") {
            Err(Error::Parse { col, msg, .. }) => {
                assert_eq!(col, 5);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_polynomial(&ring, "x^"),
            Err(Error::Parse { col: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial(&ring, "(x"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_polynomial(&ring, "").is_err());
    }
}
