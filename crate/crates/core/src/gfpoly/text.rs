use std::fmt;

use thiserror::Error;

use super::field::{add_mod, mul_mod, neg_mod};
use super::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("unexpected character {found:?} at byte {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at byte {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("exponent too large at byte {pos}")]
    ExponentOverflow { pos: usize },
    #[error("{0} is not a prime modulus below 256")]
    BadModulus(u8),
}

const MAX_EXPONENT: usize = 1 << 24;

struct Parser<'a> {
    bytes: Vec<(usize, u8)>,
    at: usize,
    src: &'a str,
    p: u8,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.at).map(|&(_, b)| b)
    }

    fn pos(&self) -> usize {
        self.bytes.get(self.at).map_or(self.src.len(), |&(i, _)| i)
    }

    fn unexpected(&self) -> ParseError {
        match self.bytes.get(self.at) {
            Some(&(pos, _)) => ParseError::Unexpected {
                pos,
                found: self.src[pos..].chars().next().unwrap_or('?'),
            },
            None => ParseError::UnexpectedEnd { pos: self.src.len() },
        }
    }

    fn digits_mod_p(&mut self) -> Option<u8> {
        let mut seen = false;
        let mut v = 0u8;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            v = add_mod(mul_mod(v, 10 % self.p, self.p), (b - b'0') % self.p, self.p);
            self.at += 1;
            seen = true;
        }
        seen.then_some(v)
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let start = self.pos();
        let mut seen = false;
        let mut v = 0usize;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            v = v * 10 + (b - b'0') as usize;
            if v > MAX_EXPONENT {
                return Err(ParseError::ExponentOverflow { pos: start });
            }
            self.at += 1;
            seen = true;
        }
        if seen {
            Ok(v)
        } else {
            Err(self.unexpected())
        }
    }

    fn power_of_t(&mut self) -> Result<usize, ParseError> {
        if self.peek() != Some(b'T') {
            return Err(self.unexpected());
        }
        self.at += 1;
        if self.peek() == Some(b'^') {
            self.at += 1;
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(u8, usize), ParseError> {
        match self.peek() {
            Some(b'T') => Ok((1, self.power_of_t()?)),
            Some(b'0'..=b'9') => {
                let c = self.digits_mod_p().unwrap_or(0);
                if self.peek() == Some(b'*') {
                    self.at += 1;
                    Ok((c, self.power_of_t()?))
                } else {
                    Ok((c, 0))
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

impl Poly {
    /// Parses `term (('+'|'-') term)*` where a term is `coeff ['*' T ['^' n]]` or `T ['^' n]`.
    /// A leading sign is accepted and whitespace is ignored.
    pub fn parse(text: &str, p: u8) -> Result<Poly, ParseError> {
        if Poly::check_modulus(p).is_err() {
            return Err(ParseError::BadModulus(p));
        }
        let bytes: Vec<(usize, u8)> = text
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        if bytes.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut parser = Parser { bytes, at: 0, src: text, p };
        let mut coeffs: Vec<u8> = Vec::new();
        let mut negate = false;
        match parser.peek() {
            Some(b'-') => {
                negate = true;
                parser.at += 1;
            }
            Some(b'+') => parser.at += 1,
            _ => {}
        }
        loop {
            let (mut c, e) = parser.term()?;
            if negate {
                c = neg_mod(c, p);
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = add_mod(coeffs[e], c, p);
            match parser.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return Err(parser.unexpected()),
            }
            parser.at += 1;
        }
        Ok(Poly::from_raw(p, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, c) => write!(f, "{c}*T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (e, c) => write!(f, "{c}*T^{e}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let f = Poly::parse("2*T^4 + T", 3).unwrap();
        assert_eq!(f, Poly::from_coeffs(3, &[0, 1, 0, 0, 2]));
        assert_eq!(f.to_string(), "2*T^4+T");
        assert_eq!(Poly::parse("-T^3", 3).unwrap().to_string(), "2*T^3");
        assert_eq!(Poly::parse("T^2 - 1", 3).unwrap().to_string(), "T^2+2");
        assert_eq!(Poly::parse("10*T", 3).unwrap().to_string(), "T");
        assert_eq!(Poly::parse("3", 3).unwrap(), Poly::zero(3));
        assert_eq!(Poly::parse("T+T+T", 3).unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_bad_text() {
        assert!(matches!(Poly::parse("2*X", 3), Err(ParseError::Unexpected { pos: 2, .. })));
        assert!(matches!(Poly::parse("T^", 3), Err(ParseError::UnexpectedEnd { .. })));
        assert_eq!(Poly::parse("  ", 3), Err(ParseError::Empty));
        assert!(matches!(Poly::parse("T++1", 3), Err(ParseError::Unexpected { pos: 2, .. })));
        assert_eq!(Poly::parse("T", 4), Err(ParseError::BadModulus(4)));
    }
}
