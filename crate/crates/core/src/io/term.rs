//! Text syntax for operated Lie polynomials.
//!
//! ```text
//! poly     := "0" | [sign] term { sign term }
//! term     := [rational "*"] element
//! element  := ident | "R(" element ")" | "[" element "," element "]"
//! rational := int [ "/" posint ]
//! ```
//!
//! Elements are normalized to the basis as they are read, so `[y,x]` parses
//! to `-[x,y]` when `x > y`. Printing writes monomials in descending order
//! with each basis word fully bracketed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lie::{LiePoly, Scalar};
use crate::words::{is_identifier, Alphabet, Letter, RlsWord};

const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
}

pub fn parse_term(alphabet: &Alphabet, text: &str) -> Result<LiePoly, ParseError> {
    let mut p = Parser {
        alphabet,
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    p.poly()
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{}`", c as char))
        }
    }

    fn poly(&mut self) -> Result<LiePoly, ParseError> {
        if self.peek().is_none() {
            return self.error("empty input");
        }
        let mut out = LiePoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    Scalar::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Scalar::one()
                }
                None if !first => break,
                _ if first => Scalar::one(),
                _ => return self.error("expected `+` or `-`"),
            };
            let start = self.pos;
            let (c, e) = self.term()?;
            match e {
                Some(e) => out.add_scaled(&(sign * c), &e),
                None if first && c.is_zero() && sign.is_one() && self.peek().is_none() => {
                    return Ok(LiePoly::zero());
                }
                None => {
                    self.pos = start;
                    return self.error("expected `*` after coefficient");
                }
            }
            first = false;
        }
        Ok(out)
    }

    /// A coefficient and the element it multiplies; a bare number yields no
    /// element.
    fn term(&mut self) -> Result<(Scalar, Option<LiePoly>), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok((c, Some(self.element()?)))
                } else {
                    Ok((c, None))
                }
            }
            _ => Ok((Scalar::one(), Some(self.element()?))),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("nonempty ascii digits"))
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let numer = self.digits()?;
        if self.peek() != Some(b'/') {
            return Ok(Scalar::from_integer(numer));
        }
        self.pos += 1;
        let at = self.pos;
        let denom = self.digits()?;
        if denom.is_zero() {
            self.pos = at;
            return self.error("zero denominator");
        }
        Ok(Scalar::new(numer, denom))
    }

    fn ident(&mut self) -> Result<(&'a str, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let src: &'a [u8] = self.src;
        let s = std::str::from_utf8(&src[start..self.pos]).expect("ascii identifier");
        if !is_identifier(s) {
            self.pos = start;
            return self.error("expected a generator, `R(` or `[`");
        }
        Ok((s, start))
    }

    fn element(&mut self) -> Result<LiePoly, ParseError> {
        if self.depth >= MAX_NESTING {
            return self.error("nesting too deep");
        }
        self.depth += 1;
        let e = self.element_inner();
        self.depth -= 1;
        e
    }

    fn element_inner(&mut self) -> Result<LiePoly, ParseError> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let l = self.element()?;
            self.expect(b',')?;
            let r = self.element()?;
            self.expect(b']')?;
            return Ok(l.bracket(&r));
        }
        let (name, start) = self.ident()?;
        if name == "R" {
            self.expect(b'(')?;
            let inner = self.element()?;
            self.expect(b')')?;
            return Ok(inner.apply_operator());
        }
        match self.alphabet.rank(name) {
            Some(rank) => Ok(LiePoly::generator(rank)),
            None => Err(ParseError::UnknownGenerator {
                name: name.to_string(),
                pos: start,
            }),
        }
    }
}

/// The standard bracketing of `w`, e.g. `[x,[x,y]]` or `R([x,y])`.
pub fn print_word(alphabet: &Alphabet, w: &RlsWord) -> String {
    let mut out = String::new();
    write_word(alphabet, w, &mut out);
    out
}

fn write_word(alphabet: &Alphabet, w: &RlsWord, out: &mut String) {
    match (w.factors(), w.as_letter()) {
        (Some((l, r)), _) => {
            out.push('[');
            write_word(alphabet, l, out);
            out.push(',');
            write_word(alphabet, r, out);
            out.push(']');
        }
        (None, Some(Letter::Gen(g))) => out.push_str(alphabet.name(*g)),
        (None, Some(Letter::Op(arg))) => {
            out.push_str("R(");
            write_word(alphabet, arg, out);
            out.push(')');
        }
        (None, None) => unreachable!("words are letters or have factors"),
    }
}

pub fn format_rational(c: &Scalar) -> String {
    c.to_string()
}

pub fn print_term(alphabet: &Alphabet, p: &LiePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.terms().rev().enumerate() {
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let abs = c.abs();
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        write_word(alphabet, w, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::scalar;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn parse(s: &str) -> Result<LiePoly, ParseError> {
        parse_term(&xy(), s)
    }

    fn g(i: u32) -> LiePoly {
        LiePoly::generator(i)
    }

    #[test]
    fn parses_examples() {
        let b = g(0).bracket(&g(1));
        assert_eq!(parse("[x,y]").unwrap(), b);
        assert_eq!(parse("[y,x]").unwrap(), -b.clone());
        let want = b.apply_operator() - g(0).scale(&(scalar(1) / scalar(2)));
        assert_eq!(parse("R([x,y]) - 1/2*x").unwrap(), want);
        assert_eq!(parse(" R( [ x , y ] )-1/2 * x ").unwrap(), want);
        assert_eq!(parse("0").unwrap(), LiePoly::zero());
        assert_eq!(parse("x - x").unwrap(), LiePoly::zero());
        assert_eq!(parse("-2*y + 4/2*y").unwrap(), LiePoly::zero());
        assert_eq!(parse("[x,x]").unwrap(), LiePoly::zero());
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse("[x,z]"),
            Err(ParseError::UnknownGenerator { name: "z".into(), pos: 3 })
        );
        assert!(matches!(parse("[x,y"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x + "), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("2"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("1/0*x"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("R x"), Err(ParseError::Syntax { pos: 2, .. })));
        let deep = "R(".repeat(1000) + "x" + &")".repeat(1000);
        assert!(parse(&deep).is_err());
    }

    #[test]
    fn prints_examples() {
        let a = xy();
        assert_eq!(print_term(&a, &LiePoly::zero()), "0");
        let xxy = g(0).bracket(&g(0).bracket(&g(1)));
        assert_eq!(print_term(&a, &xxy), "[x,[x,y]]");
        let p = g(0).bracket(&g(1)).apply_operator() - g(0).scale(&(scalar(1) / scalar(2)));
        assert_eq!(print_term(&a, &p), "R([x,y]) - 1/2*x");
        assert_eq!(print_term(&a, &-g(1)), "-y");
        assert_eq!(print_term(&a, &(g(1).scale(&scalar(3)) + g(0))), "x + 3*y");
    }
}
