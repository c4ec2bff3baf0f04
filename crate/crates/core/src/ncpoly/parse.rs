//! Text grammar for arity-1 expressions:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff* factor*            (at least one atom; '*' between atoms optional)
//! coeff  := '(' gauss ')' | rational ['i'] | 'i' | 's' ['^' int]
//! factor := gen ['^' int]
//! gauss  := ['+'|'-'] rational ['i'] (('+'|'-') rational ['i'])*
//! ```
//!
//! Generator names are the presentation's names; `gi` means `g^-1` for an
//! invertible `g`. `q` is not a token: write `s^8`. Identifiers are maximal
//! runs of letters, so adjacent generators need a space or `*`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expr::{Letter, Monomial, NCExpr};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalar::{GaussRational, Scalar};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: &'a Presentation,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
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

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn int(&mut self) -> Result<i32> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let at = self.pos;
        let v = self.digits()?;
        let v: i64 = v.try_into().map_err(|_| syntax(at, "exponent out of range"))?;
        let v = if neg { -v } else { v };
        i32::try_from(v).map_err(|_| syntax(at, "exponent out of range"))
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters");
        (start, s)
    }

    /// Optional trailing `i` directly after a number.
    fn imaginary_suffix(&mut self) -> bool {
        if self.src.get(self.pos) == Some(&b'i')
            && !self
                .src
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn gauss(&mut self) -> Result<GaussRational> {
        let mut acc = GaussRational::zero();
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') || first {
                1
            } else {
                break;
            };
            first = false;
            let (r, imag) = if self.peek() == Some(b'i') {
                self.pos += 1;
                (BigRational::one(), true)
            } else {
                let r = self.rational()?;
                (r, self.imaginary_suffix())
            };
            let r = if sign < 0 { -r } else { r };
            acc = if imag {
                acc + Complex::new(BigRational::zero(), r)
            } else {
                acc + Complex::new(r, BigRational::zero())
            };
            if matches!(self.peek(), Some(b')') | None) {
                break;
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i32> {
        if self.eat(b'^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<NCExpr> {
        let start = self.pos;
        let mut coeff = Scalar::one();
        let mut letters: Vec<Letter> = Vec::new();
        let mut atoms = 0usize;
        loop {
            if atoms > 0 {
                self.eat(b'*');
            }
            let at = {
                self.skip_ws();
                self.pos
            };
            match self.peek() {
                Some(b'(') => {
                    if !letters.is_empty() {
                        return Err(syntax(at, "coefficient after a generator"));
                    }
                    self.pos += 1;
                    let g = self.gauss()?;
                    if !self.eat(b')') {
                        return Err(syntax(self.pos, "expected `)`"));
                    }
                    coeff = &coeff * &Scalar::from_gauss(g);
                }
                Some(c) if c.is_ascii_digit() => {
                    if !letters.is_empty() {
                        return Err(syntax(at, "coefficient after a generator"));
                    }
                    let r = self.rational()?;
                    let g = if self.imaginary_suffix() {
                        Complex::new(BigRational::zero(), r)
                    } else {
                        Complex::new(r, BigRational::zero())
                    };
                    coeff = &coeff * &Scalar::from_gauss(g);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (id_at, name) = self.ident();
                    match name {
                        "i" | "s" if !letters.is_empty() => {
                            return Err(syntax(id_at, "coefficient after a generator"));
                        }
                        "i" => coeff = &coeff * &Scalar::i(),
                        "s" => {
                            let k = self.exponent()?;
                            coeff = &coeff * &Scalar::s_pow(k);
                        }
                        _ => {
                            let (g, sign) = self.p.resolve(name).ok_or_else(|| {
                                if name == "q" {
                                    syntax(id_at, "`q` is not a token; write s^8")
                                } else {
                                    Error::UnknownGenerator(name.to_string())
                                }
                            })?;
                            let e = self.exponent()?;
                            letters.push(Letter::new(g, sign * e));
                        }
                    }
                }
                _ => {
                    if atoms == 0 {
                        return Err(syntax(at, "expected a term"));
                    }
                    break;
                }
            }
            atoms += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-') | None) {
                break;
            }
        }
        if atoms == 0 {
            return Err(syntax(start, "empty term"));
        }
        letters.retain(|l| l.exp != 0);
        Ok(NCExpr::term(coeff, vec![Monomial(letters)]))
    }

    fn expr(&mut self) -> Result<NCExpr> {
        let mut acc = NCExpr::zero(1);
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if let Some(c) = self.peek() {
            return Err(syntax(self.pos, format!("unexpected `{}`", c as char)));
        }
        Ok(acc)
    }
}

/// Parse an arity-1 expression over the generators of `p`. The result is
/// not normal-ordered.
pub fn parse_expr(text: &str, p: &Presentation) -> Result<NCExpr> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(syntax(pos, "non-ASCII character"));
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        p,
    };
    if parser.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    parser.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::{qtriag_presentation, A, AS, B, BS};
    use crate::scalar::gauss;

    fn word(pairs: &[(usize, i32)]) -> NCExpr {
        NCExpr::monomial(Monomial::from_pairs(pairs))
    }

    #[test]
    fn star_separated_factors() {
        let p = qtriag_presentation();
        assert_eq!(parse_expr("a*b", &p).unwrap(), word(&[(A, 1), (B, 1)]));
        assert_eq!(parse_expr("a b", &p).unwrap(), word(&[(A, 1), (B, 1)]));
    }

    #[test]
    fn coefficient_and_powers() {
        let p = qtriag_presentation();
        assert_eq!(parse_expr("(1/1)*as^2 bs", &p).unwrap(), word(&[(AS, 2), (BS, 1)]));
        let e = parse_expr("(3/2+1/2i)*s^-4 ai", &p).unwrap();
        let expected = word(&[(A, -1)]).scale(&Scalar::monomial(gauss((3, 2), (1, 2)), -4));
        assert_eq!(e, expected);
    }

    #[test]
    fn q_is_spelled_with_s() {
        let p = qtriag_presentation();
        assert_eq!(parse_expr("s^8", &p).unwrap(), NCExpr::scalar(Scalar::q(), 1));
        let err = parse_expr("q*a", &p).unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 0, .. }));
    }

    #[test]
    fn sums_and_differences() {
        let p = qtriag_presentation();
        let e = parse_expr("a bs - s^8 bs a", &p).unwrap();
        let expected = word(&[(A, 1), (BS, 1)]).sub(&word(&[(BS, 1), (A, 1)]).scale(&Scalar::q()));
        assert_eq!(e, expected);
        assert_eq!(parse_expr("-2i", &p).unwrap(), NCExpr::scalar(&Scalar::from_int(-2) * &Scalar::i(), 1));
    }

    #[test]
    fn errors_carry_positions() {
        let p = qtriag_presentation();
        assert_eq!(parse_expr("ab", &p).unwrap_err(), Error::UnknownGenerator("ab".into()));
        assert!(matches!(
            parse_expr("a + ", &p).unwrap_err(),
            Error::Syntax { pos: 4, .. }
        ));
        assert!(matches!(
            parse_expr("a (2)", &p).unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(parse_expr("(1/0)", &p).unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(parse_expr("bi", &p).unwrap_err(), Error::UnknownGenerator(_)));
    }

    #[test]
    fn printed_form_reparses() {
        let p = qtriag_presentation();
        let e = parse_expr("(3/2-1/2i)*s^-4*a^2*bs + 7 - i*s^3 as ai", &p).unwrap();
        let printed = e.display(&p).to_string();
        assert_eq!(parse_expr(&printed, &p).unwrap(), e);
    }
}
