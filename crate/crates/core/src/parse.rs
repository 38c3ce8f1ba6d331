//! Text grammar for germs:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ['/' integer] | 'x' index | '(' expr ')'
//! ```
//!
//! Variables are `x1 … xN`. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial};

/// Parses `text` as a polynomial in `nvars` variables. With `nvars = None`
/// the variable count is the largest index used (at least 1).
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let max_index = tokens
        .iter()
        .filter_map(|t| match t.kind {
            Tok::Var(i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let nvars = match nvars {
        Some(n) => {
            if let Some(t) = tokens.iter().find(|t| matches!(t.kind, Tok::Var(i) if i > n)) {
                return Err(Error::Parse {
                    position: t.pos,
                    message: format!("variable index exceeds {n} variables"),
                });
            }
            n
        }
        None => max_index,
    };
    let mut parser = Parser {
        tokens: &tokens,
        at: 0,
        nvars,
        end: text.len(),
    };
    let p = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(Error::Parse {
            position: t.pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Token {
    kind: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(kind) = simple {
            out.push(Token { kind, pos });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Token { kind: Tok::Int(n), pos });
        } else if c == b'x' {
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let index: usize = text[start..i].parse().map_err(|_| Error::Parse {
                position: pos,
                message: "expected variable index after 'x'".into(),
            })?;
            if index == 0 {
                return Err(Error::Parse {
                    position: pos,
                    message: "variables are numbered from x1".into(),
                });
            }
            out.push(Token {
                kind: Tok::Var(index),
                pos,
            });
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Parse {
                position: pos,
                message: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    nvars: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, kind: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.integer()?;
            let e: u32 = e.try_into().or_else(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().map(|t| &t.kind) {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.error("expected integer"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let Some(tok) = self.peek() else {
            return self.error("unexpected end of input");
        };
        match &tok.kind {
            Tok::Int(_) => {
                let num = self.integer()?;
                if self.eat(&Tok::Slash) {
                    let at = self.pos();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    return Ok(Polynomial::constant(self.nvars, Coeff::new(num, den)));
                }
                Ok(Polynomial::constant(self.nvars, Coeff::from_integer(num)))
            }
            Tok::Var(i) => {
                let i = *i;
                self.at += 1;
                Polynomial::variable(self.nvars, i - 1)
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            _ => self.error("expected number, variable or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_loop_germ() {
        let f = parse_polynomial("x1^2*x2 + x2^2*x3 + x3^3*x1", None).unwrap();
        let g = Polynomial::from_int_terms(&[([2, 1, 0], 1), ([0, 2, 1], 1), ([1, 0, 3], 1)]);
        assert_eq!(f, g);
        let spaced = parse_polynomial("  x1 ^ 2 * x2+x2^2*x3 +x3^3* x1 ", None).unwrap();
        assert_eq!(spaced, g);
    }

    #[test]
    fn rationals_signs_and_parens() {
        let f = parse_polynomial("-3/2*x1^2 + (x1 - x2)^2 - 1", Some(2)).unwrap();
        let half = Coeff::new(1.into(), 2.into());
        let expected = Polynomial::from_int_terms(&[([0, 2], 1), ([1, 1], -2), ([0, 0], -1)])
            .add(&Polynomial::monomial(crate::poly::ExponentVector::new(vec![2, 0]), -half))
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn explicit_variable_count() {
        let f = parse_polynomial("x1^5", Some(2)).unwrap();
        assert_eq!(f.nvars(), 2);
        let err = parse_polynomial("x1 + x3", Some(2)).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                position: 5,
                message: "variable index exceeds 2 variables".into()
            }
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x1 + * x2", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x1 + y", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x0", None), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_polynomial("(x1", None), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_polynomial("1/0", None), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_polynomial("x1 x2", None), Err(Error::Parse { position: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        let f = parse_polynomial("x1^5 - 1/3*x1*x2^2 + 7", None).unwrap();
        assert_eq!(parse_polynomial(&f.to_string(), Some(2)).unwrap(), f);
    }
}
