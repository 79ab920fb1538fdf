//! Parser for element expressions over the tower: integer or rational
//! coefficients in the symbols `zp` (zeta_p), `zr` (zeta_r) and `d` (the
//! period delta), with `+ - * / ^` and parentheses.

use num_bigint::BigInt;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::poly::BigRat;
use crate::tower::Tower;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(s.parse().unwrap()));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Sym(s));
            }
            _ => return Err(Error::Parse(format!("unexpected character '{ch}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    tower: &'a Tower,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Token::Slash) => {
                    self.next();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum> {
        match self.peek() {
            Some(Token::Minus) => {
                self.next();
                Ok(self.factor()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycNum> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            let neg = if self.peek() == Some(&Token::Minus) {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Int(n)) => {
                    let n: i64 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    base.pow(if neg { -n } else { n })
                }
                _ => Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<CycNum> {
        match self.next() {
            Some(Token::Int(n)) => Ok(CycNum::from_rat(
                self.tower.m,
                BigRat::from_integer(n),
            )),
            Some(Token::Sym(s)) => match s.as_str() {
                "zp" => Ok(self.tower.zeta_p()),
                "zr" => Ok(self.tower.zeta_r()),
                "d" => Ok(self.tower.delta.clone()),
                other => Err(Error::Parse(format!("unknown symbol '{other}'"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse an element expression in the context of a tower.
pub fn parse_element(t: &Tower, input: &str) -> Result<CycNum> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        tower: t,
    };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;

    #[test]
    fn parses_reference_elements() {
        let t = build_tower(3, 7, None, None).unwrap();
        let x = parse_element(&t, "d + zp").unwrap();
        assert_eq!(x, t.delta.add(&t.zeta_p()).unwrap());
        let theta = parse_element(&t, "3*d^2 + 3*d + 3*zp*d + zp - 4").unwrap();
        assert_eq!(theta, crate::builder::default_theta_3_7(&t).unwrap());
    }

    #[test]
    fn precedence_and_parens() {
        let t = build_tower(3, 7, None, None).unwrap();
        let a = parse_element(&t, "2 + 3 * 4").unwrap();
        assert_eq!(a, CycNum::from_int(t.m, 14));
        let b = parse_element(&t, "(2 + 3) * 4").unwrap();
        assert_eq!(b, CycNum::from_int(t.m, 20));
        let c = parse_element(&t, "-d^2").unwrap();
        assert_eq!(c, t.delta.pow(2).unwrap().neg());
        let d = parse_element(&t, "zp^-1").unwrap();
        assert_eq!(d, t.zeta_p().inv().unwrap());
    }

    #[test]
    fn parse_errors() {
        let t = build_tower(3, 7, None, None).unwrap();
        assert!(parse_element(&t, "q + 1").is_err());
        assert!(parse_element(&t, "(d + 1").is_err());
        assert!(parse_element(&t, "d + ").is_err());
        assert!(parse_element(&t, "").is_err());
    }
}
