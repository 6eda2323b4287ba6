//! Plain-text polynomial format: `c * u_{i,j}^e * ...` terms joined by `+`
//! (or `-`), coefficients as decimals or `p/q`. Printing then parsing is the
//! identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::multipoly::{MultiPoly, PolyRing};
use crate::scalar::Scalar;

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.ring().vars();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let has_vars = e.iter().any(|&k| k > 0);
            if !abs.is_one() || !has_vars {
                factors.push(abs.to_string());
            }
            for (name, &k) in vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join(" * "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Slash,
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
            }
            a if a.is_alphabetic() => {
                let start = i;
                let mut depth = 0;
                while i < chars.len() {
                    let ch = chars[i];
                    let ok = match ch {
                        '{' => {
                            depth += 1;
                            true
                        }
                        '}' if depth > 0 => {
                            depth -= 1;
                            true
                        }
                        ',' => depth > 0,
                        ch => ch.is_alphanumeric() || ch == '_',
                    };
                    if !ok {
                        break;
                    }
                    i += 1;
                }
                if depth != 0 {
                    return Err(AlgebraError::Parse(format!("unbalanced braces at offset {start}")));
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(AlgebraError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn number(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Num(n)) => Ok(n),
            other => Err(AlgebraError::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    fn term(&mut self, negative: bool) -> Result<MultiPoly> {
        let domain = self.ring.domain();
        let mut coeff = Scalar::from_i64(if negative { -1 } else { 1 }, domain);
        let mut exps = vec![0u32; self.ring.nvars()];
        loop {
            match self.next() {
                Some(Token::Num(n)) => {
                    let text = if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        format!("{n}/{}", self.number()?)
                    } else {
                        n
                    };
                    coeff = coeff.try_mul(&Scalar::parse(&text, domain)?)?;
                }
                Some(Token::Ident(name)) => {
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name:?}")))?;
                    let k = if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        self.number()?
                            .parse::<u32>()
                            .map_err(|_| AlgebraError::Parse("exponent out of range".into()))?
                    } else {
                        1
                    };
                    exps[idx] += k;
                }
                other => return Err(AlgebraError::Parse(format!("expected a factor, found {other:?}"))),
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        MultiPoly::from_terms(self.ring, [(exps, coeff)])
    }
}

impl MultiPoly {
    /// Parses the text format over the given ring.
    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<MultiPoly> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        let mut p = Parser { tokens, pos: 0, ring };
        let mut acc = MultiPoly::zero(ring);
        let mut negative = false;
        if p.peek() == Some(&Token::Minus) {
            p.pos += 1;
            negative = true;
        }
        loop {
            acc = acc.try_add(&p.term(negative)?)?;
            match p.next() {
                None => break,
                Some(Token::Plus) => negative = false,
                Some(Token::Minus) => negative = true,
                Some(t) => return Err(AlgebraError::Parse(format!("unexpected token {t:?}"))),
            }
            // allow "a + -b"
            if p.peek() == Some(&Token::Minus) {
                p.pos += 1;
                negative = !negative;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    #[test]
    fn print_and_parse() {
        let r = PolyRing::unweighted(&["x", "w"], Domain::Rational);
        let p = MultiPoly::parse("3/2 * x^2 * w - w^3 + 7", &r).unwrap();
        assert_eq!(p.to_string(), "3/2 * x^2 * w - w^3 + 7");
        assert_eq!(MultiPoly::parse(&p.to_string(), &r).unwrap(), p);
        assert_eq!(MultiPoly::parse("x + -1 * x", &r).unwrap().to_string(), "0");
        assert_eq!(MultiPoly::parse("-x*w", &r).unwrap().to_string(), "-x * w");
    }

    #[test]
    fn braced_variable_names() {
        let r = PolyRing::new(
            vec!["u_{8,0}".into(), "u_{12,0}".into()],
            vec![4, 6],
            Domain::Integer,
        )
        .unwrap();
        let p = MultiPoly::parse("2 * u_{8,0}^3 + -5 * u_{12,0}^2", &r).unwrap();
        assert_eq!(p.to_string(), "2 * u_{8,0}^3 - 5 * u_{12,0}^2");
        assert_eq!(p.weighted_degree().unwrap().degree, 12);
    }

    #[test]
    fn parse_errors() {
        let r = PolyRing::unweighted(&["x"], Domain::Integer);
        assert!(MultiPoly::parse("", &r).is_err());
        assert!(MultiPoly::parse("y", &r).is_err());
        assert!(MultiPoly::parse("1/2 * x", &r).is_err());
        assert!(MultiPoly::parse("x +", &r).is_err());
        assert!(MultiPoly::parse("x $ 2", &r).is_err());
        assert!(MultiPoly::parse("x^", &r).is_err());
    }
}
