//! Recursive-descent parser for coefficient expressions: integer literals,
//! one named variable, + − * / ^ and parentheses. Produces canonical
//! rational functions; rational literals like 3/4 fall out of division.

use crate::field::Rat;
use crate::ratfunc::{QPoly, RatFunc};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected token at position {pos}, expected {expected}")]
    Unexpected { pos: usize, expected: &'static str },
    #[error("unexpected end of input, expected {expected}")]
    Eof { expected: &'static str },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("exponent at position {pos} does not fit in u32")]
    ExponentTooLarge { pos: usize },
    #[error("expression is not a polynomial in '{var}'")]
    NotPolynomial { var: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let lit: String = chars[i..j].iter().collect();
                out.push((Tok::Num(lit.parse().unwrap()), pos));
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push((Tok::Ident(chars[i..j].iter().collect()), pos));
                i = j;
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' | '−' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            ch => return Err(ParseError::UnexpectedChar { ch, pos }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    var: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        while let Some((tok, pos)) = self.peek() {
            let pos = *pos;
            match tok {
                Tok::Star => {
                    self.next();
                    acc = acc * self.factor()?;
                }
                Tok::Slash => {
                    self.next();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(ParseError::DivisionByZero { pos });
                    }
                    acc = acc / rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.next();
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.next();
            match self.next() {
                Some((Tok::Num(n), pos)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError::ExponentTooLarge { pos })?;
                    Ok(RatFunc::new(base.num().pow(e), base.den().pow(e)))
                }
                Some((_, pos)) => Err(ParseError::Unexpected {
                    pos,
                    expected: "integer exponent",
                }),
                None => Err(ParseError::Eof {
                    expected: "integer exponent",
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.next() {
            Some((Tok::Num(n), _)) => Ok(RatFunc::constant(Rat::from_integer(n))),
            Some((Tok::Ident(name), pos)) => {
                if name == self.var {
                    Ok(RatFunc::var())
                } else {
                    Err(ParseError::UnknownVariable { name, pos })
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((_, pos)) => Err(ParseError::Unexpected {
                        pos,
                        expected: "')'",
                    }),
                    None => Err(ParseError::Eof { expected: "')'" }),
                }
            }
            Some((_, pos)) => Err(ParseError::Unexpected {
                pos,
                expected: "number, variable or '('",
            }),
            None => Err(ParseError::Eof {
                expected: "number, variable or '('",
            }),
        }
    }
}

/// Parse an expression to a canonical rational function in `var`.
pub fn parse_ratfunc(expr: &str, var: &str) -> Result<RatFunc, ParseError> {
    let toks = tokenize(expr)?;
    let mut p = Parser { toks, pos: 0, var };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        Some((_, pos)) => Err(ParseError::Unexpected {
            pos: *pos,
            expected: "operator or end of input",
        }),
    }
}

/// Parse an expression that must reduce to a polynomial in `var`.
pub fn parse_poly(expr: &str, var: &str) -> Result<QPoly, ParseError> {
    let f = parse_ratfunc(expr, var)?;
    f.as_poly().cloned().ok_or(ParseError::NotPolynomial {
        var: var.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    #[test]
    fn polynomial_round_trip() {
        let f = parse_poly("t^2 - 2*t + 1", "t").unwrap();
        assert_eq!(f, QPoly::from_ints(&[1, -2, 1]));
        assert_eq!(parse_poly(&f.to_string(), "t").unwrap(), f);
    }

    #[test]
    fn rational_literals_and_precedence() {
        let f = parse_ratfunc("3/4 + 2*t^3", "t").unwrap();
        let g = f.as_poly().unwrap();
        assert_eq!(g.coeff(0), rat(3, 4));
        assert_eq!(g.coeff(3), rat_int(2));
        // unary minus under power: -t^2 is -(t^2)
        let h = parse_poly("-t^2", "t").unwrap();
        assert_eq!(h, QPoly::from_ints(&[0, 0, -1]));
    }

    #[test]
    fn rational_function_and_not_polynomial() {
        let f = parse_ratfunc("(t^2 - 1)/(t - 1)", "t").unwrap();
        assert_eq!(f.as_poly().unwrap(), &QPoly::from_ints(&[1, 1]));
        let g = parse_poly("1/t", "t");
        assert!(matches!(g, Err(ParseError::NotPolynomial { .. })));
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_poly("t + $", "t"),
            Err(ParseError::UnexpectedChar { ch: '$', pos: 4 })
        );
        assert_eq!(
            parse_poly("t + ", "t"),
            Err(ParseError::Eof {
                expected: "number, variable or '('"
            })
        );
        assert!(matches!(
            parse_poly("x + 1", "t"),
            Err(ParseError::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_ratfunc("1/(t - t)", "t"),
            Err(ParseError::DivisionByZero { pos: 1 })
        ));
    }
}
