//! Polynomial text syntax: integer literals, variable names, `+ - * ^` and
//! parentheses. Whitespace is ignored and multiplication is always explicit.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, Ring};
use crate::arith::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(Error::Parse {
                    line,
                    column: col0 + i,
                    message: "implicit multiplication is not allowed; write `*`".into(),
                });
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Lexed {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<Ring<F>>,
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<F: Field> Parser<'_, F> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let column = self.toks.get(self.pos).map_or(self.end_col, |t| t.col);
        Err(Error::Parse {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        if let Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) = self.peek() {
            return self.err("implicit multiplication is not allowed; write `*`");
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("exponent must be a nonnegative integer literal"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v)))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Polynomial::var(self.ring, i)
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` in `ring`; errors report line 1 and 1-based columns.
pub fn parse_polynomial<F: Field>(ring: &Arc<Ring<F>>, text: &str) -> Result<Polynomial<F>> {
    parse_polynomial_at(ring, text, 1, 1)
}

/// As [`parse_polynomial`] with the text located at `line`, starting at
/// column `column`, for error messages.
pub fn parse_polynomial_at<F: Field>(
    ring: &Arc<Ring<F>>,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Polynomial<F>> {
    let toks = lex(text, line, column)?;
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        line,
        end_col: column + text.chars().count(),
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::poly::MonomialOrder;

    #[test]
    fn precedence_and_parentheses() {
        let r = Ring::new(Rationals, ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        let a = parse_polynomial(&r, "-x1^2 + 2*(x1 - x2)*x2").unwrap();
        let b = parse_polynomial(&r, "2*x1*x2 - x1^2 - 2*x2^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial(&r, "(x1+1)^2").unwrap(), parse_polynomial(&r, "x1^2+2*x1+1").unwrap());
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let r = Ring::new(PrimeField::new(7).unwrap(), ["x"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(parse_polynomial(&r, "8*x - 14").unwrap(), parse_polynomial(&r, "x").unwrap());
    }

    #[test]
    fn implicit_multiplication_is_an_error() {
        let r = Ring::new(Rationals, ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        match parse_polynomial(&r, "2x1^3") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&r, "x1 x2").is_err());
        assert!(parse_polynomial(&r, "(x1)(x2)").is_err());
    }

    #[test]
    fn malformed_inputs() {
        let r = Ring::new(Rationals, ["x1"], MonomialOrder::DegRevLex).unwrap();
        for bad in ["", "x1 +", "y", "x1^x1", "(x1", "x1)", "x1 % 2", "x1^-1"] {
            assert!(matches!(parse_polynomial(&r, bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}
