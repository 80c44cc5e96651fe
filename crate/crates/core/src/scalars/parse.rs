//! Scalar expression syntax: integers, the symbols `t`, `u`, `w`, the
//! operators `+ - * / ^`, parentheses and implicit multiplication (`2t`).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::Field;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Int(BigInt),
    Sym(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if c.is_ascii_alphabetic() {
            out.push(Token::Sym(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::parse(format!("{what} at token {} in {:?}", self.pos, self.text))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(
                self.peek(),
                Some(Token::Int(_)) | Some(Token::Sym(_)) | Some(Token::Op('('))
            ) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(self.error("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Sym(c)) => {
                self.pos += 1;
                Ok(Expr::Sym(c))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected a number, symbol or '('")),
        }
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::parse("empty scalar"));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        text,
    };
    let e = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(e)
}

/// Evaluates an expression in a field, resolving integer literals and
/// symbols through the given callbacks.
pub(crate) fn eval<F: Field>(
    e: &Expr,
    field: &F,
    int: &dyn Fn(&BigInt) -> F::Elem,
    sym: &dyn Fn(char) -> Option<F::Elem>,
) -> Result<F::Elem> {
    let rec = |x: &Expr| eval(x, field, int, sym);
    Ok(match e {
        Expr::Int(n) => int(n),
        Expr::Sym(c) => sym(*c).ok_or_else(|| Error::parse(format!("unknown symbol {c:?}")))?,
        Expr::Add(a, b) => field.add(&rec(a)?, &rec(b)?),
        Expr::Sub(a, b) => field.sub(&rec(a)?, &rec(b)?),
        Expr::Mul(a, b) => field.mul(&rec(a)?, &rec(b)?),
        Expr::Div(a, b) => field
            .div(&rec(a)?, &rec(b)?)
            .ok_or_else(|| Error::parse("division by zero"))?,
        Expr::Neg(a) => field.neg(&rec(a)?),
        Expr::Pow(a, k) => field.pow(&rec(a)?, *k as u128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("1+2*t^2").unwrap();
        let expected = Expr::Add(
            Box::new(Expr::Int(1.into())),
            Box::new(Expr::Mul(
                Box::new(Expr::Int(2.into())),
                Box::new(Expr::Pow(Box::new(Expr::Sym('t')), 2)),
            )),
        );
        assert_eq!(e, expected);
        assert_eq!(parse_expr("2t").unwrap(), parse_expr("2*t").unwrap());
        assert_eq!(parse_expr("-t/2").unwrap(), parse_expr("(-t)/2").unwrap());
    }

    #[test]
    fn errors() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1+").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("t^-1").is_err());
        assert!(parse_expr("1 $ 2").is_err());
    }
}
