//! Recursive-descent evaluator for scalar strings such as `3/2`, `1+2*s`,
//! `z^2+1` or `(T^2+1)/(T)`. Expressions are evaluated directly in the
//! target field, so every printed scalar parses back to itself.

use num_bigint::BigInt;

use super::{FieldDescriptor, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().map_err(|_| format!("bad integer {s}"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a FieldDescriptor,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect_op(&mut self, c: char) -> Result<(), String> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Scalar, String> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, String> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                acc.try_div(&rhs).map_err(|e| e.to_string())?
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Scalar, String> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k: i64 = match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => n.try_into().map_err(|_| "exponent too large".to_string())?,
            _ => return Err("expected integer exponent".into()),
        };
        self.pos += 1;
        base.pow(if negative { -k } else { k }).map_err(|e| e.to_string())
    }

    fn atom(&mut self) -> Result<Scalar, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::from_bigint(self.field, &n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.ident(&name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }

    fn ident(&self, name: &str) -> Result<Scalar, String> {
        let unknown = || format!("unknown symbol `{name}` in {}", self.field);
        match self.field {
            FieldDescriptor::QuadraticExt { .. } if name == "s" => Ok(Scalar::generator(self.field)),
            FieldDescriptor::FiniteField { e, .. } if name == "z" && *e > 1 => {
                Ok(Scalar::generator(self.field))
            }
            FieldDescriptor::RationalFunctions { base, var } => {
                if name == &**var {
                    Ok(Scalar::generator(self.field))
                } else {
                    let inner = Parser { tokens: vec![], pos: 0, field: base };
                    let b = inner.ident(name)?;
                    Scalar::embed(self.field, b).map_err(|e| e.to_string())
                }
            }
            _ => Err(unknown()),
        }
    }
}

pub(crate) fn parse_scalar(field: &FieldDescriptor, text: &str) -> Result<Scalar, FieldError> {
    let fail = |why: String| FieldError::Parse(text.to_string(), why);
    let tokens = tokenize(text).map_err(fail)?;
    if tokens.is_empty() {
        return Err(fail("empty input".into()));
    }
    let mut p = Parser { tokens, pos: 0, field };
    let v = p.expr().map_err(fail)?;
    if p.pos != p.tokens.len() {
        return Err(fail("trailing input".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let q = FieldDescriptor::Rationals;
        assert_eq!(parse_scalar(&q, "1+2*3").unwrap(), Scalar::from_int(&q, 7));
        assert_eq!(parse_scalar(&q, "-2^2").unwrap(), Scalar::from_int(&q, -4));
        assert_eq!(parse_scalar(&q, "3/2*4").unwrap(), Scalar::from_int(&q, 6));
        assert_eq!(parse_scalar(&q, "2^-1").unwrap(), Scalar::rational(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        let q = FieldDescriptor::Rationals;
        for bad in ["", "1+", "s", "(1", "1)", "1/0", "1 2", "#"] {
            assert!(parse_scalar(&q, bad).is_err(), "{bad}");
        }
    }
}
