//! Parser for function-field elements written in `x`, `y`, integers and `+ - * / ^ ( )`.
//!
//! Precedence is the usual one; `^` takes an integer exponent (possibly negative) and binds
//! tighter than unary minus, so `-x^2` is `-(x^2)`.

use super::function_field::FunctionFieldElement;
use super::model::Curve;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(String),
    X,
    Y,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                out.push(Token::Int(s));
            }
            'x' => {
                chars.next();
                out.push(Token::X);
            }
            'y' => {
                chars.next();
                out.push(Token::Y);
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                out.push(Token::Op(c));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    curve: &'a Curve,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op() != Some(c) {
            return Err(Error::Parse(format!("expected '{c}' at token {}", self.pos)));
        }
        self.pos += 1;
        Ok(())
    }

    fn expr(&mut self) -> Result<FunctionFieldElement> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FunctionFieldElement> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { acc.mul(&rhs) } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FunctionFieldElement> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FunctionFieldElement> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek_op() == Some('-');
        if negative {
            self.pos += 1;
        }
        let Some(Token::Int(e)) = self.tokens.get(self.pos).cloned() else {
            return Err(Error::Parse("exponent must be an integer".into()));
        };
        self.pos += 1;
        let e: i64 = e.parse().map_err(|_| Error::Parse(format!("exponent {e} too large")))?;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<FunctionFieldElement> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Int(s) => Ok(FunctionFieldElement::constant(self.curve, self.curve.base().parse(&s)?)),
            Token::X => Ok(FunctionFieldElement::x(self.curve)),
            Token::Y => FunctionFieldElement::y(self.curve),
            Token::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `text` as an element of the function field of `curve`.
pub fn parse_function(curve: &Curve, text: &str) -> Result<FunctionFieldElement> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { curve, tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::curve::{legendre_elliptic, CurveModel};

    #[test]
    fn parses_with_precedence() {
        let c = legendre_elliptic(BaseField::Rationals);
        let x = FunctionFieldElement::x(&c);
        let y = FunctionFieldElement::y(&c).unwrap();
        assert_eq!(parse_function(&c, "x/y").unwrap(), x.div(&y).unwrap());
        assert_eq!(parse_function(&c, "1 + 2*x^2").unwrap(), x.mul(&x).scale(&c.base().int(2)).add(&FunctionFieldElement::one(&c)));
        assert_eq!(parse_function(&c, "-x^2").unwrap(), x.mul(&x).neg());
        assert_eq!(parse_function(&c, "(x - 1)/3").unwrap(), x.sub(&FunctionFieldElement::one(&c)).scale(&c.base().parse("1/3").unwrap()));
        assert_eq!(parse_function(&c, "y^2").unwrap(), parse_function(&c, "x^3 - x").unwrap());
        assert_eq!(parse_function(&c, "x^-1").unwrap(), x.inv().unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let c = CurveModel::projective_line(BaseField::Rationals);
        assert!(parse_function(&c, "").is_err());
        assert!(parse_function(&c, "x +").is_err());
        assert!(parse_function(&c, "(x").is_err());
        assert!(parse_function(&c, "z").is_err());
        assert!(parse_function(&c, "y").is_err());
        assert_eq!(parse_function(&c, "1/0").unwrap_err(), Error::DivisionByZero);
        let f3 = CurveModel::projective_line(BaseField::Prime(3));
        assert!(parse_function(&f3, "1/3").is_err());
    }
}
