//! Parser for the ASCII expression grammar shared by scalars and
//! differential operators:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | name | 'd/d' name | '(' expr ')'
//! ```
//!
//! Names are the weight symbols `delta, mu, r, theta, kappa` and the
//! coordinates `t, x0, x1, …, y0, …`. For operators `*` is composition.

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::scalars::{Scalar, Symbol};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Name(String),
    Deriv(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Name(String),
    Deriv(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let name_at = |i: usize| -> (String, usize) {
        let mut j = i;
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
        (chars[i..j].iter().collect(), j)
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            out.push(Token::Num(digits.parse().expect("ascii digits")));
            i = j;
        } else if c == 'd'
            && chars.get(i + 1) == Some(&'/')
            && chars.get(i + 2) == Some(&'d')
            && chars.get(i + 3).is_some_and(|c| c.is_ascii_alphabetic())
        {
            let (name, j) = name_at(i + 3);
            out.push(Token::Deriv(name));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let (name, j) = name_at(i);
            out.push(Token::Name(name));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let e = u32::try_from(n.clone()).map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(Error::Parse("expected a nonnegative integer exponent after '^'".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            Token::Name(s) => Ok(Expr::Name(s)),
            Token::Deriv(s) => Ok(Expr::Deriv(s)),
            Token::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

/// Evaluate an expression tree in any structure with scalars embedded.
pub trait Evaluator {
    type Value;
    fn scalar(&self, s: Scalar) -> Self::Value;
    fn name(&self, name: &str) -> Result<Self::Value>;
    fn deriv(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    /// Division is only defined by values that reduce to a scalar.
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn one(&self) -> Self::Value {
        self.scalar(Scalar::one())
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value>
    where
        Self::Value: Clone,
    {
        match e {
            Expr::Num(q) => Ok(self.scalar(Scalar::rational(q.clone()))),
            Expr::Name(n) => self.name(n),
            Expr::Deriv(n) => self.deriv(n),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?),
            Expr::Sub(a, b) => {
                let b = self.neg(self.eval(b)?);
                self.add(self.eval(a)?, b)
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?),
            Expr::Div(a, b) => self.div(self.eval(a)?, self.eval(b)?),
            Expr::Neg(a) => Ok(self.neg(self.eval(a)?)),
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                let mut acc = self.one();
                for _ in 0..*k {
                    acc = self.mul(acc, base.clone())?;
                }
                Ok(acc)
            }
        }
    }
}

struct ScalarEval;

impl Evaluator for ScalarEval {
    type Value = Scalar;

    fn scalar(&self, s: Scalar) -> Scalar {
        s
    }

    fn name(&self, name: &str) -> Result<Scalar> {
        Symbol::from_name(name)
            .map(Scalar::symbol)
            .ok_or_else(|| Error::Parse(format!("unknown symbol '{name}'")))
    }

    fn deriv(&self, name: &str) -> Result<Scalar> {
        Err(Error::Parse(format!("derivative d/d{name} is not a scalar")))
    }

    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(a + b)
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(a * b)
    }

    fn neg(&self, a: Scalar) -> Scalar {
        -a
    }

    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        a.checked_div(&b)
    }

    fn eval(&self, e: &Expr) -> Result<Scalar> {
        // exponentiation by squaring is unnecessary; reuse the default walk
        match e {
            Expr::Pow(a, k) => Ok(self.eval(a)?.pow(*k)),
            Expr::Num(q) => Ok(Scalar::rational(q.clone())),
            Expr::Name(n) => self.name(n),
            Expr::Deriv(n) => self.deriv(n),
            Expr::Add(a, b) => Ok(self.eval(a)? + self.eval(b)?),
            Expr::Sub(a, b) => Ok(self.eval(a)? - self.eval(b)?),
            Expr::Mul(a, b) => Ok(self.eval(a)? * self.eval(b)?),
            Expr::Div(a, b) => self.eval(a)?.checked_div(&self.eval(b)?),
            Expr::Neg(a) => Ok(-self.eval(a)?),
        }
    }
}

/// Parse a scalar such as `(2*delta+1)/mu` or `-1/3`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    ScalarEval.eval(&parse_expr(s)?)
}

/// Parse an exact rational such as `-7/3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    parse_scalar(s)?
        .as_rational()
        .ok_or_else(|| Error::Parse(format!("'{s}' is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_grammar() {
        let s = parse_scalar("(2*delta+1)/mu").unwrap();
        assert_eq!(s.to_text(), "(2*delta+1)/mu");
        assert_eq!(parse_scalar("-mu^2 + 2*delta + 1").unwrap().to_text(), "-mu^2+2*delta+1");
        assert_eq!(parse_rational("-7/3").unwrap(), BigRational::new((-7).into(), 3.into()));
        assert_eq!(parse_scalar("2^3 - 8").unwrap(), Scalar::zero());
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("delta +").is_err());
        assert!(parse_scalar("foo").is_err());
        assert!(parse_scalar("d/dt").is_err());
        assert!(matches!(parse_scalar("1/(delta-delta)"), Err(Error::DivisionByZero)));
        assert!(parse_scalar("(delta").is_err());
    }
}
