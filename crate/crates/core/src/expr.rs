//! A small expression language for classes: integers, `+`, `-`, `*`, `^`
//! and named generators such as `S[2,1]`, `U[1]`, `V`, `L[3,3,2]`, `h1`,
//! `d`, `pt`. Parentheses may be used, but not nested.

use crate::coeff::Modulus;
use crate::dvariety::{DClass, DLabel, DModel};
use crate::error::{Error, Result};
use crate::schubert::{GrClass, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Gen(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(i64),
    Gen(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
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
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(
                text.parse()
                    .map_err(|_| Error::Parse(format!("integer `{text}` is too large")))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '[' {
                while i < chars.len() && chars[i] != ']' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(Error::Parse(format!("unclosed `[` in `{s}`")));
                }
                i += 1;
            }
            let name: String = chars[start..i].iter().filter(|c| !c.is_whitespace()).collect();
            out.push(Token::Gen(name));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
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
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e)
                        .map_err(|_| Error::Parse(format!("exponent {e} is too large")))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Parse("`^` must be followed by an integer".into())),
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
            Some(Token::Gen(g)) => {
                self.pos += 1;
                Ok(Expr::Gen(g))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                if self.depth > 0 {
                    return Err(Error::Parse("parentheses may not be nested".into()));
                }
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected `{}`", show(&t)))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

fn show(t: &Token) -> String {
    match t {
        Token::Int(n) => n.to_string(),
        Token::Gen(g) => g.clone(),
        Token::Op(c) => c.to_string(),
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(Error::Parse(format!("unexpected `{}`", show(t)))),
    }
}

/// A ring the expression language can be evaluated in.
pub trait Algebra {
    type Elem: Clone;
    fn int(&self, n: i64) -> Self::Elem;
    fn generator(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Elem> {
    Ok(match e {
        Expr::Int(n) => alg.int(*n),
        Expr::Gen(g) => alg.generator(g)?,
        Expr::Neg(a) => alg.mul(&alg.int(-1), &eval(alg, a)?),
        Expr::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Sub(a, b) => alg.add(&eval(alg, a)?, &alg.mul(&alg.int(-1), &eval(alg, b)?)),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Pow(a, n) => {
            let base = eval(alg, a)?;
            let mut out = alg.int(1);
            for _ in 0..*n {
                out = alg.mul(&out, &base);
            }
            out
        }
    })
}

fn bracket<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix).filter(|rest| rest.starts_with('['))
}

/// Schubert classes on `Gr(k, n)`: `S[λ]`, plus `h1` for `S[1]` and `pt`.
pub struct GrAlgebra {
    pub k: usize,
    pub n: usize,
    pub modulus: Modulus,
}

impl Algebra for GrAlgebra {
    type Elem = GrClass;
    fn int(&self, c: i64) -> GrClass {
        GrClass::one(self.k, self.n, self.modulus).scale(c)
    }
    fn generator(&self, name: &str) -> Result<GrClass> {
        let cols = (self.n - self.k) as u32;
        let lambda: Partition = match name {
            "h1" => Partition::row(1),
            "pt" => Partition::new(vec![cols; self.k])?,
            _ => bracket(name, "S")
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` on Gr")))?
                .parse()?,
        };
        GrClass::schubert(self.k, self.n, self.modulus, lambda)
    }
    fn add(&self, a: &GrClass, b: &GrClass) -> GrClass {
        a + b
    }
    fn mul(&self, a: &GrClass, b: &GrClass) -> GrClass {
        a * b
    }
}

/// Classes on D: `U[λ]`, `V`, `L[μ]` and the aliases `h1`, `d`, `pt`.
pub struct DAlgebra(pub DModel);

impl Algebra for DAlgebra {
    type Elem = DClass;
    fn int(&self, c: i64) -> DClass {
        self.0.one().scale(c)
    }
    fn generator(&self, name: &str) -> Result<DClass> {
        match name {
            "h1" => Ok(self.0.h1()),
            "d" => Ok(self.0.d()),
            "pt" => Ok(self.0.pt()),
            _ => Ok(self.0.label(name.parse::<DLabel>()?)),
        }
    }
    fn add(&self, a: &DClass, b: &DClass) -> DClass {
        a + b
    }
    fn mul(&self, a: &DClass, b: &DClass) -> DClass {
        a * b
    }
}

pub fn eval_gr(s: &str, k: usize, n: usize, modulus: Modulus) -> Result<GrClass> {
    eval(&GrAlgebra { k, n, modulus }, &parse(s)?)
}

pub fn eval_d(s: &str, model: DModel) -> Result<DClass> {
    eval(&DAlgebra(model), &parse(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> DModel {
        DModel::new(Default::default(), Modulus::Integral).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(eval_d("U[1]^8", z()).unwrap().degree(), 42);
        assert_eq!(eval_d("h1^8", z()).unwrap().degree(), 42);
        assert_eq!(eval_d("d*d", z()).unwrap().degree(), 2);
        assert_eq!(eval_d("V^2 - 2*pt", z()).unwrap().to_string(), "0");
        assert_eq!(eval_gr("S[1]^9", 3, 6, Modulus::Integral).unwrap().degree(), 42);
        assert_eq!(eval_gr("S[2,1,1]*S[3,1]", 3, 6, Modulus::Integral).unwrap().to_string(), "0");
    }

    #[test]
    fn precedence_and_parentheses() {
        let m = z();
        assert_eq!(eval_d("1 + h1*h1^2", m).unwrap(), &m.one() + &m.h1().pow(3));
        assert_eq!(eval_d("-(1 + h1)^2", m).unwrap(), (&m.one() + &m.h1()).pow(2).scale(-1));
        assert_eq!(eval_d("2*U[1] - U[1]", m).unwrap(), m.h1());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "U[1", "((h1))", "h1^", "h1 ^ x", "S[1]", "q", "U[1] +", "U[2,3]", "h1 $"] {
            assert!(eval_d(bad, z()).is_err(), "{bad} should be rejected");
        }
        assert!(eval_gr("S[4]", 3, 6, Modulus::Integral).is_err());
        assert!(eval_gr("U[1]", 3, 6, Modulus::Integral).is_err());
    }
}
