//! A small arithmetic-expression parser shared by every literal syntax:
//! field elements ("g^2 + 1"), rational functions ("(u^3+1)/(u^3+2)"),
//! skew polynomials ("(g+1)*t^2 + g*t + 1") and central polynomials.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

/// Evaluation target for [`Expr`].
pub trait Env {
    type Value: Clone;
    fn int(&self, n: i64) -> Self::Value;
    fn var(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value, pos: usize) -> Result<Self::Value>;
    fn pow(&self, a: &Self::Value, e: i64, pos: usize) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<E: Env>(&self, env: &E) -> Result<E::Value> {
        Ok(match self {
            Expr::Int(n) => env.int(*n),
            Expr::Var(name, pos) => env.var(name, *pos)?,
            Expr::Neg(a) => {
                let v = a.eval(env)?;
                env.sub(&env.int(0), &v)
            }
            Expr::Add(a, b) => env.add(&a.eval(env)?, &b.eval(env)?),
            Expr::Sub(a, b) => env.sub(&a.eval(env)?, &b.eval(env)?),
            Expr::Mul(a, b) => env.mul(&a.eval(env)?, &b.eval(env)?),
            Expr::Div(a, b, pos) => env.div(&a.eval(env)?, &b.eval(env)?, *pos)?,
            Expr::Pow(a, e, pos) => env.pow(&a.eval(env)?, *e, *pos)?,
        })
    }

    /// Split a top-level sum into signed summands.
    pub fn summands(&self) -> Vec<(bool, &Expr)> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a Expr, positive: bool, out: &mut Vec<(bool, &'a Expr)>) {
            match e {
                Expr::Add(a, b) => {
                    walk(a, positive, out);
                    walk(b, positive, out);
                }
                Expr::Sub(a, b) => {
                    walk(a, positive, out);
                    walk(b, !positive, out);
                }
                Expr::Neg(a) => walk(a, !positive, out),
                other => out.push((positive, other)),
            }
        }
        walk(self, true, &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| Error::parse(start, "integer literal too large"))?;
            out.push((Tok::Int(n), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
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
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            let at = self.here();
            self.pos += 1;
            let negative = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }, at))
                }
                _ => Err(Error::parse(self.here(), "expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name, at))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.here(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(Error::parse(at, format!("unexpected '{c}'"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.here(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct IntEnv;
    impl Env for IntEnv {
        type Value = i64;
        fn int(&self, n: i64) -> i64 {
            n
        }
        fn var(&self, name: &str, pos: usize) -> Result<i64> {
            match name {
                "g" => Ok(10),
                _ => Err(Error::parse(pos, format!("unknown symbol {name}"))),
            }
        }
        fn add(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn sub(&self, a: &i64, b: &i64) -> i64 {
            a - b
        }
        fn mul(&self, a: &i64, b: &i64) -> i64 {
            a * b
        }
        fn div(&self, a: &i64, b: &i64, pos: usize) -> Result<i64> {
            if *b == 0 {
                Err(Error::parse(pos, "division by zero"))
            } else {
                Ok(a / b)
            }
        }
        fn pow(&self, a: &i64, e: i64, _pos: usize) -> Result<i64> {
            Ok(a.pow(e as u32))
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("2*g^2 + g - 3").unwrap().eval(&IntEnv).unwrap(), 207);
        assert_eq!(parse("-(g+1)*2").unwrap().eval(&IntEnv).unwrap(), -22);
        assert_eq!(parse("(g^2)/(g)").unwrap().eval(&IntEnv).unwrap(), 10);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("g + * 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse("g + h").unwrap().eval(&IntEnv) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("(g + 1").is_err());
        assert!(parse("g^x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn summands_keep_signs() {
        let e = parse("a - b + c").unwrap();
        let signs: Vec<bool> = e.summands().iter().map(|(s, _)| *s).collect();
        assert_eq!(signs, vec![true, false, true]);
    }
}
