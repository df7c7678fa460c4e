//! Small arithmetic expression language for surface spec files.
//!
//! Grammar (`^` binds tightest and associates to the right, unary minus sits
//! between `^` and `*`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | name | name '(' expr ')' | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
    Atan,
    Asinh,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Self::Sin,
            "cos" => Self::Cos,
            "tan" => Self::Tan,
            "sinh" => Self::Sinh,
            "cosh" => Self::Cosh,
            "tanh" => Self::Tanh,
            "exp" => Self::Exp,
            "log" | "ln" => Self::Log,
            "sqrt" => Self::Sqrt,
            "abs" => Self::Abs,
            "atan" => Self::Atan,
            "asinh" => Self::Asinh,
            _ => return None,
        })
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Self::Sin => x.sin(),
            Self::Cos => x.cos(),
            Self::Tan => x.tan(),
            Self::Sinh => x.sinh(),
            Self::Cosh => x.cosh(),
            Self::Tanh => x.tanh(),
            Self::Exp => x.exp(),
            Self::Log => x.ln(),
            Self::Sqrt => x.sqrt(),
            Self::Abs => x.abs(),
            Self::Atan => x.atan(),
            Self::Asinh => x.asinh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Name(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad number '{text}'")))?;
            out.push(Token::Num(v));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Token::Sym(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: char) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{sym}' at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
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
        if self.eat('^') {
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let f = Func::from_name(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown function '{name}'")))?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                Ok(match name.as_str() {
                    "pi" => Expr::Num(std::f64::consts::PI),
                    "e" => Expr::Num(std::f64::consts::E),
                    _ => Expr::Var(name),
                })
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: tokenize(src)?,
            pos: 0,
        };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in '{src}'")));
        }
        Ok(e)
    }

    /// Replaces named parameters by their values.
    pub fn bind(&self, params: &BTreeMap<String, f64>) -> Expr {
        match self {
            Expr::Var(n) => params.get(n).map_or_else(|| self.clone(), |v| Expr::Num(*v)),
            Expr::Num(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.bind(params))),
            Expr::Bin(op, a, b) => Expr::Bin(*op, Box::new(a.bind(params)), Box::new(b.bind(params))),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.bind(params))),
        }
    }

    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(n) => out.push(n.clone()),
            Expr::Num(_) => {}
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates with the single free variable `var` set to `x`.
    pub fn eval(&self, var: &str, x: f64) -> Result<f64> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(n) if n == var => x,
            Expr::Var(n) => return Err(Error::Parse(format!("unbound variable '{n}'"))),
            Expr::Neg(a) => -a.eval(var, x)?,
            Expr::Call(f, a) => f.apply(a.eval(var, x)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(var, x)?, b.eval(var, x)?);
                match op {
                    Op::Add => a + b,
                    Op::Sub => a - b,
                    Op::Mul => a * b,
                    Op::Div => a / b,
                    Op::Pow => a.powf(b),
                }
            }
        })
    }
}

fn num(v: f64) -> Expr {
    Expr::Num(v)
}

fn is_num(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Num(x) if *x == v)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Num(x), Expr::Num(y)) => num(x + y),
        _ if is_num(&a, 0.0) => b,
        _ if is_num(&b, 0.0) => a,
        _ => Expr::Bin(Op::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Num(x), Expr::Num(y)) => num(x - y),
        _ if is_num(&b, 0.0) => a,
        _ if is_num(&a, 0.0) => neg(b),
        _ => Expr::Bin(Op::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Num(x), Expr::Num(y)) => num(x * y),
        _ if is_num(&a, 0.0) || is_num(&b, 0.0) => num(0.0),
        _ if is_num(&a, 1.0) => b,
        _ if is_num(&b, 1.0) => a,
        _ => Expr::Bin(Op::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        _ if is_num(&a, 0.0) => num(0.0),
        _ if is_num(&b, 1.0) => a,
        _ => Expr::Bin(Op::Div, Box::new(a), Box::new(b)),
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) => num(-x),
        Expr::Neg(inner) => *inner,
        _ => Expr::Neg(Box::new(a)),
    }
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

fn pow(a: Expr, b: Expr) -> Expr {
    if is_num(&b, 1.0) {
        return a;
    }
    Expr::Bin(Op::Pow, Box::new(a), Box::new(b))
}

impl Expr {
    fn depends_on(&self, var: &str) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(n) => n == var,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on(var),
            Expr::Bin(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    /// Symbolic derivative with respect to `var`.
    pub fn diff(&self, var: &str) -> Expr {
        if !self.depends_on(var) {
            return num(0.0);
        }
        match self {
            Expr::Num(_) => num(0.0),
            Expr::Var(_) => num(1.0),
            Expr::Neg(a) => neg(a.diff(var)),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                let (da, db) = (a.diff(var), b.diff(var));
                match op {
                    Op::Add => add(da, db),
                    Op::Sub => sub(da, db),
                    Op::Mul => add(mul(da, b.clone()), mul(a, db)),
                    Op::Div => div(
                        sub(mul(da, b.clone()), mul(a, db)),
                        pow(b, num(2.0)),
                    ),
                    Op::Pow if !b.depends_on(var) => {
                        mul(mul(b.clone(), pow(a, sub(b, num(1.0)))), da)
                    }
                    Op::Pow => mul(
                        pow(a.clone(), b.clone()),
                        add(mul(db, call(Func::Log, a.clone())), div(mul(b, da), a)),
                    ),
                }
            }
            Expr::Call(f, a) => {
                let a = a.as_ref().clone();
                let da = a.diff(var);
                let outer = match f {
                    Func::Sin => call(Func::Cos, a),
                    Func::Cos => neg(call(Func::Sin, a)),
                    Func::Tan => div(num(1.0), pow(call(Func::Cos, a), num(2.0))),
                    Func::Sinh => call(Func::Cosh, a),
                    Func::Cosh => call(Func::Sinh, a),
                    Func::Tanh => sub(num(1.0), pow(call(Func::Tanh, a), num(2.0))),
                    Func::Exp => call(Func::Exp, a),
                    Func::Log => div(num(1.0), a),
                    Func::Sqrt => div(num(0.5), call(Func::Sqrt, a)),
                    Func::Abs => div(a.clone(), call(Func::Abs, a)),
                    Func::Atan => div(num(1.0), add(num(1.0), pow(a, num(2.0)))),
                    Func::Asinh => div(num(1.0), call(Func::Sqrt, add(num(1.0), pow(a, num(2.0))))),
                };
                mul(outer, da)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(n) => f.write_str(n),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Call(func, a) => write!(f, "{}({a})", format!("{func:?}").to_lowercase()),
            Expr::Bin(op, a, b) => {
                let c = match op {
                    Op::Add => '+',
                    Op::Sub => '-',
                    Op::Mul => '*',
                    Op::Div => '/',
                    Op::Pow => '^',
                };
                write!(f, "({a} {c} {b})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, s: f64) -> f64 {
        Expr::parse(src).unwrap().eval("s", s).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(ev("2 ^ 3 ^ 2", 0.0), 512.0);
        assert_eq!(ev("-2 ^ 2", 0.0), -4.0);
        assert_eq!(ev("(1 - 2) - 3", 0.0), -4.0);
        assert_eq!(ev("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(ev("2 ^ -1", 0.0), 0.5);
    }

    #[test]
    fn functions_constants_and_numbers() {
        assert!((ev("sqrt(2*s + 2)", 1.0) - 2.0).abs() < 1e-15);
        assert!((ev("cosh(s)^2 - sinh(s)^2", 0.7) - 1.0).abs() < 1e-14);
        assert!((ev("cos(pi)", 0.0) + 1.0).abs() < 1e-15);
        assert_eq!(ev("1.5e-1 * 2E1", 0.0), 3.0);
        assert!((ev("log(e)", 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn binding_parameters() {
        let mut p = BTreeMap::new();
        p.insert("h".to_string(), 2.0);
        let e = Expr::parse("h * s").unwrap();
        assert_eq!(e.free_variables(), vec!["h".to_string(), "s".to_string()]);
        let b = e.bind(&p);
        assert_eq!(b.free_variables(), vec!["s".to_string()]);
        assert_eq!(b.eval("s", 3.0).unwrap(), 6.0);
        assert!(e.eval("s", 1.0).is_err());
    }

    #[test]
    fn symbolic_derivatives_match_differences() {
        let srcs = [
            "sin(2*s)*exp(-s)",
            "sqrt(1 + s^2)",
            "asinh(s) / (2 + cos(s))",
            "s^s",
            "log(3 + s) - tan(s/4) + atan(s)^2",
            "cosh(s)*tanh(s) - sinh(s) + abs(s - 5)",
            "-(s - 1)^3",
        ];
        for src in srcs {
            let e = Expr::parse(src).unwrap();
            let d1 = e.diff("s");
            let d2 = d1.diff("s");
            for x in [0.3, 0.8, 1.7] {
                let h = 1e-5;
                let fd1 = (e.eval("s", x + h).unwrap() - e.eval("s", x - h).unwrap()) / (2.0 * h);
                let fd2 = (d1.eval("s", x + h).unwrap() - d1.eval("s", x - h).unwrap()) / (2.0 * h);
                assert!((d1.eval("s", x).unwrap() - fd1).abs() < 1e-8, "{src} at {x}");
                assert!((d2.eval("s", x).unwrap() - fd2).abs() < 1e-7, "{src} at {x}");
            }
        }
        assert_eq!(Expr::parse("3*h").unwrap().diff("s"), Expr::Num(0.0));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1 +", "foo(1)", "(1", "1 2", "3 $ 4", "sin 2"] {
            assert!(Expr::parse(bad).is_err(), "{bad}");
        }
    }
}
