//! A small expression language for maps, metrics, densities and predicates.
//!
//! ```text
//! expr     := or_expr
//! or_expr  := and_expr {"or" and_expr}
//! and_expr := not_expr {"and" not_expr}
//! not_expr := ["not"] cmp
//! cmp      := sum [("<" | "<=" | "≤" | ">" | ">=" | "≥" | "=") sum]
//! sum      := term {("+" | "-") term}
//! term     := factor {("*" | "/") factor}
//! factor   := ["-"] power
//! power    := atom ["^" factor]
//! atom     := number | ident | ident "(" args ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-2^2`
//! is `-4`. Calls: `exp abs sqrt log` (one argument), `min max` (two) and
//! `if(cond, a, b)`, whose untaken branch is never evaluated.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown function `{name}` at line {line}, column {col}")]
    UnknownFunction { name: String, line: usize, col: usize },

    #[error("`{name}` takes {expected} argument(s), got {got} (line {line}, column {col})")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
        line: usize,
        col: usize,
    },

    #[error("unbound variable `{name}`")]
    UnboundVariable { name: String },

    #[error("{message} in `{expr}`")]
    Domain { expr: String, message: String },

    #[error("type error: {0}")]
    Type(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "=",
        }
    }

    fn apply(self, a: f64, b: f64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Eq => a == b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Abs,
    Sqrt,
    Log,
    Min,
    Max,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "abs" => Func::Abs,
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            "min" => Func::Min,
            "max" => Func::Max,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Compare(CmpOp, Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

/// Printed fully parenthesised, so the output re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::If(c, a, b) => write!(f, "if({c}, {a}, {b})"),
            Expr::Compare(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::And(a, b) => write!(f, "({a} and {b})"),
            Expr::Or(a, b) => write!(f, "({a} or {b})"),
            Expr::Not(e) => write!(f, "(not {e})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Number,
    Boolean,
}

impl Expr {
    /// Static kind of the expression, checking every operand along the way.
    pub fn kind(&self) -> Result<ValueKind, ExprError> {
        use ValueKind::*;
        let want = |e: &Expr, k: ValueKind| -> Result<(), ExprError> {
            let got = e.kind()?;
            if got != k {
                return Err(ExprError::Type(format!(
                    "`{e}` is {}, expected {}",
                    kind_name(got),
                    kind_name(k)
                )));
            }
            Ok(())
        };
        match self {
            Expr::Num(_) | Expr::Var(_) => Ok(Number),
            Expr::Neg(e) => want(e, Number).map(|_| Number),
            Expr::Binary(_, a, b) => {
                want(a, Number)?;
                want(b, Number)?;
                Ok(Number)
            }
            Expr::Call(_, args) => {
                for a in args {
                    want(a, Number)?;
                }
                Ok(Number)
            }
            Expr::If(c, a, b) => {
                want(c, Boolean)?;
                want(a, Number)?;
                want(b, Number)?;
                Ok(Number)
            }
            Expr::Compare(_, a, b) => {
                want(a, Number)?;
                want(b, Number)?;
                Ok(Boolean)
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                want(a, Boolean)?;
                want(b, Boolean)?;
                Ok(Boolean)
            }
            Expr::Not(e) => want(e, Boolean).map(|_| Boolean),
        }
    }

    /// Names of all variables referenced anywhere in the tree.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(n) => {
                out.insert(n.clone());
            }
            Expr::Neg(e) | Expr::Not(e) => e.collect_vars(out),
            Expr::Binary(_, a, b) | Expr::Compare(_, a, b) | Expr::And(a, b) | Expr::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Expr::If(c, a, b) => {
                c.collect_vars(out);
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

fn kind_name(k: ValueKind) -> &'static str {
    match k {
        ValueKind::Number => "numeric",
        ValueKind::Boolean => "boolean",
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Cmp(CmpOp),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start_line,
                col: start_col,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
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
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| ExprError::Syntax {
                line: start_line,
                col: start_col,
                message: format!("malformed number `{s}`"),
            })?;
            col += i - start;
            push(&mut out, Tok::Num(v));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('<', Some('=')) => (Tok::Cmp(CmpOp::Le), 2),
            ('>', Some('=')) => (Tok::Cmp(CmpOp::Ge), 2),
            ('<', _) => (Tok::Cmp(CmpOp::Lt), 1),
            ('>', _) => (Tok::Cmp(CmpOp::Gt), 1),
            ('≤', _) => (Tok::Cmp(CmpOp::Le), 1),
            ('≥', _) => (Tok::Cmp(CmpOp::Ge), 1),
            ('=', _) => (Tok::Cmp(CmpOp::Eq), 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('^', _) => (Tok::Caret, 1),
            _ => {
                return Err(ExprError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut out, tok);
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        let t = self.peek();
        ExprError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(&self.peek().tok))))
        }
    }

    fn or_expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.and_expr()?;
        while self.at_keyword("or") {
            self.bump();
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and_expr()?));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.not_expr()?;
        while self.at_keyword("and") {
            self.bump();
            lhs = Expr::And(Box::new(lhs), Box::new(self.not_expr()?));
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, ExprError> {
        if self.at_keyword("not") {
            self.bump();
            return Ok(Expr::Not(Box::new(self.cmp()?)));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Expr, ExprError> {
        let lhs = self.sum()?;
        if let Tok::Cmp(op) = self.peek().tok {
            self.bump();
            let rhs = self.sum()?;
            return Ok(Expr::Compare(op, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.power()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let exp = self.factor()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.or_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(ref name) if matches!(name.as_str(), "and" | "or" | "not") => {
                Err(self.error(format!("unexpected keyword `{name}`")))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek().tok != Tok::LParen {
                    return Ok(Expr::Var(name));
                }
                self.bump();
                let args = self.args()?;
                let arity = |expected: usize| -> Result<(), ExprError> {
                    if args.len() != expected {
                        return Err(ExprError::Arity {
                            name: name.clone(),
                            expected,
                            got: args.len(),
                            line: t.line,
                            col: t.col,
                        });
                    }
                    Ok(())
                };
                if name == "if" {
                    arity(3)?;
                    let mut it = args.into_iter();
                    let (c, a, b) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    return Ok(Expr::If(Box::new(c), Box::new(a), Box::new(b)));
                }
                let func = Func::lookup(&name).ok_or_else(|| ExprError::UnknownFunction {
                    name: name.clone(),
                    line: t.line,
                    col: t.col,
                })?;
                arity(func.arity())?;
                Ok(Expr::Call(func, args))
            }
            ref other => Err(self.error(format!("expected an operand, found {}", describe(other)))),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, ExprError> {
        let mut args = Vec::new();
        if self.peek().tok == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.or_expr()?);
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return Err(self.error("expected `,` or `)` in argument list")),
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Cmp(op) => format!("`{}`", op.symbol()),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    if p.peek().tok == Tok::End {
        return Err(p.error("empty expression"));
    }
    let e = p.or_expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(format!("unexpected {}", describe(&p.peek().tok))));
    }
    Ok(e)
}

enum Value {
    Num(f64),
    Bool(bool),
}

/// Evaluates a numeric expression; `env` resolves variable names.
pub fn eval_expr<F>(e: &Expr, env: &F) -> Result<f64, ExprError>
where
    F: Fn(&str) -> Option<f64> + ?Sized,
{
    match eval(e, env)? {
        Value::Num(v) => Ok(v),
        Value::Bool(_) => Err(ExprError::Type(format!("`{e}` is boolean, expected numeric"))),
    }
}

/// Evaluates a boolean expression (subset predicates).
pub fn eval_bool<F>(e: &Expr, env: &F) -> Result<bool, ExprError>
where
    F: Fn(&str) -> Option<f64> + ?Sized,
{
    match eval(e, env)? {
        Value::Bool(b) => Ok(b),
        Value::Num(_) => Err(ExprError::Type(format!("`{e}` is numeric, expected boolean"))),
    }
}

fn domain(e: &Expr, message: &str) -> ExprError {
    ExprError::Domain {
        expr: e.to_string(),
        message: message.into(),
    }
}

fn num<F>(e: &Expr, env: &F) -> Result<f64, ExprError>
where
    F: Fn(&str) -> Option<f64> + ?Sized,
{
    eval_expr(e, env)
}

fn boolean<F>(e: &Expr, env: &F) -> Result<bool, ExprError>
where
    F: Fn(&str) -> Option<f64> + ?Sized,
{
    eval_bool(e, env)
}

fn eval<F>(e: &Expr, env: &F) -> Result<Value, ExprError>
where
    F: Fn(&str) -> Option<f64> + ?Sized,
{
    let v = match e {
        Expr::Num(v) => *v,
        Expr::Var(name) => env(name).ok_or_else(|| ExprError::UnboundVariable { name: name.clone() })?,
        Expr::Neg(a) => -num(a, env)?,
        Expr::Binary(op, a, b) => {
            let (a, b) = (num(a, env)?, num(b, env)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(domain(e, "division by zero"));
                    }
                    a / b
                }
                BinOp::Pow => a.powf(b),
            }
        }
        Expr::Call(func, args) => {
            let a = num(&args[0], env)?;
            match func {
                Func::Exp => a.exp(),
                Func::Abs => a.abs(),
                Func::Sqrt => {
                    if a < 0.0 {
                        return Err(domain(e, "square root of a negative number"));
                    }
                    a.sqrt()
                }
                Func::Log => {
                    if a <= 0.0 {
                        return Err(domain(e, "logarithm of a nonpositive number"));
                    }
                    a.ln()
                }
                Func::Min => a.min(num(&args[1], env)?),
                Func::Max => a.max(num(&args[1], env)?),
            }
        }
        Expr::If(c, a, b) => {
            if boolean(c, env)? {
                num(a, env)?
            } else {
                num(b, env)?
            }
        }
        Expr::Compare(op, a, b) => return Ok(Value::Bool(op.apply(num(a, env)?, num(b, env)?))),
        Expr::And(a, b) => return Ok(Value::Bool(boolean(a, env)? && boolean(b, env)?)),
        Expr::Or(a, b) => return Ok(Value::Bool(boolean(a, env)? || boolean(b, env)?)),
        Expr::Not(a) => return Ok(Value::Bool(!boolean(a, env)?)),
    };
    if !v.is_finite() {
        return Err(domain(e, "non-finite result"));
    }
    Ok(Value::Num(v))
}
