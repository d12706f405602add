//! Expression language for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | 'i' | '(' expr ')' | ('Re' | 'Im' | 'conj') '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `3/2` is a rational
//! literal. Floating-point literals are rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{Poly, Table};
use crate::scalar::{imag_unit, Gaussian, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable {
        name: String,
        line: usize,
        col: usize,
    },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnknownVariable { .. } => "UnknownVariable",
        }
    }

    /// Shifts the reported line, for expressions embedded in larger files.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            ParseError::Syntax { line: l, col, msg } => ParseError::Syntax {
                line: l + line - 1,
                col,
                msg,
            },
            ParseError::UnknownVariable { name, line: l, col } => ParseError::UnknownVariable {
                name,
                line: l + line - 1,
                col,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Num(BigInt),
    I,
    Var(String, Pos),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>, Pos),
    Pow(Box<ExprAst>, u32),
    Re(Box<ExprAst>),
    Im(Box<ExprAst>),
    Conj(Box<ExprAst>),
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Num(n) => write!(f, "{n}"),
            ExprAst::I => f.write_str("i"),
            ExprAst::Var(v, _) => f.write_str(v),
            ExprAst::Neg(a) => write!(f, "(-{a})"),
            ExprAst::Add(a, b) => write!(f, "({a} + {b})"),
            ExprAst::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprAst::Mul(a, b) => write!(f, "({a} * {b})"),
            ExprAst::Div(a, b, _) => write!(f, "({a} / {b})"),
            ExprAst::Pow(a, e) => write!(f, "{a}^{e}"),
            ExprAst::Re(a) => write!(f, "Re({a})"),
            ExprAst::Im(a) => write!(f, "Im({a})"),
            ExprAst::Conj(a) => write!(f, "conj({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let (mut line, mut col) = (1usize, 1usize);
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let pos = Pos { line, col };
            if c == '\n' {
                line += 1;
                col = 1;
                k += 1;
                continue;
            }
            if c.is_whitespace() {
                k += 1;
                col += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                if k < chars.len() && (chars[k] == '.' || chars[k] == 'e' || chars[k] == 'E') {
                    return Err(ParseError::Syntax {
                        line,
                        col: col + (k - start),
                        msg: "only integer and rational literals are allowed".into(),
                    });
                }
                let s: String = chars[start..k].iter().collect();
                col += k - start;
                out.push((Tok::Int(s.parse().expect("digits")), pos));
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                col += k - start;
                out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((tok, pos));
            k += 1;
            col += 1;
        }
        out.push((Tok::End, Pos { line, col }));
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    opens: Vec<Pos>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let (_, pos) = self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(e) => Ok(ExprAst::Pow(Box::new(base), e)),
                Err(_) => self.err(pos, "exponent too large"),
            },
            _ => self.err(pos, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(ExprAst::Num(n)),
            Tok::LParen => {
                self.opens.push(pos);
                let inner = self.expr()?;
                self.close(pos)?;
                self.opens.pop();
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(ExprAst::I),
                "Re" | "Im" | "conj" => {
                    let open = self.pos();
                    if self.bump().0 != Tok::LParen {
                        return self.err(open, format!("expected `(` after `{name}`"));
                    }
                    self.opens.push(open);
                    let inner = Box::new(self.expr()?);
                    self.close(open)?;
                    self.opens.pop();
                    Ok(match name.as_str() {
                        "Re" => ExprAst::Re(inner),
                        "Im" => ExprAst::Im(inner),
                        _ => ExprAst::Conj(inner),
                    })
                }
                _ => Ok(ExprAst::Var(name, pos)),
            },
            Tok::End => match self.opens.last() {
                Some(&open) => self.err(open, "unclosed `(`"),
                None => self.err(pos, "unexpected end of input"),
            },
            other => self.err(pos, format!("unexpected token {other:?}")),
        }
    }

    /// Consumes `)`; an unclosed group is reported at its opening paren.
    fn close(&mut self, open: Pos) -> Result<(), ParseError> {
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(())
            }
            Tok::End => self.err(open, "unclosed `(`"),
            _ => {
                let pos = self.pos();
                self.err(pos, "expected `)`")
            }
        }
    }
}

pub fn parse_ast(text: &str) -> Result<ExprAst, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        opens: Vec::new(),
    };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        let pos = p.pos();
        return p.err(pos, "trailing input");
    }
    Ok(ast)
}

impl ExprAst {
    pub fn to_poly(&self, table: &Table) -> Result<Poly, ParseError> {
        Ok(match self {
            ExprAst::Num(n) => {
                Poly::constant(table, Gaussian::from(Rational::from_integer(n.clone())))
            }
            ExprAst::I => Poly::constant(table, imag_unit()),
            ExprAst::Var(name, pos) => {
                Poly::var(table, name).map_err(|_| ParseError::UnknownVariable {
                    name: name.clone(),
                    line: pos.line,
                    col: pos.col,
                })?
            }
            ExprAst::Neg(a) => -&a.to_poly(table)?,
            ExprAst::Add(a, b) => &a.to_poly(table)? + &b.to_poly(table)?,
            ExprAst::Sub(a, b) => &a.to_poly(table)? - &b.to_poly(table)?,
            ExprAst::Mul(a, b) => &a.to_poly(table)? * &b.to_poly(table)?,
            ExprAst::Div(a, b, pos) => {
                let d = b.to_poly(table)?;
                if !d.is_constant() || d.is_empty() {
                    return Err(ParseError::Syntax {
                        line: pos.line,
                        col: pos.col,
                        msg: "division by a non-constant or zero expression".into(),
                    });
                }
                let c = d.terms().next().expect("nonzero").1.clone();
                a.to_poly(table)?.scale(&(Gaussian::one() / c))
            }
            ExprAst::Pow(a, e) => a.to_poly(table)?.pow(*e),
            ExprAst::Re(a) => a.to_poly(table)?.re(),
            ExprAst::Im(a) => a.to_poly(table)?.im(),
            ExprAst::Conj(a) => a.to_poly(table)?.conjugate(),
        })
    }
}

pub fn parse_expression(text: &str, table: &Table) -> Result<Poly, ParseError> {
    parse_ast(text)?.to_poly(table)
}

/// Parses a constant expression such as `3/2` or `1-2*i`.
pub fn parse_constant(text: &str) -> Result<Gaussian, ParseError> {
    let empty = crate::poly::VarTable::new(vec![], vec![]).expect("empty table");
    let p = parse_expression(text, &empty)?;
    let c = p
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Gaussian::zero);
    Ok(c)
}
