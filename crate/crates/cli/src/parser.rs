//! Expression parser for rational functions.
//!
//! Grammar: integer literals, one variable, unary minus, `+ - * /`,
//! `^` with a literal integer exponent (negative allowed), parentheses, and
//! implicit multiplication by juxtaposition (`x(x+2)`, `2x`,
//! `(x+1)(x+2)`), so displayed formulas can be pasted verbatim.
//! Precedence: `^` binds tightest, then unary minus, then `* /`, then
//! `+ -`; binary `-` and `/` associate to the left.

use std::fmt;

use disres_core::{Poly, Rat, RatFun};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { offset: usize, message: String },
    UnknownVariable { offset: usize, name: String },
    ZeroDenominator,
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax_error",
            ParseError::UnknownVariable { .. } => "unknown_variable",
            ParseError::ZeroDenominator => "zero_denominator",
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {}: {}", offset, message)
            }
            ParseError::UnknownVariable { offset, name } => {
                write!(f, "unknown variable '{}' at byte {}", name, offset)
            }
            ParseError::ZeroDenominator => write!(f, "division by zero"),
        }
    }
}

/// Abstract syntax of an input expression.
#[derive(Debug, Clone)]
pub enum Expr {
    Int(BigInt),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse");
                toks.push((Tok::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character '{}'", c),
                })
            }
        }
    }
    toks.push((Tok::End, bytes.len()));
    Ok(toks)
}

struct Parser<'a> {
    lexer: Lexer,
    var: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &(Tok, usize) {
        &self.lexer.toks[self.lexer.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.lexer.toks[self.lexer.pos].clone();
        if self.lexer.pos + 1 < self.lexer.toks.len() {
            self.lexer.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let (tok, offset) = self.bump();
        let mut lhs = match tok {
            Tok::Int(n) => Expr::Int(n),
            Tok::Ident(name) => {
                if name == self.var {
                    Expr::Var
                } else {
                    return Err(ParseError::UnknownVariable { offset, name });
                }
            }
            Tok::Minus => Expr::Neg(Box::new(self.parse_expr(25)?)),
            Tok::LParen => {
                let inner = self.parse_expr(0)?;
                let (close, off) = self.bump();
                if close != Tok::RParen {
                    return Err(ParseError::Syntax {
                        offset: off,
                        message: "expected ')'".into(),
                    });
                }
                inner
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset,
                    message: "expected a number, variable, or '('".into(),
                })
            }
        };
        loop {
            let (tok, _) = self.peek();
            let (lbp, implicit) = match tok {
                Tok::Plus | Tok::Minus => (10u8, false),
                Tok::Star | Tok::Slash => (20, false),
                Tok::Caret => (40, false),
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => (20, true),
                Tok::RParen | Tok::End => break,
            };
            if lbp < min_bp {
                break;
            }
            if implicit {
                let rhs = self.parse_expr(lbp + 1)?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                continue;
            }
            let (op, _) = self.bump();
            if op == Tok::Caret {
                lhs = Expr::Pow(Box::new(lhs), self.parse_exponent()?);
                continue;
            }
            let rhs = self.parse_expr(lbp + 1)?;
            lhs = match op {
                Tok::Plus => Expr::Add(Box::new(lhs), Box::new(rhs)),
                Tok::Minus => Expr::Sub(Box::new(lhs), Box::new(rhs)),
                Tok::Star => Expr::Mul(Box::new(lhs), Box::new(rhs)),
                Tok::Slash => Expr::Div(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn parse_exponent(&mut self) -> Result<i64, ParseError> {
        let (tok, offset) = self.bump();
        let (negative, n, off) = match tok {
            Tok::Minus => {
                let (t2, o2) = self.bump();
                match t2 {
                    Tok::Int(n) => (true, n, o2),
                    _ => {
                        return Err(ParseError::Syntax {
                            offset: o2,
                            message: "exponent must be an integer literal".into(),
                        })
                    }
                }
            }
            Tok::Int(n) => (false, n, offset),
            _ => {
                return Err(ParseError::Syntax {
                    offset,
                    message: "exponent must be an integer literal".into(),
                })
            }
        };
        let v = n.to_i64().ok_or(ParseError::Syntax {
            offset: off,
            message: "exponent is too large".into(),
        })?;
        Ok(if negative { -v } else { v })
    }
}

fn eval(expr: &Expr) -> Result<RatFun, ParseError> {
    Ok(match expr {
        Expr::Int(n) => RatFun::from_rat(Rat::from_integer(n.clone())),
        Expr::Var => RatFun::from_poly(Poly::x()),
        Expr::Neg(e) => -eval(e)?,
        Expr::Add(a, b) => eval(a)? + eval(b)?,
        Expr::Sub(a, b) => eval(a)? - eval(b)?,
        Expr::Mul(a, b) => eval(a)? * eval(b)?,
        Expr::Div(a, b) => {
            let den = eval(b)?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            eval(a)? / den
        }
        Expr::Pow(b, e) => {
            let base = eval(b)?;
            if base.is_zero() && *e < 0 {
                return Err(ParseError::ZeroDenominator);
            }
            base.pow(*e).map_err(|_| ParseError::ZeroDenominator)?
        }
    })
}

/// Parses an expression into a normalized rational function in `var`.
pub fn parse_ratfun(text: &str, var: &str) -> Result<RatFun, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        lexer: Lexer { toks, pos: 0 },
        var,
    };
    let expr = parser.parse_expr(0)?;
    let (tok, offset) = parser.peek().clone();
    if tok != Tok::End {
        return Err(ParseError::Syntax {
            offset,
            message: "unexpected trailing input".into(),
        });
    }
    eval(&expr)
}
