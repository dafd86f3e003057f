//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" UINT)?
//! atom   := NUMBER | NUMBER "/" NUMBER | IDENT | "(" expr ")"
//! ```
//! Juxtaposition is rejected, so `2x` is an error rather than `2*x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ratpoly::{MPoly, Rat, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("column {col}: unknown variable `{name}`")]
    UnknownVariable { col: usize, name: String },
    #[error("column {col}: exponent must be a non-negative integer literal")]
    BadExponent { col: usize },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { col, .. }
            | ParseError::UnknownVariable { col, .. }
            | ParseError::BadExponent { col } => *col,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("number `{r}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let num: BigInt = digits(&mut i).parse().unwrap();
            let mut value = Rat::from_integer(num);
            // A slash directly after an integer continues the literal.
            let mut j = i;
            while j < chars.len() && chars[j] == ' ' {
                j += 1;
            }
            if j < chars.len() && chars[j] == '/' {
                j += 1;
                while j < chars.len() && chars[j] == ' ' {
                    j += 1;
                }
                if j >= chars.len() || !chars[j].is_ascii_digit() {
                    return Err(ParseError::Syntax {
                        col: j + 1,
                        msg: "expected a denominator after `/`".into(),
                    });
                }
                i = j;
                let den: BigInt = digits(&mut i).parse().unwrap();
                if den.is_zero() {
                    return Err(ParseError::Syntax {
                        col: j + 1,
                        msg: "zero denominator".into(),
                    });
                }
                value /= Rat::from_integer(den);
            }
            out.push((Tok::Num(value), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError::Syntax {
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
    params: &'a BTreeMap<String, Rat>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            col: self.col(),
            msg: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump().0 {
            Tok::Num(r) if r.is_integer() && !r.is_negative() => {
                let e: u32 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| ParseError::BadExponent { col })?;
                Ok(base.pow(e))
            }
            Tok::Num(_) | Tok::Minus => Err(ParseError::BadExponent { col }),
            Tok::Ident(_) => Err(ParseError::BadExponent { col }),
            other => Err(ParseError::Syntax {
                col,
                msg: format!("expected an exponent, found {}", describe(&other)),
            }),
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(MPoly::constant(self.vars, r))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Ok(p) = MPoly::var(self.vars, &name) {
                    Ok(p)
                } else if let Some(v) = self.params.get(&name) {
                    Ok(MPoly::constant(self.vars, v.clone()))
                } else {
                    Err(ParseError::UnknownVariable { col, name })
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

/// Parses `src` as a polynomial over `vars`.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<MPoly, ParseError> {
    parse_poly_with(src, vars, &BTreeMap::new())
}

/// Parses with named rational parameters; a name that is both a variable and
/// a parameter resolves to the variable.
pub fn parse_poly_with(
    src: &str,
    vars: &Vars,
    params: &BTreeMap<String, Rat>,
) -> Result<MPoly, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        vars,
        params,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}
