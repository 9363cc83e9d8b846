//! Cell formulas: a small arithmetic language over numbers and cell names.

use std::fmt;

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    /// Applies the operator. Division by zero is an error for every scalar.
    pub fn apply<N: Scalar>(self, lhs: N, rhs: N) -> Result<N> {
        Ok(match self {
            BinOp::Add => lhs + rhs,
            BinOp::Sub => lhs - rhs,
            BinOp::Mul => lhs * rhs,
            BinOp::Div => {
                if rhs.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                lhs / rhs
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula<N> {
    Num(N),
    Cell(String),
    Neg(Box<Formula<N>>),
    Binary(BinOp, Box<Formula<N>>, Box<Formula<N>>),
}

impl<N: Scalar> Formula<N> {
    pub fn cell(name: &str) -> Self {
        Formula::Cell(name.to_owned())
    }

    pub fn binary(op: BinOp, lhs: Formula<N>, rhs: Formula<N>) -> Self {
        Formula::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Names of every cell the formula mentions, in order of appearance.
    pub fn references(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Num(_) => {}
            Formula::Cell(name) => out.push(name),
            Formula::Neg(inner) => inner.collect_refs(out),
            Formula::Binary(_, l, r) => {
                l.collect_refs(out);
                r.collect_refs(out);
            }
        }
    }
}

impl<N: Scalar> fmt::Display for Formula<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand<N: Scalar>(f: &mut fmt::Formatter<'_>, x: &Formula<N>) -> fmt::Result {
            match x {
                Formula::Binary(..) => write!(f, "({x})"),
                _ => write!(f, "{x}"),
            }
        }
        match self {
            Formula::Num(n) => write!(f, "{}", n.clone().canonical()),
            Formula::Cell(name) => f.write_str(name),
            Formula::Neg(inner) => {
                f.write_str("-")?;
                operand(f, inner)
            }
            Formula::Binary(op, l, r) => {
                operand(f, l)?;
                write!(f, " {} ", op.symbol())?;
                operand(f, r)
            }
        }
    }
}

pub fn is_cell_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Num(&'a str),
    Ident(&'a str),
    Op(char),
    Open,
    Close,
    End,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    peeked: Option<(usize, Tok<'a>)>,
}

fn column(text: &str, byte: usize) -> usize {
    text[..byte].chars().count() + 1
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: column(self.text, at),
            message: message.into(),
        })
    }

    fn lex(&mut self) -> Result<(usize, Tok<'a>)> {
        let rest = &self.text[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        self.pos += skipped;
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((start, Tok::End));
        };
        let take = |pred: fn(char) -> bool| {
            rest.char_indices()
                .find(|&(_, c)| !pred(c))
                .map_or(rest.len(), |(i, _)| i)
        };
        let (len, tok) = if c.is_ascii_digit() || c == '.' {
            let n = take(|c| c.is_ascii_digit() || c == '.');
            (n, Tok::Num(&rest[..n]))
        } else if c.is_ascii_alphabetic() {
            let n = take(|c| c.is_ascii_alphanumeric());
            (n, Tok::Ident(&rest[..n]))
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' => Tok::Op(c),
                '(' => Tok::Open,
                ')' => Tok::Close,
                _ => return self.err(start, format!("unexpected character `{c}`")),
            };
            (c.len_utf8(), tok)
        };
        self.pos += len;
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<&(usize, Tok<'a>)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(usize, Tok<'a>)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn expr<N: Scalar>(&mut self) -> Result<Formula<N>> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek()?.1 {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next()?;
            lhs = Formula::binary(op, lhs, self.term()?);
        }
    }

    fn term<N: Scalar>(&mut self) -> Result<Formula<N>> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek()?.1 {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next()?;
            lhs = Formula::binary(op, lhs, self.unary()?);
        }
    }

    fn unary<N: Scalar>(&mut self) -> Result<Formula<N>> {
        if self.peek()?.1 == Tok::Op('-') {
            self.next()?;
            return Ok(Formula::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary<N: Scalar>(&mut self) -> Result<Formula<N>> {
        let (at, tok) = self.next()?;
        match tok {
            Tok::Num(text) => match N::parse_decimal(text) {
                Some(n) => Ok(Formula::Num(n)),
                None => self.err(at, format!("invalid number `{text}`")),
            },
            Tok::Ident(name) => Ok(Formula::cell(name)),
            Tok::Open => {
                let inner = self.expr()?;
                match self.next()? {
                    (_, Tok::Close) => Ok(inner),
                    (at, _) => self.err(at, "expected `)`"),
                }
            }
            Tok::End => self.err(at, "unexpected end of formula"),
            Tok::Close | Tok::Op(_) => self.err(at, "expected a number, cell or `(`"),
        }
    }
}

/// Parses a formula. `*` and `/` bind tighter than `+` and `-`, all four
/// associate left, and unary minus binds tightest.
pub fn parse_formula<N: Scalar>(text: &str) -> Result<Formula<N>> {
    let mut p = Parser {
        text,
        pos: 0,
        peeked: None,
    };
    let formula = p.expr()?;
    match p.next()? {
        (_, Tok::End) => Ok(formula),
        (at, _) => p.err(at, "unexpected input after formula"),
    }
}
