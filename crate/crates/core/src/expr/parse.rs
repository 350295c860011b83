//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" UINT)?
//! atom   := NUMBER | "eps" | VAR | FUNC "(" expr ")" | "(" expr ")"
//! VAR    := "x" UINT            (1-based)
//! FUNC   := "exp" | "sin" | "cos"
//! ```
//!
//! `^` binds tighter than unary minus, so `-x1^2` is `-(x1^2)`.

use std::sync::Arc;

use super::{build, Expr, Node, NodeRef, Prim};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only if digits follow, so `2eps` is not eaten
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                if lit == "." {
                    return Err(Error::Syntax { pos: start, msg: "stray '.'".into() });
                }
                out.push((start, Tok::Num(lit.to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character {ch:?}") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, T> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    arity: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: Real> Parser<'_, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<R>(&self, msg: impl Into<String>) -> Result<R> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<NodeRef<T>> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = build::add(lhs, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = build::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<NodeRef<T>> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            lhs = build::mul(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<NodeRef<T>> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(build::neg(self.unary()?));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<NodeRef<T>> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        match self.peek() {
            Some(Tok::Num(s)) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let k: u32 = s.parse().or_else(|_| self.err("exponent too large"))?;
                self.at += 1;
                Ok(build::pow(base, k))
            }
            _ => self.err("expected non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<NodeRef<T>> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(s) => {
                let v: T = s.parse().or_else(|_| self.err(format!("bad number {s:?}")))?;
                self.at += 1;
                Ok(build::konst(Dual::from_real(v)))
            }
            Tok::LParen => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let prim = match name.as_str() {
                    "eps" => {
                        self.at += 1;
                        return Ok(build::konst(Dual::new(T::zero(), T::one())));
                    }
                    "exp" => Some(Prim::Exp),
                    "sin" => Some(Prim::Sin),
                    "cos" => Some(Prim::Cos),
                    _ => None,
                };
                if let Some(p) = prim {
                    self.at += 1;
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(build::prim(p, arg));
                }
                let digits = name.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
                match digits {
                    Some(d) => {
                        let index: usize = d.parse().or_else(|_| self.err("variable index too large"))?;
                        if index == 0 || index > self.arity {
                            return Err(Error::VarOutOfRange { index, arity: self.arity });
                        }
                        self.at += 1;
                        Ok(Arc::new(Node::Var(index - 1)))
                    }
                    None => self.err(format!("unknown identifier {name:?}")),
                }
            }
            _ => self.err("expected a number, variable, function or '('"),
        }
    }
}

/// Parses `text` as a function of `arity` variables `x1..x{arity}`.
pub fn parse_expr<T: Real>(text: &str, arity: usize) -> Result<Expr<T>> {
    let toks = tokenize(text)?;
    let mut p = Parser::<T> { toks: &toks, at: 0, end: text.len(), arity, _marker: Default::default() };
    let root = p.expr()?;
    if p.at != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(Expr::from_node(root, arity))
}
