use super::{Atom, BinOp, Expr, ExprKind, Span};
use crate::error::{Error, Result};
use crate::projections::Side;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    Comma,
    Op(BinOp),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

/// Offsets in errors are 1-based byte positions.
fn syntax(start: usize, expected: &str) -> Error {
    Error::Syntax { offset: start + 1, expected: expected.to_string() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, ch)) = chars.next() {
        let single = |tok| Token { tok, start, end: start + ch.len_utf8() };
        match ch {
            c if c.is_whitespace() => {}
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            ',' => out.push(single(Tok::Comma)),
            '.' | '∘' => out.push(single(Tok::Op(BinOp::Compose))),
            '#' | '⊗' => out.push(single(Tok::Op(BinOp::Tensor))),
            '*' => out.push(single(Tok::Op(BinOp::Convolve))),
            c if c.is_ascii_digit() => {
                let mut end = start + 1;
                while let Some((i, d)) = chars.peek().copied().filter(|(_, d)| d.is_ascii_digit()) {
                    end = i + d.len_utf8();
                    chars.next();
                }
                let n = text[start..end].parse().map_err(|_| syntax(start, "a small integer"))?;
                out.push(Token { tok: Tok::Int(n), start, end });
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = start + 1;
                while let Some((i, d)) = chars.peek().copied().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                    end = i + d.len_utf8();
                    chars.next();
                }
                out.push(Token { tok: Tok::Ident(text[start..end].to_string()), start, end });
            }
            _ => return Err(syntax(start, "an atom, operator or parenthesis")),
        }
    }
    out.push(Token { tok: Tok::End, start: text.len(), end: text.len() });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        match self.peek().tok == tok {
            true => Ok(self.bump()),
            false => Err(syntax(self.peek().start, what)),
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(syntax(self.peek().start, "an integer")),
        }
    }

    /// One precedence level: `next (op next)*`, left-associative.
    fn level(&mut self, op: BinOp, next: fn(&mut Parser) -> Result<Expr>) -> Result<Expr> {
        let mut lhs = next(self)?;
        while self.peek().tok == Tok::Op(op) {
            self.bump();
            let rhs = next(self)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn convolution(&mut self) -> Result<Expr> {
        self.level(BinOp::Convolve, Parser::tensor)
    }

    fn tensor(&mut self) -> Result<Expr> {
        self.level(BinOp::Tensor, Parser::composition)
    }

    fn composition(&mut self) -> Result<Expr> {
        self.level(BinOp::Compose, Parser::primary)
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.bump();
        let atom = match t.tok {
            Tok::LParen => {
                let inner = self.convolution()?;
                let close = self.expect(Tok::RParen, "')'")?;
                return Ok(Expr { kind: inner.kind, span: Span { start: t.start, end: close.end } });
            }
            Tok::Ident(name) => match name.as_str() {
                "id" => {
                    self.expect(Tok::LParen, "'('")?;
                    let n = self.int()?;
                    Atom::Id(n)
                }
                "swap" => {
                    self.expect(Tok::LParen, "'('")?;
                    let total = self.int()?;
                    self.expect(Tok::Comma, "','")?;
                    let pos = self.int()?;
                    Atom::Swap { total, pos }
                }
                "omega" => {
                    self.expect(Tok::LParen, "'('")?;
                    let at = self.peek().start;
                    let side = match self.bump().tok {
                        Tok::Ident(s) if s == "L" => Side::L,
                        Tok::Ident(s) if s == "R" => Side::R,
                        _ => return Err(syntax(at, "L or R")),
                    };
                    self.expect(Tok::Comma, "','")?;
                    let at = self.peek().start;
                    let index = match self.int()? {
                        1 => 1,
                        2 => 2,
                        _ => return Err(syntax(at, "1 or 2")),
                    };
                    Atom::Omega { side, index }
                }
                other => {
                    let atom = Atom::from_name(other).ok_or_else(|| Error::UnknownAtom {
                        offset: t.start + 1,
                        name: other.to_string(),
                    })?;
                    return Ok(Expr { kind: ExprKind::Atom(atom), span: Span { start: t.start, end: t.end } });
                }
            },
            _ => return Err(syntax(t.start, "an atom or '('")),
        };
        let close = self.expect(Tok::RParen, "')'")?;
        Ok(Expr { kind: ExprKind::Atom(atom), span: Span { start: t.start, end: close.end } })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let e = p.convolution()?;
    match p.peek().tok {
        Tok::End => Ok(e),
        _ => Err(syntax(p.peek().start, "an operator or end of input")),
    }
}
