//! Lexer and recursive-descent parser.
//!
//! ```text
//! script  := stmt*
//! stmt    := "ring" NAME "=" ( "[" NAME ("," NAME)* "]" | "join" "(" NAME "," NAME ")" ) ";"
//!          | "ideal" NAME "=" expr ("in" NAME)? ";"
//!          | "use" NAME ";" | "print" expr ";" | "assert" expr ";"
//! expr    := sum (("==" | "!=" | "<=") sum)?
//! sum     := product ("+" product)*
//! product := power ("*" power)*
//! power   := atom ("^" atom)?
//! atom    := INT | NAME | NAME "(" args ")" | "(" expr ("," expr)* ")"
//! ```
//! `#` starts a comment running to the end of the line.

use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, RingDef, Script, Stmt, StmtKind, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

const SYMBOLS: [&str; 13] = ["==", "!=", "<=", "(", ")", "[", "]", ",", ";", "=", "+", "*", "^"];

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut line_start) = (0, 1, 0);
    let span_at = |start: usize, end: usize, line: usize, line_start: usize| Span {
        start,
        end,
        line,
        col: src[line_start..start].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), span_at(start, i, line, line_start)));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = span_at(start, i, line, line_start);
            let n = src[start..i]
                .parse()
                .map_err(|_| ParseError { span, message: format!("integer `{}` is too large", &src[start..i]) })?;
            out.push((Tok::Int(n), span));
        } else if let Some(sym) = SYMBOLS.iter().find(|s| src[i..].starts_with(**s)) {
            out.push((Tok::Sym(sym), span_at(i, i + sym.len(), line, line_start)));
            i += sym.len();
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ParseError {
                span: span_at(i, i + ch.len_utf8(), line, line_start),
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((Tok::Eof, span_at(src.len(), src.len(), line, line_start)));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<Span, ParseError> {
        let span = self.span();
        if self.eat(sym) {
            Ok(span)
        } else {
            self.error(&format!("`{sym}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().1;
                Ok((s, span))
            }
            _ => self.error("a name"),
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let start = self.span();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.error("a statement"),
        };
        let kind = match kw.as_str() {
            "ring" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect("=")?;
                let def = if self.eat("[") {
                    let mut vars = vec![self.ident()?.0];
                    while self.eat(",") {
                        vars.push(self.ident()?.0);
                    }
                    self.expect("]")?;
                    RingDef::Vars(vars)
                } else if self.keyword("join") {
                    self.bump();
                    self.expect("(")?;
                    let a = self.ident()?.0;
                    self.expect(",")?;
                    let b = self.ident()?.0;
                    self.expect(")")?;
                    RingDef::Join(a, b)
                } else {
                    return self.error("`[` or `join`");
                };
                StmtKind::Ring(name, def)
            }
            "ideal" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect("=")?;
                let e = self.expr()?;
                let ring = if self.keyword("in") {
                    self.bump();
                    Some(self.ident()?.0)
                } else {
                    None
                };
                StmtKind::Ideal(name, e, ring)
            }
            "use" => {
                self.bump();
                StmtKind::Use(self.ident()?.0)
            }
            "print" => {
                self.bump();
                StmtKind::Print(self.expr()?)
            }
            "assert" => {
                self.bump();
                StmtKind::Assert(self.expr()?)
            }
            _ => return self.error("`ring`, `ideal`, `use`, `print` or `assert`"),
        };
        let end = self.expect(";")?;
        Ok(Stmt { kind, span: Span { end: end.end, ..start } })
    }

    fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        let span = Span { end: r.span.end, ..l.span };
        Expr { kind: ExprKind::Binary(op, Box::new(l), Box::new(r)), span }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let l = self.sum()?;
        let op = match self.peek() {
            Tok::Sym("==") => BinOp::Eq,
            Tok::Sym("!=") => BinOp::Ne,
            Tok::Sym("<=") => BinOp::Le,
            _ => return Ok(l),
        };
        self.bump();
        let r = self.sum()?;
        if matches!(self.peek(), Tok::Sym("==" | "!=" | "<=")) {
            return self.error("`;` (comparisons do not chain)");
        }
        Ok(Self::binary(op, l, r))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut l = self.product()?;
        while self.eat("+") {
            let r = self.product()?;
            l = Self::binary(BinOp::Add, l, r);
        }
        Ok(l)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut l = self.power()?;
        while self.eat("*") {
            let r = self.power()?;
            l = Self::binary(BinOp::Mul, l, r);
        }
        Ok(l)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat("^") {
            let exp = self.atom()?;
            if matches!(self.peek(), Tok::Sym("^")) {
                return self.error("an operator other than `^` (powers do not chain)");
            }
            return Ok(Self::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<(Vec<Expr>, Span), ParseError> {
        let mut items = vec![self.expr()?];
        while self.eat(",") {
            items.push(self.expr()?);
        }
        let close = self.expect(")")?;
        Ok((items, close))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Int(n), span })
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat("(") {
                    let (args, close) = if matches!(self.peek(), Tok::Sym(")")) {
                        (Vec::new(), self.bump().1)
                    } else {
                        self.args()?
                    };
                    Ok(Expr { kind: ExprKind::Call(name, args), span: Span { end: close.end, ..span } })
                } else {
                    Ok(Expr { kind: ExprKind::Name(name), span })
                }
            }
            Tok::Sym("(") => {
                self.bump();
                let (mut items, close) = self.args()?;
                if items.len() == 1 {
                    let mut e = items.pop().expect("one item");
                    e.span = Span { end: close.end, ..span };
                    Ok(e)
                } else {
                    Ok(Expr { kind: ExprKind::List(items), span: Span { end: close.end, ..span } })
                }
            }
            _ => self.error("an expression"),
        }
    }
}

pub fn parse(src: &str) -> Result<Script, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let mut statements = Vec::new();
    while *p.peek() != Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Parses a single expression, for tests and the REPL.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(e)
}
