//! Syntax tree of the scripting language and its canonical printer.

use std::fmt;

/// Byte range of a node in its source text, with the 1-based line and
/// column of its start.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

/// Spans never take part in tree equality, so a reparsed printout compares
/// equal to the original.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Mul,
    Pow,
    Eq,
    Ne,
    Le,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Mul => "*",
            BinOp::Pow => "^",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Le => "<=",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Eq | BinOp::Ne | BinOp::Le => 1,
            BinOp::Add => 2,
            BinOp::Mul => 3,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(u64),
    Name(String),
    /// `(e1, …, en)` with `n ≥ 2`: the sum of its elements.
    List(Vec<Expr>),
    Call(String, Vec<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDef {
    Vars(Vec<String>),
    Join(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring(String, RingDef),
    Ideal(String, Expr, Option<String>),
    Use(String),
    Print(Expr),
    Assert(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parent: BinOp, right: bool) -> fmt::Result {
    let wrap = match &child.kind {
        ExprKind::Binary(op, ..) => {
            let (c, p) = (op.precedence(), parent.precedence());
            // `+`, `*` are left-associative; `^` and comparisons do not chain
            c < p || (c == p && (right || matches!(parent, BinOp::Pow | BinOp::Eq | BinOp::Ne | BinOp::Le)))
        }
        _ => false,
    };
    if wrap {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Name(n) => f.write_str(n),
            ExprKind::List(items) | ExprKind::Call(_, items) => {
                if let ExprKind::Call(name, _) = &self.kind {
                    f.write_str(name)?;
                }
                f.write_str("(")?;
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            ExprKind::Binary(op, l, r) => {
                write_child(f, l, *op, false)?;
                match op {
                    BinOp::Pow | BinOp::Mul => f.write_str(op.symbol())?,
                    _ => write!(f, " {} ", op.symbol())?,
                }
                write_child(f, r, *op, true)
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Ring(name, RingDef::Vars(vars)) => write!(f, "ring {name} = [{}];", vars.join(", ")),
            StmtKind::Ring(name, RingDef::Join(a, b)) => write!(f, "ring {name} = join({a}, {b});"),
            StmtKind::Ideal(name, e, None) => write!(f, "ideal {name} = {e};"),
            StmtKind::Ideal(name, e, Some(r)) => write!(f, "ideal {name} = {e} in {r};"),
            StmtKind::Use(r) => write!(f, "use {r};"),
            StmtKind::Print(e) => write!(f, "print {e};"),
            StmtKind::Assert(e) => write!(f, "assert {e};"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
