//! A small language for morphism expressions built from the structure maps.
//!
//! `.` (or `∘`) composes, `#` (or `⊗`) tensors and `*` convolves; composition
//! binds tightest and convolution loosest. All three are left-associative.

mod eval;
mod parse;

use std::fmt;

use crate::projections::Side;

pub use eval::{eval_expr, Evaluator};
pub use parse::parse_expr;

/// Byte range `[start, end)` of a node in the source text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Id(usize),
    Eta,
    Mu,
    Eps,
    Delta,
    Lambda,
    /// Swap of factors `pos` and `pos + 1` in `H^⊗total`.
    Swap { total: usize, pos: usize },
    PiL,
    PiR,
    PiLBar,
    PiRBar,
    Omega { side: Side, index: u8 },
    Beta,
    Gamma,
    BetaBar,
    GammaBar,
}

impl Atom {
    pub(crate) fn from_name(name: &str) -> Option<Atom> {
        Some(match name {
            "eta" => Atom::Eta,
            "mu" => Atom::Mu,
            "eps" => Atom::Eps,
            "delta" => Atom::Delta,
            "lambda" => Atom::Lambda,
            "piL" => Atom::PiL,
            "piR" => Atom::PiR,
            "piLbar" => Atom::PiLBar,
            "piRbar" => Atom::PiRBar,
            "beta" => Atom::Beta,
            "gamma" => Atom::Gamma,
            "betabar" => Atom::BetaBar,
            "gammabar" => Atom::GammaBar,
            _ => return None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Id(n) => write!(f, "id({n})"),
            Atom::Eta => f.write_str("eta"),
            Atom::Mu => f.write_str("mu"),
            Atom::Eps => f.write_str("eps"),
            Atom::Delta => f.write_str("delta"),
            Atom::Lambda => f.write_str("lambda"),
            Atom::Swap { total, pos } => write!(f, "swap({total},{pos})"),
            Atom::PiL => f.write_str("piL"),
            Atom::PiR => f.write_str("piR"),
            Atom::PiLBar => f.write_str("piLbar"),
            Atom::PiRBar => f.write_str("piRbar"),
            Atom::Omega { side, index } => write!(f, "omega({},{index})", side.name()),
            Atom::Beta => f.write_str("beta"),
            Atom::Gamma => f.write_str("gamma"),
            Atom::BetaBar => f.write_str("betabar"),
            Atom::GammaBar => f.write_str("gammabar"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Compose,
    Tensor,
    Convolve,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Compose => 3,
            BinOp::Tensor => 2,
            BinOp::Convolve => 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Compose => ".",
            BinOp::Tensor => "#",
            BinOp::Convolve => "*",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Atom(Atom),
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

/// Equality ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn atom(atom: Atom) -> Expr {
        Expr { kind: ExprKind::Atom(atom), span: Span::default() }
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        let span = Span { start: lhs.span.start, end: rhs.span.end };
        Expr { kind: ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Atom(_) => u8::MAX,
            ExprKind::Binary { op, .. } => op.precedence(),
        }
    }
}

/// Canonical ASCII form with the fewest parentheses that re-parse to the
/// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Atom(a) => write!(f, "{a}"),
            ExprKind::Binary { op, lhs, rhs } => {
                let p = op.precedence();
                match lhs.precedence() < p {
                    true => write!(f, "({lhs})")?,
                    false => write!(f, "{lhs}")?,
                }
                write!(f, " {} ", op.symbol())?;
                match rhs.precedence() <= p {
                    true => write!(f, "({rhs})"),
                    false => write!(f, "{rhs}"),
                }
            }
        }
    }
}
