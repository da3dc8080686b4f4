//! A small expression language for truncated series in `t`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" nat)?
//! atom   := int | "t" | "(" expr ")" | func "(" expr ")"
//! func   := "exp" | "log" | "inv" | "rev"
//! ```
//!
//! A rational literal `p/q` is read as the quotient of two integer
//! literals. There is no implicit multiplication: `2t` is rejected, write
//! `2*t`.

mod eval;
mod parser;

use std::fmt;

use num_traits::{One, Signed};

use crate::rational::Rational;

pub use eval::{eval, eval_str, EvalError, ExprError};
pub use parser::{parse, SyntaxError};

/// Text that describes the grammar, suitable for usage messages.
pub const GRAMMAR: &str = "\
expr   := term ((\"+\" | \"-\") term)*
term   := factor ((\"*\" | \"/\") factor)*
factor := \"-\" factor | atom (\"^\" nat)?
atom   := int | \"t\" | \"(\" expr \")\" | func \"(\" expr \")\"
func   := \"exp\" | \"log\" | \"inv\" | \"rev\"";

/// Byte range `[start, end)` in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            Self::Add => '+',
            Self::Sub => '-',
            Self::Mul => '*',
            Self::Div => '/',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    /// Multiplicative inverse.
    Inv,
    /// Compositional inverse.
    Rev,
}

impl Func {
    pub const ALL: [Func; 4] = [Func::Exp, Func::Log, Func::Inv, Func::Rev];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exp => "exp",
            Self::Log => "log",
            Self::Inv => "inv",
            Self::Rev => "rev",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Num(Rational),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

/// A parsed series expression. Equality compares structure only, not spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Self { kind, span }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Num(a), Num(b)) => a == b,
            (Var, Var) => true,
            (Neg(a), Neg(b)) => a == b,
            (Binary(o1, l1, r1), Binary(o2, l2, r2)) => o1 == o2 && l1 == l2 && r1 == r2,
            (Pow(b1, e1), Pow(b2, e2)) => e1 == e2 && b1 == b2,
            (Call(f1, a1), Call(f2, a2)) => f1 == f2 && a1 == a2,
            _ => false,
        }
    }
}

impl Eq for Expr {}

fn is_atomic(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Num(r) => r.denom().is_one() && !r.is_negative(),
        ExprKind::Var | ExprKind::Call(..) => true,
        _ => false,
    }
}

struct Wrapped<'a>(&'a Expr);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_atomic(self.0) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Prints in the input grammar; parsing the output yields an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Num(r) if r.denom().is_one() && !r.is_negative() => write!(f, "{r}"),
            ExprKind::Num(r) => {
                // only reachable for trees built by hand
                let abs = r.abs();
                let sign = if r.is_negative() { "-" } else { "" };
                if abs.denom().is_one() {
                    write!(f, "{sign}{abs}")
                } else {
                    write!(f, "{sign}{}/{}", abs.numer(), abs.denom())
                }
            }
            ExprKind::Var => write!(f, "t"),
            ExprKind::Neg(inner) => write!(f, "-{}", Wrapped(inner)),
            ExprKind::Binary(op, l, r) => write!(f, "{} {} {}", Wrapped(l), op.symbol(), Wrapped(r)),
            ExprKind::Pow(base, e) => write!(f, "{}^{e}", Wrapped(base)),
            ExprKind::Call(func, arg) => write!(f, "{}({})", func.name(), arg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..50).prop_map(|n| Expr::new(ExprKind::Num(crate::rational::int(n as i64)), Span::default())),
            Just(Expr::new(ExprKind::Var, Span::default())),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            let b = |k| Box::new(k);
            prop_oneof![
                inner.clone().prop_map(move |e| Expr::new(ExprKind::Neg(b(e)), Span::default())),
                (inner.clone(), inner.clone(), 0..4usize).prop_map(|(l, r, op)| {
                    let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][op];
                    Expr::new(ExprKind::Binary(op, Box::new(l), Box::new(r)), Span::default())
                }),
                (inner.clone(), 0u32..5).prop_map(|(e, k)| Expr::new(ExprKind::Pow(Box::new(e), k), Span::default())),
                (inner, 0..4usize).prop_map(|(e, f)| {
                    Expr::new(ExprKind::Call(Func::ALL[f], Box::new(e)), Span::default())
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(e in arb_expr()) {
            let text = e.to_string();
            let parsed = parse(&text).unwrap();
            prop_assert_eq!(parsed, e);
        }

        #[test]
        fn error_offsets_stay_in_bounds(s in "[t0-9()+*/^ex-]{0,16}") {
            if let Err(err) = parse(&s) {
                prop_assert!(err.offset <= s.len());
            }
        }
    }
}
