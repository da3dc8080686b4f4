use std::fmt;

use num_bigint::BigInt;

use super::{BinOp, Expr, ExprKind, Func, Span};
use crate::rational::Rational;

/// Parse failure at a byte offset, with the set of tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected one of {}, found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(n), span: Span::new(start, i) });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..i].to_string()), span: Span::new(start, i) });
        } else if b"+-*/^()".contains(&c) {
            out.push(Token { tok: Tok::Sym(c as char), span: Span::new(i, i + 1) });
            i += 1;
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(SyntaxError {
                offset: i,
                expected: vec!["integer", "t", "function name", "operator", "(", ")"],
                found: format!("`{ch}`"),
            });
        }
    }
    out.push(Token { tok: Tok::End, span: Span::new(text.len(), text.len()) });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

const ATOM_START: &[&str] = &["integer", "t", "exp", "log", "inv", "rev", "(", "-"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError { offset: t.span.start, expected: expected.to_vec(), found: t.tok.to_string() }
    }

    fn eat_sym(&mut self, c: char) -> Option<Span> {
        if self.peek().tok == Tok::Sym(c) {
            Some(self.bump().span)
        } else {
            None
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if let Some(minus) = self.eat_sym('-') {
            let inner = self.factor()?;
            let span = minus.join(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        let base = self.atom()?;
        if self.eat_sym('^').is_none() {
            return Ok(base);
        }
        let t = self.peek();
        match &t.tok {
            Tok::Int(n) => {
                let exp = u32::try_from(n).map_err(|_| self.error(&["exponent below 2^32"]))?;
                let span = base.span.join(t.span);
                self.bump();
                Ok(Expr::new(ExprKind::Pow(Box::new(base), exp), span))
            }
            _ => Err(self.error(&["nonnegative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let t = self.peek();
        let span = t.span;
        match t.tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Num(Rational::from_integer(n)), span))
            }
            Tok::Ident(name) if name == "t" => {
                self.bump();
                Ok(Expr::new(ExprKind::Var, span))
            }
            Tok::Ident(name) => {
                let Some(func) = Func::from_name(&name) else {
                    return Err(self.error(ATOM_START));
                };
                self.bump();
                if self.eat_sym('(').is_none() {
                    return Err(self.error(&["("]));
                }
                let arg = self.expr()?;
                let close = self.eat_sym(')').ok_or_else(|| self.error(&[")", "operator"]))?;
                Ok(Expr::new(ExprKind::Call(func, Box::new(arg)), span.join(close)))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                let close = self.eat_sym(')').ok_or_else(|| self.error(&[")", "operator"]))?;
                Ok(Expr::new(inner.kind, span.join(close)))
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parses a series expression.
pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(&["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn num(n: i64) -> ExprKind {
        ExprKind::Num(int(n))
    }

    #[test]
    fn variable() {
        assert!(matches!(parse("t").unwrap().kind, ExprKind::Var));
    }

    #[test]
    fn exp_minus_one_structure() {
        let e = parse("exp(t)-1").unwrap();
        let ExprKind::Binary(BinOp::Sub, l, r) = &e.kind else { panic!("{e:?}") };
        assert!(matches!(&l.kind, ExprKind::Call(Func::Exp, arg) if matches!(arg.kind, ExprKind::Var)));
        assert!(matches!(&r.kind, ExprKind::Num(n) if *n == int(1)));
        assert_eq!(e.span, Span::new(0, 8));
    }

    #[test]
    fn unclosed_paren() {
        let err = parse("t/(1-t").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.expected.contains(&")"));
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        let err = parse("2t").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 - t - t^2*3 == (1 - t) - ((t^2) * 3)
        let e = parse("1 - t - t^2*3").unwrap();
        let ExprKind::Binary(BinOp::Sub, l, r) = &e.kind else { panic!() };
        assert!(matches!(l.kind, ExprKind::Binary(BinOp::Sub, _, _)));
        let ExprKind::Binary(BinOp::Mul, base, three) = &r.kind else { panic!() };
        assert!(matches!(base.kind, ExprKind::Pow(_, 2)));
        assert!(three.kind_eq(&num(3)));
        // t/2/3 is (t/2)/3
        let e = parse("t/2/3").unwrap();
        let ExprKind::Binary(BinOp::Div, l, _) = &e.kind else { panic!() };
        assert!(matches!(l.kind, ExprKind::Binary(BinOp::Div, _, _)));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("sin(t)").unwrap_err().offset, 0);
        assert_eq!(parse("t^-1").unwrap_err().offset, 2);
        assert_eq!(parse("exp t").unwrap_err().offset, 4);
        assert_eq!(parse("t + $").unwrap_err().offset, 4);
        assert_eq!(parse("(t))").unwrap_err().offset, 3);
    }

    impl Expr {
        fn kind_eq(&self, kind: &ExprKind) -> bool {
            *self == Expr::new(kind.clone(), Span::default())
        }
    }
}
