use std::fmt;

use super::{parse, BinOp, Expr, ExprKind, Func, Span, SyntaxError};
use crate::error::Error;
use crate::series::TruncatedSeries;

/// A domain error from the series kernel, tagged with the span of the
/// subexpression that triggered it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub span: Span,
    pub error: Error,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at bytes {}..{})", self.error, self.span.start, self.span.end)
    }
}

impl std::error::Error for EvalError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

fn tag(span: Span) -> impl FnOnce(Error) -> EvalError {
    move |error| EvalError { span, error }
}

/// Evaluates to a truncated series of the given order.
pub fn eval(e: &Expr, order: usize) -> Result<TruncatedSeries, EvalError> {
    Ok(match &e.kind {
        ExprKind::Num(r) => TruncatedSeries::constant(r.clone(), order),
        ExprKind::Var => TruncatedSeries::identity(order),
        ExprKind::Neg(inner) => -&eval(inner, order)?,
        ExprKind::Binary(op, l, r) => {
            let a = eval(l, order)?;
            let b = eval(r, order)?;
            match op {
                BinOp::Add => &a + &b,
                BinOp::Sub => &a - &b,
                BinOp::Mul => a.mul(&b),
                BinOp::Div => a.mul(&b.mul_inverse().map_err(tag(r.span))?),
            }
        }
        ExprKind::Pow(base, k) => eval(base, order)?.pow(*k as usize),
        ExprKind::Call(func, arg) => {
            let a = eval(arg, order)?;
            match func {
                Func::Exp => a.exp_series(),
                Func::Log => a.log_series(),
                Func::Inv => a.mul_inverse(),
                Func::Rev => a.comp_inverse(),
            }
            .map_err(tag(e.span))?
        }
    })
}

/// Either stage of [`eval_str`] failing.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Eval(#[from] EvalError),
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, order: usize) -> Result<TruncatedSeries, ExprError> {
    Ok(eval(&parse(text)?, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_series() {
        assert_eq!(eval_str("t", 5).unwrap(), TruncatedSeries::identity(5));
    }

    #[test]
    fn exp_minus_one() {
        let s = eval_str("exp(t)-1", 5).unwrap();
        assert_eq!(s.egf_coeffs(), [0, 1, 1, 1, 1, 1].map(int));
    }

    #[test]
    fn geometric() {
        let s = eval_str("t/(1-t)", 4).unwrap();
        assert_eq!(s.coeffs(), [0, 1, 1, 1, 1].map(int));
    }

    #[test]
    fn reversion_of_exp_minus_one_is_log() {
        for n in 1..=12 {
            assert_eq!(eval_str("rev(exp(t)-1)", n).unwrap(), eval_str("log(1+t)", n).unwrap());
        }
    }

    #[test]
    fn rational_literal_and_powers() {
        let s = eval_str("1/2*t^2 - -3", 3).unwrap();
        assert_eq!(s.coeffs(), &[int(3), int(0), crate::rational::rat(1, 2), int(0)]);
        assert_eq!(eval_str("inv(1-t)", 3).unwrap().coeffs(), [1, 1, 1, 1].map(int));
    }

    #[test]
    fn domain_errors_carry_spans() {
        let text = "1 + exp(1+t)";
        let Err(ExprError::Eval(err)) = eval_str(text, 4) else { panic!() };
        assert_eq!(err.error, Error::NonzeroConstantTerm);
        assert_eq!(&text[err.span.start..err.span.end], "exp(1+t)");

        let text = "t/(t+t^2)";
        let Err(ExprError::Eval(err)) = eval_str(text, 4) else { panic!() };
        assert_eq!(err.error, Error::ZeroConstantTerm);
        assert_eq!(&text[err.span.start..err.span.end], "(t+t^2)");

        for (text, expected) in [
            ("log(2+t)", Error::ConstantTermNotOne),
            ("rev(t^2)", Error::NotDeltaSeries),
            ("inv(t)", Error::ZeroConstantTerm),
        ] {
            let Err(ExprError::Eval(err)) = eval_str(text, 4) else { panic!() };
            assert_eq!(err.error, expected);
            assert!(err.span.end <= text.len());
        }
    }
}
