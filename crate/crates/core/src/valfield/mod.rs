//! Exact scalars of `Q` (trivially valued) and `Q(t^{1/d})` with the
//! `t`-adic valuation, plus a parser for scalar expressions.

mod ext;
mod parse;
mod poly;
mod puiseux;

pub use ext::ExtRat;
pub use parse::{infer_denominator, parse_scalar};
pub use poly::LaurentPoly;
pub use puiseux::{Puiseux, ValuedField};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValFieldError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("exponent {exponent} at position {pos} is not in (1/{d})Z")]
    ExponentDenominator { pos: usize, exponent: String, d: u32 },
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("division by the zero scalar at position {pos}")]
    DivisionByZeroAt { pos: usize },
    #[error("cannot rebase from d={from} to d={to}: {from} does not divide {to}")]
    RebaseIndivisible { from: u32, to: u32 },
    #[error("denominator index d must be positive")]
    ZeroDenominator,
    #[error("exponent too large")]
    ExponentTooLarge,
}
