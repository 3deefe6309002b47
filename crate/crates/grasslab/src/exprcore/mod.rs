//! Exact arithmetic: rationals, sparse polynomials, canonical rational
//! functions, and an expression parser.

pub mod expr;
pub mod gcd;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod vars;

pub use expr::Expr;
pub use gcd::{poly_gcd, poly_gcd_many};
pub use mono::Mono;
pub use parse::parse_expr;
pub use poly::MPoly;
pub use rat::Rat;
pub use vars::Vars;

/// Errors raised by the arithmetic layer.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal '{0}'")]
    BadRationalLiteral(String),
    #[error("invalid variable name '{0}'")]
    BadVariableName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}
