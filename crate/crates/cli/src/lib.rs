//! Expression parsing and evaluation for the `hplane` command line.

pub mod context;
pub mod expr;

pub use context::{Context, Value, CONTEXTS};
pub use expr::{parse_expr, Expr, Op, ParseError};
