//! Exact arithmetic: rationals, power products, flat sparse polynomials and
//! the two-block parametric ring.

pub mod gcd;
pub mod monomial;
pub mod param;
pub mod parse;
pub mod poly;

use thiserror::Error;

pub use gcd::gcd;
pub use monomial::{Block, Exp, Monomial, MonomialOrder, OrderKind, TermOrder};
pub use param::{content_normalize, lc, lpp, ParamPoly, Ring};
pub use parse::{parse_param, parse_poly};
pub use poly::{q, q_frac, Poly, PolyRing, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("leading data of the zero polynomial")]
    ZeroPolynomial,
    #[error("ring has no indeterminates")]
    EmptyRing,
    #[error("name '{0}' declared twice")]
    DuplicateName(String),
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
