//! Comprehensive Gröbner systems over `Q[a][x]`.

pub mod arith;
pub mod buildtree;
pub mod canspec;
pub mod factor;
pub mod groebner;
pub mod merge;
pub mod primedec;
pub mod spec;

pub use arith::{ArithError, Monomial, OrderKind, ParamPoly, Poly, Ring, Q};
