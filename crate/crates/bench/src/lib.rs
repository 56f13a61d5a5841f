//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use mccgs_core::arith::{parse_param, parse_poly, ParamPoly};
use mccgs_core::groebner::Ideal;
use mccgs_core::{Poly, Ring};

pub struct Fixture {
    pub name: &'static str,
    pub ring: Arc<Ring>,
    pub system: Vec<ParamPoly>,
}

fn fixture(name: &'static str, params: &[&str], vars: &[&str], src: &[&str]) -> Fixture {
    let ring = Ring::lex(params, vars);
    let system = src.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
    Fixture { name, ring, system }
}

pub fn systems() -> Vec<Fixture> {
    vec![
        fixture("two_lines", &["a", "b", "c", "d"], &["x"], &["a*x + b", "c*x + d"]),
        fixture("no_common_basis", &["u"], &["x"], &["u*(u*x + 1)", "(u*x + 1)*x"]),
        fixture(
            "three_cases",
            &["a", "b", "c"],
            &["x", "y"],
            &["a*x^2*y + a + 3*b^2", "a*(b - c)*x*y + a*b*x + 5*c"],
        ),
    ]
}

/// `(⟨ad - cb⟩, ⟨ad - cb, ac⟩)` over `Q[a, b, c, d]`.
pub fn diffspec_ideals() -> (Ideal, Ideal) {
    let ring = Ring::lex(&["a", "b", "c", "d"], &[]);
    let p = |s: &str| -> Poly { parse_param(&ring, s).unwrap() };
    let pr = ring.param_ring();
    (
        Ideal::new(pr, &[p("a*d - c*b")]),
        Ideal::new(pr, &[p("a*d - c*b"), p("a*c")]),
    )
}
