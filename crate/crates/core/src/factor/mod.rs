//! Squarefree decomposition and factorization into irreducibles over `Q`.

pub mod modp;
pub mod multivariate;
pub mod univariate;

use std::cmp::Ordering;

use thiserror::Error;

use crate::arith::gcd::{content_in, gcd};
use crate::arith::{Poly, Q};

pub use univariate::{factor_univariate, rational_roots};

pub const DEFAULT_DEGREE_BOUND: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("factorization of {poly} not certified (total degree {degree}, bound {bound})")]
    DegreeBoundExceeded { poly: String, degree: u32, bound: u32 },
}

/// `unit * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, template: &Poly) -> Poly {
        let mut acc = Poly::constant(template.ring(), self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Canonical factor order: total degree, then the term order.
pub fn cmp_factor(a: &Poly, b: &Poly) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.cmp_canonical(b))
}

/// Yun's algorithm in `v` for `f` primitive with respect to `v`.
fn yun(f: &Poly, v: usize) -> Vec<(Poly, u32)> {
    let df = f.derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative(v);
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative(v);
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        i += 1;
    }
    out
}

/// Squarefree decomposition: pairwise coprime squarefree primitive parts
/// with their multiplicities. The unit is dropped.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let v = f.vars()[0];
    let c = content_in(f, v);
    let pp = f.div_exact(&c).unwrap();
    let mut out = squarefree_decomposition(&c);
    for (g, e) in yun(&pp, v) {
        // the content and the primitive part are coprime
        out.push((g, e));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_factor(&a.0, &b.0)));
    out
}

pub fn squarefree_part(f: &Poly) -> Result<Poly, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut acc = Poly::one(f.ring());
    for (g, _) in squarefree_decomposition(f) {
        acc = &acc * &g;
    }
    Ok(acc.primitive())
}

/// Irreducible factors of a squarefree polynomial. Pieces that cannot be
/// certified within the degree bound are kept whole and reported.
fn split(f: &Poly, bound: u32, out: &mut Vec<Poly>, uncertified: &mut Vec<Poly>) {
    if f.is_constant() {
        return;
    }
    let vars = f.vars();
    if vars.len() == 1 {
        out.extend(factor_univariate(f, vars[0]));
        return;
    }
    for &v in &vars {
        let c = content_in(f, v);
        if !c.is_constant() {
            split(&c, bound, out, uncertified);
            split(&f.div_exact(&c).unwrap(), bound, out, uncertified);
            return;
        }
    }
    if vars.iter().any(|&v| f.degree_in(v) == 1) {
        out.push(f.primitive());
        return;
    }
    if f.total_degree() > bound {
        uncertified.push(f.primitive());
        return;
    }
    let y = *vars.iter().min_by_key(|&&v| (f.degree_in(v), v)).unwrap();
    match multivariate::factor_multivariate(f, y) {
        Some(parts) => out.extend(parts),
        None => uncertified.push(f.primitive()),
    }
}

/// Complete factorization over `Q`. Fails with `DegreeBoundExceeded` when a
/// multivariate piece cannot be certified within `bound`.
pub fn factor_irreducible(f: &Poly, bound: u32) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition(f) {
        let mut parts = Vec::new();
        let mut bad = Vec::new();
        split(&g, bound, &mut parts, &mut bad);
        if let Some(b) = bad.first() {
            return Err(FactorError::DegreeBoundExceeded {
                poly: b.to_string(),
                degree: b.total_degree(),
                bound,
            });
        }
        factors.extend(parts.into_iter().map(|p| (p, e)));
    }
    factors.sort_by(|a, b| cmp_factor(&a.0, &b.0));
    let mut prod = Poly::one(f.ring());
    for (g, e) in &factors {
        prod = &prod * &g.pow(*e);
    }
    let unit = f.lc() / prod.lc();
    debug_assert_eq!(&prod.scale(&unit), f);
    Ok(Factorization { unit, factors })
}

/// Distinct irreducible factors in canonical order, together with the
/// pieces kept unfactored because they exceeded the bound.
pub fn irreducible_factors(f: &Poly, bound: u32) -> (Vec<Poly>, Vec<Poly>) {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    if f.is_zero() {
        return (parts, bad);
    }
    for (g, _) in squarefree_decomposition(f) {
        split(&g, bound, &mut parts, &mut bad);
    }
    parts.extend(bad.iter().cloned());
    parts.sort_by(cmp_factor);
    parts.dedup();
    (parts, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_param, Ring};
    use std::sync::Arc;

    fn p(r: &Arc<Ring>, s: &str) -> Poly {
        parse_param(r, s).unwrap()
    }

    fn names(v: &[Poly]) -> Vec<String> {
        v.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn squarefree() {
        let r = Ring::lex(&["a", "b"], &[]);
        assert_eq!(squarefree_part(&p(&r, "a^2*b")).unwrap(), p(&r, "a*b"));
        assert_eq!(
            squarefree_part(&p(&r, "(a+b)^2*(a-b)")).unwrap(),
            p(&r, "(a+b)*(a-b)").primitive()
        );
        assert_eq!(squarefree_part(&p(&r, "a^2 + b")).unwrap(), p(&r, "a^2 + b"));
        assert!(squarefree_part(&p(&r, "0")).is_err());
    }

    #[test]
    fn known_factorizations() {
        let r = Ring::lex(&["a", "b", "c", "d"], &[]);
        let f = factor_irreducible(&p(&r, "a*d - c*b"), 6).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
        let f = factor_irreducible(&p(&r, "a*(a*d - c*b)*c"), 6).unwrap();
        let fs: Vec<Poly> = f.factors.iter().map(|t| t.0.clone()).collect();
        assert_eq!(names(&fs), ["c", "a", "a*d - b*c"]);
        let f = factor_irreducible(&p(&r, "a^2 - b^2"), 6).unwrap();
        let fs: Vec<Poly> = f.factors.iter().map(|t| t.0.clone()).collect();
        assert_eq!(names(&fs), ["a - b", "a + b"]);
    }

    #[test]
    fn multivariate_hensel() {
        let r = Ring::lex(&["a", "b", "c"], &[]);
        let src = "(a^2*b + c^2 + 1)*(a^2 - b*c + 3)*(a^2 + b^2 + c)";
        let f = p(&r, src);
        let fz = factor_irreducible(&f, 6).unwrap_err();
        assert!(matches!(fz, FactorError::DegreeBoundExceeded { .. }));
        let fz = factor_irreducible(&f, 12).unwrap();
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.expand(&f), f);
        let g = p(&r, "(a^2 + b^2 - c^2)^2*(a^2*b^2 - c)");
        let fz = factor_irreducible(&g, 12).unwrap();
        assert_eq!(fz.expand(&g), g);
        assert_eq!(fz.factors.iter().map(|t| t.1).collect::<Vec<_>>(), [2, 1]);
        // irreducible, factors in every image of the form b = const
        let h = p(&r, "a^4 - 10*a^2*b^2 + b^4");
        assert_eq!(factor_irreducible(&h, 6).unwrap().factors.len(), 1);
    }
}
