//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences.

use super::monomial::Monomial;
use super::poly::{Poly, Q};
use num_traits::One;

/// Pseudo-remainder of `f` by `g` viewing both as univariate in `v`.
pub fn prem(f: &Poly, g: &Poly, v: usize) -> Poly {
    let dg = g.degree_in(v);
    let lcg = g.lc_in(v);
    let mut r = f.clone();
    while !r.is_zero() && r.has_var(v) && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.lc_in(v);
        let mut shift = Monomial::one(f.ring().nvars());
        shift.set_exp(v, dr - dg);
        let t = (&lcr * g).mul_term(&shift, &Q::one());
        r = &(&lcg * &r) - &t;
    }
    if dg == 0 {
        // g is free of v: the remainder is zero
        return Poly::zero(f.ring());
    }
    r
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content_in(f: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(f.ring());
    for c in f.coeffs_in(v).into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Poly::one(f.ring());
        }
    }
    acc
}

/// Primitive part of `f` with respect to `v`, integer-normalized.
pub fn primitive_part_in(f: &Poly, v: usize) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, v);
    if c.is_constant() {
        return f.primitive();
    }
    f.div_exact(&c).expect("content divides").primitive()
}

/// Greatest common divisor, normalized to integer-primitive form with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(f.ring());
    }
    let n = f.ring().nvars();
    let v = (0..n).find(|&i| f.has_var(i) || g.has_var(i)).unwrap();
    match (f.has_var(v), g.has_var(v)) {
        (true, false) => gcd(&content_in(f, v), g),
        (false, true) => gcd(f, &content_in(g, v)),
        _ => {
            let cf = content_in(f, v);
            let cg = content_in(g, v);
            let c = gcd(&cf, &cg);
            let mut a = f.div_exact(&cf).unwrap();
            let mut b = g.div_exact(&cg).unwrap();
            if images_coprime(&a, &b, v) {
                return c;
            }
            if a.degree_in(v) < b.degree_in(v) {
                std::mem::swap(&mut a, &mut b);
            }
            let res = loop {
                let r = prem(&a, &b, v);
                if r.is_zero() {
                    break primitive_part_in(&b, v);
                }
                if !r.has_var(v) {
                    break Poly::one(f.ring());
                }
                a = b;
                b = primitive_part_in(&r, v);
            };
            (&c * &res).primitive()
        }
    }
}

/// True when some evaluation of the other indeterminates keeps both
/// leading coefficients in `v` nonzero and gives coprime images; then `a`
/// and `b`, primitive in `v`, are coprime.
fn images_coprime(a: &Poly, b: &Poly, v: usize) -> bool {
    let n = a.ring().nvars();
    let others: Vec<usize> = (0..n)
        .filter(|&i| i != v && (a.has_var(i) || b.has_var(i)))
        .collect();
    if others.is_empty() {
        return false;
    }
    let (la, lb) = (a.lc_in(v), b.lc_in(v));
    for attempt in 0..3i64 {
        let point: Vec<Q> = (0..others.len())
            .map(|k| Q::from_integer((3 + 7 * attempt + 5 * k as i64 * (attempt + 1)).into()))
            .collect();
        let eval = |p: &Poly| {
            let mut q = p.clone();
            for (&i, c) in others.iter().zip(&point) {
                q = q.eval_var(i, c);
            }
            q
        };
        if eval(&la).is_zero() || eval(&lb).is_zero() {
            continue;
        }
        return gcd(&eval(a), &eval(b)).is_constant();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::monomial::OrderKind;
    use crate::arith::poly::PolyRing;

    #[test]
    fn gcd_of_products() {
        let r = PolyRing::with_kind(
            vec!["a".into(), "b".into(), "c".into()],
            OrderKind::Lex,
        );
        let a = Poly::var(&r, 0);
        let b = Poly::var(&r, 1);
        let c = Poly::var(&r, 2);
        let common = &(&a * &b) - &c;
        let f = &common * &(&a + &c);
        let g = &common * &(&b - &c) * Poly::constant(&r, crate::arith::poly::q(6));
        assert_eq!(gcd(&f, &g), common.primitive());
        assert!(gcd(&(&a + &b), &(&a - &b)).is_one());
    }

    #[test]
    fn content_wrt_variable() {
        let r = PolyRing::with_kind(vec!["a".into(), "x".into()], OrderKind::Lex);
        let a = Poly::var(&r, 0);
        let x = Poly::var(&r, 1);
        // a^2 x + a b-like: a^2*x + a
        let f = &(&(&a * &a) * &x) + &a;
        assert_eq!(content_in(&f, 1), a);
    }
}
