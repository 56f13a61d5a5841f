//! Multivariate factorization by evaluation, univariate factorization and
//! two-factor Hensel lifting with imposed leading coefficients.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd::{gcd, primitive_part_in};
use crate::arith::{Monomial, Poly, Q};

use super::univariate::{factor_univariate, index_subsets};

/// Division of polynomials in the single indeterminate `y`.
fn div_rem(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let mut q = Poly::zero(f.ring());
    let mut r = f.clone();
    while let Some((m, c)) = r.lt().cloned() {
        let Some(t) = m.checked_div(g.lm()) else { break };
        let k = &c / g.lc();
        q = &q + &Poly::monomial(f.ring(), t.clone(), k.clone());
        r = r.sub_mul_term(&k, &t, g);
    }
    (q, r)
}

/// `(s, t)` with `s a + t b = 1` for coprime univariate `a`, `b`.
fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let ring = a.ring();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(ring), Poly::zero(ring));
    let (mut t0, mut t1) = (Poly::zero(ring), Poly::one(ring));
    while !r1.is_zero() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let c = r0.constant_value().expect("coprime images").recip();
    (s0.scale(&c), t0.scale(&c))
}

fn wdeg(m: &Monomial, y: usize) -> u32 {
    m.degree() - m.exp(y) as u32
}

fn homogeneous_part(f: &Poly, y: usize, k: u32) -> Vec<(Monomial, Poly)> {
    let n = f.ring().nvars();
    let mut groups: HashMap<Monomial, Vec<(Monomial, Q)>> = HashMap::new();
    for (m, c) in f.terms() {
        if wdeg(m, y) != k {
            continue;
        }
        let mut w = m.clone();
        w.set_exp(y, 0);
        let mut ym = Monomial::one(n);
        ym.set_exp(y, m.exp(y));
        groups.entry(w).or_default().push((ym, c.clone()));
    }
    groups
        .into_iter()
        .map(|(w, terms)| (w, Poly::from_terms(f.ring(), terms)))
        .collect()
}

/// Lifts `fs(y, 0) ∝ g0 * h0` to a factorization of `lc_y(fs) * fs` whose
/// factors both have leading coefficient `lc_y(fs)`. Returns the first
/// factor when the lift closes exactly.
fn hensel_two(fs: &Poly, y: usize, g0: &Poly, h0: &Poly) -> Option<Poly> {
    let ring = fs.ring();
    let others: Vec<usize> = (0..ring.nvars()).filter(|&i| i != y).collect();
    let at_zero = |p: &Poly| {
        let mut q = p.clone();
        for &i in &others {
            q = q.eval_var(i, &Q::zero());
        }
        q
    };
    let lc = fs.lc_in(y);
    let l0 = at_zero(&lc).constant_value()?;
    if l0.is_zero() {
        return None;
    }
    let fstar = &lc * fs;
    let g0 = g0.scale(&(&l0 / g0.lc()));
    let h0 = h0.scale(&(&l0 / h0.lc()));
    let (dg, dh) = (g0.degree_in(y), h0.degree_in(y));
    let ypow = |d: u16| {
        let mut m = Monomial::one(ring.nvars());
        m.set_exp(y, d);
        Poly::monomial(ring, m, Q::one())
    };
    let lt = |p: &Poly| Poly::monomial(ring, p.lm().clone(), p.lc().clone());
    let mut g = &(&g0 - &lt(&g0)) + &(&lc * &ypow(dg));
    let mut h = &(&h0 - &lt(&h0)) + &(&lc * &ypow(dh));
    let (sigma, _) = ext_gcd(&g0, &h0);
    let top = fstar.terms().iter().map(|(m, _)| wdeg(m, y)).max().unwrap_or(0);
    for k in 1..=top {
        let err = &fstar - &(&g * &h);
        if err.is_zero() {
            break;
        }
        for (w, em) in homogeneous_part(&err, y, k) {
            let s = div_rem(&(&sigma * &em), &h0).1;
            let t = div_rem(&(&em - &(&s * &g0)), &h0);
            if !t.1.is_zero() {
                return None;
            }
            g = &g + &t.0.mul_term(&w, &Q::one());
            h = &h + &s.mul_term(&w, &Q::one());
        }
    }
    (fstar == &g * &h).then_some(g)
}

fn shift(f: &Poly, vars: &[usize], point: &[Q], sign: i32) -> Poly {
    let mut out = f.clone();
    for (&i, c) in vars.iter().zip(point) {
        let v = Poly::var(f.ring(), i);
        let c = if sign > 0 { c.clone() } else { -c.clone() };
        out = out.compose(i, &(&v + &Poly::constant(f.ring(), c)));
    }
    out
}

/// Irreducible factors of a squarefree polynomial that is primitive with
/// respect to `y` and involves at least one other indeterminate. `None`
/// when no admissible evaluation point was found.
pub fn factor_multivariate(f: &Poly, y: usize) -> Option<Vec<Poly>> {
    let ring = f.ring().clone();
    let others: Vec<usize> = (0..ring.nvars()).filter(|&i| i != y && f.has_var(i)).collect();
    let lc = f.lc_in(y);
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    for attempt in 0..200u32 {
        let range = 2 + attempt as i64 / 4;
        let point: Vec<Q> = others
            .iter()
            .map(|_| Q::from_integer(rng.gen_range(-range..=range).into()))
            .collect();
        let eval = |p: &Poly| {
            let mut q = p.clone();
            for (&i, c) in others.iter().zip(&point) {
                q = q.eval_var(i, c);
            }
            q
        };
        if eval(&lc).is_zero() {
            continue;
        }
        let image = eval(f);
        if !gcd(&image, &image.derivative(y)).is_constant() {
            continue;
        }
        let mut uni = factor_univariate(&image, y);
        if uni.len() <= 1 {
            return Some(vec![f.primitive()]);
        }
        let mut rest = shift(f, &others, &point, 1);
        let mut found = Vec::new();
        let mut s = 1;
        'grow: while 2 * s <= uni.len() {
            for subset in index_subsets(uni.len(), s) {
                let mut g0 = Poly::one(&ring);
                let mut h0 = Poly::one(&ring);
                for (i, u) in uni.iter().enumerate() {
                    if subset.contains(&i) {
                        g0 = &g0 * u;
                    } else {
                        h0 = &h0 * u;
                    }
                }
                let Some(g) = hensel_two(&rest, y, &g0, &h0) else { continue };
                let cand = primitive_part_in(&g, y);
                if let Some(q) = rest.div_exact(&cand) {
                    found.push(shift(&cand, &others, &point, -1).primitive());
                    rest = q;
                    for &i in subset.iter().rev() {
                        uni.remove(i);
                    }
                    continue 'grow;
                }
            }
            s += 1;
        }
        if !rest.is_constant() {
            found.push(shift(&rest, &others, &point, -1).primitive());
        }
        return Some(found);
    }
    None
}
