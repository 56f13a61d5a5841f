//! Factorization of squarefree univariate integer polynomials by the
//! big-prime Zassenhaus method.

use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs::next_prime;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Monomial, Poly, Q};

use super::modp::{norm2_ceil, Dense, Fp};

/// Integer coefficients of a primitive polynomial in the single
/// indeterminate `y`, low degree first.
fn to_dense(f: &Poly, y: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.degree_in(y) as usize + 1];
    for (m, c) in f.terms() {
        debug_assert!(c.is_integer());
        out[m.exp(y) as usize] = c.to_integer();
    }
    out
}

fn from_dense(template: &Poly, y: usize, c: &[BigInt]) -> Poly {
    let n = template.ring().nvars();
    let terms = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let mut m = Monomial::one(n);
            m.set_exp(y, i as u16);
            (m, Q::from_integer(x.clone()))
        })
        .collect();
    Poly::from_terms(template.ring(), terms)
}

pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}


/// Irreducible factors over `Q` of `f`, a squarefree integer-primitive
/// polynomial in the single indeterminate `y`, each primitive with positive
/// leading coefficient.
pub fn factor_univariate(f: &Poly, y: usize) -> Vec<Poly> {
    let f = f.primitive();
    let d = f.degree_in(y);
    if d <= 1 {
        return if d == 0 { Vec::new() } else { vec![f] };
    }
    let coeffs = to_dense(&f, y);
    let lc = coeffs.last().unwrap().clone();
    // coefficients of lc * g for any factor g are bounded by this
    let bound = (BigInt::one() << d as usize) * norm2_ceil(&coeffs) * lc.abs();
    let mut start: BigUint = (&bound * 2u32 + 1u32).to_biguint().unwrap();
    let fprime: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let (fp, monic_f) = loop {
        let p: BigInt = next_prime(&start, None).expect("prime exists").into();
        start = (&p + 1u32).to_biguint().unwrap();
        let fp = Fp::new(p);
        if fp.red(&lc).is_zero() {
            continue;
        }
        let a = fp.from_ints(&coeffs);
        let g = fp.gcd(&a, &fp.from_ints(&fprime));
        if Fp::deg(&g) == 0 {
            let m = fp.monic(&a);
            break (fp, m);
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular: Vec<Dense> = fp.factor(&monic_f, &mut rng);
    if modular.len() == 1 {
        return vec![f];
    }

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    'grow: while 2 * s <= modular.len() {
        let lc_rest = rest.lc().to_integer();
        for subset in index_subsets(modular.len(), s) {
            let mut g: Dense = vec![fp.red(&lc_rest)];
            for &i in &subset {
                g = fp.mul(&g, &modular[i]);
            }
            let sym: Vec<BigInt> = g.iter().map(|c| fp.sym(c)).collect();
            let cand = from_dense(&f, y, &sym).primitive();
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q.primitive();
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
                continue 'grow;
            }
        }
        s += 1;
    }
    if rest.degree_in(y) > 0 {
        out.push(rest);
    }
    out
}

/// Rational roots of a univariate polynomial, ascending.
pub fn rational_roots(f: &Poly, y: usize) -> Vec<Q> {
    let sqf = super::squarefree_part(f).unwrap_or_else(|_| f.clone());
    let mut roots: Vec<Q> = factor_univariate(&sqf.primitive(), y)
        .into_iter()
        .filter(|g| g.degree_in(y) == 1)
        .map(|g| {
            let c = to_dense(&g, y);
            Q::new(-c[0].clone(), c[1].clone())
        })
        .collect();
    roots.sort();
    roots
}
