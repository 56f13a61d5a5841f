//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.

use std::sync::Arc;

use num_traits::One;

use crate::arith::{Monomial, Poly, PolyRing, Q};

/// Remainder of `f` on full reduction by `g`. Unique when `g` is a Gröbner
/// basis.
pub fn normal_form(f: &Poly, g: &[Poly]) -> Poly {
    if f.is_zero() || g.is_empty() {
        return f.clone();
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    'outer: while let Some((m, c)) = rest.lt().cloned() {
        for h in g {
            if let Some(t) = m.checked_div(h.lm()) {
                let k = &c / h.lc();
                rest = rest.sub_mul_term(&k, &t, h);
                continue 'outer;
            }
        }
        out.push((m, c));
        rest = Poly::from_terms(rest.ring(), rest.terms()[1..].to_vec());
    }
    Poly::from_terms(f.ring(), out)
}

/// Division of `f` by `g`: quotients `q` and remainder `r` with
/// `f = sum q_i g_i + r`.
pub fn divide(f: &Poly, g: &[Poly]) -> (Vec<Poly>, Poly) {
    let ring = f.ring();
    let mut quots: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); g.len()];
    let mut rest = f.clone();
    let mut out = Vec::new();
    'outer: while let Some((m, c)) = rest.lt().cloned() {
        for (i, h) in g.iter().enumerate() {
            if let Some(t) = m.checked_div(h.lm()) {
                let k = &c / h.lc();
                rest = rest.sub_mul_term(&k, &t, h);
                quots[i].push((t, k));
                continue 'outer;
            }
        }
        out.push((m, c));
        rest = Poly::from_terms(ring, rest.terms()[1..].to_vec());
    }
    let quots = quots.into_iter().map(|t| Poly::from_terms(ring, t)).collect();
    (quots, Poly::from_terms(ring, out))
}

/// Reduced basis together with the cofactors expressing each element in the
/// original generators.
#[derive(Clone, Debug)]
pub struct GbWithCofactors {
    pub basis: Vec<Poly>,
    /// `basis[i] = sum_j matrix[i][j] * gens[j]`.
    pub matrix: Vec<Vec<Poly>>,
    pub gens: Vec<Poly>,
}

impl GbWithCofactors {
    /// Checks the cofactor identity row by row.
    pub fn verify(&self) -> bool {
        self.basis.iter().zip(&self.matrix).all(|(b, row)| {
            let mut acc = Poly::zero(b.ring());
            for (c, g) in row.iter().zip(&self.gens) {
                acc = &acc + &(c * g);
            }
            &acc == b
        })
    }
}

#[derive(Clone)]
struct Elem {
    p: Poly,
    cof: Vec<Poly>,
}

impl Elem {
    fn sub_mul(&mut self, c: &Q, m: &Monomial, g: &Elem) {
        self.p = self.p.sub_mul_term(c, m, &g.p);
        for (a, b) in self.cof.iter_mut().zip(&g.cof) {
            if !b.is_zero() {
                *a = a.sub_mul_term(c, m, b);
            }
        }
    }

    fn scale(&mut self, c: &Q) {
        self.p = self.p.scale(c);
        for a in &mut self.cof {
            *a = a.scale(c);
        }
    }

    fn normalize(&mut self) {
        if self.p.is_zero() {
            return;
        }
        let c = self.p.rational_content();
        if !c.is_one() {
            self.scale(&c.recip());
        }
    }
}

/// Full reduction of `e` by the elements of `basis` listed in `active`.
fn reduce(mut e: Elem, basis: &[Elem], active: &[usize]) -> Elem {
    let ring = e.p.ring().clone();
    let mut done: Vec<(Monomial, Q)> = Vec::new();
    'outer: while let Some((m, c)) = e.p.lt().cloned() {
        for &i in active {
            let h = &basis[i];
            if let Some(t) = m.checked_div(h.p.lm()) {
                let k = &c / h.p.lc();
                e.sub_mul(&k, &t, h);
                continue 'outer;
            }
        }
        done.push((m.clone(), c.clone()));
        // move the irreducible leading term out of the working polynomial
        e.p = Poly::from_terms(&ring, e.p.terms()[1..].to_vec());
    }
    e.p = Poly::from_terms(&ring, done);
    e
}

fn spoly(a: &Elem, b: &Elem) -> Elem {
    let l = a.p.lm().lcm(b.p.lm());
    let ta = l.div(a.p.lm());
    let tb = l.div(b.p.lm());
    let ca = a.p.lc().recip();
    let cb = b.p.lc().recip();
    let ring = a.p.ring();
    let zero = Poly::zero(ring);
    let mut out = Elem {
        p: a.p.mul_term(&ta, &ca),
        cof: a.cof.iter().map(|x| if x.is_zero() { zero.clone() } else { x.mul_term(&ta, &ca) }).collect(),
    };
    out.sub_mul(&cb, &tb, b);
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn engine(gens: &[Poly], track: bool) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let Some(first) = gens.first() else {
        return (Vec::new(), Vec::new());
    };
    let ring: Arc<PolyRing> = first.ring().clone();
    let n = gens.len();
    let zero = Poly::zero(&ring);
    let mut basis: Vec<Elem> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Elem> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| Elem {
            p: g.clone(),
            cof: if track {
                (0..n)
                    .map(|j| if j == k { Poly::one(&ring) } else { zero.clone() })
                    .collect()
            } else {
                Vec::new()
            },
        })
        .collect();
    let ord = ring.order().clone();
    inputs.sort_by(|a, b| ord.cmp(a.p.lm(), b.p.lm()));

    let mut queue: std::collections::VecDeque<Elem> = inputs.into();
    loop {
        let next = if let Some(e) = queue.pop_front() {
            Some(e)
        } else if !pairs.is_empty() {
            // normal strategy: smallest lcm first
            let k = (0..pairs.len())
                .min_by(|&x, &y| ord.cmp(&pairs[x].lcm, &pairs[y].lcm))
                .unwrap();
            let p = pairs.swap_remove(k);
            Some(spoly(&basis[p.i], &basis[p.j]))
        } else {
            None
        };
        let Some(e) = next else { break };
        let mut r = reduce(e, &basis, &active);
        if r.p.is_zero() {
            continue;
        }
        r.normalize();
        let h = basis.len();
        let hm = r.p.lm().clone();
        basis.push(r);
        if hm.is_one() {
            active = vec![h];
            pairs.clear();
            queue.clear();
            break;
        }
        update(&mut pairs, &mut active, &basis, h);
    }

    // interreduce
    let mut keep: Vec<usize> = active.clone();
    keep.sort_by(|&a, &b| ord.cmp(basis[a].p.lm(), basis[b].p.lm()));
    let mut out: Vec<Elem> = Vec::with_capacity(keep.len());
    for (pos, &i) in keep.iter().enumerate() {
        let others: Vec<usize> = keep
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &k)| k)
            .collect();
        let e = basis[i].clone();
        let lead = Elem {
            p: Poly::monomial(&ring, e.p.lm().clone(), e.p.lc().clone()),
            cof: Vec::new(),
        };
        // keep the leading term, reduce the tail
        let tail = Elem {
            p: &e.p - &lead.p,
            cof: e.cof.clone(),
        };
        let mut t = reduce(
            Elem {
                p: tail.p,
                cof: if track { vec![zero.clone(); n] } else { Vec::new() },
            },
            &basis,
            &others,
        );
        t.p = &t.p + &lead.p;
        if track {
            // cofactors: e.cof minus whatever reduce subtracted (tracked in t.cof)
            t.cof = e
                .cof
                .iter()
                .zip(&t.cof)
                .map(|(a, b)| a + b)
                .collect();
        }
        let c = t.p.lc().recip();
        t.scale(&c);
        t.normalize();
        out.push(t);
    }
    let basis: Vec<Poly> = out.iter().map(|e| e.p.clone()).collect();
    let cof = out.into_iter().map(|e| e.cof).collect();
    (basis, cof)
}

fn update(pairs: &mut Vec<Pair>, active: &mut Vec<usize>, basis: &[Elem], h: usize) {
    let hm = basis[h].p.lm().clone();
    let mut cands: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&i| {
            let m = basis[i].p.lm();
            (i, m.lcm(&hm), m.is_coprime(&hm))
        })
        .collect();
    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(c) = cands.pop() {
        let dominated = !c.2
            && cands
                .iter()
                .chain(kept.iter())
                .any(|d| d.1.divides(&c.1));
        if !dominated {
            kept.push(c);
        }
    }
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(hm.divides(&p.lcm)
            && basis[p.i].p.lm().lcm(&hm) != p.lcm
            && basis[p.j].p.lm().lcm(&hm) != p.lcm)
    });
    // product criterion
    for (i, l, coprime) in kept {
        if !coprime {
            pairs.push(Pair { i, j: h, lcm: l });
        }
    }
    active.retain(|&i| !hm.divides(basis[i].p.lm()));
    active.push(h);
}

/// The reduced Gröbner basis of `gens`, sorted ascending by leading
/// monomial, each element integer-primitive with positive leading
/// coefficient.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    engine(gens, false).0
}

/// Reduced Gröbner basis with cofactor matrix; the identity is asserted.
pub fn gbex(gens: &[Poly]) -> GbWithCofactors {
    let (basis, matrix) = engine(gens, true);
    let out = GbWithCofactors {
        basis,
        matrix,
        gens: gens.to_vec(),
    };
    assert!(out.verify(), "cofactor identity violated");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_param, Ring};

    fn polys(r: &Arc<Ring>, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_param(r, s).unwrap()).collect()
    }

    fn show(g: &[Poly]) -> Vec<String> {
        g.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let r = Ring::lex(&["x", "y"], &[]);
        assert_eq!(show(&groebner_basis(&polys(&r, &["x", "y"]))), ["y", "x"]);
        assert_eq!(
            show(&groebner_basis(&polys(&r, &["x^2 - 1", "x*y - 1"]))),
            ["y^2 - 1", "x - y"]
        );
        assert!(groebner_basis(&polys(&r, &["0"])).is_empty());
        assert_eq!(show(&groebner_basis(&polys(&r, &["5"]))), ["1"]);
    }

    #[test]
    fn normal_forms() {
        let r = Ring::lex(&["a", "b", "c", "d"], &[]);
        let g = groebner_basis(&polys(&r, &["c", "d"]));
        let f = parse_param(&r, "a*d - c*b").unwrap();
        assert!(normal_form(&f, &g).is_zero());
        let g = groebner_basis(&polys(&r, &["b"]));
        let a = parse_param(&r, "a").unwrap();
        assert_eq!(normal_form(&a, &g), a);
    }

    #[test]
    fn cofactors() {
        let r = Ring::lex(&["a", "b", "c"], &[]);
        let e = gbex(&polys(&r, &["a", "a + b"]));
        assert_eq!(show(&e.basis), ["b", "a"]);
        assert_eq!(show(&e.matrix[0]), ["-1", "1"]);
        assert_eq!(show(&e.matrix[1]), ["1", "0"]);
        let e = gbex(&polys(&r, &["a*b", "a*c"]));
        assert_eq!(show(&e.basis), ["a*c", "a*b"]);
        assert!(e.verify());
        let e = gbex(&polys(&r, &["a^2 + b", "a*b - c", "b^2 + a*c"]));
        assert!(e.verify());
        assert_eq!(e.basis, groebner_basis(&e.gens));
    }
}
