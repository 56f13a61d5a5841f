//! Ideals of a flat polynomial ring, represented by their reduced Gröbner
//! basis, and the standard ideal operations.

use std::fmt;
use std::sync::Arc;

use crate::arith::{Monomial, OrderKind, Poly, PolyRing, TermOrder, Q};

use super::buchberger::{groebner_basis, normal_form};

/// An ideal stored as its reduced Gröbner basis, which is canonical: two
/// ideals are equal iff their bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gb: Vec<Poly>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.gb.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: &[Poly]) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gb: groebner_basis(gens),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gb: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gb: vec![Poly::one(ring)],
        }
    }

    pub fn principal(f: &Poly) -> Ideal {
        Ideal::new(f.ring(), std::slice::from_ref(f))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// The reduced Gröbner basis, ascending by leading monomial.
    pub fn gb(&self) -> &[Poly] {
        &self.gb
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.len() == 1 && self.gb[0].is_constant()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        normal_form(f, &self.gb)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gb.iter().all(|g| self.contains(g))
    }

    pub fn with(&self, f: &Poly) -> Ideal {
        if self.contains(f) {
            return self.clone();
        }
        let mut gens = self.gb.clone();
        gens.push(f.clone());
        Ideal::new(&self.ring, &gens)
    }

    /// Number of basis elements; used as a cheap ordering key.
    pub fn len(&self) -> usize {
        self.gb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gb.is_empty()
    }

    /// Deterministic total order: bases compared from their largest element
    /// down, larger polynomials first, so `[b, a]` precedes `[c, a]`.
    pub fn cmp_canonical(&self, other: &Ideal) -> std::cmp::Ordering {
        for (a, b) in self.gb.iter().rev().zip(other.gb.iter().rev()) {
            let c = b.cmp_canonical(a);
            if c.is_ne() {
                return c;
            }
        }
        self.gb.len().cmp(&other.gb.len())
    }
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Ideal {
    let mut gens = a.gb.clone();
    gens.extend(b.gb.iter().cloned());
    Ideal::new(&a.ring, &gens)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    a.gb == b.gb
}

fn base_kind(order: &TermOrder) -> OrderKind {
    match order {
        TermOrder::Simple(k) => *k,
        TermOrder::Block { second, .. } => *second,
    }
}

/// `ring` with one fresh indeterminate prepended and eliminated first.
pub(crate) fn aux_ring(ring: &Arc<PolyRing>) -> (Arc<PolyRing>, Vec<usize>) {
    let mut names = vec!["_t".to_string()];
    names.extend(ring.names().iter().cloned());
    let order = TermOrder::Block {
        split: 1,
        first: OrderKind::Lex,
        second: base_kind(ring.order()),
    };
    let map = (1..=ring.nvars()).collect();
    (PolyRing::new(names, order), map)
}

/// Keeps the basis elements free of the auxiliary indeterminate and maps
/// them back.
fn eliminate(gb: &[Poly], ring: &Arc<PolyRing>) -> Ideal {
    let n = ring.nvars();
    let gens: Vec<Poly> = gb
        .iter()
        .filter(|g| !g.has_var(0))
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let exps: Vec<_> = (1..=n).map(|k| m.exp(k)).collect();
                    (Monomial::from_exps(&exps), c.clone())
                })
                .collect();
            Poly::from_terms(ring, terms)
        })
        .collect();
    Ideal::new(ring, &gens)
}

pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Ideal {
    if a.is_unit() || b.is_zero() {
        return b.clone();
    }
    if b.is_unit() || a.is_zero() {
        return a.clone();
    }
    if a.contains_ideal(b) {
        return b.clone();
    }
    if b.contains_ideal(a) {
        return a.clone();
    }
    let (tr, map) = aux_ring(&a.ring);
    let t = Poly::var(&tr, 0);
    let one_t = &Poly::one(&tr) - &t;
    let mut gens = Vec::new();
    for g in &a.gb {
        gens.push(&t * &g.map_into(&tr, &map));
    }
    for g in &b.gb {
        gens.push(&one_t * &g.map_into(&tr, &map));
    }
    eliminate(&groebner_basis(&gens), &a.ring)
}

pub fn ideal_intersection_all(ideals: &[Ideal], ring: &Arc<PolyRing>) -> Ideal {
    let mut acc = Ideal::unit(ring);
    for i in ideals {
        acc = ideal_intersection(&acc, i);
    }
    acc
}

fn quotient_by(a: &Ideal, f: &Poly) -> Ideal {
    if f.is_zero() {
        return Ideal::unit(&a.ring);
    }
    let inter = ideal_intersection(a, &Ideal::principal(f));
    let gens: Vec<Poly> = inter
        .gb
        .iter()
        .map(|g| g.div_exact(f).expect("element of <f> divisible by f"))
        .collect();
    Ideal::new(&a.ring, &gens)
}

/// `a : b = ∩_{g ∈ gens(b)} a : <g>`.
pub fn ideal_quotient(a: &Ideal, b: &Ideal) -> Ideal {
    let mut acc = Ideal::unit(&a.ring);
    for g in &b.gb {
        acc = ideal_intersection(&acc, &quotient_by(a, g));
    }
    acc
}

/// `a : f^∞` by iterated quotients until stable.
pub fn saturation(a: &Ideal, f: &Poly) -> Ideal {
    let mut cur = a.clone();
    loop {
        let next = quotient_by(&cur, f);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `f ∈ √n`, by testing `1 ∈ n + <1 - t f>`.
pub fn radical_membership(f: &Poly, n: &Ideal) -> bool {
    if n.contains(f) {
        return true;
    }
    if n.is_zero() {
        return false;
    }
    let (tr, map) = aux_ring(&n.ring);
    let t = Poly::var(&tr, 0);
    let mut gens: Vec<Poly> = n.gb.iter().map(|g| g.map_into(&tr, &map)).collect();
    gens.push(&Poly::one(&tr) - &(&t * &f.map_into(&tr, &map)));
    let gb = groebner_basis(&gens);
    gb.len() == 1 && gb[0].is_constant()
}

/// True if every basis element vanishes at the rational point.
pub fn vanishes_at(n: &Ideal, point: &[Q]) -> bool {
    n.gb.iter().all(|g| num_traits::Zero::is_zero(&g.eval(point)))
}
