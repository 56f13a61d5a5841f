//! Minimal primes and radicals of parameter-ring ideals by factor
//! splitting.

use std::sync::Arc;

use crate::arith::{OrderKind, Poly, PolyRing, TermOrder};
use crate::factor::irreducible_factors;
use crate::groebner::{groebner_basis, ideal_intersection_all, saturation, Ideal};

/// Irredundant minimal primes in canonical order, with warnings for
/// components that could not be certified prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList {
    pub primes: Vec<Ideal>,
    pub warnings: Vec<String>,
}

impl PrimeList {
    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `∩ primes`; the unit ideal for an empty list.
    pub fn intersection(&self, ring: &Arc<PolyRing>) -> Ideal {
        ideal_intersection_all(&self.primes, ring)
    }
}

fn decompose(i: Ideal, bound: u32, out: &mut Vec<Ideal>, warnings: &mut Vec<String>) {
    if i.is_unit() {
        return;
    }
    for g in i.gb() {
        let (factors, bad) = irreducible_factors(g, bound);
        for b in bad {
            let w = format!("kept {b} unfactored (degree bound {bound})");
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        if factors.len() == 1 {
            if &factors[0] != g {
                // a pure power: pass to its squarefree part
                decompose(i.with(&factors[0]), bound, out, warnings);
                return;
            }
            continue;
        }
        let mut prefix = Poly::one(i.ring());
        for f in &factors {
            let branch = saturation(&i.with(f), &prefix);
            decompose(branch, bound, out, warnings);
            prefix = &prefix * f;
        }
        return;
    }
    out.push(i);
}

fn remove_redundant(mut comps: Vec<Ideal>) -> Vec<Ideal> {
    comps.sort_by(|a, b| a.cmp_canonical(b));
    comps.dedup();
    let keep: Vec<bool> = (0..comps.len())
        .map(|k| {
            !(0..comps.len()).any(|j| j != k && comps[k].contains_ideal(&comps[j]))
        })
        .collect();
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Minimal primes of `n` over `Q`.
pub fn minimal_primes(n: &Ideal, bound: u32) -> PrimeList {
    let mut comps = Vec::new();
    let mut warnings = Vec::new();
    decompose(n.clone(), bound, &mut comps, &mut warnings);
    let primes = remove_redundant(comps);
    for p in &primes {
        if !is_prime_certified(p, bound) {
            warnings.push(format!("component {p} not certified prime"));
        }
    }
    PrimeList { primes, warnings }
}

/// `√n` as the intersection of its minimal primes.
pub fn radical(n: &Ideal, bound: u32) -> (Ideal, Vec<String>) {
    let pl = minimal_primes(n, bound);
    (pl.intersection(n.ring()), pl.warnings)
}

/// Recognizes primes whose reduced lex basis has the shape
/// `x_k - φ_k(free)` for pivot indeterminates plus at most one irreducible
/// polynomial in the free indeterminates. This covers the zero ideal,
/// coordinate ideals and principal ideals with an irreducible generator.
pub fn is_prime_certified(p: &Ideal, bound: u32) -> bool {
    if p.is_unit() {
        return false;
    }
    let ring = p.ring();
    let gb = if *ring.order() == TermOrder::Simple(OrderKind::Lex) {
        p.gb().to_vec()
    } else {
        let lex = PolyRing::with_kind(ring.names().to_vec(), OrderKind::Lex);
        let map: Vec<usize> = (0..ring.nvars()).collect();
        let gens: Vec<Poly> = p.gb().iter().map(|g| g.map_into(&lex, &map)).collect();
        groebner_basis(&gens)
    };
    let rest: Vec<&Poly> = gb
        .iter()
        .filter(|g| !(g.lm().degree() == 1))
        .collect();
    match rest.as_slice() {
        [] => true,
        [q] => {
            let (factors, bad) = irreducible_factors(q, bound);
            bad.is_empty() && factors.len() == 1 && &factors[0] == *q
        }
        _ => false,
    }
}
