//! Red-specifications `(N, W)` of parameter segments `V(N) \ V(h)` and the
//! specialization calculus over them.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::arith::gcd::gcd;
use crate::arith::{OrderKind, ParamPoly, Poly, PolyRing, TermOrder, Q};
use crate::factor::{cmp_factor, irreducible_factors, rational_roots};
use crate::groebner::{groebner_basis, radical_membership, Ideal};
use crate::primedec::{minimal_primes, PrimeList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("no sample point found in {attempts} attempts")]
    SamplingFailed { attempts: usize },
}

/// A point of parameter space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    pub coords: Vec<Q>,
}

impl ParamPoint {
    pub fn new(coords: Vec<Q>) -> Self {
        ParamPoint { coords }
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Null conditions `N` (a radical ideal) and non-null conditions `W`
/// (distinct irreducible polynomials, none vanishing on a whole component
/// of `V(N)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedSpec {
    n: Ideal,
    w: Vec<Poly>,
    h: Poly,
    primes: PrimeList,
}

/// Builds the red-specification of `V(nraw) \ V(prod wraw)`, or `None` when
/// that set is empty.
pub fn make_redspec(nraw: &Ideal, wraw: &[Poly], bound: u32) -> Option<RedSpec> {
    if wraw.iter().any(|w| w.is_zero()) {
        return None;
    }
    let ring = nraw.ring().clone();
    let mut pl = minimal_primes(nraw, bound);
    let mut raw: Vec<Poly> = wraw.iter().filter(|w| !w.is_constant()).cloned().collect();
    loop {
        if pl.primes.is_empty() {
            return None;
        }
        let n = pl.intersection(&ring);
        let mut w: Vec<Poly> = Vec::new();
        for g in &raw {
            let r = n.reduce(g);
            if r.is_zero() {
                return None;
            }
            let (factors, bad) = irreducible_factors(&r, bound);
            for b in bad {
                let msg = format!("kept {b} unfactored (degree bound {bound})");
                if !pl.warnings.contains(&msg) {
                    pl.warnings.push(msg);
                }
            }
            for f in factors {
                if !w.contains(&f) && !n.with(&f).is_unit() {
                    w.push(f);
                }
            }
        }
        let before = pl.primes.len();
        pl.primes.retain(|p| w.iter().all(|f| !p.contains(f)));
        if pl.primes.len() == before {
            w.sort_by(cmp_factor);
            let h = w.iter().fold(Poly::one(&ring), |acc, f| &acc * f);
            return Some(RedSpec { n, w, h, primes: pl });
        }
        raw = w;
    }
}

impl RedSpec {
    /// The whole parameter space, `(⟨0⟩, {})`.
    pub fn full(ring: &Arc<PolyRing>) -> RedSpec {
        RedSpec {
            n: Ideal::zero(ring),
            w: Vec::new(),
            h: Poly::one(ring),
            primes: PrimeList {
                primes: vec![Ideal::zero(ring)],
                warnings: Vec::new(),
            },
        }
    }

    pub fn n(&self) -> &Ideal {
        &self.n
    }

    pub fn w(&self) -> &[Poly] {
        &self.w
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn primes(&self) -> &PrimeList {
        &self.primes
    }

    pub fn warnings(&self) -> &[String] {
        &self.primes.warnings
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.n.ring()
    }

    /// `p` vanishes on the whole segment.
    pub fn is_null(&self, p: &Poly) -> bool {
        self.n.contains(p)
    }

    /// `p = k * prod w_i^l_i` with `k` a nonzero rational.
    pub fn wstar_member(&self, p: &Poly) -> bool {
        wstar_member(p, self)
    }

    /// `p` vanishes at no point of the segment: `h ∈ √(N + ⟨p⟩)`.
    pub fn nonnull_on(&self, p: &Poly) -> bool {
        let r = self.n.reduce(p);
        if r.is_zero() {
            return false;
        }
        if self.wstar_member(&r) {
            return true;
        }
        let np = self.n.with(&r);
        np.is_unit() || radical_membership(&self.h, &np)
    }

    /// Coefficient-wise normal form modulo `N`.
    pub fn reduce(&self, f: &ParamPoly) -> ParamPoly {
        f.map_coeffs(|c| self.n.reduce(c))
    }

    /// The segment with `p = 0` added.
    pub fn with_null(&self, p: &Poly, bound: u32) -> Option<RedSpec> {
        make_redspec(&self.n.with(p), &self.w, bound)
    }

    /// The segment with `p ≠ 0` added.
    pub fn with_nonnull(&self, p: &Poly, bound: u32) -> Option<RedSpec> {
        let mut w = self.w.clone();
        w.push(p.clone());
        make_redspec(&self.n, &w, bound)
    }

    pub fn contains(&self, p: &ParamPoint) -> bool {
        segment_contains(self, p)
    }
}

impl fmt::Display for RedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, W={{", self.n)?;
        for (i, w) in self.w.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("})")
    }
}

pub fn wstar_member(p: &Poly, spec: &RedSpec) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut r = p.clone();
    for w in &spec.w {
        while !r.is_constant() {
            match r.div_exact(w) {
                Some(q) => r = q,
                None => break,
            }
        }
    }
    r.is_constant()
}

/// `f` is in normal form modulo `N`, has content one and a leading
/// coefficient in `W*`.
pub fn is_reduced_over(f: &ParamPoly, spec: &RedSpec) -> bool {
    let Ok(lc) = f.lc() else { return false };
    &spec.reduce(f) == f && &f.normalized() == f && spec.wstar_member(lc)
}

/// `a * NF(F) = b * f` modulo `N` with `a, b` non-null on the segment,
/// where `f` is reduced over it.
pub fn specializes_well(big_f: &ParamPoly, f: &ParamPoly, spec: &RedSpec) -> bool {
    let fr = spec.reduce(big_f);
    let (Ok(m1), Ok(m2)) = (fr.lpp(), f.lpp()) else {
        return false;
    };
    if m1 != m2 {
        return false;
    }
    let a = fr.lc().unwrap().clone();
    let b = f.lc().unwrap().clone();
    if !spec.nonnull_on(&a) || !spec.nonnull_on(&b) {
        return false;
    }
    let g = gcd(&a, &b);
    let (a, b) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
    let diff = &fr.mul_coeff(&b) - &f.mul_coeff(&a);
    spec.reduce(&diff).is_zero()
}

pub fn specialize(f: &ParamPoly, p: &ParamPoint) -> Poly {
    f.specialize(&p.coords)
}

/// Monic reduced Gröbner basis of the system specialized at `p`, ascending.
pub fn reduced_basis_at(system: &[ParamPoly], p: &ParamPoint) -> Vec<Poly> {
    let gens: Vec<Poly> = system.iter().map(|f| specialize(f, p)).collect();
    groebner_basis(&gens).iter().map(Poly::monic).collect()
}

/// `N` vanishes at `p` and `h` does not.
pub fn segment_contains(spec: &RedSpec, p: &ParamPoint) -> bool {
    crate::groebner::vanishes_at(&spec.n, &p.coords) && !spec.h.eval(&p.coords).is_zero()
}

/// A small random rational, nonzero more often than not.
pub fn small_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-7i64..=7).into(), rng.gen_range(1i64..=3).into())
}

fn lead_var(g: &Poly) -> usize {
    g.lm().exps().iter().position(|&e| e > 0).unwrap_or(usize::MAX)
}

fn try_point(lex: &[Poly], m: usize, rng: &mut impl Rng) -> Option<Vec<Q>> {
    let mut vals: Vec<Option<Q>> = vec![None; m];
    for i in (0..m).rev() {
        let mut acc: Option<Poly> = None;
        for g in lex.iter().filter(|g| lead_var(g) == i) {
            let mut s = g.clone();
            for (j, v) in vals.iter().enumerate().skip(i + 1) {
                s = s.eval_var(j, v.as_ref().unwrap());
            }
            if !s.is_zero() {
                acc = Some(match acc {
                    None => s,
                    Some(a) => gcd(&a, &s),
                });
            }
        }
        vals[i] = Some(match acc {
            None => small_rational(rng),
            Some(g) if g.is_constant() => return None,
            Some(g) => {
                let roots = rational_roots(&g, i);
                if roots.is_empty() {
                    return None;
                }
                roots[rng.gen_range(0..roots.len())].clone()
            }
        });
    }
    Some(vals.into_iter().map(Option::unwrap).collect())
}

/// Up to `count` distinct rational points of the segment, by back-solving
/// a lex basis of `N` with random values for the free parameters.
pub fn sample_points(
    spec: &RedSpec,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<ParamPoint>, SpecError> {
    let ring = spec.ring();
    let m = ring.nvars();
    let lex = if *ring.order() == TermOrder::Simple(OrderKind::Lex) {
        spec.n.gb().to_vec()
    } else {
        let target = PolyRing::with_kind(ring.names().to_vec(), OrderKind::Lex);
        let map: Vec<usize> = (0..m).collect();
        let gens: Vec<Poly> = spec.n.gb().iter().map(|g| g.map_into(&target, &map)).collect();
        groebner_basis(&gens)
    };
    let attempts = 40 * count.max(1);
    let mut out: Vec<ParamPoint> = Vec::new();
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let Some(coords) = try_point(&lex, m, rng) else { continue };
        let p = ParamPoint::new(coords);
        if segment_contains(spec, &p) && !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() && count > 0 {
        return Err(SpecError::SamplingFailed { attempts });
    }
    Ok(out)
}
