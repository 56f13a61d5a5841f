//! Sparse multivariate polynomials over the rationals in one flat block of
//! indeterminates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exp, Monomial, OrderKind, TermOrder};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Names and term order of a flat polynomial ring `Q[y_1..y_k]`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: TermOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, order: TermOrder) -> Arc<Self> {
        Arc::new(PolyRing { names, order })
    }

    pub fn with_kind(names: Vec<String>, kind: OrderKind) -> Arc<Self> {
        Self::new(names, TermOrder::Simple(kind))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Term = (Monomial, Q);

/// A polynomial whose terms are kept sorted by decreasing monomial under the
/// ring's term order. No stored coefficient is zero.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), Q::one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> Exp {
        self.terms.iter().map(|t| t.0.exp(i)).max().unwrap_or(0)
    }

    pub fn has_var(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(i) > 0)
    }

    /// Indices of the indeterminates that occur in the polynomial.
    pub fn vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.has_var(i)).collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// `self - c * m * g` in one merge pass.
    pub fn sub_mul_term(&self, c: &Q, m: &Monomial, g: &Poly) -> Poly {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<Term> = g.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect();
        while i < self.terms.len() && j < shifted.len() {
            match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 - &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|(n, a)| (n.clone(), -a.clone())));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// The rational `c` such that `self / c` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn rational_content(&self) -> Q {
        if self.terms.is_empty() {
            return Q::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Q::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        content
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.rational_content();
        if c.is_one() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Coefficients with respect to indeterminate `i`, indexed by degree.
    /// The coefficients live in the same ring and do not involve `i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            let mut m2 = m.clone();
            m2.set_exp(i, 0);
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Poly::from_terms(&self.ring, t))
            .collect()
    }

    pub fn from_coeffs_in(ring: &Arc<PolyRing>, i: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.set_exp(i, m.exp(i) + e as Exp);
                terms.push((m2, a.clone()));
            }
        }
        Poly::from_terms(ring, terms)
    }

    /// Leading coefficient with respect to indeterminate `i`.
    pub fn lc_in(&self, i: usize) -> Poly {
        self.coeffs_in(i).pop().unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                let mut m2 = m.clone();
                m2.set_exp(i, e - 1);
                (m2, c * Q::from_integer(BigInt::from(e)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Substitutes the value `v` for indeterminate `i`.
    pub fn eval_var(&self, i: usize, v: &Q) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(i);
                let mut m2 = m.clone();
                m2.set_exp(i, 0);
                (m2, c * pow_q(v, e as u32))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= pow_q(&point[i], e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces indeterminate `i` by the polynomial `g` (same ring).
    pub fn compose(&self, i: usize, g: &Poly) -> Poly {
        let coeffs = self.coeffs_in(i);
        let mut acc = Poly::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc
    }

    /// Re-embeds into `target`, sending indeterminate `k` to `map[k]`.
    pub fn map_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = Monomial::one(n);
                for (k, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        m2.set_exp(map[k], m2.exp(map[k]) + e);
                    }
                }
                (m2, c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut quot = Vec::new();
        let (gm, gc) = (g.lm().clone(), g.lc().clone());
        while let Some((m, c)) = r.lt().cloned() {
            let t = m.checked_div(&gm)?;
            let k = &c / &gc;
            r = r.sub_mul_term(&k, &t, g);
            quot.push((t, k));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }

    /// Total comparison used for canonical sorting: term by term under the
    /// ring order, coefficients breaking ties, a proper prefix first.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        let ord = self.ring.order();
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = ord.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_char('-')?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

pub fn pow_q(v: &Q, e: u32) -> Q {
    num_traits::pow::pow(v.clone(), e as usize)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names.clone();
        self.fmt_with(&names, f)
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let ord = a.ring.order();
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Q| if negate_b { -c.clone() } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        match ord.cmp(&a.terms[i].0, &b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b.terms[j].0.clone(), sign(&b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !s.is_zero() {
                    out.push((a.terms[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
    Poly {
        ring: a.ring.clone(),
        terms: out,
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                terms.push((m.mul(n), c * d));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
