//! Polynomials in `K[a][x]`: a variable block `x` whose coefficients are
//! polynomials in the parameter block `a`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::monomial::{Block, Monomial, MonomialOrder, OrderKind, TermOrder};
use super::poly::{Poly, PolyRing, Q};
use super::ArithError;

/// The two-block ring `Q[a_1..a_m][x_1..x_n]` with an order on each block.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    params: Vec<String>,
    vars: Vec<String>,
    order_vars: MonomialOrder,
    order_params: MonomialOrder,
    param_ring: Arc<PolyRing>,
    var_ring: Arc<PolyRing>,
}

impl Ring {
    pub fn new(
        params: Vec<String>,
        vars: Vec<String>,
        order_vars: OrderKind,
        order_params: OrderKind,
    ) -> Result<Arc<Ring>, ArithError> {
        if params.is_empty() && vars.is_empty() {
            return Err(ArithError::EmptyRing);
        }
        let mut seen = std::collections::HashSet::new();
        for n in params.iter().chain(vars.iter()) {
            if !seen.insert(n.as_str()) {
                return Err(ArithError::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(Ring {
            param_ring: PolyRing::with_kind(params.clone(), order_params),
            var_ring: PolyRing::with_kind(vars.clone(), order_vars),
            params,
            vars,
            order_vars: MonomialOrder {
                kind: order_vars,
                block: Block::Vars,
            },
            order_params: MonomialOrder {
                kind: order_params,
                block: Block::Params,
            },
        }))
    }

    /// Both blocks ordered lexicographically.
    pub fn lex(params: &[&str], vars: &[&str]) -> Arc<Ring> {
        Ring::new(
            params.iter().map(|s| s.to_string()).collect(),
            vars.iter().map(|s| s.to_string()).collect(),
            OrderKind::Lex,
            OrderKind::Lex,
        )
        .expect("valid ring")
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order_vars(&self) -> MonomialOrder {
        self.order_vars
    }

    pub fn order_params(&self) -> MonomialOrder {
        self.order_params
    }

    /// `Q[a]` ordered by the parameter order.
    pub fn param_ring(&self) -> &Arc<PolyRing> {
        &self.param_ring
    }

    /// `Q[x]` ordered by the variable order.
    pub fn var_ring(&self) -> &Arc<PolyRing> {
        &self.var_ring
    }

    fn xorder(&self) -> &TermOrder {
        self.var_ring.order()
    }

    /// Compares power products of the variable block.
    pub fn cmp_x(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.xorder().cmp(a, b)
    }
}

/// A polynomial of `K[a][x]`, stored as `x`-power products with nonzero
/// coefficients in `K[a]`, sorted by decreasing `x`-order.
#[derive(Clone)]
pub struct ParamPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Poly)>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for ParamPoly {}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl ParamPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        ParamPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    /// A polynomial that is constant in `x`.
    pub fn from_coeff(ring: &Arc<Ring>, c: Poly) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        ParamPoly {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_coeff(ring, Poly::one(ring.param_ring()))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        ParamPoly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), Poly::one(ring.param_ring()))],
        }
    }

    pub fn param(ring: &Arc<Ring>, i: usize) -> Self {
        Self::from_coeff(ring, Poly::var(ring.param_ring(), i))
    }

    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Poly)>) -> Self {
        let ord = ring.xorder();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Poly)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        ParamPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Poly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant in `x` (possibly zero).
    pub fn is_x_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Leading power product in `x`.
    pub fn lpp(&self) -> Result<&Monomial, ArithError> {
        self.terms.first().map(|t| &t.0).ok_or(ArithError::ZeroPolynomial)
    }

    /// Leading coefficient in `K[a]`.
    pub fn lc(&self) -> Result<&Poly, ArithError> {
        self.terms.first().map(|t| &t.1).ok_or(ArithError::ZeroPolynomial)
    }

    /// Coefficient of the `x`-power product `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Poly {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| Poly::zero(self.ring.param_ring()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, c)| m.degree() + c.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Drops the leading term.
    pub fn tail(&self) -> ParamPoly {
        ParamPoly {
            ring: self.ring.clone(),
            terms: self.terms[1.min(self.terms.len())..].to_vec(),
        }
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Poly) -> Poly) -> ParamPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c2 = f(c);
                (!c2.is_zero()).then(|| (m.clone(), c2))
            })
            .collect();
        ParamPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_coeff(&self, c: &Poly) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.ring);
        }
        self.map_coeffs(|a| a * c)
    }

    pub fn scale(&self, c: &Q) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.ring);
        }
        self.map_coeffs(|a| a.scale(c))
    }

    /// `self * c * m` for a coefficient `c` and `x`-power product `m`.
    pub fn mul_term(&self, m: &Monomial, c: &Poly) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.ring);
        }
        ParamPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Gcd over `K[a]` of all coefficients.
    pub fn content(&self) -> Poly {
        let mut acc = Poly::zero(self.ring.param_ring());
        for (_, c) in &self.terms {
            acc = gcd(&acc, c);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Splits `self = c * g` with `g` of content 1 over `K[a]`, integer
    /// coefficients and a positive leading rational coefficient.
    pub fn content_normalize(&self) -> (Poly, ParamPoly) {
        if self.is_zero() {
            let z = Poly::zero(self.ring.param_ring());
            return (z, self.clone());
        }
        let c = self.content();
        let g = self.map_coeffs(|a| a.div_exact(&c).expect("content divides"));
        let (r, g) = g.rational_split();
        (c.scale(&r), g)
    }

    /// `self = r * g` with `r` rational, `g` integer-primitive and with a
    /// positive leading rational coefficient.
    pub fn rational_split(&self) -> (Q, ParamPoly) {
        if self.is_zero() {
            return (Q::zero(), self.clone());
        }
        let g = self;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, a) in &g.terms {
            for (_, x) in a.terms() {
                num = num.gcd(x.numer());
                den = den.lcm(x.denom());
            }
        }
        let mut r = Q::new(num, den);
        if g.terms[0].1.lc().is_negative() {
            r = -r;
        }
        (r.clone(), g.scale(&r.recip()))
    }

    /// The `content_normalize` cofactor alone.
    pub fn normalized(&self) -> ParamPoly {
        self.content_normalize().1
    }

    /// Substitutes parameter values, giving a polynomial in `Q[x]`.
    pub fn specialize(&self, point: &[Q]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.eval(point)))
            .collect();
        Poly::from_terms(self.ring.var_ring(), terms)
    }

    /// Canonical total order: `x`-order first, then coefficients.
    pub fn cmp_canonical(&self, other: &ParamPoly) -> Ordering {
        let ord = self.ring.xorder();
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = ord.cmp(&a.0, &b.0).then_with(|| a.1.cmp_canonical(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let pnames = self.ring.params.clone();
        let vnames = self.ring.vars.clone();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if m.is_one() {
                let mut s = String::new();
                c.fmt_with(&pnames, &mut s)?;
                if k > 0 {
                    if let Some(rest) = s.strip_prefix('-') {
                        write!(f, " - {rest}")?;
                    } else {
                        write!(f, " + {s}")?;
                    }
                } else {
                    f.write_str(&s)?;
                }
                continue;
            }
            let mono = m.to_string_with(&vnames);
            if c.len() == 1 {
                let (cm, cc) = &c.terms()[0];
                let neg = cc.is_negative();
                let a = cc.abs();
                if k > 0 {
                    f.write_str(if neg { " - " } else { " + " })?;
                } else if neg {
                    f.write_char('-')?;
                }
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if !cm.is_one() {
                    write!(f, "{}*", cm.to_string_with(&pnames))?;
                }
                f.write_str(&mono)?;
            } else {
                if k > 0 {
                    f.write_str(" + ")?;
                }
                let mut s = String::new();
                c.fmt_with(&pnames, &mut s)?;
                write!(f, "({s})*{mono}")?;
            }
        }
        Ok(())
    }
}

use std::fmt::Write as _;

fn merge(a: &ParamPoly, b: &ParamPoly, negate: bool) -> ParamPoly {
    let ord = a.ring.xorder();
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let c = if i == a.terms.len() {
            Ordering::Less
        } else if j == b.terms.len() {
            Ordering::Greater
        } else {
            ord.cmp(&a.terms[i].0, &b.terms[j].0)
        };
        match c {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let t = &b.terms[j];
                out.push((t.0.clone(), if negate { -&t.1 } else { t.1.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let s = if negate {
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
    ParamPoly {
        ring: a.ring.clone(),
        terms: out,
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        merge(self, rhs, true)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                terms.push((m.mul(n), c * d));
            }
        }
        ParamPoly::from_terms(&self.ring, terms)
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

/// Leading power product of `f` under the ring's variable order.
pub fn lpp(f: &ParamPoly) -> Result<Monomial, ArithError> {
    f.lpp().cloned()
}

/// Leading coefficient of `f` in `K[a]`.
pub fn lc(f: &ParamPoly) -> Result<Poly, ArithError> {
    f.lc().cloned()
}

/// `f = c * g` with `g` of content one; see [`ParamPoly::content_normalize`].
pub fn content_normalize(f: &ParamPoly) -> (Poly, ParamPoly) {
    f.content_normalize()
}

impl ParamPoly {
    /// Returns true if the polynomial is a nonzero rational constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1.lc().is_one()
    }

    /// Number of nonzero terms over `K`.
    pub fn num_terms(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).sum()
    }

    pub fn zero_coeff(&self) -> Q {
        Q::zero()
    }
}
