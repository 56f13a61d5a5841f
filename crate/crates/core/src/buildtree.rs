//! The dichotomic discussion tree: Buchberger completion over `K[a][x]`
//! that branches on the vanishing of every leading coefficient it cannot
//! decide from the current red-specification.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::gcd::gcd;
use crate::arith::{Monomial, ParamPoly, Poly, Ring};
use crate::factor::{squarefree_part, DEFAULT_DEGREE_BOUND};
use crate::spec::RedSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub factor_bound: u32,
    pub max_depth: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            factor_bound: DEFAULT_DEGREE_BOUND,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("the system has no nonzero polynomial")]
    EmptySystem,
    #[error("branch depth budget {budget} exceeded at vertex {label}")]
    DepthExceeded { budget: usize, label: String },
}

/// A vertex of the discussion tree. Internal vertices carry the basis at
/// the moment of branching; terminal vertices carry a reduced basis.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub label: Vec<u8>,
    pub spec: RedSpec,
    pub basis: Vec<ParamPoly>,
    /// `(null child, non-null child)`.
    pub children: Option<(Box<Vertex>, Box<Vertex>)>,
    pub branch_poly: Option<Poly>,
}

pub fn label_string(label: &[u8]) -> String {
    let parts: Vec<String> = label.iter().map(|b| b.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl Vertex {
    pub fn is_terminal(&self) -> bool {
        self.children.is_none()
    }

    /// Terminal vertices in depth-first order, non-null child first.
    pub fn terminals(&self) -> Vec<&Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(v) = stack.pop() {
            match &v.children {
                None => out.push(v),
                Some((null, nonnull)) => {
                    stack.push(null);
                    stack.push(nonnull);
                }
            }
        }
        out
    }

    /// Every vertex in preorder, non-null child first.
    pub fn vertices(&self) -> Vec<&Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(v) = stack.pop() {
            out.push(v);
            if let Some((null, nonnull)) = &v.children {
                stack.push(null);
                stack.push(nonnull);
            }
        }
        out
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in self.vertices() {
            for w in v.spec.warnings() {
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
        }
        out
    }
}

/// A terminal case: segment and reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub lpp_set: Vec<Monomial>,
    pub basis: Vec<ParamPoly>,
    pub spec: RedSpec,
    pub label: Vec<u8>,
}

impl Case {
    pub fn is_generic(&self) -> bool {
        self.label.iter().all(|&b| b == 1)
    }
}

/// Formats an lpp set such as `[y, x]`.
pub struct LppSet<'a>(pub &'a [Monomial], pub &'a Ring);

impl fmt::Display for LppSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string_with(self.1.vars())).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The disjoint reduced CGS given by the terminal vertices.
#[derive(Clone, Debug)]
pub struct Cgs {
    pub ring: Arc<Ring>,
    pub cases: Vec<Case>,
    pub generic_index: usize,
}

struct Builder<'a> {
    ring: &'a Arc<Ring>,
    opts: BuildOptions,
}

fn cmp_poly(ring: &Ring, f: &ParamPoly, g: &ParamPoly) -> Ordering {
    ring.cmp_x(f.lpp().unwrap(), g.lpp().unwrap())
        .then_with(|| f.cmp_canonical(g))
}

/// Splits `p = u * rest` with `u ∈ W*` maximal.
fn strip_w(p: &Poly, spec: &RedSpec) -> (Poly, Poly) {
    let mut rest = p.clone();
    let mut u = Poly::one(p.ring());
    for w in spec.w() {
        while !rest.is_constant() {
            match rest.div_exact(w) {
                Some(q) => {
                    rest = q;
                    u = &u * w;
                }
                None => break,
            }
        }
    }
    (u, rest)
}

/// Divides out the part of the content known to be non-null and the
/// rational content.
fn tidy(f: &ParamPoly, spec: &RedSpec) -> ParamPoly {
    if f.is_zero() {
        return f.clone();
    }
    let (u, _) = strip_w(&f.content(), spec);
    let g = f.map_coeffs(|a| a.div_exact(&u).expect("content divides"));
    g.rational_split().1
}

fn spoly(f: &ParamPoly, g: &ParamPoly, spec: &RedSpec) -> ParamPoly {
    let (mf, mg) = (f.lpp().unwrap(), g.lpp().unwrap());
    let l = mf.lcm(mg);
    let (a, b) = (f.lc().unwrap(), g.lc().unwrap());
    let d = gcd(a, b);
    let a = a.div_exact(&d).unwrap();
    let b = b.div_exact(&d).unwrap();
    let s = &f.mul_term(&l.div(mf), &b) - &g.mul_term(&l.div(mg), &a);
    spec.reduce(&s)
}

/// Full pseudo-reduction of `f` by `reducers`, whose leading coefficients
/// are non-null on the segment. `None` when no step applies.
fn reduce_full(f: &ParamPoly, reducers: &[&ParamPoly], spec: &RedSpec) -> Option<ParamPoly> {
    let ring = f.ring().clone();
    let mut r = f.clone();
    let mut changed = false;
    let mut k = 0;
    while k < r.terms().len() {
        let (m, c) = r.terms()[k].clone();
        let Some(g) = reducers.iter().find(|g| g.lpp().unwrap().divides(&m)) else {
            k += 1;
            continue;
        };
        let lg = g.lc().unwrap();
        let d = gcd(lg, &c);
        let a = lg.div_exact(&d).unwrap();
        let b = c.div_exact(&d).unwrap();
        r = &r.mul_coeff(&a) - &g.mul_term(&m.div(g.lpp().unwrap()), &b);
        r = spec.reduce(&r).rational_split().1;
        changed = true;
        k = r
            .terms()
            .iter()
            .take_while(|t| ring.cmp_x(&t.0, &m) == Ordering::Greater)
            .count();
    }
    changed.then(|| tidy(&r, spec))
}

impl Builder<'_> {
    fn grow(
        &self,
        label: Vec<u8>,
        mut spec: RedSpec,
        mut polys: Vec<ParamPoly>,
        mut done: Vec<(ParamPoly, ParamPoly)>,
    ) -> Result<Vertex, BuildError> {
        let ring = self.ring;
        let bound = self.opts.factor_bound;
        // Leading coefficients found non-null on the segment without
        // belonging to W*.
        let mut accepted: Vec<Poly> = Vec::new();
        'outer: loop {
            let mut next: Vec<ParamPoly> = Vec::new();
            for f in &polys {
                let r = spec.reduce(f);
                if !r.is_zero() && !next.contains(&r) {
                    next.push(r);
                }
            }
            polys = next;
            polys.sort_by(|f, g| cmp_poly(ring, f, g));

            let open = |c: &Poly| !spec.wstar_member(c) && !accepted.contains(c);
            if let Some(f) = polys.iter().find(|f| open(f.lc().unwrap())) {
                let lc = f.lc().unwrap().clone();
                let (_, rest) = strip_w(f.lc().unwrap(), &spec);
                let p = squarefree_part(&rest).expect("nonzero coefficient");
                let null = spec.with_null(&p, bound);
                let nonnull = spec.with_nonnull(&p, bound);
                match (null, nonnull) {
                    (Some(s0), Some(s1)) => {
                        if label.len() >= self.opts.max_depth {
                            return Err(BuildError::DepthExceeded {
                                budget: self.opts.max_depth,
                                label: label_string(&label),
                            });
                        }
                        let mut l1 = label.clone();
                        l1.push(1);
                        let c1 = self.grow(l1, s1, polys.clone(), done.clone())?;
                        let mut l0 = label.clone();
                        l0.push(0);
                        let c0 = self.grow(l0, s0, polys.clone(), Vec::new())?;
                        return Ok(Vertex {
                            label,
                            spec,
                            basis: polys,
                            children: Some((Box::new(c0), Box::new(c1))),
                            branch_poly: Some(p),
                        });
                    }
                    (None, Some(s1)) if s1 == spec => accepted.push(lc),
                    (None, Some(s1)) => spec = s1,
                    (Some(s0), None) => {
                        spec = s0;
                        done.clear();
                    }
                    (None, None) => unreachable!("a nonempty segment splits into nonempty parts"),
                }
                continue;
            }

            polys = polys.iter().map(|f| tidy(f, &spec)).collect();
            if polys.iter().any(|f| f.is_x_constant()) {
                return Ok(Vertex {
                    label,
                    spec,
                    basis: vec![ParamPoly::one(ring)],
                    children: None,
                    branch_poly: None,
                });
            }

            for i in (0..polys.len()).rev() {
                let others: Vec<&ParamPoly> =
                    polys.iter().enumerate().filter(|(j, _)| *j != i).map(|t| t.1).collect();
                if let Some(r) = reduce_full(&polys[i], &others, &spec) {
                    if r.is_zero() {
                        polys.remove(i);
                    } else {
                        polys[i] = r;
                    }
                    continue 'outer;
                }
            }

            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for j in 0..polys.len() {
                for i in 0..j {
                    let (mi, mj) = (polys[i].lpp().unwrap(), polys[j].lpp().unwrap());
                    if mi.is_coprime(mj) {
                        continue;
                    }
                    let key = (polys[i].clone(), polys[j].clone());
                    if !done.contains(&key) {
                        pairs.push((i, j));
                    }
                }
            }
            pairs.sort_by(|&(a, b), &(c, d)| {
                let l1 = polys[a].lpp().unwrap().lcm(polys[b].lpp().unwrap());
                let l2 = polys[c].lpp().unwrap().lcm(polys[d].lpp().unwrap());
                ring.cmp_x(&l1, &l2)
            });
            for (i, j) in pairs {
                done.push((polys[i].clone(), polys[j].clone()));
                let s = spoly(&polys[i], &polys[j], &spec);
                let refs: Vec<&ParamPoly> = polys.iter().collect();
                let r = match reduce_full(&s, &refs, &spec) {
                    Some(r) => r,
                    None => tidy(&s, &spec),
                };
                if !r.is_zero() {
                    polys.push(r);
                    continue 'outer;
                }
            }

            polys.sort_by(|f, g| ring.cmp_x(f.lpp().unwrap(), g.lpp().unwrap()));
            return Ok(Vertex {
                label,
                spec,
                basis: polys,
                children: None,
                branch_poly: None,
            });
        }
    }
}

/// Builds the discussion tree of the ideal generated by `system`.
pub fn buildtree(
    system: &[ParamPoly],
    ring: &Arc<Ring>,
    opts: &BuildOptions,
) -> Result<Vertex, BuildError> {
    let polys: Vec<ParamPoly> = system.iter().filter(|f| !f.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Err(BuildError::EmptySystem);
    }
    let b = Builder { ring, opts: *opts };
    b.grow(Vec::new(), RedSpec::full(ring.param_ring()), polys, Vec::new())
}

/// The terminal cases, generic case first.
pub fn terminal_cases(tree: &Vertex, ring: &Arc<Ring>) -> Cgs {
    let mut cases: Vec<Case> = tree
        .terminals()
        .into_iter()
        .map(|v| Case {
            lpp_set: v.basis.iter().map(|f| f.lpp().unwrap().clone()).collect(),
            basis: v.basis.clone(),
            spec: v.spec.clone(),
            label: v.label.clone(),
        })
        .collect();
    let g = cases.iter().position(|c| c.is_generic()).expect("all-ones vertex");
    let generic = cases.remove(g);
    cases.insert(0, generic);
    Cgs {
        ring: ring.clone(),
        cases,
        generic_index: 0,
    }
}

/// Order on lpp sets: larger sets first, then by the elements from the
/// largest down.
pub fn cmp_lpp_sets(ring: &Ring, a: &[Monomial], b: &[Monomial]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            let c = ring.cmp_x(x, y);
            if c.is_ne() {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Groups cases by lpp set: the generic case's group first, then the
/// others in lpp-set order; cases keep their relative order.
pub fn group_by_lpp(cgs: &Cgs) -> Vec<Vec<Case>> {
    let mut groups: Vec<Vec<Case>> = Vec::new();
    for c in &cgs.cases {
        match groups.iter_mut().find(|g| g[0].lpp_set == c.lpp_set) {
            Some(g) => g.push(c.clone()),
            None => groups.push(vec![c.clone()]),
        }
    }
    let generic = cgs.cases[cgs.generic_index].lpp_set.clone();
    groups.sort_by(|a, b| {
        let (ga, gb) = (a[0].lpp_set == generic, b[0].lpp_set == generic);
        gb.cmp(&ga)
            .then_with(|| cmp_lpp_sets(&cgs.ring, &a[0].lpp_set, &b[0].lpp_set))
    });
    groups
}
