//! Packing terminal cases with a common lpp set into intrinsic segments:
//! DECIDE, the GENIMAGE search for common pre-images, sheaves, and the
//! MCCGS driver.

use std::sync::Arc;

use crate::arith::{Monomial, ParamPoly, Poly, Ring, Q};
use crate::buildtree::{
    buildtree, group_by_lpp, label_string, terminal_cases, BuildError, BuildOptions, Case, Cgs,
    LppSet, Vertex,
};
use crate::canspec::{difftocanspec, redspec_to_diffspec, CanSpec};
use crate::factor::DEFAULT_DEGREE_BOUND;
use crate::groebner::{divide, gbex, ideal_intersection_all, normal_form, Ideal};
use crate::spec::{make_redspec, specialize, specializes_well, ParamPoint, RedSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeOptions {
    /// Bound on the total exponent of `w1 ∈ W1*`.
    pub genimage_l: u32,
    /// Bound on the total exponent of `w2 ∈ W2*`.
    pub genimage_m: u32,
    pub factor_bound: u32,
}

impl Default for MergeOptions {
    fn default() -> Self {
        MergeOptions {
            genimage_l: 2,
            genimage_m: 2,
            factor_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

/// A basis element: one polynomial, or a sheaf of polynomials sharing an
/// lpp of which at least one specializes well at every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafEntry {
    pub members: Vec<ParamPoly>,
}

impl SheafEntry {
    pub fn single(f: ParamPoly) -> Self {
        SheafEntry { members: vec![f] }
    }

    pub fn is_sheaf(&self) -> bool {
        self.members.len() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Poly(ParamPoly),
    Sheaf(Vec<ParamPoly>),
    NotFound,
}

#[derive(Clone, Debug)]
pub struct MergedSegment {
    pub lpp_set: Vec<Monomial>,
    pub basis: Vec<SheafEntry>,
    pub subsegments: Vec<RedSpec>,
    pub canspecs: Vec<CanSpec>,
    /// Labels of the absorbed terminal cases.
    pub labels: Vec<Vec<u8>>,
}

/// Exponent vectors of length `n` and total degree at most `bound`, by
/// increasing degree.
fn exponent_vectors(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn fill(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            fill(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in 0..=bound {
        fill(n, d, &mut Vec::new(), &mut out);
    }
    out
}

fn w_product(ws: &[Poly], exps: &[u32], ring: &Arc<crate::arith::PolyRing>) -> Poly {
    ws.iter()
        .zip(exps)
        .fold(Poly::one(ring), |acc, (w, &e)| &acc * &w.pow(e))
}

/// Support of `f1` and `f2`, largest first.
fn support(f1: &ParamPoly, f2: &ParamPoly) -> Vec<Monomial> {
    let ring = f1.ring();
    let mut out: Vec<Monomial> = f1.terms().iter().map(|t| t.0.clone()).collect();
    for (m, _) in f2.terms() {
        if !out.contains(m) {
            out.push(m.clone());
        }
    }
    out.sort_by(|a, b| ring.cmp_x(b, a));
    out
}

/// `(k1, k2)` with `k1 P - k2 Q ∈ N` at the first term where the two sides
/// do not both vanish, or `(1, 1)` if they always do.
fn choose_k(pairs: &[(Poly, Poly)]) -> Option<(Q, Q)> {
    for (p, q) in pairs {
        match (p.is_zero(), q.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let r = p.lc() / q.lc();
                return (&q.scale(&r) == p).then(|| (Q::from_integer(1.into()), r));
            }
            _ => return None,
        }
    }
    Some((Q::from_integer(1.into()), Q::from_integer(1.into())))
}

/// Searches for `F` specializing well to `f1` on `spec1` and to `f2` on
/// `spec2`, with multipliers `w1 = W1(λ)`, `|λ| <= l`, and `w2 = W2(μ)`,
/// `|μ| <= m`.
pub fn genimage(
    f1: &ParamPoly,
    spec1: &RedSpec,
    f2: &ParamPoly,
    spec2: &RedSpec,
    l: u32,
    m: u32,
) -> Option<ParamPoly> {
    let accept = |f: &ParamPoly| specializes_well(f, f1, spec1) && specializes_well(f, f2, spec2);
    genimage_with(f1, spec1, f2, spec2, l, m, &accept)
}

/// [`genimage`] with the acceptance test supplied by the caller; used when
/// `spec1` stands for several absorbed segments.
#[allow(clippy::too_many_arguments)]
fn genimage_with(
    f1: &ParamPoly,
    spec1: &RedSpec,
    f2: &ParamPoly,
    spec2: &RedSpec,
    l: u32,
    m: u32,
    accept: &dyn Fn(&ParamPoly) -> bool,
) -> Option<ParamPoly> {
    if f1.lpp().ok()? != f2.lpp().ok()? {
        return None;
    }
    let pring = spec1.ring().clone();
    let mut gens: Vec<Poly> = spec1.n().gb().to_vec();
    let n1 = gens.len();
    gens.extend(spec2.n().gb().iter().cloned());
    let ex = gbex(&gens);
    let alphas = support(f1, f2);
    let coeffs: Vec<(Poly, Poly)> = alphas.iter().map(|a| (f1.coeff(a), f2.coeff(a))).collect();
    let nf = |p: &Poly| normal_form(p, &ex.basis);
    let lams = exponent_vectors(spec1.w().len(), l);
    let mus = exponent_vectors(spec2.w().len(), m);
    for lam in &lams {
        let w1 = w_product(spec1.w(), lam, &pring);
        for mu in &mus {
            let w2 = w_product(spec2.w(), mu, &pring);
            let scaled: Vec<(Poly, Poly)> =
                coeffs.iter().map(|(a, b)| (&w1 * a, &w2 * b)).collect();
            let reduced: Vec<(Poly, Poly)> = scaled.iter().map(|(p, q)| (nf(p), nf(q))).collect();
            let Some((k1, k2)) = choose_k(&reduced) else { continue };
            let ok = reduced
                .iter()
                .all(|(p, q)| (&p.scale(&k1) - &q.scale(&k2)).is_zero());
            if !ok {
                continue;
            }
            let mut terms = Vec::new();
            for (alpha, (p, q)) in alphas.iter().zip(&scaled) {
                let lhs = p.scale(&k1);
                let h = &lhs - &q.scale(&k2);
                let (quots, rem) = divide(&h, &ex.basis);
                debug_assert!(rem.is_zero());
                let mut n1_part = Poly::zero(&pring);
                for (qi, row) in quots.iter().zip(&ex.matrix) {
                    for (j, mij) in row.iter().enumerate().take(n1) {
                        n1_part = &n1_part + &(&(qi * mij) * &gens[j]);
                    }
                }
                terms.push((alpha.clone(), &lhs - &n1_part));
            }
            let big_f = ParamPoly::from_terms(f1.ring(), terms);
            for cand in [big_f.normalized(), big_f.rational_split().1] {
                if accept(&cand) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn s_poly(f1: &ParamPoly, f2: &ParamPoly) -> ParamPoly {
    &f1.mul_coeff(f2.lc().unwrap()) - &f2.mul_coeff(f1.lc().unwrap())
}

/// The branch table for two corresponding basis polynomials with equal
/// lpp.
pub fn decide(
    f1: &ParamPoly,
    spec1: &RedSpec,
    f2: &ParamPoly,
    spec2: &RedSpec,
    opts: &MergeOptions,
) -> Decision {
    let accept = |f: &ParamPoly| specializes_well(f, f1, spec1) && specializes_well(f, f2, spec2);
    decide_with(f1, spec1, f2, spec2, opts, &accept)
}

fn decide_with(
    f1: &ParamPoly,
    spec1: &RedSpec,
    f2: &ParamPoly,
    spec2: &RedSpec,
    opts: &MergeOptions,
    accept: &dyn Fn(&ParamPoly) -> bool,
) -> Decision {
    let s = s_poly(f1, f2);
    let search = || match genimage_with(f1, spec1, f2, spec2, opts.genimage_l, opts.genimage_m, accept) {
        Some(big_f) => Decision::Poly(big_f),
        None => Decision::NotFound,
    };
    if !spec2.reduce(&s).is_zero() {
        return search();
    }
    if spec2.wstar_member(&spec2.n().reduce(f1.lc().unwrap())) {
        debug_assert!(specializes_well(f1, f2, spec2));
        return Decision::Poly(f1.clone());
    }
    if !spec1.reduce(&s).is_zero() {
        return search();
    }
    if spec1.wstar_member(&spec1.n().reduce(f2.lc().unwrap())) {
        debug_assert!(specializes_well(f2, f1, spec1));
        return Decision::Poly(f2.clone());
    }
    Decision::Sheaf(vec![f1.clone(), f2.clone()])
}

fn decide_entry(
    entry: &SheafEntry,
    spec1: &RedSpec,
    f2: &ParamPoly,
    spec2: &RedSpec,
    opts: &MergeOptions,
    accept: &dyn Fn(&ParamPoly) -> bool,
) -> Option<SheafEntry> {
    if !entry.is_sheaf() {
        return match decide_with(&entry.members[0], spec1, f2, spec2, opts, accept) {
            Decision::Poly(f) => Some(SheafEntry::single(f)),
            Decision::Sheaf(members) => Some(SheafEntry { members }),
            Decision::NotFound => None,
        };
    }
    let on2 = entry.members.iter().all(|g| spec2.reduce(&s_poly(g, f2)).is_zero());
    if !on2 {
        return None;
    }
    let lc_in_w2 = |g: &ParamPoly| spec2.wstar_member(&spec2.n().reduce(g.lc().unwrap()));
    if entry.members.iter().any(lc_in_w2) {
        return Some(entry.clone());
    }
    let on1 = entry.members.iter().all(|g| spec1.reduce(&s_poly(g, f2)).is_zero());
    on1.then(|| {
        let mut members = entry.members.clone();
        members.push(f2.clone());
        SheafEntry { members }
    })
}

/// Conditions common to all subsegments: `N = ∩ N_i`, and the non-null
/// conditions of any subsegment that are non-null on all of them.
pub fn common_spec(subs: &[RedSpec], bound: u32) -> RedSpec {
    if subs.len() == 1 {
        return subs[0].clone();
    }
    let ring = subs[0].ring();
    let ns: Vec<Ideal> = subs.iter().map(|s| s.n().clone()).collect();
    let n = ideal_intersection_all(&ns, ring);
    let mut cand: Vec<Poly> = Vec::new();
    for s in subs {
        for w in s.w() {
            if !cand.contains(w) {
                cand.push(w.clone());
            }
        }
    }
    cand.retain(|w| subs.iter().all(|s| s.nonnull_on(w)));
    make_redspec(&n, &cand, bound).expect("a union of nonempty segments is nonempty")
}

struct Acc {
    basis: Vec<SheafEntry>,
    subs: Vec<RedSpec>,
    /// The original basis of each absorbed case.
    bases: Vec<Vec<ParamPoly>>,
    common: RedSpec,
    labels: Vec<Vec<u8>>,
}

fn try_absorb(acc: &Acc, case: &Case, opts: &MergeOptions) -> Option<Vec<SheafEntry>> {
    acc.basis
        .iter()
        .zip(&case.basis)
        .enumerate()
        .map(|(k, (e, f))| {
            let accept = |big_f: &ParamPoly| {
                specializes_well(big_f, f, &case.spec)
                    && acc
                        .subs
                        .iter()
                        .zip(&acc.bases)
                        .all(|(s, b)| specializes_well(big_f, &b[k], s))
            };
            decide_entry(e, &acc.common, f, &case.spec, opts, &accept)
        })
        .collect()
}

/// Greedy packing of a group of cases sharing an lpp set. Returns the
/// merged segments and diagnostics.
pub fn pack_group(
    group: &[Case],
    ring: &Ring,
    opts: &MergeOptions,
) -> (Vec<MergedSegment>, Vec<String>) {
    let mut accs: Vec<Acc> = Vec::new();
    let mut diags = Vec::new();
    for case in group {
        let mut placed = None;
        for (i, acc) in accs.iter().enumerate() {
            if let Some(basis) = try_absorb(acc, case, opts) {
                placed = Some((i, basis));
                break;
            }
        }
        match placed {
            Some((i, basis)) => {
                for (j, other) in accs.iter().enumerate() {
                    if j != i && try_absorb(other, case, opts).is_some() {
                        diags.push(format!(
                            "CONJECTURE-VIOLATION: case {} fits merged segments {i} and {j}",
                            label_string(&case.label)
                        ));
                    }
                }
                let acc = &mut accs[i];
                acc.basis = basis;
                acc.subs.push(case.spec.clone());
                acc.bases.push(case.basis.clone());
                acc.labels.push(case.label.clone());
                acc.common = common_spec(&acc.subs, opts.factor_bound);
            }
            None => {
                if !accs.is_empty() {
                    let msg = format!(
                        "no common reduced basis for lpp {}",
                        LppSet(&case.lpp_set, ring)
                    );
                    if !diags.contains(&msg) {
                        diags.push(msg);
                    }
                }
                accs.push(Acc {
                    basis: case.basis.iter().cloned().map(SheafEntry::single).collect(),
                    subs: vec![case.spec.clone()],
                    bases: vec![case.basis.clone()],
                    common: case.spec.clone(),
                    labels: vec![case.label.clone()],
                });
            }
        }
    }
    let lpp_set = group.first().map(|c| c.lpp_set.clone()).unwrap_or_default();
    let segs = accs
        .into_iter()
        .map(|a| MergedSegment {
            lpp_set: lpp_set.clone(),
            basis: a.basis,
            canspecs: a
                .subs
                .iter()
                .map(|s| difftocanspec(&redspec_to_diffspec(s), opts.factor_bound))
                .collect(),
            subsegments: a.subs,
            labels: a.labels,
        })
        .collect();
    (segs, diags)
}

/// The specialized basis of a merged segment at `p`, monic: for each entry
/// the member whose leading coefficient survives, provided every other
/// member specializes to a multiple of it or to 0.
pub fn segment_basis_at(basis: &[SheafEntry], p: &ParamPoint) -> Option<Vec<Poly>> {
    let mut out = Vec::with_capacity(basis.len());
    for e in basis {
        let specs: Vec<(Poly, bool)> = e
            .members
            .iter()
            .map(|f| {
                let lm = f.lpp().ok().cloned();
                let g = specialize(f, p);
                let good = !g.is_zero() && lm.as_ref() == Some(g.lm());
                (g, good)
            })
            .collect();
        let g = specs.iter().find(|s| s.1)?.0.monic();
        let proportional = specs
            .iter()
            .all(|(h, _)| h.is_zero() || h.monic() == g);
        if !proportional {
            return None;
        }
        out.push(g);
    }
    Some(out)
}

/// Output of the full pipeline.
#[derive(Clone, Debug)]
pub struct Mccgs {
    pub tree: Vertex,
    pub cgs: Cgs,
    pub segments: Vec<MergedSegment>,
    pub diagnostics: Vec<String>,
}

pub fn mccgs(
    system: &[ParamPoly],
    ring: &Arc<Ring>,
    build: &BuildOptions,
    opts: &MergeOptions,
) -> Result<Mccgs, BuildError> {
    let tree = buildtree(system, ring, build)?;
    let cgs = terminal_cases(&tree, ring);
    let mut diagnostics: Vec<String> = tree.warnings().into_iter().map(|w| format!("WARN: {w}")).collect();
    let mut segments = Vec::new();
    for group in group_by_lpp(&cgs) {
        let (segs, diags) = pack_group(&group, ring, opts);
        segments.extend(segs);
        diagnostics.extend(diags);
    }
    for s in &segments {
        for c in &s.canspecs {
            for w in &c.warnings {
                let w = format!("WARN: {w}");
                if !diagnostics.contains(&w) {
                    diagnostics.push(w);
                }
            }
        }
    }
    Ok(Mccgs {
        tree,
        cgs,
        segments,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_param, parse_poly};

    fn spec(r: &Arc<Ring>, n: &[&str], w: &[&str]) -> RedSpec {
        let n: Vec<Poly> = n.iter().map(|s| parse_param(r, s).unwrap()).collect();
        let w: Vec<Poly> = w.iter().map(|s| parse_param(r, s).unwrap()).collect();
        make_redspec(&Ideal::new(r.param_ring(), &n), &w, 6).unwrap()
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponent_vectors(2, 1), [vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(exponent_vectors(0, 3), [Vec::<u32>::new()]);
        assert_eq!(exponent_vectors(3, 2).len(), 10);
    }

    #[test]
    fn decide_branches() {
        let r = Ring::lex(&["a", "b", "c", "d"], &["x"]);
        let f = |s: &str| parse_poly(&r, s).unwrap();
        let s1 = spec(&r, &["a*d - c*b"], &["a", "c"]);
        let s2 = spec(&r, &["d", "c"], &["a"]);
        let opts = MergeOptions::default();
        assert_eq!(
            decide(&f("c*x + d"), &s1, &f("a*x + b"), &s2, &opts),
            Decision::Poly(f("a*x + b"))
        );
        let s1 = spec(&r, &["a*d - c*b"], &["c"]);
        assert_eq!(
            decide(&f("c*x + d"), &s1, &f("a*x + b"), &s2, &opts),
            Decision::Sheaf(vec![f("c*x + d"), f("a*x + b")])
        );
        assert_eq!(
            genimage(&f("c*x + d"), &s1, &f("c*x + d"), &s1, 2, 2),
            Some(f("c*x + d"))
        );
    }

    #[test]
    fn no_preimage() {
        let r = Ring::lex(&["u"], &["x"]);
        let f = |s: &str| parse_poly(&r, s).unwrap();
        let s1 = spec(&r, &[], &["u"]);
        let s2 = spec(&r, &["u"], &[]);
        for b in 0..=4 {
            assert_eq!(genimage(&f("u*x + 1"), &s1, &f("x"), &s2, b, b), None);
        }
        let opts = MergeOptions::default();
        assert_eq!(decide(&f("u*x + 1"), &s1, &f("x"), &s2, &opts), Decision::NotFound);
    }

    #[test]
    fn preimage_of_two_segments() {
        let r = Ring::lex(&["a", "b", "c"], &["x", "y"]);
        let f = |s: &str| parse_poly(&r, s).unwrap();
        let s1 = spec(&r, &["a + 3*b^2"], &["b - c", "c", "b"]);
        let s2 = spec(&r, &["b"], &["c", "a"]);
        let big = genimage(&f("y"), &s1, &f("a^2*y + 25"), &s2, 2, 2).unwrap();
        assert!(specializes_well(&big, &f("y"), &s1));
        assert!(specializes_well(&big, &f("a^2*y + 25"), &s2));
    }
}
