//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use mccgs_core::arith::{parse_param, parse_poly, ParamPoly};
use mccgs_core::buildtree::{buildtree, group_by_lpp, terminal_cases, BuildOptions, Case, Cgs, LppSet, Vertex};
use mccgs_core::canspec::{difftocanspec, redspec_to_diffspec, DiffSpec};
use mccgs_core::factor::irreducible_factors;
use mccgs_core::groebner::{ideal_equal, ideal_intersection_all, ideal_quotient, saturation, Ideal};
use mccgs_core::merge::{genimage, mccgs, pack_group, segment_basis_at, MergeOptions};
use mccgs_core::primedec::minimal_primes;
use mccgs_core::spec::{
    reduced_basis_at, sample_points, segment_contains, small_rational, specialize, specializes_well, ParamPoint,
    RedSpec,
};
use mccgs_core::{Poly, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND: u32 = 6;
const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Problem {
    name: String,
    ring: Arc<Ring>,
    system: Vec<ParamPoly>,
}

impl Problem {
    fn new(name: &str, params: &[&str], vars: &[&str], src: &[&str]) -> Problem {
        let ring = Ring::lex(params, vars);
        let system = src.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
        Problem {
            name: name.to_string(),
            ring,
            system,
        }
    }

    fn tree(&self) -> Vertex {
        buildtree(&self.system, &self.ring, &BuildOptions::default()).unwrap()
    }

    fn cgs(&self) -> Cgs {
        terminal_cases(&self.tree(), &self.ring)
    }

    fn poly(&self, s: &str) -> ParamPoly {
        parse_poly(&self.ring, s).unwrap()
    }

    fn ideal(&self, gens: &[&str]) -> Ideal {
        let g: Vec<Poly> = gens.iter().map(|s| parse_param(&self.ring, s).unwrap()).collect();
        Ideal::new(self.ring.param_ring(), &g)
    }
}

fn two_lines() -> Problem {
    Problem::new("two_lines", &["a", "b", "c", "d"], &["x"], &["a*x + b", "c*x + d"])
}

fn no_common_basis() -> Problem {
    Problem::new("no_common_basis", &["u"], &["x"], &["u*(u*x + 1)", "(u*x + 1)*x"])
}

fn three_cases() -> Problem {
    Problem::new(
        "three_cases",
        &["a", "b", "c"],
        &["x", "y"],
        &["a*x^2*y + a + 3*b^2", "a*(b - c)*x*y + a*b*x + 5*c"],
    )
}

struct Row {
    lpp: &'static str,
    basis: &'static [&'static str],
    n: &'static [&'static str],
    w: &'static [&'static str],
}

const fn row(
    lpp: &'static str,
    basis: &'static [&'static str],
    n: &'static [&'static str],
    w: &'static [&'static str],
) -> Row {
    Row { lpp, basis, n, w }
}

fn factor_set(ws: &[Poly]) -> BTreeSet<String> {
    ws.iter()
        .flat_map(|w| irreducible_factors(w, BOUND).0)
        .map(|f| f.to_string())
        .collect()
}

fn row_matches(p: &Problem, case: &Case, r: &Row) -> bool {
    if LppSet(&case.lpp_set, &p.ring).to_string() != r.lpp || case.basis.len() != r.basis.len() {
        return false;
    }
    let basis_ok = case
        .basis
        .iter()
        .zip(r.basis)
        .all(|(f, s)| f.normalized() == p.poly(s).normalized());
    let w: Vec<Poly> = r.w.iter().map(|s| parse_param(&p.ring, s).unwrap()).collect();
    basis_ok && ideal_equal(case.spec.n(), &p.ideal(r.n)) && factor_set(&w) == factor_set(case.spec.w())
}

/// Matches table rows to distinct cases.
fn match_rows(p: &Problem, cases: &[Case], rows: &[Row]) -> Result<(), String> {
    let mut used = vec![false; cases.len()];
    for r in rows {
        let hit = (0..cases.len()).find(|&i| !used[i] && row_matches(p, &cases[i], r));
        match hit {
            Some(i) => used[i] = true,
            None => return Err(format!("no case matches row {} {:?} {:?} {:?}", r.lpp, r.basis, r.n, r.w)),
        }
    }
    Ok(())
}

const TWO_LINES_ROWS: [Row; 10] = [
    row("[1]", &["1"], &[], &["a", "a*d - c*b", "c"]),
    row("[1]", &["1"], &["c"], &["a", "d"]),
    row("[1]", &["1"], &["a"], &["b", "c"]),
    row("[1]", &["1"], &["c", "a"], &["b", "d"]),
    row("[1]", &["1"], &["d", "c", "a"], &["b"]),
    row("[1]", &["1"], &["c", "b", "a"], &["d"]),
    row("[x]", &["c*x + d"], &["a*d - c*b"], &["a", "c"]),
    row("[x]", &["a*x + b"], &["d", "c"], &["a"]),
    row("[x]", &["c*x + d"], &["b", "a"], &["c"]),
    row("[]", &[], &["d", "c", "b", "a"], &[]),
];

const NO_COMMON_ROWS: [Row; 2] = [
    row("[x]", &["u*x + 1"], &[], &["u"]),
    row("[x]", &["x"], &["u"], &[]),
];

const THREE_CASES_YX_ROWS: [Row; 3] = [
    row("[y, x]", &["y", "3*b^3*x - 5*c"], &["a + 3*b^2"], &["b - c", "c", "b"]),
    row("[y, x]", &["a^2*y + 25", "5*x + a"], &["b"], &["c", "a"]),
    row("[y, x]", &["25*y + 3*a*c^2 + a^2", "a*x + 5"], &["b - c"], &["c", "a"]),
];

const B123: [&str; 2] = [
    "(25*b*c - 25*a^3*b - 75*b^3*a^2 + 25*c*a^3 + 75*a^2*b^2*c)*y - 625*a*b + 1875*c*b^2 + 625*a*c \
     + a^2*b*c + 3*a*b^3*c - 1875*b^3",
    "(b*a^2 - 15*a*b + 15*a*c - 9*b^5 + 9*b^4*c - 45*b^3 + 45*c*b^2)*x - 3*b*a^2 + 3*a^2*c + 5*a*b \
     + 27*b^5 - 27*b^4*c + 15*b^3 - 15*b*c^2",
];

fn criterion_1() -> Outcome {
    let p = two_lines();
    let cgs = p.cgs();
    ensure(cgs.cases.len() == 10, || format!("{} terminal cases", cgs.cases.len()))?;
    match_rows(&p, &cgs.cases, &TWO_LINES_ROWS)?;
    Ok("10 cases, every row of the table matched".into())
}

fn criterion_2() -> Outcome {
    let p = two_lines();
    let m = mccgs(&p.system, &p.ring, &BuildOptions::default(), &MergeOptions::default()).unwrap();
    ensure(m.segments.len() == 3, || format!("{} merged segments", m.segments.len()))?;
    let seg = |lpp: &str| {
        m.segments
            .iter()
            .find(|s| LppSet(&s.lpp_set, &p.ring).to_string() == lpp)
            .ok_or_else(|| format!("no merged segment with lpp {lpp}"))
    };
    let one = seg("[1]")?;
    ensure(one.subsegments.len() == 6, || format!("[1] has {} subsegments", one.subsegments.len()))?;
    ensure(one.basis.len() == 1 && one.basis[0].members == [p.poly("1")], || "[1] basis".into())?;
    let x = seg("[x]")?;
    ensure(x.subsegments.len() == 3, || format!("[x] has {} subsegments", x.subsegments.len()))?;
    let members: BTreeSet<String> = x.basis[0].members.iter().map(|f| f.normalized().to_string()).collect();
    let expected: BTreeSet<String> = ["c*x + d", "a*x + b"].iter().map(|s| p.poly(s).to_string()).collect();
    ensure(x.basis.len() == 1 && members == expected, || format!("[x] basis {members:?}"))?;
    for n in [&["a*d - c*b"][..], &["d", "c"], &["b", "a"]] {
        ensure(x.subsegments.iter().any(|s| ideal_equal(s.n(), &p.ideal(n))), || format!("[x] misses N={n:?}"))?;
    }
    let empty = seg("[]")?;
    ensure(
        empty.subsegments.len() == 1
            && ideal_equal(empty.subsegments[0].n(), &p.ideal(&["d", "c", "b", "a"]))
            && empty.subsegments[0].w().is_empty(),
        || "[] segment".into(),
    )?;
    Ok("3 merged segments: [1] x6, [x] sheaf {c*x + d, a*x + b} x3, [] x1".into())
}

fn criterion_3() -> Outcome {
    let p = no_common_basis();
    let cgs = p.cgs();
    ensure(cgs.cases.len() == 2, || format!("{} terminal cases", cgs.cases.len()))?;
    match_rows(&p, &cgs.cases, &NO_COMMON_ROWS)?;
    let groups = group_by_lpp(&cgs);
    ensure(groups.len() == 1, || "cases do not share an lpp".into())?;
    let (segs, diags) = pack_group(&groups[0], &p.ring, &MergeOptions::default());
    ensure(segs.len() == 2, || format!("{} merged segments", segs.len()))?;
    let (c1, c2) = (&cgs.cases[0], &cgs.cases[1]);
    for l in 0..=4 {
        for m in 0..=4 {
            let fwd = genimage(&c1.basis[0], &c1.spec, &c2.basis[0], &c2.spec, l, m);
            let back = genimage(&c2.basis[0], &c2.spec, &c1.basis[0], &c1.spec, l, m);
            ensure(fwd.is_none() && back.is_none(), || format!("pre-image found at L={l}, M={m}"))?;
        }
    }
    Ok(format!("2 cases, 2 merged segments, no pre-image for L, M <= 4; {diags:?}"))
}

fn reduce_mod(f: &ParamPoly, n: &Ideal) -> ParamPoly {
    f.map_coeffs(|c| n.reduce(c))
}

fn criterion_4() -> Outcome {
    let p = three_cases();
    let cgs = p.cgs();
    ensure(cgs.cases.len() == 11, || format!("{} terminal cases", cgs.cases.len()))?;
    let groups = group_by_lpp(&cgs);
    let mut sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sizes == [3, 3, 1, 1, 1, 1, 1], || format!("group sizes {sizes:?}"))?;
    let lpp_of = |g: &Vec<Case>| LppSet(&g[0].lpp_set, &p.ring).to_string();
    let singletons: BTreeSet<String> = groups.iter().filter(|g| g.len() == 1).map(lpp_of).collect();
    let expected: BTreeSet<String> = ["[y^2, x]", "[y, x^2]", "[x*y, x^2]", "[x^2*y]", "[]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(singletons == expected, || format!("singleton lpps {singletons:?}"))?;
    let yx = groups
        .iter()
        .find(|g| lpp_of(g) == "[y, x]")
        .ok_or("no [y, x] group")?;
    ensure(yx.len() == 3, || format!("[y, x] group has {} cases", yx.len()))?;
    match_rows(&p, yx, &THREE_CASES_YX_ROWS)?;
    ensure(
        groups.iter().any(|g| g.len() == 3 && lpp_of(g) == "[1]"),
        || "no [1] group of size 3".into(),
    )?;

    let (segs, diags) = pack_group(yx, &p.ring, &MergeOptions::default());
    ensure(segs.len() == 1, || format!("[y, x] packs into {} segments: {diags:?}", segs.len()))?;
    let seg = &segs[0];
    ensure(seg.basis.iter().all(|e| !e.is_sheaf()), || "unexpected sheaf".into())?;
    let ours: Vec<ParamPoly> = seg.basis.iter().map(|e| e.members[0].clone()).collect();
    let reference: Vec<ParamPoly> = B123.iter().map(|s| p.poly(s)).collect();
    for case in yx.iter() {
        for k in 0..2 {
            ensure(specializes_well(&ours[k], &case.basis[k], &case.spec), || {
                format!("merged polynomial {k} does not specialize well on {}", case.spec)
            })?;
            ensure(specializes_well(&reference[k], &case.basis[k], &case.spec), || {
                format!("reference polynomial {k} does not specialize well on {}", case.spec)
            })?;
        }
    }
    let ns: Vec<Ideal> = yx.iter().map(|c| c.spec.n().clone()).collect();
    let inter = ideal_intersection_all(&ns, p.ring.param_ring());
    let mut literal = Vec::new();
    for k in 0..2 {
        let a = reduce_mod(&ours[k], &inter).rational_split().1;
        let b = reduce_mod(&reference[k], &inter).rational_split().1;
        ensure(a == b, || format!("polynomial {k} differs from the reference modulo the common null ideal"))?;
        literal.push(ours[k].rational_split().1 == reference[k].rational_split().1);
    }
    Ok(format!(
        "11 cases grouped (3,3,1,1,1,1,1); [y, x] merges into one segment; both polynomials specialize well on all \
         three subsegments and agree with the reference basis up to scalar modulo {inter}; literal equality per \
         polynomial {literal:?}"
    ))
}

fn criterion_5() -> Outcome {
    let p = two_lines();
    let d = DiffSpec {
        n: p.ideal(&["a*d - c*b"]),
        m: p.ideal(&["a*d - c*b", "a*c"]),
    };
    let c = difftocanspec(&d, BOUND);
    ensure(c.components.len() == 1, || format!("{} components", c.components.len()))?;
    let comp = &c.components[0];
    ensure(ideal_equal(&comp.prime, &d.n), || "component prime".into())?;
    let expected = [p.ideal(&["a", "b"]), p.ideal(&["a", "c"]), p.ideal(&["c", "d"])];
    ensure(comp.removed.len() == 3, || format!("{} removed primes", comp.removed.len()))?;
    for e in &expected {
        ensure(comp.removed.iter().any(|r| ideal_equal(r, e)), || format!("missing removed prime {e}"))?;
    }
    // The removed primes cut out exactly V(M): M ⊆ ∩ and (∩)^k ⊆ M.
    let inter = ideal_intersection_all(&comp.removed, p.ring.param_ring());
    ensure(inter.contains_ideal(&d.m), || "M not in the intersection".into())?;
    for g in inter.gb() {
        ensure((1..=3).any(|k| d.m.contains(&g.pow(k))), || format!("{g} not in the radical of M"))?;
    }
    let drop = difftocanspec(
        &DiffSpec {
            n: p.ideal(&["a*b"]),
            m: p.ideal(&["a"]),
        },
        BOUND,
    );
    ensure(
        drop.components.len() == 1
            && ideal_equal(&drop.components[0].prime, &p.ideal(&["b"]))
            && drop.components[0].removed.len() == 1
            && ideal_equal(&drop.components[0].removed[0], &p.ideal(&["a", "b"])),
        || format!("drop branch gave {drop}"),
    )?;
    let whole = difftocanspec(
        &DiffSpec {
            n: p.ideal(&["a"]),
            m: p.ideal(&["1"]),
        },
        BOUND,
    );
    ensure(
        whole.components.len() == 1 && whole.components[0].removed.is_empty(),
        || format!("nothing-to-subtract branch gave {whole}"),
    )?;
    Ok(format!("{c}; drop branch {drop}; nothing-to-subtract branch {whole}"))
}

fn random_poly_src(rng: &mut ChaCha8Rng, names: &[&str], vars: &[&str], max_deg: u32) -> String {
    let nterms = rng.gen_range(2..=3);
    let mut terms = Vec::new();
    for t in 0..nterms {
        let coeff: i64 = loop {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        let deg = rng.gen_range(if t == 0 { 1 } else { 0 }..=max_deg);
        let mut factors = vec![coeff.to_string()];
        for i in 0..deg {
            let pool = if t == 0 && i == 0 && !vars.is_empty() { vars } else { names };
            factors.push(pool[rng.gen_range(0..pool.len())].to_string());
        }
        terms.push(format!("({})", factors.join("*")));
    }
    terms.join(" + ")
}

fn random_systems(count: usize, rng: &mut ChaCha8Rng) -> Vec<Problem> {
    (0..count)
        .map(|i| {
            let params = &["a", "b", "c"][..rng.gen_range(1..=3)];
            let vars = &["x", "y"][..rng.gen_range(1..=2)];
            let names: Vec<&str> = vars.iter().chain(params).copied().collect();
            let src: Vec<String> = (0..2).map(|_| random_poly_src(rng, &names, vars, 2)).collect();
            let refs: Vec<&str> = src.iter().map(String::as_str).collect();
            Problem::new(&format!("random_{i}: {src:?}"), params, vars, &refs)
        })
        .collect()
}

fn all_systems(rng: &mut ChaCha8Rng) -> Vec<Problem> {
    let mut out = vec![two_lines(), no_common_basis(), three_cases()];
    out.extend(random_systems(10, rng));
    out
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> ParamPoint {
    let coords = (0..m)
        .map(|_| {
            if rng.gen_bool(0.4) {
                mccgs_core::arith::q(rng.gen_range(-1..=1))
            } else {
                small_rational(rng)
            }
        })
        .collect();
    ParamPoint::new(coords)
}

fn check_partition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for p in all_systems(&mut rng) {
        let cgs = p.cgs();
        let mut points: Vec<ParamPoint> = (0..100).map(|_| random_point(&mut rng, p.ring.nparams())).collect();
        for c in &cgs.cases {
            points.extend(sample_points(&c.spec, 3, &mut rng).unwrap_or_default());
        }
        for pt in &points {
            let hits = cgs.cases.iter().filter(|c| segment_contains(&c.spec, pt)).count();
            ensure(hits == 1, || format!("{}: point {pt} lies in {hits} segments", p.name))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} points over 13 systems each in exactly one segment"))
}

fn check_specialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut checked, mut sparse, mut unsampled) = (0, 0, 0);
    for p in all_systems(&mut rng) {
        let m = mccgs(&p.system, &p.ring, &BuildOptions::default(), &MergeOptions::default()).unwrap();
        for c in &m.cgs.cases {
            let points = match sample_points(&c.spec, 5, &mut rng) {
                Ok(pts) => pts,
                Err(_) => {
                    unsampled += 1;
                    continue;
                }
            };
            if points.len() < 5 {
                sparse += 1;
            }
            for pt in &points {
                let direct = reduced_basis_at(&p.system, pt);
                let ours: Vec<Poly> = c.basis.iter().map(|f| specialize(f, pt).monic()).collect();
                ensure(ours == direct, || {
                    format!("{}: case {} at {pt}: {ours:?} vs {direct:?}", p.name, c.spec)
                })?;
                checked += 1;
            }
        }
        for seg in &m.segments {
            for s in &seg.subsegments {
                for pt in sample_points(s, 5, &mut rng).unwrap_or_default() {
                    let direct = reduced_basis_at(&p.system, &pt);
                    ensure(segment_basis_at(&seg.basis, &pt).as_deref() == Some(direct.as_slice()), || {
                        format!("{}: merged segment on {s} fails at {pt}", p.name)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} point checks agree with the direct reduced basis; {sparse} segments have fewer than 5 rational \
         points, {unsampled} have no rational point"
    ))
}

fn emitted_specs(p: &Problem) -> Vec<RedSpec> {
    p.tree().vertices().into_iter().map(|v| v.spec.clone()).collect()
}

fn check_redspec_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut count = 0;
    for p in all_systems(&mut rng) {
        for s in emitted_specs(&p) {
            let primes = minimal_primes(s.n(), BOUND).primes;
            let rad = ideal_intersection_all(&primes, p.ring.param_ring());
            ensure(ideal_equal(&rad, s.n()), || format!("{}: N not radical in {s}", p.name))?;
            for (i, w) in s.w().iter().enumerate() {
                let (f, bad) = irreducible_factors(w, BOUND);
                ensure(bad.is_empty() && f.len() == 1, || format!("{}: {w} not irreducible", p.name))?;
                ensure(!s.w()[..i].contains(w), || format!("{}: {w} repeated", p.name))?;
            }
            for q in &primes {
                ensure(!q.contains(s.h()), || format!("{}: h in prime {q} of {s}", p.name))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} red-specifications radical, irreducible, h outside every prime"))
}

fn random_param_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>) -> Poly {
    let src = random_poly_src(rng, &ring.params().iter().map(String::as_str).collect::<Vec<_>>(), &[], 2);
    parse_param(ring, &src).unwrap()
}

fn check_prime_quotients() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let (mut primes_seen, mut quotients) = (0, 0);
    for p in [two_lines(), no_common_basis(), three_cases()] {
        let mut primes: Vec<Ideal> = Vec::new();
        let mut add = |q: &Ideal| {
            if !primes.iter().any(|r| ideal_equal(r, q)) {
                primes.push(q.clone());
            }
        };
        for s in emitted_specs(&p) {
            s.primes().primes.iter().for_each(&mut add);
            for c in difftocanspec(&redspec_to_diffspec(&s), BOUND).components {
                add(&c.prime);
                c.removed.iter().for_each(&mut add);
            }
        }
        let pr = p.ring.param_ring();
        for prime in &primes {
            let mut tried = 0;
            while tried < 20 {
                let k = rng.gen_range(1..=2);
                let gens: Vec<Poly> = (0..k).map(|_| random_param_poly(&mut rng, &p.ring)).collect();
                let q = Ideal::new(pr, &gens);
                if prime.contains_ideal(&q) {
                    continue;
                }
                ensure(ideal_equal(&ideal_quotient(prime, &q), prime), || format!("{prime} : {q} != {prime}"))?;
                tried += 1;
                quotients += 1;
            }
            primes_seen += 1;
        }
    }
    Ok(format!("P:Q = P for {primes_seen} primes, {quotients} quotients"))
}

/// Same ideal, different generators.
fn represent(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, i: &Ideal) -> Vec<Poly> {
    let gb = i.gb();
    let mut out: Vec<Poly> = gb.iter().map(|g| g.scale(&mccgs_core::arith::q(rng.gen_range(1..=4)))).collect();
    for (j, o) in out.iter_mut().enumerate() {
        for (k, g) in gb.iter().enumerate() {
            if j != k && rng.gen_bool(0.5) {
                *o = &*o + &g.scale(&mccgs_core::arith::q(rng.gen_range(-2..=2)));
            }
        }
    }
    if !gb.is_empty() {
        out.push(&gb[rng.gen_range(0..gb.len())] * &random_param_poly(rng, ring));
    }
    out.reverse();
    out
}

fn check_saturation_and_uniqueness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut specs = 0;
    for p in all_systems(&mut rng) {
        for s in emitted_specs(&p) {
            ensure(ideal_equal(&saturation(s.n(), s.h()), s.n()), || {
                format!("{}: N : h^inf != N for {s}", p.name)
            })?;
            specs += 1;
        }
    }
    let p = two_lines();
    let pr = p.ring.param_ring();
    let goldens = [
        (p.ideal(&["a*d - c*b"]), p.ideal(&["a*d - c*b", "a*c"])),
        (p.ideal(&["a*b"]), p.ideal(&["a"])),
        (p.ideal(&["a"]), p.ideal(&["1"])),
        (p.ideal(&["a"]), p.ideal(&["a"])),
    ];
    let mut reps = 0;
    for (n, m) in goldens {
        let reference = difftocanspec(&DiffSpec { n: n.clone(), m: m.clone() }, BOUND).to_string();
        for _ in 0..10 {
            let n2 = Ideal::new(pr, &represent(&mut rng, &p.ring, &n));
            // V(N) ∖ V(M) only depends on M modulo N and up to radical.
            let mut mgens: Vec<Poly> = m
                .gb()
                .iter()
                .map(|g| {
                    let e = rng.gen_range(1..=2);
                    match n.gb().first() {
                        Some(h) if rng.gen_bool(0.5) => &g.pow(e) + h,
                        _ => g.pow(e),
                    }
                })
                .collect();
            mgens.extend(represent(&mut rng, &p.ring, &m));
            let m2 = Ideal::new(pr, &mgens);
            let got = difftocanspec(&DiffSpec { n: n2, m: m2 }, BOUND).to_string();
            ensure(got == reference, || format!("{got} != {reference}"))?;
            reps += 1;
        }
    }
    Ok(format!("saturation identity on {specs} specs; {reps} re-presentations give identical can-specifications"))
}

fn check_genimage_postcondition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let (mut calls, mut found) = (0, 0);
    for p in all_systems(&mut rng) {
        let cgs = p.cgs();
        for g in group_by_lpp(&cgs) {
            for i in 0..g.len() {
                for j in 0..g.len() {
                    if i == j {
                        continue;
                    }
                    for k in 0..g[i].basis.len() {
                        let (f1, f2) = (&g[i].basis[k], &g[j].basis[k]);
                        calls += 1;
                        if let Some(big) = genimage(f1, &g[i].spec, f2, &g[j].spec, 2, 2) {
                            found += 1;
                            ensure(
                                specializes_well(&big, f1, &g[i].spec) && specializes_well(&big, f2, &g[j].spec),
                                || format!("{}: postcondition fails for {big}", p.name),
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{found} pre-images out of {calls} searches, all specialize well on both sides"))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1", "two-line system BUILDTREE table", criterion_1),
        ("2", "two-line system merged segments", criterion_2),
        ("3", "no common reduced basis", criterion_3),
        ("4", "three [y, x] cases merge", criterion_4),
        ("5", "diff-to-can-specification golden", criterion_5),
        ("6a", "partition at random points", check_partition),
        ("6b", "specialization against direct bases", check_specialization),
        ("6c", "red-specification invariants", check_redspec_invariants),
        ("6d", "prime quotient identity", check_prime_quotients),
        ("6e", "saturation identity and can-specification uniqueness", check_saturation_and_uniqueness),
        ("6f", "pre-image postcondition", check_genimage_postcondition),
    ];
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = std::time::Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name} ({secs:.2}s): {why}");
            }
        }
    }
    std::panic::set_hook(default_hook);
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
