//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use bspec::parse;
use bspec_core::duality::{
    converse_dual_direct, converse_dual_inverse, duality_direct_to_inverse, duality_inverse_hom, representative_gap,
    shape_pools, DualityReport, Shape,
};
use bspec_core::family::{DirectFamily, Direction};
use bspec_core::fixtures;
use bspec_core::gen::{small_indices, Gen};
use bspec_core::limits::{
    cocone_mediator, cofinal_direct_iso, cofinal_inverse_iso, cone_mediator, constant_limit_iso, inverse_limit_map,
    limit_map, product_inverse_morphism, product_limit_bijection, Cocone, Cone, DirectLimit, InverseLimit, IsoReport,
};
use bspec_core::order::{even_odd, validate_cofinal, CofinalSubset, DirectedIndex};
use bspec_core::setoid::{Setoid, SetoidFn};
use bspec_core::spectrum::{product_spectrum, Spectrum, SpectrumMap};
use bspec_core::topology::cert::{assemble, conclude};
use bspec_core::topology::{
    bic_modulus, check_morphism, lift_certificate, q, qr, BSpace, Certificate, MorphismWitness, RFun, Q,
};
use bspec_core::{Checks, Config, Outcome};
use rand::Rng;

/// Wall-clock budget for the whole run.
const BUDGET: Duration = Duration::from_secs(60);
// Arithmetic is exact, so every comparison below is an equality.
const SEED: u64 = 20_240_601;
const RANDOM_FAMILIES: usize = 200;
const FAMILIES_PER_INDEX: usize = 4;
const MAX_CARRIER: usize = 3;
const RANDOM_THREAD_SPECTRA: usize = 100;
const RANDOM_UNIVERSAL: usize = 50;
const MAX_LIMIT_POINTS: usize = 6;
const MAX_APEX: usize = 4;
const RANDOM_PAIRS: usize = 40;
const RANDOM_COFINAL: usize = 30;
const RANDOM_PRODUCTS: usize = 12;
const RANDOM_CERTS: usize = 500;
const CERT_DEPTH: usize = 5;
const MODULUS_EXPRS: usize = 20;
const MODULUS_PAIRS: usize = 1000;
const RING_TABLES: usize = 50;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&mut Gen) -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cfg() -> Config {
    Config::default()
}

fn all_pass(what: &str, c: &Checks) -> Result<(), String> {
    match c.iter().find(|l| !matches!(l.outcome, Outcome::Pass)) {
        None => Ok(()),
        Some(l) => Err(format!("{what}: {} ({:?})", l.law, l.outcome)),
    }
}

fn morphism_ok(what: &str, src: &BSpace, dst: &BSpace, w: &MorphismWitness) -> Result<(), String> {
    let errs = check_morphism(src, dst, w, &cfg().cert);
    ensure!(errs.is_empty(), "{what}: {:?}", errs[0]);
    Ok(())
}

fn inverse_pair(what: &str, f: &SetoidFn, g: &SetoidFn) -> Result<(), String> {
    let fg = f.then(g).map_err(|e| format!("{what}: {e}"))?;
    let gf = g.then(f).map_err(|e| format!("{what}: {e}"))?;
    ensure!(
        fg.agrees_with(&SetoidFn::identity(f.dom())),
        "{what}: backward after forward is not the identity"
    );
    ensure!(
        gf.agrees_with(&SetoidFn::identity(g.dom())),
        "{what}: forward after backward is not the identity"
    );
    Ok(())
}

/// `(i, x) ~ (j, y)` iff the two meet at a common upper bound.
fn meet_above(f: &DirectFamily, (i, x): (usize, usize), (j, y): (usize, usize)) -> bool {
    let d = f.index();
    (0..d.len()).any(|k| {
        d.leq(i, k)
            && d.leq(j, k)
            && f.carrier(k)
                .equal(f.transport(i, k).apply(x), f.transport(j, k).apply(y))
    })
}

fn equivalence_on(n: usize, eq: impl Fn(usize, usize) -> bool) -> Result<(), String> {
    for a in 0..n {
        ensure!(eq(a, a), "not reflexive at {a}");
        for b in 0..n {
            ensure!(eq(a, b) == eq(b, a), "not symmetric at ({a}, {b})");
            for c in 0..n {
                ensure!(!(eq(a, b) && eq(b, c)) || eq(a, c), "not transitive at ({a}, {b}, {c})");
            }
        }
    }
    Ok(())
}

fn small_family(g: &mut Gen, d: &DirectedIndex) -> DirectFamily {
    loop {
        let f = g.direct_family(d, Direction::Covariant);
        if f.carriers().iter().all(|c| c.len() <= MAX_CARRIER) {
            return f;
        }
    }
}

fn check_sum_equality(f: &DirectFamily) -> Result<(), String> {
    let pts = f.points();
    let eq = |a: usize, b: usize| f.direct_sum_equality(pts[a], pts[b]).unwrap_or(false);
    equivalence_on(pts.len(), eq)?;
    for &p in &pts {
        for &r in &pts {
            let got = f.direct_sum_equality(p, r).map_err(|e| e.to_string())?;
            ensure!(got == meet_above(f, p, r), "{p:?} vs {r:?}: top form says {got}");
        }
    }
    Ok(())
}

fn criterion_1(g: &mut Gen) -> Verdict {
    let indices = small_indices(4);
    let mut n = 0;
    for d in &indices {
        for _ in 0..FAMILIES_PER_INDEX {
            check_sum_equality(&small_family(g, d))?;
            n += 1;
        }
    }
    for _ in 0..RANDOM_FAMILIES {
        let d = g.index(4);
        check_sum_equality(&small_family(g, &d))?;
        n += 1;
    }
    Ok(format!("{} indices, {n} families", indices.len()))
}

fn thread_extensional(s: &Spectrum) -> Result<usize, String> {
    let l = DirectLimit::new(s, &cfg()).map_err(|e| e.to_string())?;
    let f = s.family();
    let pts = f.points();
    for &p in &pts {
        for &r in &pts {
            let same = l.carrier().equal(l.class_of(p.0, p.1), l.class_of(r.0, r.1));
            ensure!(same == meet_above(f, p, r), "limit classes disagree at {p:?}, {r:?}");
        }
    }
    let pool = l.threads().pool();
    for (k, t) in pool.iter().enumerate() {
        for &(i, x) in &pts {
            for &(j, y) in &pts {
                if meet_above(f, (i, x), (j, y)) {
                    ensure!(
                        t.component(i).value(x) == t.component(j).value(y),
                        "thread {k} separates ({i}, {x}) and ({j}, {y})"
                    );
                }
            }
        }
    }
    Ok(pool.len())
}

fn criterion_2(g: &mut Gen) -> Verdict {
    let mut threads = thread_extensional(&fixtures::cspec())?;
    for _ in 0..RANDOM_THREAD_SPECTRA {
        let d = g.index(4);
        threads += thread_extensional(&g.spectrum(&d, Direction::Covariant))?;
    }
    Ok(format!("{} spectra, {threads} threads", RANDOM_THREAD_SPECTRA + 1))
}

/// All tables over class representatives satisfying `fits`, counted up to
/// equality in `cod`.
fn count_solutions(dom: &Setoid, cod: &Setoid, fits: impl Fn(&[usize]) -> bool) -> usize {
    let dr = dom.reps();
    let cr = cod.reps();
    let mut pick = vec![0usize; dr.len()];
    let mut count = 0;
    loop {
        let table: Vec<usize> = (0..dom.len())
            .map(|x| cr[pick[dr.iter().position(|&r| r == dom.rep(x)).expect("rep")]])
            .collect();
        if fits(&table) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return count;
            }
            pick[k] += 1;
            if pick[k] < cr.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn direct_universal(l: &DirectLimit, c: &Cocone) -> Result<(), String> {
    let s = l.spectrum();
    let m = cocone_mediator(l, c, &cfg()).map_err(|e| e.to_string())?;
    let h = m.witness.map();
    let apex = c.apex.carrier();
    for i in 0..s.len() {
        for x in 0..s.family().carrier(i).len() {
            ensure!(
                apex.equal(h.apply(l.class_of(i, x)), c.legs[i].map().apply(x)),
                "h after eql_{i} misses at {x}"
            );
        }
    }
    morphism_ok("mediator", l.space(), &c.apex, &m.witness)?;
    let fits = |t: &[usize]| {
        (0..s.len()).all(|i| {
            (0..s.family().carrier(i).len()).all(|x| apex.equal(t[l.class_of(i, x)], c.legs[i].map().apply(x)))
        })
    };
    let n = count_solutions(l.carrier(), apex, fits);
    ensure!(n == 1, "{n} commuting maps");
    ensure!(m.uniqueness.is_unique(), "library search reports {:?}", m.uniqueness);
    Ok(())
}

fn inverse_universal(l: &InverseLimit, c: &Cone) -> Result<(), String> {
    let s = l.spectrum();
    let m = cone_mediator(l, c, &cfg()).map_err(|e| e.to_string())?;
    let h = m.witness.map();
    let at = |e: usize, i: usize| l.elems()[e][i];
    for i in 0..s.len() {
        let fi = s.family().carrier(i);
        for a in 0..c.apex.carrier().len() {
            ensure!(
                fi.equal(at(h.apply(a), i), c.legs[i].map().apply(a)),
                "pi_{i} after h misses at {a}"
            );
        }
    }
    morphism_ok("mediator", &c.apex, l.space(), &m.witness)?;
    let fits = |t: &[usize]| {
        (0..s.len()).all(|i| {
            (0..c.apex.carrier().len()).all(|a| s.family().carrier(i).equal(at(t[a], i), c.legs[i].map().apply(a)))
        })
    };
    let n = count_solutions(c.apex.carrier(), l.carrier(), fits);
    ensure!(n == 1, "{n} commuting maps");
    ensure!(m.uniqueness.is_unique(), "library search reports {:?}", m.uniqueness);
    Ok(())
}

fn criterion_3(g: &mut Gen) -> Verdict {
    let covariant = [fixtures::cspec(), fixtures::constant_x2(Direction::Covariant)];
    let contravariant = [
        fixtures::reversed_collapse(),
        fixtures::thin_contra(),
        fixtures::constant_x2(Direction::Contravariant),
    ];
    let (mut cocones, mut cones) = (0, 0);
    for s in &covariant {
        let l = DirectLimit::new(s, &cfg()).map_err(|e| e.to_string())?;
        direct_universal(&l, &Cocone::of_limit(&l))?;
        direct_universal(&l, &g.cocone(&l, MAX_APEX))?;
        cocones += 2;
    }
    for s in &contravariant {
        let l = InverseLimit::new(s, &cfg()).map_err(|e| e.to_string())?;
        inverse_universal(&l, &Cone::of_limit(&l))?;
        cones += 1;
        if let Some(c) = g.cone(&l, MAX_APEX) {
            inverse_universal(&l, &c)?;
            cones += 1;
        }
    }
    for _ in 0..RANDOM_UNIVERSAL {
        let s = g.small_spectrum(4, Direction::Covariant, MAX_LIMIT_POINTS);
        let l = DirectLimit::new(&s, &cfg()).map_err(|e| e.to_string())?;
        direct_universal(&l, &g.cocone(&l, MAX_APEX))?;
        cocones += 1;
        let s = g.small_spectrum(4, Direction::Contravariant, MAX_LIMIT_POINTS);
        let l = InverseLimit::new(&s, &cfg()).map_err(|e| e.to_string())?;
        if let Some(c) = g.cone(&l, MAX_APEX) {
            inverse_universal(&l, &c)?;
            cones += 1;
        }
    }
    Ok(format!("{cocones} cocones, {cones} cones"))
}

/// `[(i, x)] ↦ [(i, Ψ_i(x))]`.
fn direct_oracle(psi: &SpectrumMap, ls: &DirectLimit, lt: &DirectLimit, got: &SetoidFn) -> Result<(), String> {
    for p in 0..ls.carrier().len() {
        let (i, x) = ls.point(p);
        let want = lt.class_of(i, psi.comp(i).apply(x));
        ensure!(
            lt.carrier().equal(got.apply(p), want),
            "induced map differs at ({i}, {x})"
        );
    }
    Ok(())
}

/// `(φ_i) ↦ (Ψ_i(φ_i))`.
fn inverse_oracle(psi: &SpectrumMap, ls: &InverseLimit, lt: &InverseLimit, got: &SetoidFn) -> Result<(), String> {
    let f = lt.spectrum().family();
    for (e, phi) in ls.elems().iter().enumerate() {
        let image = &lt.elems()[got.apply(e)];
        for i in 0..phi.len() {
            ensure!(
                f.carrier(i).equal(image[i], psi.comp(i).apply(phi[i])),
                "induced map differs at element {e}, index {i}"
            );
        }
    }
    Ok(())
}

fn criterion_4(g: &mut Gen) -> Verdict {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    for _ in 0..RANDOM_PAIRS {
        let d = g.index(3);
        let (ss, ms) = g.spectra(&d, Direction::Covariant, 2);
        let ls: Vec<DirectLimit> = ss
            .iter()
            .map(|s| DirectLimit::new(s, &cfg()))
            .collect::<Result<_, _>>()
            .map_err(|e| err(&e))?;
        let comp = ms[0].then(&ms[1]).map_err(|e| err(&e))?;
        let whole = limit_map(&comp, &ls[0], &ls[2]).map_err(|e| err(&e))?;
        let first = limit_map(&ms[0], &ls[0], &ls[1]).map_err(|e| err(&e))?;
        let second = limit_map(&ms[1], &ls[1], &ls[2]).map_err(|e| err(&e))?;
        direct_oracle(&ms[0], &ls[0], &ls[1], &first)?;
        direct_oracle(&comp, &ls[0], &ls[2], &whole)?;
        ensure!(
            whole.agrees_with(&first.then(&second).map_err(|e| err(&e))?),
            "direct limit map does not compose"
        );
        for (s, l) in ss.iter().zip(&ls) {
            let id = limit_map(&SpectrumMap::identity(s), l, l).map_err(|e| err(&e))?;
            ensure!(
                id.agrees_with(&SetoidFn::identity(l.carrier())),
                "identity not preserved"
            );
        }

        let (ss, ms) = g.spectra(&d, Direction::Contravariant, 2);
        let ls: Vec<InverseLimit> = ss
            .iter()
            .map(|s| InverseLimit::new(s, &cfg()))
            .collect::<Result<_, _>>()
            .map_err(|e| err(&e))?;
        let comp = ms[0].then(&ms[1]).map_err(|e| err(&e))?;
        let whole = inverse_limit_map(&comp, &ls[0], &ls[2]).map_err(|e| err(&e))?;
        let first = inverse_limit_map(&ms[0], &ls[0], &ls[1]).map_err(|e| err(&e))?;
        let second = inverse_limit_map(&ms[1], &ls[1], &ls[2]).map_err(|e| err(&e))?;
        inverse_oracle(&ms[0], &ls[0], &ls[1], &first)?;
        inverse_oracle(&comp, &ls[0], &ls[2], &whole)?;
        ensure!(
            whole.agrees_with(&first.then(&second).map_err(|e| err(&e))?),
            "inverse limit map does not compose"
        );
        for (s, l) in ss.iter().zip(&ls) {
            let id = inverse_limit_map(&SpectrumMap::identity(s), l, l).map_err(|e| err(&e))?;
            ensure!(
                id.agrees_with(&SetoidFn::identity(l.carrier())),
                "identity not preserved"
            );
        }
    }
    Ok(format!("{RANDOM_PAIRS} composable pairs each way"))
}

fn iso_ok(what: &str, r: &IsoReport) -> Result<(), String> {
    all_pass(what, &r.checks)?;
    inverse_pair(what, r.forward.map(), r.backward.map())?;
    morphism_ok(what, &r.first, &r.second, &r.forward)?;
    morphism_ok(what, &r.second, &r.first, &r.backward)
}

/// Cofinality laws restated over the raw tables.
fn cofinal_oracle(d: &DirectedIndex, c: &CofinalSubset) -> Result<(), String> {
    let (e, cof) = (c.embed(), c.cof());
    for j in 0..c.sub().len() {
        ensure!(c.sub().equal(cof.apply(e.apply(j)), j), "cof(e({j})) != {j}");
    }
    for i in 0..d.len() {
        ensure!(d.leq(i, e.apply(cof.apply(i))), "{i} not below e(cof({i}))");
        for k in 0..d.len() {
            if d.leq(i, k) {
                ensure!(
                    d.leq(e.apply(cof.apply(i)), e.apply(cof.apply(k))),
                    "cof not monotone at ({i}, {k})"
                );
            }
        }
    }
    Ok(())
}

fn cofinal_instance(s: &Spectrum, c: &CofinalSubset) -> Result<(), String> {
    cofinal_oracle(s.index(), c)?;
    ensure!(validate_cofinal(s.index(), c).is_empty(), "subset rejected");
    let r = match s.direction() {
        Direction::Covariant => cofinal_direct_iso(s, c, &cfg()),
        Direction::Contravariant => cofinal_inverse_iso(s, c, &cfg()),
    }
    .map_err(|e| e.to_string())?;
    iso_ok("cofinal iso", &r)
}

fn criterion_5(g: &mut Gen) -> Verdict {
    for m in [1, 2] {
        let (d, c) = even_odd(m);
        cofinal_oracle(&d, &c)?;
        ensure!(validate_cofinal(&d, &c).is_empty(), "even/odd {m} rejected");
        let want: Vec<usize> = (0..=2 * m).map(|n| (n + n % 2).min(2 * m) / 2).collect();
        ensure!(
            c.cof().table() == want.as_slice(),
            "even/odd {m} modulus is {:?}",
            c.cof().table()
        );
        let (s, c) = fixtures::eo_constant(m);
        cofinal_instance(&s, &c)?;
        let x2 = fixtures::x2_space();
        cofinal_instance(&Spectrum::constant(&d, Direction::Contravariant, &x2), &c)?;
    }
    let (s, c) = fixtures::cspec_evens();
    cofinal_instance(&s, &c)?;
    for _ in 0..RANDOM_COFINAL {
        let d = g.index(4);
        let dir = g.direction();
        let s = g.spectrum(&d, dir);
        let c = g.cofinal(&d);
        cofinal_instance(&s, &c)?;
    }
    Ok(format!("EO(1), EO(2), CSPEC and {RANDOM_COFINAL} random instances"))
}

fn criterion_6(_: &mut Gen) -> Verdict {
    let x2 = fixtures::x2_space();
    let s = Spectrum::constant(&fixtures::chain3(), Direction::Covariant, &x2);
    let l = DirectLimit::new(&s, &cfg()).map_err(|e| e.to_string())?;
    let r = constant_limit_iso(&l, &x2, &cfg()).map_err(|e| e.to_string())?;
    iso_ok("constant limit", &r)?;
    ensure!(l.carrier().num_classes() == 2, "{} classes", l.carrier().num_classes());
    for i in 0..3 {
        for x in 0..2 {
            let there = r.forward.map().apply(l.class_of(i, x));
            let (a, b) = (r.first.carrier(), r.second.carrier());
            let forward_is_eql_inverse = a == l.carrier() && x2.carrier().equal(there, x);
            let backward_is_eql = a == x2.carrier() && b.equal(r.forward.map().apply(x), l.class_of(i, x));
            ensure!(
                forward_is_eql_inverse || backward_is_eql,
                "iso does not match ({i}, {x}) with {x}"
            );
        }
    }
    Ok("two-sided isomorphism with the 2-point space".into())
}

fn product_instance(s: &Spectrum, t: &Spectrum) -> Result<(), String> {
    let st = product_spectrum(s, t).map_err(|e| e.to_string())?;
    match s.direction() {
        Direction::Covariant => {
            let r = product_limit_bijection(s, t, &cfg()).map_err(|e| e.to_string())?;
            all_pass("product bijection", &r.checks)?;
            let n = |x: &Spectrum| DirectLimit::new(x, &cfg()).map(|l| l.carrier().num_classes());
            let (a, b, c) = (n(&st), n(s), n(t));
            let (a, b, c) = (
                a.map_err(|e| e.to_string())?,
                b.map_err(|e| e.to_string())?,
                c.map_err(|e| e.to_string())?,
            );
            ensure!(
                a == b * c && r.sizes == (a, b, c),
                "class counts {a} vs {b} x {c}, reported {:?}",
                r.sizes
            );
            ensure!(
                r.map.map().is_embedding().is_ok() && r.map.map().is_surjective(),
                "not a bijection"
            );
        }
        Direction::Contravariant => {
            let r = product_inverse_morphism(s, t, &cfg()).map_err(|e| e.to_string())?;
            all_pass("product morphism", &r.checks)?;
            ensure!(r.map.map().check_extensional().is_ok(), "not extensional");
            let n = |x: &Spectrum| InverseLimit::new(x, &cfg()).map(|l| l.carrier().num_classes());
            let (a, b, c) = (n(&st), n(s), n(t));
            let (a, b, c) = (
                a.map_err(|e| e.to_string())?,
                b.map_err(|e| e.to_string())?,
                c.map_err(|e| e.to_string())?,
            );
            ensure!(
                a == b * c && r.sizes == (a, b, c),
                "element counts {a} vs {b} x {c}, reported {:?}",
                r.sizes
            );
        }
    }
    Ok(())
}

fn criterion_7(g: &mut Gen) -> Verdict {
    let x2 = fixtures::x2_space();
    let c3 = fixtures::chain3();
    product_instance(&fixtures::cspec(), &Spectrum::constant(&c3, Direction::Covariant, &x2))?;
    product_instance(
        &fixtures::reversed_collapse(),
        &fixtures::constant_x2(Direction::Contravariant),
    )?;
    for _ in 0..RANDOM_PRODUCTS {
        for dir in [Direction::Covariant, Direction::Contravariant] {
            let s = g.small_spectrum(2, dir, 4);
            let t = g.small_spectrum(2, dir, 4);
            product_instance(&s, &t)?;
        }
    }
    Ok(format!("{} products", 2 + 2 * RANDOM_PRODUCTS))
}

fn duality_ok(what: &str, r: &DualityReport) -> Result<(), String> {
    all_pass(what, &r.checks)?;
    let back = r.backward.as_ref().ok_or(format!("{what}: no inverse"))?;
    inverse_pair(what, r.forward.map(), back.map())?;
    ensure!(r.forward.map().is_embedding().is_ok(), "{what}: not an embedding");
    morphism_ok(what, &r.first, &r.second, &r.forward)?;
    morphism_ok(what, &r.second, &r.first, back)
}

/// Every `(j, y)` lies on some element of the inverse limit.
fn representatives_exist(s: &Spectrum) -> Result<bool, String> {
    let l = InverseLimit::new(s, &cfg()).map_err(|e| e.to_string())?;
    let f = s.family();
    let holds = f
        .points()
        .iter()
        .all(|&(j, y)| l.elems().iter().any(|e| f.carrier(j).equal(e[j], y)));
    ensure!(
        holds == representative_gap(&l).is_none(),
        "library disagrees about the representative hypothesis"
    );
    Ok(holds)
}

fn converse_ok(what: &str, r: &DualityReport, hypothesis: bool) -> Result<(), String> {
    morphism_ok(what, &r.first, &r.second, &r.forward)?;
    for l in r.checks.iter() {
        let skipped = matches!(l.outcome, Outcome::Skipped(_));
        ensure!(!matches!(l.outcome, Outcome::Fail(_)), "{what}: {} failed", l.law);
        ensure!(
            skipped != hypothesis || !l.law.contains("embedding") && !l.law.contains("hypothesis"),
            "{what}: {} {:?}",
            l.law,
            l.outcome
        );
    }
    if hypothesis {
        ensure!(r.forward.map().is_embedding().is_ok(), "{what}: not an embedding");
    }
    Ok(())
}

fn criterion_8(_: &mut Gen) -> Verdict {
    let c = cfg();
    let err = |e: bspec_core::duality::DualityError| e.to_string();
    let x2 = fixtures::x2_space();
    let pt = fixtures::point_space();
    let cov = fixtures::constant_x2(Direction::Covariant);
    let con = fixtures::constant_x2(Direction::Contravariant);
    let cs = fixtures::cspec();
    let mut n = 0;
    for (s, fixed) in [(&cov, &x2), (&cs, &x2), (&cs, &pt), (&cov, &pt)] {
        let pools = shape_pools(s, fixed, Shape::IntoFixed, &c).map_err(err)?;
        duality_ok(
            "first duality",
            &duality_direct_to_inverse(s, fixed, pools, &c).map_err(err)?,
        )?;
        let pools = shape_pools(s, fixed, Shape::FromFixed, &c).map_err(err)?;
        converse_ok(
            "converse dual",
            &converse_dual_direct(s, fixed, pools, &c).map_err(err)?,
            true,
        )?;
        n += 2;
    }
    for (s, fixed) in [
        (&con, &x2),
        (&fixtures::reversed_collapse(), &pt),
        (&fixtures::reversed_collapse(), &x2),
        (&fixtures::thin_contra(), &x2),
    ] {
        let pools = shape_pools(s, fixed, Shape::FromFixedDual, &c).map_err(err)?;
        duality_ok(
            "second duality",
            &duality_inverse_hom(s, fixed, pools, &c).map_err(err)?,
        )?;
        let hyp = representatives_exist(s)?;
        let pools = shape_pools(s, fixed, Shape::IntoFixedDual, &c).map_err(err)?;
        converse_ok(
            "converse dual",
            &converse_dual_inverse(s, fixed, pools, &c).map_err(err)?,
            hyp,
        )?;
        n += 2;
    }
    Ok(format!("{n} duality instances"))
}

fn rfun(values: Vec<Q>) -> RFun {
    RFun::new(Setoid::range(values.len()), values).expect("discrete carrier")
}

fn abs(x: Q) -> Q {
    if x < q(0) {
        -x
    } else {
        x
    }
}

fn criterion_9(g: &mut Gen) -> Verdict {
    let cc = cfg().cert;
    for k in 0..RANDOM_CERTS {
        let (src, dst, w) = g.morphism(4);
        let c = g.certificate(dst.generators().len(), CERT_DEPTH);
        ensure!(
            c.depth() <= CERT_DEPTH && !c.uses_limit(),
            "certificate {k} out of shape"
        );
        let before = conclude(&dst, &c, &cc).map_err(|e| format!("certificate {k}: {e}"))?;
        let lifted = lift_certificate(&w, &c).map_err(|e| format!("certificate {k}: {e}"))?;
        ensure!(!lifted.uses_limit(), "lifted certificate {k} uses a limit");
        let after = conclude(&src, &lifted, &cc).map_err(|e| format!("lifted {k}: {e}"))?;
        for x in 0..src.carrier().len() {
            ensure!(
                after.values[x] == before.values[w.map().apply(x)],
                "certificate {k} lifts wrongly at {x}"
            );
        }
    }
    let tolerances = [qr(1, 1), qr(1, 3), qr(1, 10), qr(1, 100)];
    for k in 0..MODULUS_EXPRS {
        let phi = g.bic(4);
        let n = g.rng().gen_range(1u32..=3);
        let eps = tolerances[k % tolerances.len()].clone();
        let delta = bic_modulus(&phi, n, &eps);
        ensure!(delta > q(0), "expression {k}: modulus {delta} is not positive");
        let bound = q(n as i64);
        let mut tried = 0;
        while tried < MODULUS_PAIRS {
            let x = &bound * qr(g.rng().gen_range(-1000..=1000), 1000);
            let y = &x + &delta * qr(g.rng().gen_range(-999..=999), 1000);
            if abs(y.clone()) > bound {
                continue;
            }
            tried += 1;
            let gap = abs(phi.eval(&x) - phi.eval(&y));
            ensure!(
                gap <= eps,
                "expression {k} ({phi:?}): |phi({x}) - phi({y})| = {gap} > {eps}"
            );
        }
    }
    let (f0, f1, f2) = (Certificate::gen(0), Certificate::gen(1), Certificate::gen(2));
    for _ in 0..RING_TABLES {
        let len = g.rng().gen_range(1..=5);
        let tables = [g.table(len), g.table(len), g.table(len)];
        let space =
            BSpace::new(Setoid::range(len), tables.iter().cloned().map(rfun).collect()).map_err(|e| e.to_string())?;
        let eval = |c: &Certificate| conclude(&space, c, &cc).map(|v| v.values).map_err(|e| e.to_string());
        let [f, g_, h] = &tables;
        for x in 0..len {
            let (a, b, c) = (&f[x], &g_[x], &h[x]);
            let checks: Vec<(Certificate, Q)> = vec![
                (assemble::product(f0.clone(), f1.clone()), a * b),
                (assemble::join(f0.clone(), f1.clone()), a.max(b).clone()),
                (assemble::meet(f0.clone(), f1.clone()), a.min(b).clone()),
                (
                    assemble::product(f0.clone(), Certificate::add(f1.clone(), f2.clone())),
                    a * b + a * c,
                ),
                (
                    assemble::join(f0.clone(), assemble::meet(f0.clone(), f1.clone())),
                    a.clone(),
                ),
                (
                    assemble::meet(f0.clone(), assemble::join(f0.clone(), f1.clone())),
                    a.clone(),
                ),
                (assemble::sub(f0.clone(), f0.clone()), q(0)),
                (
                    assemble::join(f0.clone(), assemble::meet(f1.clone(), f2.clone())),
                    a.max(b.min(c)).clone(),
                ),
            ];
            for (k, (cert, want)) in checks.iter().enumerate() {
                ensure!(!cert.uses_limit(), "identity {k} uses a limit");
                let got = eval(cert)?;
                ensure!(got[x] == *want, "identity {k} at {x}: {} != {want}", got[x]);
            }
        }
        let commuted = [
            (
                assemble::product(f0.clone(), f1.clone()),
                assemble::product(f1.clone(), f0.clone()),
            ),
            (
                assemble::join(f0.clone(), f1.clone()),
                assemble::join(f1.clone(), f0.clone()),
            ),
            (
                assemble::meet(f0.clone(), f1.clone()),
                assemble::meet(f1.clone(), f0.clone()),
            ),
        ];
        for (k, (l, r)) in commuted.iter().enumerate() {
            ensure!(eval(l)? == eval(r)?, "commutativity {k} fails");
        }
    }
    Ok(format!(
        "{RANDOM_CERTS} lifts, {MODULUS_EXPRS}x{MODULUS_PAIRS} modulus samples, {RING_TABLES} tables"
    ))
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .expect("fixtures")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "bspec"))
        .collect();
    v.sort();
    v
}

fn criterion_10(_: &mut Gen) -> Verdict {
    let bin = env!("CARGO_BIN_EXE_bspec");
    let files = corpus();
    ensure!(!files.is_empty(), "empty corpus");
    let out_dir = std::env::temp_dir().join(format!("bspec-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).map_err(|e| e.to_string())?;
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|e| format!("{name}: {e}"))?;
        let printed = doc.to_string();
        let again = parse(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        ensure!(
            again == doc && again.to_string() == printed,
            "{name}: round trip changes the document"
        );
        let o = Command::new(bin)
            .arg("check")
            .arg(f)
            .env_remove("BSPEC_COLOR")
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.code() == Some(0), "{name}: check exits {:?}", o.status.code());
        let mut runs = Vec::new();
        for k in 0..2 {
            let p = out_dir.join(format!("{name}.{k}.json"));
            let o = Command::new(bin)
                .args(["--seed", "7", "report"])
                .arg(f)
                .arg("--json")
                .arg(&p)
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(o.status.code() == Some(0), "{name}: report exits {:?}", o.status.code());
            runs.push(std::fs::read(&p).map_err(|e| e.to_string())?);
        }
        ensure!(runs[0] == runs[1], "{name}: JSON differs between runs");
    }
    let suite = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/constant.bspec");
    let mut runs = Vec::new();
    for k in 0..2 {
        let p = out_dir.join(format!("suite.{k}.json"));
        let o = Command::new(bin)
            .args(["--seed", "7", "report"])
            .arg(&suite)
            .args(["--suite", "full", "--json"])
            .arg(&p)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(o.status.code() == Some(0), "random suite exits {:?}", o.status.code());
        runs.push(std::fs::read(&p).map_err(|e| e.to_string())?);
    }
    ensure!(runs[0] == runs[1], "random suite JSON differs between runs");
    Ok(format!("{} fixtures", files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("direct-sum equality", criterion_1),
        ("thread extensionality", criterion_2),
        ("universal properties", criterion_3),
        ("functoriality", criterion_4),
        ("cofinality", criterion_5),
        ("constant spectrum", criterion_6),
        ("products", criterion_7),
        ("duality", criterion_8),
        ("topology kernel", criterion_9),
        ("cli", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let mut g = Gen::new(SEED + k as u64);
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&mut g)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    let total = start.elapsed();
    let in_budget = total <= BUDGET;
    println!(
        "{}  time budget: {:.1} s of {} s",
        if in_budget { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        BUDGET.as_secs()
    );
    if failed > 0 || !in_budget {
        std::process::exit(1);
    }
}
