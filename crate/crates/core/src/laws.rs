//! Named law suites over single objects, as run by the command-line checker.

use crate::check::Checks;
use crate::family::{validate_direct_family, DirectFamily, Direction, FamilyViolation};
use crate::limits::{
    cocone_mediator, cone_mediator, inverse_limit_map, limit_map, Cocone, Cone, DirectLimit, InverseLimit,
};
use crate::order::{validate_directed, DirectedIndex, OrderViolation};
use crate::setoid::{check_equivalence, Setoid, SetoidFn};
use crate::spectrum::{validate_spectrum, Spectrum, SpectrumMap, SpectrumViolation};
use crate::Config;

pub fn setoid_laws(s: &Setoid) -> Checks {
    let mut c = Checks::new();
    c.result(
        "equality is an equivalence relation",
        &check_equivalence(s.len(), |a, b| s.equal(a, b)),
    );
    c
}

pub fn directed_laws(d: &DirectedIndex) -> Checks {
    let v = validate_directed(d);
    let pick = |f: fn(&OrderViolation) -> bool| v.iter().filter(|x| f(x)).cloned().collect::<Vec<_>>();
    let mut c = Checks::new();
    c.empty("reflexive", &pick(|x| matches!(x, OrderViolation::NotReflexive(..))));
    c.empty("transitive", &pick(|x| matches!(x, OrderViolation::NotTransitive(..))));
    c.empty(
        "order respects equality",
        &pick(|x| matches!(x, OrderViolation::NotExtensional(..))),
    );
    c.empty("upper bounds", &pick(|x| matches!(x, OrderViolation::UpperBound(..))));
    c.empty(
        "upper bounds respect equality",
        &pick(|x| matches!(x, OrderViolation::UpperNotExtensional(..))),
    );
    if d.delta().is_some() {
        c.empty(
            "modulus of directedness",
            &pick(|x| {
                matches!(
                    x,
                    OrderViolation::NotPoset(..)
                        | OrderViolation::Delta1(..)
                        | OrderViolation::Delta2(..)
                        | OrderViolation::Delta3(..)
                )
            }),
        );
    }
    c
}

/// `(i, x) ~ (j, y)` iff some `k` above both identifies the images.
pub fn upper_bound_oracle(f: &DirectFamily, (i, x): (usize, usize), (j, y): (usize, usize)) -> bool {
    let d = f.index();
    (0..f.len()).any(|k| {
        d.leq(i, k)
            && d.leq(j, k)
            && f.carrier(k)
                .equal(f.transport(i, k).apply(x), f.transport(j, k).apply(y))
    })
}

pub fn family_laws(f: &DirectFamily) -> Checks {
    let v = validate_direct_family(f);
    let mut c = Checks::new();
    let ids: Vec<_> = v
        .iter()
        .filter(|x| matches!(x, FamilyViolation::Identity { .. }))
        .collect();
    let comps: Vec<_> = v
        .iter()
        .filter(|x| matches!(x, FamilyViolation::Composition { .. }))
        .collect();
    c.empty("identity transports", &ids);
    c.empty("transports compose", &comps);
    if f.direction() == Direction::Covariant && v.is_empty() {
        let pts = f.points();
        let eq = |a: usize, b: usize| f.direct_sum_equality(pts[a], pts[b]).unwrap_or(false);
        c.result(
            "direct-sum equality is an equivalence relation",
            &check_equivalence(pts.len(), eq),
        );
        let bad = pts
            .iter()
            .flat_map(|&p| pts.iter().map(move |&q| (p, q)))
            .find(|&(p, q)| f.direct_sum_equality(p, q).unwrap_or(false) != upper_bound_oracle(f, p, q));
        c.expect("top canonical form matches common upper bounds", bad.is_none(), || {
            format!("{bad:?}")
        });
    }
    c
}

fn prefixed(out: &mut Checks, prefix: &str, checks: Checks) {
    for l in checks.0 {
        out.push(format!("{prefix}: {}", l.law), l.outcome);
    }
}

/// Validity of the transport witnesses, then the limit's own laws.
pub fn spectrum_laws(s: &Spectrum, cfg: &Config) -> Checks {
    let v = validate_spectrum(s, &cfg.cert);
    let mut c = Checks::new();
    let pick = |f: fn(&SpectrumViolation) -> bool| v.iter().filter(|x| f(x)).cloned().collect::<Vec<_>>();
    c.empty("family laws", &pick(|x| matches!(x, SpectrumViolation::Family(_))));
    c.empty(
        "witnesses carry the transports",
        &pick(|x| matches!(x, SpectrumViolation::EdgeMap { .. })),
    );
    c.empty(
        "transports are morphisms",
        &pick(|x| matches!(x, SpectrumViolation::Edge { .. })),
    );
    c.empty(
        "composite witnesses certify",
        &pick(|x| matches!(x, SpectrumViolation::Composite { .. })),
    );
    if !v.is_empty() {
        return c;
    }
    match s.direction() {
        Direction::Covariant => match DirectLimit::new(s, cfg) {
            Err(e) => c.fail("direct limit builds", e.to_string()),
            Ok(l) => {
                c.pass("direct limit builds");
                c.extend(direct_limit_laws(&l, cfg));
            }
        },
        Direction::Contravariant => match InverseLimit::new(s, cfg) {
            Err(e) => c.fail("inverse limit builds", e.to_string()),
            Ok(l) => {
                c.pass("inverse limit builds");
                c.extend(inverse_limit_laws(&l, cfg));
            }
        },
    }
    c
}

/// Thread extensionality, the universal property for the limit's own
/// cocone, and identity preservation.
pub fn direct_limit_laws(l: &DirectLimit, cfg: &Config) -> Checks {
    let s = l.spectrum();
    let mut c = Checks::new();
    let bad = l.threads().pool().iter().enumerate().find_map(|(k, t)| {
        s.thread_function(l.sum().quotient(), t, &cfg.cert)
            .err()
            .map(|e| format!("thread {k}: {e}"))
    });
    c.expect("thread functions are constant on classes", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });
    match cocone_mediator(l, &Cocone::of_limit(l), cfg) {
        Ok(m) => prefixed(&mut c, "universal property", m.checks),
        Err(e) => c.fail("universal property", e.to_string()),
    }
    let id = SpectrumMap::identity(s);
    let r = limit_map(&id, l, l).map(|f| f.agrees_with(&SetoidFn::identity(l.carrier())));
    c.expect("identity induces the identity", matches!(r, Ok(true)), || {
        format!("{r:?}")
    });
    c
}

pub fn inverse_limit_laws(l: &InverseLimit, cfg: &Config) -> Checks {
    let s = l.spectrum();
    let mut c = Checks::new();
    match cone_mediator(l, &Cone::of_limit(l), cfg) {
        Ok(m) => prefixed(&mut c, "universal property", m.checks),
        Err(e) => c.fail("universal property", e.to_string()),
    }
    let id = SpectrumMap::identity(s);
    let r = inverse_limit_map(&id, l, l).map(|f| f.agrees_with(&SetoidFn::identity(l.carrier())));
    c.expect("identity induces the identity", matches!(r, Ok(true)), || {
        format!("{r:?}")
    });
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Outcome;
    use crate::fixtures;

    #[test]
    fn fixtures_pass_every_law() {
        let cfg = Config::default();
        for s in [
            fixtures::cspec(),
            fixtures::reversed_collapse(),
            fixtures::thin_contra(),
            fixtures::constant_x2(Direction::Covariant),
        ] {
            let c = spectrum_laws(&s, &cfg);
            assert!(c.all_pass(), "{c:?}");
            assert!(family_laws(s.family()).all_pass());
            assert!(directed_laws(s.index()).all_pass());
        }
    }

    #[test]
    fn broken_family_is_reported() {
        let x = fixtures::x2();
        let id = SetoidFn::identity(&x);
        let swap = SetoidFn::from_labels(x.clone(), x.clone(), &[("p", "q"), ("q", "p")]).unwrap();
        let d = DirectedIndex::new(Setoid::range(4), &[(0, 1), (0, 2), (1, 3), (2, 3)], true, None).unwrap();
        let given = vec![((0, 1), id.clone()), ((0, 2), id.clone()), ((1, 3), id), ((2, 3), swap)];
        let f = DirectFamily::new(d, Direction::Covariant, vec![x; 4], given).unwrap();
        let c = family_laws(&f);
        assert_eq!(c.0[0].outcome, Outcome::Pass);
        assert!(matches!(c.0[1].outcome, Outcome::Fail(_)));
    }
}
