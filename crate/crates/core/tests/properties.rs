use bspec_core::family::{validate_direct_family, Direction};
use bspec_core::gen::Gen;
use bspec_core::laws::{directed_laws, family_laws, spectrum_laws, upper_bound_oracle};
use bspec_core::limits::{cocone_mediator, cone_mediator, DirectLimit, InverseLimit};
use bspec_core::order::{validate_cofinal, validate_directed};
use bspec_core::setoid::{check_equivalence, quotient_by, SetoidFn};
use bspec_core::spectrum::validate_spectrum;
use bspec_core::topology::bic::interpolant;
use bspec_core::topology::cert::conclude;
use bspec_core::topology::{check_morphism, lift_certificate, q, synthesize_certificate, RFun, Q};
use bspec_core::Config;
use proptest::prelude::*;
use rand::Rng;

fn dir(covariant: bool) -> Direction {
    if covariant {
        Direction::Covariant
    } else {
        Direction::Contravariant
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn setoid_classes_partition(seed: u64) {
        let mut g = Gen::new(seed);
        let s = g.setoid(4);
        prop_assert!(check_equivalence(s.len(), |a, b| s.equal(a, b)).is_ok());
        let classes = s.classes();
        prop_assert_eq!(classes.len(), s.num_classes());
        prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), s.len());
        for c in &classes {
            prop_assert!(c.iter().all(|&x| s.equal(x, c[0]) && s.rep(x) == s.rep(c[0])));
        }
    }

    #[test]
    fn composition_is_associative_with_units(seed: u64) {
        let mut g = Gen::new(seed);
        let xs: Vec<_> = (0..4).map(|_| g.setoid(3)).collect();
        let mut maps = Vec::new();
        for w in xs.windows(2) {
            let pick: Vec<usize> = (0..w[0].len()).map(|_| g.rng().gen_range(0..w[1].len())).collect();
            let table = (0..w[0].len()).map(|x| pick[w[0].rep(x)]).collect();
            maps.push(SetoidFn::new(w[0].clone(), w[1].clone(), table).unwrap());
        }
        let (f, h, k) = (&maps[0], &maps[1], &maps[2]);
        let left = f.then(h).unwrap().then(k).unwrap();
        let right = f.then(&h.then(k).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        prop_assert!(SetoidFn::identity(f.dom()).then(f).unwrap().agrees_with(f));
        prop_assert!(f.then(&SetoidFn::identity(f.cod())).unwrap().agrees_with(f));
    }

    #[test]
    fn quotient_canonical_map_is_surjective(seed: u64) {
        let mut g = Gen::new(seed);
        let s = g.setoid(4);
        let cut = g.rng().gen_range(0..=s.len());
        let q = quotient_by(&s, |a, b| (s.rep(a) < cut) == (s.rep(b) < cut)).unwrap();
        let c = q.canonical();
        prop_assert!(c.check_extensional().is_ok());
        prop_assert!(c.is_surjective());
    }

    #[test]
    fn generated_indices_are_directed(seed: u64) {
        let mut g = Gen::new(seed);
        let d = g.index(4);
        prop_assert!(validate_directed(&d).is_empty());
        prop_assert!(directed_laws(&d).all_pass());
        let t = d.top_element();
        prop_assert!((0..d.len()).all(|i| d.leq(i, t)));
        for i in 0..d.len() {
            for j in 0..d.len() {
                let u = d.upper(i, j);
                prop_assert!(d.leq(i, u) && d.leq(j, u));
            }
        }
    }

    #[test]
    fn direct_sum_equality_matches_upper_bounds(seed: u64) {
        let mut g = Gen::new(seed);
        let d = g.index(4);
        let f = g.direct_family(&d, Direction::Covariant);
        prop_assert!(validate_direct_family(&f).is_empty());
        prop_assert!(family_laws(&f).all_pass());
        let pts = f.points();
        for &p in &pts {
            for &r in &pts {
                prop_assert_eq!(f.direct_sum_equality(p, r).unwrap(), upper_bound_oracle(&f, p, r));
            }
        }
    }

    #[test]
    fn generated_spectra_satisfy_their_laws(seed: u64, covariant: bool) {
        let mut g = Gen::new(seed);
        let d = g.index(3);
        let s = g.spectrum(&d, dir(covariant));
        let cfg = Config::default();
        prop_assert!(validate_spectrum(&s, &cfg.cert).is_empty());
        let c = spectrum_laws(&s, &cfg);
        prop_assert!(c.all_pass(), "{:?}", c);
    }

    #[test]
    fn random_cocones_factor_uniquely(seed: u64) {
        let mut g = Gen::new(seed);
        let s = g.small_spectrum(3, Direction::Covariant, 6);
        let cfg = Config::default();
        let l = DirectLimit::new(&s, &cfg).unwrap();
        let c = g.cocone(&l, 3);
        let m = cocone_mediator(&l, &c, &cfg).unwrap();
        prop_assert!(m.checks.all_pass(), "{:?}", m.checks);
        prop_assert!(m.uniqueness.is_unique());
    }

    #[test]
    fn random_cones_factor_uniquely(seed: u64) {
        let mut g = Gen::new(seed);
        let s = g.small_spectrum(3, Direction::Contravariant, 6);
        let cfg = Config::default();
        let l = InverseLimit::new(&s, &cfg).unwrap();
        if let Some(c) = g.cone(&l, 3) {
            let m = cone_mediator(&l, &c, &cfg).unwrap();
            prop_assert!(m.checks.all_pass(), "{:?}", m.checks);
            prop_assert!(m.uniqueness.is_unique());
        }
    }

    #[test]
    fn generated_cofinal_subsets_validate(seed: u64) {
        let mut g = Gen::new(seed);
        let d = g.index(4);
        let c = g.cofinal(&d);
        prop_assert!(validate_cofinal(&d, &c).is_empty());
    }

    #[test]
    fn lifting_precomposes_conclusions(seed: u64) {
        let mut g = Gen::new(seed);
        let cfg = Config::default().cert;
        let (src, dst, w) = g.morphism(4);
        prop_assert!(check_morphism(&src, &dst, &w, &cfg).is_empty());
        let c = g.certificate(dst.generators().len(), 4);
        let before = conclude(&dst, &c, &cfg).unwrap();
        let after = conclude(&src, &lift_certificate(&w, &c).unwrap(), &cfg).unwrap();
        for x in 0..src.carrier().len() {
            prop_assert_eq!(&after.values[x], &before.values[w.map().apply(x)]);
        }
    }

    #[test]
    fn interpolant_hits_its_nodes(ys in proptest::collection::vec(-50i64..50, 1..6)) {
        let pts: Vec<(Q, Q)> = ys.iter().enumerate().map(|(k, &y)| (q(k as i64), q(y))).collect();
        let phi = interpolant(&pts);
        for (x, y) in &pts {
            prop_assert_eq!(&phi.eval(x), y);
        }
    }

    #[test]
    fn generator_functions_synthesize(seed: u64) {
        let mut g = Gen::new(seed);
        let b = g.space(4);
        for f in b.generators() {
            let c = synthesize_certificate(&b, f.values(), 4).unwrap();
            let got = conclude(&b, &c, &Config::default().cert).unwrap();
            prop_assert_eq!(&got.values, f.values());
        }
        let k = RFun::constant(b.carrier(), q(3));
        prop_assert!(synthesize_certificate(&b, k.values(), 1).is_some());
    }
}
