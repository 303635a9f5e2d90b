//! Small named instances used across tests, the CLI and the acceptance suite.

use crate::family::{DirectFamily, Direction};
use crate::order::{even_odd, CofinalSubset, DirectedIndex};
use crate::setoid::{Setoid, SetoidFn};
use crate::spectrum::{Spectrum, SpectrumMap};
use crate::topology::{q, BSpace, BicExpr, Certificate, MorphismWitness, RFun};

/// `{0, 1, 2}` ordered as a chain.
pub fn chain3() -> DirectedIndex {
    DirectedIndex::chain(3)
}

fn map(dom: &Setoid, cod: &Setoid, pairs: &[(&str, &str)]) -> SetoidFn {
    SetoidFn::from_labels(dom.clone(), cod.clone(), pairs).expect("fixture map")
}

/// `{a,b} → {u,v} → {z}` over the chain, with `a ↦ u`, `b ↦ v`.
pub fn collapse() -> DirectFamily {
    let ab = Setoid::discrete(&["a", "b"]).unwrap();
    let uv = Setoid::discrete(&["u", "v"]).unwrap();
    let z = Setoid::discrete(&["z"]).unwrap();
    let l01 = map(&ab, &uv, &[("a", "u"), ("b", "v")]);
    let l12 = map(&uv, &z, &[("u", "z"), ("v", "z")]);
    DirectFamily::new(
        chain3(),
        Direction::Covariant,
        vec![ab, uv, z],
        vec![((0, 1), l01), ((1, 2), l12)],
    )
    .expect("fixture family")
}

/// The discrete carrier `{p, q}`.
pub fn x2() -> Setoid {
    Setoid::discrete(&["p", "q"]).unwrap()
}

/// `{p, q}` with the single generator `p ↦ 0, q ↦ 1`.
pub fn x2_space() -> BSpace {
    let x = x2();
    let f = RFun::from_ints(&x, &[0, 1]).unwrap();
    BSpace::new(x, vec![f]).unwrap()
}

/// `1 - f` for the first generator `f`.
pub fn one_minus_gen() -> Certificate {
    Certificate::bic(
        BicExpr::add(BicExpr::constant(q(1)), BicExpr::neg(BicExpr::Id)),
        Certificate::gen(0),
    )
}

/// The swap `p ↔ q` as a morphism of [`x2_space`].
pub fn x2_swap() -> MorphismWitness {
    let x = x2();
    let sw = map(&x, &x, &[("p", "q"), ("q", "p")]);
    MorphismWitness::new(sw, vec![one_minus_gen()], &x2_space())
}

/// A one-point space with no generators.
pub fn point_space() -> BSpace {
    BSpace::trivial(&Setoid::discrete(&["*"]).unwrap())
}

fn indicator_space(x: &Setoid, values: &[i64]) -> BSpace {
    BSpace::new(x.clone(), vec![RFun::from_ints(x, values).unwrap()]).unwrap()
}

/// [`collapse`] with spaces `{(0,1)}`, `{(0,1)}`, `{(0)}`.
pub fn cspec() -> Spectrum {
    let fam = collapse();
    let spaces = vec![
        indicator_space(fam.carrier(0), &[0, 1]),
        indicator_space(fam.carrier(1), &[0, 1]),
        indicator_space(fam.carrier(2), &[0]),
    ];
    let w01 = MorphismWitness::new(fam.transport(0, 1).clone(), vec![Certificate::gen(0)], &spaces[1]);
    let w12 = MorphismWitness::new(fam.transport(1, 2).clone(), vec![Certificate::Const(q(0))], &spaces[2]);
    Spectrum::new(fam, spaces, vec![((0, 1), w01), ((1, 2), w12)]).expect("fixture spectrum")
}

/// The constant spectrum of [`x2_space`] over the chain of three.
pub fn constant_x2(direction: Direction) -> Spectrum {
    Spectrum::constant(&chain3(), direction, &x2_space())
}

/// [`cspec`] mapped onto the constant spectrum of its top space.
pub fn cspec_to_point() -> SpectrumMap {
    let s = cspec();
    let t = Spectrum::constant(s.index(), Direction::Covariant, s.space(2));
    let comps = (0..3).map(|i| s.family().transport(i, 2).clone()).collect();
    let ws = (0..3).map(|i| s.witness(i, 2).clone()).collect();
    SpectrumMap::new(&s, &t, comps, Some(ws)).expect("fixture map")
}

/// Contravariant chain with bijective transports `{y,z} → {u,v} → {a,b}`.
pub fn reversed_collapse() -> Spectrum {
    let ab = Setoid::discrete(&["a", "b"]).unwrap();
    let uv = Setoid::discrete(&["u", "v"]).unwrap();
    let yz = Setoid::discrete(&["y", "z"]).unwrap();
    let l10 = map(&uv, &ab, &[("u", "a"), ("v", "b")]);
    let l21 = map(&yz, &uv, &[("y", "u"), ("z", "v")]);
    let fam = DirectFamily::new(
        chain3(),
        Direction::Contravariant,
        vec![ab, uv, yz],
        vec![((0, 1), l10), ((1, 2), l21)],
    )
    .expect("fixture family");
    let spaces: Vec<BSpace> = (0..3).map(|i| indicator_space(fam.carrier(i), &[0, 1])).collect();
    let w01 = MorphismWitness::new(fam.transport(0, 1).clone(), vec![Certificate::gen(0)], &spaces[0]);
    let w12 = MorphismWitness::new(fam.transport(1, 2).clone(), vec![Certificate::gen(0)], &spaces[1]);
    Spectrum::new(fam, spaces, vec![((0, 1), w01), ((1, 2), w12)]).expect("fixture spectrum")
}

/// Contravariant chain `{z} → {u,v}` whose transport misses `v`, so `v`
/// lies on no compatible family.
pub fn thin_contra() -> Spectrum {
    let uv = Setoid::discrete(&["u", "v"]).unwrap();
    let z = Setoid::discrete(&["z"]).unwrap();
    let l = map(&z, &uv, &[("z", "u")]);
    let fam = DirectFamily::new(
        DirectedIndex::chain(2),
        Direction::Contravariant,
        vec![uv.clone(), z.clone()],
        vec![((0, 1), l)],
    )
    .expect("fixture family");
    let spaces = vec![indicator_space(&uv, &[0, 1]), indicator_space(&z, &[0])];
    let w = MorphismWitness::new(fam.transport(0, 1).clone(), vec![Certificate::Const(q(0))], &spaces[0]);
    Spectrum::new(fam, spaces, vec![((0, 1), w)]).expect("fixture spectrum")
}

/// The constant [`x2_space`] spectrum over the even/odd chain `{0..2m}`
/// together with its cofinal evens.
pub fn eo_constant(m: usize) -> (Spectrum, CofinalSubset) {
    let (d, c) = even_odd(m);
    (Spectrum::constant(&d, Direction::Covariant, &x2_space()), c)
}

/// The even/odd cofinal subset of the chain of three, sitting over [`cspec`].
pub fn cspec_evens() -> (Spectrum, CofinalSubset) {
    let (_, c) = even_odd(1);
    (cspec(), c)
}
