//! Seeded random instances: small directed indices, families, spectra,
//! spectrum maps, cofinal subsets, cocones, cones and certificates.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{DirectFamily, Direction};
use crate::limits::{Cocone, Cone, DirectLimit, InverseLimit};
use crate::order::{validate_cofinal, CofinalSubset, DirectedIndex};
use crate::setoid::{Setoid, SetoidFn};
use crate::spectrum::{auto_witness, Spectrum, SpectrumMap};
use crate::topology::{
    synthesize_certificate, synthesize_witness, BSpace, BicExpr, Certificate, MorphismWitness, RFun, Q,
};

/// Certificate depth used when synthesizing witnesses for generated data.
pub const SYNTH_DEPTH: usize = 12;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn relation_from_mask(n: usize, mask: u32) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    let mut bit = 0;
    for (a, row) in rel.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            if a == b {
                *cell = true;
            } else {
                *cell = mask >> bit & 1 == 1;
                bit += 1;
            }
        }
    }
    rel
}

fn is_directed_preorder(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c])));
    transitive && (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| rel[a][c] && rel[b][c])))
}

fn canonical_code(rel: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    let n = rel.len();
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if rel[a][b] {
                        code |= 1 << (p[a] * n + p[b]);
                    }
                }
            }
            code
        })
        .min()
        .unwrap_or(0)
}

/// Every directed preorder on `n` points, one per isomorphism class, over
/// the discrete base `{0..n}`.
pub fn directed_preorders(n: usize) -> Vec<DirectedIndex> {
    if n == 0 {
        return Vec::new();
    }
    let perms = permutations(n);
    let free = n * (n - 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u32 << free) {
        let rel = relation_from_mask(n, mask);
        if !is_directed_preorder(&rel) || !seen.insert(canonical_code(&rel, &perms)) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| rel[a][b])
            .collect();
        out.push(DirectedIndex::new(Setoid::range(n), &pairs, false, None).expect("directed by construction"));
    }
    out
}

/// [`directed_preorders`] for every size `1..=max`.
pub fn small_indices(max: usize) -> Vec<DirectedIndex> {
    (1..=max).flat_map(directed_preorders).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// One family in a stack of successively coarser quotients of shared atoms.
#[derive(Clone)]
struct Layer {
    // atom -> class id, for atoms below the index
    cls: Vec<Vec<Option<usize>>>,
    carriers: Vec<Setoid>,
    class_elem: Vec<Vec<usize>>,
    elem_class: Vec<Vec<usize>>,
    class_atom: Vec<Vec<usize>>,
}

struct Skeleton {
    arrow: Vec<Vec<bool>>,
    // representatives of the strongly connected pieces, bottom first
    order: Vec<usize>,
    scc: Vec<usize>,
}

impl Skeleton {
    fn new(index: &DirectedIndex, dir: Direction) -> Self {
        let n = index.len();
        let arrow: Vec<Vec<bool>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| match dir {
                        Direction::Covariant => index.leq(a, b),
                        Direction::Contravariant => index.leq(b, a),
                    })
                    .collect()
            })
            .collect();
        let scc: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| arrow[a][b] && arrow[b][a]).unwrap_or(a))
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|&a| scc[a] == a).collect();
        order.sort_by_key(|&a| ((0..n).filter(|&p| arrow[p][a]).count(), a));
        Skeleton { arrow, order, scc }
    }

    fn strictly_below(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.order
            .iter()
            .copied()
            .filter(move |&p| p != c && self.arrow[p][c] && !self.arrow[c][p])
    }

    fn strictly_above(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.order
            .iter()
            .copied()
            .filter(move |&d| d != c && self.arrow[c][d] && !self.arrow[d][c])
    }
}

/// Carrier, class elements, element classes and class atoms of one SCC.
type Built = (Setoid, Vec<usize>, Vec<usize>, Vec<usize>);

const LETTERS: [&str; 4] = ["a", "b", "c", "d"];

/// A seeded generator of random instances.
pub struct Gen {
    rng: ChaCha8Rng,
    indices: Vec<DirectedIndex>,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            indices: small_indices(4),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A directed preorder of size at most `max` (at most 4).
    pub fn index(&mut self, max: usize) -> DirectedIndex {
        let pool: Vec<&DirectedIndex> = self.indices.iter().filter(|d| d.len() <= max).collect();
        (*pool.choose(&mut self.rng).expect("sizes 1..=4 exist")).clone()
    }

    pub fn direction(&mut self) -> Direction {
        if self.rng.gen_bool(0.5) {
            Direction::Covariant
        } else {
            Direction::Contravariant
        }
    }

    /// A setoid on `1..=max` elements with random merges.
    pub fn setoid(&mut self, max: usize) -> Setoid {
        let n = self.rng.gen_range(1..=max);
        let mut uf = UnionFind::new(n);
        for a in 1..n {
            if self.rng.gen_bool(0.25) {
                let b = self.rng.gen_range(0..a);
                uf.union(a, b);
            }
        }
        let keys: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Setoid::from_keys(LETTERS[..n].iter().map(|s| s.to_string()).collect(), &keys)
    }

    fn merge_down(&mut self, uf: &mut UnionFind, atoms: &[usize]) {
        let classes = |uf: &mut UnionFind| atoms.iter().map(|&a| uf.find(a)).collect::<BTreeSet<_>>();
        if atoms.len() > 1 && self.rng.gen_bool(0.3) {
            let a = *atoms.choose(&mut self.rng).unwrap();
            let b = *atoms.choose(&mut self.rng).unwrap();
            uf.union(a, b);
        }
        loop {
            let cs: Vec<usize> = classes(uf).into_iter().collect();
            if cs.len() <= 3 {
                break;
            }
            let a = *cs.choose(&mut self.rng).unwrap();
            let b = *cs.iter().find(|&&b| b != a).unwrap();
            uf.union(a, b);
        }
    }

    fn layers(&mut self, sk: &Skeleton, depth: usize) -> Vec<Layer> {
        let n = sk.scc.len();
        let mut owner: Vec<usize> = Vec::new();
        for &c in &sk.order {
            let k = if sk.strictly_below(c).next().is_none() {
                self.rng.gen_range(1..=3)
            } else {
                self.rng.gen_range(0..=2)
            };
            owner.extend(std::iter::repeat_n(c, k));
        }
        let na = owner.len();
        let below = |c: usize| -> Vec<usize> { (0..na).filter(|&a| sk.arrow[owner[a]][c]).collect() };
        let mut out: Vec<Layer> = Vec::new();
        for _ in 0..=depth {
            let mut cls = vec![vec![None; na]; n];
            for &c in &sk.order {
                let atoms = below(c);
                let mut uf = UnionFind::new(na);
                if let Some(prev) = out.last() {
                    union_by(&mut uf, &atoms, &prev.cls[c]);
                }
                for p in sk.strictly_below(c) {
                    let pc: Vec<Option<usize>> = cls[p].clone();
                    union_by(&mut uf, &atoms, &pc);
                }
                self.merge_down(&mut uf, &atoms);
                let mut ids: Vec<usize> = atoms.iter().map(|&a| uf.find(a)).collect();
                ids.sort_unstable();
                ids.dedup();
                for &a in &atoms {
                    let r = uf.find(a);
                    cls[c][a] = Some(ids.binary_search(&r).unwrap());
                }
            }
            let mut layer = Layer {
                cls: Vec::new(),
                carriers: Vec::new(),
                class_elem: Vec::new(),
                elem_class: Vec::new(),
                class_atom: Vec::new(),
            };
            let mut built: Vec<Option<Built>> = vec![None; n];
            for &c in &sk.order {
                let m = cls[c].iter().flatten().max().map_or(0, |&k| k + 1);
                let mut elem_class: Vec<usize> = (0..m).collect();
                if m < 3 && self.rng.gen_bool(0.3) {
                    elem_class.push(self.rng.gen_range(0..m));
                }
                let class_atom = (0..m)
                    .map(|k| (0..na).find(|&a| cls[c][a] == Some(k)).unwrap())
                    .collect();
                let labels = LETTERS[..elem_class.len()].iter().map(|s| s.to_string()).collect();
                let carrier = Setoid::from_keys(labels, &elem_class);
                built[c] = Some((carrier, (0..m).collect(), elem_class, class_atom));
            }
            for i in 0..n {
                let (carrier, ce, ec, ca) = built[sk.scc[i]].clone().unwrap();
                layer.cls.push(cls[sk.scc[i]].clone());
                layer.carriers.push(carrier);
                layer.class_elem.push(ce);
                layer.elem_class.push(ec);
                layer.class_atom.push(ca);
            }
            out.push(layer);
        }
        out
    }

    fn random_fn(&mut self, x: &Setoid) -> RFun {
        let vals: Vec<i64> = (0..x.len()).map(|_| self.rng.gen_range(0..3)).collect();
        let vals: Vec<i64> = (0..x.len()).map(|e| vals[x.rep(e)]).collect();
        RFun::from_ints(x, &vals).expect("constant on classes")
    }

    fn spaces(&mut self, sk: &Skeleton, layers: &[Layer]) -> Vec<Vec<BSpace>> {
        let n = sk.scc.len();
        let mut out: Vec<Vec<BSpace>> = vec![Vec::new(); layers.len()];
        for k in (0..layers.len()).rev() {
            let l = &layers[k];
            let mut gens: Vec<Vec<RFun>> = vec![Vec::new(); n];
            for &c in sk.order.iter().rev() {
                let x = &l.carriers[c];
                let mut gs = Vec::new();
                let extras = [0.6, 0.2].iter().filter(|&&p| self.rng.gen_bool(p)).count();
                for _ in 0..extras {
                    gs.push(self.random_fn(x));
                }
                let above: Vec<usize> = sk.strictly_above(c).collect();
                for d in above {
                    let t = layer_map(l, l, c, d, x);
                    for g in &gens[d] {
                        gs.push(g.after(&t).expect("shapes agree"));
                    }
                }
                if k + 1 < layers.len() {
                    let psi = layer_map(l, &layers[k + 1], c, c, x);
                    for g in out[k + 1][c].generators() {
                        gs.push(g.after(&psi).expect("shapes agree"));
                    }
                }
                let mut kept: Vec<RFun> = Vec::new();
                for g in gs {
                    if !g.is_constant() && !kept.iter().any(|h| h.values() == g.values()) {
                        kept.push(g);
                    }
                }
                gens[c] = kept;
            }
            out[k] = (0..n)
                .map(|i| {
                    let c = sk.scc[i];
                    BSpace::new(l.carriers[i].clone(), gens[c].clone()).expect("extensional generators")
                })
                .collect();
        }
        out
    }

    fn family(&self, index: &DirectedIndex, dir: Direction, l: &Layer) -> DirectFamily {
        let given = index
            .order_pairs()
            .into_iter()
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| {
                let (a, b) = match dir {
                    Direction::Covariant => (i, j),
                    Direction::Contravariant => (j, i),
                };
                ((i, j), layer_map(l, l, a, b, &l.carriers[a]))
            })
            .collect();
        DirectFamily::new(index.clone(), dir, l.carriers.clone(), given).expect("atoms induce compatible transports")
    }

    /// A direct family over `index` with carriers of at most three elements.
    pub fn direct_family(&mut self, index: &DirectedIndex, dir: Direction) -> DirectFamily {
        let sk = Skeleton::new(index, dir);
        let layers = self.layers(&sk, 0);
        self.family(index, dir, &layers[0])
    }

    /// A chain of `len` composable spectrum maps over `index`, with
    /// synthesized continuity witnesses; `len = 0` yields just a spectrum.
    pub fn spectra(&mut self, index: &DirectedIndex, dir: Direction, len: usize) -> (Vec<Spectrum>, Vec<SpectrumMap>) {
        let sk = Skeleton::new(index, dir);
        let layers = self.layers(&sk, len);
        let spaces = self.spaces(&sk, &layers);
        let spectra: Vec<Spectrum> = layers
            .iter()
            .zip(spaces)
            .map(|(l, sp)| {
                let fam = self.family(index, dir, l);
                let given = index
                    .order_pairs()
                    .into_iter()
                    .filter(|&(i, j)| i != j)
                    .map(|(i, j)| Ok(((i, j), auto_witness(&fam, &sp, i, j, SYNTH_DEPTH)?)))
                    .collect::<Result<Vec<_>, crate::spectrum::SpectrumError>>()
                    .expect("generators pulled back along transports");
                Spectrum::new(fam, sp, given).expect("witness shapes agree")
            })
            .collect();
        let maps = (0..len)
            .map(|k| {
                let (s, t) = (&spectra[k], &spectra[k + 1]);
                let comps: Vec<SetoidFn> = (0..index.len())
                    .map(|i| layer_map(&layers[k], &layers[k + 1], i, i, &layers[k].carriers[i]))
                    .collect();
                let ws = comps
                    .iter()
                    .enumerate()
                    .map(|(i, f)| synthesize_witness(s.space(i), t.space(i), f.clone(), SYNTH_DEPTH))
                    .collect::<Result<Vec<_>, _>>()
                    .expect("target generators pulled back");
                SpectrumMap::new(s, t, comps, Some(ws)).expect("natural by construction")
            })
            .collect();
        (spectra, maps)
    }

    /// A random valid spectrum over `index`.
    pub fn spectrum(&mut self, index: &DirectedIndex, dir: Direction) -> Spectrum {
        self.spectra(index, dir, 0).0.remove(0)
    }

    /// A random spectrum whose carriers have at most `max_points` elements
    /// in total.
    pub fn small_spectrum(&mut self, max_index: usize, dir: Direction, max_points: usize) -> Spectrum {
        loop {
            let d = self.index(max_index);
            let s = self.spectrum(&d, dir);
            if s.family().points().len() <= max_points {
                return s;
            }
        }
    }

    /// A cofinal subset of `d`, found by rejection with the top element as
    /// fallback.
    pub fn cofinal(&mut self, d: &DirectedIndex) -> CofinalSubset {
        let n = d.len();
        let tops: Vec<usize> = (0..n).filter(|&t| (0..n).all(|i| d.leq(i, t))).collect();
        for _ in 0..40 {
            let top = *tops.choose(&mut self.rng).expect("finite directed sets have tops");
            let members: Vec<usize> = (0..n).filter(|&i| i == top || self.rng.gen_bool(0.5)).collect();
            let cof: Vec<usize> = (0..n)
                .map(|i| match members.iter().position(|&m| m == i) {
                    Some(p) => p,
                    None => {
                        let above: Vec<usize> = (0..members.len()).filter(|&p| d.leq(i, members[p])).collect();
                        *above.choose(&mut self.rng).expect("top is above")
                    }
                })
                .collect();
            let c = subset(d, &members, cof);
            if validate_cofinal(d, &c).is_empty() {
                return c;
            }
        }
        let top = tops[0];
        subset(d, &[top], vec![0; n])
    }

    /// A cocone over the limit's spectrum with apex of at most `max_apex`
    /// elements, factored through a random map out of the limit.
    pub fn cocone(&mut self, l: &DirectLimit, max_apex: usize) -> Cocone {
        let s = l.spectrum();
        let y = self.setoid(max_apex);
        let reps: Vec<usize> = (0..l.carrier().len()).map(|_| self.rng.gen_range(0..y.len())).collect();
        let table = (0..l.carrier().len()).map(|p| reps[l.carrier().rep(p)]).collect();
        let h = SetoidFn::new(l.carrier().clone(), y.clone(), table).expect("constant on classes");
        let legs: Vec<SetoidFn> = (0..s.len()).map(|i| l.eql(i).then(&h).expect("composable")).collect();
        let mut gens = Vec::new();
        for _ in 0..3 {
            let g = self.random_fn(&y);
            let fits = legs.iter().enumerate().all(|(i, e)| {
                let pulled = g.after(e).expect("shapes agree");
                synthesize_certificate(s.space(i), pulled.values(), SYNTH_DEPTH).is_some()
            });
            if fits && !g.is_constant() && !gens.iter().any(|h: &RFun| h.values() == g.values()) {
                gens.push(g);
            }
        }
        let apex = BSpace::new(y, gens).expect("extensional generators");
        let legs = legs
            .into_iter()
            .enumerate()
            .map(|(i, e)| synthesize_witness(s.space(i), &apex, e, SYNTH_DEPTH).expect("generators checked"))
            .collect();
        Cocone { apex, legs }
    }

    /// A cone over the limit's spectrum with apex of at most `max_apex`
    /// elements, or `None` when the limit is empty.
    pub fn cone(&mut self, l: &InverseLimit, max_apex: usize) -> Option<Cone> {
        let s = l.spectrum();
        let m = l.elems().len();
        if m == 0 {
            return None;
        }
        let y = self.setoid(max_apex);
        let pick: Vec<usize> = (0..y.len()).map(|_| self.rng.gen_range(0..m)).collect();
        let h: Vec<usize> = (0..y.len()).map(|e| pick[y.rep(e)]).collect();
        let legs: Vec<SetoidFn> = (0..s.len())
            .map(|i| {
                let t = h.iter().map(|&p| l.elems()[p][i]).collect();
                SetoidFn::new(y.clone(), s.family().carrier(i).clone(), t).expect("constant on classes")
            })
            .collect();
        let mut gens: Vec<RFun> = Vec::new();
        let mut push = |g: RFun| {
            if !g.is_constant() && !gens.iter().any(|h| h.values() == g.values()) {
                gens.push(g);
            }
        };
        for (i, e) in legs.iter().enumerate() {
            for f in s.space(i).generators() {
                push(f.after(e).expect("shapes agree"));
            }
        }
        if self.rng.gen_bool(0.3) {
            push(self.random_fn(&y));
        }
        let apex = BSpace::new(y, gens).expect("extensional generators");
        let legs = legs
            .into_iter()
            .enumerate()
            .map(|(i, e)| synthesize_witness(&apex, s.space(i), e, SYNTH_DEPTH).expect("generators pulled back"))
            .collect();
        Some(Cone { apex, legs })
    }

    /// A small rational `p/q` with `|p| ≤ 20`, `1 ≤ q ≤ 6`.
    pub fn rational(&mut self) -> Q {
        Q::new(
            self.rng.gen_range(-20i64..=20).into(),
            self.rng.gen_range(1i64..=6).into(),
        )
    }

    pub fn table(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// A random expression with at most `size` internal nodes.
    pub fn bic(&mut self, size: usize) -> BicExpr {
        if size == 0 || self.rng.gen_bool(0.25) {
            return if self.rng.gen_bool(0.6) {
                BicExpr::Id
            } else {
                BicExpr::constant(self.rational())
            };
        }
        let left = self.rng.gen_range(0..size);
        match self.rng.gen_range(0..7) {
            0 => BicExpr::add(self.bic(left), self.bic(size - 1 - left)),
            1 => BicExpr::mul(self.bic(left), self.bic(size - 1 - left)),
            2 => BicExpr::neg(self.bic(size - 1)),
            3 => BicExpr::abs(self.bic(size - 1)),
            4 => BicExpr::max(self.bic(left), self.bic(size - 1 - left)),
            5 => BicExpr::min(self.bic(left), self.bic(size - 1 - left)),
            _ => BicExpr::comp(self.bic(left), self.bic(size - 1 - left)),
        }
    }

    /// A certificate of depth at most `depth` over `gens` generators, built
    /// from generator, constant, addition and continuous-map nodes.
    pub fn certificate(&mut self, gens: usize, depth: usize) -> Certificate {
        if depth <= 1 || self.rng.gen_bool(0.25) {
            return if gens > 0 && self.rng.gen_bool(0.7) {
                Certificate::gen(self.rng.gen_range(0..gens))
            } else {
                Certificate::Const(self.rational())
            };
        }
        if self.rng.gen_bool(0.5) {
            Certificate::add(self.certificate(gens, depth - 1), self.certificate(gens, depth - 1))
        } else {
            let phi = self.bic(2);
            Certificate::bic(phi, self.certificate(gens, depth - 1))
        }
    }

    /// A space of at most `max` points with up to three random generators.
    pub fn space(&mut self, max: usize) -> BSpace {
        let x = self.setoid(max);
        let k = self.rng.gen_range(0..=3);
        let gens = (0..k).map(|_| self.random_fn(&x)).collect();
        BSpace::new(x, gens).expect("extensional generators")
    }

    /// A morphism `X → Y` between random spaces; `X` carries the pulled-back
    /// generators of `Y` plus one random generator.
    pub fn morphism(&mut self, max: usize) -> (BSpace, BSpace, MorphismWitness) {
        let dst = self.space(max);
        let x = self.setoid(max);
        let pick: Vec<usize> = (0..x.len())
            .map(|_| self.rng.gen_range(0..dst.carrier().len()))
            .collect();
        let table = (0..x.len()).map(|e| pick[x.rep(e)]).collect();
        let h = SetoidFn::new(x.clone(), dst.carrier().clone(), table).expect("constant on classes");
        let mut gens: Vec<RFun> = dst
            .generators()
            .iter()
            .map(|g| g.after(&h).expect("shapes agree"))
            .collect();
        gens.push(self.random_fn(&x));
        let src = BSpace::new(x, gens).expect("extensional generators");
        let w = MorphismWitness::new(h, (0..dst.generators().len()).map(Certificate::gen).collect(), &dst);
        (src, dst, w)
    }
}

fn union_by(uf: &mut UnionFind, atoms: &[usize], cls: &[Option<usize>]) {
    for &a in atoms {
        for &b in atoms {
            if cls[a].is_some() && cls[a] == cls[b] {
                uf.union(a, b);
            }
        }
    }
}

// The map from index `a` of `from` to index `b` of `to` induced on atoms.
fn layer_map(from: &Layer, to: &Layer, a: usize, b: usize, dom: &Setoid) -> SetoidFn {
    let table = from.elem_class[a]
        .iter()
        .map(|&k| {
            let atom = from.class_atom[a][k];
            to.class_elem[b][to.cls[b][atom].expect("atom lies below")]
        })
        .collect();
    SetoidFn::new(dom.clone(), to.carriers[b].clone(), table).expect("induced maps are extensional")
}

fn subset(d: &DirectedIndex, members: &[usize], cof: Vec<usize>) -> CofinalSubset {
    let labels: Vec<String> = members.iter().map(|&i| d.base().label(i).to_string()).collect();
    let j = Setoid::from_index_pairs(labels, &[]).expect("distinct labels");
    let embed = SetoidFn::new(j.clone(), d.base().clone(), members.to_vec()).expect("discrete");
    let cof = SetoidFn::new(d.base().clone(), j, cof).expect("discrete");
    CofinalSubset::new(embed, cof).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::validate_direct_family;
    use crate::order::validate_directed;
    use crate::spectrum::validate_spectrum;
    use crate::topology::{check_morphism, CertConfig};

    #[test]
    fn preorder_counts() {
        // directed preorders up to isomorphism
        let counts: Vec<usize> = (1..=3).map(|n| directed_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5]);
        for d in small_indices(4) {
            assert!(validate_directed(&d).is_empty());
        }
    }

    #[test]
    fn generated_families_and_spectra_validate() {
        let mut g = Gen::new(7);
        for _ in 0..40 {
            let d = g.index(4);
            let dir = g.direction();
            let f = g.direct_family(&d, dir);
            assert!(validate_direct_family(&f).is_empty());
            assert!(f.carriers().iter().all(|c| !c.is_empty() && c.len() <= 3));
            let s = g.spectrum(&d, dir);
            assert!(validate_spectrum(&s, &CertConfig::default()).is_empty());
        }
    }

    #[test]
    fn generated_maps_are_continuous() {
        let mut g = Gen::new(11);
        for _ in 0..20 {
            let d = g.index(3);
            let dir = g.direction();
            let (_, maps) = g.spectra(&d, dir, 2);
            for m in &maps {
                assert!(m.check_continuity(&CertConfig::default()).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn generated_cofinal_subsets_validate() {
        let mut g = Gen::new(3);
        for d in small_indices(4) {
            let c = g.cofinal(&d);
            assert!(validate_cofinal(&d, &c).is_empty());
        }
    }

    #[test]
    fn generated_morphisms_validate() {
        let mut g = Gen::new(5);
        for _ in 0..30 {
            let (src, dst, w) = g.morphism(4);
            assert!(check_morphism(&src, &dst, &w, &CertConfig::default()).is_empty());
            assert!(g.certificate(2, 5).depth() <= 5);
        }
    }
}
