//! Spectra of Bishop spaces over a directed index, spectrum maps, threads
//! and the sum space they generate.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::check::Checks;
use crate::family::{
    shortest_path, validate_direct_family, DirectFamily, Direction, FamilyError, FamilyMap, FamilyViolation,
};
use crate::order::{product_order, CofinalSubset, DirectedIndex, OrderError};
use crate::setoid::{QuotientSetoid, Setoid, SetoidError, SetoidFn};
use crate::topology::{
    check_morphism, lift_certificate, product_space, projection_witness, synthesize_witness, BSpace, CertConfig,
    CertError, Certificate, Link, MorphismWitness, RFun, Thread, ThreadRule, ThreadSubbase,
};
use crate::Config;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error("space {0} does not live on the family's carrier")]
    SpaceCarrier(usize),
    #[error("no witness can be composed for ({0}, {1})")]
    MissingWitness(usize, usize),
    #[error("witness ({0}, {1}) has the wrong domain or codomain")]
    WitnessShape(usize, usize),
    #[error("operation needs a covariant spectrum")]
    NotCovariant,
    #[error("operation needs a contravariant spectrum")]
    NotContravariant,
    #[error("spectrum map has no continuity witness at {0}")]
    NotContinuous(usize),
    #[error("spectra live over different indices")]
    IndexMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumViolation {
    Family(FamilyViolation),
    /// The witness's map is not the family transport.
    EdgeMap {
        i: usize,
        j: usize,
    },
    Edge {
        i: usize,
        j: usize,
        error: CertError,
    },
    /// The composite of two edge witnesses fails to certify.
    Composite {
        i: usize,
        j: usize,
        k: usize,
        error: CertError,
    },
}

/// A direct family whose carriers carry Bishop topologies and whose
/// transports are certified morphisms.
///
/// The witness stored at `(i, j)` maps `F_i → F_j` when covariant and
/// `F_j → F_i` when contravariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    family: DirectFamily,
    spaces: Vec<BSpace>,
    given: BTreeMap<(usize, usize), MorphismWitness>,
    witnesses: BTreeMap<(usize, usize), MorphismWitness>,
}

impl Spectrum {
    /// Witnesses are given on some order pairs and composed along paths for
    /// the rest; reflexive pairs default to identities.
    pub fn new(
        family: DirectFamily,
        spaces: Vec<BSpace>,
        given: Vec<((usize, usize), MorphismWitness)>,
    ) -> Result<Self, SpectrumError> {
        let n = family.len();
        if spaces.len() != n {
            return Err(SpectrumError::IndexMismatch);
        }
        for (i, s) in spaces.iter().enumerate() {
            if s.carrier() != family.carrier(i) {
                return Err(SpectrumError::SpaceCarrier(i));
            }
        }
        let dir = family.direction();
        let mut given_map = BTreeMap::new();
        for ((i, j), w) in given {
            if !family.index().leq(i, j) {
                return Err(FamilyError::NotOrderPair(i, j).into());
            }
            let (src, dst) = match dir {
                Direction::Covariant => (i, j),
                Direction::Contravariant => (j, i),
            };
            if w.map().dom() != spaces[src].carrier() || w.map().cod() != spaces[dst].carrier() {
                return Err(SpectrumError::WitnessShape(i, j));
            }
            given_map.insert((i, j), w);
        }
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in given_map.keys() {
            if i != j {
                succ[i].push(j);
            }
        }
        let mut witnesses = BTreeMap::new();
        for (i, j) in family.index().order_pairs() {
            let w = if let Some(w) = given_map.get(&(i, j)) {
                w.clone()
            } else if i == j {
                MorphismWitness::identity(&spaces[i])
            } else {
                let path = shortest_path(&succ, i, j).ok_or(SpectrumError::MissingWitness(i, j))?;
                let mut steps: Vec<&MorphismWitness> = path.windows(2).map(|p| &given_map[&(p[0], p[1])]).collect();
                if dir == Direction::Contravariant {
                    steps.reverse();
                }
                let mut acc = steps[0].clone();
                for s in &steps[1..] {
                    acc = acc.then(s)?;
                }
                acc
            };
            witnesses.insert((i, j), w);
        }
        Ok(Spectrum {
            family,
            spaces,
            given: given_map,
            witnesses,
        })
    }

    /// The spectrum with one space everywhere and identity transports.
    pub fn constant(index: &DirectedIndex, direction: Direction, space: &BSpace) -> Self {
        let family = DirectFamily::constant(index, direction, space.carrier());
        let given = index
            .covering_pairs()
            .into_iter()
            .map(|p| (p, MorphismWitness::identity(space)))
            .collect();
        Spectrum::new(family, vec![space.clone(); index.len()], given).expect("identities compose")
    }

    pub fn family(&self) -> &DirectFamily {
        &self.family
    }

    pub fn index(&self) -> &DirectedIndex {
        self.family.index()
    }

    pub fn direction(&self) -> Direction {
        self.family.direction()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn space(&self, i: usize) -> &BSpace {
        &self.spaces[i]
    }

    pub fn spaces(&self) -> &[BSpace] {
        &self.spaces
    }

    /// The witnesses supplied at construction.
    pub fn given(&self) -> &BTreeMap<(usize, usize), MorphismWitness> {
        &self.given
    }

    /// The witness for the order pair `(i, j)`.
    pub fn witness(&self, i: usize, j: usize) -> &MorphismWitness {
        self.witnesses
            .get(&(i, j))
            .unwrap_or_else(|| panic!("({i}, {j}) is not an order pair"))
    }

    pub fn witnesses(&self) -> &BTreeMap<(usize, usize), MorphismWitness> {
        &self.witnesses
    }

    /// Pullback of a function on the carrier at `j` to the carrier at `i`
    /// along the transport of `(i, j)`, covariant case.
    pub fn pull(&self, i: usize, j: usize, f: &RFun) -> Result<RFun, CertError> {
        f.after(self.family.transport(i, j))
    }

    fn require(&self, dir: Direction) -> Result<(), SpectrumError> {
        match (self.direction(), dir) {
            (a, b) if a == b => Ok(()),
            (_, Direction::Covariant) => Err(SpectrumError::NotCovariant),
            (_, Direction::Contravariant) => Err(SpectrumError::NotContravariant),
        }
    }

    /// Thread compatibility constraints `Θ_i = Θ_j ∘ λ_ij`.
    pub fn links(&self) -> Result<Vec<Link>, SpectrumError> {
        self.require(Direction::Covariant)?;
        Ok(self
            .index()
            .order_pairs()
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| Link {
                lo: i,
                hi: j,
                map: self.family.transport(i, j).clone(),
            })
            .collect())
    }

    /// The thread subbase with the given pool over `carrier`, whose points
    /// are the family's points in order.
    pub fn thread_subbase(
        &self,
        carrier: Setoid,
        pool: Vec<Thread>,
        cfg: &CertConfig,
    ) -> Result<ThreadSubbase, SpectrumError> {
        Ok(ThreadSubbase::new(
            carrier,
            self.family.points(),
            self.spaces.clone(),
            self.links()?,
            pool,
            cfg,
        )?)
    }

    /// Validates a thread and returns `f_Θ` on the direct sum.
    pub fn thread_function(&self, sum: &QuotientSetoid, t: &Thread, cfg: &CertConfig) -> Result<RFun, SpectrumError> {
        let ts = self.thread_subbase(sum.setoid().clone(), Vec::new(), cfg)?;
        let c = ts.check_thread(t, cfg)?;
        Ok(RFun::new(sum.setoid().clone(), c.values)?)
    }

    /// Compatible threads built from generators, pool constants and their
    /// pullbacks along transports, in a deterministic order.
    pub fn enumerate_threads(&self, cfg: &Config) -> Result<Vec<Thread>, SpectrumError> {
        self.require(Direction::Covariant)?;
        let n = self.len();
        let base: Vec<Vec<(RFun, Certificate)>> = (0..n)
            .map(|i| {
                let sp = &self.spaces[i];
                let mut c: Vec<(RFun, Certificate)> = sp
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(k, g)| (g.clone(), Certificate::gen(k)))
                    .collect();
                for q in &cfg.constants {
                    c.push((RFun::constant(sp.carrier(), q.clone()), Certificate::Const(q.clone())));
                }
                c
            })
            .collect();
        let mut cands: Vec<Vec<(RFun, Certificate)>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut seen: HashSet<RFun> = HashSet::new();
            let mut out = Vec::new();
            let mut push = |f: RFun, c: Certificate, out: &mut Vec<(RFun, Certificate)>| {
                if seen.insert(f.clone()) {
                    out.push((f, c));
                }
            };
            for (f, c) in &base[i] {
                push(f.clone(), c.clone(), &mut out);
            }
            for j in 0..n {
                if i == j || !self.index().leq(i, j) {
                    continue;
                }
                let w = self.witness(i, j);
                for (f, c) in &base[j] {
                    let pulled = self.pull(i, j, f)?;
                    push(pulled, lift_certificate(w, c)?, &mut out);
                }
            }
            cands.push(out);
        }
        let links = self.links()?;
        let mut by_hi: Vec<Vec<&Link>> = vec![Vec::new(); n];
        for l in &links {
            by_hi[l.lo.max(l.hi)].push(l);
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        let mut visits = 0usize;
        #[allow(clippy::too_many_arguments)]
        fn go(
            i: usize,
            n: usize,
            cands: &[Vec<(RFun, Certificate)>],
            by_hi: &[Vec<&Link>],
            choice: &mut Vec<usize>,
            visits: &mut usize,
            bound: usize,
            out: &mut Vec<Thread>,
        ) -> Result<(), SpectrumError> {
            if i == n {
                out.push(Thread::new((0..n).map(|k| cands[k][choice[k]].clone()).collect()));
                return Ok(());
            }
            for c in 0..cands[i].len() {
                *visits += 1;
                if *visits > bound {
                    return Err(CertError::ThreadBoundExceeded(bound).into());
                }
                choice[i] = c;
                let ok = by_hi[i].iter().all(|l| {
                    let lo = &cands[l.lo][choice[l.lo]].0;
                    let hi = &cands[l.hi][choice[l.hi]].0;
                    (0..l.map.dom().len()).all(|x| lo.value(x) == hi.value(l.map.apply(x)))
                });
                if ok {
                    go(i + 1, n, cands, by_hi, choice, visits, bound, out)?;
                }
            }
            Ok(())
        }
        go(
            0,
            n,
            &cands,
            &by_hi,
            &mut choice,
            &mut visits,
            cfg.thread_bound,
            &mut out,
        )?;
        Ok(out)
    }

    /// The `J`-subspectrum along a cofinal subset.
    pub fn restrict(&self, c: &CofinalSubset) -> Result<Spectrum, SpectrumError> {
        let sub = c.restricted_order(self.index())?;
        let e = c.embed();
        let family = self.family.restrict(&sub, e)?;
        let spaces = (0..sub.len()).map(|a| self.spaces[e.apply(a)].clone()).collect();
        let given = sub
            .order_pairs()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| ((a, b), self.witness(e.apply(a), e.apply(b)).clone()))
            .collect();
        Spectrum::new(family, spaces, given)
    }
}

/// Every failure of the spectrum laws; empty iff valid.
pub fn validate_spectrum(s: &Spectrum, cfg: &CertConfig) -> Vec<SpectrumViolation> {
    let mut out: Vec<SpectrumViolation> = validate_direct_family(s.family())
        .into_iter()
        .map(SpectrumViolation::Family)
        .collect();
    let ends = |i: usize, j: usize| match s.direction() {
        Direction::Covariant => (i, j),
        Direction::Contravariant => (j, i),
    };
    for (&(i, j), w) in s.witnesses() {
        if !w.map().agrees_with(s.family().transport(i, j)) {
            out.push(SpectrumViolation::EdgeMap { i, j });
            continue;
        }
        let (a, b) = ends(i, j);
        for error in check_morphism(s.space(a), s.space(b), w, cfg) {
            out.push(SpectrumViolation::Edge { i, j, error });
        }
    }
    // composites of given witnesses along i ≼ j ≼ k
    let d = s.index();
    for (&(i, j), w1) in s.given() {
        for (&(j2, k), w2) in s.given() {
            if j2 != j || i == j || j == k || !d.leq(i, k) {
                continue;
            }
            let comp = match s.direction() {
                Direction::Covariant => w1.then(w2),
                Direction::Contravariant => w2.then(w1),
            };
            let (a, b) = ends(i, k);
            match comp {
                Err(error) => out.push(SpectrumViolation::Composite { i, j, k, error }),
                Ok(c) => {
                    if let Some(error) = check_morphism(s.space(a), s.space(b), &c, cfg).into_iter().next() {
                        out.push(SpectrumViolation::Composite { i, j, k, error });
                    }
                }
            }
        }
    }
    out
}

/// A witness for the transport `(i, j)` found by bounded certificate search.
pub fn auto_witness(
    family: &DirectFamily,
    spaces: &[BSpace],
    i: usize,
    j: usize,
    depth: usize,
) -> Result<MorphismWitness, SpectrumError> {
    let (a, b) = match family.direction() {
        Direction::Covariant => (i, j),
        Direction::Contravariant => (j, i),
    };
    Ok(synthesize_witness(
        &spaces[a],
        &spaces[b],
        family.transport(i, j).clone(),
        depth,
    )?)
}

/// The product spectrum over the product index; the carrier at `(i, j)`
/// sits at `i · |J| + j`.
pub fn product_spectrum(s: &Spectrum, t: &Spectrum) -> Result<Spectrum, SpectrumError> {
    if s.direction() != t.direction() {
        return Err(SpectrumError::IndexMismatch);
    }
    let (di, dj) = (s.index(), t.index());
    let index = product_order(di, dj);
    let m = dj.len();
    let spaces: Vec<BSpace> = (0..index.len())
        .map(|p| product_space(s.space(p / m), t.space(p % m)))
        .collect();
    let carriers: Vec<Setoid> = spaces.iter().map(|sp| sp.carrier().clone()).collect();
    let pairs: Vec<(usize, usize)> = index.order_pairs().into_iter().filter(|(a, b)| a != b).collect();
    let mut given = Vec::new();
    let mut transports = Vec::new();
    for &(a, b) in &pairs {
        let (i1, j1, i2, j2) = (a / m, a % m, b / m, b % m);
        let (ws, wt) = (s.witness(i1, i2), t.witness(j1, j2));
        // the source factor spaces of the two witnesses
        let (src, dst) = match s.direction() {
            Direction::Covariant => (a, b),
            Direction::Contravariant => (b, a),
        };
        let n2 = t.space(src % m).carrier().len();
        let k2 = t.space(dst % m).carrier().len();
        let table = (0..carriers[src].len())
            .map(|p| ws.map().apply(p / n2) * k2 + wt.map().apply(p % n2))
            .collect();
        let map = SetoidFn::new(carriers[src].clone(), carriers[dst].clone(), table)?;
        let (fs, ft) = (s.space(src / m), t.space(src % m));
        let pr1 = projection_witness(fs, ft, &spaces[src], false);
        let pr2 = projection_witness(fs, ft, &spaces[src], true);
        let mut certs = Vec::new();
        for c in ws.certs() {
            certs.push(lift_certificate(&pr1, c)?);
        }
        for c in wt.certs() {
            certs.push(lift_certificate(&pr2, c)?);
        }
        transports.push(((a, b), map.clone()));
        given.push(((a, b), MorphismWitness::new(map, certs, &spaces[dst])));
    }
    let family = DirectFamily::new(index, s.direction(), carriers, transports)?;
    Spectrum::new(family, spaces, given)
}

/// A natural family of maps between spectra over the same index, with
/// optional continuity witnesses `F_i → G_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMap {
    source: Spectrum,
    target: Spectrum,
    map: FamilyMap,
    continuity: Option<Vec<MorphismWitness>>,
}

impl SpectrumMap {
    pub fn new(
        source: &Spectrum,
        target: &Spectrum,
        comps: Vec<SetoidFn>,
        continuity: Option<Vec<MorphismWitness>>,
    ) -> Result<Self, SpectrumError> {
        let map = FamilyMap::new(source.family().clone(), target.family().clone(), comps)?;
        if let Some(ws) = &continuity {
            if ws.len() != source.len() {
                return Err(SpectrumError::IndexMismatch);
            }
            for (i, w) in ws.iter().enumerate() {
                if !w.map().agrees_with(map.comp(i)) || w.map().cod() != target.space(i).carrier() {
                    return Err(SpectrumError::WitnessShape(i, i));
                }
            }
        }
        Ok(SpectrumMap {
            source: source.clone(),
            target: target.clone(),
            map,
            continuity,
        })
    }

    pub fn identity(s: &Spectrum) -> Self {
        SpectrumMap {
            source: s.clone(),
            target: s.clone(),
            map: FamilyMap::identity(s.family()),
            continuity: Some(s.spaces().iter().map(MorphismWitness::identity).collect()),
        }
    }

    pub fn source(&self) -> &Spectrum {
        &self.source
    }

    pub fn target(&self) -> &Spectrum {
        &self.target
    }

    pub fn family_map(&self) -> &FamilyMap {
        &self.map
    }

    pub fn comp(&self, i: usize) -> &SetoidFn {
        self.map.comp(i)
    }

    pub fn continuity(&self) -> Option<&[MorphismWitness]> {
        self.continuity.as_deref()
    }

    pub fn continuity_at(&self, i: usize) -> Result<&MorphismWitness, SpectrumError> {
        self.continuity
            .as_ref()
            .and_then(|w| w.get(i))
            .ok_or(SpectrumError::NotContinuous(i))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpectrumMap) -> Result<SpectrumMap, SpectrumError> {
        let map = self.map.then(&other.map)?;
        let continuity = match (&self.continuity, &other.continuity) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x.then(y)).collect::<Result<Vec<_>, _>>()?),
            _ => None,
        };
        Ok(SpectrumMap {
            source: self.source.clone(),
            target: other.target.clone(),
            map,
            continuity,
        })
    }

    /// Continuity failures by index; empty iff every witness validates.
    pub fn check_continuity(&self, cfg: &CertConfig) -> Result<Vec<(usize, CertError)>, SpectrumError> {
        let ws = self.continuity.as_ref().ok_or(SpectrumError::NotContinuous(0))?;
        let mut out = Vec::new();
        for (i, w) in ws.iter().enumerate() {
            for e in check_morphism(self.source.space(i), self.target.space(i), w, cfg) {
                out.push((i, e));
            }
        }
        Ok(out)
    }

    /// Whether every component is an embedding.
    pub fn all_embeddings(&self) -> bool {
        self.map.comps().iter().all(|c| c.is_embedding().is_ok())
    }
}

/// `H*_i := H_i ∘ Ψ_i` with certificates lifted along `Ψ`'s witnesses.
pub fn pullback_thread(psi: &SpectrumMap, h: &Thread) -> Result<Thread, SpectrumError> {
    let mut comps = Vec::with_capacity(h.comps.len());
    for (i, (f, c)) in h.comps.iter().enumerate() {
        let w = psi.continuity_at(i)?;
        comps.push((f.after(w.map())?, lift_certificate(w, c)?));
    }
    Ok(Thread::new(comps))
}

/// The direct sum of a covariant spectrum with the topology generated by a
/// pool of threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSpace {
    quotient: QuotientSetoid,
    space: BSpace,
}

impl SumSpace {
    pub fn new(s: &Spectrum, pool: Vec<Thread>, cfg: &CertConfig) -> Result<Self, SpectrumError> {
        let quotient = s.family().direct_sum()?;
        let ts = s.thread_subbase(quotient.setoid().clone(), pool, cfg)?;
        Ok(SumSpace {
            quotient,
            space: BSpace::from_threads(ts),
        })
    }

    /// With the enumerated thread pool.
    pub fn enumerated(s: &Spectrum, cfg: &Config) -> Result<Self, SpectrumError> {
        let pool = s.enumerate_threads(cfg)?;
        SumSpace::new(s, pool, &cfg.cert)
    }

    pub fn quotient(&self) -> &QuotientSetoid {
        &self.quotient
    }

    pub fn carrier(&self) -> &Setoid {
        self.space.carrier()
    }

    pub fn space(&self) -> &BSpace {
        &self.space
    }

    pub fn threads(&self) -> &ThreadSubbase {
        self.space.thread_subbase().expect("built from threads")
    }

    /// `e_i` as a morphism `F_i → Σ` whose certificate for `f_Θ` is `Θ_i`'s own.
    pub fn injection_witness(&self, s: &Spectrum, i: usize) -> MorphismWitness {
        let map = s.family().sum_injection(i, &self.quotient);
        let certs = self.threads().pool().iter().map(|t| t.certificate(i).clone()).collect();
        MorphismWitness::new(map, certs, &self.space).with_rule(ThreadRule::new(move |t| Ok(t.certificate(i).clone())))
    }
}

/// `Σ^≼Ψ` with certificates `f_{H*}` for each target generator `f_H`.
pub fn sum_map_witness(psi: &SpectrumMap, src: &SumSpace, tgt: &SumSpace) -> Result<MorphismWitness, SpectrumError> {
    let map = psi.family_map().sigma_map(src.quotient(), tgt.quotient())?;
    let certs = tgt
        .threads()
        .pool()
        .iter()
        .map(|h| Ok(Certificate::thread(pullback_thread(psi, h)?)))
        .collect::<Result<Vec<_>, SpectrumError>>()?;
    let psi2 = psi.clone();
    Ok(
        MorphismWitness::new(map, certs, tgt.space()).with_rule(ThreadRule::new(move |h| {
            pullback_thread(&psi2, h)
                .map(Certificate::thread)
                .map_err(|e| CertError::RuleMismatch(e.to_string()))
        })),
    )
}

/// Checks that each `e_i` and `Σ^≼Ψ` are morphisms for the enumerated
/// thread topologies.
pub fn check_sum_morphisms(
    s: &Spectrum,
    t: &Spectrum,
    psi: &SpectrumMap,
    cfg: &Config,
) -> Result<Checks, SpectrumError> {
    let ss = SumSpace::enumerated(s, cfg)?;
    let st = SumSpace::enumerated(t, cfg)?;
    let mut checks = Checks::new();
    for i in 0..s.len() {
        let w = ss.injection_witness(s, i);
        checks.empty(
            format!("injection {} is a morphism", s.index().base().label(i)),
            &check_morphism(s.space(i), ss.space(), &w, &cfg.cert),
        );
    }
    for i in 0..s.len() {
        psi.continuity_at(i)?;
    }
    let w = sum_map_witness(psi, &ss, &st)?;
    checks.empty(
        "sum map is a morphism",
        &check_morphism(ss.space(), st.space(), &w, &cfg.cert),
    );
    Ok(checks)
}

/// `g ∘ Ψ_j ∘ λ_ij = g ∘ μ_ij ∘ Ψ_i` for every generator `g` of the target
/// space receiving the transports (contravariantly, of `G_i`).
pub fn check_induced_square(psi: &SpectrumMap, i: usize, j: usize) -> bool {
    let (s, t) = (psi.source().family(), psi.target().family());
    let (lam, mu) = (s.transport(i, j), t.transport(i, j));
    let (start, end) = match s.direction() {
        Direction::Covariant => (i, j),
        Direction::Contravariant => (j, i),
    };
    let gens = psi.target().space(end).generators();
    (0..s.carrier(start).len()).all(|x| {
        let a = psi.comp(end).apply(lam.apply(x));
        let b = mu.apply(psi.comp(start).apply(x));
        gens.iter().all(|g| g.value(a) == g.value(b))
    })
}
