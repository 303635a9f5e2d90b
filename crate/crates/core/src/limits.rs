//! Direct limits as quotients of the direct sum and inverse limits as
//! compatible families, with their universal maps.

use thiserror::Error;

use crate::check::Checks;
use crate::family::{Direction, FamilyError, PiSet};
use crate::order::{validate_cofinal, CofinalSubset, OrderError};
use crate::setoid::{are_inverse, count_maps, Setoid, SetoidError, SetoidFn, Uniqueness};
use crate::spectrum::{product_spectrum, sum_map_witness, Spectrum, SpectrumError, SpectrumMap, SumSpace};
use crate::topology::{
    check_morphism, lift_certificate, product_space, projection_witness, BSpace, CertConfig, CertError, Certificate,
    MorphismWitness, RFun, Thread, ThreadRule, ThreadSubbase,
};
use crate::Config;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error("ill-formed cocone: {0}")]
    IllFormedCocone(String),
    #[error("ill-formed cone: {0}")]
    IllFormedCone(String),
    #[error("invalid cofinal subset: {0}")]
    InvalidCofinal(String),
    #[error("index {0} is not above every given class")]
    NotAbove(usize),
}

impl From<FamilyError> for LimitError {
    fn from(e: FamilyError) -> Self {
        LimitError::Spectrum(e.into())
    }
}

impl From<OrderError> for LimitError {
    fn from(e: OrderError) -> Self {
        LimitError::Spectrum(e.into())
    }
}

/// The direct limit of a covariant spectrum: the direct sum with the
/// topology generated by a pool of threads.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectLimit {
    spectrum: Spectrum,
    sum: SumSpace,
}

impl DirectLimit {
    /// With the enumerated thread pool.
    pub fn new(s: &Spectrum, cfg: &Config) -> Result<Self, LimitError> {
        Ok(DirectLimit {
            spectrum: s.clone(),
            sum: SumSpace::enumerated(s, cfg)?,
        })
    }

    pub fn with_pool(s: &Spectrum, pool: Vec<Thread>, cfg: &CertConfig) -> Result<Self, LimitError> {
        Ok(DirectLimit {
            spectrum: s.clone(),
            sum: SumSpace::new(s, pool, cfg)?,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn sum(&self) -> &SumSpace {
        &self.sum
    }

    pub fn carrier(&self) -> &Setoid {
        self.sum.carrier()
    }

    pub fn space(&self) -> &BSpace {
        self.sum.space()
    }

    pub fn threads(&self) -> &ThreadSubbase {
        self.sum.threads()
    }

    /// The point `(i, x)` behind a carrier element.
    pub fn point(&self, p: usize) -> (usize, usize) {
        self.threads().points()[p]
    }

    /// Carrier element of `eql₀(i, x)`.
    pub fn class_of(&self, i: usize, x: usize) -> usize {
        self.spectrum.family().point_index(i, x)
    }

    /// `eql_i : λ₀(i) → Lim→`.
    pub fn eql(&self, i: usize) -> SetoidFn {
        self.spectrum.family().sum_injection(i, self.sum.quotient())
    }

    /// `eql_i` as a morphism from the space at `i`.
    pub fn eql_witness(&self, i: usize) -> MorphismWitness {
        self.sum.injection_witness(&self.spectrum, i)
    }

    /// One representative per class, taken at the top index.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        let top = self.spectrum.index().top_element();
        let fam = self.spectrum.family();
        self.carrier()
            .classes()
            .iter()
            .map(|c| {
                let (i, x) = self.point(c[0]);
                (top, fam.carrier(top).rep(fam.transport(i, top).apply(x)))
            })
            .collect()
    }
}

/// Compatible morphisms into a common apex.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocone {
    pub apex: BSpace,
    pub legs: Vec<MorphismWitness>,
}

impl Cocone {
    /// The limit's own `eql` legs.
    pub fn of_limit(l: &DirectLimit) -> Self {
        Cocone {
            apex: l.space().clone(),
            legs: (0..l.spectrum().len()).map(|i| l.eql_witness(i)).collect(),
        }
    }
}

/// Triangles `ε_j ∘ λ_ij = ε_i` and leg certificates.
pub fn validate_cocone(s: &Spectrum, c: &Cocone, cfg: &CertConfig) -> Result<(), LimitError> {
    if c.legs.len() != s.len() {
        return Err(LimitError::IllFormedCocone("one leg per index is required".into()));
    }
    for (i, w) in c.legs.iter().enumerate() {
        if w.map().dom() != s.space(i).carrier() || w.map().cod() != c.apex.carrier() {
            return Err(LimitError::IllFormedCocone(format!("leg {i} has the wrong shape")));
        }
        if let Some(e) = check_morphism(s.space(i), &c.apex, w, cfg).into_iter().next() {
            return Err(LimitError::IllFormedCocone(format!("leg {i}: {e}")));
        }
    }
    for (i, j) in s.index().order_pairs() {
        let lam = s.family().transport(i, j);
        for x in 0..s.family().carrier(i).len() {
            if !c
                .apex
                .carrier()
                .equal(c.legs[j].map().apply(lam.apply(x)), c.legs[i].map().apply(x))
            {
                return Err(LimitError::IllFormedCocone(format!("triangle ({i}, {j}) fails at {x}")));
            }
        }
    }
    Ok(())
}

/// A universal map with the checks it passed.
#[derive(Debug, Clone)]
pub struct Mediator {
    pub witness: MorphismWitness,
    pub uniqueness: Uniqueness,
    pub checks: Checks,
}

fn uniqueness_check(checks: &mut Checks, u: &Uniqueness) {
    match u {
        Uniqueness::Unique => checks.pass("mediator is unique"),
        Uniqueness::Count(n) => checks.fail("mediator is unique", format!("{n} solutions")),
        Uniqueness::Unbounded { size } => {
            checks.skip("mediator is unique", format!("uniqueness unbounded ({size} maps)"))
        }
    }
}

/// `h(eql₀(i, x)) := ε_i(x)`, certified through the threads `g ∘ ε_i`.
pub fn cocone_mediator(l: &DirectLimit, c: &Cocone, cfg: &Config) -> Result<Mediator, LimitError> {
    let s = l.spectrum();
    validate_cocone(s, c, &cfg.cert)?;
    let points = l.threads().points().to_vec();
    let table: Vec<usize> = points.iter().map(|&(i, x)| c.legs[i].map().apply(x)).collect();
    let h = SetoidFn::new(l.carrier().clone(), c.apex.carrier().clone(), table)
        .map_err(|e| LimitError::IllFormedCocone(format!("not constant on classes: {e}")))?;
    let mut certs = Vec::with_capacity(c.apex.generators().len());
    for (k, g) in c.apex.generators().iter().enumerate() {
        let comps = c
            .legs
            .iter()
            .map(|leg| Ok((g.after(leg.map())?, leg.certs()[k].clone())))
            .collect::<Result<Vec<_>, CertError>>()?;
        certs.push(Certificate::thread(Thread::new(comps)));
    }
    let mut witness = MorphismWitness::new(h.clone(), certs, &c.apex);
    if let Some(ts) = c.apex.thread_subbase().cloned() {
        let legs = c.legs.clone();
        let apex = c.apex.carrier().clone();
        witness = witness.with_rule(ThreadRule::new(move |t| {
            let f = RFun::new(apex.clone(), ts.thread_values(t))?;
            let comps = legs
                .iter()
                .map(|leg| {
                    let gen = Certificate::Gen(crate::topology::GenRef::Thread(std::sync::Arc::new(t.clone())));
                    Ok((f.after(leg.map())?, lift_certificate(leg, &gen)?))
                })
                .collect::<Result<Vec<_>, CertError>>()?;
            Ok(Certificate::thread(Thread::new(comps)))
        }));
    }
    let mut checks = Checks::new();
    let commutes = (0..s.len()).all(|i| {
        l.eql(i)
            .then(&h)
            .map(|f| f.agrees_with(c.legs[i].map()))
            .unwrap_or(false)
    });
    checks.expect("mediator commutes with the legs", commutes, || "h ∘ eql_i ≠ ε_i".into());
    checks.empty(
        "mediator is a morphism",
        &check_morphism(l.space(), &c.apex, &witness, &cfg.cert),
    );
    let uniqueness = count_maps(l.carrier(), c.apex.carrier(), cfg.uniq_bound, |g| {
        points
            .iter()
            .enumerate()
            .all(|(p, &(i, x))| c.apex.carrier().equal(g.apply(p), c.legs[i].map().apply(x)))
    });
    uniqueness_check(&mut checks, &uniqueness);
    Ok(Mediator {
        witness,
        uniqueness,
        checks,
    })
}

/// `Ψ→(eql₀(i, x)) := eql₀(i, Ψ_i(x))`.
pub fn limit_map(psi: &SpectrumMap, ls: &DirectLimit, lt: &DirectLimit) -> Result<SetoidFn, LimitError> {
    Ok(psi.family_map().sigma_map(ls.sum().quotient(), lt.sum().quotient())?)
}

/// `Ψ→` certified through pulled-back threads; needs continuity witnesses.
pub fn limit_map_witness(psi: &SpectrumMap, ls: &DirectLimit, lt: &DirectLimit) -> Result<MorphismWitness, LimitError> {
    Ok(sum_map_witness(psi, ls.sum(), lt.sum())?)
}

/// Squares with `eql`, the morphism property when continuous, and
/// embedding propagation.
pub fn check_limit_map(
    psi: &SpectrumMap,
    ls: &DirectLimit,
    lt: &DirectLimit,
    cfg: &CertConfig,
) -> Result<Checks, LimitError> {
    let m = limit_map(psi, ls, lt)?;
    let mut checks = Checks::new();
    let squares = (0..psi.source().len()).all(|i| {
        let lhs = ls.eql(i).then(&m);
        let rhs = psi.comp(i).then(&lt.eql(i));
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a.agrees_with(&b))
    });
    checks.expect("limit map commutes with eql", squares, || "square fails".into());
    if psi.continuity().is_some() {
        let w = limit_map_witness(psi, ls, lt)?;
        checks.empty(
            "limit map is a morphism",
            &check_morphism(ls.space(), lt.space(), &w, cfg),
        );
    } else {
        checks.skip("limit map is a morphism", "no continuity witnesses");
    }
    if psi.all_embeddings() {
        checks.result("limit map is an embedding", &m.is_embedding());
    }
    Ok(checks)
}

/// An upper bound `i` of the classes' indices and representatives in `λ₀(i)`.
pub fn common_representatives(l: &DirectLimit, classes: &[usize]) -> Result<(usize, Vec<usize>), LimitError> {
    let idx: Vec<usize> = classes.iter().map(|&p| l.point(p).0).collect();
    let i = l.spectrum().index().upper_of(&idx);
    Ok((i, representatives_at(l, classes, i)?))
}

/// Representatives of the classes in `λ₀(k)` for `k` above all their indices.
pub fn representatives_at(l: &DirectLimit, classes: &[usize], k: usize) -> Result<Vec<usize>, LimitError> {
    let s = l.spectrum();
    classes
        .iter()
        .map(|&p| {
            let (i, y) = l.point(p);
            if !s.index().leq(i, k) {
                return Err(LimitError::NotAbove(k));
            }
            Ok(s.family().transport(i, k).apply(y))
        })
        .collect()
}

/// The two maps of a certified isomorphism with the checks performed.
#[derive(Debug, Clone)]
pub struct IsoReport {
    /// From the first space to the second.
    pub forward: MorphismWitness,
    pub backward: MorphismWitness,
    pub first: BSpace,
    pub second: BSpace,
    pub checks: Checks,
}

fn iso_checks(
    checks: &mut Checks,
    first: &BSpace,
    second: &BSpace,
    fwd: &MorphismWitness,
    bwd: &MorphismWitness,
    cfg: &CertConfig,
) {
    checks.result("forward map is extensional", &fwd.map().check_extensional());
    checks.result("backward map is extensional", &bwd.map().check_extensional());
    checks.expect("maps are mutually inverse", are_inverse(fwd.map(), bwd.map()), || {
        "a composite is not the identity".into()
    });
    checks.empty("forward map is a morphism", &check_morphism(first, second, fwd, cfg));
    checks.empty("backward map is a morphism", &check_morphism(second, first, bwd, cfg));
}

fn restrict_thread(t: &Thread, c: &CofinalSubset) -> Thread {
    Thread::new(
        (0..c.sub().len())
            .map(|j| t.comps[c.embed().apply(j)].clone())
            .collect(),
    )
}

fn extend_thread(s: &Spectrum, c: &CofinalSubset, h: &Thread) -> Result<Thread, CertError> {
    (0..s.len())
        .map(|i| {
            let a = c.cof().apply(i);
            let k = c.embed().apply(a);
            let (f, cert) = &h.comps[a];
            Ok((
                f.after(s.family().transport(i, k))?,
                lift_certificate(s.witness(i, k), cert)?,
            ))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Thread::new)
}

/// `Lim→ over J ≃ Lim→ over I` for a cofinal `J`; forward goes from `J`.
pub fn cofinal_direct_iso(s: &Spectrum, c: &CofinalSubset, cfg: &Config) -> Result<IsoReport, LimitError> {
    let mut checks = Checks::new();
    let violations = validate_cofinal(s.index(), c);
    checks.empty("cofinal subset is valid", &violations);
    if let Some(v) = violations.first() {
        return Err(LimitError::InvalidCofinal(format!("{v:?}")));
    }
    let sj = s.restrict(c)?;
    let li = DirectLimit::new(s, cfg)?;
    let lj = DirectLimit::new(&sj, cfg)?;
    let (e, cof) = (c.embed(), c.cof());
    let phi_table = lj
        .threads()
        .points()
        .iter()
        .map(|&(j, y)| li.class_of(e.apply(j), y))
        .collect();
    let phi = SetoidFn::operation(lj.carrier().clone(), li.carrier().clone(), phi_table)?;
    let theta_table = li
        .threads()
        .points()
        .iter()
        .map(|&(i, x)| {
            let a = cof.apply(i);
            lj.class_of(a, s.family().transport(i, e.apply(a)).apply(x))
        })
        .collect();
    let theta = SetoidFn::operation(li.carrier().clone(), lj.carrier().clone(), theta_table)?;
    let phi_certs = li
        .threads()
        .pool()
        .iter()
        .map(|t| Certificate::thread(restrict_thread(t, c)))
        .collect();
    let c2 = c.clone();
    let fwd = MorphismWitness::new(phi, phi_certs, li.space()).with_rule(ThreadRule::new(move |t| {
        Ok(Certificate::thread(restrict_thread(t, &c2)))
    }));
    let theta_certs = lj
        .threads()
        .pool()
        .iter()
        .map(|h| extend_thread(s, c, h).map(Certificate::thread))
        .collect::<Result<Vec<_>, _>>()?;
    let (s2, c2) = (s.clone(), c.clone());
    let bwd = MorphismWitness::new(theta, theta_certs, lj.space()).with_rule(ThreadRule::new(move |h| {
        extend_thread(&s2, &c2, h).map(Certificate::thread)
    }));
    iso_checks(&mut checks, lj.space(), li.space(), &fwd, &bwd, &cfg.cert);
    checks.expect(
        "class counts agree",
        lj.carrier().num_classes() == li.carrier().num_classes(),
        || format!("{} vs {}", lj.carrier().num_classes(), li.carrier().num_classes()),
    );
    Ok(IsoReport {
        forward: fwd,
        backward: bwd,
        first: lj.space().clone(),
        second: li.space().clone(),
        checks,
    })
}

/// The constant spectrum's limit against the space itself: forward is the
/// class-to-value map, backward is `eql` at the top.
pub fn constant_limit_iso(l: &DirectLimit, space: &BSpace, cfg: &Config) -> Result<IsoReport, LimitError> {
    let s = l.spectrum();
    let legs = (0..s.len()).map(|i| MorphismWitness::identity(s.space(i))).collect();
    let cocone = Cocone {
        apex: space.clone(),
        legs,
    };
    let med = cocone_mediator(l, &cocone, cfg)?;
    let top = s.index().top_element();
    let back = l.eql_witness(top);
    let mut checks = med.checks.clone();
    iso_checks(&mut checks, l.space(), space, &med.witness, &back, &cfg.cert);
    Ok(IsoReport {
        forward: med.witness,
        backward: back,
        first: l.space().clone(),
        second: space.clone(),
        checks,
    })
}

/// Result of a product comparison.
#[derive(Debug, Clone)]
pub struct ProductReport {
    pub map: MorphismWitness,
    /// Class counts of the product limit and the two factors.
    pub sizes: (usize, usize, usize),
    pub checks: Checks,
}

fn product_thread(s: &Spectrum, t: &Spectrum, st: &Spectrum, th: &Thread, second: bool) -> Result<Thread, CertError> {
    let m = t.len();
    (0..st.len())
        .map(|a| {
            let (i, j) = (a / m, a % m);
            let (fi, gj) = (s.space(i), t.space(j));
            let pr = projection_witness(fi, gj, st.space(a), second);
            let k = if second { j } else { i };
            let (f, c) = &th.comps[k];
            Ok((f.after(pr.map())?, lift_certificate(&pr, c)?))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Thread::new)
}

/// `θ : Lim→(S×T) → Lim→S × Lim→T`.
pub fn product_limit_bijection(s: &Spectrum, t: &Spectrum, cfg: &Config) -> Result<ProductReport, LimitError> {
    let st = product_spectrum(s, t)?;
    let (ls, lt, lst) = (
        DirectLimit::new(s, cfg)?,
        DirectLimit::new(t, cfg)?,
        DirectLimit::new(&st, cfg)?,
    );
    let target = product_space(ls.space(), lt.space());
    let m = t.len();
    let nt = lt.carrier().len();
    let table = lst
        .threads()
        .points()
        .iter()
        .map(|&(a, z)| {
            let (i, j) = (a / m, a % m);
            let n2 = t.family().carrier(j).len();
            ls.class_of(i, z / n2) * nt + lt.class_of(j, z % n2)
        })
        .collect();
    let theta = SetoidFn::operation(lst.carrier().clone(), target.carrier().clone(), table)?;
    let mut certs = Vec::new();
    for th in ls.threads().pool() {
        certs.push(Certificate::thread(product_thread(s, t, &st, th, false)?));
    }
    for h in lt.threads().pool() {
        certs.push(Certificate::thread(product_thread(s, t, &st, h, true)?));
    }
    let w = MorphismWitness::new(theta.clone(), certs, &target);
    let mut checks = Checks::new();
    checks.result("pairing is extensional", &theta.check_extensional());
    checks.expect(
        "pairing is a bijection",
        theta.is_embedding().is_ok() && theta.is_surjective(),
        || "not injective or not surjective on classes".into(),
    );
    checks.empty(
        "pairing is a morphism",
        &check_morphism(lst.space(), &target, &w, &cfg.cert),
    );
    let sizes = (
        lst.carrier().num_classes(),
        ls.carrier().num_classes(),
        lt.carrier().num_classes(),
    );
    checks.expect("class counts multiply", sizes.0 == sizes.1 * sizes.2, || {
        format!("{sizes:?}")
    });
    Ok(ProductReport { map: w, sizes, checks })
}

/// The inverse limit of a contravariant spectrum: compatible families with
/// the topology generated by `f ∘ π_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseLimit {
    spectrum: Spectrum,
    pi: PiSet,
    space: BSpace,
    offsets: Vec<usize>,
}

impl InverseLimit {
    pub fn new(s: &Spectrum, cfg: &Config) -> Result<Self, LimitError> {
        if s.direction() != Direction::Contravariant {
            return Err(SpectrumError::NotContravariant.into());
        }
        let pi = PiSet::enumerate(s.family(), cfg.enum_bound)?;
        let carrier = pi.setoid().clone();
        let mut gens = Vec::new();
        let mut offsets = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            offsets.push(gens.len());
            for g in s.space(i).generators() {
                let vals = pi.elems().iter().map(|e| g.value(e[i]).clone()).collect();
                gens.push(RFun::new(carrier.clone(), vals)?);
            }
        }
        let space = BSpace::new(carrier, gens)?;
        Ok(InverseLimit {
            spectrum: s.clone(),
            pi,
            space,
            offsets,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn carrier(&self) -> &Setoid {
        self.space.carrier()
    }

    pub fn space(&self) -> &BSpace {
        &self.space
    }

    pub fn elems(&self) -> &[Vec<usize>] {
        self.pi.elems()
    }

    pub fn position(&self, phi: &[usize]) -> Option<usize> {
        self.pi.position(self.spectrum.family(), phi)
    }

    /// Generator index of `f_k ∘ π_i`.
    pub fn gen_index(&self, i: usize, k: usize) -> usize {
        self.offsets[i] + k
    }

    /// `π_i`.
    pub fn pi(&self, i: usize) -> SetoidFn {
        self.pi.projection(self.spectrum.family(), i)
    }

    pub fn pi_witness(&self, i: usize) -> MorphismWitness {
        let certs = (0..self.spectrum.space(i).generators().len())
            .map(|k| Certificate::gen(self.gen_index(i, k)))
            .collect();
        MorphismWitness::new(self.pi(i), certs, self.spectrum.space(i))
    }

    /// Whether `π_⊤` is injective on the carrier.
    pub fn determined_by_top(&self) -> bool {
        self.pi(self.spectrum.index().top_element()).is_embedding().is_ok()
    }
}

/// Compatible morphisms out of a common apex.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone {
    pub apex: BSpace,
    pub legs: Vec<MorphismWitness>,
}

impl Cone {
    pub fn of_limit(l: &InverseLimit) -> Self {
        Cone {
            apex: l.space().clone(),
            legs: (0..l.spectrum().len()).map(|i| l.pi_witness(i)).collect(),
        }
    }
}

/// Triangles `λ_ji ∘ ϖ_j = ϖ_i` and leg certificates.
pub fn validate_cone(s: &Spectrum, c: &Cone, cfg: &CertConfig) -> Result<(), LimitError> {
    if c.legs.len() != s.len() {
        return Err(LimitError::IllFormedCone("one leg per index is required".into()));
    }
    for (i, w) in c.legs.iter().enumerate() {
        if w.map().dom() != c.apex.carrier() || w.map().cod() != s.space(i).carrier() {
            return Err(LimitError::IllFormedCone(format!("leg {i} has the wrong shape")));
        }
        if let Some(e) = check_morphism(&c.apex, s.space(i), w, cfg).into_iter().next() {
            return Err(LimitError::IllFormedCone(format!("leg {i}: {e}")));
        }
    }
    for (i, j) in s.index().order_pairs() {
        let lam = s.family().transport(i, j);
        for y in 0..c.apex.carrier().len() {
            if !s
                .family()
                .carrier(i)
                .equal(lam.apply(c.legs[j].map().apply(y)), c.legs[i].map().apply(y))
            {
                return Err(LimitError::IllFormedCone(format!("triangle ({i}, {j}) fails at {y}")));
            }
        }
    }
    Ok(())
}

/// `h(y) := (ϖ_i(y))_i`.
pub fn cone_mediator(l: &InverseLimit, c: &Cone, cfg: &Config) -> Result<Mediator, LimitError> {
    let s = l.spectrum();
    validate_cone(s, c, &cfg.cert)?;
    let n = c.apex.carrier().len();
    let table = (0..n)
        .map(|y| {
            let phi: Vec<usize> = c.legs.iter().map(|w| w.map().apply(y)).collect();
            l.position(&phi)
                .ok_or_else(|| LimitError::IllFormedCone(format!("image of {y} is not a compatible family")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h = SetoidFn::new(c.apex.carrier().clone(), l.carrier().clone(), table)?;
    let mut certs = Vec::new();
    for (i, leg) in c.legs.iter().enumerate() {
        for k in 0..s.space(i).generators().len() {
            certs.push(leg.certs()[k].clone());
        }
    }
    let witness = MorphismWitness::new(h.clone(), certs, l.space());
    let mut checks = Checks::new();
    let commutes = (0..s.len()).all(|i| {
        h.then(&l.pi(i))
            .map(|f| f.agrees_with(c.legs[i].map()))
            .unwrap_or(false)
    });
    checks.expect("mediator commutes with the legs", commutes, || "π_i ∘ h ≠ ϖ_i".into());
    checks.empty(
        "mediator is a morphism",
        &check_morphism(&c.apex, l.space(), &witness, &cfg.cert),
    );
    let fam = s.family();
    let uniqueness = count_maps(c.apex.carrier(), l.carrier(), cfg.uniq_bound, |g| {
        (0..n).all(|y| {
            let e = &l.elems()[g.apply(y)];
            (0..s.len()).all(|i| fam.carrier(i).equal(e[i], c.legs[i].map().apply(y)))
        })
    });
    uniqueness_check(&mut checks, &uniqueness);
    Ok(Mediator {
        witness,
        uniqueness,
        checks,
    })
}

/// `[Ψ←(Θ)]_i := Ψ_i(Θ_i)`.
pub fn inverse_limit_map(psi: &SpectrumMap, ls: &InverseLimit, lt: &InverseLimit) -> Result<SetoidFn, LimitError> {
    Ok(psi.family_map().pi_map(&ls.pi, &lt.pi)?)
}

pub fn inverse_limit_map_witness(
    psi: &SpectrumMap,
    ls: &InverseLimit,
    lt: &InverseLimit,
) -> Result<MorphismWitness, LimitError> {
    let m = inverse_limit_map(psi, ls, lt)?;
    let mut certs = Vec::new();
    for i in 0..lt.spectrum().len() {
        let w = psi.continuity_at(i)?;
        let pi = ls.pi_witness(i);
        for c in w.certs() {
            certs.push(lift_certificate(&pi, c)?);
        }
    }
    Ok(MorphismWitness::new(m, certs, lt.space()))
}

pub fn check_inverse_limit_map(
    psi: &SpectrumMap,
    ls: &InverseLimit,
    lt: &InverseLimit,
    cfg: &CertConfig,
) -> Result<Checks, LimitError> {
    let m = inverse_limit_map(psi, ls, lt)?;
    let mut checks = Checks::new();
    let squares = (0..psi.source().len()).all(|i| {
        let lhs = m.then(&lt.pi(i));
        let rhs = ls.pi(i).then(psi.comp(i));
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a.agrees_with(&b))
    });
    checks.expect("limit map commutes with projections", squares, || "square fails".into());
    if psi.continuity().is_some() {
        let w = inverse_limit_map_witness(psi, ls, lt)?;
        checks.empty(
            "limit map is a morphism",
            &check_morphism(ls.space(), lt.space(), &w, cfg),
        );
    } else {
        checks.skip("limit map is a morphism", "no continuity witnesses");
    }
    if psi.all_embeddings() {
        checks.result("limit map is an embedding", &m.is_embedding());
    }
    Ok(checks)
}

/// `Lim← over J ≃ Lim← over I`; forward goes from `J`.
pub fn cofinal_inverse_iso(s: &Spectrum, c: &CofinalSubset, cfg: &Config) -> Result<IsoReport, LimitError> {
    let mut checks = Checks::new();
    let violations = validate_cofinal(s.index(), c);
    checks.empty("cofinal subset is valid", &violations);
    if let Some(v) = violations.first() {
        return Err(LimitError::InvalidCofinal(format!("{v:?}")));
    }
    let sj = s.restrict(c)?;
    let li = InverseLimit::new(s, cfg)?;
    let lj = InverseLimit::new(&sj, cfg)?;
    let (e, cof) = (c.embed(), c.cof());
    let fam = s.family();
    let phi_table = lj
        .elems()
        .iter()
        .map(|th| {
            let img: Vec<usize> = (0..s.len())
                .map(|i| {
                    let a = cof.apply(i);
                    fam.transport(i, e.apply(a)).apply(th[a])
                })
                .collect();
            li.position(&img)
                .ok_or(LimitError::IllFormedCone(format!("{img:?} is not compatible")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let phi = SetoidFn::operation(lj.carrier().clone(), li.carrier().clone(), phi_table)?;
    let theta_table = li
        .elems()
        .iter()
        .map(|h| {
            let img: Vec<usize> = (0..sj.len()).map(|j| h[e.apply(j)]).collect();
            lj.position(&img)
                .ok_or(LimitError::IllFormedCone(format!("{img:?} is not compatible")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let theta = SetoidFn::operation(li.carrier().clone(), lj.carrier().clone(), theta_table)?;
    let mut phi_certs = Vec::new();
    for i in 0..s.len() {
        let a = cof.apply(i);
        let w = s.witness(i, e.apply(a));
        let pj = lj.pi_witness(a);
        for cert in w.certs() {
            phi_certs.push(lift_certificate(&pj, cert)?);
        }
    }
    let fwd = MorphismWitness::new(phi, phi_certs, li.space());
    let mut theta_certs = Vec::new();
    for j in 0..sj.len() {
        for k in 0..sj.space(j).generators().len() {
            theta_certs.push(Certificate::gen(li.gen_index(e.apply(j), k)));
        }
    }
    let bwd = MorphismWitness::new(theta, theta_certs, lj.space());
    iso_checks(&mut checks, lj.space(), li.space(), &fwd, &bwd, &cfg.cert);
    Ok(IsoReport {
        forward: fwd,
        backward: bwd,
        first: lj.space().clone(),
        second: li.space().clone(),
        checks,
    })
}

/// `×(Θ, H)_{(i,j)} := (Θ_i, H_j)` into the inverse limit of the product.
pub fn product_inverse_morphism(s: &Spectrum, t: &Spectrum, cfg: &Config) -> Result<ProductReport, LimitError> {
    let st = product_spectrum(s, t)?;
    let (ls, lt, lst) = (
        InverseLimit::new(s, cfg)?,
        InverseLimit::new(t, cfg)?,
        InverseLimit::new(&st, cfg)?,
    );
    let source = product_space(ls.space(), lt.space());
    let m = t.len();
    let nt = lt.carrier().len();
    let table = (0..source.carrier().len())
        .map(|p| {
            let (th, h) = (&ls.elems()[p / nt], &lt.elems()[p % nt]);
            let img: Vec<usize> = (0..st.len())
                .map(|a| {
                    let (i, j) = (a / m, a % m);
                    th[i] * t.family().carrier(j).len() + h[j]
                })
                .collect();
            lst.position(&img)
                .ok_or(LimitError::IllFormedCone(format!("{img:?} is not compatible")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let times = SetoidFn::operation(source.carrier().clone(), lst.carrier().clone(), table)?;
    let n_left = ls.space().generators().len();
    let mut certs = Vec::new();
    for a in 0..st.len() {
        let (i, j) = (a / m, a % m);
        for k in 0..s.space(i).generators().len() {
            certs.push(Certificate::gen(ls.gen_index(i, k)));
        }
        for k in 0..t.space(j).generators().len() {
            certs.push(Certificate::gen(n_left + lt.gen_index(j, k)));
        }
    }
    let w = MorphismWitness::new(times.clone(), certs, lst.space());
    let mut checks = Checks::new();
    checks.result("pairing is extensional", &times.check_extensional());
    checks.empty(
        "pairing is a morphism",
        &check_morphism(&source, lst.space(), &w, &cfg.cert),
    );
    let sizes = (
        lst.carrier().num_classes(),
        ls.carrier().num_classes(),
        lt.carrier().num_classes(),
    );
    Ok(ProductReport { map: w, sizes, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::order::CofinalSubset;

    fn cfg() -> Config {
        Config::default()
    }

    /// Classes of the direct sum by the exhaustive `∃k` test.
    fn brute_classes(s: &Spectrum) -> usize {
        let f = s.family();
        let d = s.index();
        let pts = f.points();
        let related = |(i, x): (usize, usize), (j, y): (usize, usize)| {
            (0..d.len()).any(|k| {
                d.leq(i, k)
                    && d.leq(j, k)
                    && f.carrier(k)
                        .equal(f.transport(i, k).apply(x), f.transport(j, k).apply(y))
            })
        };
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &p in &pts {
            if !reps.iter().any(|&r| related(r, p)) {
                reps.push(p);
            }
        }
        reps.len()
    }

    #[test]
    fn cspec_limit_has_one_class() {
        let s = fixtures::cspec();
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        assert_eq!(l.carrier().num_classes(), 1);
        assert_eq!(brute_classes(&s), 1);
        for i in 0..3 {
            assert!(l.eql(i).check_extensional().is_ok());
        }
    }

    #[test]
    fn constant_limit_has_two_classes() {
        let s = fixtures::constant_x2(Direction::Covariant);
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        assert_eq!(l.carrier().num_classes(), 2);
        let iso = constant_limit_iso(&l, &fixtures::x2_space(), &cfg()).unwrap();
        assert!(iso.checks.all_pass(), "{:?}", iso.checks);
    }

    #[test]
    fn own_legs_give_the_identity() {
        let s = fixtures::cspec();
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        let m = cocone_mediator(&l, &Cocone::of_limit(&l), &cfg()).unwrap();
        assert!(m.witness.map().agrees_with(&SetoidFn::identity(l.carrier())));
        assert!(m.checks.all_pass(), "{:?}", m.checks);
        assert!(m.uniqueness.is_unique());
    }

    #[test]
    fn cocone_into_a_point() {
        let s = fixtures::cspec();
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        let pt = fixtures::point_space();
        let legs = (0..3)
            .map(|i| MorphismWitness::new(SetoidFn::constant(s.family().carrier(i), pt.carrier(), 0), vec![], &pt))
            .collect();
        let m = cocone_mediator(&l, &Cocone { apex: pt, legs }, &cfg()).unwrap();
        assert!(m.checks.all_pass());
        assert!(m.uniqueness.is_unique());
    }

    #[test]
    fn broken_cocone_is_rejected() {
        let s = fixtures::cspec();
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        let x2 = fixtures::x2_space();
        let fam = s.family();
        let leg = |i: usize, table: Vec<usize>| {
            let m = SetoidFn::new(fam.carrier(i).clone(), x2.carrier().clone(), table).unwrap();
            let vals: Vec<i64> = m.table().iter().map(|&y| y as i64).collect();
            let c = if vals.iter().all(|v| *v == 0) {
                Certificate::Const(crate::topology::q(0))
            } else {
                Certificate::gen(0)
            };
            MorphismWitness::new(m, vec![c], &x2)
        };
        // u and v part ways at the top, which is impossible
        let legs = vec![leg(0, vec![0, 1]), leg(1, vec![0, 1]), leg(2, vec![0])];
        let c = Cocone { apex: x2.clone(), legs };
        assert!(matches!(
            cocone_mediator(&l, &c, &cfg()),
            Err(LimitError::IllFormedCocone(_))
        ));
    }

    #[test]
    fn limit_maps_are_functorial() {
        let psi = fixtures::cspec_to_point();
        let s = psi.source().clone();
        let t = psi.target().clone();
        let (ls, lt) = (
            DirectLimit::new(&s, &cfg()).unwrap(),
            DirectLimit::new(&t, &cfg()).unwrap(),
        );
        let m = limit_map(&psi, &ls, &lt).unwrap();
        assert_eq!(lt.carrier().num_classes(), 1);
        assert!(m.is_surjective());
        let id = SpectrumMap::identity(&s);
        assert!(limit_map(&id, &ls, &ls)
            .unwrap()
            .agrees_with(&SetoidFn::identity(ls.carrier())));
        let comp = id.then(&psi).unwrap();
        let lhs = limit_map(&comp, &ls, &lt).unwrap();
        let rhs = limit_map(&id, &ls, &ls).unwrap().then(&m).unwrap();
        assert!(lhs.agrees_with(&rhs));
        assert!(check_limit_map(&psi, &ls, &lt, &CertConfig::default())
            .unwrap()
            .all_pass());
    }

    #[test]
    fn representatives() {
        let s = fixtures::cspec();
        let l = DirectLimit::new(&s, &cfg()).unwrap();
        let (a, b) = (l.class_of(0, 0), l.class_of(0, 1));
        assert_eq!(common_representatives(&l, &[a]).unwrap(), (0, vec![0]));
        assert_eq!(representatives_at(&l, &[a, b], 2).unwrap(), vec![0, 0]);
        let u = l.class_of(1, 0);
        let (i, xs) = common_representatives(&l, &[a, u]).unwrap();
        assert!(i >= 1);
        for (p, x) in [a, u].iter().zip(xs) {
            assert!(l.carrier().equal(*p, l.eql(i).apply(x)));
        }
    }

    #[test]
    fn cofinal_direct() {
        for (s, c) in [
            fixtures::eo_constant(1),
            fixtures::eo_constant(2),
            fixtures::cspec_evens(),
        ] {
            let r = cofinal_direct_iso(&s, &c, &cfg()).unwrap();
            assert!(r.checks.all_pass(), "{:?}", r.checks);
        }
        let s = fixtures::cspec();
        let r = cofinal_direct_iso(&s, &CofinalSubset::whole(s.index()), &cfg()).unwrap();
        assert!(r.forward.map().agrees_with(&SetoidFn::identity(r.first.carrier())));
    }

    #[test]
    fn products_of_direct_limits() {
        let c = fixtures::constant_x2(Direction::Covariant);
        let r = product_limit_bijection(&c, &c, &cfg()).unwrap();
        assert_eq!(r.sizes, (4, 2, 2));
        assert!(r.checks.all_pass(), "{:?}", r.checks);
        let s = fixtures::cspec();
        let r = product_limit_bijection(&s, &s, &cfg()).unwrap();
        assert_eq!(r.sizes, (1, 1, 1));
        assert!(r.checks.all_pass(), "{:?}", r.checks);
    }

    #[test]
    fn inverse_limits() {
        let c = fixtures::constant_x2(Direction::Contravariant);
        let l = InverseLimit::new(&c, &cfg()).unwrap();
        assert_eq!(l.carrier().num_classes(), 2);
        assert!(l.elems().iter().all(|e| e.iter().all(|&x| x == e[0])));
        let r = InverseLimit::new(&fixtures::reversed_collapse(), &cfg()).unwrap();
        assert_eq!(r.elems().len(), 2);
        assert!(r.determined_by_top());
        let m = cone_mediator(&l, &Cone::of_limit(&l), &cfg()).unwrap();
        assert!(m.checks.all_pass());
        assert!(m.witness.map().agrees_with(&SetoidFn::identity(l.carrier())));
        let x2 = fixtures::x2_space();
        let legs = (0..3).map(|_| MorphismWitness::identity(&x2)).collect();
        let m = cone_mediator(&l, &Cone { apex: x2, legs }, &cfg()).unwrap();
        assert!(m.checks.all_pass());
        for y in 0..2 {
            assert_eq!(l.elems()[m.witness.map().apply(y)], vec![y; 3]);
        }
    }

    #[test]
    fn inverse_constructions() {
        let c = fixtures::constant_x2(Direction::Contravariant);
        let (d, cof) = crate::order::even_odd(1);
        assert_eq!(&d, c.index());
        let r = cofinal_inverse_iso(&c, &cof, &cfg()).unwrap();
        assert!(r.checks.all_pass(), "{:?}", r.checks);
        let rc = fixtures::reversed_collapse();
        let r = cofinal_inverse_iso(&rc, &cof, &cfg()).unwrap();
        assert!(r.checks.all_pass(), "{:?}", r.checks);
        let p = product_inverse_morphism(&c, &c, &cfg()).unwrap();
        assert!(p.checks.all_pass(), "{:?}", p.checks);
        assert_eq!(p.sizes, (4, 2, 2));
        assert!(p.map.map().is_embedding().is_ok() && p.map.map().is_surjective());
        let ls = InverseLimit::new(&rc, &cfg()).unwrap();
        let id = SpectrumMap::identity(&rc);
        assert!(inverse_limit_map(&id, &ls, &ls)
            .unwrap()
            .agrees_with(&SetoidFn::identity(ls.carrier())));
        assert!(check_inverse_limit_map(&id, &ls, &ls, &CertConfig::default())
            .unwrap()
            .all_pass());
    }
}
