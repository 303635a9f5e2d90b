//! Pre- and post-composition on morphism pools, the spectra they induce, and
//! the duality maps between limits of those spectra and morphism pools of
//! the limits.

use thiserror::Error;

use crate::check::Checks;
use crate::family::{DirectFamily, Direction};
use crate::limits::{DirectLimit, InverseLimit, LimitError};
use crate::setoid::{are_inverse, SetoidError, SetoidFn};
use crate::spectrum::{validate_spectrum, Spectrum, SpectrumError};
use crate::topology::{
    check_morphism, enumerate_morphisms, BSpace, CertError, Certificate, MorCarrier, MorphismWitness, RFun, Thread,
};
use crate::Config;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Cert(#[from] CertError),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error("pool is not closed: {0}")]
    PoolNotClosed(String),
    #[error("pool count does not match the index")]
    PoolCount,
    #[error("shape needs a {0:?} source spectrum")]
    WrongDirection(Direction),
}

impl From<crate::family::FamilyError> for DualityError {
    fn from(e: crate::family::FamilyError) -> Self {
        DualityError::Spectrum(e.into())
    }
}

/// Every certified morphism `src → dst` found by bounded search.
pub fn mor_pool(src: &BSpace, dst: &BSpace, cfg: &Config) -> Result<MorCarrier, DualityError> {
    let ms = enumerate_morphisms(src, dst, cfg.map_bound, cfg.cert_depth, &cfg.cert)?;
    Ok(MorCarrier::new(src, dst, ms, &cfg.cert)?)
}

fn position(pool: &MorCarrier, map: &SetoidFn, what: impl FnOnce() -> String) -> Result<usize, DualityError> {
    pool.position(map).ok_or_else(|| DualityError::PoolNotClosed(what()))
}

/// `λ⁺(φ) := φ ∘ λ` from `Mor(ℋ, ℱ)` to `Mor(𝒢, ℱ)` for `λ : 𝒢 → ℋ`, as a
/// morphism of exponential spaces.
pub fn plus(lam: &MorphismWitness, dom: &MorCarrier, cod: &MorCarrier) -> Result<MorphismWitness, DualityError> {
    let table = dom
        .members()
        .iter()
        .enumerate()
        .map(|(k, phi)| {
            let m = lam.map().then(phi.map())?;
            position(cod, &m, || format!("precomposite of member {k}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = SetoidFn::new(dom.setoid().clone(), cod.setoid().clone(), table)?;
    let nf = cod.dst().generators().len();
    let mut certs = Vec::new();
    for y in 0..cod.src().carrier().len() {
        for k in 0..nf {
            certs.push(Certificate::gen(dom.gen_index(lam.map().apply(y), k)));
        }
    }
    Ok(MorphismWitness::new(map, certs, cod.space()))
}

/// `μ⁻(θ) := μ ∘ θ` from `Mor(ℱ, ℋ)` to `Mor(ℱ, 𝒢)` for `μ : ℋ → 𝒢`.
pub fn minus(mu: &MorphismWitness, dom: &MorCarrier, cod: &MorCarrier) -> Result<MorphismWitness, DualityError> {
    let table = dom
        .members()
        .iter()
        .enumerate()
        .map(|(k, th)| {
            let m = th.map().then(mu.map())?;
            position(cod, &m, || format!("postcomposite of member {k}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = SetoidFn::new(dom.setoid().clone(), cod.setoid().clone(), table)?;
    let mut certs = Vec::new();
    for x in 0..cod.src().carrier().len() {
        for c in mu.certs() {
            certs.push(dom.pointwise_cert(x, c)?);
        }
    }
    Ok(MorphismWitness::new(map, certs, cod.space()))
}

/// The four ways a spectrum and a fixed space induce a spectrum of
/// morphism pools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Covariant source, pools `Mor(ℱ_i, ℱ)`, contravariant by precomposition.
    IntoFixed,
    /// Covariant source, pools `Mor(ℱ, ℱ_i)`, covariant by postcomposition.
    FromFixed,
    /// Contravariant source, pools `Mor(ℱ_i, ℱ)`, covariant by precomposition.
    IntoFixedDual,
    /// Contravariant source, pools `Mor(ℱ, ℱ_i)`, contravariant by postcomposition.
    FromFixedDual,
}

impl Shape {
    pub fn source_direction(self) -> Direction {
        match self {
            Shape::IntoFixed | Shape::FromFixed => Direction::Covariant,
            Shape::IntoFixedDual | Shape::FromFixedDual => Direction::Contravariant,
        }
    }

    pub fn induced_direction(self) -> Direction {
        match self {
            Shape::FromFixed | Shape::IntoFixedDual => Direction::Covariant,
            Shape::IntoFixed | Shape::FromFixedDual => Direction::Contravariant,
        }
    }

    /// Whether the pools are morphisms into the fixed space.
    pub fn into_fixed(self) -> bool {
        matches!(self, Shape::IntoFixed | Shape::IntoFixedDual)
    }
}

/// Per-index pools of every certified morphism for the given shape.
pub fn shape_pools(s: &Spectrum, fixed: &BSpace, shape: Shape, cfg: &Config) -> Result<Vec<MorCarrier>, DualityError> {
    s.spaces()
        .iter()
        .map(|sp| {
            if shape.into_fixed() {
                mor_pool(sp, fixed, cfg)
            } else {
                mor_pool(fixed, sp, cfg)
            }
        })
        .collect()
}

/// A spectrum of morphism pools over the source's index.
#[derive(Debug, Clone)]
pub struct InducedSpectrum {
    pub shape: Shape,
    pub spectrum: Spectrum,
    pub pools: Vec<MorCarrier>,
}

/// Builds the induced spectrum; every pool must be closed under the
/// induced transports.
pub fn induce_spectrum(s: &Spectrum, shape: Shape, pools: Vec<MorCarrier>) -> Result<InducedSpectrum, DualityError> {
    if s.direction() != shape.source_direction() {
        return Err(DualityError::WrongDirection(shape.source_direction()));
    }
    if pools.len() != s.len() {
        return Err(DualityError::PoolCount);
    }
    let mut given = Vec::new();
    for (i, j) in s.index().order_pairs() {
        if i == j {
            continue;
        }
        let w = s.witness(i, j);
        let t = match shape {
            Shape::IntoFixed => plus(w, &pools[j], &pools[i]),
            Shape::FromFixed => minus(w, &pools[i], &pools[j]),
            Shape::IntoFixedDual => plus(w, &pools[i], &pools[j]),
            Shape::FromFixedDual => minus(w, &pools[j], &pools[i]),
        }
        .map_err(|e| match e {
            DualityError::PoolNotClosed(m) => DualityError::PoolNotClosed(format!("edge ({i}, {j}): {m}")),
            e => e,
        })?;
        given.push(((i, j), t));
    }
    let carriers = pools.iter().map(|p| p.setoid().clone()).collect();
    let transports = given.iter().map(|(k, w)| (*k, w.map().clone())).collect();
    let family = DirectFamily::new(s.index().clone(), shape.induced_direction(), carriers, transports)?;
    let spaces = pools.iter().map(|p| p.space().clone()).collect();
    let spectrum = Spectrum::new(family, spaces, given)?;
    Ok(InducedSpectrum { shape, spectrum, pools })
}

/// Laws of an induced spectrum: family laws, certified transports and
/// composites.
pub fn check_induced(ind: &InducedSpectrum, cfg: &Config) -> Checks {
    let mut checks = Checks::new();
    checks.empty(
        "induced spectrum is valid",
        &validate_spectrum(&ind.spectrum, &cfg.cert),
    );
    checks
}

/// Two maps between a limit of morphism pools and a pool of morphisms of
/// limits, with the checks performed.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub forward: MorphismWitness,
    pub backward: Option<MorphismWitness>,
    pub first: BSpace,
    pub second: BSpace,
    /// Class counts of the two sides.
    pub sizes: (usize, usize),
    pub checks: Checks,
}

fn two_sided(
    checks: &mut Checks,
    first: &BSpace,
    second: &BSpace,
    fwd: &MorphismWitness,
    bwd: &MorphismWitness,
    cfg: &Config,
) {
    checks.result("forward map is extensional", &fwd.map().check_extensional());
    checks.result("backward map is extensional", &bwd.map().check_extensional());
    checks.expect("maps are mutually inverse", are_inverse(fwd.map(), bwd.map()), || {
        "a composite is not the identity".into()
    });
    checks.empty(
        "forward map is a morphism",
        &check_morphism(first, second, fwd, &cfg.cert),
    );
    checks.empty(
        "backward map is a morphism",
        &check_morphism(second, first, bwd, &cfg.cert),
    );
}

/// `Lim←(ℱ_i → ℱ) ≃ Mor(Lim→ℱ_i, ℱ)` with `θ(H)(eql₀(i, x)) := H_i(x)` and
/// `φ(h)_i := h ∘ eql_i`.
pub fn duality_direct_to_inverse(
    s: &Spectrum,
    fixed: &BSpace,
    pools: Vec<MorCarrier>,
    cfg: &Config,
) -> Result<DualityReport, DualityError> {
    let ind = induce_spectrum(s, Shape::IntoFixed, pools)?;
    let mut checks = check_induced(&ind, cfg);
    let lim_pools = InverseLimit::new(&ind.spectrum, cfg)?;
    let ls = DirectLimit::new(s, cfg)?;
    let right = mor_pool(ls.space(), fixed, cfg)?;
    let pools = &ind.pools;
    let nf = fixed.generators().len();
    // θ
    let points = ls.threads().points().to_vec();
    let theta_table = lim_pools
        .elems()
        .iter()
        .enumerate()
        .map(|(n, h)| {
            let table: Vec<usize> = points
                .iter()
                .map(|&(i, x)| pools[i].member(h[i]).map().apply(x))
                .collect();
            let m = SetoidFn::operation(ls.carrier().clone(), fixed.carrier().clone(), table)?;
            position(&right, &m, || format!("image of element {n}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let theta = SetoidFn::operation(lim_pools.carrier().clone(), right.setoid().clone(), theta_table)?;
    let mut theta_certs = Vec::new();
    for &(i, x) in &points {
        for k in 0..nf {
            theta_certs.push(Certificate::gen(lim_pools.gen_index(i, pools[i].gen_index(x, k))));
        }
    }
    let fwd = MorphismWitness::new(theta, theta_certs, right.space());
    // φ
    let phi_table = right
        .members()
        .iter()
        .enumerate()
        .map(|(n, h)| {
            let comps = (0..s.len())
                .map(|i| {
                    let m = ls.eql(i).then(h.map())?;
                    position(&pools[i], &m, || format!("restriction of member {n} to index {i}"))
                })
                .collect::<Result<Vec<_>, DualityError>>()?;
            lim_pools
                .position(&comps)
                .ok_or_else(|| DualityError::PoolNotClosed(format!("member {n} gives an incompatible family")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let phi = SetoidFn::operation(right.setoid().clone(), lim_pools.carrier().clone(), phi_table)?;
    let mut phi_certs = Vec::new();
    for i in 0..s.len() {
        for x in 0..s.family().carrier(i).len() {
            for k in 0..nf {
                phi_certs.push(Certificate::gen(right.gen_index(ls.eql(i).apply(x), k)));
            }
        }
    }
    let bwd = MorphismWitness::new(phi, phi_certs, lim_pools.space());
    two_sided(&mut checks, lim_pools.space(), right.space(), &fwd, &bwd, cfg);
    checks.result("forward map is an embedding", &fwd.map().is_embedding());
    Ok(DualityReport {
        sizes: (lim_pools.carrier().num_classes(), right.setoid().num_classes()),
        forward: fwd,
        backward: Some(bwd),
        first: lim_pools.space().clone(),
        second: right.space().clone(),
        checks,
    })
}

/// `Lim←(ℱ → ℱ_i) ≃ Mor(ℱ, Lim←ℱ_i)` with `e(H)(x)_i := H_i(x)` and
/// `φ(μ)_i := π_i ∘ μ`.
pub fn duality_inverse_hom(
    s: &Spectrum,
    fixed: &BSpace,
    pools: Vec<MorCarrier>,
    cfg: &Config,
) -> Result<DualityReport, DualityError> {
    let ind = induce_spectrum(s, Shape::FromFixedDual, pools)?;
    let mut checks = check_induced(&ind, cfg);
    let lim_pools = InverseLimit::new(&ind.spectrum, cfg)?;
    let ls = InverseLimit::new(s, cfg)?;
    let right = mor_pool(fixed, ls.space(), cfg)?;
    let pools = &ind.pools;
    let nx = fixed.carrier().len();
    let e_table = lim_pools
        .elems()
        .iter()
        .enumerate()
        .map(|(n, h)| {
            let table = (0..nx)
                .map(|x| {
                    let img: Vec<usize> = (0..s.len()).map(|i| pools[i].member(h[i]).map().apply(x)).collect();
                    ls.position(&img)
                        .ok_or_else(|| DualityError::PoolNotClosed(format!("element {n} at {x} is incompatible")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = SetoidFn::operation(fixed.carrier().clone(), ls.carrier().clone(), table)?;
            position(&right, &m, || format!("image of element {n}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let e = SetoidFn::operation(lim_pools.carrier().clone(), right.setoid().clone(), e_table)?;
    let mut e_certs = Vec::new();
    for x in 0..nx {
        for i in 0..s.len() {
            for k in 0..s.space(i).generators().len() {
                e_certs.push(Certificate::gen(lim_pools.gen_index(i, pools[i].gen_index(x, k))));
            }
        }
    }
    let fwd = MorphismWitness::new(e, e_certs, right.space());
    let phi_table = right
        .members()
        .iter()
        .enumerate()
        .map(|(n, mu)| {
            let comps = (0..s.len())
                .map(|i| {
                    let m = mu.map().then(&ls.pi(i))?;
                    position(&pools[i], &m, || format!("component {i} of member {n}"))
                })
                .collect::<Result<Vec<_>, DualityError>>()?;
            lim_pools
                .position(&comps)
                .ok_or_else(|| DualityError::PoolNotClosed(format!("member {n} gives an incompatible family")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let phi = SetoidFn::operation(right.setoid().clone(), lim_pools.carrier().clone(), phi_table)?;
    let mut phi_certs = Vec::new();
    for i in 0..s.len() {
        for x in 0..nx {
            for k in 0..s.space(i).generators().len() {
                phi_certs.push(Certificate::gen(right.gen_index(x, ls.gen_index(i, k))));
            }
        }
    }
    let bwd = MorphismWitness::new(phi, phi_certs, lim_pools.space());
    two_sided(&mut checks, lim_pools.space(), right.space(), &fwd, &bwd, cfg);
    Ok(DualityReport {
        sizes: (lim_pools.carrier().num_classes(), right.setoid().num_classes()),
        forward: fwd,
        backward: Some(bwd),
        first: lim_pools.space().clone(),
        second: right.space().clone(),
        checks,
    })
}

/// The first index and element lying on no compatible family, if any.
pub fn representative_gap(l: &InverseLimit) -> Option<(usize, usize)> {
    let s = l.spectrum();
    for j in 0..s.len() {
        for y in 0..s.family().carrier(j).len() {
            if !l.elems().iter().any(|e| s.family().carrier(j).equal(e[j], y)) {
                return Some((j, y));
            }
        }
    }
    None
}

/// `Lim→ Mor(ℱ_i, ℱ) → Mor(Lim←ℱ_i, ℱ)` sending `eql₀(i, φ)` to `φ ∘ π_i`,
/// for a contravariant source.
pub fn converse_dual_inverse(
    s: &Spectrum,
    fixed: &BSpace,
    pools: Vec<MorCarrier>,
    cfg: &Config,
) -> Result<DualityReport, DualityError> {
    let ind = induce_spectrum(s, Shape::IntoFixedDual, pools)?;
    let mut checks = check_induced(&ind, cfg);
    let lim_pools = DirectLimit::new(&ind.spectrum, cfg)?;
    let ls = InverseLimit::new(s, cfg)?;
    let right = mor_pool(ls.space(), fixed, cfg)?;
    let pools = ind.pools.clone();
    let table = lim_pools
        .threads()
        .points()
        .iter()
        .map(|&(i, k)| {
            let m = ls.pi(i).then(pools[i].member(k).map())?;
            position(&right, &m, || format!("image of member {k} at index {i}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let hat = SetoidFn::operation(lim_pools.carrier().clone(), right.setoid().clone(), table)?;
    let nf = fixed.generators().len();
    let mut certs = Vec::new();
    for th in ls.elems() {
        for k in 0..nf {
            let comps = (0..s.len())
                .map(|i| {
                    let g = pools[i].gen_index(th[i], k);
                    (pools[i].space().generators()[g].clone(), Certificate::gen(g))
                })
                .collect();
            certs.push(Certificate::thread(Thread::new(comps)));
        }
    }
    let fwd = MorphismWitness::new(hat.clone(), certs, right.space());
    checks.result("map is extensional", &hat.check_extensional());
    checks.empty(
        "map is a morphism",
        &check_morphism(lim_pools.space(), right.space(), &fwd, &cfg.cert),
    );
    match representative_gap(&ls) {
        None => {
            checks.pass("representative hypothesis holds");
            checks.result("map is an embedding", &hat.is_embedding());
        }
        Some((j, y)) => {
            let why = format!("hypothesis fails at ({j}, {y})");
            checks.skip("representative hypothesis holds", why.clone());
            checks.skip("map is an embedding", why);
        }
    }
    Ok(DualityReport {
        sizes: (lim_pools.carrier().num_classes(), right.setoid().num_classes()),
        forward: fwd,
        backward: None,
        first: lim_pools.space().clone(),
        second: right.space().clone(),
        checks,
    })
}

/// `Lim→ Mor(ℱ, ℱ_i) → Mor(ℱ, Lim→ℱ_i)` sending `eql₀(i, θ)` to `eql_i ∘ θ`.
pub fn converse_dual_direct(
    s: &Spectrum,
    fixed: &BSpace,
    pools: Vec<MorCarrier>,
    cfg: &Config,
) -> Result<DualityReport, DualityError> {
    let ind = induce_spectrum(s, Shape::FromFixed, pools)?;
    let mut checks = check_induced(&ind, cfg);
    let lim_pools = DirectLimit::new(&ind.spectrum, cfg)?;
    let ls = DirectLimit::new(s, cfg)?;
    let right = mor_pool(fixed, ls.space(), cfg)?;
    let pools = ind.pools.clone();
    let table = lim_pools
        .threads()
        .points()
        .iter()
        .map(|&(i, k)| {
            let m = pools[i].member(k).map().then(&ls.eql(i))?;
            position(&right, &m, || format!("image of member {k} at index {i}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let hat = SetoidFn::operation(lim_pools.carrier().clone(), right.setoid().clone(), table)?;
    let thread_at = move |pools: &[MorCarrier], x: usize, t: &Thread| -> Result<Thread, CertError> {
        let comps = pools
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let cert = p.pointwise_cert(x, t.certificate(i))?;
                let vals = p
                    .members()
                    .iter()
                    .map(|m| t.component(i).value(m.map().apply(x)).clone())
                    .collect();
                Ok((RFun::new(p.setoid().clone(), vals)?, cert))
            })
            .collect::<Result<Vec<_>, CertError>>()?;
        Ok(Thread::new(comps))
    };
    let mut certs = Vec::new();
    for x in 0..fixed.carrier().len() {
        for t in ls.threads().pool() {
            certs.push(Certificate::thread(thread_at(&pools, x, t)?));
        }
    }
    let fwd = MorphismWitness::new(hat.clone(), certs, right.space());
    checks.result("map is extensional", &hat.check_extensional());
    checks.empty(
        "map is a morphism",
        &check_morphism(lim_pools.space(), right.space(), &fwd, &cfg.cert),
    );
    Ok(DualityReport {
        sizes: (lim_pools.carrier().num_classes(), right.setoid().num_classes()),
        forward: fwd,
        backward: None,
        first: lim_pools.space().clone(),
        second: right.space().clone(),
        checks,
    })
}
