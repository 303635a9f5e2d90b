//! Bishop spaces given by a subbase, and morphisms between them.

use std::fmt;
use std::sync::Arc;

use super::cert::{conclude, validate_certificate, CertAlgebra, CertConfig, Certificate, Conclusion, GenRef, Thread};
use super::{extensionality_witness, BicExpr, CertError, RFun, Q};
use crate::setoid::{Setoid, SetoidFn, Subset};

/// Compatibility constraint of a thread: `Θ_lo = Θ_hi ∘ map` with
/// `map : λ₀(lo) → λ₀(hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub lo: usize,
    pub hi: usize,
    pub map: SetoidFn,
}

/// A subbase made of thread functions `f_Θ(i, x) := Θ_i(x)` over a carrier
/// whose points are pairs `(i, x)`. Any certified compatible thread may be
/// used as a generator; `pool` fixes an indexable list of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadSubbase {
    carrier: Setoid,
    points: Vec<(usize, usize)>,
    spaces: Vec<BSpace>,
    links: Vec<Link>,
    pool: Vec<Arc<Thread>>,
    pool_fns: Vec<RFun>,
}

impl ThreadSubbase {
    pub fn new(
        carrier: Setoid,
        points: Vec<(usize, usize)>,
        spaces: Vec<BSpace>,
        links: Vec<Link>,
        pool: Vec<Thread>,
        cfg: &CertConfig,
    ) -> Result<Self, CertError> {
        let mut ts = ThreadSubbase {
            carrier,
            points,
            spaces,
            links,
            pool: Vec::new(),
            pool_fns: Vec::new(),
        };
        for t in pool {
            let c = ts.check_thread(&t, cfg)?;
            ts.pool_fns.push(RFun::new(ts.carrier.clone(), c.values)?);
            ts.pool.push(Arc::new(t));
        }
        Ok(ts)
    }

    pub fn carrier(&self) -> &Setoid {
        &self.carrier
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn spaces(&self) -> &[BSpace] {
        &self.spaces
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn pool(&self) -> &[Arc<Thread>] {
        &self.pool
    }

    pub fn pool_fns(&self) -> &[RFun] {
        &self.pool_fns
    }

    /// Compatibility of the components, without looking at certificates.
    pub fn check_compatible(&self, t: &Thread) -> Result<(), CertError> {
        if t.comps.len() != self.spaces.len() {
            return Err(CertError::RuleMismatch(
                "thread has the wrong number of components".into(),
            ));
        }
        for (i, (f, _)) in t.comps.iter().enumerate() {
            if f.carrier() != self.spaces[i].carrier() {
                return Err(CertError::CarrierMismatch);
            }
        }
        for l in &self.links {
            let (lo, hi) = (t.component(l.lo), t.component(l.hi));
            for x in 0..l.map.dom().len() {
                if lo.value(x) != hi.value(l.map.apply(x)) {
                    return Err(CertError::IncompatibleThread { lo: l.lo, hi: l.hi, x });
                }
            }
        }
        Ok(())
    }

    /// `f_Θ` as a table over the carrier; no validation.
    pub fn thread_values(&self, t: &Thread) -> Vec<Q> {
        self.points
            .iter()
            .map(|&(i, x)| t.component(i).value(x).clone())
            .collect()
    }

    /// Validates the thread's certificates and compatibility, then returns
    /// `f_Θ`, checking it respects the carrier's equality.
    pub fn check_thread(&self, t: &Thread, cfg: &CertConfig) -> Result<Conclusion, CertError> {
        self.check_compatible(t)?;
        let mut witnessed = false;
        for (i, (f, c)) in t.comps.iter().enumerate() {
            let got = validate_certificate(&self.spaces[i], f, c, cfg)?;
            witnessed |= got.witnessed;
        }
        let values = self.thread_values(t);
        if let Some((a, b)) = extensionality_witness(&self.carrier, &values) {
            return Err(CertError::NotExtensional(a, b));
        }
        Ok(Conclusion { values, witnessed })
    }

    /// Same construction over a different carrier with the same points.
    pub fn recarried(&self, carrier: Setoid) -> Result<ThreadSubbase, CertError> {
        let pool_fns = self
            .pool_fns
            .iter()
            .map(|f| f.with_carrier(&carrier))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ThreadSubbase {
            carrier,
            points: self.points.clone(),
            spaces: self.spaces.clone(),
            links: self.links.clone(),
            pool: self.pool.clone(),
            pool_fns,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subbase {
    Explicit(Arc<Vec<RFun>>),
    Threads(Arc<ThreadSubbase>),
}

/// A carrier with the topology generated by a subbase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSpace {
    carrier: Setoid,
    subbase: Subbase,
}

impl BSpace {
    pub fn new(carrier: Setoid, gens: Vec<RFun>) -> Result<Self, CertError> {
        for g in &gens {
            if g.carrier() != &carrier {
                return Err(CertError::CarrierMismatch);
            }
        }
        Ok(BSpace {
            carrier,
            subbase: Subbase::Explicit(Arc::new(gens)),
        })
    }

    pub fn from_threads(ts: ThreadSubbase) -> Self {
        BSpace {
            carrier: ts.carrier().clone(),
            subbase: Subbase::Threads(Arc::new(ts)),
        }
    }

    /// The space whose topology is the constants only.
    pub fn trivial(carrier: &Setoid) -> Self {
        BSpace {
            carrier: carrier.clone(),
            subbase: Subbase::Explicit(Arc::new(Vec::new())),
        }
    }

    pub fn carrier(&self) -> &Setoid {
        &self.carrier
    }

    pub fn subbase(&self) -> &Subbase {
        &self.subbase
    }

    /// The indexable generators: the explicit list or the thread pool.
    pub fn generators(&self) -> &[RFun] {
        match &self.subbase {
            Subbase::Explicit(g) => g,
            Subbase::Threads(ts) => ts.pool_fns(),
        }
    }

    pub fn thread_subbase(&self) -> Option<&Arc<ThreadSubbase>> {
        match &self.subbase {
            Subbase::Threads(ts) => Some(ts),
            Subbase::Explicit(_) => None,
        }
    }

    pub fn conclude(&self, c: &Certificate, cfg: &CertConfig) -> Result<Conclusion, CertError> {
        conclude(self, c, cfg)
    }
}

type RuleFn = dyn Fn(&Thread) -> Result<Certificate, CertError> + Send + Sync;

/// A uniform way of certifying `f_Θ ∘ h` for threads outside the pool.
#[derive(Clone)]
pub struct ThreadRule(pub Arc<RuleFn>);

impl fmt::Debug for ThreadRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThreadRule")
    }
}

impl ThreadRule {
    pub fn new(f: impl Fn(&Thread) -> Result<Certificate, CertError> + Send + Sync + 'static) -> Self {
        ThreadRule(Arc::new(f))
    }
}

/// A map together with certificates that every target generator pulls back
/// into the source topology.
#[derive(Debug, Clone)]
pub struct MorphismWitness {
    map: SetoidFn,
    certs: Vec<Certificate>,
    target_threads: Option<Arc<ThreadSubbase>>,
    rule: Option<ThreadRule>,
}

impl PartialEq for MorphismWitness {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.certs == other.certs
    }
}

impl MorphismWitness {
    /// `certs[k]` certifies `g_k ∘ map` where `g_k` is the k-th generator of `dst`.
    pub fn new(map: SetoidFn, certs: Vec<Certificate>, dst: &BSpace) -> Self {
        MorphismWitness {
            map,
            certs,
            target_threads: dst.thread_subbase().cloned(),
            rule: None,
        }
    }

    pub fn with_rule(mut self, rule: ThreadRule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn identity(space: &BSpace) -> Self {
        let certs = (0..space.generators().len()).map(Certificate::gen).collect();
        MorphismWitness::new(SetoidFn::identity(space.carrier()), certs, space)
            .with_rule(ThreadRule::new(|t| Ok(Certificate::thread(t.clone()))))
    }

    pub fn map(&self) -> &SetoidFn {
        &self.map
    }

    pub fn certs(&self) -> &[Certificate] {
        &self.certs
    }

    pub fn rule(&self) -> Option<&ThreadRule> {
        self.rule.as_ref()
    }

    /// Certificate for `f_Θ ∘ map` of an arbitrary thread in the target.
    fn thread_cert(&self, t: &Arc<Thread>) -> Result<Certificate, CertError> {
        if let Some(r) = &self.rule {
            return (r.0)(t);
        }
        let Some(ts) = &self.target_threads else {
            return Err(CertError::RuleMismatch(
                "thread generator over an explicit subbase".into(),
            ));
        };
        if let Some(k) = ts.pool().iter().position(|p| Arc::ptr_eq(p, t) || p.same_values(t)) {
            return self.certs.get(k).cloned().ok_or(CertError::MissingCertificate(k));
        }
        let vals = ts.thread_values(t);
        match ts.pool_fns().iter().position(|f| f.values() == vals.as_slice()) {
            Some(k) => self.certs.get(k).cloned().ok_or(CertError::MissingCertificate(k)),
            None => Err(CertError::MissingCertificate(usize::MAX)),
        }
    }

    /// `other ∘ self` with lifted certificates.
    pub fn then(&self, other: &MorphismWitness) -> Result<MorphismWitness, CertError> {
        let map = self.map.then(&other.map)?;
        let certs = other
            .certs
            .iter()
            .map(|c| lift_certificate(self, c))
            .collect::<Result<Vec<_>, _>>()?;
        let rule = other.rule.clone().map(|r| {
            let first = self.clone();
            ThreadRule::new(move |t| lift_certificate(&first, &(r.0)(t)?))
        });
        Ok(MorphismWitness {
            map,
            certs,
            target_threads: other.target_threads.clone(),
            rule,
        })
    }
}

struct Lift<'a>(&'a MorphismWitness);

impl CertAlgebra for Lift<'_> {
    type Out = Certificate;
    type Err = CertError;

    fn gen(&mut self, g: &GenRef) -> Result<Certificate, CertError> {
        match g {
            GenRef::Index(k) => self.0.certs.get(*k).cloned().ok_or(CertError::MissingCertificate(*k)),
            GenRef::Thread(t) => self.0.thread_cert(t),
        }
    }

    fn constant(&mut self, q: &Q) -> Result<Certificate, CertError> {
        Ok(Certificate::Const(q.clone()))
    }

    fn add(&mut self, a: Certificate, b: Certificate) -> Result<Certificate, CertError> {
        Ok(Certificate::add(a, b))
    }

    fn bic(&mut self, phi: &BicExpr, a: Certificate) -> Result<Certificate, CertError> {
        Ok(Certificate::bic(phi.clone(), a))
    }

    fn eq(&mut self, a: Certificate, target: &[Q]) -> Result<Certificate, CertError> {
        let pulled = self.0.map.table().iter().map(|&y| target[y].clone()).collect();
        Ok(Certificate::Eq(Box::new(a), pulled))
    }

    fn ulim(&mut self, target: &[Q], approx: Vec<(u32, Certificate)>) -> Result<Certificate, CertError> {
        let pulled = self.0.map.table().iter().map(|&y| target[y].clone()).collect();
        Ok(Certificate::ULim(pulled, approx))
    }
}

/// Rewrites a certificate over the target into one over the source by
/// replacing each generator `g` with the witness's certificate for `g ∘ h`.
pub fn lift_certificate(w: &MorphismWitness, c: &Certificate) -> Result<Certificate, CertError> {
    c.fold(&mut Lift(w))
}

/// Every failure of `w` as a morphism `src → dst`; empty iff valid.
pub fn check_morphism(src: &BSpace, dst: &BSpace, w: &MorphismWitness, cfg: &CertConfig) -> Vec<CertError> {
    let h = w.map();
    if h.dom() != src.carrier() || h.cod() != dst.carrier() {
        return vec![CertError::CarrierMismatch];
    }
    if let Err(e) = h.check_extensional() {
        return vec![e.into()];
    }
    let mut out = Vec::new();
    for (k, g) in dst.generators().iter().enumerate() {
        let Some(c) = w.certs().get(k) else {
            out.push(CertError::MissingCertificate(k));
            continue;
        };
        let pulled = match g.after(h) {
            Ok(p) => p,
            Err(e) => {
                out.push(e);
                continue;
            }
        };
        if let Err(e) = validate_certificate(src, &pulled, c, cfg) {
            out.push(CertError::AtGenerator {
                index: k,
                source: Box::new(e),
            });
        }
    }
    out
}

/// The product space; generators are those of `b1` after the first
/// projection followed by those of `b2` after the second.
pub fn product_space(b1: &BSpace, b2: &BSpace) -> BSpace {
    let carrier = b1.carrier().product(b2.carrier());
    let (n1, n2) = (b1.carrier().len(), b2.carrier().len());
    let mut gens = Vec::new();
    for f in b1.generators() {
        let vals = (0..n1 * n2).map(|p| f.value(p / n2).clone()).collect();
        gens.push(RFun::new(carrier.clone(), vals).expect("componentwise equality"));
    }
    for g in b2.generators() {
        let vals = (0..n1 * n2).map(|p| g.value(p % n2).clone()).collect();
        gens.push(RFun::new(carrier.clone(), vals).expect("componentwise equality"));
    }
    BSpace::new(carrier, gens).expect("carriers agree")
}

/// Witness that the projection onto the first (`second = false`) or second
/// factor is a morphism.
pub fn projection_witness(b1: &BSpace, b2: &BSpace, prod: &BSpace, second: bool) -> MorphismWitness {
    let n2 = b2.carrier().len();
    let table: Vec<usize> = (0..prod.carrier().len())
        .map(|p| if second { p % n2 } else { p / n2 })
        .collect();
    let (factor, offset) = if second { (b2, b1.generators().len()) } else { (b1, 0) };
    let map = SetoidFn::new(prod.carrier().clone(), factor.carrier().clone(), table).expect("componentwise");
    let certs = (0..factor.generators().len())
        .map(|k| Certificate::gen(offset + k))
        .collect();
    let w = MorphismWitness::new(map, certs, factor);
    match factor.thread_subbase().cloned() {
        Some(ts) => {
            let prod = prod.clone();
            let offset_fns: Vec<RFun> = prod.generators().to_vec();
            w.with_rule(ThreadRule::new(move |t| {
                // a thread function appears among the product generators only by value
                let vals = ts.thread_values(t);
                let lifted: Vec<Q> = (0..prod.carrier().len())
                    .map(|p| vals[if second { p % n2 } else { p / n2 }].clone())
                    .collect();
                offset_fns
                    .iter()
                    .position(|f| f.values() == lifted.as_slice())
                    .map(Certificate::gen)
                    .ok_or(CertError::MissingCertificate(usize::MAX))
            }))
        }
        None => w,
    }
}

/// The relative space on a subset: generators restricted along the inclusion.
pub fn relative_space(b: &BSpace, a: &Subset) -> Result<BSpace, CertError> {
    if a.ambient() != b.carrier() {
        return Err(CertError::CarrierMismatch);
    }
    let gens = b
        .generators()
        .iter()
        .map(|g| g.after(a.inject()))
        .collect::<Result<Vec<_>, _>>()?;
    BSpace::new(a.carrier().clone(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::topology::q;

    #[test]
    fn identity_and_swap_are_morphisms() {
        let x2 = fixtures::x2_space();
        let cfg = CertConfig::default();
        assert!(check_morphism(&x2, &x2, &MorphismWitness::identity(&x2), &cfg).is_empty());
        let swap = fixtures::x2_swap();
        assert!(check_morphism(&x2, &x2, &swap, &cfg).is_empty());
        let missing = MorphismWitness::new(swap.map().clone(), vec![], &x2);
        assert_eq!(
            check_morphism(&x2, &x2, &missing, &cfg),
            vec![CertError::MissingCertificate(0)]
        );
    }

    #[test]
    fn lifting_along_swap() {
        let x2 = fixtures::x2_space();
        let swap = fixtures::x2_swap();
        assert_eq!(
            lift_certificate(&swap, &Certificate::Const(q(3))).unwrap(),
            Certificate::Const(q(3))
        );
        assert_eq!(lift_certificate(&swap, &Certificate::gen(0)).unwrap(), swap.certs()[0]);
        let c = Certificate::add(Certificate::gen(0), Certificate::Const(q(1)));
        let lifted = lift_certificate(&swap, &c).unwrap();
        assert_eq!(
            lifted,
            Certificate::add(fixtures::one_minus_gen(), Certificate::Const(q(1)))
        );
        let got = x2.conclude(&lifted, &CertConfig::default()).unwrap();
        assert_eq!(got.values, vec![q(2), q(1)]);
    }

    #[test]
    fn swap_twice_is_identity_map() {
        let x2 = fixtures::x2_space();
        let swap = fixtures::x2_swap();
        let twice = swap.then(&swap).unwrap();
        assert!(twice.map().agrees_with(&SetoidFn::identity(x2.carrier())));
        assert!(check_morphism(&x2, &x2, &twice, &CertConfig::default()).is_empty());
    }

    #[test]
    fn product_and_relative() {
        let x2 = fixtures::x2_space();
        let one = BSpace::new(
            Setoid::discrete(&["*"]).unwrap(),
            vec![RFun::from_ints(&Setoid::discrete(&["*"]).unwrap(), &[4]).unwrap()],
        )
        .unwrap();
        let p = product_space(&x2, &one);
        assert_eq!(p.generators()[0].values(), x2.generators()[0].values());
        assert_eq!(p.generators()[1].values(), &[q(4), q(4)]);
        let cfg = CertConfig::default();
        let pr1 = projection_witness(&x2, &one, &p, false);
        let pr2 = projection_witness(&x2, &one, &p, true);
        assert!(check_morphism(&p, &x2, &pr1, &cfg).is_empty());
        assert!(check_morphism(&p, &one, &pr2, &cfg).is_empty());
        let sub = Subset::of_elements(x2.carrier(), &[0]).unwrap();
        let r = relative_space(&x2, &sub).unwrap();
        assert_eq!(r.generators()[0].values(), &[q(0)]);
    }
}
