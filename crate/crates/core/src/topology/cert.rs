//! Derivation trees witnessing membership in a generated topology.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::bic::BicExpr;
use super::space::{BSpace, Subbase};
use super::{extensionality_witness, CertError, RFun, Q};

/// A generator reference: by position in the subbase, or, for spaces whose
/// subbase consists of thread functions, any certified thread.
#[derive(Clone, PartialEq, Eq)]
pub enum GenRef {
    Index(usize),
    Thread(Arc<Thread>),
}

impl fmt::Debug for GenRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenRef::Index(k) => write!(f, "{k}"),
            GenRef::Thread(t) => write!(f, "{t:?}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum Certificate {
    Gen(GenRef),
    Const(Q),
    Add(Box<Certificate>, Box<Certificate>),
    Bic(BicExpr, Box<Certificate>),
    /// Re-labels the conclusion of the child as an equal table.
    Eq(Box<Certificate>, Vec<Q>),
    /// Uniform limit: target table and approximants `g_n` for `n = 1..N`
    /// with `|f - g_n| ≤ 2^-n`.
    ULim(Vec<Q>, Vec<(u32, Certificate)>),
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Gen(g) => write!(f, "(gen {g:?})"),
            Certificate::Const(q) => write!(f, "(const {q})"),
            Certificate::Add(a, b) => write!(f, "(add {a:?} {b:?})"),
            Certificate::Bic(e, c) => write!(f, "(bic {e:?} {c:?})"),
            Certificate::Eq(c, t) => write!(f, "(eq {t:?} {c:?})"),
            Certificate::ULim(t, gs) => write!(f, "(ulim {t:?} {gs:?})"),
        }
    }
}

/// A compatible family of certified functions, one per index of a spectrum.
#[derive(Clone, PartialEq, Eq)]
pub struct Thread {
    pub comps: Vec<(RFun, Certificate)>,
}

impl fmt::Debug for Thread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|(r, _)| format!("{r:?}")).collect();
        write!(f, "thread[{}]", parts.join("; "))
    }
}

impl Thread {
    pub fn new(comps: Vec<(RFun, Certificate)>) -> Self {
        Thread { comps }
    }

    pub fn component(&self, i: usize) -> &RFun {
        &self.comps[i].0
    }

    pub fn certificate(&self, i: usize) -> &Certificate {
        &self.comps[i].1
    }

    /// Same values as `other` at every index.
    pub fn same_values(&self, other: &Thread) -> bool {
        self.comps.len() == other.comps.len() && self.comps.iter().zip(&other.comps).all(|(a, b)| a.0 == b.0)
    }
}

/// One step of structural recursion over certificates.
pub trait CertAlgebra {
    type Out;
    type Err;
    fn gen(&mut self, g: &GenRef) -> Result<Self::Out, Self::Err>;
    fn constant(&mut self, q: &Q) -> Result<Self::Out, Self::Err>;
    fn add(&mut self, a: Self::Out, b: Self::Out) -> Result<Self::Out, Self::Err>;
    fn bic(&mut self, phi: &BicExpr, a: Self::Out) -> Result<Self::Out, Self::Err>;
    fn eq(&mut self, a: Self::Out, target: &[Q]) -> Result<Self::Out, Self::Err>;
    fn ulim(&mut self, target: &[Q], approx: Vec<(u32, Self::Out)>) -> Result<Self::Out, Self::Err>;
}

#[allow(clippy::should_implement_trait)]
impl Certificate {
    pub fn gen(k: usize) -> Self {
        Certificate::Gen(GenRef::Index(k))
    }

    pub fn thread(t: Thread) -> Self {
        Certificate::Gen(GenRef::Thread(Arc::new(t)))
    }

    pub fn add(a: Certificate, b: Certificate) -> Self {
        Certificate::Add(Box::new(a), Box::new(b))
    }

    pub fn bic(phi: BicExpr, c: Certificate) -> Self {
        Certificate::Bic(phi, Box::new(c))
    }

    pub fn fold<A: CertAlgebra>(&self, alg: &mut A) -> Result<A::Out, A::Err> {
        match self {
            Certificate::Gen(g) => alg.gen(g),
            Certificate::Const(q) => alg.constant(q),
            Certificate::Add(a, b) => {
                let x = a.fold(alg)?;
                let y = b.fold(alg)?;
                alg.add(x, y)
            }
            Certificate::Bic(phi, c) => {
                let x = c.fold(alg)?;
                alg.bic(phi, x)
            }
            Certificate::Eq(c, t) => {
                let x = c.fold(alg)?;
                alg.eq(x, t)
            }
            Certificate::ULim(t, gs) => {
                let mut out = Vec::with_capacity(gs.len());
                for (n, g) in gs {
                    out.push((*n, g.fold(alg)?));
                }
                alg.ulim(t, out)
            }
        }
    }

    /// Height of the derivation tree (thread generators count as leaves).
    pub fn depth(&self) -> usize {
        struct Depth;
        impl CertAlgebra for Depth {
            type Out = usize;
            type Err = std::convert::Infallible;
            fn gen(&mut self, _: &GenRef) -> Result<usize, Self::Err> {
                Ok(1)
            }
            fn constant(&mut self, _: &Q) -> Result<usize, Self::Err> {
                Ok(1)
            }
            fn add(&mut self, a: usize, b: usize) -> Result<usize, Self::Err> {
                Ok(1 + a.max(b))
            }
            fn bic(&mut self, _: &BicExpr, a: usize) -> Result<usize, Self::Err> {
                Ok(1 + a)
            }
            fn eq(&mut self, a: usize, _: &[Q]) -> Result<usize, Self::Err> {
                Ok(1 + a)
            }
            fn ulim(&mut self, _: &[Q], gs: Vec<(u32, usize)>) -> Result<usize, Self::Err> {
                Ok(1 + gs.into_iter().map(|g| g.1).max().unwrap_or(0))
            }
        }
        match self.fold(&mut Depth) {
            Ok(d) => d,
            Err(e) => match e {},
        }
    }

    /// Whether a uniform-limit node occurs anywhere, threads included.
    pub fn uses_limit(&self) -> bool {
        match self {
            Certificate::Gen(GenRef::Thread(t)) => t.comps.iter().any(|(_, c)| c.uses_limit()),
            Certificate::Gen(GenRef::Index(_)) | Certificate::Const(_) => false,
            Certificate::Add(a, b) => a.uses_limit() || b.uses_limit(),
            Certificate::Bic(_, c) | Certificate::Eq(c, _) => c.uses_limit(),
            Certificate::ULim(..) => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertConfig {
    /// Accept uniform-limit nodes, flagging the conclusion as witnessed.
    pub witnessed: bool,
    /// Largest approximant index allowed in a uniform-limit node.
    pub ulim_depth: u32,
}

impl Default for CertConfig {
    fn default() -> Self {
        CertConfig {
            witnessed: false,
            ulim_depth: 8,
        }
    }
}

/// The function a certificate derives, and whether a limit was involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub values: Vec<Q>,
    pub witnessed: bool,
}

struct Validator<'a> {
    space: &'a BSpace,
    cfg: &'a CertConfig,
}

fn mismatch(point: usize, expected: &Q, got: &Q) -> CertError {
    CertError::ValueMismatch {
        point,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

impl CertAlgebra for Validator<'_> {
    type Out = Conclusion;
    type Err = CertError;

    fn gen(&mut self, g: &GenRef) -> Result<Conclusion, CertError> {
        match g {
            GenRef::Index(k) => {
                let f = self
                    .space
                    .generators()
                    .get(*k)
                    .ok_or(CertError::GeneratorOutOfRange(*k))?;
                Ok(Conclusion {
                    values: f.values().to_vec(),
                    witnessed: false,
                })
            }
            GenRef::Thread(t) => match self.space.subbase() {
                Subbase::Threads(ts) => ts.check_thread(t, self.cfg),
                Subbase::Explicit(_) => Err(CertError::RuleMismatch(
                    "thread generator over an explicit subbase".into(),
                )),
            },
        }
    }

    fn constant(&mut self, q: &Q) -> Result<Conclusion, CertError> {
        Ok(Conclusion {
            values: vec![q.clone(); self.space.carrier().len()],
            witnessed: false,
        })
    }

    fn add(&mut self, a: Conclusion, b: Conclusion) -> Result<Conclusion, CertError> {
        Ok(Conclusion {
            values: a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect(),
            witnessed: a.witnessed || b.witnessed,
        })
    }

    fn bic(&mut self, phi: &BicExpr, a: Conclusion) -> Result<Conclusion, CertError> {
        Ok(Conclusion {
            values: a.values.iter().map(|v| phi.eval(v)).collect(),
            witnessed: a.witnessed,
        })
    }

    fn eq(&mut self, a: Conclusion, target: &[Q]) -> Result<Conclusion, CertError> {
        if target.len() != a.values.len() {
            return Err(CertError::RuleMismatch("equality node of wrong length".into()));
        }
        if let Some(x) = (0..target.len()).find(|&x| target[x] != a.values[x]) {
            return Err(mismatch(x, &target[x], &a.values[x]));
        }
        Ok(Conclusion {
            values: target.to_vec(),
            witnessed: a.witnessed,
        })
    }

    fn ulim(&mut self, target: &[Q], approx: Vec<(u32, Conclusion)>) -> Result<Conclusion, CertError> {
        if !self.cfg.witnessed {
            return Err(CertError::RuleMismatch("uniform limit outside witnessed mode".into()));
        }
        if target.len() != self.space.carrier().len() {
            return Err(CertError::RuleMismatch("limit target of wrong length".into()));
        }
        if let Some((a, b)) = extensionality_witness(self.space.carrier(), target) {
            return Err(CertError::NotExtensional(a, b));
        }
        let top = approx.iter().map(|g| g.0).max().unwrap_or(0);
        if top == 0 {
            return Err(CertError::WitnessGap(1));
        }
        if top > self.cfg.ulim_depth {
            return Err(CertError::RuleMismatch(format!(
                "uniform limit of depth {top} exceeds {}",
                self.cfg.ulim_depth
            )));
        }
        for n in 1..=top {
            if !approx.iter().any(|g| g.0 == n) {
                return Err(CertError::WitnessGap(n));
            }
        }
        for (n, g) in &approx {
            let tol = Q::one() / Q::from_integer(num_bigint::BigInt::from(2u32).pow(*n));
            for x in 0..target.len() {
                if (&target[x] - &g.values[x]).abs() > tol {
                    return Err(mismatch(x, &target[x], &g.values[x]));
                }
            }
        }
        Ok(Conclusion {
            values: target.to_vec(),
            witnessed: true,
        })
    }
}

/// The function derived by `c` over `space`.
pub fn conclude(space: &BSpace, c: &Certificate, cfg: &CertConfig) -> Result<Conclusion, CertError> {
    c.fold(&mut Validator { space, cfg })
}

/// Checks that `c` is a well-formed derivation over `space` concluding `f`.
pub fn validate_certificate(
    space: &BSpace,
    f: &RFun,
    c: &Certificate,
    cfg: &CertConfig,
) -> Result<Conclusion, CertError> {
    if f.carrier() != space.carrier() {
        return Err(CertError::CarrierMismatch);
    }
    let got = conclude(space, c, cfg)?;
    if let Some(x) = (0..f.values().len()).find(|&x| f.values()[x] != got.values[x]) {
        return Err(mismatch(x, &f.values()[x], &got.values[x]));
    }
    Ok(got)
}

/// Certificates for the ring and lattice operations, assembled from
/// addition and unary continuous maps only.
pub mod assemble {
    use super::*;
    use crate::topology::qr;

    pub fn neg(c: Certificate) -> Certificate {
        Certificate::bic(BicExpr::neg(BicExpr::Id), c)
    }

    pub fn sub(a: Certificate, b: Certificate) -> Certificate {
        Certificate::add(a, neg(b))
    }

    fn half(c: Certificate) -> Certificate {
        Certificate::bic(BicExpr::scale(qr(1, 2)), c)
    }

    fn square(c: Certificate) -> Certificate {
        Certificate::bic(BicExpr::square(), c)
    }

    /// `f·g = ((f+g)² − f² − g²)/2`.
    pub fn product(f: Certificate, g: Certificate) -> Certificate {
        let sum_sq = square(Certificate::add(f.clone(), g.clone()));
        half(sub(sub(sum_sq, square(f)), square(g)))
    }

    /// `f∨g = (f+g+|f−g|)/2`.
    pub fn join(f: Certificate, g: Certificate) -> Certificate {
        let spread = Certificate::bic(BicExpr::abs(BicExpr::Id), sub(f.clone(), g.clone()));
        half(Certificate::add(Certificate::add(f, g), spread))
    }

    /// `f∧g = (f+g−|f−g|)/2`.
    pub fn meet(f: Certificate, g: Certificate) -> Certificate {
        let spread = Certificate::bic(BicExpr::abs(BicExpr::Id), sub(f.clone(), g.clone()));
        half(sub(Certificate::add(f, g), spread))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::topology::{q, qr};

    #[test]
    fn constant_accepted_anywhere() {
        let x2 = fixtures::x2_space();
        let five = RFun::constant(x2.carrier(), q(5));
        assert!(validate_certificate(&x2, &five, &Certificate::Const(q(5)), &CertConfig::default()).is_ok());
    }

    #[test]
    fn one_minus_generator() {
        let x2 = fixtures::x2_space();
        let target = RFun::from_ints(x2.carrier(), &[1, 0]).unwrap();
        let c = fixtures::one_minus_gen();
        assert!(validate_certificate(&x2, &target, &c, &CertConfig::default()).is_ok());
        let wrong = RFun::from_ints(x2.carrier(), &[0, 0]).unwrap();
        assert!(matches!(
            validate_certificate(&x2, &wrong, &c, &CertConfig::default()),
            Err(CertError::ValueMismatch { point: 0, .. })
        ));
        assert_eq!(
            conclude(&x2, &Certificate::gen(3), &CertConfig::default()),
            Err(CertError::GeneratorOutOfRange(3))
        );
    }

    #[test]
    fn lattice_assembly_matches_max() {
        let x2 = fixtures::x2_space();
        let f = Certificate::gen(0);
        let g = fixtures::one_minus_gen();
        let cfg = CertConfig::default();
        let join = conclude(&x2, &assemble::join(f.clone(), g.clone()), &cfg).unwrap();
        assert_eq!(join.values, vec![q(1), q(1)]);
        let meet = conclude(&x2, &assemble::meet(f.clone(), g.clone()), &cfg).unwrap();
        assert_eq!(meet.values, vec![q(0), q(0)]);
        let prod = conclude(&x2, &assemble::product(f, g), &cfg).unwrap();
        assert_eq!(prod.values, vec![q(0), q(0)]);
    }

    #[test]
    fn uniform_limits_need_witnessed_mode() {
        let x2 = fixtures::x2_space();
        let target = vec![qr(1, 3), qr(2, 3)];
        // g_n = f - 2^-(n+1), within 2^-n of the target
        let approx = |n: u32| {
            let shift = qr(1, 1i64 << (n + 1));
            Certificate::bic(BicExpr::affine(qr(1, 3), qr(1, 3) - shift), Certificate::gen(0))
        };
        let c = Certificate::ULim(target.clone(), (1..=3).map(|n| (n, approx(n))).collect());
        let f = RFun::new(x2.carrier().clone(), target).unwrap();
        assert!(matches!(
            validate_certificate(&x2, &f, &c, &CertConfig::default()),
            Err(CertError::RuleMismatch(_))
        ));
        let cfg = CertConfig {
            witnessed: true,
            ulim_depth: 8,
        };
        let out = validate_certificate(&x2, &f, &c, &cfg).unwrap();
        assert!(out.witnessed);
        let gap = Certificate::ULim(f.values().to_vec(), vec![(1, approx(1)), (3, approx(3))]);
        assert_eq!(validate_certificate(&x2, &f, &gap, &cfg), Err(CertError::WitnessGap(2)));
        let far = Certificate::ULim(f.values().to_vec(), vec![(1, Certificate::Const(q(0)))]);
        assert!(matches!(
            validate_certificate(&x2, &f, &far, &cfg),
            Err(CertError::ValueMismatch { .. })
        ));
        assert!(c.uses_limit());
        assert!(!fixtures::one_minus_gen().uses_limit());
    }

    #[test]
    fn depth_counts_nodes() {
        assert_eq!(Certificate::gen(0).depth(), 1);
        assert_eq!(fixtures::one_minus_gen().depth(), 2);
    }
}
