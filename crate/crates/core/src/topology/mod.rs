//! Exact real-valued functions on finite setoids, certificate-generated
//! topologies, and Bishop morphisms.

pub mod bic;
pub mod cert;
pub mod exp;
pub mod space;
pub mod synth;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::setoid::{Setoid, SetoidError, SetoidFn};

pub use bic::{bic_modulus, eval_bic, BicExpr, Interval};
pub use cert::{validate_certificate, CertAlgebra, CertConfig, Certificate, Conclusion, GenRef, Thread};
pub use exp::MorCarrier;
pub use space::{
    check_morphism, lift_certificate, product_space, projection_witness, relative_space, BSpace, Link, MorphismWitness,
    Subbase, ThreadRule, ThreadSubbase,
};
pub use synth::{enumerate_morphisms, synthesize_certificate, synthesize_witness};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error("rule mismatch: {0}")]
    RuleMismatch(String),
    #[error("value mismatch at {point}: expected {expected}, got {got}")]
    ValueMismatch {
        point: usize,
        expected: String,
        got: String,
    },
    #[error("missing approximant {0} in uniform limit")]
    WitnessGap(u32),
    #[error("generator {0} is not in the subbase")]
    GeneratorOutOfRange(usize),
    #[error("no certificate for generator {0}")]
    MissingCertificate(usize),
    #[error("thread incompatible on ({lo}, {hi}) at {x}")]
    IncompatibleThread { lo: usize, hi: usize, x: usize },
    #[error("function is not extensional at ({0}, {1})")]
    NotExtensional(usize, usize),
    #[error("carrier mismatch")]
    CarrierMismatch,
    #[error("thread enumeration exceeded the bound {0}")]
    ThreadBoundExceeded(usize),
    #[error("generator {index}: {source}")]
    AtGenerator {
        index: usize,
        #[source]
        source: Box<CertError>,
    },
}

/// A rational-valued extensional function on a finite setoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RFun {
    carrier: Setoid,
    values: Vec<Q>,
}

impl fmt::Debug for RFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| format!("{}=>{}", self.carrier.label(x), v))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl std::hash::Hash for Setoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.labels().hash(state);
        for x in 0..self.len() {
            self.rep(x).hash(state);
        }
    }
}

/// First pair of equal points with different values.
pub(crate) fn extensionality_witness(carrier: &Setoid, values: &[Q]) -> Option<(usize, usize)> {
    (0..carrier.len())
        .map(|x| (carrier.rep(x), x))
        .find(|&(r, x)| values[r] != values[x])
}

impl RFun {
    pub fn new(carrier: Setoid, values: Vec<Q>) -> Result<Self, CertError> {
        if values.len() != carrier.len() {
            return Err(SetoidError::NotTotal {
                expected: carrier.len(),
                got: values.len(),
            }
            .into());
        }
        if let Some((a, b)) = extensionality_witness(&carrier, &values) {
            return Err(CertError::NotExtensional(a, b));
        }
        Ok(RFun { carrier, values })
    }

    pub fn from_ints(carrier: &Setoid, values: &[i64]) -> Result<Self, CertError> {
        Self::new(carrier.clone(), values.iter().map(|&v| q(v)).collect())
    }

    pub fn constant(carrier: &Setoid, c: Q) -> Self {
        RFun {
            carrier: carrier.clone(),
            values: vec![c; carrier.len()],
        }
    }

    pub fn carrier(&self) -> &Setoid {
        &self.carrier
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Q {
        &self.values[x]
    }

    /// `self ∘ h`.
    pub fn after(&self, h: &SetoidFn) -> Result<RFun, CertError> {
        if h.cod() != &self.carrier {
            return Err(CertError::CarrierMismatch);
        }
        Ok(RFun {
            carrier: h.dom().clone(),
            values: h.table().iter().map(|&y| self.values[y].clone()).collect(),
        })
    }

    pub fn add(&self, other: &RFun) -> RFun {
        RFun {
            carrier: self.carrier.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &RFun) -> RFun {
        RFun {
            carrier: self.carrier.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn map(&self, phi: &BicExpr) -> RFun {
        RFun {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|v| phi.eval(v)).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Same values on a different (label-compatible) carrier.
    pub(crate) fn with_carrier(&self, carrier: &Setoid) -> Result<RFun, CertError> {
        RFun::new(carrier.clone(), self.values.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rfun_extensionality() {
        let x = Setoid::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(RFun::from_ints(&x, &[0, 1]), Err(CertError::NotExtensional(0, 1)));
        assert!(RFun::from_ints(&x, &[2, 2]).is_ok());
    }
}
