//! Finite sets of morphisms with the pointwise exponential topology.

use super::cert::{CertConfig, Certificate};
use super::space::{check_morphism, lift_certificate, BSpace, MorphismWitness};
use super::{CertError, RFun};
use crate::setoid::{Setoid, SetoidFn};

/// A finite list of validated morphisms `src → dst`, equal when their maps
/// agree pointwise, carrying the subbase `φ_{x,g}(h) = g(h(x))` indexed
/// by `x · |G₀| + k` for the k-th generator of `dst`.
#[derive(Debug, Clone, PartialEq)]
pub struct MorCarrier {
    src: BSpace,
    dst: BSpace,
    members: Vec<MorphismWitness>,
    space: BSpace,
}

fn member_label(m: &MorphismWitness) -> String {
    let parts: Vec<&str> = m.map().table().iter().map(|&y| m.map().cod().label(y)).collect();
    format!("<{}>", parts.join(","))
}

impl MorCarrier {
    /// Validates every member and drops repeats of the same table.
    pub fn new(src: &BSpace, dst: &BSpace, members: Vec<MorphismWitness>, cfg: &CertConfig) -> Result<Self, CertError> {
        let mut kept: Vec<MorphismWitness> = Vec::new();
        for m in members {
            if let Some(e) = check_morphism(src, dst, &m, cfg).into_iter().next() {
                return Err(e);
            }
            if !kept.iter().any(|k| k.map().table() == m.map().table()) {
                kept.push(m);
            }
        }
        let labels: Vec<String> = kept.iter().map(member_label).collect();
        let keys: Vec<Vec<usize>> = kept
            .iter()
            .map(|m| m.map().table().iter().map(|&y| dst.carrier().rep(y)).collect())
            .collect();
        let carrier = Setoid::from_keys(labels, &keys);
        let n_gens = dst.generators().len();
        let mut gens = Vec::with_capacity(src.carrier().len() * n_gens);
        for x in 0..src.carrier().len() {
            for g in dst.generators() {
                let vals = kept.iter().map(|m| g.value(m.map().apply(x)).clone()).collect();
                gens.push(RFun::new(carrier.clone(), vals)?);
            }
        }
        let space = BSpace::new(carrier, gens)?;
        Ok(MorCarrier {
            src: src.clone(),
            dst: dst.clone(),
            members: kept,
            space,
        })
    }

    pub fn src(&self) -> &BSpace {
        &self.src
    }

    pub fn dst(&self) -> &BSpace {
        &self.dst
    }

    pub fn members(&self) -> &[MorphismWitness] {
        &self.members
    }

    pub fn member(&self, k: usize) -> &MorphismWitness {
        &self.members[k]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The exponential space on the members.
    pub fn space(&self) -> &BSpace {
        &self.space
    }

    pub fn setoid(&self) -> &Setoid {
        self.space.carrier()
    }

    /// Index of the generator `φ_{x, g_k}`.
    pub fn gen_index(&self, x: usize, k: usize) -> usize {
        x * self.dst.generators().len() + k
    }

    /// Position of a map among the members, up to pointwise equality.
    pub fn position(&self, map: &SetoidFn) -> Option<usize> {
        self.members.iter().position(|m| m.map().agrees_with(map))
    }

    /// Evaluation at `x` as a morphism into `dst`.
    pub fn eval_witness(&self, x: usize) -> MorphismWitness {
        let table = self.members.iter().map(|m| m.map().apply(x)).collect();
        let map = SetoidFn::new(self.setoid().clone(), self.dst.carrier().clone(), table)
            .expect("members equal pointwise agree at x");
        let certs = (0..self.dst.generators().len())
            .map(|k| Certificate::gen(self.gen_index(x, k)))
            .collect();
        MorphismWitness::new(map, certs, &self.dst)
    }

    /// Certificate over the exponential space for `h ↦ f(h(x))`, given a
    /// certificate of `f` over `dst`.
    pub fn pointwise_cert(&self, x: usize, f: &Certificate) -> Result<Certificate, CertError> {
        lift_certificate(&self.eval_witness(x), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::topology::{enumerate_morphisms, q};

    #[test]
    fn exponential_over_x2_maps() {
        let x2 = fixtures::x2_space();
        let cfg = CertConfig::default();
        let all = enumerate_morphisms(&x2, &x2, 1000, 6, &cfg).unwrap();
        // constants, identity and swap all pull the generator back into the topology
        assert_eq!(all.len(), 4);
        let mc = MorCarrier::new(&x2, &x2, all, &cfg).unwrap();
        let swap = fixtures::x2_swap();
        let k = mc.position(swap.map()).unwrap();
        let p = x2.carrier().lookup("p").unwrap();
        assert_eq!(mc.space().generators()[mc.gen_index(p, 0)].value(k), &q(1));
    }
}
