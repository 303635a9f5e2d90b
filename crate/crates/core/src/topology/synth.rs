//! Bounded certificate search using generator, constant, addition and
//! continuous-map nodes only.
//!
//! On a finite carrier, a target that is a function of the generators'
//! joint values is `φ ∘ Σ c_k g_k` for a separating linear combination and
//! a piecewise-linear interpolant `φ`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::bic::{interpolant, BicExpr};
use super::cert::{CertConfig, Certificate};
use super::space::{BSpace, MorphismWitness};
use super::{q, CertError, Q};
use crate::setoid::{for_each_extensional_map, SetoidFn};

fn balanced_sum(mut terms: Vec<Certificate>) -> Option<Certificate> {
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(Certificate::add(a, b)),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop()
}

/// A certificate for `target` over `space` of depth at most `max_depth`, if
/// the construction above finds one.
pub fn synthesize_certificate(space: &BSpace, target: &[Q], max_depth: usize) -> Option<Certificate> {
    let n = space.carrier().len();
    if target.len() != n {
        return None;
    }
    if n == 0 || target.iter().all(|v| *v == target[0]) {
        let c = target.first().cloned().unwrap_or_else(Q::zero);
        return (max_depth >= 1).then_some(Certificate::Const(c));
    }
    let gens = space.generators();
    if let Some(k) = gens.iter().position(|g| g.values() == target) {
        return (max_depth >= 1).then_some(Certificate::gen(k));
    }
    // greedily keep generators that refine the partition of points
    let mut chosen: Vec<usize> = Vec::new();
    let mut tuples: Vec<Vec<Q>> = vec![Vec::new(); n];
    let classes = |tuples: &Vec<Vec<Q>>| {
        let mut m: HashMap<&Vec<Q>, ()> = HashMap::new();
        for t in tuples {
            m.insert(t, ());
        }
        m.len()
    };
    for (k, g) in gens.iter().enumerate() {
        let before = classes(&tuples);
        let mut trial = tuples.clone();
        for (x, t) in trial.iter_mut().enumerate() {
            t.push(g.value(x).clone());
        }
        if classes(&trial) > before {
            tuples = trial;
            chosen.push(k);
        }
    }
    // the target must be a function of the joint values
    let mut by_tuple: HashMap<&Vec<Q>, &Q> = HashMap::new();
    for x in 0..n {
        if let Some(v) = by_tuple.insert(&tuples[x], &target[x]) {
            if v != &target[x] {
                return None;
            }
        }
    }
    if chosen.is_empty() {
        return None;
    }
    // coefficients 1, t, t², … separating the distinct tuples
    let distinct: Vec<&Vec<Q>> = {
        let mut d: Vec<&Vec<Q>> = by_tuple.keys().copied().collect();
        d.sort();
        d
    };
    let mut coeffs = vec![Q::one(); chosen.len()];
    let mut separated = false;
    for t in 1..=(distinct.len() * distinct.len() * chosen.len() + 2) as i64 {
        let mut c = Q::one();
        for slot in coeffs.iter_mut() {
            *slot = c.clone();
            c *= q(t);
        }
        let mut seen: HashMap<Q, ()> = HashMap::new();
        let injective = distinct.iter().all(|tup| {
            let v: Q = tup.iter().zip(&coeffs).map(|(a, b)| a * b).sum();
            seen.insert(v, ()).is_none()
        });
        if injective {
            separated = true;
            break;
        }
    }
    if !separated {
        return None;
    }
    let combined: Vec<Q> = tuples
        .iter()
        .map(|tup| tup.iter().zip(&coeffs).map(|(a, b)| a * b).sum())
        .collect();
    let terms: Vec<Certificate> = chosen
        .iter()
        .zip(&coeffs)
        .map(|(&k, c)| {
            if c.is_one() {
                Certificate::gen(k)
            } else {
                Certificate::bic(BicExpr::scale(c.clone()), Certificate::gen(k))
            }
        })
        .collect();
    let h = balanced_sum(terms)?;
    let mut pts: Vec<(Q, Q)> = combined.iter().cloned().zip(target.iter().cloned()).collect();
    pts.sort();
    pts.dedup();
    let cert = if pts.iter().all(|(a, b)| a == b) {
        h
    } else {
        Certificate::bic(interpolant(&pts), h)
    };
    (cert.depth() <= max_depth).then_some(cert)
}

/// Witness for `map : src → dst` with synthesized certificates.
pub fn synthesize_witness(
    src: &BSpace,
    dst: &BSpace,
    map: SetoidFn,
    max_depth: usize,
) -> Result<MorphismWitness, CertError> {
    let mut certs = Vec::with_capacity(dst.generators().len());
    for (k, g) in dst.generators().iter().enumerate() {
        let pulled = g.after(&map)?;
        let c = synthesize_certificate(src, pulled.values(), max_depth).ok_or(CertError::MissingCertificate(k))?;
        certs.push(c);
    }
    Ok(MorphismWitness::new(map, certs, dst))
}

/// Every extensional map `src → dst` (one per pointwise class) for which
/// certificates could be synthesized, each validated.
pub fn enumerate_morphisms(
    src: &BSpace,
    dst: &BSpace,
    bound: u128,
    max_depth: usize,
    cfg: &CertConfig,
) -> Result<Vec<MorphismWitness>, CertError> {
    let mut out = Vec::new();
    let mut err = None;
    for_each_extensional_map(src.carrier(), dst.carrier(), bound, |f| {
        if let Ok(w) = synthesize_witness(src, dst, f.clone(), max_depth) {
            match super::space::check_morphism(src, dst, &w, cfg).into_iter().next() {
                None => out.push(w),
                Some(e) => {
                    err = Some(e);
                    return false;
                }
            }
        }
        true
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setoid::Setoid;
    use crate::topology::{qr, validate_certificate, RFun};

    #[test]
    fn synthesizes_functions_of_generators() {
        let x = Setoid::discrete(&["a", "b", "c", "d"]).unwrap();
        let g1 = RFun::from_ints(&x, &[0, 0, 1, 1]).unwrap();
        let g2 = RFun::from_ints(&x, &[0, 1, 0, 1]).unwrap();
        let space = BSpace::new(x.clone(), vec![g1, g2]).unwrap();
        let target = vec![qr(1, 2), q(3), q(-1), qr(1, 2)];
        let c = synthesize_certificate(&space, &target, 8).unwrap();
        let f = RFun::new(x.clone(), target).unwrap();
        assert!(validate_certificate(&space, &f, &c, &CertConfig::default()).is_ok());
        assert!(!c.uses_limit());
    }

    #[test]
    fn refuses_unseparated_targets() {
        let x = Setoid::discrete(&["a", "b"]).unwrap();
        let space = BSpace::trivial(&x);
        assert!(synthesize_certificate(&space, &[q(0), q(1)], 8).is_none());
        assert_eq!(
            synthesize_certificate(&space, &[q(2), q(2)], 8),
            Some(Certificate::Const(q(2)))
        );
    }
}
