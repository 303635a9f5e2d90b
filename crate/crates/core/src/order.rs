//! Directed preorders with upper-bound witnesses and cofinal subsets.

use std::fmt;

use thiserror::Error;

use crate::setoid::{Setoid, SetoidError, SetoidFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error("upper-bound table has wrong shape")]
    UpperShape,
    #[error("no upper bound exists for ({0}, {1})")]
    NoUpperBound(usize, usize),
    #[error("map is not monotone at ({0}, {1})")]
    NotMonotone(usize, usize),
}

/// A single failed law, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderViolation {
    NotExtensional(usize, usize, usize, usize),
    NotReflexive(usize),
    NotTransitive(usize, usize, usize),
    UpperBound(usize, usize),
    UpperNotExtensional(usize, usize),
    NotPoset(usize, usize),
    Delta1(usize, usize),
    Delta2(usize, usize),
    Delta3(usize, usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct DirectedIndex {
    base: Setoid,
    leq: Vec<Vec<bool>>,
    upper: Vec<Vec<usize>>,
    delta: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for DirectedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .order_pairs()
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| format!("{}<={}", self.base.label(i), self.base.label(j)))
            .collect();
        write!(f, "Directed[{}]", pairs.join(", "))
    }
}

impl DirectedIndex {
    /// Builds the index from generating pairs `i ≼ j`. With `closure` the
    /// relation is closed reflexively, transitively and under `=_I`. When
    /// `upper` is `None` the least-indexed common upper bound is chosen.
    pub fn new(
        base: Setoid,
        pairs: &[(usize, usize)],
        closure: bool,
        upper: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, OrderError> {
        let n = base.len();
        let mut leq = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(SetoidError::OutOfRange(a.max(b)).into());
            }
            leq[a][b] = true;
        }
        if closure {
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            // respect =_I before closing transitively
            for a in 0..n {
                for b in 0..n {
                    if base.equal(a, b) {
                        leq[a][b] = true;
                    }
                }
            }
            for k in 0..n {
                for i in 0..n {
                    if leq[i][k] {
                        for j in 0..n {
                            if leq[k][j] {
                                leq[i][j] = true;
                            }
                        }
                    }
                }
            }
        }
        let upper = match upper {
            Some(u) => {
                if u.len() != n || u.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
                    return Err(OrderError::UpperShape);
                }
                u
            }
            None => {
                let mut u = vec![vec![0; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        u[i][j] = (0..n)
                            .find(|&k| leq[i][k] && leq[j][k])
                            .ok_or(OrderError::NoUpperBound(i, j))?;
                    }
                }
                u
            }
        };
        Ok(DirectedIndex {
            base,
            leq,
            upper,
            delta: None,
        })
    }

    pub fn with_delta(mut self, delta: Vec<Vec<usize>>) -> Result<Self, OrderError> {
        let n = self.len();
        if delta.len() != n || delta.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(OrderError::UpperShape);
        }
        self.delta = Some(delta);
        Ok(self)
    }

    /// The chain `0 ≤ 1 ≤ … ≤ n-1` with `w = max`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        let upper = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
        Self::new(Setoid::range(n), &pairs, true, Some(upper)).expect("chain is well formed")
    }

    pub fn singleton() -> Self {
        Self::chain(1)
    }

    pub fn base(&self) -> &Setoid {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn upper(&self, i: usize, j: usize) -> usize {
        self.upper[i][j]
    }

    pub fn upper_table(&self) -> &[Vec<usize>] {
        &self.upper
    }

    pub fn delta(&self) -> Option<&[Vec<usize>]> {
        self.delta.as_deref()
    }

    /// All pairs `(i, j)` with `i ≼ j`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Strict pairs not implied transitively through a third element.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.order_pairs()
            .into_iter()
            .filter(|&(i, j)| {
                i != j
                    && !(0..n).any(|k| {
                        k != i && k != j && self.leq[i][k] && self.leq[k][j] && !(self.leq[k][i] || self.leq[j][k])
                    })
            })
            .collect()
    }

    /// Fold of the upper-bound function over all elements.
    pub fn top_element(&self) -> usize {
        (1..self.len()).fold(0, |acc, i| self.upper[acc][i])
    }

    /// Iterated upper bound of a nonempty list.
    pub fn upper_of(&self, elems: &[usize]) -> usize {
        elems[1..].iter().fold(elems[0], |acc, &i| self.upper[acc][i])
    }

    pub fn is_monotone(&self, h: &SetoidFn, target: &DirectedIndex) -> Result<(), OrderError> {
        for (a, b) in self.order_pairs() {
            if !target.leq(h.apply(a), h.apply(b)) {
                return Err(OrderError::NotMonotone(a, b));
            }
        }
        Ok(())
    }
}

/// Every failed law of a directed index; empty iff valid.
pub fn validate_directed(d: &DirectedIndex) -> Vec<OrderViolation> {
    let n = d.len();
    let b = d.base();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !d.leq(i, j) {
                continue;
            }
            let bad = (0..n)
                .flat_map(|i2| (0..n).map(move |j2| (i2, j2)))
                .find(|&(i2, j2)| b.equal(i, i2) && b.equal(j, j2) && !d.leq(i2, j2));
            if let Some((i2, j2)) = bad {
                out.push(OrderViolation::NotExtensional(i, j, i2, j2));
            }
        }
    }
    for i in 0..n {
        if !d.leq(i, i) {
            out.push(OrderViolation::NotReflexive(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d.leq(i, j) && d.leq(j, k) && !d.leq(i, k) {
                    out.push(OrderViolation::NotTransitive(i, j, k));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let w = d.upper(i, j);
            if !(d.leq(i, w) && d.leq(j, w)) {
                out.push(OrderViolation::UpperBound(i, j));
            }
            if !b.equal(w, d.upper(b.rep(i), b.rep(j))) {
                out.push(OrderViolation::UpperNotExtensional(i, j));
            }
        }
    }
    if let Some(delta) = d.delta() {
        for i in 0..n {
            for j in 0..n {
                if d.leq(i, j) && d.leq(j, i) && !b.equal(i, j) {
                    out.push(OrderViolation::NotPoset(i, j));
                }
                let dij = delta[i][j];
                if !(d.leq(i, dij) && d.leq(j, dij)) {
                    out.push(OrderViolation::Delta1(i, j));
                }
                if d.leq(i, j) && !(b.equal(dij, delta[j][i]) && b.equal(dij, j)) {
                    out.push(OrderViolation::Delta2(i, j));
                }
                for k in 0..n {
                    if !b.equal(delta[dij][k], delta[i][delta[j][k]]) {
                        out.push(OrderViolation::Delta3(i, j, k));
                    }
                }
            }
        }
    }
    out
}

/// A cofinal subset `(J, e, cof)`; `J` inherits its order from `I` along `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalSubset {
    embed: SetoidFn,
    cof: SetoidFn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CofinalViolation {
    NotEmbedding(usize, usize),
    Cof1(usize),
    Cof2(usize, usize),
    Cof3(usize),
    /// The induced upper bound for `(j, j')` fails.
    NotDirected(usize, usize),
}

impl CofinalSubset {
    pub fn new(embed: SetoidFn, cof: SetoidFn) -> Result<Self, OrderError> {
        if embed.cod() != cof.dom() || cof.cod() != embed.dom() {
            return Err(SetoidError::DomainMismatch.into());
        }
        embed.check_extensional()?;
        cof.check_extensional()?;
        Ok(CofinalSubset { embed, cof })
    }

    /// `J = I` with identity maps.
    pub fn whole(d: &DirectedIndex) -> Self {
        let id = SetoidFn::identity(d.base());
        CofinalSubset {
            embed: id.clone(),
            cof: id,
        }
    }

    pub fn sub(&self) -> &Setoid {
        self.embed.dom()
    }

    pub fn embed(&self) -> &SetoidFn {
        &self.embed
    }

    pub fn cof(&self) -> &SetoidFn {
        &self.cof
    }

    /// `(J, ≼_J)` with upper bounds `cof(w(e(j), e(j')))`.
    pub fn restricted_order(&self, d: &DirectedIndex) -> Result<DirectedIndex, OrderError> {
        let m = self.sub().len();
        let e = |j: usize| self.embed.apply(j);
        let mut pairs = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if d.leq(e(a), e(b)) {
                    pairs.push((a, b));
                }
            }
        }
        let upper = (0..m)
            .map(|a| (0..m).map(|b| self.cof.apply(d.upper(e(a), e(b)))).collect())
            .collect();
        DirectedIndex::new(self.sub().clone(), &pairs, false, Some(upper))
    }
}

pub fn validate_cofinal(d: &DirectedIndex, c: &CofinalSubset) -> Vec<CofinalViolation> {
    let mut out = Vec::new();
    let j_set = c.sub();
    let e = c.embed();
    let cof = c.cof();
    if let Err(SetoidError::NotEmbedding(a, b)) = e.is_embedding() {
        out.push(CofinalViolation::NotEmbedding(a, b));
    }
    for j in 0..j_set.len() {
        if !j_set.equal(cof.apply(e.apply(j)), j) {
            out.push(CofinalViolation::Cof1(j));
        }
    }
    for (i, i2) in d.order_pairs() {
        if !d.leq(e.apply(cof.apply(i)), e.apply(cof.apply(i2))) {
            out.push(CofinalViolation::Cof2(i, i2));
        }
    }
    for i in 0..d.len() {
        if !d.leq(i, e.apply(cof.apply(i))) {
            out.push(CofinalViolation::Cof3(i));
        }
    }
    for a in 0..j_set.len() {
        for b in 0..j_set.len() {
            let w = e.apply(cof.apply(d.upper(e.apply(a), e.apply(b))));
            if !(d.leq(e.apply(a), w) && d.leq(e.apply(b), w)) {
                out.push(CofinalViolation::NotDirected(a, b));
            }
        }
    }
    out
}

/// The chain `{0..2m}` with the even numbers as a cofinal subset, odd `n`
/// sent to `n+1` and clamped to `2m`.
pub fn even_odd(m: usize) -> (DirectedIndex, CofinalSubset) {
    let d = DirectedIndex::chain(2 * m + 1);
    let evens: Vec<usize> = (0..=m).map(|k| 2 * k).collect();
    let labels: Vec<String> = evens.iter().map(|n| n.to_string()).collect();
    let j = Setoid::from_index_pairs(labels, &[]).expect("distinct");
    let embed = SetoidFn::new(j.clone(), d.base().clone(), evens).expect("discrete");
    let cof_table = (0..=2 * m)
        .map(|n| {
            let up = if n % 2 == 0 { n } else { n + 1 };
            up.min(2 * m) / 2
        })
        .collect();
    let cof = SetoidFn::new(d.base().clone(), j, cof_table).expect("discrete");
    (d, CofinalSubset::new(embed, cof).expect("shapes agree"))
}

/// Componentwise order on the product; element `(i, j)` sits at `i * |J| + j`.
pub fn product_order(d1: &DirectedIndex, d2: &DirectedIndex) -> DirectedIndex {
    let (n1, n2) = (d1.len(), d2.len());
    let base = d1.base().product(d2.base());
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut pairs = Vec::new();
    let mut upper = vec![vec![0; n1 * n2]; n1 * n2];
    for i in 0..n1 {
        for j in 0..n2 {
            for i2 in 0..n1 {
                for j2 in 0..n2 {
                    if d1.leq(i, i2) && d2.leq(j, j2) {
                        pairs.push((idx(i, j), idx(i2, j2)));
                    }
                    upper[idx(i, j)][idx(i2, j2)] = idx(d1.upper(i, i2), d2.upper(j, j2));
                }
            }
        }
    }
    DirectedIndex::new(base, &pairs, false, Some(upper)).expect("componentwise data is well formed")
}

/// `(K × L, e_K × e_L, cof_K × cof_L)`.
pub fn product_cofinal(
    d1: &DirectedIndex,
    c1: &CofinalSubset,
    d2: &DirectedIndex,
    c2: &CofinalSubset,
) -> CofinalSubset {
    let (n2, m2) = (d2.len(), c2.sub().len());
    let sub = c1.sub().product(c2.sub());
    let ambient = d1.base().product(d2.base());
    let embed_table = (0..c1.sub().len())
        .flat_map(|a| (0..m2).map(move |b| (a, b)))
        .map(|(a, b)| c1.embed().apply(a) * n2 + c2.embed().apply(b))
        .collect();
    let cof_table = (0..d1.len())
        .flat_map(|i| (0..n2).map(move |j| (i, j)))
        .map(|(i, j)| c1.cof().apply(i) * m2 + c2.cof().apply(j))
        .collect();
    CofinalSubset {
        embed: SetoidFn::new(sub.clone(), ambient.clone(), embed_table).expect("componentwise"),
        cof: SetoidFn::new(ambient, sub, cof_table).expect("componentwise"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain3_is_directed_with_top_two() {
        let d = DirectedIndex::chain(3);
        assert!(validate_directed(&d).is_empty());
        assert_eq!(d.top_element(), 2);
        assert_eq!(DirectedIndex::singleton().top_element(), 0);
    }

    #[test]
    fn discrete_pair_fails_upper_bound() {
        let d = DirectedIndex::new(Setoid::range(2), &[], true, Some(vec![vec![0, 0], vec![0, 1]])).unwrap();
        let v = validate_directed(&d);
        assert!(v.contains(&OrderViolation::UpperBound(0, 1)));
        assert!(matches!(
            DirectedIndex::new(Setoid::range(2), &[], true, None),
            Err(OrderError::NoUpperBound(0, 1))
        ));
    }

    #[test]
    fn chain3_delta_max() {
        let d = DirectedIndex::chain(3);
        let delta = d.upper_table().to_vec();
        let d = d.with_delta(delta).unwrap();
        assert!(validate_directed(&d).is_empty());
    }

    #[test]
    fn even_odd_top_and_cofinality() {
        let (d, c) = even_odd(2);
        assert_eq!(d.top_element(), 4);
        assert!(validate_cofinal(&d, &c).is_empty());
        assert_eq!(c.cof().table(), &[0, 1, 1, 2, 2]);
        let (d1, c1) = even_odd(1);
        assert!(validate_cofinal(&d1, &c1).is_empty());
        let bad = SetoidFn::new(d1.base().clone(), c1.sub().clone(), vec![0, 0, 1]).unwrap();
        let c_bad = CofinalSubset::new(c1.embed().clone(), bad).unwrap();
        assert!(validate_cofinal(&d1, &c_bad).contains(&CofinalViolation::Cof3(1)));
        let whole = CofinalSubset::whole(&d);
        assert!(validate_cofinal(&d, &whole).is_empty());
        let j = c.restricted_order(&d).unwrap();
        assert!(validate_directed(&j).is_empty());
    }

    #[test]
    fn products() {
        let c3 = DirectedIndex::chain(3);
        let p = product_order(&c3, &DirectedIndex::singleton());
        assert_eq!(p.len(), 3);
        assert_eq!(p.order_pairs(), c3.order_pairs());
        let sq = product_order(&c3, &c3);
        assert_eq!(sq.len(), 9);
        assert!(validate_directed(&sq).is_empty());
        let (a, b) = (2, 2 * 3);
        assert!(!sq.leq(a, b) && !sq.leq(b, a));
        assert_eq!(sq.upper(a, b), 8);
        let (d, c) = even_odd(1);
        let pc = product_cofinal(&d, &c, &d, &c);
        let pd = product_order(&d, &d);
        assert!(validate_cofinal(&pd, &pc).is_empty());
    }

    #[test]
    fn covering_pairs_of_chain() {
        assert_eq!(DirectedIndex::chain(3).covering_pairs(), vec![(0, 1), (1, 2)]);
    }
}
