//! Set-indexed families, direct families over a directed index, exterior
//! unions, direct sums, and dependent functions.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::order::{DirectedIndex, OrderError};
use crate::setoid::{quotient_by_keys, QuotientSetoid, Setoid, SetoidError, SetoidFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("({0}, {1}) is not an order pair of the index")]
    NotOrderPair(usize, usize),
    #[error("({0}, {1}) is not a pair of equal indices")]
    NotEqualPair(usize, usize),
    #[error("transport ({0}, {1}) has the wrong domain or codomain")]
    TransportShape(usize, usize),
    #[error("no transport can be composed for ({0}, {1})")]
    MissingTransport(usize, usize),
    #[error("families live over different indices or directions")]
    IndexMismatch,
    #[error("operation needs a covariant family")]
    NotCovariant,
    #[error("operation needs a contravariant family")]
    NotContravariant,
    #[error("naturality fails on ({i}, {j}) at element {x}")]
    InvalidMap { i: usize, j: usize, x: usize },
    #[error("enumeration exceeded the bound {0}")]
    EnumerationBound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Plain,
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyViolation {
    /// `λ_ii` moves `x`.
    Identity { i: usize, x: usize },
    /// `λ_ik` differs from the composite through `j` at `x`.
    Composition { i: usize, j: usize, k: usize, x: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DependentViolation {
    FlavorMismatch,
    OutOfCarrier(usize),
    NotCompatible(usize, usize),
}

/// A family indexed by a setoid; transports exist for pairs of equal indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    index: Setoid,
    carriers: Vec<Setoid>,
    transports: BTreeMap<(usize, usize), SetoidFn>,
}

fn check_shape(f: &SetoidFn, dom: &Setoid, cod: &Setoid, i: usize, j: usize) -> Result<(), FamilyError> {
    if f.dom() != dom || f.cod() != cod {
        return Err(FamilyError::TransportShape(i, j));
    }
    f.check_extensional()?;
    Ok(())
}

impl Family {
    /// Reflexive transports default to identities; every other pair of
    /// equal indices must be supplied.
    pub fn new(
        index: Setoid,
        carriers: Vec<Setoid>,
        given: Vec<((usize, usize), SetoidFn)>,
    ) -> Result<Self, FamilyError> {
        if carriers.len() != index.len() {
            return Err(FamilyError::IndexMismatch);
        }
        let mut transports = BTreeMap::new();
        for ((i, j), f) in given {
            if !index.equal(i, j) {
                return Err(FamilyError::NotEqualPair(i, j));
            }
            check_shape(&f, &carriers[i], &carriers[j], i, j)?;
            transports.insert((i, j), f);
        }
        for i in 0..index.len() {
            transports
                .entry((i, i))
                .or_insert_with(|| SetoidFn::identity(&carriers[i]));
            for j in 0..index.len() {
                if index.equal(i, j) && !transports.contains_key(&(i, j)) {
                    return Err(FamilyError::MissingTransport(i, j));
                }
            }
        }
        Ok(Family {
            index,
            carriers,
            transports,
        })
    }

    pub fn constant(index: &Setoid, x: &Setoid) -> Self {
        let given = index
            .eq_pairs()
            .into_iter()
            .map(|p| (p, SetoidFn::identity(x)))
            .collect();
        Family::new(index.clone(), vec![x.clone(); index.len()], given).expect("identities fit")
    }

    pub fn index(&self) -> &Setoid {
        &self.index
    }

    pub fn carrier(&self, i: usize) -> &Setoid {
        &self.carriers[i]
    }

    pub fn transport(&self, i: usize, j: usize) -> Option<&SetoidFn> {
        self.transports.get(&(i, j))
    }

    /// Whether `(i, x)` and `(j, y)` are equal in the exterior union.
    pub fn sigma_equal(&self, (i, x): (usize, usize), (j, y): (usize, usize)) -> bool {
        self.index.equal(i, j) && self.carriers[j].equal(self.transports[&(i, j)].apply(x), y)
    }

    pub fn validate_dependent(&self, phi: &[usize]) -> Vec<DependentViolation> {
        let mut out = Vec::new();
        for (&(i, j), t) in &self.transports {
            if !self.carriers[j].equal(phi[j], t.apply(phi[i])) {
                out.push(DependentViolation::NotCompatible(i, j));
            }
        }
        out
    }

    /// The `h`-subfamily over `J`.
    pub fn restrict(&self, h: &SetoidFn) -> Result<Family, FamilyError> {
        if h.cod() != &self.index {
            return Err(FamilyError::IndexMismatch);
        }
        h.check_extensional()?;
        let j_set = h.dom().clone();
        let carriers = (0..j_set.len()).map(|a| self.carriers[h.apply(a)].clone()).collect();
        let given = j_set
            .eq_pairs()
            .into_iter()
            .map(|(a, b)| ((a, b), self.transports[&(h.apply(a), h.apply(b))].clone()))
            .collect();
        Family::new(j_set, carriers, given)
    }
}

pub fn validate_family(f: &Family) -> Vec<FamilyViolation> {
    let mut out = Vec::new();
    let n = f.index.len();
    for i in 0..n {
        let t = &f.transports[&(i, i)];
        for x in 0..f.carriers[i].len() {
            if !f.carriers[i].equal(t.apply(x), x) {
                out.push(FamilyViolation::Identity { i, x });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (Some(ij), Some(jk), Some(ik)) = (f.transport(i, j), f.transport(j, k), f.transport(i, k)) else {
                    continue;
                };
                for x in 0..f.carriers[i].len() {
                    if !f.carriers[k].equal(jk.apply(ij.apply(x)), ik.apply(x)) {
                        out.push(FamilyViolation::Composition { i, j, k, x });
                    }
                }
            }
        }
    }
    out
}

/// A family over a directed index with transports along `≼`.
/// For `i ≼ j` the transport stored at `(i, j)` maps `λ₀(i) → λ₀(j)` when
/// covariant and `λ₀(j) → λ₀(i)` when contravariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectFamily {
    index: DirectedIndex,
    direction: Direction,
    carriers: Vec<Setoid>,
    given: BTreeMap<(usize, usize), SetoidFn>,
    transports: BTreeMap<(usize, usize), SetoidFn>,
}

impl DirectFamily {
    /// Transports are given on some order pairs and composed along paths for
    /// the rest. Path agreement is a law checked by [`validate_direct_family`].
    pub fn new(
        index: DirectedIndex,
        direction: Direction,
        carriers: Vec<Setoid>,
        given: Vec<((usize, usize), SetoidFn)>,
    ) -> Result<Self, FamilyError> {
        let n = index.len();
        if carriers.len() != n {
            return Err(FamilyError::IndexMismatch);
        }
        let mut given_map = BTreeMap::new();
        for ((i, j), f) in given {
            if !index.leq(i, j) {
                return Err(FamilyError::NotOrderPair(i, j));
            }
            let (dom, cod) = match direction {
                Direction::Covariant => (&carriers[i], &carriers[j]),
                Direction::Contravariant => (&carriers[j], &carriers[i]),
            };
            check_shape(&f, dom, cod, i, j)?;
            given_map.insert((i, j), f);
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in given_map.keys() {
            if i != j {
                succ[i].push(j);
            }
        }
        let mut transports = BTreeMap::new();
        for (i, j) in index.order_pairs() {
            let t = if i == j {
                SetoidFn::identity(&carriers[i])
            } else {
                let path = shortest_path(&succ, i, j).ok_or(FamilyError::MissingTransport(i, j))?;
                let steps = path.windows(2).map(|w| &given_map[&(w[0], w[1])]);
                let mut acc: Option<SetoidFn> = None;
                match direction {
                    Direction::Covariant => {
                        for s in steps {
                            acc = Some(match acc {
                                None => s.clone(),
                                Some(a) => a.then(s)?,
                            });
                        }
                    }
                    Direction::Contravariant => {
                        for s in steps.rev() {
                            acc = Some(match acc {
                                None => s.clone(),
                                Some(a) => a.then(s)?,
                            });
                        }
                    }
                }
                acc.expect("path has at least one step")
            };
            transports.insert((i, j), t);
        }
        Ok(DirectFamily {
            index,
            direction,
            carriers,
            given: given_map,
            transports,
        })
    }

    /// The constant family with identity transports.
    pub fn constant(index: &DirectedIndex, direction: Direction, x: &Setoid) -> Self {
        let given = index
            .covering_pairs()
            .into_iter()
            .map(|p| (p, SetoidFn::identity(x)))
            .collect();
        DirectFamily::new(index.clone(), direction, vec![x.clone(); index.len()], given).expect("identities compose")
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn carrier(&self, i: usize) -> &Setoid {
        &self.carriers[i]
    }

    pub fn carriers(&self) -> &[Setoid] {
        &self.carriers
    }

    /// Transports as supplied, before completion.
    pub fn given(&self) -> &BTreeMap<(usize, usize), SetoidFn> {
        &self.given
    }

    /// The transport for the order pair `i ≼ j`.
    pub fn transport(&self, i: usize, j: usize) -> &SetoidFn {
        self.transports
            .get(&(i, j))
            .unwrap_or_else(|| panic!("({i}, {j}) is not an order pair"))
    }

    pub fn transports(&self) -> &BTreeMap<(usize, usize), SetoidFn> {
        &self.transports
    }

    fn require_covariant(&self) -> Result<(), FamilyError> {
        match self.direction {
            Direction::Covariant => Ok(()),
            Direction::Contravariant => Err(FamilyError::NotCovariant),
        }
    }

    /// Flattened `(i, x)` pairs in index-major order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| (0..self.carriers[i].len()).map(move |x| (i, x)))
            .collect()
    }

    pub fn point_index(&self, i: usize, x: usize) -> usize {
        self.carriers[..i].iter().map(Setoid::len).sum::<usize>() + x
    }

    fn point_labels(&self) -> Vec<String> {
        self.points()
            .into_iter()
            .map(|(i, x)| format!("({},{})", self.index.base().label(i), self.carriers[i].label(x)))
            .collect()
    }

    /// `Σ λ₀(i)` with the exterior-union equality.
    pub fn exterior_union(&self) -> Setoid {
        let pts = self.points();
        let base = self.index.base();
        let keys: Vec<(usize, usize)> = pts
            .iter()
            .map(|&(i, x)| {
                let r = base.rep(i);
                // transport into the representative index
                let y = match self.direction {
                    Direction::Covariant => self.transport(i, r).apply(x),
                    Direction::Contravariant => self.transport(r, i).apply(x),
                };
                (r, self.carriers[r].rep(y))
            })
            .collect();
        Setoid::from_keys(self.point_labels(), &keys)
    }

    /// Top-element canonical form of `(i, x)`: its image at `⊤`.
    pub fn canonical_at_top(&self, i: usize, x: usize) -> Result<usize, FamilyError> {
        self.require_covariant()?;
        let top = self.index.top_element();
        Ok(self.carriers[top].rep(self.transport(i, top).apply(x)))
    }

    /// `(i, x) ~ (j, y)` in the direct sum, decided at the top element.
    pub fn direct_sum_equality(&self, (i, x): (usize, usize), (j, y): (usize, usize)) -> Result<bool, FamilyError> {
        Ok(self.canonical_at_top(i, x)? == self.canonical_at_top(j, y)?)
    }

    /// The direct sum as a quotient of the exterior union.
    pub fn direct_sum(&self) -> Result<QuotientSetoid, FamilyError> {
        let keys = self
            .points()
            .into_iter()
            .map(|(i, x)| self.canonical_at_top(i, x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(quotient_by_keys(&self.exterior_union(), &keys))
    }

    /// `e_i : λ₀(i) → Σ`, into the direct-sum setoid.
    pub fn sum_injection(&self, i: usize, sum: &QuotientSetoid) -> SetoidFn {
        let off = self.point_index(i, 0);
        let table = (0..self.carriers[i].len()).map(|x| off + x).collect();
        SetoidFn::operation(self.carriers[i].clone(), sum.setoid().clone(), table).expect("offsets are in range")
    }

    /// The projection `Σ → I`, which need not respect the sum equality.
    pub fn sum_projection(&self, sum: &QuotientSetoid) -> SetoidFn {
        let table = self.points().into_iter().map(|(i, _)| i).collect();
        SetoidFn::operation(sum.setoid().clone(), self.index.base().clone(), table).expect("indices are in range")
    }

    /// The `h`-subfamily over `sub`; `h` must be monotone.
    pub fn restrict(&self, sub: &DirectedIndex, h: &SetoidFn) -> Result<DirectFamily, FamilyError> {
        if h.cod() != self.index.base() || h.dom() != sub.base() {
            return Err(FamilyError::IndexMismatch);
        }
        h.check_extensional()?;
        sub.is_monotone(h, &self.index)?;
        let carriers = (0..sub.len()).map(|a| self.carriers[h.apply(a)].clone()).collect();
        let given = sub
            .order_pairs()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| ((a, b), self.transport(h.apply(a), h.apply(b)).clone()))
            .collect();
        DirectFamily::new(sub.clone(), self.direction, carriers, given)
    }
}

pub(crate) fn shortest_path(succ: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; succ.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(a) = queue.pop_front() {
        if a == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &b in &succ[a] {
            if prev[b] == usize::MAX {
                prev[b] = a;
                queue.push_back(b);
            }
        }
    }
    None
}

pub fn validate_direct_family(f: &DirectFamily) -> Vec<FamilyViolation> {
    let mut out = Vec::new();
    for (&(i, j), t) in f.given() {
        if i == j {
            for x in 0..f.carrier(i).len() {
                if !f.carrier(i).equal(t.apply(x), x) {
                    out.push(FamilyViolation::Identity { i, x });
                }
            }
        }
    }
    let d = f.index();
    let n = d.len();
    for i in 0..n {
        for j in 0..n {
            if !d.leq(i, j) {
                continue;
            }
            for k in 0..n {
                if !d.leq(j, k) {
                    continue;
                }
                let (ij, jk, ik) = (f.transport(i, j), f.transport(j, k), f.transport(i, k));
                match f.direction() {
                    Direction::Covariant => {
                        for x in 0..f.carrier(i).len() {
                            if !f.carrier(k).equal(jk.apply(ij.apply(x)), ik.apply(x)) {
                                out.push(FamilyViolation::Composition { i, j, k, x });
                            }
                        }
                    }
                    Direction::Contravariant => {
                        for x in 0..f.carrier(k).len() {
                            if !f.carrier(i).equal(ij.apply(jk.apply(x)), ik.apply(x)) {
                                out.push(FamilyViolation::Composition { i, j, k, x });
                            }
                        }
                    }
                }
            }
        }
    }
    // given strict transports must agree with the completed ones
    for (&(i, j), t) in f.given() {
        if i != j {
            if let Some(x) = t.disagreement(f.transport(i, j)) {
                out.push(FamilyViolation::Composition { i, j, k: j, x });
            }
        }
    }
    out
}

/// Compatibility failures of a dependent assignment.
pub fn validate_dependent(f: &DirectFamily, phi: &[usize], flavor: Flavor) -> Vec<DependentViolation> {
    let mut out = Vec::new();
    let matches = matches!(
        (flavor, f.direction()),
        (Flavor::Covariant, Direction::Covariant) | (Flavor::Contravariant, Direction::Contravariant)
    );
    if !matches && flavor != Flavor::Plain {
        out.push(DependentViolation::FlavorMismatch);
        return out;
    }
    if phi.len() != f.len() {
        out.push(DependentViolation::OutOfCarrier(phi.len().min(f.len())));
        return out;
    }
    for (i, &x) in phi.iter().enumerate() {
        if x >= f.carrier(i).len() {
            out.push(DependentViolation::OutOfCarrier(i));
            return out;
        }
    }
    let base = f.index().base();
    for (&(i, j), t) in f.transports() {
        if flavor == Flavor::Plain && !base.equal(i, j) {
            continue;
        }
        if !compatible_at(f, t, i, j, phi[i], phi[j]) {
            out.push(DependentViolation::NotCompatible(i, j));
        }
    }
    out
}

fn compatible_at(f: &DirectFamily, t: &SetoidFn, i: usize, j: usize, xi: usize, xj: usize) -> bool {
    match f.direction() {
        Direction::Covariant => f.carrier(j).equal(t.apply(xi), xj),
        Direction::Contravariant => f.carrier(i).equal(t.apply(xj), xi),
    }
}

/// All compatible dependent functions of the family's own flavor, as a
/// setoid with pointwise equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSet {
    setoid: Setoid,
    elems: Vec<Vec<usize>>,
}

impl PiSet {
    pub fn enumerate(f: &DirectFamily, bound: usize) -> Result<PiSet, FamilyError> {
        let n = f.len();
        let mut elems = Vec::new();
        let mut cur = vec![0usize; n];
        let mut visited = 0usize;
        fn go(
            f: &DirectFamily,
            i: usize,
            cur: &mut Vec<usize>,
            elems: &mut Vec<Vec<usize>>,
            visited: &mut usize,
            bound: usize,
        ) -> Result<(), FamilyError> {
            if i == f.len() {
                elems.push(cur.clone());
                return Ok(());
            }
            for x in 0..f.carrier(i).len() {
                *visited += 1;
                if *visited > bound {
                    return Err(FamilyError::EnumerationBound(bound));
                }
                cur[i] = x;
                let ok = (0..=i).all(|j| {
                    let d = f.index();
                    (!d.leq(j, i) || compatible_at(f, f.transport(j, i), j, i, cur[j], cur[i]))
                        && (!d.leq(i, j) || compatible_at(f, f.transport(i, j), i, j, cur[i], cur[j]))
                });
                if ok {
                    go(f, i + 1, cur, elems, visited, bound)?;
                }
            }
            Ok(())
        }
        go(f, 0, &mut cur, &mut elems, &mut visited, bound)?;
        let labels: Vec<String> = elems
            .iter()
            .map(|e| {
                let parts: Vec<&str> = e.iter().enumerate().map(|(i, &x)| f.carrier(i).label(x)).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        let keys: Vec<Vec<usize>> = elems
            .iter()
            .map(|e| e.iter().enumerate().map(|(i, &x)| f.carrier(i).rep(x)).collect())
            .collect();
        Ok(PiSet {
            setoid: Setoid::from_keys(labels, &keys),
            elems,
        })
    }

    pub fn setoid(&self) -> &Setoid {
        &self.setoid
    }

    pub fn elems(&self) -> &[Vec<usize>] {
        &self.elems
    }

    pub fn get(&self, k: usize) -> &[usize] {
        &self.elems[k]
    }

    /// Position of an assignment, up to pointwise equality.
    pub fn position(&self, f: &DirectFamily, phi: &[usize]) -> Option<usize> {
        self.elems.iter().position(|e| {
            e.iter()
                .zip(phi)
                .enumerate()
                .all(|(i, (&a, &b))| f.carrier(i).equal(a, b))
        })
    }

    /// `π_i`.
    pub fn projection(&self, f: &DirectFamily, i: usize) -> SetoidFn {
        let table = self.elems.iter().map(|e| e[i]).collect();
        SetoidFn::operation(self.setoid.clone(), f.carrier(i).clone(), table).expect("in range")
    }
}

/// A natural family of maps between two direct families over the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMap {
    source: DirectFamily,
    target: DirectFamily,
    comps: Vec<SetoidFn>,
}

impl FamilyMap {
    pub fn new(source: DirectFamily, target: DirectFamily, comps: Vec<SetoidFn>) -> Result<Self, FamilyError> {
        if source.index() != target.index() || source.direction() != target.direction() || comps.len() != source.len() {
            return Err(FamilyError::IndexMismatch);
        }
        for (i, c) in comps.iter().enumerate() {
            check_shape(c, source.carrier(i), target.carrier(i), i, i)?;
        }
        for (i, j) in source.index().order_pairs() {
            let (lam, mu) = (source.transport(i, j), target.transport(i, j));
            match source.direction() {
                Direction::Covariant => {
                    for x in 0..source.carrier(i).len() {
                        if !target
                            .carrier(j)
                            .equal(comps[j].apply(lam.apply(x)), mu.apply(comps[i].apply(x)))
                        {
                            return Err(FamilyError::InvalidMap { i, j, x });
                        }
                    }
                }
                Direction::Contravariant => {
                    for x in 0..source.carrier(j).len() {
                        if !target
                            .carrier(i)
                            .equal(comps[i].apply(lam.apply(x)), mu.apply(comps[j].apply(x)))
                        {
                            return Err(FamilyError::InvalidMap { i, j, x });
                        }
                    }
                }
            }
        }
        Ok(FamilyMap { source, target, comps })
    }

    pub fn identity(f: &DirectFamily) -> Self {
        let comps = f.carriers().iter().map(SetoidFn::identity).collect();
        FamilyMap {
            source: f.clone(),
            target: f.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &DirectFamily {
        &self.source
    }

    pub fn target(&self) -> &DirectFamily {
        &self.target
    }

    pub fn comp(&self, i: usize) -> &SetoidFn {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[SetoidFn] {
        &self.comps
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FamilyMap) -> Result<FamilyMap, FamilyError> {
        if self.target != other.source {
            return Err(FamilyError::IndexMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.then(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FamilyMap {
            source: self.source.clone(),
            target: other.target.clone(),
            comps,
        })
    }

    /// `ΣΨ(i, x) := (i, Ψ_i(x))` between direct sums.
    pub fn sigma_map(&self, src: &QuotientSetoid, tgt: &QuotientSetoid) -> Result<SetoidFn, FamilyError> {
        self.source.require_covariant()?;
        let table = self
            .source
            .points()
            .into_iter()
            .map(|(i, x)| self.target.point_index(i, self.comps[i].apply(x)))
            .collect();
        Ok(SetoidFn::new(src.setoid().clone(), tgt.setoid().clone(), table)?)
    }

    /// `ΠΨ(Φ)_i := Ψ_i(Φ_i)`.
    pub fn pi_map(&self, src: &PiSet, tgt: &PiSet) -> Result<SetoidFn, FamilyError> {
        let mut table = Vec::with_capacity(src.elems().len());
        for e in src.elems() {
            let img: Vec<usize> = e.iter().enumerate().map(|(i, &x)| self.comps[i].apply(x)).collect();
            let k = tgt
                .position(&self.target, &img)
                .ok_or(FamilyError::EnumerationBound(tgt.elems().len()))?;
            table.push(k);
        }
        Ok(SetoidFn::new(src.setoid().clone(), tgt.setoid().clone(), table)?)
    }
}

/// Groups points by their canonical form at the top element.
pub fn classes_by_top(f: &DirectFamily) -> Result<HashMap<usize, Vec<(usize, usize)>>, FamilyError> {
    let mut out: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (i, x) in f.points() {
        out.entry(f.canonical_at_top(i, x)?).or_default().push((i, x));
    }
    Ok(out)
}
