//! Finite setoids: explicitly enumerated carriers with a decidable equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetoidError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("carrier is empty but the empty flag was not set")]
    EmptyCarrier,
    #[error("map table has {got} entries, domain has {expected}")]
    NotTotal { expected: usize, got: usize },
    #[error("not extensional: {0} and {1} are equal but their images differ")]
    NotExtensional(usize, usize),
    #[error("domain/codomain mismatch")]
    DomainMismatch,
    #[error("relation is not {property}: witness {witness:?}")]
    NotEquivalence {
        property: &'static str,
        witness: Vec<usize>,
    },
    #[error("map is not constant on the class of {0} and {1}")]
    NotClassConstant(usize, usize),
    #[error("not an embedding: {0} and {1} have equal images")]
    NotEmbedding(usize, usize),
    #[error("search space of {size} maps exceeds the bound {bound}")]
    SearchBound { size: u128, bound: u128 },
}

#[derive(Debug, PartialEq, Eq)]
struct SetoidData {
    labels: Vec<String>,
    // `rep[x]` is the least element equal to `x`.
    rep: Vec<usize>,
}

/// A finite carrier with an equivalence relation. Cloning is cheap.
#[derive(Clone)]
pub struct Setoid(Arc<SetoidData>);

impl PartialEq for Setoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Setoid {}

impl fmt::Debug for Setoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<Vec<&str>> = self
            .classes()
            .iter()
            .map(|c| c.iter().map(|&x| self.label(x)).collect())
            .collect();
        write!(f, "Setoid{classes:?}")
    }
}

fn union_find_reps(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, b) in pairs {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        // keep the smaller index as root so roots are class minima
        if ra < rb {
            parent[rb] = ra;
        } else if rb < ra {
            parent[ra] = rb;
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

impl Setoid {
    /// Builds a setoid whose equality is the equivalence closure of `pairs`.
    /// An empty carrier is rejected; use [`Setoid::empty`] for that.
    pub fn new<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self, SetoidError> {
        if labels.is_empty() {
            return Err(SetoidError::EmptyCarrier);
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(SetoidError::DuplicateElement(l.clone()));
            }
        }
        let look = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| SetoidError::UnknownElement(s.as_ref().to_string()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((look(a)?, look(b)?));
        }
        Self::from_index_pairs(labels, &idx_pairs)
    }

    /// Like [`Setoid::new`] with pairs given by element index.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, SetoidError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(SetoidError::DuplicateElement(l.clone()));
            }
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(SetoidError::OutOfRange(a.max(b)));
            }
        }
        let rep = union_find_reps(n, pairs.iter().copied());
        Ok(Setoid(Arc::new(SetoidData { labels, rep })))
    }

    pub fn discrete<S: AsRef<str>>(labels: &[S]) -> Result<Self, SetoidError> {
        Self::new::<S>(labels, &[])
    }

    /// The explicitly empty setoid.
    pub fn empty() -> Self {
        Setoid(Arc::new(SetoidData {
            labels: Vec::new(),
            rep: Vec::new(),
        }))
    }

    /// Discrete setoid on `0..n` labelled by the numbers themselves.
    pub fn range(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_index_pairs(labels, &[]).expect("numeric labels are distinct")
    }

    /// Same elements, equality given by a representative table.
    /// `key[x]` may be any value; elements with equal keys become equal.
    pub(crate) fn from_keys<K: std::hash::Hash + Eq>(labels: Vec<String>, keys: &[K]) -> Self {
        debug_assert_eq!(labels.len(), keys.len());
        let mut first: HashMap<&K, usize> = HashMap::new();
        let rep = keys
            .iter()
            .enumerate()
            .map(|(i, k)| *first.entry(k).or_insert(i))
            .collect();
        Setoid(Arc::new(SetoidData { labels, rep }))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.0.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn lookup(&self, label: &str) -> Result<usize, SetoidError> {
        self.index_of(label)
            .ok_or_else(|| SetoidError::UnknownElement(label.to_string()))
    }

    pub fn equal(&self, a: usize, b: usize) -> bool {
        self.0.rep[a] == self.0.rep[b]
    }

    /// Least element of the class of `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.0.rep[x]
    }

    /// Class representatives in increasing order.
    pub fn reps(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0.rep[x] == x).collect()
    }

    pub fn num_classes(&self) -> usize {
        (0..self.len()).filter(|&x| self.0.rep[x] == x).count()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.len() {
            let r = self.0.rep[x];
            let s = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[s].push(x);
        }
        out
    }

    /// All related pairs, closure included.
    pub fn eq_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.equal(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Non-reflexive generating pairs (each element paired with its class minimum).
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&x| self.0.rep[x] != x)
            .map(|x| (self.0.rep[x], x))
            .collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.len()
    }

    /// Cartesian product with componentwise equality; element `(x, y)` sits at
    /// `x * other.len() + y`.
    pub fn product(&self, other: &Setoid) -> Setoid {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut keys = Vec::with_capacity(self.len() * other.len());
        for x in 0..self.len() {
            for y in 0..other.len() {
                labels.push(format!("({},{})", self.label(x), other.label(y)));
                keys.push((self.rep(x), other.rep(y)));
            }
        }
        Setoid::from_keys(labels, &keys)
    }
}

/// Exhaustively checks that `rel` is an equivalence relation on `0..n`.
pub fn check_equivalence(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<(), SetoidError> {
    for a in 0..n {
        if !rel(a, a) {
            return Err(SetoidError::NotEquivalence {
                property: "reflexive",
                witness: vec![a],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if rel(a, b) && !rel(b, a) {
                return Err(SetoidError::NotEquivalence {
                    property: "symmetric",
                    witness: vec![a, b],
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !rel(a, b) {
                continue;
            }
            for c in 0..n {
                if rel(b, c) && !rel(a, c) {
                    return Err(SetoidError::NotEquivalence {
                        property: "transitive",
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    Ok(())
}

/// A total table between setoids. Construct with [`SetoidFn::new`] to get an
/// extensional function, or with [`SetoidFn::operation`] for a raw table.
#[derive(Clone, PartialEq, Eq)]
pub struct SetoidFn {
    dom: Setoid,
    cod: Setoid,
    table: Vec<usize>,
}

impl fmt::Debug for SetoidFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}=>{}", self.dom.label(x), self.cod.label(y)))
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}

impl SetoidFn {
    pub fn new(dom: Setoid, cod: Setoid, table: Vec<usize>) -> Result<Self, SetoidError> {
        let f = Self::operation(dom, cod, table)?;
        f.check_extensional()?;
        Ok(f)
    }

    /// A total table that need not respect equality.
    pub fn operation(dom: Setoid, cod: Setoid, table: Vec<usize>) -> Result<Self, SetoidError> {
        if table.len() != dom.len() {
            return Err(SetoidError::NotTotal {
                expected: dom.len(),
                got: table.len(),
            });
        }
        if let Some(&y) = table.iter().find(|&&y| y >= cod.len()) {
            return Err(SetoidError::OutOfRange(y));
        }
        Ok(SetoidFn { dom, cod, table })
    }

    /// Builds a function from `(dom label, cod label)` pairs.
    pub fn from_labels<S: AsRef<str>>(dom: Setoid, cod: Setoid, pairs: &[(S, S)]) -> Result<Self, SetoidError> {
        let mut table = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            table[dom.lookup(a.as_ref())?] = cod.lookup(b.as_ref())?;
        }
        if let Some(x) = table.iter().position(|&y| y == usize::MAX) {
            return Err(SetoidError::NotTotal {
                expected: dom.len(),
                got: x,
            });
        }
        Self::new(dom, cod, table)
    }

    pub fn identity(x: &Setoid) -> Self {
        SetoidFn {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    pub fn constant(dom: &Setoid, cod: &Setoid, y: usize) -> Self {
        SetoidFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table: vec![y; dom.len()],
        }
    }

    pub fn dom(&self) -> &Setoid {
        &self.dom
    }

    pub fn cod(&self) -> &Setoid {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `Ok` iff equal inputs have equal outputs; otherwise the offending pair.
    pub fn check_extensional(&self) -> Result<(), SetoidError> {
        let n = self.dom.len();
        for a in 0..n {
            let r = self.dom.rep(a);
            if !self.cod.equal(self.table[a], self.table[r]) {
                return Err(SetoidError::NotExtensional(r, a));
            }
        }
        Ok(())
    }

    /// `Ok` iff equal outputs come only from equal inputs.
    pub fn is_embedding(&self) -> Result<(), SetoidError> {
        let n = self.dom.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.cod.equal(self.table[a], self.table[b]) && !self.dom.equal(a, b) {
                    return Err(SetoidError::NotEmbedding(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &y in &self.table {
            hit[self.cod.rep(y)] = true;
        }
        self.cod.reps().into_iter().all(|r| hit[r])
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &SetoidFn) -> Result<SetoidFn, SetoidError> {
        if self.cod != other.dom {
            return Err(SetoidError::DomainMismatch);
        }
        Ok(SetoidFn {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            table: self.table.iter().map(|&y| other.table[y]).collect(),
        })
    }

    /// Pointwise equality up to the codomain equality.
    pub fn agrees_with(&self, other: &SetoidFn) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.table.iter().zip(&other.table).all(|(&a, &b)| self.cod.equal(a, b))
    }

    /// First point where the two functions differ.
    pub fn disagreement(&self, other: &SetoidFn) -> Option<usize> {
        (0..self.table.len()).find(|&x| !self.cod.equal(self.table[x], other.table[x]))
    }

    pub fn retarget(&self, cod: &Setoid) -> Result<SetoidFn, SetoidError> {
        Self::operation(self.dom.clone(), cod.clone(), self.table.clone())
    }
}

/// `compose(f, g)` is `g ∘ f`.
pub fn compose(f: &SetoidFn, g: &SetoidFn) -> Result<SetoidFn, SetoidError> {
    f.then(g)
}

/// `f` and `g` are mutually inverse.
pub fn are_inverse(f: &SetoidFn, g: &SetoidFn) -> bool {
    matches!((f.then(g), g.then(f)), (Ok(fg), Ok(gf))
        if fg.agrees_with(&SetoidFn::identity(f.dom()))
            && gf.agrees_with(&SetoidFn::identity(g.dom())))
}

/// A subset `(A, i_A)` of an ambient setoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    inject: SetoidFn,
}

impl Subset {
    pub fn new(inject: SetoidFn) -> Result<Self, SetoidError> {
        inject.check_extensional()?;
        inject.is_embedding()?;
        Ok(Subset { inject })
    }

    /// The subsetoid on the listed elements with the inherited equality.
    pub fn of_elements(ambient: &Setoid, elems: &[usize]) -> Result<Self, SetoidError> {
        if let Some(&x) = elems.iter().find(|&&x| x >= ambient.len()) {
            return Err(SetoidError::OutOfRange(x));
        }
        let labels = elems.iter().map(|&x| ambient.label(x).to_string()).collect();
        let keys: Vec<usize> = elems.iter().map(|&x| ambient.rep(x)).collect();
        let carrier = Setoid::from_keys(labels, &keys);
        Self::new(SetoidFn::operation(carrier, ambient.clone(), elems.to_vec())?)
    }

    pub fn carrier(&self) -> &Setoid {
        self.inject.dom()
    }

    pub fn ambient(&self) -> &Setoid {
        self.inject.cod()
    }

    pub fn inject(&self) -> &SetoidFn {
        &self.inject
    }
}

/// The same elements as `base` under a coarser equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSetoid {
    base: Setoid,
    quotient: Setoid,
}

impl QuotientSetoid {
    pub fn base(&self) -> &Setoid {
        &self.base
    }

    pub fn setoid(&self) -> &Setoid {
        &self.quotient
    }

    /// The canonical surjection `base → quotient`.
    pub fn canonical(&self) -> SetoidFn {
        SetoidFn {
            dom: self.base.clone(),
            cod: self.quotient.clone(),
            table: (0..self.base.len()).collect(),
        }
    }
}

/// Quotient of `x` by `rel`, which must be an equivalence that respects `=_x`.
pub fn quotient_by(x: &Setoid, rel: impl Fn(usize, usize) -> bool) -> Result<QuotientSetoid, SetoidError> {
    let n = x.len();
    let table: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| rel(a, b)).collect()).collect();
    check_equivalence(n, |a, b| table[a][b])?;
    for a in 0..n {
        for b in 0..n {
            if x.equal(a, b) && !table[a][b] {
                return Err(SetoidError::NotExtensional(a, b));
            }
        }
    }
    let keys: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a][b]).expect("reflexive"))
        .collect();
    Ok(QuotientSetoid {
        base: x.clone(),
        quotient: Setoid::from_keys(x.labels().to_vec(), &keys),
    })
}

/// Quotient whose classes are given by a key per element (assumed coarser than `=_x`).
pub(crate) fn quotient_by_keys<K: std::hash::Hash + Eq>(x: &Setoid, keys: &[K]) -> QuotientSetoid {
    QuotientSetoid {
        base: x.clone(),
        quotient: Setoid::from_keys(x.labels().to_vec(), keys),
    }
}

/// The function induced on the quotient by a class-constant `f`.
pub fn factor_through_quotient(f: &SetoidFn, q: &QuotientSetoid) -> Result<SetoidFn, SetoidError> {
    if f.dom() != q.base() {
        return Err(SetoidError::DomainMismatch);
    }
    let qs = q.setoid();
    for a in 0..qs.len() {
        let r = qs.rep(a);
        if !f.cod().equal(f.apply(a), f.apply(r)) {
            return Err(SetoidError::NotClassConstant(r, a));
        }
    }
    Ok(SetoidFn {
        dom: qs.clone(),
        cod: f.cod().clone(),
        table: f.table().to_vec(),
    })
}

/// Outcome of an exhaustive uniqueness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// Number of solutions found; zero or more than one.
    Count(u64),
    Unbounded {
        size: u128,
    },
}

impl Uniqueness {
    pub fn is_unique(&self) -> bool {
        matches!(self, Uniqueness::Unique)
    }
}

/// Number of extensional maps `dom → cod` up to pointwise equality.
pub fn extensional_map_count(dom: &Setoid, cod: &Setoid) -> u128 {
    let k = cod.num_classes() as u128;
    let mut total: u128 = 1;
    for _ in 0..dom.num_classes() {
        total = total.saturating_mul(k);
    }
    total
}

/// Visits every extensional map `dom → cod` (one per pointwise-equality class,
/// values chosen among codomain representatives). Stops early if `visit`
/// returns `false`.
pub fn for_each_extensional_map(
    dom: &Setoid,
    cod: &Setoid,
    bound: u128,
    mut visit: impl FnMut(&SetoidFn) -> bool,
) -> Result<(), SetoidError> {
    let size = extensional_map_count(dom, cod);
    if size > bound {
        return Err(SetoidError::SearchBound { size, bound });
    }
    let dreps = dom.reps();
    let creps = cod.reps();
    if creps.is_empty() && !dreps.is_empty() {
        return Ok(());
    }
    let mut choice = vec![0usize; dreps.len()];
    loop {
        let mut table = vec![0usize; dom.len()];
        for x in 0..dom.len() {
            let slot = dreps.binary_search(&dom.rep(x)).expect("rep listed");
            table[x] = creps[choice[slot]];
        }
        let f = SetoidFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table,
        };
        if !visit(&f) {
            return Ok(());
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(());
            }
            choice[k] += 1;
            if choice[k] < creps.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Counts extensional maps satisfying `pred`, bounded by `bound`.
pub fn count_maps(dom: &Setoid, cod: &Setoid, bound: u128, pred: impl Fn(&SetoidFn) -> bool) -> Uniqueness {
    let mut count = 0u64;
    match for_each_extensional_map(dom, cod, bound, |f| {
        if pred(f) {
            count += 1;
        }
        true
    }) {
        Err(SetoidError::SearchBound { size, .. }) => Uniqueness::Unbounded { size },
        _ if count == 1 => Uniqueness::Unique,
        _ => Uniqueness::Count(count),
    }
}

/// Uniqueness of the factorization of `f` through `q`.
pub fn factorization_uniqueness(f: &SetoidFn, q: &QuotientSetoid, bound: u128) -> Uniqueness {
    let can = q.canonical();
    count_maps(q.setoid(), f.cod(), bound, |g| {
        can.then(g).map(|c| c.agrees_with(f)).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure_oracle(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            r[a][b] = true;
            r[b][a] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if r[a][b] && r[b][c] && !r[a][c] {
                            r[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    #[test]
    fn discrete_pair() {
        let s = Setoid::discrete(&["p", "q"]).unwrap();
        assert!(!s.equal(0, 1));
        assert_eq!(s.num_classes(), 2);
    }

    #[test]
    fn single_pair_collapses() {
        let s = Setoid::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(s.equal(0, 1));
        assert_eq!(s.num_classes(), 1);
    }

    #[test]
    fn transitive_closure_matches_fixpoint() {
        let s = Setoid::new(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let oracle = closure_oracle(3, &[(0, 1), (1, 2)]);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(s.equal(a, b), oracle[a][b]);
            }
        }
        assert!(s.equal(0, 2));
    }

    #[test]
    fn duplicates_and_empty_rejected() {
        assert_eq!(
            Setoid::discrete(&["a", "a"]),
            Err(SetoidError::DuplicateElement("a".into()))
        );
        assert_eq!(Setoid::discrete::<&str>(&[]), Err(SetoidError::EmptyCarrier));
        assert!(Setoid::empty().is_empty());
    }

    #[test]
    fn extensionality_witness() {
        let d = Setoid::new(&["a", "b"], &[("a", "b")]).unwrap();
        let c = Setoid::discrete(&["p", "q"]).unwrap();
        let f = SetoidFn::operation(d.clone(), c.clone(), vec![0, 1]).unwrap();
        assert_eq!(f.check_extensional(), Err(SetoidError::NotExtensional(0, 1)));
        assert!(SetoidFn::identity(&d).check_extensional().is_ok());
        assert!(SetoidFn::constant(&d, &c, 1).check_extensional().is_ok());
    }

    #[test]
    fn composition_and_identity() {
        let a = Setoid::discrete(&["a", "b"]).unwrap();
        let u = Setoid::discrete(&["u", "v"]).unwrap();
        let z = Setoid::discrete(&["z"]).unwrap();
        let f = SetoidFn::from_labels(a.clone(), u.clone(), &[("a", "u"), ("b", "v")]).unwrap();
        let g = SetoidFn::from_labels(u.clone(), z.clone(), &[("u", "z"), ("v", "z")]).unwrap();
        let gf = compose(&f, &g).unwrap();
        assert_eq!(gf.table(), &[0, 0]);
        assert_eq!(compose(&SetoidFn::identity(&a), &f).unwrap(), f);
        assert_eq!(compose(&f, &SetoidFn::identity(&u)).unwrap(), f);
        assert_eq!(compose(&g, &f), Err(SetoidError::DomainMismatch));
    }

    #[test]
    fn embeddings() {
        let a = Setoid::discrete(&["a", "b"]).unwrap();
        let z = Setoid::discrete(&["z"]).unwrap();
        assert!(SetoidFn::identity(&a).is_embedding().is_ok());
        assert_eq!(
            SetoidFn::constant(&a, &z, 0).is_embedding(),
            Err(SetoidError::NotEmbedding(0, 1))
        );
        let s = Subset::of_elements(&a, &[1]).unwrap();
        assert!(s.inject().is_embedding().is_ok());
    }

    #[test]
    fn quotients() {
        let x = Setoid::discrete(&["a", "b", "c"]).unwrap();
        let same = quotient_by(&x, |a, b| x.equal(a, b)).unwrap();
        assert_eq!(same.setoid().num_classes(), 3);
        let total = quotient_by(&x, |_, _| true).unwrap();
        assert_eq!(total.setoid().num_classes(), 1);
        assert!(total.canonical().is_surjective());
        assert!(matches!(
            quotient_by(&x, |a, b| a <= b),
            Err(SetoidError::NotEquivalence {
                property: "symmetric",
                ..
            })
        ));
        let y = Setoid::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(quotient_by(&y, |a, b| a == b), Err(SetoidError::NotExtensional(0, 1)));
    }

    #[test]
    fn factoring() {
        let x = Setoid::discrete(&["a", "b", "c"]).unwrap();
        let q = quotient_by(&x, |a, b| (a == 2) == (b == 2)).unwrap();
        let can = q.canonical();
        let g = factor_through_quotient(&can, &q).unwrap();
        assert!(g.agrees_with(&SetoidFn::identity(q.setoid())));
        assert!(factorization_uniqueness(&can, &q, 1_000_000).is_unique());
        let y = Setoid::discrete(&["p", "q"]).unwrap();
        let k = SetoidFn::constant(&x, &y, 1);
        let gk = factor_through_quotient(&k, &q).unwrap();
        assert_eq!(gk.table(), &[1, 1, 1]);
        let bad = SetoidFn::new(x.clone(), y.clone(), vec![0, 1, 1]).unwrap();
        assert_eq!(
            factor_through_quotient(&bad, &q),
            Err(SetoidError::NotClassConstant(0, 1))
        );
    }

    #[test]
    fn map_enumeration_counts() {
        let x = Setoid::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let y = Setoid::discrete(&["p", "q", "r"]).unwrap();
        let mut n = 0;
        for_each_extensional_map(&x, &y, 100, |f| {
            assert!(f.check_extensional().is_ok());
            n += 1;
            true
        })
        .unwrap();
        assert_eq!(n, 9);
        assert!(matches!(
            for_each_extensional_map(&x, &y, 8, |_| true),
            Err(SetoidError::SearchBound { size: 9, bound: 8 })
        ));
    }
}
