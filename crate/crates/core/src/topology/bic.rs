//! The closed grammar of Bishop-continuous functions on the rationals, with
//! exact evaluation, interval ranges and structurally derived moduli.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BicExpr {
    Const(Q),
    Id,
    Add(Box<BicExpr>, Box<BicExpr>),
    Mul(Box<BicExpr>, Box<BicExpr>),
    Neg(Box<BicExpr>),
    Abs(Box<BicExpr>),
    Max(Box<BicExpr>, Box<BicExpr>),
    Min(Box<BicExpr>, Box<BicExpr>),
    /// `Comp(outer, inner)` is `outer ∘ inner`.
    Comp(Box<BicExpr>, Box<BicExpr>),
}

impl fmt::Debug for BicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicExpr::Const(q) => write!(f, "(const {q})"),
            BicExpr::Id => write!(f, "id"),
            BicExpr::Add(a, b) => write!(f, "(add {a:?} {b:?})"),
            BicExpr::Mul(a, b) => write!(f, "(mul {a:?} {b:?})"),
            BicExpr::Neg(a) => write!(f, "(neg {a:?})"),
            BicExpr::Abs(a) => write!(f, "(abs {a:?})"),
            BicExpr::Max(a, b) => write!(f, "(max {a:?} {b:?})"),
            BicExpr::Min(a, b) => write!(f, "(min {a:?} {b:?})"),
            BicExpr::Comp(a, b) => write!(f, "(comp {a:?} {b:?})"),
        }
    }
}

/// A closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: Q) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    /// `[-n, n]`.
    pub fn symmetric(n: u32) -> Self {
        let n = Q::from_integer(n.into());
        Interval { lo: -n.clone(), hi: n }
    }

    /// Largest absolute value in the interval.
    pub fn magnitude(&self) -> Q {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, q: &Q) -> bool {
        &self.lo <= q && q <= &self.hi
    }
}

fn b(e: BicExpr) -> Box<BicExpr> {
    Box::new(e)
}

#[allow(clippy::should_implement_trait)]
impl BicExpr {
    pub fn constant(q: Q) -> Self {
        BicExpr::Const(q)
    }

    pub fn add(x: BicExpr, y: BicExpr) -> Self {
        BicExpr::Add(b(x), b(y))
    }

    pub fn mul(x: BicExpr, y: BicExpr) -> Self {
        BicExpr::Mul(b(x), b(y))
    }

    pub fn neg(x: BicExpr) -> Self {
        BicExpr::Neg(b(x))
    }

    pub fn abs(x: BicExpr) -> Self {
        BicExpr::Abs(b(x))
    }

    pub fn max(x: BicExpr, y: BicExpr) -> Self {
        BicExpr::Max(b(x), b(y))
    }

    pub fn min(x: BicExpr, y: BicExpr) -> Self {
        BicExpr::Min(b(x), b(y))
    }

    pub fn comp(outer: BicExpr, inner: BicExpr) -> Self {
        BicExpr::Comp(b(outer), b(inner))
    }

    /// `t ↦ c·t`.
    pub fn scale(c: Q) -> Self {
        BicExpr::mul(BicExpr::Const(c), BicExpr::Id)
    }

    /// `t ↦ c·t + d`.
    pub fn affine(c: Q, d: Q) -> Self {
        BicExpr::add(BicExpr::scale(c), BicExpr::Const(d))
    }

    /// `t ↦ t²`.
    pub fn square() -> Self {
        BicExpr::mul(BicExpr::Id, BicExpr::Id)
    }

    pub fn eval(&self, x: &Q) -> Q {
        match self {
            BicExpr::Const(q) => q.clone(),
            BicExpr::Id => x.clone(),
            BicExpr::Add(a, c) => a.eval(x) + c.eval(x),
            BicExpr::Mul(a, c) => a.eval(x) * c.eval(x),
            BicExpr::Neg(a) => -a.eval(x),
            BicExpr::Abs(a) => a.eval(x).abs(),
            BicExpr::Max(a, c) => a.eval(x).max(c.eval(x)),
            BicExpr::Min(a, c) => a.eval(x).min(c.eval(x)),
            BicExpr::Comp(o, i) => o.eval(&i.eval(x)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BicExpr::Const(_) | BicExpr::Id => 1,
            BicExpr::Neg(a) | BicExpr::Abs(a) => 1 + a.size(),
            BicExpr::Add(a, c) | BicExpr::Mul(a, c) | BicExpr::Max(a, c) | BicExpr::Min(a, c) | BicExpr::Comp(a, c) => {
                1 + a.size() + c.size()
            }
        }
    }

    /// An interval containing every value on `dom`.
    pub fn range(&self, dom: &Interval) -> Interval {
        match self {
            BicExpr::Const(q) => Interval::point(q.clone()),
            BicExpr::Id => dom.clone(),
            BicExpr::Add(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                Interval::new(x.lo + y.lo, x.hi + y.hi)
            }
            BicExpr::Mul(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                let prods = [&x.lo * &y.lo, &x.lo * &y.hi, &x.hi * &y.lo, &x.hi * &y.hi];
                let lo = prods.iter().min().cloned().expect("nonempty");
                let hi = prods.iter().max().cloned().expect("nonempty");
                Interval::new(lo, hi)
            }
            BicExpr::Neg(a) => {
                let x = a.range(dom);
                Interval::new(-x.hi, -x.lo)
            }
            BicExpr::Abs(a) => {
                let x = a.range(dom);
                if x.lo >= Q::zero() {
                    x
                } else if x.hi <= Q::zero() {
                    Interval::new(-x.hi, -x.lo)
                } else {
                    let m = x.magnitude();
                    Interval::new(Q::zero(), m)
                }
            }
            BicExpr::Max(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                Interval::new(x.lo.max(y.lo), x.hi.max(y.hi))
            }
            BicExpr::Min(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                Interval::new(x.lo.min(y.lo), x.hi.min(y.hi))
            }
            BicExpr::Comp(o, i) => o.range(&i.range(dom)),
        }
    }

    /// A `δ > 0` with `|x − y| < δ ⇒ |φ(x) − φ(y)| ≤ ε` for `x, y ∈ dom`.
    pub fn modulus_on(&self, dom: &Interval, eps: &Q) -> Q {
        let two = Q::from_integer(2.into());
        match self {
            BicExpr::Const(_) => Q::one(),
            BicExpr::Id => eps.clone(),
            BicExpr::Add(a, c) => {
                let half = eps / &two;
                a.modulus_on(dom, &half).min(c.modulus_on(dom, &half))
            }
            BicExpr::Mul(a, c) => {
                // |ab - a'b'| <= |a||b - b'| + |b'||a - a'|
                let ma = a.range(dom).magnitude().max(Q::one());
                let mc = c.range(dom).magnitude().max(Q::one());
                let da = a.modulus_on(dom, &(eps / (&two * &mc)));
                let dc = c.modulus_on(dom, &(eps / (&two * &ma)));
                da.min(dc)
            }
            BicExpr::Neg(a) | BicExpr::Abs(a) => a.modulus_on(dom, eps),
            BicExpr::Max(a, c) | BicExpr::Min(a, c) => a.modulus_on(dom, eps).min(c.modulus_on(dom, eps)),
            BicExpr::Comp(o, i) => {
                let inner_range = i.range(dom);
                let outer = o.modulus_on(&inner_range, eps);
                // halve so the inner bound becomes strict
                i.modulus_on(dom, &(outer / two))
            }
        }
    }
}

/// Modulus of continuity of `φ` on `[-n, n]` for tolerance `ε`.
pub fn bic_modulus(phi: &BicExpr, n: u32, eps: &Q) -> Q {
    phi.modulus_on(&Interval::symmetric(n), eps)
}

pub fn eval_bic(phi: &BicExpr, x: &Q) -> Q {
    phi.eval(x)
}

/// The piecewise-linear function through the given points, constant
/// outside their span. Abscissae must be strictly increasing.
pub fn interpolant(points: &[(Q, Q)]) -> BicExpr {
    debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
    let Some((_, v0)) = points.first() else {
        return BicExpr::Const(Q::zero());
    };
    let mut expr = BicExpr::Const(v0.clone());
    for w in points.windows(2) {
        let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
        let slope = (v1 - v0) / (t1 - t0);
        if slope.is_zero() {
            continue;
        }
        // slope * (clamp(t, t0, t1) - t0)
        let clamp = BicExpr::min(
            BicExpr::max(BicExpr::Id, BicExpr::Const(t0.clone())),
            BicExpr::Const(t1.clone()),
        );
        let piece = BicExpr::mul(BicExpr::Const(slope), BicExpr::add(clamp, BicExpr::Const(-t0.clone())));
        expr = BicExpr::add(expr, piece);
    }
    expr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{q, qr};

    #[test]
    fn evaluation() {
        assert_eq!(BicExpr::Id.eval(&qr(3, 2)), qr(3, 2));
        let e = BicExpr::comp(BicExpr::abs(BicExpr::Id), BicExpr::Const(q(-2)));
        assert_eq!(e.eval(&q(7)), q(2));
        let m = BicExpr::max(BicExpr::Id, BicExpr::Const(q(0)));
        assert_eq!(eval_bic(&m, &q(-1)), q(0));
    }

    #[test]
    fn moduli() {
        let abs = BicExpr::abs(BicExpr::Id);
        assert_eq!(bic_modulus(&abs, 5, &qr(1, 3)), qr(1, 3));
        let double = BicExpr::add(BicExpr::Id, BicExpr::Id);
        assert_eq!(bic_modulus(&double, 3, &q(1)), qr(1, 2));
        let sq = BicExpr::square();
        assert!(bic_modulus(&sq, 2, &q(1)) <= qr(1, 4));
    }

    #[test]
    fn interpolant_hits_points() {
        let pts = vec![(q(-1), q(3)), (q(0), q(0)), (qr(5, 2), q(7))];
        let e = interpolant(&pts);
        for (t, v) in &pts {
            assert_eq!(&e.eval(t), v);
        }
        assert_eq!(e.eval(&q(-10)), q(3));
        assert_eq!(e.eval(&q(10)), q(7));
    }

    #[test]
    fn ranges_contain_values() {
        let e = BicExpr::comp(
            BicExpr::mul(BicExpr::Id, BicExpr::add(BicExpr::Id, BicExpr::Const(q(1)))),
            BicExpr::min(BicExpr::abs(BicExpr::Id), BicExpr::Const(q(2))),
        );
        let dom = Interval::symmetric(3);
        let r = e.range(&dom);
        for k in -12..=12 {
            let x = qr(k, 4);
            assert!(r.contains(&e.eval(&x)));
        }
    }
}
