//! Naive interval arithmetic over dual boxes.
//!
//! Bounds are not outward-rounded. Every operation is monotone with respect
//! to box inclusion, which is what the Darboux sums rely on.

use num_traits::One;

use super::{Expr, Node, Prim};
use crate::dual::{check_len, Dual};
use crate::error::Result;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(!(lo > hi), "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Smallest interval holding both endpoints, in either order.
    pub fn spanning(a: T, b: T) -> Self {
        Interval { lo: a.min(b), hi: a.max(b) }
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, o: &Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn add(self, o: Self) -> Self {
        Interval { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }

    pub fn sub(self, o: Self) -> Self {
        Interval { lo: self.lo - o.hi, hi: self.hi - o.lo }
    }

    pub fn neg(self) -> Self {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(self, o: Self) -> Self {
        if self.lo == self.hi && o.lo == o.hi {
            return Self::point(self.lo * o.lo);
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(T::infinity(), T::min);
        let hi = p.iter().copied().fold(T::neg_infinity(), T::max);
        Interval { lo, hi }
    }

    fn pow_real(x: T, k: u32) -> T {
        let mut acc = T::one();
        for _ in 0..k {
            acc = acc * x;
        }
        acc
    }

    /// Exact range of `x^k` (up to rounding).
    pub fn powi(self, k: u32) -> Self {
        if k == 0 {
            return Self::point(T::one());
        }
        let a = Self::pow_real(self.lo, k);
        let b = Self::pow_real(self.hi, k);
        if k % 2 == 1 || self.lo >= T::zero() {
            Interval { lo: a, hi: b }
        } else if self.hi <= T::zero() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: T::zero(), hi: a.max(b) }
        }
    }

    pub fn exp(self) -> Self {
        Interval { lo: self.lo.exp(), hi: self.hi.exp() }
    }

    // Range of a 2π-periodic function with maxima at `peak + 2mπ` and minima
    // at `peak + π + 2mπ`.
    fn periodic(self, f: impl Fn(T) -> T, peak: T) -> Self {
        let two_pi = T::PI() + T::PI();
        if self.width() >= two_pi {
            return Interval { lo: -T::one(), hi: T::one() };
        }
        let hits = |at: T| {
            let m = ((self.lo - at) / two_pi).ceil();
            at + m * two_pi <= self.hi
        };
        let (a, b) = (f(self.lo), f(self.hi));
        let mut out = Interval { lo: a.min(b), hi: a.max(b) };
        if hits(peak) {
            out.hi = T::one();
        }
        if hits(peak + T::PI()) {
            out.lo = -T::one();
        }
        out
    }

    pub fn sin(self) -> Self {
        self.periodic(T::sin, T::FRAC_PI_2())
    }

    pub fn cos(self) -> Self {
        self.periodic(T::cos, T::zero())
    }
}

/// A box of dual numbers: `re` in one interval and `ze` in another.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualBox<T> {
    pub re: Interval<T>,
    pub ze: Interval<T>,
}

impl<T: Real> DualBox<T> {
    pub fn new(re_lo: T, re_hi: T, ze_lo: T, ze_hi: T) -> Self {
        DualBox { re: Interval::new(re_lo, re_hi), ze: Interval::new(ze_lo, ze_hi) }
    }

    pub fn point(x: Dual<T>) -> Self {
        DualBox { re: Interval::point(x.re), ze: Interval::point(x.ze) }
    }

    pub fn contains(&self, x: Dual<T>) -> bool {
        self.re.contains(x.re) && self.ze.contains(x.ze)
    }

    pub fn contains_box(&self, o: &Self) -> bool {
        self.re.contains_interval(&o.re) && self.ze.contains_interval(&o.ze)
    }

    fn add(self, o: Self) -> Self {
        DualBox { re: self.re.add(o.re), ze: self.ze.add(o.ze) }
    }

    fn sub(self, o: Self) -> Self {
        DualBox { re: self.re.sub(o.re), ze: self.ze.sub(o.ze) }
    }

    fn neg(self) -> Self {
        DualBox { re: self.re.neg(), ze: self.ze.neg() }
    }

    fn mul(self, o: Self) -> Self {
        DualBox { re: self.re.mul(o.re), ze: self.re.mul(o.ze).add(self.ze.mul(o.re)) }
    }

    fn powi(self, k: u32) -> Self {
        if k == 0 {
            return Self::point(Dual::one());
        }
        let kk = Interval::point(T::from_u32(k).expect("exponent fits"));
        let lower = self.re.powi(k - 1);
        DualBox { re: self.re.powi(k), ze: kk.mul(lower).mul(self.ze) }
    }

    fn prim(self, p: Prim) -> Self {
        match p {
            Prim::Exp => {
                let e = self.re.exp();
                DualBox { re: e, ze: self.ze.mul(e) }
            }
            Prim::Sin => DualBox { re: self.re.sin(), ze: self.ze.mul(self.re.cos()) },
            Prim::Cos => DualBox { re: self.re.cos(), ze: self.ze.mul(self.re.sin()).neg() },
        }
    }
}

fn enclose<T: Real>(n: &Node<T>, boxes: &[DualBox<T>]) -> DualBox<T> {
    match n {
        Node::Const(c) => DualBox::point(*c),
        Node::Var(i) => boxes[*i],
        Node::Neg(a) => enclose(a, boxes).neg(),
        Node::Add(a, b) => enclose(a, boxes).add(enclose(b, boxes)),
        Node::Sub(a, b) => enclose(a, boxes).sub(enclose(b, boxes)),
        Node::Mul(a, b) => enclose(a, boxes).mul(enclose(b, boxes)),
        Node::Pow(a, k) => enclose(a, boxes).powi(*k),
        Node::Prim(p, a) => enclose(a, boxes).prim(*p),
    }
}

/// Encloses `f` over the product of `boxes` (one per variable).
pub fn eval_enclosure<T: Real>(f: &Expr<T>, boxes: &[DualBox<T>]) -> Result<DualBox<T>> {
    check_len(f.arity(), boxes.len())?;
    Ok(enclose(f.node(), boxes))
}
