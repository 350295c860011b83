//! The dual real numbers `a + b·1#` with `1#·1# = 0`, their two partial
//! orders, dual vectors and the neighbourhood norm.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// A dual real number `re + ze·1#`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dual<T> {
    pub re: T,
    pub ze: T,
}

impl<T: Scalar> Dual<T> {
    pub const fn new(re: T, ze: T) -> Self {
        Dual { re, ze }
    }

    pub fn from_real(re: T) -> Self {
        Dual { re, ze: T::zero() }
    }

    /// The nilpotent unit `1#`.
    pub fn eps() -> Self {
        Dual { re: T::zero(), ze: T::one() }
    }

    /// Multiplication by a real scalar.
    pub fn scale(self, s: T) -> Self {
        Dual { re: self.re * s, ze: self.ze * s }
    }

    /// `re - ze·1#`. Swaps the two type orders.
    pub fn conj(self) -> Self {
        Dual { re: self.re, ze: -self.ze }
    }

    pub fn powi(self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }
}

impl<T: Real> Dual<T> {
    pub fn exp(self) -> Self {
        let e = self.re.exp();
        Dual { re: e, ze: self.ze * e }
    }

    pub fn sin(self) -> Self {
        Dual { re: self.re.sin(), ze: self.ze * self.re.cos() }
    }

    pub fn cos(self) -> Self {
        Dual { re: self.re.cos(), ze: -(self.ze * self.re.sin()) }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.ze.is_finite()
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, ze: self.ze + o.ze }
    }
}

impl<T: Scalar> AddAssign for Dual<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, ze: self.ze - o.ze }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, ze: -self.ze }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { re: self.re * o.re, ze: self.re * o.ze + self.ze * o.re }
    }
}

impl<T: Scalar> Zero for Dual<T> {
    fn zero() -> Self {
        Dual { re: T::zero(), ze: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ze.is_zero()
    }
}

impl<T: Scalar> One for Dual<T> {
    fn one() -> Self {
        Dual { re: T::one(), ze: T::zero() }
    }
}

impl<T: Scalar> Sum for Dual<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

/// Dual multiplication as a free function.
pub fn dual_mul<T: Scalar>(x: Dual<T>, y: Dual<T>) -> Dual<T> {
    x * y
}

/// Renders as `a+b*eps` or `a-b*eps`.
impl<T: Scalar + fmt::Display> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ze < T::zero() {
            write!(f, "{}-{}*eps", self.re, -self.ze)
        } else {
            write!(f, "{}+{}*eps", self.re, self.ze)
        }
    }
}

/// Selects one of the two partial orders on the dual numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Theta {
    One,
    Two,
}

impl Theta {
    pub fn as_u8(self) -> u8 {
        match self {
            Theta::One => 1,
            Theta::Two => 2,
        }
    }

    /// `(-1)^(θ-1)`: the sign of the zero-divisor direction that counts as
    /// "increasing" under this order.
    pub fn ze_sign<T: Scalar>(self) -> T {
        match self {
            Theta::One => T::one(),
            Theta::Two => -T::one(),
        }
    }
}

impl TryFrom<u8> for Theta {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Theta::One),
            2 => Ok(Theta::Two),
            _ => Err(format!("theta must be 1 or 2, got {v}")),
        }
    }
}

impl From<Theta> for u8 {
    fn from(t: Theta) -> u8 {
        t.as_u8()
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Result of comparing under a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering4 {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Ordering4 {
    pub fn reverse(self) -> Self {
        match self {
            Ordering4::Less => Ordering4::Greater,
            Ordering4::Greater => Ordering4::Less,
            o => o,
        }
    }

    pub fn is_le(self) -> bool {
        matches!(self, Ordering4::Less | Ordering4::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Ordering4::Greater | Ordering4::Equal)
    }
}

fn strictly_greater<T: Scalar>(x: Dual<T>, y: Dual<T>, theta: Theta) -> bool {
    match theta {
        Theta::One => (x.re > y.re && x.ze >= y.ze) || (x.re == y.re && x.ze > y.ze),
        Theta::Two => (x.re > y.re && x.ze <= y.ze) || (x.re == y.re && x.ze < y.ze),
    }
}

/// Compares `x` with `y` under the type `theta` order.
pub fn theta_cmp<T: Scalar>(x: Dual<T>, y: Dual<T>, theta: Theta) -> Ordering4 {
    if x == y {
        Ordering4::Equal
    } else if strictly_greater(x, y, theta) {
        Ordering4::Greater
    } else if strictly_greater(y, x, theta) {
        Ordering4::Less
    } else {
        Ordering4::Incomparable
    }
}

/// A point of the dual n-space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualVec<T>(pub Vec<Dual<T>>);

impl<T: Scalar> DualVec<T> {
    pub fn new(components: Vec<Dual<T>>) -> Self {
        DualVec(components)
    }

    pub fn zeros(n: usize) -> Self {
        DualVec(vec![Dual::zero(); n])
    }

    /// Standard basis vector `e_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i - 1] = Dual::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Dual<T>> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Dual<T>] {
        &self.0
    }

    /// Module scalar multiplication `a·x`.
    pub fn scale(&self, a: Dual<T>) -> Self {
        DualVec(self.0.iter().map(|&x| a * x).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(DualVec(self.0.iter().zip(&other.0).map(|(&x, &y)| x + y).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(DualVec(self.0.iter().zip(&other.0).map(|(&x, &y)| x - y).collect()))
    }
}

impl<T> Index<usize> for DualVec<T> {
    type Output = Dual<T>;
    fn index(&self, i: usize) -> &Dual<T> {
        &self.0[i]
    }
}

impl<T> From<Vec<Dual<T>>> for DualVec<T> {
    fn from(v: Vec<Dual<T>>) -> Self {
        DualVec(v)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `(2·Σ re² + Σ ze²)^(1/2)`.
pub fn vec_norm<T: Real>(v: &DualVec<T>) -> T {
    let two = T::one() + T::one();
    let (re2, ze2) = v
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), x| (a + x.re * x.re, b + x.ze * x.ze));
    (two * re2 + ze2).sqrt()
}

/// Membership in the (optionally deleted) `eps`-neighbourhood of `a`.
pub fn nbhd_contains<T: Real>(a: &DualVec<T>, eps: T, x: &DualVec<T>, deleted: bool) -> Result<bool> {
    if !(eps > T::zero()) {
        return Err(Error::NonPositiveRadius(eps.to_f64().unwrap_or(f64::NAN)));
    }
    let d = x.try_sub(a)?;
    Ok(vec_norm(&d) < eps && !(deleted && x == a))
}
