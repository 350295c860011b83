//! Expression trees for dual-analytic functions.
//!
//! Representable functions are the closure of constants and variables under
//! `+`, `-`, `*`, non-negative integer powers and the lifted primitives
//! `exp`, `sin`, `cos`. Every such function is differentiable over the dual
//! numbers, so symbolic derivatives are exact.

mod interval;
mod jacobian;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::dual::{check_len, Dual, DualVec};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use interval::{eval_enclosure, DualBox, Interval};
pub use jacobian::{compose_maps, cr_check, jacobian, DualMap};
pub use parse::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    Exp,
    Sin,
    Cos,
}

impl Prim {
    pub fn name(self) -> &'static str {
        match self {
            Prim::Exp => "exp",
            Prim::Sin => "sin",
            Prim::Cos => "cos",
        }
    }

    pub fn apply<T: Real>(self, x: Dual<T>) -> Dual<T> {
        match self {
            Prim::Exp => x.exp(),
            Prim::Sin => x.sin(),
            Prim::Cos => x.cos(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node<T> {
    Const(Dual<T>),
    /// 0-based variable index.
    Var(usize),
    Neg(Arc<Node<T>>),
    Add(Arc<Node<T>>, Arc<Node<T>>),
    Sub(Arc<Node<T>>, Arc<Node<T>>),
    Mul(Arc<Node<T>>, Arc<Node<T>>),
    Pow(Arc<Node<T>>, u32),
    Prim(Prim, Arc<Node<T>>),
}

type NodeRef<T> = Arc<Node<T>>;

/// `x^k` with the zero-divisor part formed as `k·x^(k-1)·ze`. Interval
/// evaluation follows the same operation order so point enclosures agree
/// bit for bit.
pub(crate) fn pow_dual<T: Real>(x: Dual<T>, k: u32) -> Dual<T> {
    if k == 0 {
        return Dual::one();
    }
    let mut lower = T::one();
    for _ in 1..k {
        lower = lower * x.re;
    }
    let kk = T::from_u32(k).expect("exponent fits");
    Dual::new(lower * x.re, kk * lower * x.ze)
}

// Folding constructors: constants combine, and 0/1 identities collapse.
mod build {
    use super::*;

    /// Adding `+0` turns a signed zero into `0`, so constants render
    /// without `-0`.
    pub fn konst<T: Real>(c: Dual<T>) -> NodeRef<T> {
        Arc::new(Node::Const(Dual::new(c.re + T::zero(), c.ze + T::zero())))
    }

    fn as_const<T: Real>(n: &Node<T>) -> Option<Dual<T>> {
        match n {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_zero<T: Real>(n: &Node<T>) -> bool {
        as_const(n).is_some_and(|c| c.is_zero())
    }

    fn is_one<T: Real>(n: &Node<T>) -> bool {
        as_const(n).is_some_and(|c| c == Dual::one())
    }

    pub fn neg<T: Real>(a: NodeRef<T>) -> NodeRef<T> {
        match &*a {
            Node::Const(c) => konst(-*c),
            Node::Neg(inner) => inner.clone(),
            _ => Arc::new(Node::Neg(a)),
        }
    }

    pub fn add<T: Real>(a: NodeRef<T>, b: NodeRef<T>) -> NodeRef<T> {
        match (as_const(&a), as_const(&b)) {
            (Some(x), Some(y)) => konst(x + y),
            _ if is_zero(&a) => b,
            _ if is_zero(&b) => a,
            _ => Arc::new(Node::Add(a, b)),
        }
    }

    pub fn sub<T: Real>(a: NodeRef<T>, b: NodeRef<T>) -> NodeRef<T> {
        match (as_const(&a), as_const(&b)) {
            (Some(x), Some(y)) => konst(x - y),
            _ if is_zero(&b) => a,
            _ if is_zero(&a) => neg(b),
            _ => Arc::new(Node::Sub(a, b)),
        }
    }

    pub fn mul<T: Real>(a: NodeRef<T>, b: NodeRef<T>) -> NodeRef<T> {
        match (as_const(&a), as_const(&b)) {
            (Some(x), Some(y)) => konst(x * y),
            _ if is_zero(&a) || is_zero(&b) => konst(Dual::zero()),
            _ if is_one(&a) => b,
            _ if is_one(&b) => a,
            _ => Arc::new(Node::Mul(a, b)),
        }
    }

    pub fn pow<T: Real>(a: NodeRef<T>, k: u32) -> NodeRef<T> {
        match k {
            0 => konst(Dual::one()),
            1 => a,
            _ => match as_const(&a) {
                Some(c) => konst(pow_dual(c, k)),
                None => Arc::new(Node::Pow(a, k)),
            },
        }
    }

    pub fn prim<T: Real>(p: Prim, a: NodeRef<T>) -> NodeRef<T> {
        match as_const(&a) {
            Some(c) => konst(p.apply(c)),
            None => Arc::new(Node::Prim(p, a)),
        }
    }
}

fn eval_node<T: Real>(n: &Node<T>, p: &[Dual<T>]) -> Dual<T> {
    match n {
        Node::Const(c) => *c,
        Node::Var(i) => p[*i],
        Node::Neg(a) => -eval_node(a, p),
        Node::Add(a, b) => eval_node(a, p) + eval_node(b, p),
        Node::Sub(a, b) => eval_node(a, p) - eval_node(b, p),
        Node::Mul(a, b) => eval_node(a, p) * eval_node(b, p),
        Node::Pow(a, k) => pow_dual(eval_node(a, p), *k),
        Node::Prim(f, a) => f.apply(eval_node(a, p)),
    }
}

fn diff_node<T: Real>(n: &NodeRef<T>, i: usize) -> NodeRef<T> {
    use build::*;
    match &**n {
        Node::Const(_) => konst(Dual::zero()),
        Node::Var(j) => konst(if *j == i { Dual::one() } else { Dual::zero() }),
        Node::Neg(a) => neg(diff_node(a, i)),
        Node::Add(a, b) => add(diff_node(a, i), diff_node(b, i)),
        Node::Sub(a, b) => sub(diff_node(a, i), diff_node(b, i)),
        Node::Mul(a, b) => add(mul(diff_node(a, i), b.clone()), mul(a.clone(), diff_node(b, i))),
        Node::Pow(a, k) => {
            let kk = Dual::from_real(T::from_u32(*k).expect("exponent fits"));
            mul(mul(konst(kk), pow(a.clone(), k - 1)), diff_node(a, i))
        }
        Node::Prim(f, a) => {
            let outer = match f {
                Prim::Exp => prim(Prim::Exp, a.clone()),
                Prim::Sin => prim(Prim::Cos, a.clone()),
                Prim::Cos => neg(prim(Prim::Sin, a.clone())),
            };
            mul(outer, diff_node(a, i))
        }
    }
}

fn subst_node<T: Real>(n: &NodeRef<T>, subs: &[NodeRef<T>]) -> NodeRef<T> {
    use build::*;
    match &**n {
        Node::Const(_) => n.clone(),
        Node::Var(j) => subs[*j].clone(),
        Node::Neg(a) => neg(subst_node(a, subs)),
        Node::Add(a, b) => add(subst_node(a, subs), subst_node(b, subs)),
        Node::Sub(a, b) => sub(subst_node(a, subs), subst_node(b, subs)),
        Node::Mul(a, b) => mul(subst_node(a, subs), subst_node(b, subs)),
        Node::Pow(a, k) => pow(subst_node(a, subs), *k),
        Node::Prim(f, a) => prim(*f, subst_node(a, subs)),
    }
}

/// A dual-analytic function of `arity` dual variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr<T> {
    root: NodeRef<T>,
    arity: usize,
}

impl<T: Real> Expr<T> {
    pub fn constant(c: Dual<T>, arity: usize) -> Self {
        Expr { root: build::konst(c), arity }
    }

    pub fn real(x: T, arity: usize) -> Self {
        Self::constant(Dual::from_real(x), arity)
    }

    pub fn zero(arity: usize) -> Self {
        Self::constant(Dual::zero(), arity)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(Dual::one(), arity)
    }

    /// The coordinate function `x_{i+1}` (0-based `i`).
    ///
    /// Panics if `i >= arity`.
    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity, "variable index {i} out of range for arity {arity}");
        Expr { root: Arc::new(Node::Var(i)), arity }
    }

    pub(crate) fn from_node(root: NodeRef<T>, arity: usize) -> Self {
        Expr { root, arity }
    }

    pub fn node(&self) -> &Node<T> {
        &self.root
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same function viewed with more (unused) variables.
    pub fn with_arity(mut self, arity: usize) -> Self {
        assert!(arity >= self.arity, "cannot shrink arity {} to {arity}", self.arity);
        self.arity = arity;
        self
    }

    pub fn as_const(&self) -> Option<Dual<T>> {
        match &*self.root {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// Structural zero test. Algebraically zero trees that did not fold
    /// return `false`.
    pub fn is_zero(&self) -> bool {
        self.as_const().is_some_and(|c| c.is_zero())
    }

    pub fn powi(&self, k: u32) -> Self {
        Expr { root: build::pow(self.root.clone(), k), arity: self.arity }
    }

    pub fn prim(&self, p: Prim) -> Self {
        Expr { root: build::prim(p, self.root.clone()), arity: self.arity }
    }

    pub fn exp(&self) -> Self {
        self.prim(Prim::Exp)
    }

    pub fn sin(&self) -> Self {
        self.prim(Prim::Sin)
    }

    pub fn cos(&self) -> Self {
        self.prim(Prim::Cos)
    }

    /// Evaluates at a point given as a slice. Panics on short input; use
    /// [`Expr::eval_dual`] for a checked call.
    pub fn eval(&self, p: &[Dual<T>]) -> Dual<T> {
        eval_node(&self.root, p)
    }

    pub fn eval_dual(&self, p: &DualVec<T>) -> Result<Dual<T>> {
        check_len(self.arity, p.len())?;
        Ok(self.eval(p.as_slice()))
    }

    /// Symbolic partial derivative in the 0-based variable `i`.
    pub fn partial_diff(&self, i: usize) -> Result<Self> {
        if i >= self.arity {
            return Err(Error::VarOutOfRange { index: i + 1, arity: self.arity });
        }
        Ok(Expr { root: diff_node(&self.root, i), arity: self.arity })
    }

    /// Substitutes `subs[i]` for variable `i`. The result has the arity of
    /// the substituted expressions (`arity` when `subs` is empty).
    pub fn compose(&self, subs: &[Expr<T>], arity: usize) -> Result<Self> {
        check_len(self.arity, subs.len())?;
        if let Some(s) = subs.iter().find(|s| s.arity > arity) {
            return Err(Error::DimensionMismatch(format!(
                "substituted expression has arity {} > {arity}",
                s.arity
            )));
        }
        let nodes: Vec<_> = subs.iter().map(|s| s.root.clone()).collect();
        Ok(Expr { root: subst_node(&self.root, &nodes), arity })
    }
}

macro_rules! expr_binop {
    ($tr:ident, $method:ident, $build:path) => {
        impl<T: Real> $tr for Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: Expr<T>) -> Expr<T> {
                Expr { root: $build(self.root, rhs.root), arity: self.arity.max(rhs.arity) }
            }
        }

        impl<T: Real> $tr<&Expr<T>> for &Expr<T> {
            type Output = Expr<T>;
            fn $method(self, rhs: &Expr<T>) -> Expr<T> {
                Expr {
                    root: $build(self.root.clone(), rhs.root.clone()),
                    arity: self.arity.max(rhs.arity),
                }
            }
        }
    };
}

expr_binop!(Add, add, build::add);
expr_binop!(Sub, sub, build::sub);
expr_binop!(Mul, mul, build::mul);

impl<T: Real> Neg for Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        Expr { root: build::neg(self.root), arity: self.arity }
    }
}

impl<T: Real> Neg for &Expr<T> {
    type Output = Expr<T>;
    fn neg(self) -> Expr<T> {
        Expr { root: build::neg(self.root.clone()), arity: self.arity }
    }
}

// Rendering. Precedence levels: 0 sum, 1 product, 2 unary minus, 3 power,
// 4 atom. A child is parenthesized when its level is below what the parent
// slot requires, so rendering parses back to the same tree.
fn level<T: Real>(n: &Node<T>) -> u8 {
    match n {
        Node::Add(..) | Node::Sub(..) => 0,
        Node::Mul(..) => 1,
        Node::Neg(_) => 2,
        Node::Pow(..) => 3,
        Node::Const(c) if c.ze.is_zero() && c.re.is_sign_negative() => 2,
        Node::Const(_) | Node::Var(_) | Node::Prim(..) => 4,
    }
}

fn render<T: Real>(n: &Node<T>, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(n) < min {
        f.write_str("(")?;
        render(n, 0, f)?;
        return f.write_str(")");
    }
    match n {
        Node::Const(c) if c.ze.is_zero() => {
            if c.re.is_sign_negative() {
                write!(f, "-{}", -c.re)
            } else {
                write!(f, "{}", c.re)
            }
        }
        Node::Const(c) => {
            if c.ze < T::zero() {
                write!(f, "({}-{}*eps)", c.re, -c.ze)
            } else {
                write!(f, "({}+{}*eps)", c.re, c.ze)
            }
        }
        Node::Var(i) => write!(f, "x{}", i + 1),
        Node::Neg(a) => {
            f.write_str("-")?;
            render(a, 2, f)
        }
        Node::Add(a, b) => {
            render(a, 0, f)?;
            f.write_str(" + ")?;
            render(b, 1, f)
        }
        Node::Sub(a, b) => {
            render(a, 0, f)?;
            f.write_str(" - ")?;
            render(b, 1, f)
        }
        Node::Mul(a, b) => {
            render(a, 1, f)?;
            f.write_str("*")?;
            render(b, 2, f)
        }
        Node::Pow(a, k) => {
            render(a, 4, f)?;
            write!(f, "^{k}")
        }
        Node::Prim(p, a) => {
            write!(f, "{}(", p.name())?;
            render(a, 0, f)?;
            f.write_str(")")
        }
    }
}

impl<T: Real> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render(&self.root, 0, f)
    }
}

/// An ordered list of component functions sharing one arity: a map from
/// dual n-space to dual m-space.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprMap<T> {
    components: Vec<Expr<T>>,
    arity: usize,
}

impl<T: Real> ExprMap<T> {
    pub fn new(components: Vec<Expr<T>>, arity: usize) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.arity > arity) {
            return Err(Error::DimensionMismatch(format!(
                "component of arity {} in a map of arity {arity}",
                c.arity
            )));
        }
        let components = components.into_iter().map(|c| c.with_arity(arity)).collect();
        Ok(ExprMap { components, arity })
    }

    pub fn identity(n: usize) -> Self {
        ExprMap { components: (0..n).map(|i| Expr::var(i, n)).collect(), arity: n }
    }

    pub fn parse(texts: &[impl AsRef<str>], arity: usize) -> Result<Self> {
        let components = texts
            .iter()
            .map(|t| parse_expr(t.as_ref(), arity))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExprMap { components, arity })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of output components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Expr<T>] {
        &self.components
    }

    pub fn eval(&self, p: &DualVec<T>) -> Result<DualVec<T>> {
        check_len(self.arity, p.len())?;
        Ok(DualVec(self.components.iter().map(|c| c.eval(p.as_slice())).collect()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ExprMap<T>) -> Result<Self> {
        check_len(self.arity, inner.len())?;
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components, inner.arity))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExprMap { components, arity: inner.arity })
    }
}
